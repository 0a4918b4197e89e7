import itertools
from fractions import Fraction

import pytest

from ecad.lifting import build_cad
from ecad.verify import (MDProperty, audit_structure, cell_bound, check_truth_invariance,
                         dominant_EC_full, dominant_EC_projection, dominant_P, locate,
                         md_step_ECstar, md_step_P, md_step_P_bound, table_EC, table_P)


@pytest.fixture(scope="module")
def ex1_cad(ex1):
    order, phi, D = ex1
    return build_cad(phi, order, D), phi


def test_locate_documented_points(ex1_cad, derived):
    cad, _ = ex1_cad
    for case in derived["locate"]:
        point = [Fraction(c) for c in case["point"]]
        assert bool(locate(cad, point).truth) == case["truth"], case


def test_every_rational_sample_locates_to_its_cell(ex1_cad):
    cad, _ = ex1_cad
    for leaf in cad.leaves():
        if all(c.is_rational for c in leaf.sample):
            assert locate(cad, [c.lo for c in leaf.sample]) is leaf


def test_truth_invariance_and_fault_injection(ex1_cad):
    cad, phi = ex1_cad
    report = check_truth_invariance(cad, phi, 300, seed=5)
    assert report.ok and report.checked == 300
    # points on the solution curve hit the true cells
    on_curve = [(-1, 0, 1), (Fraction(4, 5), 0, Fraction(-4, 5))]
    assert check_truth_invariance(cad, phi, points=on_curve).ok
    leaf = locate(cad, on_curve[0])
    leaf.truth = not leaf.truth
    try:
        bad = check_truth_invariance(cad, phi, points=on_curve)
        assert not bad.ok and len(bad.mismatches) == 1
    finally:
        leaf.truth = not leaf.truth


def test_truth_check_is_seeded(ex1_cad):
    cad, phi = ex1_cad
    a = check_truth_invariance(cad, phi, 50, seed=9).to_json()
    b = check_truth_invariance(cad, phi, 50, seed=9).to_json()
    assert a == b


def test_audit_detects_swapped_children(ex1):
    order, phi, D = ex1
    cad = build_cad(phi, order, D, prune=False)
    assert audit_structure(cad).ok
    stack = cad.root.children[1].children
    stack[0], stack[2] = stack[2], stack[0]
    report = audit_structure(cad)
    assert not report.ok
    assert any("not increasing" in v for v in report.violations)


def test_md_steps():
    assert md_step_P(MDProperty(1, 3)) == MDProperty(2, 18)
    assert md_step_P(MDProperty(4, 2)) == MDProperty(12, 8)
    assert md_step_ECstar(MDProperty(1, 1)) == MDProperty(2, 2)
    with pytest.raises(ValueError):
        MDProperty(0, 1)


@pytest.mark.parametrize("m,d", [(1, 1), (2, 3), (3, 2), (5, 4)])
def test_iterated_steps_reproduce_tables(m, d):
    p = MDProperty(m, d)
    for r in range(1, 5):
        p = md_step_P_bound(p, first=(r == 1))
        assert p == table_P(m, d, r)
    for ell in range(1, 5):
        q = MDProperty(m, d)
        for _ in range(ell):
            q = md_step_ECstar(q)
        assert q == table_EC(m, d, ell, ell)
        assert table_EC(m, d, ell, ell + 1) == MDProperty(2 ** (2 * ell) * m ** 2,
                                                          2 ** (2 ** (ell + 1) - 1) * d ** (2 ** (ell + 1)))


def test_dominant_terms_against_oracle(derived):
    for row in derived["bounds"]:
        n, m, d, ell = row["n"], row["m"], row["d"], row["l"]
        assert dominant_P(n, m, d) == Fraction(row["eq5"])
        assert dominant_EC_full(n, m, d, ell) == Fraction(row["eq8"])


def test_spot_values():
    assert dominant_P(3, 3, 2) == 286654464
    assert dominant_EC_full(3, 3, 2, 2) == 4096


def test_reduced_bound_strictly_smaller():
    for n, m, d in itertools.product(range(2, 7), range(2, 7), range(2, 5)):
        for ell in range(1, min(m, n - 1) + 1):
            assert dominant_EC_full(n, m, d, ell) < dominant_P(n, m, d)
            assert dominant_EC_full(n, m, d, ell) <= dominant_EC_projection(n, m, d, ell)


def test_cell_bound_modes():
    assert cell_bound(3, 3, 2, 0, "ec-full") == cell_bound(3, 3, 2, 0, "p-full")
    # the full product bound dominates its leading term
    for n, m, d, ell in [(3, 3, 2, 2), (4, 2, 2, 1), (5, 6, 2, 4)]:
        assert cell_bound(n, m, d, ell, "ec-full") >= dominant_EC_full(n, m, d, ell)
        assert cell_bound(n, m, d, ell, "ec-full") <= cell_bound(n, m, d, ell, "ec-projection")
    assert cell_bound(1, 2, 3) == 13
    with pytest.raises(ValueError):
        cell_bound(3, 2, 2, 3, "ec-full")
    with pytest.raises(ValueError):
        cell_bound(3, 2, 2, 1, "fast")


def test_ec_full_bound_follows_lifting_recurrence():
    # n=2, l=1: base CAD of R^1 over all roots, one reduced lift
    rows = {2: table_EC(2, 2, 1, 0), 1: table_EC(2, 2, 1, 1)}
    base = 2 * rows[1].d + 1
    expected = (2 * rows[2].d + 1) * rows[1].d + (base - rows[1].d)
    assert cell_bound(2, 2, 2, 1, "ec-full") == expected
