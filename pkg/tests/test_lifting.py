import json

import pytest

from ecad.ecprop import Designation
from ecad.formula import parse_formula
from ecad.lifting import CAD, COMPLETE, FAIL, TRIVIAL, build_cad
from ecad.polycore import Polynomial, VariableOrder
from ecad.realalg import EQ, compare, sign_at
from ecad.verify import audit_structure


def test_example_counts(ex1):
    order, phi, D = ex1
    assert build_cad(phi, order, D, prune=False).level_counts() == [5, 15, 45]
    cad = build_cad(phi, order, D)
    assert cad.level_counts() == [5, 15, 25]
    lifted = [c for c in cad.cells(2) if c.liftset not in (None, TRIVIAL)]
    assert len(lifted) == 5 and all(c.is_section for c in lifted)
    assert sum(c.liftset == TRIVIAL for c in cad.cells(2)) == 10


def test_true_cells_lie_on_the_solution_curve(ex1):
    order, phi, D = ex1
    cad = build_cad(phi, order, D)
    true = cad.true_leaves()
    assert len(true) == 4
    for c in true:
        assert compare(c.sample[1], 0) == EQ
        assert sign_at(Polynomial.parse("z+x", order), c.sample) == 0


def test_pruned_leaves_are_false_without_evaluation(ex1):
    order, phi, D = ex1
    cad = build_cad(phi, order, D)
    for c in cad.cells(2):
        if c.liftset == TRIVIAL:
            assert c.children[0].truth is False


def test_univariate():
    o = VariableOrder(["x"])
    phi = parse_formula("x^2-1=0", o)
    cad = build_cad(phi, o, Designation.from_map({1: Polynomial.parse("x^2-1", o)}))
    assert cad.level_counts() == [5]
    assert len(cad.true_leaves()) == 2


def test_tautology_labels_every_evaluated_leaf_true():
    o = VariableOrder("x y")
    phi = parse_formula(r"0=0 /\ x^2+y^2-1<=3", o)
    cad = build_cad(phi, o, Designation())
    inside = [c for c in cad.leaves() if c.truth]
    assert inside and len(inside) < len(cad.leaves())
    cad = build_cad(parse_formula("0=0", o), o, Designation())
    assert all(c.truth for c in cad.leaves())


def test_nullification_fails_with_witness():
    o = VariableOrder("x y z")
    phi = parse_formula(r"x*z+y=0 /\ y=0", o)
    D = Designation.from_map({3: Polynomial.parse("x*z+y", o), 2: Polynomial.parse("y", o)})
    first = build_cad(phi, o, D)
    assert first.status == FAIL
    assert first.witness.level == 3 and str(first.witness.poly) == "z*x + y"
    again = build_cad(phi, o, D)
    assert again.witness.cell_index == first.witness.cell_index


def test_monotone_counts(ex1):
    order, phi, D = ex1
    pruned = build_cad(phi, order, D).level_counts()[-1]
    unpruned = build_cad(phi, order, D, prune=False).level_counts()[-1]
    full = build_cad(phi, order, D, mode="full").level_counts()[-1]
    assert pruned <= unpruned <= full
    assert full == 133


def test_sign_invariant_mode(ex1):
    order, phi, D = ex1
    assert build_cad(phi, order, D, mode="sign").level_counts() == [27, 217, 1487]


def test_unknown_mode(ex1):
    order, phi, D = ex1
    with pytest.raises(ValueError):
        build_cad(phi, order, D, mode="fast")


def test_prune_levels_changes_only_which_cells_lift(worked):
    order, phi, D = worked
    assert build_cad(phi, order, D).level_counts() == [3, 13, 23, 33, 53]
    assert build_cad(phi, order, D, prune_levels={3, 5}).level_counts() == [3, 13, 23, 53, 113]


def test_json_round_trip(ex1):
    order, phi, D = ex1
    cad = build_cad(phi, order, D)
    back = CAD.from_json(json.loads(json.dumps(cad.to_json())))
    assert back.level_counts() == cad.level_counts()
    assert [c.truth for c in back.leaves()] == [c.truth for c in cad.leaves()]
    assert audit_structure(back).ok
    assert back.status == COMPLETE


def test_prune_levels_sweep_reproduces_published_outputs(worked):
    from ecad.ecprop import enumerate_designations, explicit_ecs, propagate
    order, phi, _ = worked
    ds = enumerate_designations(propagate(explicit_ecs(phi), order))
    finals = {build_cad(phi, order, D, prune_levels={3, 5}).level_counts()[-1] for D in ds}
    literal = {build_cad(phi, order, D).level_counts()[-1] for D in ds}
    assert finals == {93, 103, 113}
    assert literal == {53}
