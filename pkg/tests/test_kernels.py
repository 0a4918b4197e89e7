import importlib

import pytest
from hypothesis import given, settings, strategies as st

from ecad import _kernels_py as py
from ecad import kernels, upoly

try:
    cy = importlib.import_module("ecad._kernels")
except ImportError:  # extension not built
    cy = None

coeffs = st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=12)
needs_ext = pytest.mark.skipif(cy is None, reason="compiled kernels not built")


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")


@needs_ext
@settings(max_examples=200, deadline=None)
@given(coeffs, st.integers(-50, 50), st.integers(1, 64))
def test_compiled_kernels_match_fallback(cs, num, den):
    assert cy.eval_hom(list(cs), num, den) == py.eval_hom(list(cs), num, den)
    assert cy.sign_at(list(cs), num, den) == py.sign_at(list(cs), num, den)
    assert cy.sign_variations(list(cs)) == py.sign_variations(list(cs))
    assert cy.taylor_shift1(list(cs)) == py.taylor_shift1(list(cs))
    assert cy.halve(list(cs)) == py.halve(list(cs))
    assert cy.descartes_01(list(cs)) == py.descartes_01(list(cs))


def test_fallback_values():
    # x^2 - 2 at 3/2, homogenised: 9 - 2*4 = 1
    assert py.eval_hom([-2, 0, 1], 3, 2) == 1
    assert py.sign_variations([1, -1, 0, 1]) == 2
    assert py.taylor_shift1([0, 0, 1]) == [1, 2, 1]


@pytest.mark.parametrize("poly,expected", [
    ([-2, 0, 1], 2),
    ([1, 0, 1], 0),
    ([0, -1, 0, 1], 3),
    ([-6, 11, -6, 1], 3),
    ([1, -4, 6, -4, 1], 1),
])
def test_isolate_counts_distinct_roots(poly, expected):
    ivs = upoly.isolate(poly)
    assert len(ivs) == expected
    f = upoly.sqfree(poly)
    for lo, hi in ivs:
        if lo == hi:
            assert upoly.sign(poly, lo) == 0
        else:
            assert upoly.sign(f, lo) * upoly.sign(f, hi) < 0


def test_isolate_against_frozen_root_counts(derived):
    for case in derived["root_counts"]:
        assert len(upoly.isolate(case["coeffs"])) == case["distinct_real_roots"], case
