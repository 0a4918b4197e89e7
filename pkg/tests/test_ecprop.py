import pytest

from conftest import to_sympy
from ecad.ecprop import (Designation, designate_heuristic, enumerate_designations,
                         explicit_ecs, propagate)
from ecad.errors import InvalidDesignationError
from ecad.formula import parse_formula
from ecad.polycore import Polynomial, VariableOrder
import sympy as sp


def test_explicit_ecs_only_top_level_equations():
    o = VariableOrder("x y")
    phi = parse_formula(r"x=0 /\ (y=0 \/ x>1) /\ y^2-x=0", o)
    assert [str(p) for p in explicit_ecs(phi)] == ["x", "y^2 - x"]


def test_propagation_matches_oracle(worked, derived):
    order, phi, _ = worked
    table = propagate(explicit_ecs(phi), order)
    assert table.counts() == {5: 4, 4: 5, 3: 3, 2: 1}
    for k, polys in derived["propagation"].items():
        ours = {sp.expand(to_sympy(p)) for p in table[int(k)]}
        ref = {sp.expand(sp.sympify(s)) for s in polys}
        assert {frozenset((e, -e)) for e in ours} == {frozenset((e, -e)) for e in ref}, k


def test_zero_resultant_is_reported():
    o = VariableOrder("x y")
    P = lambda s: Polynomial.parse(s, o)  # noqa: E731
    table = propagate([P("(y-x)*(y+1)"), P("(y-x)*(y-2)")], o)
    assert table.warnings and 1 not in table.levels


def test_sixty_designations(worked):
    order, phi, _ = worked
    ds = enumerate_designations(propagate(explicit_ecs(phi), order))
    assert len(ds) == 60
    assert len({d.ecs for d in ds}) == 60


def test_heuristic_prefers_simplest(worked):
    order, phi, _ = worked
    D = designate_heuristic(propagate(explicit_ecs(phi), order))
    assert str(D.get(3)) == "x + 1"
    assert str(D.get(4)) == "y"


def test_validation():
    o = VariableOrder("x y z")
    P = lambda s: Polynomial.parse(s, o)  # noqa: E731
    with pytest.raises(InvalidDesignationError):
        Designation.from_map({3: P("(x-1)*z+(x-1)")}).validate(3)
    with pytest.raises(InvalidDesignationError):
        Designation.from_map({2: P("z+1")}).validate(3)
    with pytest.raises(InvalidDesignationError):
        Designation.from_map({3: P("(z+1)^2")}).validate(3)
    Designation.from_map({3: P("x*z+y")}).validate(3)
