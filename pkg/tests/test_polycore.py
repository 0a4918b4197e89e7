import pytest
import sympy as sp
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given, settings, strategies as st

from conftest import from_sympy, to_sympy
from ecad.errors import NotDivisibleError, ParseError, UnknownVariableError
from ecad.polycore import (Polynomial, VariableOrder, content_prim, discriminant,
                           divide_exact, evaluate, gcd, normalize, resultant,
                           squarefree_basis, squarefree_part)

O = VariableOrder("x y z")
X, Y, Z = sp.symbols("x y z")


def P(s):
    return Polynomial.parse(s, O)


terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 2), st.integers(0, 3)),
    st.integers(-6, 6), max_size=5)


def poly_from(d):
    return Polynomial(O, {e: c for e, c in d.items() if c})


def test_parse_and_print_canonical():
    p = P("(x+y)^2*z - 3")
    assert str(p) == "z*y^2 + 2*z*y*x + z*x^2 - 3"
    assert P(str(p)) == p
    assert p.mvar == "z" and p.degree("z") == 1


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as e:
        P("x + * y")
    assert e.value.pos == 4
    with pytest.raises(UnknownVariableError) as e:
        P("x + w")
    assert e.value.pos == 4


@settings(max_examples=60, deadline=None)
@given(terms, terms)
def test_ring_operations_agree_with_sympy(a, b):
    p, q = poly_from(a), poly_from(b)
    assert sp.expand(to_sympy(p + q) - (to_sympy(p) + to_sympy(q))) == 0
    assert sp.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sp.expand(to_sympy(p - q) - (to_sympy(p) - to_sympy(q))) == 0


@settings(max_examples=40, deadline=None)
@given(terms, terms)
def test_resultant_matches_sympy(a, b):
    p, q = poly_from(a), poly_from(b)
    if p.degree("z") < 1 or q.degree("z") < 1:
        return
    ours = to_sympy(resultant(p, q, "z"))
    # Sylvester determinant; sp.resultant flips the sign when deg p < deg q
    ref = sylvester(to_sympy(p), to_sympy(q), Z, 1).det()
    assert sp.expand(ours - ref) == 0


def test_resultant_sign_convention():
    assert resultant(P("z+y"), P("z^3"), "z") == P("-y^3")
    assert resultant(P("z^3"), P("z+y"), "z") == P("y^3")


@pytest.mark.parametrize("text", ["z^2+x*z+y", "x*z^3-y*z+1", "z^4-2*x*z^2+x^2", "3*z-y"])
def test_discriminant_matches_sympy(text):
    p = P(text)
    ref = sp.discriminant(to_sympy(p), Z) if p.degree("z") > 1 else 1
    assert sp.expand(to_sympy(discriminant(p, "z")) - ref) == 0


def test_gcd_and_exact_division():
    a, b = P("(z-x)*(z+y)^2"), P("(z+y)*(z^2+1)")
    assert gcd(a, b).sign_normalized() == P("z+y")
    assert divide_exact(a, P("z+y")) == P("(z-x)*(z+y)")
    with pytest.raises(NotDivisibleError):
        divide_exact(a, P("z+2"))


def test_content_primitive_split():
    c, p = content_prim(P("(x-1)*z+(x-1)"))
    assert c.sign_normalized() == P("x-1") and p == P("z+1")


def test_normalize_gives_primitive_squarefree_pieces():
    assert sorted(map(str, normalize(P("4*y^2*(x-1)")))) == ["x - 1", "y"]
    assert squarefree_part(P("(z-x)^3*(z+1)")) == P("(z-x)*(z+1)")


def test_squarefree_basis_is_pairwise_coprime():
    basis = squarefree_basis([P("z^2-1"), P("z^2+z"), P("z^3-z")])
    assert sorted(map(str, basis)) == ["z", "z + 1", "z - 1"]
    for i, a in enumerate(basis):
        for b in basis[i + 1:]:
            assert gcd(a, b).is_constant()


def test_evaluate_prefix_scaled():
    v = evaluate(P("x*z+y"), {"x": 0, "y": 1})
    assert v.is_constant() and v.constant_value > 0
    assert evaluate(P("2*x*z - 1"), {"x": 1}) == P("2*z - 1")


def test_from_sympy_round_trip():
    expr = (X - Y) ** 2 * Z + 5
    assert sp.expand(to_sympy(from_sympy(expr, O)) - expr) == 0
