import random
from fractions import Fraction

import sympy as sp

from conftest import to_sympy
from ecad.habicht import count_from_signs, sturm_habicht
from ecad.polycore import Polynomial, VariableOrder, evaluate

O = VariableOrder("a t")


def _signs(seq, a):
    out = []
    for c in seq:
        v = evaluate(c, {"a": a}) if c.mvar_index >= 0 else c
        c0 = v.constant_value if v.terms else 0
        out.append((c0 > 0) - (c0 < 0))
    return out


def test_parametric_counts_match_sympy():
    rng = random.Random(11)
    t = sp.Symbol("t")
    checked = 0
    for _ in range(80):
        deg = rng.randint(2, 5)
        terms = {(rng.randint(0, 2), e): rng.randint(-5, 5) for e in range(deg)}
        terms[(0, deg)] = rng.choice([-2, -1, 1, 2])
        P = Polynomial(O, {k: v for k, v in terms.items() if v})
        if P.degree("t") < 1:
            continue
        seq = sturm_habicht(P, 1)
        for a in (Fraction(-2), Fraction(1, 3), Fraction(3)):
            inst = to_sympy(P).subs(sp.Symbol("a"), sp.Rational(a.numerator, a.denominator))
            expected = len(set(sp.Poly(inst, t).real_roots()))
            assert count_from_signs(_signs(seq, a)) == expected
            checked += 1
    assert checked > 100


def test_count_handles_gaps():
    # t^3 (a triple root at 0) counts once
    P = Polynomial.parse("t^3", O)
    assert count_from_signs(_signs(sturm_habicht(P, 1), Fraction(0))) == 1
