"""Independent reference values computed with sympy.

Run ``python tests/oracles/derive.py`` to regenerate ``tests/data/derived.json``.
Nothing here imports the package under test.
"""
import json
import random
from fractions import Fraction
from pathlib import Path

import sympy as sp

OUT = Path(__file__).resolve().parents[1] / "data" / "derived.json"

v, u, x, y, z = sp.symbols("v u x y z")
F1 = x - y + z**2
F2 = z**2 - u**2 + v**2 - 1
F3 = x + y + z**2
F4 = z**2 + u**2 - v**2 - 1
R1 = -u**2 + v**2 - x + y - 1


def canon(expr, gens):
    """Primitive, positive-leading string form of a polynomial."""
    p = sp.Poly(sp.expand(expr), *gens)
    _, p = p.primitive()
    if p.LC() < 0:
        p = -p
    return sp.srepr(p.as_expr())


def resultant_values():
    gens = (v, u, x, y, z)
    a = sp.resultant(R1, sp.resultant(F1, F3, z), y)
    b = sp.resultant(R1, sp.resultant(F1, F4, z), y)
    c = sp.resultant(F1, F2, z)
    return {
        "res_y(r1,res_z(f1,f3))": str(sp.factor(a)),
        "res_y(r1,res_z(f1,f4))": str(sp.factor(b)),
        "res_z(f1,f2)": str(sp.factor(c)),
        "expand": {
            "res_y(r1,res_z(f1,f3))": str(sp.expand(a)),
            "res_y(r1,res_z(f1,f4))": str(sp.expand(b)),
        },
        "gens": [str(g) for g in gens],
    }


def propagation_table():
    """Close {f1..f4} under same-level resultants, splitting each resultant
    into its squarefree factors (not irreducible ones)."""
    gens = (v, u, x, y, z)
    levels = {5: [F1, F2, F3, F4]}
    seen = {canon(f, gens) for f in levels[5]}
    for k in (5, 4, 3, 2):
        var = gens[k - 1]
        cur = levels.get(k, [])
        for i in range(len(cur)):
            for j in range(i + 1, len(cur)):
                r = sp.resultant(cur[i], cur[j], var)
                if r == 0:
                    continue
                _, facs = sp.sqf_list(sp.expand(r), *gens)
                for f, _ in facs:
                    P = sp.Poly(f, *gens)
                    if P.total_degree() == 0:
                        continue
                    key = canon(f, gens)
                    if key in seen:
                        continue
                    seen.add(key)
                    lvl = max(idx + 1 for idx, g in enumerate(gens) if P.degree(g) > 0)
                    levels.setdefault(lvl, []).append(f)
    return {str(k): sorted(str(sp.expand(canon_expr(f, gens))) for f in fs)
            for k, fs in sorted(levels.items())}


def canon_expr(f, gens):
    p = sp.Poly(sp.expand(f), *gens)
    _, p = p.primitive()
    return -p.as_expr() if p.LC() < 0 else p.as_expr()


def root_counts(seed=7, trials=60):
    """Distinct real root counts of random integer polynomials."""
    rng = random.Random(seed)
    t = sp.Symbol("t")
    out = []
    for _ in range(trials):
        deg = rng.randint(1, 7)
        coeffs = [rng.randint(-9, 9) for _ in range(deg)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
        p = sum(c * t**i for i, c in enumerate(coeffs))
        roots = sp.Poly(p, t).real_roots()
        out.append({"coeffs": coeffs, "distinct_real_roots": len(set(roots))})
    return out


def locate_truths():
    """Ex.1 formula evaluated directly at the documented points."""
    f1 = x + y**2 + z
    f2 = x - y**2 + z
    g = x**2 + y**2 + z**2 - 1
    pts = [(1, 0, -1), (0, 0, 0), (-1, 0, 1), (Fraction(1, 2), 0, Fraction(-1, 2))]
    res = []
    for p in pts:
        s = dict(zip((x, y, z), [sp.Rational(str(c)) for c in p]))
        truth = bool(f1.subs(s) == 0 and f2.subs(s) == 0 and g.subs(s) >= 0)
        res.append({"point": [str(c) for c in p], "truth": truth})
    return res


def bounds_grid():
    """Dominant terms of the P and EC-full bounds, with sympy Rationals."""
    grid = []
    for n, m, d, ell in [(3, 3, 2, 2), (2, 2, 2, 1), (3, 2, 2, 1), (4, 2, 2, 1), (4, 3, 2, 2),
                         (4, 3, 3, 3), (5, 2, 2, 1), (5, 3, 2, 2), (5, 6, 2, 4), (3, 4, 4, 2),
                         (2, 6, 4, 1), (6, 3, 2, 3), (6, 5, 3, 5), (4, 5, 2, 1), (5, 4, 3, 3),
                         (3, 6, 3, 1), (6, 6, 2, 2), (2, 3, 3, 1), (4, 4, 4, 3), (5, 5, 4, 4)]:
        n_, m_, d_, l_ = map(sp.Integer, (n, m, d, ell))
        p = (2 * d_) ** (2**n_ - 1) * m_ ** (2**n_ - 1) * sp.Integer(2) ** (2 ** (n_ - 1) - 1)
        e = (2 * d_) ** (2**n_ - 1) * m_ ** (2 ** (n_ - l_) - 2) * sp.Integer(2) ** (l_ * 2 ** (n_ - l_) - 3 * l_)
        grid.append({"n": n, "m": m, "d": d, "l": ell, "eq5": str(p), "eq8": str(e)})
    return grid


def main():
    data = {
        "resultants": resultant_values(),
        "propagation": propagation_table(),
        "root_counts": root_counts(),
        "locate": locate_truths(),
        "bounds": bounds_grid(),
    }
    OUT.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
