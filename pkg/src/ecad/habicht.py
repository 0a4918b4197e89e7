"""Real root counting with parametric coefficients.

For P in Z[x_1..x_k] of degree p in x_k, the principal Sturm-Habicht
coefficients are polynomials in x_1..x_{k-1}. Their signs at a point alpha
determine the number of distinct real roots of P(alpha, x_k), as long as the
leading coefficient does not vanish at alpha. Lifting uses this to decide
which candidate roots from a norm are genuine without certifying any of them
as exact zeros.
"""
from functools import lru_cache

from .polycore import Polynomial, divide_exact


def _det(rows):
    # fraction-free Gaussian elimination (Bareiss) over Z[x]
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return None
    order = next(c.order for r in m for c in r)
    sign = 1
    prev = Polynomial.constant(order, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Polynomial(order)
        piv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * piv - m[i][k] * m[k][j]
                m[i][j] = divide_exact(num, prev)
            m[i][k] = Polynomial(order)
        prev = piv
    d = m[n - 1][n - 1]
    return d if sign > 0 else -d


def principal_subresultant(P, Q, i, j):
    """j-th principal subresultant coefficient of P, Q in variable i
    (deg P > deg Q >= j)."""
    p, q = P.degree(i), Q.degree(i)
    pc, qc = P.coeffs(i), Q.coeffs(i)
    size = p + q - 2 * j
    top = p + q - j - 1
    zero = Polynomial(P.order)
    rows = []
    for coeffs, shifts in ((pc, q - j), (qc, p - j)):
        for s in range(shifts - 1, -1, -1):
            row = [zero] * size
            for d, c in enumerate(coeffs):
                col = top - (d + s)
                if 0 <= col < size:
                    row[col] = c
            rows.append(row)
    return _det(rows)


@lru_cache(maxsize=4096)
def sturm_habicht(P, i):
    """Principal Sturm-Habicht coefficients [stha_p, ..., stha_0] of P in
    variable i."""
    p = P.degree(i)
    if p < 1:
        raise ValueError("Sturm-Habicht sequence needs positive degree")
    D = P.diff(i)
    out = [P.leading_coeff(i), D.leading_coeff(i)]
    for j in range(p - 2, -1, -1):
        k = p - j - 1
        delta = -1 if (k * (k + 1) // 2) % 2 else 1
        c = principal_subresultant(P, D, i, j)
        out.append(c if delta > 0 else -c)
    return tuple(out)


def count_from_signs(signs):
    """Number of distinct real roots from the signs [s_p, ..., s_0] with
    s_p != 0 (permanences minus variations, with the gap rule for zeros)."""
    total = 0
    last, last_pos = None, None
    for pos, s in enumerate(signs):
        if s == 0:
            continue
        if last is not None:
            gap = pos - last_pos
            if gap % 2 == 1:
                eps = -1 if (gap * (gap - 1) // 2) % 2 else 1
                total += eps * last * s
        last, last_pos = s, pos
    return total


def truncate_at(P, i, is_zero):
    """Drop leading terms (in variable i) whose coefficients vanish, as
    decided by ``is_zero(coefficient)``; returns the truncated polynomial."""
    cs = P.coeffs(i)
    top = len(cs) - 1
    while top >= 0 and (cs[top].is_zero() or is_zero(cs[top])):
        top -= 1
    if top == len(cs) - 1:
        return P
    return Polynomial.from_coeffs(P.order, P.order[i], cs[:top + 1])
