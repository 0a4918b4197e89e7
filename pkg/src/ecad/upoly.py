"""Dense univariate integer polynomials (lists of ints, constant term first).

Used by root isolation and algebraic-number comparison; the inner loops live
in :mod:`ecad.kernels`.
"""
import math
from fractions import Fraction

from .kernels import descartes_01, eval_hom, halve, sign_at, taylor_shift1


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a):
    return len(a) - 1


def content(a):
    g = 0
    for c in a:
        g = math.gcd(g, c)
    return g


def primitive(a):
    a = trim(a)
    if not a:
        return a
    g = content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def deriv(a):
    return [i * c for i, c in enumerate(a)][1:]


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _rem_positive(a, b):
    # remainder of a by b scaled by a positive rational
    a = trim(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1]
        s = len(a) - 1 - db
        a = [abs(lb) * x for x in a]
        c = c if lb > 0 else -c
        for j in range(db + 1):
            a[s + j] -= c * b[j]
        a = trim(a)
    return a


def divexact(a, b):
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError
    q = [0] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    db = len(b) - 1
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if not c:
            continue
        t, r = divmod(c, lb)
        if r:
            raise ArithmeticError("inexact univariate division")
        q[k - db] = t
        for j in range(db + 1):
            a[k - db + j] -= t * b[j]
    if any(a):
        raise ArithmeticError("inexact univariate division")
    return trim(q)


def gcd(a, b):
    """Primitive gcd with positive leading coefficient."""
    a, b = primitive(a), primitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = primitive(_rem_positive(a, b))
        a, b = b, r
        if len(a) == 1:
            return [1]
    return primitive(a)


def sqfree(a):
    a = primitive(a)
    if len(a) <= 2:
        return a
    g = gcd(a, deriv(a))
    if len(g) == 1:
        return a
    return primitive(divexact(a, g))


def value(a, x):
    x = Fraction(x)
    return Fraction(eval_hom(list(a), x.numerator, x.denominator), x.denominator ** max(len(a) - 1, 0))


def sign(a, x):
    x = Fraction(x)
    return sign_at(list(a), x.numerator, x.denominator)


def sturm(a):
    seq = [primitive(a), primitive(deriv(a))]
    if not seq[1]:
        return seq[:1]
    while True:
        r = _rem_positive(seq[-2], seq[-1])
        if not r:
            break
        g = content(r)
        seq.append([-c // g for c in r])
    return seq


def _variations_at(seq, x):
    signs = [sign(s, x) for s in seq]
    count, last = 0, 0
    for s in signs:
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def count_roots(a, lo, hi, seq=None):
    """Number of distinct real roots in the half-open interval (lo, hi]."""
    seq = sturm(a) if seq is None else seq
    return _variations_at(seq, lo) - _variations_at(seq, hi)


def root_bound_log2(a):
    """k with every real root of a strictly inside (-2**k, 2**k)."""
    lc = abs(a[-1])
    m = max((abs(c) for c in a[:-1]), default=0)
    bound = 1 + Fraction(m, lc)
    k = 0
    while 2 ** k <= bound:
        k += 1
    return k


def _positive_roots(f, k, zero_root=False):
    # roots of f in (0, 2**k) as (lo, hi) pairs; zero_root keeps intervals
    # away from 0 when the caller divided out a root there
    g = [c << (k * i) for i, c in enumerate(f)]
    out = []
    stack = [(g, 0, 0)]
    while stack:
        h, c, j = stack.pop()
        v = descartes_01(h)
        if v == 0:
            continue
        if v == 1 and h[0] and sum(h) and not (zero_root and c == 0):
            out.append(("interval", c, j))
            continue
        hl = halve(h)
        hr = taylor_shift1(hl)
        if hr[0] == 0:
            out.append(("exact", 2 * c + 1, j + 1))
        stack.append((hr, 2 * c + 1, j + 1))
        stack.append((hl, 2 * c, j + 1))
    res = []
    for kind, c, j in out:
        if kind == "exact":
            res.append((Fraction(c << k, 1 << j), Fraction(c << k, 1 << j)))
        else:
            res.append((Fraction(c << k, 1 << j), Fraction((c + 1) << k, 1 << j)))
    return res


def isolate(a):
    """Isolating intervals (lo, hi) for the distinct real roots of a, sorted.

    Exact rational roots come back with lo == hi; otherwise the open interval
    contains exactly one root and a is nonzero at both endpoints.
    """
    f = sqfree(a)
    if len(f) <= 1:
        return []
    roots = []
    zero = f[0] == 0
    if zero:
        roots.append((Fraction(0), Fraction(0)))
        f = f[1:]
    if len(f) > 1:
        k = root_bound_log2(f)
        roots.extend(_positive_roots(f, k, zero))
        neg = [c if i % 2 == 0 else -c for i, c in enumerate(f)]
        roots.extend((-hi, -lo) for lo, hi in _positive_roots(neg, k, zero))
    roots.sort()
    return roots
