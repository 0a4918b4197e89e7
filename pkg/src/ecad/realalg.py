"""Real algebraic numbers and exact sign determination at sample points.

A coordinate is a squarefree integer polynomial plus an isolating interval.
Signs of multivariate polynomials at points with algebraic coordinates are
found by interval evaluation under refinement. A zero is only reported with
an exact certificate: the top coordinate compares equal to one of the roots
of the polynomial over the lower coordinates. Those roots come from a norm
(resultants against the coordinates' defining polynomials), filtered down to
the count given by Sturm-Habicht signs, so the recursion only ever descends.
``eliminant`` gives an independent certificate used for cross-checking.
"""
from __future__ import annotations

import math
from fractions import Fraction

from . import upoly
from .errors import DegenerateTowerError
from .habicht import count_from_signs, sturm_habicht, truncate_at
from .polycore import Polynomial, VariableOrder, gcd, resultant

NEG, ZERO, POS = -1, 0, 1
LT, EQ, GT = -1, 0, 1

_INTERVAL_ROUNDS = 4


class RealAlgebraicNumber:
    """Exact real algebraic number.

    ``defpoly`` is squarefree with integer coefficients (constant term
    first). Rationals are stored with a linear defining polynomial and a
    degenerate interval. Refinement shrinks the cached interval in place;
    the number itself never changes.
    """

    __slots__ = ("_poly", "_lo", "_hi", "_slo")

    def __init__(self, defpoly, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        poly = upoly.primitive(defpoly)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        if lo == hi:
            if upoly.sign(poly, lo) != 0:
                raise ValueError(f"{lo} is not a root of {poly}")
            self._set_rational(lo)
            return
        slo, shi = upoly.sign(poly, lo), upoly.sign(poly, hi)
        if slo * shi >= 0:
            raise ValueError(f"no sign change of {poly} on ({lo}, {hi})")
        self._poly = tuple(poly)
        self._lo, self._hi, self._slo = lo, hi, slo

    def _set_rational(self, q):
        self._poly = (-q.numerator, q.denominator)
        self._lo = self._hi = q
        self._slo = 0

    @classmethod
    def from_rational(cls, q):
        r = object.__new__(cls)
        r._set_rational(Fraction(q))
        return r

    @property
    def defpoly(self):
        return self._poly

    @property
    def lo(self):
        return self._lo

    @property
    def hi(self):
        return self._hi

    @property
    def is_rational(self):
        return self._lo == self._hi

    @property
    def value(self):
        if not self.is_rational:
            raise ValueError("irrational algebraic number has no rational value")
        return self._lo

    def width(self):
        return self._hi - self._lo

    def refine(self):
        """Halve the isolating interval (exact hit turns it rational)."""
        if self._lo == self._hi:
            return self
        mid = (self._lo + self._hi) / 2
        s = upoly.sign(self._poly, mid)
        if s == 0:
            self._set_rational(mid)
        elif s == self._slo:
            self._lo = mid
        else:
            self._hi = mid
        return self

    def refine_to(self, width):
        while self._hi - self._lo > width:
            self.refine()
        return self

    def is_root_of(self, poly):
        """Whether this number is a root of the univariate ``poly``."""
        if self.is_rational:
            return upoly.sign(poly, self._lo) == 0
        while True:
            a, b = upoly.sign(poly, self._lo), upoly.sign(poly, self._hi)
            if a and b:
                if a != b:
                    return True
                # same sign at both ends; an even number of roots inside
                g = upoly.gcd(list(self._poly), list(poly))
                if len(g) == 1:
                    return False
                return upoly.sign(g, self._lo) != upoly.sign(g, self._hi)
            self.refine()

    def restricted(self, factor):
        """Same number with a smaller defining polynomial (a factor it is a
        root of)."""
        if self.is_rational:
            return self
        return RealAlgebraicNumber(factor, self._lo, self._hi)

    def __float__(self):
        if self.is_rational:
            return float(self._lo)
        self.refine_to(Fraction(1, 1 << 60) * max(1, abs(self._lo)))
        return float((self._lo + self._hi) / 2)

    def __repr__(self):
        if self.is_rational:
            return f"RealAlgebraicNumber({self._lo})"
        return f"RealAlgebraicNumber({list(self._poly)}, {self._lo}, {self._hi})"

    def describe(self, var="t"):
        if self.is_rational:
            return str(self._lo)
        p = Polynomial.from_dense(VariableOrder([var]), var, self._poly)
        return f"root of {p} in ({self._lo}, {self._hi}) ~ {float(self):.6g}"

    def to_json(self, var="t"):
        if self.is_rational:
            return {"rational": str(self._lo)}
        p = Polynomial.from_dense(VariableOrder([var]), var, self._poly)
        return {"defpoly": str(p), "lo": str(self._lo), "hi": str(self._hi)}

    @classmethod
    def from_json(cls, data, var="t"):
        if "rational" in data:
            return cls.from_rational(Fraction(data["rational"]))
        order = VariableOrder([var])
        p = Polynomial.parse(data["defpoly"], order).to_dense(var)
        return cls(p, Fraction(data["lo"]), Fraction(data["hi"]))


class SamplePoint(tuple):
    """Coordinates x_1..x_k of a sample point, each a RealAlgebraicNumber."""

    def __new__(cls, coords=()):
        return super().__new__(cls, coords)

    @property
    def coords(self):
        return tuple(self)

    @property
    def level(self):
        return len(self)

    def extend(self, coord):
        if not isinstance(coord, RealAlgebraicNumber):
            coord = RealAlgebraicNumber.from_rational(coord)
        return SamplePoint(tuple(self) + (coord,))

    def is_rational(self):
        return all(c.is_rational for c in self)

    def __repr__(self):
        return f"SamplePoint({', '.join(c.describe() for c in self)})"


def as_number(x):
    return x if isinstance(x, RealAlgebraicNumber) else RealAlgebraicNumber.from_rational(x)


# -- comparison --------------------------------------------------------------

def _cmp_rational(q, b):
    # compare rational q against b with q inside b's closed interval
    s = upoly.sign(b.defpoly, q)
    if s == 0:
        if b.lo < q < b.hi or b.is_rational:
            return EQ
    if q <= b.lo:
        return LT
    if q >= b.hi:
        return GT
    return LT if s == b._slo else GT


def compare(a, b):
    """Exact three-way comparison of two real algebraic numbers."""
    a, b = as_number(a), as_number(b)
    if a is b:
        return EQ
    common = None
    union_count_seq = None
    while True:
        if a.is_rational and b.is_rational:
            return (a.lo > b.lo) - (a.lo < b.lo)
        if a.hi < b.lo:
            return LT
        if b.hi < a.lo:
            return GT
        if a.is_rational:
            return _cmp_rational(a.lo, b)
        if b.is_rational:
            return -_cmp_rational(b.lo, a)
        if common is None:
            g = upoly.gcd(list(a.defpoly), list(b.defpoly))
            common = g if len(g) > 1 and a.is_root_of(g) and b.is_root_of(g) else False
            if common:
                union_count_seq = upoly.sturm(common)
        if common:
            lo, hi = min(a.lo, b.lo), max(a.hi, b.hi)
            if upoly.count_roots(common, lo, hi, union_count_seq) == 1:
                return EQ
        a.refine()
        b.refine()


# -- evaluation helpers ------------------------------------------------------

def _substitute(p, values):
    """Substitute rationals for the variables at the given indices; the
    result is a positive multiple of the true value, with integer
    coefficients."""
    if not values:
        return p
    acc = {}
    for e, c in p.terms.items():
        v = Fraction(c)
        key = list(e)
        for i, x in values.items():
            k = e[i]
            if k:
                v *= x ** k
                key[i] = 0
        if v:
            key = tuple(key)
            acc[key] = acc.get(key, 0) + v
    acc = {e: v for e, v in acc.items() if v}
    if not acc:
        return Polynomial(p.order)
    den = 1
    for v in acc.values():
        den = den * v.denominator // math.gcd(den, v.denominator)
    return Polynomial._make(p.order, {e: int(v * den) for e, v in acc.items()})


def _ipow(lo, hi, k):
    if k % 2 or lo >= 0:
        return lo ** k, hi ** k
    if hi <= 0:
        return hi ** k, lo ** k
    return Fraction(0), max(lo ** k, hi ** k)


def _imul(a, b):
    p = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(p), max(p)


def interval_eval(p, boxes):
    """Enclosure of p over a box {index: RealAlgebraicNumber}."""
    pows = {}
    lo_sum = hi_sum = Fraction(0)
    for e, c in p.terms.items():
        t = (Fraction(c), Fraction(c))
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                iv = pows.get(key)
                if iv is None:
                    r = boxes[i]
                    iv = pows[key] = _ipow(r.lo, r.hi, k)
                t = _imul(t, iv)
        lo_sum += t[0]
        hi_sum += t[1]
    return lo_sum, hi_sum


def _fresh(order, base="t"):
    name = base
    k = 0
    while name in order:
        k += 1
        name = f"{base}{k}"
    return name


def _restrict_order(p, keep, extra=()):
    """Re-express p (using only variables in ``keep``) over a smaller order."""
    names = [p.order.variables[i] for i in keep] + list(extra)
    order = VariableOrder(names)
    pad = (0,) * len(extra)
    terms = {tuple(e[i] for i in keep) + pad: c for e, c in p.terms.items()}
    return Polynomial._make(order, terms), order


def eliminant(q, coords):
    """Univariate integer polynomial in t whose roots include q(coords).

    ``coords`` maps variable index -> irrational RealAlgebraicNumber and
    must cover every variable of q.
    """
    keep = sorted(coords)
    tname = _fresh(q.order)
    Q, order = _restrict_order(q, keep, (tname,))
    E = Polynomial.var(order, tname) - Q
    for j in reversed(range(len(keep))):
        var = order.variables[j]
        if E.degree(var) > 0:
            m = Polynomial.from_dense(order, var, coords[keep[j]].defpoly)
            E = resultant(m, E, var)
    return E.to_dense(tname)


def _refine_all(coords):
    for c in coords.values():
        c.refine()


def _interval_sign(q, boxes, rounds=None):
    n = 0
    while rounds is None or n < rounds:
        lo, hi = interval_eval(q, boxes)
        if lo > 0:
            return POS
        if hi < 0:
            return NEG
        _refine_all(boxes)
        n += 1
    return None


def _sign_irrational(q, coords, boxes):
    s = _interval_sign(q, boxes, _INTERVAL_ROUNDS)
    if s is not None:
        return s
    # zero test: is the top coordinate a root of q over the lower ones?
    j = q.mvar_index
    prefix = coords[:j]
    if is_nullified(q, prefix):
        return ZERO
    target = coords[j]
    if any(compare(r, target) == EQ for r in _roots_over(q, prefix)):
        return ZERO
    return _interval_sign(q, boxes)


def sign_at(p, sample):
    """Exact sign (-1, 0, 1) of p at a sample point covering its variables."""
    coords = tuple(sample)
    k = p.mvar_index
    if k >= len(coords):
        raise ValueError(f"sample of length {len(coords)} does not cover {p}")
    if k < 0:
        v = p.constant_value if p.terms else 0
        return (v > 0) - (v < 0)
    used = set()
    for e in p.terms:
        used.update(i for i in range(k + 1) if e[i])
    rat = {i: coords[i].lo for i in used if coords[i].is_rational}
    q = _substitute(p, rat)
    if q.mvar_index < 0:
        v = q.constant_value if q.terms else 0
        return (v > 0) - (v < 0)
    boxes = {i: coords[i] for i in used if i not in rat}
    return _sign_irrational(q, coords, boxes)


def is_nullified(p, sample):
    """All coefficients of p in its main variable vanish at the sample."""
    k = len(sample)
    return all(sign_at(c, sample) == ZERO for c in p.coeffs(k) if c.terms)


# -- roots over a sample point ----------------------------------------------

def isolate_roots(p):
    """Distinct real roots of a univariate polynomial, increasing."""
    if isinstance(p, Polynomial):
        if p.is_zero():
            raise ValueError("cannot isolate the roots of the zero polynomial")
        dense = p.to_dense()
    else:
        dense = upoly.trim(p)
        if not dense:
            raise ValueError("cannot isolate the roots of the zero polynomial")
    f = upoly.sqfree(dense)
    return [RealAlgebraicNumber(f, lo, hi) for lo, hi in upoly.isolate(f)]


def _norm(p, coords):
    # univariate polynomial in x_k (k = len(coords)) whose roots contain
    # the roots of p(coords, x_k); conjugates nullifying p are split away
    k = len(coords)
    used = set()
    for e in p.terms:
        used.update(i for i in range(k) if e[i])
    rat = {i: coords[i].lo for i in used if coords[i].is_rational}
    q = _substitute(p, rat)
    irr = sorted(i for i in used if i not in rat and q.degree(i) > 0)
    if not irr:
        return q.to_dense(k)
    P, order = _restrict_order(q, irr + [k])
    for j in reversed(range(len(irr))):
        var = order.variables[j]
        if P.degree(var) < 1:
            continue
        c = coords[irr[j]]
        m = Polynomial.from_dense(order, var, c.defpoly)
        R = resultant(m, P, var)
        if R.is_zero():
            g = gcd(m, P)
            h = upoly.divexact(list(c.defpoly), g.to_dense(var))
            if len(h) > 1 and c.is_root_of(h):
                R = resultant(Polynomial.from_dense(order, var, h), P, var)
            if R.is_zero():
                raise DegenerateTowerError(
                    f"conjugate of coordinate {irr[j] + 1} nullifies {p}")
        P = R
    return P.to_dense(order.variables[-1])


def _roots_over(p, coords):
    k = len(coords)
    used = {i for e in p.terms for i in range(k) if e[i]}
    if all(coords[i].is_rational for i in used):
        q = _substitute(p, {i: coords[i].lo for i in used})
        dense = q.to_dense(k)
        if len(upoly.trim(dense)) <= 1:
            return []
        return isolate_roots(dense)
    P = truncate_at(p, k, lambda c: sign_at(c, coords) == ZERO)
    if P.degree(k) < 1:
        return []
    want = count_from_signs([sign_at(c, coords) for c in sturm_habicht(P, k)])
    if want == 0:
        return []
    N = _norm(P, coords)
    alive = isolate_roots(N)
    if len(alive) == want:
        return alive
    # discard roots of conjugate factors until only the genuine ones remain
    rat = {i: coords[i].lo for i in used if coords[i].is_rational}
    q = _substitute(P, rat)
    boxes = {i: coords[i] for i in used if i not in rat}
    while len(alive) > want:
        keep = []
        for r in alive:
            boxes[k] = r
            lo, hi = interval_eval(q, boxes)
            if lo <= 0 <= hi:
                keep.append(r)
        alive = keep
        if len(alive) > want:
            for r in alive:
                r.refine()
            _refine_all({i: c for i, c in boxes.items() if i != k})
    if len(alive) < want:
        raise ArithmeticError("root count mismatch over an algebraic sample")
    return alive


def substitute_roots(polys, sample):
    """Merged real roots in x_k of the polynomials substituted at the sample.

    Returns ``[(root, origins)]`` strictly increasing, where ``origins`` is
    the frozenset of indices into ``polys`` vanishing at that root.
    """
    coords = tuple(sample)
    k = len(coords)
    roots = []
    tags = []
    for idx, p in enumerate(polys):
        if p.mvar_index != k:
            raise ValueError(f"{p} does not have main variable x_{k + 1}")
        if is_nullified(p, coords):
            raise ValueError(f"{p} is nullified at the sample point")
        for r in _roots_over(p, coords):
            _insert(roots, tags, r, idx)
    return [(r, frozenset(t)) for r, t in zip(roots, tags)]


def _insert(roots, tags, r, idx):
    lo, hi = 0, len(roots)
    while lo < hi:
        mid = (lo + hi) // 2
        c = compare(r, roots[mid])
        if c == EQ:
            tags[mid].add(idx)
            return
        if c == LT:
            hi = mid
        else:
            lo = mid + 1
    roots.insert(lo, r)
    tags.insert(lo, {idx})


# -- sample selection --------------------------------------------------------

def simplest_between(a, b):
    """Simplest rational strictly inside (a, b): the integer of least
    magnitude if there is one, else the one of least denominator."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError(f"empty interval ({a}, {b})")
    first = math.floor(a) + 1
    last = math.ceil(b) - 1
    if first <= last:
        if first <= 0 <= last:
            return Fraction(0)
        return Fraction(first if first > 0 else last)
    return _stern_brocot(a, b)


def _stern_brocot(a, b):
    # simplest fraction in open (a, b), no integer inside
    fl = math.floor(a)
    lo = 1 / (b - fl)
    hi = None if a == fl else 1 / (a - fl)
    return fl + 1 / _simplest_above(lo, hi)


def _simplest_above(lo, hi):
    # simplest rational in (lo, hi) with lo >= 1, hi possibly infinite
    n = math.floor(lo) + 1
    if hi is None or n < hi:
        return Fraction(n)
    return _stern_brocot(lo, hi)


def floor_of(r):
    """Exact floor of a real algebraic number."""
    if r.is_rational:
        return math.floor(r.lo)
    while math.floor(r.lo) != math.floor(r.hi) or r.hi == math.floor(r.hi):
        m = math.ceil(r.lo)
        if m < r.hi and upoly.sign(r.defpoly, m) == 0:
            # the interval isolates a single root, so this integer is it
            r._set_rational(Fraction(m))
            return m
        r.refine()
        if r.is_rational:
            return math.floor(r.lo)
    return math.floor(r.lo)


def ceil_of(r):
    if r.is_rational:
        return math.ceil(r.lo)
    return floor_of(r) + 1


def _shift(p, n):
    out = []
    for c in reversed(p):
        # out = out * (x + n) + c
        nxt = [0] * (len(out) + 1)
        for i, a in enumerate(out):
            nxt[i + 1] += a
            nxt[i] += a * n
        nxt[0] += c
        out = nxt
    return out


def _recip_shift(r, n):
    # the number 1 / (r - n), for r > n
    if r.is_rational:
        return RealAlgebraicNumber.from_rational(1 / (r.lo - n))
    while r.lo <= n:
        r.refine()
        if r.is_rational:
            return RealAlgebraicNumber.from_rational(1 / (r.lo - n))
    q = list(reversed(_shift(list(r.defpoly), n)))
    return RealAlgebraicNumber(q, 1 / (r.hi - n), 1 / (r.lo - n))


def _simplest(lower, upper):
    # simplest rational strictly between exact numbers (upper None = +inf)
    first = floor_of(lower) + 1
    if upper is None or compare(RealAlgebraicNumber.from_rational(first), upper) == LT:
        if upper is None:
            return Fraction(max(first, 0))
        last = ceil_of(upper) - 1
        if first <= 0 <= last:
            return Fraction(0)
        return Fraction(first if first > 0 else last)
    n = first - 1
    lo2 = _recip_shift(upper, n)
    hi2 = None if lower.is_rational and lower.lo == n else _recip_shift(lower, n)
    return n + 1 / _simplest(lo2, hi2)


def sector_sample(lower, upper):
    """Rational sample for the sector between adjacent roots (None marks an
    unbounded side). Depends only on the exact root values."""
    if lower is None and upper is None:
        return Fraction(0)
    if lower is None:
        return Fraction(floor_of(upper) - 1)
    if upper is None:
        return Fraction(ceil_of(lower) + 1)
    if lower.is_rational and upper.is_rational:
        return simplest_between(lower.lo, upper.lo)
    return _simplest(lower, upper)


__all__ = ["RealAlgebraicNumber", "SamplePoint", "compare", "sign_at",
           "isolate_roots", "substitute_roots", "is_nullified", "eliminant",
           "interval_eval", "simplest_between", "sector_sample",
           "floor_of", "ceil_of",
           "NEG", "ZERO", "POS", "LT", "EQ", "GT"]
