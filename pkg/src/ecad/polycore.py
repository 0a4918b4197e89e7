"""Sparse multivariate polynomials over the integers.

A :class:`Polynomial` maps exponent vectors (one entry per variable of its
:class:`VariableOrder`, smallest variable first) to nonzero Python ints.
Values are immutable; every algebraic routine is a pure function and the
expensive ones (gcd, resultant, discriminant) are memoised.
"""
from __future__ import annotations

import math
import operator
import re
from fractions import Fraction
from functools import lru_cache

from .errors import NotDivisibleError, ParseError, UnknownVariableError

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class VariableOrder:
    """Ordered variables, smallest first: ``VariableOrder("v u x y z")``."""

    __slots__ = ("variables", "_index")

    def __init__(self, variables):
        if isinstance(variables, str):
            variables = [v for v in re.split(r"[\s,]+", variables) if v]
        vs = tuple(variables)
        if not vs:
            raise ValueError("variable order must be nonempty")
        if len(set(vs)) != len(vs):
            raise ValueError(f"duplicate variables in {vs}")
        for v in vs:
            if not _IDENT.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        self.variables = vs
        self._index = {v: i for i, v in enumerate(vs)}

    def index(self, var):
        if isinstance(var, int):
            if not 0 <= var < len(self.variables):
                raise UnknownVariableError(f"variable index {var} out of range")
            return var
        try:
            return self._index[var]
        except KeyError:
            raise UnknownVariableError(f"unknown variable {var!r}") from None

    def __len__(self):
        return len(self.variables)

    def __iter__(self):
        return iter(self.variables)

    def __contains__(self, var):
        return var in self._index

    def __getitem__(self, i):
        return self.variables[i]

    def __eq__(self, other):
        return isinstance(other, VariableOrder) and self.variables == other.variables

    def __hash__(self):
        return hash(self.variables)

    def __repr__(self):
        return f"VariableOrder({' ≺ '.join(self.variables)})"


def _lex_key(exps):
    # lexicographic with the greatest variable compared first
    return exps[::-1]


def _grlex_key(exps):
    return (sum(exps), exps[::-1])


class Polynomial:
    __slots__ = ("order", "terms", "_hash", "_mvar")

    def __init__(self, order, terms=None):
        self.order = order
        n = len(order)
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {n} variables")
                c = int(c)
                if c:
                    clean[e] = c
        self.terms = clean
        self._hash = None
        self._mvar = None

    @classmethod
    def _make(cls, order, terms):
        p = object.__new__(cls)
        p.order = order
        p.terms = terms
        p._hash = None
        p._mvar = None
        return p

    # -- construction -----------------------------------------------------
    @classmethod
    def constant(cls, order, c):
        c = int(c)
        return cls._make(order, {(0,) * len(order): c} if c else {})

    @classmethod
    def var(cls, order, name, power=1):
        i = order.index(name)
        e = [0] * len(order)
        e[i] = power
        return cls._make(order, {tuple(e): 1})

    @classmethod
    def parse(cls, text, order):
        return _Parser(text, order).parse_polynomial()

    @classmethod
    def from_coeffs(cls, order, var, coeffs):
        """Rebuild ``sum(coeffs[j] * var**j)``."""
        i = order.index(var)
        out = {}
        for j, c in enumerate(coeffs):
            for e, a in c.terms.items():
                if j:
                    e = e[:i] + (e[i] + j,) + e[i + 1:]
                out[e] = out.get(e, 0) + a
        return cls._make(order, {e: a for e, a in out.items() if a})

    @classmethod
    def from_dense(cls, order, var, ints):
        i = order.index(var)
        n = len(order)
        out = {}
        for j, a in enumerate(ints):
            if a:
                e = [0] * n
                e[i] = j
                out[tuple(e)] = int(a)
        return cls._make(order, out)

    # -- predicates and accessors -----------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return self.mvar_index < 0

    @property
    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()), 0)

    @property
    def mvar_index(self):
        m = self._mvar
        if m is None:
            m = -1
            for e in self.terms:
                for i in range(len(e) - 1, m, -1):
                    if e[i]:
                        m = i
                        break
            self._mvar = m
        return m

    @property
    def mvar(self):
        m = self.mvar_index
        return None if m < 0 else self.order.variables[m]

    def degree(self, var=None):
        """Degree in ``var`` (default: the main variable; 0 for constants,
        -1 for the zero polynomial)."""
        if not self.terms:
            return -1
        i = self.mvar_index if var is None else self.order.index(var)
        if i < 0:
            return 0
        return max(e[i] for e in self.terms)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return [self.order.variables[i] for i in sorted(used)]

    def coeffs(self, var=None):
        """Coefficients in ``var`` (default mvar), index = degree."""
        i = self.mvar_index if var is None else self.order.index(var)
        if i < 0:
            return [self] if self.terms else []
        buckets = {}
        for e, c in self.terms.items():
            k = e[i]
            key = e[:i] + (0,) + e[i + 1:] if k else e
            buckets.setdefault(k, {})[key] = c
        if not buckets:
            return []
        return [Polynomial._make(self.order, buckets.get(k, {}))
                for k in range(max(buckets) + 1)]

    def leading_coeff(self, var=None):
        cs = self.coeffs(var)
        return cs[-1] if cs else self

    def lex_leading_coeff(self):
        if not self.terms:
            return 0
        return self.terms[max(self.terms, key=_lex_key)]

    def to_dense(self, var=None):
        """Integer coefficient list of a polynomial univariate in ``var``."""
        i = self.mvar_index if var is None else self.order.index(var)
        if i < 0:
            return [self.constant_value] if self.terms else []
        out = [0] * (self.degree(i) + 1)
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError(f"{self} is not univariate in {self.order[i]}")
            out[e[i]] = c
        return out

    def integer_content(self):
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, c)
            if g == 1:
                break
        return g

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.order is not self.order and other.order != self.order:
                raise ValueError("polynomials over different variable orders")
            return other
        if isinstance(other, int):
            return Polynomial.constant(self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._make(self.order, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._make(self.order, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Polynomial._make(self.order, {})
            return Polynomial._make(self.order, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        add = operator.add
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(map(add, e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial._make(self.order, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = Polynomial.constant(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def diff(self, var):
        i = self.order.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return Polynomial._make(self.order, out)

    def sign_normalized(self):
        return -self if self.lex_leading_coeff() < 0 else self

    def exact_div(self, other):
        return divide_exact(self, self._coerce(other))

    # -- comparison, hashing, text ----------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_constant() and self.constant_value == other if other else not self.terms
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms and self.order == other.order

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.order, frozenset(self.terms.items())))
        return h

    def sort_key(self):
        """Deterministic ordering: (mvar, degree, canonical term sequence)."""
        items = sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)
        return (self.mvar_index, self.degree(),
                tuple((_grlex_key(e), c) for e, c in items))

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.order.variables
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(names[i] if k == 1 else f"{names[i]}^{k}"
                            for i, k in reversed(list(enumerate(e))) if k)
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def _zero(order):
    return Polynomial._make(order, {})


def _one(order):
    return Polynomial.constant(order, 1)


# -- coefficient-list helpers (univariate view over a lower ring) -----------

def _trim(cs):
    while cs and not cs[-1].terms:
        cs.pop()
    return cs


def _prem(A, B):
    """Pseudo-remainder lc(B)**(deg A - deg B + 1) * A mod B."""
    dB = len(B) - 1
    b = B[-1]
    R = list(A)
    e = len(A) - len(B) + 1
    while len(R) - 1 >= dB and R:
        c = R[-1]
        s = len(R) - 1 - dB
        R = [b * r if r.terms else r for r in R]
        for j in range(dB):
            if B[j].terms:
                R[s + j] = R[s + j] - c * B[j]
        R.pop()
        _trim(R)
        e -= 1
    if e > 0 and R:
        bp = b ** e
        R = [bp * r for r in R]
    return R


def divide_exact(p, q):
    """p / q when the division is exact in Z[x]; raises otherwise."""
    if not q.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p.terms:
        return p
    if q.is_constant():
        c = q.constant_value
        out = {}
        for e, a in p.terms.items():
            t, r = divmod(a, c)
            if r:
                raise NotDivisibleError(f"{p} is not divisible by {c}")
            out[e] = t
        return Polynomial._make(p.order, out)
    i = q.mvar_index
    P = p.coeffs(i)
    Q = q.coeffs(i)
    dq = len(Q) - 1
    if len(P) - 1 < dq:
        raise NotDivisibleError(f"{p} is not divisible by {q}")
    lq = Q[-1]
    zero = _zero(p.order)
    quot = [zero] * (len(P) - dq)
    for k in range(len(P) - 1, dq - 1, -1):
        c = P[k]
        if not c.terms:
            continue
        t = divide_exact(c, lq)
        quot[k - dq] = t
        for j in range(dq):
            if Q[j].terms:
                P[k - dq + j] = P[k - dq + j] - t * Q[j]
        P[k] = zero
    if any(c.terms for c in P[:dq]):
        raise NotDivisibleError(f"{p} is not divisible by {q}")
    return Polynomial.from_coeffs(p.order, i, quot)


def _subresultant_prs(A, B):
    """Yield the subresultant PRS of coefficient lists with deg A >= deg B."""
    order = A[-1].order
    g = h = _one(order)
    while True:
        delta = len(A) - len(B)
        R = _prem(A, B)
        if not R:
            return
        A = B
        den = g * h ** delta
        B = [divide_exact(r, den) for r in R]
        g = A[-1]
        h = divide_exact(g ** delta, h ** (delta - 1)) if delta else h
        yield B, g, h
        if len(B) == 1:
            return


@lru_cache(maxsize=65536)
def _resultant(p, q, i):
    A, B = p.coeffs(i), q.coeffs(i)
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 and (len(B) - 1) % 2:
            s = -1
    order = p.order
    g = h = _one(order)
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = _prem(A, B)
        if not R:
            return _zero(order)
        A = B
        den = g * h ** delta
        B = [divide_exact(r, den) for r in R]
        g = A[-1]
        if delta:
            h = divide_exact(g ** delta, h ** (delta - 1))
        if len(B) == 1:
            break
    dA = len(A) - 1
    h = divide_exact(B[0] ** dA, h ** (dA - 1)) if dA > 1 else B[0] ** dA
    return h * s


def resultant(p, q, var):
    """Resultant of p and q with respect to ``var`` (subresultant PRS)."""
    i = p.order.index(var)
    if p.degree(i) < 1 or q.degree(i) < 1:
        raise ValueError(f"resultant needs positive degree in {p.order[i]}: {p}; {q}")
    return _resultant(p, q, i)


@lru_cache(maxsize=65536)
def _discriminant(p, i):
    d = p.degree(i)
    if d == 1:
        return _one(p.order)
    r = _resultant(p, p.diff(i), i)
    disc = divide_exact(r, p.leading_coeff(i))
    return -disc if (d * (d - 1) // 2) % 2 else disc


def discriminant(p, var=None):
    i = p.mvar_index if var is None else p.order.index(var)
    if i < 0 or p.degree(i) < 1:
        raise ValueError(f"discriminant needs positive degree: {p}")
    return _discriminant(p, i)


@lru_cache(maxsize=65536)
def gcd(p, q):
    """Greatest common divisor, sign-normalized (positive lex-leading coeff)."""
    if not p.terms:
        return q.sign_normalized()
    if not q.terms:
        return p.sign_normalized()
    order = p.order
    ip, iq = p.mvar_index, q.mvar_index
    if ip < 0 or iq < 0:
        return Polynomial.constant(order, math.gcd(p.integer_content(), q.integer_content()))
    i = max(ip, iq)
    if p.degree(i) == 0:
        return _gcd_list([p] + q.coeffs(i))
    if q.degree(i) == 0:
        return _gcd_list([q] + p.coeffs(i))
    cp, pp = _content_prim(p, i)
    cq, qq = _content_prim(q, i)
    c = gcd(cp, cq)
    A, B = pp.coeffs(i), qq.coeffs(i)
    if len(A) < len(B):
        A, B = B, A
    last = B
    for B, _g, _h in _subresultant_prs(A, B):
        last = B
    if len(last) == 1:
        g = _one(order)
    else:
        g = _content_prim(Polynomial.from_coeffs(order, i, last), i)[1]
    return (c * g).sign_normalized()


def _gcd_list(polys):
    g = _zero(polys[0].order)
    for p in sorted((p for p in polys if p.terms), key=lambda p: len(p.terms)):
        g = gcd(g, p)
        if g.is_constant() and abs(g.constant_value) == 1:
            break
    return g


def content_in(p, var):
    i = p.order.index(var)
    return _gcd_list(p.coeffs(i)) if p.terms else p


@lru_cache(maxsize=65536)
def _content_prim(p, i):
    c = _gcd_list(p.coeffs(i))
    prim = divide_exact(p, c)
    if prim.lex_leading_coeff() < 0:
        c, prim = -c, -prim
    return c, prim


def content_prim(p, var=None):
    """(content, primitive part) with respect to ``var`` (default mvar).

    The primitive part has positive leading coefficient and
    ``content * primitive == p``.
    """
    if not p.terms:
        raise ValueError("content of the zero polynomial is undefined")
    i = p.mvar_index if var is None else p.order.index(var)
    if i < 0:
        return p, _one(p.order)
    return _content_prim(p, i)


@lru_cache(maxsize=65536)
def squarefree_part(p):
    """Squarefree part of a polynomial primitive in its main variable."""
    i = p.mvar_index
    if i < 0:
        return p
    g = gcd(p, p.diff(i))
    if g.degree(i) == 0:
        return p.sign_normalized()
    return divide_exact(p, g).sign_normalized()


def normalize(p):
    """Canonical squarefree primitive pieces of p, enough to preserve its zero
    set: contents are split off recursively, constants dropped."""
    out = []
    while p.terms and not p.is_constant():
        c, prim = _content_prim(p, p.mvar_index)
        out.append(squarefree_part(prim))
        p = c
    return out


def normalize_set(polys):
    seen = {}
    for p in polys:
        for q in normalize(p):
            seen[q] = None
    return sort_polys(seen)


def sort_polys(polys):
    return sorted(polys, key=Polynomial.sort_key)


def squarefree_basis(polys):
    """Finest squarefree basis of polynomials sharing one main variable.

    Output elements are primitive, squarefree, pairwise coprime, sign
    normalized and of positive degree in the main variable.
    """
    polys = [p for p in polys]
    if not polys:
        return []
    mv = {p.mvar_index for p in polys}
    if len(mv) != 1 or -1 in mv:
        raise ValueError("squarefree_basis needs a common main variable")
    i = mv.pop()
    basis = []
    work = [squarefree_part(_content_prim(p, i)[1]) for p in sort_polys(polys)]
    work.reverse()
    while work:
        a = work.pop()
        if a.degree(i) < 1:
            continue
        for k, b in enumerate(basis):
            g = gcd(a, b)
            if g.degree(i) > 0:
                del basis[k]
                pieces = [divide_exact(b, g), g, divide_exact(a, g)]
                work.extend(q.sign_normalized() for q in reversed(pieces)
                            if q.degree(i) > 0)
                break
        else:
            basis.append(a)
    return sort_polys(set(basis))


def evaluate(p, assignment, *, return_scale=False):
    """Substitute rational values for a prefix x_1..x_j of the order.

    The result is scaled by a positive rational to clear denominators and the
    integer content (signs and roots are unaffected); with ``return_scale``
    the pair ``(poly, scale)`` is returned where ``poly == scale * p(a)``.
    """
    order = p.order
    idx = sorted(order.index(v) for v in assignment)
    if idx != list(range(len(idx))):
        raise ValueError("assigned variables must be a prefix of the order: "
                         f"{sorted(assignment)}")
    vals = [Fraction(assignment[order.variables[i]]) for i in idx]
    j = len(vals)
    acc = {}
    for e, c in p.terms.items():
        v = Fraction(c)
        for k in range(j):
            if e[k]:
                v *= vals[k] ** e[k]
        if v:
            key = (0,) * j + e[j:]
            acc[key] = acc.get(key, 0) + v
    acc = {e: v for e, v in acc.items() if v}
    if not acc:
        out = _zero(order)
        return (out, Fraction(1)) if return_scale else out
    den = 1
    for v in acc.values():
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = {e: int(v * den) for e, v in acc.items()}
    g = 0
    for c in ints.values():
        g = math.gcd(g, c)
    out = Polynomial._make(order, {e: c // g for e, c in ints.items()})
    return (out, Fraction(den, g)) if return_scale else out


# -- text format -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()]))")


def tokenize(text, start=0, stop=None):
    stop = len(text) if stop is None else stop
    pos = start
    toks = []
    while pos < stop:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() > stop:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        at = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", int(m.group(1)), at))
        elif m.group(2):
            toks.append(("id", m.group(2), at))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            toks.append(("op", op, at))
        pos = m.end()
    return toks


class _Parser:
    """Recursive descent: sums of products of powers, implicit ``*`` allowed."""

    def __init__(self, text, order, start=0, stop=None):
        self.text = text
        self.order = order
        self.toks = tokenize(text, start, stop)
        self.i = 0
        self.end = len(text) if stop is None else stop

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def error(self, msg):
        t = self.peek()
        raise ParseError(msg, self.text, t[2] if t else self.end)

    def parse_polynomial(self):
        if not self.toks:
            self.error("empty polynomial")
        p = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while (t := self.peek()) and t[0] == "op" and t[1] in "+-":
            self.take()
            q = self.term()
            p = p + q if t[1] == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while (t := self.peek()):
            if t[0] == "op" and t[1] == "*":
                self.take()
                p = p * self.unary()
            elif t[0] in ("num", "id") or (t[0] == "op" and t[1] == "("):
                p = p * self.power()
            else:
                break
        return p

    def unary(self):
        t = self.peek()
        if t and t[0] == "op" and t[1] in "+-":
            self.take()
            p = self.unary()
            return -p if t[1] == "-" else p
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t and t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e is None or e[0] != "num":
                self.i -= 1
                self.error("expected an integer exponent")
            return base ** e[1]
        return base

    def atom(self):
        t = self.take()
        if t is None:
            self.error("unexpected end of polynomial")
        kind, val, pos = t
        if kind == "num":
            return Polynomial.constant(self.order, val)
        if kind == "id":
            if val not in self.order:
                raise UnknownVariableError(f"unknown variable {val!r}", self.text, pos)
            return Polynomial.var(self.order, val)
        if val == "(":
            p = self.expr()
            t = self.take()
            if t is None or t[1] != ")":
                self.i -= 1
                self.error("expected ')'")
            return p
        self.i -= 1
        self.error(f"unexpected {val!r}")


def parse_poly(text, order):
    if not isinstance(order, VariableOrder):
        order = VariableOrder(order)
    return Polynomial.parse(text, order)


def mvar(p):
    return p.mvar
