"""Quantifier-free formulas: sign conditions on polynomials joined by
``/\\``, ``\\/`` and ``~``.

Grammar (loosest binding first)::

    formula := conj ('\\/' conj)*
    conj    := unary ('/\\' unary)*
    unary   := '~' unary | '(' formula ')' | atom
    atom    := poly REL poly        REL in  =  /=  <  <=  >  >=

A parenthesised group counts as a sub-formula only if it contains a relation
or connective; otherwise it belongs to the polynomial around it.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .polycore import Polynomial, VariableOrder, _Parser

RELATIONS = ("=", "/=", "<", "<=", ">", ">=")

_HOLDS = {
    "=": lambda s: s == 0,
    "/=": lambda s: s != 0,
    "<": lambda s: s < 0,
    "<=": lambda s: s <= 0,
    ">": lambda s: s > 0,
    ">=": lambda s: s >= 0,
}


@dataclass(frozen=True)
class Atom:
    poly: Polynomial
    rel: str

    def __post_init__(self):
        if self.rel not in _HOLDS:
            raise ValueError(f"unknown relation {self.rel!r}")

    def __str__(self):
        return f"{self.poly} {self.rel} 0"


@dataclass(frozen=True)
class Not:
    arg: object

    def __str__(self):
        return f"~({self.arg})"


@dataclass(frozen=True)
class And:
    args: tuple

    def __str__(self):
        return " /\\ ".join(_wrap(a, Or) for a in self.args)


@dataclass(frozen=True)
class Or:
    args: tuple

    def __str__(self):
        return " \\/ ".join(str(a) for a in self.args)


def _wrap(f, loose):
    s = str(f)
    return f"({s})" if isinstance(f, loose) else s


def atoms(phi):
    if isinstance(phi, Atom):
        yield phi
    elif isinstance(phi, Not):
        yield from atoms(phi.arg)
    else:
        for a in phi.args:
            yield from atoms(a)


def conjuncts(phi):
    """Top-level conjuncts, with nested conjunctions flattened."""
    if isinstance(phi, And):
        out = []
        for a in phi.args:
            out.extend(conjuncts(a))
        return out
    return [phi]


def polynomials(phi):
    """Distinct non-constant polynomials of phi, up to sign, in order of
    first appearance."""
    seen = set()
    out = []
    for a in atoms(phi):
        p = a.poly
        if p.is_constant():
            continue
        key = p.sign_normalized()
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def evaluate(phi, sign_of):
    """Truth of phi given ``sign_of(poly) -> -1/0/1``."""
    if isinstance(phi, Atom):
        p = phi.poly
        if p.is_constant():
            v = p.constant_value if p.terms else 0
            s = (v > 0) - (v < 0)
        else:
            s = sign_of(p)
        return _HOLDS[phi.rel](s)
    if isinstance(phi, Not):
        return not evaluate(phi.arg, sign_of)
    if isinstance(phi, And):
        return all(evaluate(a, sign_of) for a in phi.args)
    return any(evaluate(a, sign_of) for a in phi.args)


# -- parsing -----------------------------------------------------------------

_FORMULA_TOKENS = ("/\\", "\\/", "<=", ">=", "/=", "~", "=", "<", ">", "(", ")")
_CONNECTIVES = ("/\\", "\\/", "~")


def _scan(text):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        for t in _FORMULA_TOKENS:
            if text.startswith(t, pos):
                toks.append((t, pos, pos + len(t)))
                pos += len(t)
                break
        else:
            start = pos
            while pos < n and not text[pos].isspace() and not any(
                    text.startswith(t, pos) for t in _FORMULA_TOKENS):
                pos += 1
            toks.append(("poly", start, pos))
    return toks


class _FormulaParser:
    def __init__(self, text, order):
        self.text = text
        self.order = order
        self.toks = _scan(text)
        self.i = 0
        self.match = self._pair_parens()

    def _pair_parens(self):
        stack, match = [], {}
        for k, (kind, pos, _) in enumerate(self.toks):
            if kind == "(":
                stack.append(k)
            elif kind == ")":
                if not stack:
                    raise ParseError("unbalanced ')'", self.text, pos)
                match[stack.pop()] = k
        if stack:
            raise ParseError("unbalanced '('", self.text, self.toks[stack[-1]][1])
        return match

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def error(self, msg):
        pos = self.toks[self.i][1] if self.i < len(self.toks) else len(self.text)
        raise ParseError(msg, self.text, pos)

    def parse(self):
        if not self.toks:
            raise ParseError("empty formula", self.text, 0)
        f = self.disj()
        if self.i < len(self.toks):
            self.error(f"unexpected {self.toks[self.i][0]!r}")
        return f

    def disj(self):
        args = [self.conj()]
        while self.peek() == "\\/":
            self.i += 1
            args.append(self.conj())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conj(self):
        args = [self.unary()]
        while self.peek() == "/\\":
            self.i += 1
            args.append(self.unary())
        return args[0] if len(args) == 1 else And(tuple(args))

    def unary(self):
        t = self.peek()
        if t == "~":
            self.i += 1
            return Not(self.unary())
        if t == "(" and self._is_formula_group(self.i):
            close = self.match[self.i]
            self.i += 1
            f = self.disj()
            if self.i != close:
                self.error("expected ')'")
            self.i += 1
            return f
        return self.atom()

    def _is_formula_group(self, k):
        return any(kind in RELATIONS or kind in _CONNECTIVES
                   for kind, _, _ in self.toks[k + 1:self.match[k]])

    def _poly_span(self, stop_at_rel):
        start = self.i
        depth = 0
        while self.i < len(self.toks):
            kind = self.toks[self.i][0]
            if kind == "(":
                depth += 1
            elif kind == ")":
                if depth == 0:
                    break
                depth -= 1
            elif depth == 0 and (kind in _CONNECTIVES or (stop_at_rel and kind in RELATIONS)):
                break
            elif kind in RELATIONS or kind in _CONNECTIVES:
                self.error(f"unexpected {kind!r} inside a polynomial")
            self.i += 1
        if self.i == start:
            self.error("expected a polynomial")
        lo = self.toks[start][1]
        hi = self.toks[self.i - 1][2]
        return _Parser(self.text, self.order, lo, hi).parse_polynomial()

    def atom(self):
        lhs = self._poly_span(True)
        rel = self.peek()
        if rel not in RELATIONS:
            self.error("expected a relation (=, /=, <, <=, >, >=)")
        self.i += 1
        rhs = self._poly_span(False)
        if self.peek() in RELATIONS:
            self.error("chained relations are not supported")
        return Atom(lhs - rhs, rel)


def parse_formula(text, order):
    """Parse formula text over a variable order (``VariableOrder`` or names)."""
    if not isinstance(order, VariableOrder):
        order = VariableOrder(order)
    return _FormulaParser(text, order).parse()
