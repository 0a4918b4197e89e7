"""Equational constraints: detection, propagation and designation.

An equation f = 0 that is a top-level conjunct of a formula is an explicit
EC. If f = 0 and g = 0 both hold and share a main variable, their resultant
vanishes too, giving an implicit EC one variable lower. ``propagate`` closes
the explicit ECs under that rule, level by level.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InvalidDesignationError
from .formula import Atom, conjuncts
from .polycore import content_prim, normalize, resultant, sort_polys, squarefree_part


def explicit_ecs(phi):
    """Polynomials of ``=`` atoms among the top-level conjuncts of phi."""
    seen = set()
    out = []
    for c in conjuncts(phi):
        if isinstance(c, Atom) and c.rel == "=" and not c.poly.is_constant():
            key = c.poly.sign_normalized()
            if key not in seen:
                seen.add(key)
                out.append(c.poly)
    return out


@dataclass
class CandidateTable:
    """EC candidates bucketed by level (1-based index of the main variable)."""

    order: object
    levels: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def __getitem__(self, k):
        return self.levels.get(k, [])

    def counts(self):
        return {k: len(v) for k, v in sorted(self.levels.items(), reverse=True)}

    def to_text(self):
        lines = []
        for k in sorted(self.levels, reverse=True):
            var = self.order[k - 1]
            for p in self.levels[k]:
                lines.append(f"{var}: {p}    [{self.provenance.get(p, 'explicit')}]")
        return "\n".join(lines)

    def to_json(self):
        return {self.order[k - 1]: [str(p) for p in ps]
                for k, ps in sorted(self.levels.items(), reverse=True)}


def propagate(ecs, order=None):
    """Close a set of ECs under resultants of pairs sharing a main variable."""
    ecs = [e for e in ecs if not e.is_constant()]
    if not ecs:
        raise ValueError("propagate needs at least one EC")
    order = order or ecs[0].order
    table = CandidateTable(order)
    known = set()

    def add(p, origin):
        key = p.sign_normalized()
        if key in known:
            return
        known.add(key)
        k = p.mvar_index + 1
        table.levels.setdefault(k, []).append(p)
        table.provenance[p] = origin

    for e in ecs:
        add(e, "explicit")
    top = max(e.mvar_index for e in ecs) + 1
    for k in range(top, 1, -1):
        current = sort_polys(table.levels.get(k, []))
        table.levels[k] = current if current else table.levels.pop(k, [])
        var = order[k - 1]
        for f, g in itertools.combinations(current, 2):
            r = resultant(f, g, var)
            if r.is_zero():
                table.warnings.append(
                    f"res_{var}({f}, {g}) = 0: common factor, no EC derived")
                continue
            for piece in normalize(r):
                add(piece, f"res_{var}({f}, {g})")
    for k in list(table.levels):
        if not table.levels[k]:
            del table.levels[k]
        else:
            table.levels[k] = sort_polys(table.levels[k])
    return table


def is_primitive_ec(p):
    c, _ = content_prim(p)
    return c.is_constant() and abs(c.constant_value) == 1


@dataclass(frozen=True)
class Designation:
    """At most one EC polynomial per level; level k means main variable x_k."""

    ecs: tuple = ()
    provenance: tuple = ()

    @classmethod
    def from_map(cls, mapping, provenance=None):
        items = tuple(sorted((k, p) for k, p in mapping.items() if p is not None))
        prov = provenance or {}
        return cls(items, tuple((k, prov.get(k, "manual")) for k, _ in items))

    def get(self, k, default=None):
        for j, p in self.ecs:
            if j == k:
                return p
        return default

    def as_map(self):
        return dict(self.ecs)

    def levels(self):
        return [k for k, _ in self.ecs]

    def validate(self, n):
        for k, p in self.ecs:
            if not 1 <= k <= n:
                raise InvalidDesignationError(f"level {k} outside 1..{n}")
            if p.mvar_index != k - 1:
                raise InvalidDesignationError(
                    f"EC {p} designated at level {k} has main variable {p.mvar}")
            if not is_primitive_ec(p):
                raise InvalidDesignationError(f"EC {p} is not primitive")
            if squarefree_part(p) != p.sign_normalized():
                raise InvalidDesignationError(f"EC {p} is not squarefree")
        return self

    def describe(self, order):
        parts = []
        for k in range(len(order), 0, -1):
            p = self.get(k)
            parts.append(f"{order[k - 1]}:{p}" if p is not None else f"{order[k - 1]}:-")
        return ", ".join(parts)

    def to_json(self, order):
        return {order[k - 1]: str(p) for k, p in self.ecs}


def _usable(p):
    return is_primitive_ec(p) and squarefree_part(p) == p.sign_normalized()


def enumerate_designations(candidates):
    """Every choice of one candidate per populated level, deterministically.

    Non-primitive or non-squarefree candidates are skipped.
    """
    levels = sorted(candidates.levels, reverse=True)
    choices = [[p for p in sort_polys(candidates[k]) if _usable(p)] for k in levels]
    keep = [(k, c) for k, c in zip(levels, choices) if c]
    out = []
    for combo in itertools.product(*(c for _, c in keep)):
        mapping = {k: p for (k, _), p in zip(keep, combo)}
        prov = {k: candidates.provenance.get(p, "explicit") for k, p in mapping.items()}
        out.append(Designation.from_map(mapping, prov))
    return out


def _complexity(p):
    return (sum(sum(e) for e in p.terms), len(p.terms), p.sort_key())


def designate_heuristic(candidates):
    """Per level, the candidate with the smallest sum of term degrees, then
    fewest terms, then canonical order."""
    mapping, prov = {}, {}
    for k in sorted(candidates.levels, reverse=True):
        usable = [p for p in candidates[k] if _usable(p)]
        if usable:
            best = min(usable, key=_complexity)
            mapping[k] = best
            prov[k] = candidates.provenance.get(best, "explicit")
    return Designation.from_map(mapping, prov)


__all__ = ["explicit_ecs", "propagate", "CandidateTable", "Designation",
           "enumerate_designations", "designate_heuristic", "is_primitive_ec"]
