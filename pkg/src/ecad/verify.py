"""Independent checks on a built CAD and the cell-count bound calculators.

``locate`` finds the leaf containing a rational point by re-deriving each
stack from the recorded lifting sets. ``check_truth_invariance`` compares the
stored truth of that leaf with a direct evaluation of the formula at the
point. ``audit_structure`` checks cylindrical well-formedness and that section
and sector samples really are (non)zeros of the lifting set.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import formula as fm
from .errors import ECADError
from .lifting import TRIVIAL
from .polycore import evaluate
from .realalg import (EQ, LT, ZERO, RealAlgebraicNumber, SamplePoint, compare,
                      is_nullified, sign_at, substitute_roots)

NUM_RANGE = 2 ** 16
DEN_RANGE = 2 ** 8


class LocationError(ECADError):
    """The recorded stacks do not account for a point.

    This happens legitimately when a reduced lifting set is not delineable
    over an inadmissible cell; ``cell`` is the deepest cell reached.
    """

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


# -- point location ----------------------------------------------------------

def _position(value, roots):
    """1-based stack index of value among sorted distinct roots."""
    lo, hi = 0, len(roots)
    while lo < hi:
        mid = (lo + hi) // 2
        c = compare(value, roots[mid])
        if c == EQ:
            return 2 * mid + 2
        if c == LT:
            hi = mid
        else:
            lo = mid + 1
    return 2 * lo + 1


def locate(cad, point):
    """Leaf cell of ``cad`` containing the rational point."""
    point = [Fraction(c) for c in point]
    if len(point) != cad.n:
        raise ValueError(f"point has {len(point)} coordinates, CAD has {cad.n}")
    cell = cad.root
    prefix = SamplePoint()
    for k, value in enumerate(point):
        if not cell.children:
            raise LocationError(f"cell {list(cell.index)} was never lifted")
        if cell.liftset == TRIVIAL:
            cell = cell.children[0]
        else:
            polys = [p for p in cad.liftset(cell) if not is_nullified(p, prefix)]
            roots = [r for r, _ in substitute_roots(polys, prefix)]
            if 2 * len(roots) + 1 != len(cell.children):
                raise LocationError(
                    f"{len(roots)} roots over {list(cell.index)} at the point, "
                    f"stack has {len(cell.children)} cells", cell)
            cell = cell.children[_position(value, roots) - 1]
        prefix = prefix.extend(RealAlgebraicNumber.from_rational(value))
    return cell


# -- truth invariance --------------------------------------------------------

def random_point(rng, n):
    return tuple(Fraction(rng.randint(-NUM_RANGE, NUM_RANGE), rng.randint(1, DEN_RANGE))
                 for _ in range(n))


def truth_at_point(phi, order, point):
    assignment = {order[i]: c for i, c in enumerate(point)}

    def sign_of(p):
        v = evaluate(p, assignment)
        c = v.constant_value if v.terms else 0
        return (c > 0) - (c < 0)

    return fm.evaluate(phi, sign_of)


@dataclass
class TruthReport:
    checked: int = 0
    seed: int | None = None
    mismatches: list = field(default_factory=list)
    region_checked: int = 0
    unlocated: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.mismatches and not self.unlocated

    def to_text(self):
        lines = [f"checked {self.checked} points (seed {self.seed}): "
                 f"{len(self.mismatches)} mismatches"]
        if self.region_checked or self.unlocated:
            lines.append(f"  {self.region_checked} resolved against a constant-truth subtree, "
                         f"{len(self.unlocated)} unlocated")
        for point, expected, got, index in self.mismatches[:20]:
            coords = ", ".join(str(c) for c in point)
            lines.append(f"  ({coords}): formula {expected}, cell {index} says {got}")
        return "\n".join(lines)

    def to_json(self):
        return {"checked": self.checked, "seed": self.seed,
                "region_checked": self.region_checked,
                "unlocated": [[str(c) for c in p] for p in self.unlocated],
                "mismatches": [{"point": [str(c) for c in p], "expected": e,
                                "cell_truth": g, "cell": list(i)}
                               for p, e, g, i in self.mismatches]}


def check_truth_invariance(cad, phi, n_points=1000, seed=0, points=None):
    """Evaluate phi at seeded random rational points and compare with the
    truth stored on the leaf containing each point.

    When a point cannot be located below some cell (see ``LocationError``)
    but every leaf under that cell carries the same truth, that value is
    compared instead; otherwise the point is listed as unlocated.
    """
    if cad.status != "complete":
        raise ValueError("truth invariance needs a complete CAD")
    rng = random.Random(seed)
    if points is None:
        points = [random_point(rng, cad.n) for _ in range(n_points)]
    report = TruthReport(seed=seed)
    for q in points:
        expected = truth_at_point(phi, cad.order, q)
        report.checked += 1
        try:
            leaf = locate(cad, q)
        except LocationError as e:
            values = {bool(c.truth) for c in e.cell.walk() if not c.children}
            if len(values) != 1:
                report.unlocated.append(tuple(q))
                continue
            report.region_checked += 1
            truth, index = values.pop(), e.cell.index
        else:
            truth, index = bool(leaf.truth), leaf.index
        if truth != expected:
            report.mismatches.append((tuple(q), expected, truth, index))
    return report


# -- structural audit --------------------------------------------------------

@dataclass
class AuditReport:
    cells: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def to_text(self):
        head = f"audited {self.cells} cells: {len(self.violations)} violations"
        return "\n".join([head] + [f"  {v}" for v in self.violations[:50]])


def _audit_stack(cad, cell, report):
    kids = cell.children
    where = list(cell.index)
    if len(kids) % 2 == 0:
        report.violations.append(f"{where}: even number of children ({len(kids)})")
    for j, ch in enumerate(kids, start=1):
        if ch.index != cell.index + (j,):
            report.violations.append(f"{where}: child {j} has index {list(ch.index)}")
        if len(ch.sample) != cell.level + 1 or any(
                a is not b and compare(a, b) != EQ for a, b in zip(ch.sample, cell.sample)):
            report.violations.append(f"{list(ch.index)}: sample does not extend parent's")
    for a, b in zip(kids, kids[1:]):
        if compare(a.sample[-1], b.sample[-1]) != LT:
            report.violations.append(
                f"{where}: samples of {list(a.index)} and {list(b.index)} not increasing")
    if cell.liftset == TRIVIAL:
        if len(kids) != 1:
            report.violations.append(f"{where}: trivial extension with {len(kids)} cells")
        return
    polys = cad.liftset(cell)
    for ch in kids:
        signs = [sign_at(p, ch.sample) for p in polys]
        if ch.is_section and ZERO not in signs:
            report.violations.append(f"{list(ch.index)}: section where no lifting polynomial vanishes")
        if not ch.is_section and ZERO in signs:
            report.violations.append(f"{list(ch.index)}: sector sample is a root")


def audit_structure(cad):
    """Check index layout, sample monotonicity and section certification."""
    report = AuditReport()
    for cell in cad.root.walk():
        report.cells += 1 if cell.level else 0
        if cell.children:
            _audit_stack(cad, cell, report)
        elif cell.level != cad.n and cad.status == "complete":
            report.violations.append(f"{list(cell.index)}: leaf below level {cad.n}")
    return report


# -- (m, d)-property and cell bounds ----------------------------------------

@dataclass(frozen=True)
class MDProperty:
    m: int
    d: int

    def __post_init__(self):
        if self.m < 1 or self.d < 1:
            raise ValueError(f"(m, d) must be positive, got ({self.m}, {self.d})")


def md_step_P(p):
    """(m, d) after one projection with P, cont included."""
    return MDProperty((p.m + 1) ** 2 // 2, 2 * p.d ** 2)


def md_step_P_bound(p, first=True):
    """Table form of the P step: 2m^2 on the first projection, m^2 after."""
    return MDProperty(2 * p.m ** 2 if first else p.m ** 2, 2 * p.d ** 2)


def md_step_ECstar(p):
    """(m, d) after one projection with P_E^*, cont included."""
    return MDProperty(2 * p.m, 2 * p.d ** 2)


def table_P(m, d, r):
    """Row n-r of the table for repeated P projection (r >= 1)."""
    return MDProperty(2 ** (2 ** (r - 1)) * m ** (2 ** r), 2 ** (2 ** r - 1) * d ** (2 ** r))


def table_EC(m, d, ell, j):
    """Row n-j of the table for ell reduced projections followed by P."""
    if j <= ell:
        return MDProperty(2 ** j * m, 2 ** (2 ** j - 1) * d ** (2 ** j))
    r = j - ell
    return MDProperty(2 ** (2 ** r * ell) * m ** (2 ** r),
                      2 ** (2 ** (ell + r) - 1) * d ** (2 ** (ell + r)))


BOUND_MODES = ("p-full", "ec-projection", "ec-full")


def _check_params(n, m, d, ell):
    if n < 1 or m < 1 or d < 1:
        raise ValueError("n, m and d must be positive")
    if ell < 0 or ell > min(m, n):
        raise ValueError(f"number of ECs must lie in 0..min(m, n) = 0..{min(m, n)}")


def _exact(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def cell_bound(n, m, d, ell=0, mode="p-full"):
    """Bound on the number of cells of the CAD of R^n, evaluated exactly."""
    _check_params(n, m, d, ell)
    if mode not in BOUND_MODES:
        raise ValueError(f"unknown bound mode {mode!r}")
    if mode == "p-full" or ell == 0:
        total = 2 * m * d + 1
        for r in range(1, n):
            row = table_P(m, d, r)
            total *= 2 * row.m * row.d + 1
        return total
    rows = {n - j: table_EC(m, d, ell, j) for j in range(n)}
    if mode == "ec-projection":
        total = 1
        for i in range(1, n + 1):
            total *= 2 * rows[i].m * rows[i].d + 1
        return total
    dagger = 1
    for i in range(1, n - ell):
        dagger *= 2 * rows[i].m * rows[i].d + 1
    base = n - ell
    admissible = rows[base].d * dagger
    total = (2 * rows[base].d + 1) * dagger
    for i in range(base + 1, n + 1):
        di = rows[i].d
        total = (2 * di + 1) * admissible + (total - admissible)
        admissible *= di
    return total


def dominant_P(n, m, d):
    """Leading term of the bound for repeated P projection."""
    _check_params(n, m, d, 0)
    return (2 * d) ** (2 ** n - 1) * m ** (2 ** n - 1) * 2 ** (2 ** (n - 1) - 1)


def dominant_EC_projection(n, m, d, ell):
    """Leading term with ell reduced projections and full lifting."""
    _check_params(n, m, d, ell)
    e = ell * 2 ** (n - ell) + Fraction(ell * (ell - 3), 2)
    return _exact(Fraction((2 * d) ** (2 ** n - 1) * m ** (2 ** (n - ell) + ell - 1))
                  * Fraction(2) ** e)


def dominant_EC_full(n, m, d, ell):
    """Leading term with ell reduced projections and reduced lifting."""
    _check_params(n, m, d, ell)
    return _exact(Fraction((2 * d) ** (2 ** n - 1)) * Fraction(m) ** (2 ** (n - ell) - 2)
                  * Fraction(2) ** (ell * 2 ** (n - ell) - 3 * ell))


__all__ = ["locate", "check_truth_invariance", "audit_structure", "TruthReport",
           "AuditReport", "LocationError", "MDProperty", "md_step_P", "md_step_P_bound",
           "md_step_ECstar", "table_P", "table_EC", "cell_bound", "dominant_P",
           "dominant_EC_projection", "dominant_EC_full", "BOUND_MODES", "random_point",
           "truth_at_point"]
