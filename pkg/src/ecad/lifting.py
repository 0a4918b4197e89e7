"""Base phase, lifting with equational constraints, truth labelling.

The decomposition is kept as a tree. A cell at level k has an index
(i_1, ..., i_k) where even entries are sections and odd entries sectors, a
sample point with k coordinates, and, once lifted, a stack of children.
``liftset`` names the polynomial set its stack was built from (``"L<k+1>"``)
or ``TRIVIAL`` when the cell was only extended to a cylinder.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import formula as fm
from .errors import Nullified
from .polycore import Polynomial, VariableOrder, sort_polys
from .projection import ProjectionLayers, projection_phase
from .realalg import (RealAlgebraicNumber, SamplePoint, is_nullified, sector_sample,
                      sign_at, substitute_roots)

TRIVIAL = "TRIVIAL"
COMPLETE, FAIL = "complete", "FAIL"

# lifting modes: "ec" follows the algorithm (reduced polynomials and cells);
# "full" keeps the EC projection but lifts every cell with the whole basis B_k;
# "sign" ignores the designation and builds a sign-invariant McCallum CAD
MODES = ("ec", "full", "sign")


class Cell:
    __slots__ = ("index", "sample", "children", "liftset", "truth")

    def __init__(self, index, sample, liftset=None, truth=None):
        self.index = tuple(index)
        self.sample = sample
        self.children = []
        self.liftset = liftset
        self.truth = truth

    @property
    def level(self):
        return len(self.index)

    @property
    def is_section(self):
        return bool(self.index) and self.index[-1] % 2 == 0

    def walk(self):
        stack = [self]
        while stack:
            c = stack.pop()
            yield c
            stack.extend(reversed(c.children))

    def __repr__(self):
        return f"Cell({list(self.index)}, {self.sample!r}, truth={self.truth})"

    def to_json(self, order):
        d = {
            "index": list(self.index),
            "sample": [c.to_json(order[i]) for i, c in enumerate(self.sample)],
            "truth": self.truth,
            "liftset": self.liftset,
        }
        if self.children:
            d["children"] = [c.to_json(order) for c in self.children]
        return d

    @classmethod
    def from_json(cls, data, order):
        sample = SamplePoint(tuple(RealAlgebraicNumber.from_json(c, order[i])
                                   for i, c in enumerate(data["sample"])))
        cell = cls(data["index"], sample, data.get("liftset"), data.get("truth"))
        cell.children = [cls.from_json(c, order) for c in data.get("children", [])]
        return cell


@dataclass
class CAD:
    order: VariableOrder
    root: Cell
    designation: object = None
    layers: ProjectionLayers | None = None
    liftsets: dict = field(default_factory=dict)
    status: str = COMPLETE
    witness: Nullified | None = None
    options: dict = field(default_factory=dict)

    @property
    def n(self):
        return len(self.order)

    def cells(self, level):
        return [c for c in self.root.walk() if c.level == level]

    def leaves(self):
        return self.cells(self.n)

    def level_counts(self):
        counts = [0] * self.n
        for c in self.root.walk():
            if c.level:
                counts[c.level - 1] += 1
        return counts

    def true_leaves(self):
        return [c for c in self.leaves() if c.truth]

    def liftset(self, cell):
        return self.liftsets.get(cell.liftset, [])

    def to_json(self):
        d = {
            "order": list(self.order),
            "status": self.status,
            "options": self.options,
            "counts": self.level_counts(),
            "liftsets": {k: [str(p) for p in v] for k, v in sorted(self.liftsets.items())},
            "root": self.root.to_json(self.order),
        }
        if self.designation is not None:
            d["designation"] = self.designation.to_json(self.order)
        if self.witness is not None:
            d["witness"] = {"level": self.witness.level, "poly": str(self.witness.poly),
                            "cell": list(self.witness.cell_index)}
        return d

    @classmethod
    def from_json(cls, data):
        order = VariableOrder(data["order"])
        liftsets = {k: [Polynomial.parse(p, order) for p in v]
                    for k, v in data.get("liftsets", {}).items()}
        root = Cell.from_json(data["root"], order)
        cad = cls(order, root, liftsets=liftsets, status=data.get("status", COMPLETE),
                  options=data.get("options", {}))
        w = data.get("witness")
        if w:
            cad.witness = Nullified(w["level"], Polynomial.parse(w["poly"], order), w["cell"])
        return cad


def _stack(cell, roots):
    """Children of cell for sorted distinct roots in the next coordinate."""
    children = []
    prev = None
    for j, r in enumerate(roots):
        children.append(Cell(cell.index + (2 * j + 1,),
                             cell.sample.extend(sector_sample(prev, r))))
        children.append(Cell(cell.index + (2 * j + 2,), cell.sample.extend(r)))
        prev = r
    children.append(Cell(cell.index + (2 * len(roots) + 1,),
                         cell.sample.extend(sector_sample(prev, None))))
    return children


def base_phase(A1, E1=None):
    """Cells of the real line from the roots of E1, or of all of A1."""
    polys = [E1] if E1 is not None else sort_polys(A1)
    root = Cell((), SamplePoint(), "L1")
    roots = [r for r, _ in substitute_roots(polys, SamplePoint())] if polys else []
    root.children = _stack(root, roots)
    return root


def gen_stack(cell, L, liftset_id=None):
    """Stack over ``cell`` for the polynomials L (main variable one above the
    cell's level). Raises ``Nullified`` when some element vanishes
    identically at the sample."""
    k = cell.level + 1
    for p in L:
        if is_nullified(p, cell.sample):
            raise Nullified(k, p, cell.index)
    roots = [r for r, _ in substitute_roots(L, cell.sample)] if L else []
    cell.liftset = liftset_id or f"L{k}"
    cell.children = _stack(cell, roots)
    return cell.children


def extend_trivial(cell):
    """Single cylinder over the cell: index entry 1, coordinate 0."""
    cell.liftset = TRIVIAL
    cell.children = [Cell(cell.index + (1,), cell.sample.extend(Fraction(0)))]
    return cell.children


def lift_phase(root, layers, designation, *, prune=True, mode="ec", prune_levels=None):
    """Lift the base decomposition to R^n. Returns ``(status, witness)``.

    With pruning, a cell is lifted nontrivially at step k only if it is a
    section of E_{k-1} (when one is designated) and no ancestor was extended
    trivially. ``prune_levels`` limits the section test to the listed k.
    """
    n = layers.n
    pruning = prune and mode == "ec"
    level = [(c, False) for c in root.children]
    for k in range(2, n + 1):
        L = layers.lifting_set(k) if mode == "ec" else layers.B(k)
        by_section = (pruning and designation.get(k - 1) is not None
                      and (prune_levels is None or k in prune_levels))
        nxt = []
        for c, dead in level:
            if pruning and (dead or (by_section and not c.is_section)):
                nxt.extend((ch, True) for ch in extend_trivial(c))
                continue
            try:
                nxt.extend((ch, False) for ch in gen_stack(c, L))
            except Nullified as w:
                return FAIL, w
        level = nxt
    return COMPLETE, None


def _over_trivial(root):
    """Leaves below some trivially extended cell."""
    marked = set()
    stack = [(root, False)]
    while stack:
        c, flag = stack.pop()
        if not c.children:
            if flag:
                marked.add(id(c))
            continue
        flag = flag or c.liftset == TRIVIAL
        stack.extend((ch, flag) for ch in c.children)
    return marked


def evaluate_at(phi, sample):
    cache = {}

    def sign_of(p):
        s = cache.get(p)
        if s is None:
            s = cache[p] = sign_at(p, sample)
        return s

    return fm.evaluate(phi, sign_of)


def label_truth(cad, phi):
    """Set truth on leaves. Leaves over a trivially extended cell are false
    (some designated EC is nonzero there); the rest are evaluated exactly."""
    skip = _over_trivial(cad.root)
    for leaf in cad.leaves():
        leaf.truth = False if id(leaf) in skip else evaluate_at(phi, leaf.sample)
    return cad


def build_cad(phi, order, designation, *, prune=True, strict=False,
              complement="disc", mode="ec", prune_levels=None):
    """Projection, base phase, lifting and truth labelling for phi."""
    if mode not in MODES:
        raise ValueError(f"unknown lifting mode {mode!r}")
    if not isinstance(order, VariableOrder):
        order = VariableOrder(order)
    n = len(order)
    designation.validate(n)
    A_n = fm.polynomials(phi)
    D = designation.as_map()
    if mode == "sign":
        D = {}
    layers = projection_phase(A_n, D, order, strict=strict, complement=complement)
    E1 = designation.get(1) if mode == "ec" else None
    root = base_phase(layers.B(1), E1)
    liftsets = {"L1": [E1] if E1 is not None else layers.B(1)}
    for k in range(2, n + 1):
        liftsets[f"L{k}"] = layers.lifting_set(k) if mode == "ec" else layers.B(k)
    cad = CAD(order, root, designation, layers, liftsets,
              options={"prune": prune, "strict_coeffs": strict,
                       "complement": complement, "mode": mode,
                       "prune_levels": sorted(prune_levels) if prune_levels is not None else None})
    if n > 1:
        cad.status, cad.witness = lift_phase(root, layers, designation, prune=prune,
                                             mode=mode, prune_levels=prune_levels)
    if cad.status == COMPLETE:
        label_truth(cad, phi)
    return cad


__all__ = ["Cell", "CAD", "TRIVIAL", "COMPLETE", "FAIL", "base_phase", "gen_stack",
           "extend_trivial", "lift_phase", "label_truth", "build_cad", "evaluate_at"]
