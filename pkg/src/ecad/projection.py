"""Projection operators and the projection phase.

``proj_P`` is the McCallum operator: reduced coefficients, discriminants and
pairwise resultants of a squarefree basis. ``proj_PF`` keeps only what an
equational constraint needs: the operator applied to the EC basis F, plus
resultants of F against the rest. ``proj_PFstar`` also adds the
discriminants of the non-EC basis elements.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .polycore import (content_prim, discriminant, divide_exact, normalize_set,
                       resultant, sort_polys, squarefree_basis)

OP_P, OP_PF, OP_PFSTAR = "P", "P_F", "P_F*"


def _collect(polys):
    return normalize_set(p for p in polys if not p.is_constant())


def coefficients(f, strict=False):
    """Coefficients of f in its main variable needed for delineability:
    leading first, then downward until a nonzero constant is reached."""
    cs = f.coeffs()
    out = []
    for c in reversed(cs):
        if c.is_zero():
            continue
        out.append(c)
        if c.is_constant() and not strict:
            break
    return out


def _var(B):
    return B[0].order[B[0].mvar_index]


def proj_P(B, strict=False):
    """coeff(B) + disc(B) + res(B), normalized, constants dropped."""
    B = sort_polys(B)
    if not B:
        return []
    v = _var(B)
    out = []
    for f in B:
        out.extend(coefficients(f, strict))
        out.append(discriminant(f, v))
    for f, g in combinations(B, 2):
        out.append(resultant(f, g, v))
    return _collect(out)


def _cross(F, rest, v):
    return [resultant(f, g, v) for f in F for g in rest]


def proj_PF(B, F, strict=False):
    """P(F) plus res(f, g) for f in F, g in B minus F."""
    F = sort_polys(F)
    rest = [g for g in sort_polys(B) if g not in set(F)]
    if not F:
        raise ValueError("proj_PF needs a nonempty EC basis")
    return _collect(proj_P(F, strict) + _cross(F, rest, _var(F)))


def proj_PFstar(B, F, strict=False, complement="disc"):
    """proj_PF plus disc(g) for g in B minus F.

    ``complement="res"`` instead adds pairwise resultants within B minus F
    (the operator as literally typeset; experimental).
    """
    F = sort_polys(F)
    if not F:
        raise ValueError("proj_PFstar needs a nonempty EC basis")
    rest = [g for g in sort_polys(B) if g not in set(F)]
    v = _var(F)
    out = proj_PF(B, F, strict)
    if complement == "disc":
        extra = [discriminant(g, v) for g in rest]
    elif complement == "res":
        extra = [resultant(f, g, v) for f, g in combinations(rest, 2)]
    else:
        raise ValueError(f"unknown complement mode {complement!r}")
    return _collect(out + extra)


@dataclass
class Layer:
    level: int
    A: list
    B: list = field(default_factory=list)
    F: list = field(default_factory=list)
    C: list = field(default_factory=list)
    operator: str | None = None


@dataclass
class ProjectionLayers:
    order: object
    layers: dict

    def __getitem__(self, k):
        return self.layers[k]

    def A(self, k):
        return self.layers[k].A

    def B(self, k):
        return self.layers[k].B

    def F(self, k):
        return self.layers[k].F

    def C(self, k):
        return self.layers[k].C

    @property
    def n(self):
        return len(self.order)

    def trace(self):
        """Operator used at k = n, ..., 2."""
        return [self.layers[k].operator for k in range(self.n, 1, -1)]

    def lifting_set(self, k):
        """L_k: the EC basis when one is designated at level k, else B_k."""
        layer = self.layers[k]
        return layer.F if layer.F else layer.B

    def to_text(self):
        lines = []
        for k in range(self.n, 0, -1):
            layer = self.layers[k]
            var = self.order[k - 1]
            op = layer.operator or "-"
            lines.append(f"level {k} ({var}) operator {op}")
            for name in ("A", "B", "F", "C"):
                for p in getattr(layer, name):
                    lines.append(f"  {name}{k}: {p}")
        return "\n".join(lines)

    def to_json(self):
        return {
            str(k): {
                "variable": self.order[k - 1],
                "operator": layer.operator,
                **{name: [str(p) for p in getattr(layer, name)] for name in ("A", "B", "F", "C")},
            }
            for k, layer in sorted(self.layers.items(), reverse=True)
        }


def split_level(A, k):
    """(basis, pass-down) for the working set A at level k (1-based).

    Elements of mvar x_k contribute their primitive parts to the basis and
    their non-constant contents to the pass-down set; lower elements pass
    down unchanged.
    """
    i = k - 1
    prims, C = [], []
    for a in A:
        if a.is_constant():
            continue
        if a.mvar_index == i:
            c, p = content_prim(a)
            prims.append(p)
            if not c.is_constant():
                C.append(c)
        elif a.mvar_index < i:
            C.append(a)
        else:
            raise ValueError(f"{a} has main variable above x_{k}")
    return prims, _collect(C)


def ec_basis(E, prims, k):
    """Basis B_k (with E merged in) and the EC basis F_k inside it."""
    i = k - 1
    if E is None:
        return (squarefree_basis(prims) if prims else []), []
    if E.mvar_index != i:
        raise ValueError(f"designated EC {E} does not have main variable x_{k}")
    B = squarefree_basis(list(prims) + [E])
    F = [b for b in B if _divides(b, E)]
    if not F:
        raise ValueError(f"designated EC {E} vanished from the basis")
    return B, F


def _divides(b, E):
    try:
        divide_exact(E, b)
    except ArithmeticError:
        return False
    return True


def choose_operator(k, n, has_ec):
    if not has_ec:
        return OP_P
    return OP_PF if k in (n, 2) else OP_PFSTAR


def projection_phase(A_n, designation, order, *, strict=False, complement="disc"):
    """Run the projection loop for k = n..2 and return the layers.

    ``designation`` maps level k (1-based) to a polynomial or None.
    """
    n = len(order)
    layers = {}
    A = _collect(A_n)
    for k in range(n, 1, -1):
        E = designation.get(k)
        prims, C = split_level(A, k)
        B, F = ec_basis(E, prims, k)
        op = choose_operator(k, n, bool(F))
        if not B:
            out = []
        elif op == OP_P:
            out = proj_P(B, strict)
        elif op == OP_PF:
            out = proj_PF(B, F, strict)
        else:
            out = proj_PFstar(B, F, strict, complement)
        layers[k] = Layer(k, A, B, F, C, op)
        A = _collect(C + out)
    E1 = designation.get(1)
    prims, _ = split_level(A, 1)
    B1, F1 = ec_basis(E1, prims, 1)
    layers[1] = Layer(1, A, B1, F1, [], None)
    return ProjectionLayers(order, layers)


__all__ = ["proj_P", "proj_PF", "proj_PFstar", "projection_phase", "ProjectionLayers",
           "Layer", "coefficients", "split_level", "ec_basis", "choose_operator",
           "OP_P", "OP_PF", "OP_PFSTAR"]
