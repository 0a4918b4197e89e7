"""Exact cylindrical algebraic decomposition with multiple equational
constraints: reduced projection, reduced lifting and truth labelling."""

__version__ = "0.1.0"

from .ecprop import (Designation, designate_heuristic, enumerate_designations,  # noqa: E402
                     explicit_ecs, propagate)
from .errors import (DegenerateTowerError, ECADError, InvalidDesignationError,  # noqa: E402
                     Nullified, ParseError, UnknownVariableError)
from .formula import parse_formula  # noqa: E402
from .kernels import BACKEND  # noqa: E402
from .lifting import CAD, COMPLETE, FAIL, build_cad  # noqa: E402
from .polycore import Polynomial, VariableOrder, discriminant, resultant  # noqa: E402
from .projection import projection_phase  # noqa: E402
from .realalg import RealAlgebraicNumber, compare, sign_at  # noqa: E402

__all__ = [
    "BACKEND", "CAD", "COMPLETE", "FAIL", "Designation", "DegenerateTowerError",
    "ECADError", "InvalidDesignationError", "Nullified", "ParseError", "Polynomial",
    "RealAlgebraicNumber", "UnknownVariableError", "VariableOrder", "build_cad",
    "compare", "designate_heuristic", "discriminant", "enumerate_designations",
    "explicit_ecs", "parse_formula", "projection_phase", "propagate", "resultant",
    "sign_at",
]
