"""Select the compiled kernels when built, else the pure-Python ones.

Set ``ECAD_PURE_PYTHON=1`` to force the fallback.
"""
import os

BACKEND = "python"

if not os.environ.get("ECAD_PURE_PYTHON"):
    try:
        from ._kernels import (descartes_01, eval_hom, halve, sign_at,
                               sign_variations, taylor_shift1)
        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._kernels_py import (descartes_01, eval_hom, halve, sign_at,  # noqa: F811
                              sign_variations, taylor_shift1)

__all__ = ["BACKEND", "descartes_01", "eval_hom", "halve", "sign_at",
           "sign_variations", "taylor_shift1"]
