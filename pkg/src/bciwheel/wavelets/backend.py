"""Kernel backend selection: compiled extension if present, numpy otherwise.

Set BCIWHEEL_PURE_PYTHON=1 to force the numpy kernels (used by the benchmark
and by tests that exercise both paths).
"""
import os

from . import _fbkern_py

if os.environ.get("BCIWHEEL_PURE_PYTHON") == "1":
    _impl = _fbkern_py
else:
    try:
        from . import _fbkern as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _fbkern_py

BACKEND = "compiled" if _impl is not _fbkern_py else "python"

analysis_pair = _impl.analysis_pair
synthesis_pair = _impl.synthesis_pair


def get_backends():
    """Both kernel implementations, for equivalence tests and benchmarks."""
    impls = {"python": _fbkern_py}
    try:
        from . import _fbkern
        impls["compiled"] = _fbkern
    except ImportError:
        pass
    return impls
