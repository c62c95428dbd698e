"""Runtime switches shared by the package.

``LANGWEIL_BACKEND`` selects the hot-kernel implementation: ``numba``
(default when importable) or ``numpy`` (pure vectorized fallback).
"""
import os

FIELD_ORDER_CAP = 1 << 20
DEFAULT_WORK_CAP = 10**9
SCAN_CROSSOVER = 64
EXHAUSTIVE_PLANE_LIMIT = 10**5


def _pick_backend():
    wanted = os.environ.get("LANGWEIL_BACKEND", "numba").strip().lower()
    if wanted not in ("numba", "numpy"):
        raise ValueError(f"LANGWEIL_BACKEND must be 'numba' or 'numpy', got {wanted!r}")
    if wanted == "numba":
        try:
            import numba  # noqa: F401
        except ImportError:  # pragma: no cover
            return "numpy"
    return wanted


BACKEND = _pick_backend()
