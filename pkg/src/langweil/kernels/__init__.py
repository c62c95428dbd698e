"""Hot loops behind one interface; the implementation is picked by ``LANGWEIL_BACKEND``.

Both modules export the same functions with the same signatures:
``count_fibers``, ``count_brute``, ``plane_counts_affine``,
``plane_counts_projective`` and ``first_divisor``.
"""
import importlib

from .._config import BACKEND

_NAMES = ("count_fibers", "count_brute", "plane_counts_affine", "plane_counts_projective", "first_divisor")


def get_backend(name=None):
    """Return the kernel module for ``name`` (default: the configured backend)."""
    name = name or BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    return importlib.import_module(f"._{name}", __name__)


_impl = get_backend()
count_fibers = _impl.count_fibers
count_brute = _impl.count_brute
plane_counts_affine = _impl.plane_counts_affine
plane_counts_projective = _impl.plane_counts_projective
first_divisor = _impl.first_divisor
backend_name = BACKEND
