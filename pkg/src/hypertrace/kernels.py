"""Backend selection for the search kernels.

The compiled extension is used when it was built; otherwise, or for hosts
wider than 64 vertices, calls go to the pure-Python implementation.
"""
from __future__ import annotations

from . import _pykernels
from ._pykernels import BudgetExhausted

try:
    from . import _ckernels
except ImportError:
    _ckernels = None

__all__ = [
    "BudgetExhausted",
    "available_backends",
    "backend",
    "cover_search",
    "drep_search",
    "set_backend",
    "trace_search",
    "trace_search_through",
]

_active = _ckernels if _ckernels is not None else _pykernels


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _ckernels is not None else [])


def backend() -> str:
    return "cython" if _active is _ckernels else "python"


def set_backend(name: str) -> None:
    global _active
    if name == "python":
        _active = _pykernels
    elif name == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built")
        _active = _ckernels
    else:
        raise ValueError(f"unknown backend {name!r}")


def trace_search(n, masks, p, pattern_edges, order, prefix=(), forbidden=0):
    impl = _active if n <= 64 else _pykernels
    return impl.trace_search(n, masks, p, pattern_edges, order, prefix, forbidden)


def trace_search_through(n, masks, p, pattern_edges, order, edge_mask):
    impl = _active if n <= 64 else _pykernels
    return impl.trace_search_through(n, masks, p, pattern_edges, order, edge_mask)


def drep_search(masks, k):
    impl = _active
    if impl is _ckernels and any(m >> 64 for m in masks):
        impl = _pykernels
    return impl.drep_search(masks, k)


def cover_search(
    nsets, block_cover, set_blocks, size, per_block, budget=0, fix_first=True,
    point_sets=(), per_point=0, k=0,
):
    return _active.cover_search(
        nsets, block_cover, set_blocks, size, per_block, budget, fix_first, point_sets, per_point, k
    )
