"""Kernel selection: compiled bitmask routines when available, pure otherwise.

The compiled module handles n <= 63 with 64-bit arithmetic; anything larger
(or with oversized weights) is routed to the pure implementation, which uses
unbounded Python ints.
"""

from __future__ import annotations

from . import _pykernels as pure

try:
    from . import _ckernels as compiled
except ImportError:
    compiled = None

_INT64_SAFE = 1 << 31


def backend_name() -> str:
    return "compiled" if compiled is not None else "pure"


def up_masks_from_edges(n: int, edges: list[tuple[int, int]]) -> list[int]:
    if compiled is not None and n <= 63:
        return compiled.up_masks_from_edges(n, edges)
    return pure.up_masks_from_edges(n, edges)


def enumerate_upset_masks(n: int, up_masks: list[int], cap: int) -> list[int]:
    if compiled is not None and n <= 63:
        return compiled.enumerate_upset_masks(n, up_masks, cap)
    return pure.enumerate_upset_masks(n, up_masks, cap)


def sums_over_masks(masks: list[int], weights: list[int]) -> list[int]:
    if (
        compiled is not None
        and len(weights) <= 63
        and all(-_INT64_SAFE < w < _INT64_SAFE for w in weights)
    ):
        return compiled.sums_over_masks(masks, weights)
    return pure.sums_over_masks(masks, weights)


def all_sums_leq(sums_a: list[int], den_a: int, sums_b: list[int], den_b: int) -> bool:
    if (
        compiled is not None
        and 0 < den_a < _INT64_SAFE
        and 0 < den_b < _INT64_SAFE
        and all(-_INT64_SAFE < s < _INT64_SAFE for s in sums_a)
        and all(-_INT64_SAFE < s < _INT64_SAFE for s in sums_b)
    ):
        return compiled.all_sums_leq(sums_a, den_a, sums_b, den_b)
    return pure.all_sums_leq(sums_a, den_a, sums_b, den_b)
