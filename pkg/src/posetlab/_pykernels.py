"""Pure-Python kernels for the hot bitmask loops.

Elements are indices 0..n-1; node sets are Python int bitmasks, so these
routines work for any n.  A compiled twin (`_ckernels`) covers n <= 63.
"""

from __future__ import annotations


def up_masks_from_edges(n: int, edges: list[tuple[int, int]]) -> list[int]:
    """Reachability masks up[i] (including i) of the DAG given by lo->hi edges.

    Raises ValueError if the edges contain a directed cycle.
    """
    succ = [0] * n
    indeg = [0] * n
    for lo, hi in edges:
        if not (succ[lo] >> hi) & 1:
            succ[lo] |= 1 << hi
            indeg[hi] += 1
    order = [i for i in range(n) if indeg[i] == 0]
    head = 0
    while head < len(order):
        i = order[head]
        head += 1
        rest = succ[i]
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            indeg[j] -= 1
            if indeg[j] == 0:
                order.append(j)
    if len(order) != n:
        raise ValueError("cycle detected")
    up = [0] * n
    for i in reversed(order):
        mask = 1 << i
        rest = succ[i]
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            mask |= up[j]
        up[i] = mask
    return up


def enumerate_upset_masks(n: int, up_masks: list[int], cap: int) -> list[int]:
    """All upward-closed subsets as bitmasks.

    Raises ValueError once more than `cap` upsets have been produced.
    """
    # Maximal elements first: an element may join only when everything
    # strictly above it is already in.
    order = sorted(range(n), key=lambda i: (bin(up_masks[i]).count("1"), i))
    strict = [up_masks[i] & ~(1 << i) for i in range(n)]
    out: list[int] = []

    def walk(pos: int, current: int) -> None:
        if pos == n:
            if len(out) >= cap:
                raise ValueError("upset cap exceeded")
            out.append(current)
            return
        i = order[pos]
        walk(pos + 1, current)
        if strict[i] & ~current == 0:
            walk(pos + 1, current | (1 << i))

    walk(0, 0)
    return out


def sums_over_masks(masks: list[int], weights: list[int]) -> list[int]:
    """Per-mask totals of the given element weights."""
    out = []
    for mask in masks:
        total = 0
        rest = mask
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            total += weights[i]
        out.append(total)
    return out


def all_sums_leq(sums_a: list[int], den_a: int, sums_b: list[int], den_b: int) -> bool:
    """Whether a/den_a <= b/den_b entrywise (exact cross multiplication)."""
    for a, b in zip(sums_a, sums_b):
        if a * den_b > b * den_a:
            return False
    return True
