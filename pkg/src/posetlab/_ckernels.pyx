# cython: boundscheck=False, wraparound=False
"""Compiled twins of the pure kernels, limited to n <= 63 and 64-bit sums."""

from libc.stdint cimport int64_t, uint64_t


def up_masks_from_edges(int n, list edges):
    """Reachability masks up[i] (including i); ValueError on a cycle."""
    cdef uint64_t[64] succ
    cdef int[64] indeg
    cdef int[64] order
    cdef uint64_t[64] up
    cdef int i, j, lo, hi, head, count
    cdef uint64_t rest, mask
    if n > 63:
        raise ValueError("compiled kernel limited to n <= 63")
    for i in range(n):
        succ[i] = 0
        indeg[i] = 0
    for lo, hi in edges:
        if not (succ[lo] >> hi) & 1:
            succ[lo] |= (<uint64_t>1) << hi
            indeg[hi] += 1
    count = 0
    for i in range(n):
        if indeg[i] == 0:
            order[count] = i
            count += 1
    head = 0
    while head < count:
        i = order[head]
        head += 1
        rest = succ[i]
        while rest:
            j = _lowbit(rest)
            rest &= rest - 1
            indeg[j] -= 1
            if indeg[j] == 0:
                order[count] = j
                count += 1
    if count != n:
        raise ValueError("cycle detected")
    for head in range(n - 1, -1, -1):
        i = order[head]
        mask = (<uint64_t>1) << i
        rest = succ[i]
        while rest:
            j = _lowbit(rest)
            rest &= rest - 1
            mask |= up[j]
        up[i] = mask
    return [int(up[i]) for i in range(n)]


cdef inline int _lowbit(uint64_t x):
    cdef int k = 0
    while not (x >> k) & 1:
        k += 1
    return k


def enumerate_upset_masks(int n, list up_masks, long cap):
    """All upward-closed subsets as bitmasks; ValueError past the cap."""
    cdef uint64_t[64] strict
    cdef int[64] order
    cdef uint64_t[64] stack_mask
    cdef int[64] stack_pos
    cdef int[64] stack_state
    cdef int depth, pos, i
    cdef uint64_t current
    if n > 63:
        raise ValueError("compiled kernel limited to n <= 63")
    pairs = sorted(range(n), key=lambda k: (bin(up_masks[k]).count("1"), k))
    for i in range(n):
        order[i] = pairs[i]
        strict[i] = <uint64_t>up_masks[i] & ~((<uint64_t>1) << i)
    out = []
    # iterative DFS mirroring the pure version: state 0 = exclude, 1 = include
    depth = 0
    stack_mask[0] = 0
    stack_pos[0] = 0
    stack_state[0] = 0
    while depth >= 0:
        current = stack_mask[depth]
        pos = stack_pos[depth]
        if pos == n:
            if len(out) >= cap:
                raise ValueError("upset cap exceeded")
            out.append(int(current))
            depth -= 1
            continue
        i = order[pos]
        if stack_state[depth] == 0:
            stack_state[depth] = 1
            depth += 1
            stack_mask[depth] = current
            stack_pos[depth] = pos + 1
            stack_state[depth] = 0
        elif stack_state[depth] == 1:
            stack_state[depth] = 2
            if strict[i] & ~current == 0:
                depth += 1
                stack_mask[depth] = current | ((<uint64_t>1) << i)
                stack_pos[depth] = pos + 1
                stack_state[depth] = 0
        else:
            depth -= 1
    return out


def sums_over_masks(list masks, list weights):
    """Per-mask totals of the given element weights (int64)."""
    cdef int64_t[64] w
    cdef int n = len(weights)
    cdef int i
    cdef uint64_t mask, rest
    cdef int64_t total
    if n > 63:
        raise ValueError("compiled kernel limited to n <= 63")
    for i in range(n):
        w[i] = weights[i]
    out = []
    for m in masks:
        mask = <uint64_t>m
        total = 0
        rest = mask
        while rest:
            i = _lowbit(rest)
            rest &= rest - 1
            total += w[i]
        out.append(int(total))
    return out


def all_sums_leq(list sums_a, long long den_a, list sums_b, long long den_b):
    """Whether a/den_a <= b/den_b entrywise."""
    cdef int64_t a, b
    cdef Py_ssize_t k
    for k in range(len(sums_a)):
        a = sums_a[k]
        b = sums_b[k]
        if a * den_b > b * den_a:
            return False
    return True
