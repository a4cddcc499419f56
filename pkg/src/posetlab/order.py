"""Finite posets: Hasse diagrams, successor notions, products, factorization.

All values are immutable after construction and every operation is a pure
function.  Element ids are opaque strings; every enumeration breaks ties
lexicographically by id so results are reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from . import kernels
from .errors import CycleDetected, SizeCapExceeded, UnknownElement

DEFAULT_UPSET_CAP = 1 << 16
DEFAULT_ISO_CAP = 16
DEFAULT_PRODUCT_CAP = 4096


@dataclass(frozen=True)
class Poset:
    """Finite strict order given by its cover relation (Hasse diagram).

    Construct via :func:`build_poset`, which reduces an arbitrary acyclic
    relation to covers; direct construction expects covers already reduced.
    """

    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]
    labels: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        elements = tuple(sorted(self.elements))
        if len(set(elements)) != len(elements):
            raise ValueError("duplicate element ids")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "covers", tuple(sorted(self.covers)))
        object.__setattr__(self, "labels", tuple(sorted(self.labels)))
        index = {e: i for i, e in enumerate(elements)}
        for lo, hi in self.covers:
            if lo not in index or hi not in index:
                raise UnknownElement(f"cover ({lo}, {hi}) uses undeclared elements")
        edges = [(index[lo], index[hi]) for lo, hi in self.covers]
        try:
            up = kernels.up_masks_from_edges(len(elements), edges)
        except ValueError as exc:
            raise CycleDetected(str(exc)) from None
        down = [0] * len(elements)
        for i in range(len(elements)):
            rest = up[i] & ~(1 << i)
            while rest:
                j = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                down[j] |= 1 << i
        for j in range(len(elements)):
            down[j] |= 1 << j
        for lo, hi in self.covers:
            i, j = index[lo], index[hi]
            between = up[i] & down[j] & ~(1 << i) & ~(1 << j)
            if between:
                raise ValueError(f"({lo}, {hi}) is implied by a longer path")
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_up", tuple(up))
        object.__setattr__(self, "_down", tuple(down))
        object.__setattr__(self, "_memo", {})

    # -- queries ---------------------------------------------------------

    def index(self, t: str) -> int:
        try:
            return self._index[t]
        except KeyError:
            raise UnknownElement(t) from None

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, t: str) -> bool:
        return t in self._index

    def leq(self, a: str, b: str) -> bool:
        return bool((self._up[self.index(a)] >> self.index(b)) & 1)

    def lt(self, a: str, b: str) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a: str, b: str) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def up_mask(self, t: str) -> int:
        return self._up[self.index(t)]

    def down_mask(self, t: str) -> int:
        return self._down[self.index(t)]

    def mask_to_set(self, mask: int) -> frozenset[str]:
        out = []
        while mask:
            i = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            out.append(self.elements[i])
        return frozenset(out)

    def set_to_mask(self, subset) -> int:
        mask = 0
        for t in subset:
            mask |= 1 << self.index(t)
        return mask

    def up_set(self, t: str) -> frozenset[str]:
        return self.mask_to_set(self.up_mask(t))

    def down_set(self, t: str) -> frozenset[str]:
        return self.mask_to_set(self.down_mask(t))

    def minimal_elements(self) -> tuple[str, ...]:
        return tuple(
            e
            for i, e in enumerate(self.elements)
            if self._down[i] == 1 << i
        )

    def maximal_elements(self) -> tuple[str, ...]:
        return tuple(
            e
            for i, e in enumerate(self.elements)
            if self._up[i] == 1 << i
        )

    def minimum(self) -> str | None:
        mins = self.minimal_elements()
        if len(mins) == 1:
            return mins[0]
        return None

    def label(self, t: str) -> str | None:
        return dict(self.labels).get(t)

    def same_carrier(self, other: "Poset") -> bool:
        return self.elements == other.elements and self.covers == other.covers


def build_poset(elements, cover_pairs, labels=None) -> Poset:
    """Hasse-reduced poset of the order generated by the given pairs.

    Pairs may include transitive edges; they are dropped.  Cycles raise
    CycleDetected, undeclared endpoints raise UnknownElement.
    """
    ids = tuple(sorted(set(str(e) for e in elements)))
    index = {e: i for i, e in enumerate(ids)}
    edges = []
    for lo, hi in cover_pairs:
        lo, hi = str(lo), str(hi)
        if lo not in index:
            raise UnknownElement(lo)
        if hi not in index:
            raise UnknownElement(hi)
        if lo == hi:
            raise CycleDetected(f"self-loop at {lo}")
        edges.append((index[lo], index[hi]))
    try:
        up = kernels.up_masks_from_edges(len(ids), edges)
    except ValueError as exc:
        raise CycleDetected(str(exc)) from None
    n = len(ids)
    down = [0] * n
    for i in range(n):
        rest = up[i] & ~(1 << i)
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            down[j] |= 1 << i
    covers = []
    for i in range(n):
        rest = up[i] & ~(1 << i)
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            between = up[i] & down[j] & ~(1 << i) & ~(1 << j)
            if not between:
                covers.append((ids[i], ids[j]))
    label_items = tuple(sorted((str(k), str(v)) for k, v in (labels or {}).items()))
    for k, _ in label_items:
        if k not in index:
            raise UnknownElement(k)
    return Poset(ids, tuple(covers), label_items)


# -- successor notions ----------------------------------------------------


def immediate_successors(P: Poset, t: str) -> frozenset[str]:
    """Covers of t: elements s > t with nothing strictly between."""
    i = P.index(t)
    return frozenset(hi for lo, hi in P.covers if lo == t)


def linear_successors(P: Poset, t: str) -> frozenset[str]:
    """Maximal elements x > t whose interval {y : t <= y <= x} is a chain."""
    i = P.index(t)
    strict_up = P.up_mask(t) & ~(1 << i)
    chain_tops = []
    rest = strict_up
    while rest:
        j = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        interval = P.up_mask(t) & P._down[j]
        if _mask_is_chain(P, interval):
            chain_tops.append(j)
    tops = []
    for j in chain_tops:
        if not any(k != j and (P._up[j] >> k) & 1 for k in chain_tops):
            tops.append(P.elements[j])
    return frozenset(tops)


def _mask_is_chain(P: Poset, mask: int) -> bool:
    rest = mask
    while rest:
        i = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        if mask & ~(P._up[i] | P._down[i]):
            return False
    return True


# -- upsets and suprema ----------------------------------------------------


def upsets(P: Poset, cap: int = DEFAULT_UPSET_CAP):
    """Every upward-closed subset exactly once, empty and full set included.

    Output is sorted lexicographically by sorted id tuple.  Raises
    SizeCapExceeded once the count passes `cap`.
    """
    memo = P._memo.get(("upsets", cap))
    if memo is not None:
        return memo
    try:
        masks = kernels.enumerate_upset_masks(len(P.elements), list(P._up), cap)
    except ValueError as exc:
        raise SizeCapExceeded(str(exc)) from None
    out = tuple(
        frozenset(P.mask_to_set(m))
        for m in sorted(masks, key=lambda m: tuple(sorted(P.mask_to_set(m))))
    )
    P._memo[("upsets", cap)] = out
    P._memo[("upset_masks", cap)] = tuple(sorted(masks))
    return out


def upset_masks(P: Poset, cap: int = DEFAULT_UPSET_CAP) -> tuple[int, ...]:
    """Bitmask form of :func:`upsets`, sorted by mask value."""
    memo = P._memo.get(("upset_masks", cap))
    if memo is None:
        upsets(P, cap)
        memo = P._memo[("upset_masks", cap)]
    return memo


def supremum(P: Poset, subset) -> str | None:
    """Least upper bound of the subset if it exists."""
    ub = (1 << len(P.elements)) - 1
    for t in subset:
        ub &= P.up_mask(t)
    rest = ub
    while rest:
        i = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        if ub & ~P._up[i] == 0:
            return P.elements[i]
    return None


# -- product and isomorphism ----------------------------------------------


def pair_id(a: str, b: str) -> str:
    return f"({a},{b})"


def product(P: Poset, Q: Poset, cap: int = DEFAULT_PRODUCT_CAP) -> Poset:
    """Coordinatewise-order product; elements are pair ids '(p,q)'."""
    if len(P) * len(Q) > cap:
        raise SizeCapExceeded(f"product size {len(P) * len(Q)} exceeds cap {cap}")
    elements = [pair_id(a, b) for a in P.elements for b in Q.elements]
    covers = []
    for a, a2 in P.covers:
        for b in Q.elements:
            covers.append((pair_id(a, b), pair_id(a2, b)))
    for b, b2 in Q.covers:
        for a in P.elements:
            covers.append((pair_id(a, b), pair_id(a, b2)))
    return build_poset(elements, covers)


def _refined_colors(P: Poset) -> tuple[int, ...]:
    n = len(P.elements)
    succ = [[] for _ in range(n)]
    pred = [[] for _ in range(n)]
    for lo, hi in P.covers:
        succ[P.index(lo)].append(P.index(hi))
        pred[P.index(hi)].append(P.index(lo))
    sig = [
        (
            bin(P._up[i]).count("1"),
            bin(P._down[i]).count("1"),
            len(succ[i]),
            len(pred[i]),
        )
        for i in range(n)
    ]
    colors = _normalize(sig)
    while True:
        sig = [
            (
                colors[i],
                tuple(sorted(colors[j] for j in succ[i])),
                tuple(sorted(colors[j] for j in pred[i])),
            )
            for i in range(n)
        ]
        new = _normalize(sig)
        if new == colors:
            return tuple(colors)
        colors = new


def _normalize(sig):
    ranks = {s: r for r, s in enumerate(sorted(set(sig)))}
    return [ranks[s] for s in sig]


def are_isomorphic(P: Poset, Q: Poset, cap: int = DEFAULT_ISO_CAP):
    """Order-isomorphism test with one witness map when it exists.

    Backtracking over invariant-refined classes.  Returns (bool, map|None);
    raises SizeCapExceeded when either poset is larger than `cap`.
    """
    if len(P) > cap or len(Q) > cap:
        raise SizeCapExceeded(f"isomorphism cap {cap} exceeded")
    if len(P) != len(Q) or len(P.covers) != len(Q.covers):
        return False, None
    cp, cq = _refined_colors(P), _refined_colors(Q)
    if sorted(cp) != sorted(cq):
        return False, None
    n = len(P)
    by_color: dict[int, list[int]] = {}
    for j, c in enumerate(cq):
        by_color.setdefault(c, []).append(j)
    # assign rare classes first, lexicographic within a class
    order = sorted(range(n), key=lambda i: (len(by_color[cp[i]]), P.elements[i]))
    succ_p = [set() for _ in range(n)]
    succ_q = [set() for _ in range(n)]
    for lo, hi in P.covers:
        succ_p[P.index(lo)].add(P.index(hi))
    for lo, hi in Q.covers:
        succ_q[Q.index(lo)].add(Q.index(hi))
    assigned: dict[int, int] = {}
    used: set[int] = set()

    def backtrack(pos: int) -> bool:
        if pos == n:
            return True
        i = order[pos]
        for j in by_color[cp[i]]:
            if j in used:
                continue
            ok = True
            for i2, j2 in assigned.items():
                if (i2 in succ_p[i]) != (j2 in succ_q[j]):
                    ok = False
                    break
                if (i in succ_p[i2]) != (j in succ_q[j2]):
                    ok = False
                    break
            if ok:
                assigned[i] = j
                used.add(j)
                if backtrack(pos + 1):
                    return True
                del assigned[i]
                used.discard(j)
        return False

    if backtrack(0):
        mapping = {P.elements[i]: Q.elements[j] for i, j in assigned.items()}
        return True, mapping
    return False, None


# -- irreducibility ---------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """Verdict of the brute-force product search."""

    irreducible: bool
    left: Poset | None = None
    right: Poset | None = None
    witness: dict | None = field(default=None, compare=False)


def _induced(P: Poset, subset) -> Poset:
    pairs = [(a, b) for a in subset for b in subset if a != b and P.leq(a, b)]
    return build_poset(subset, pairs)


def _induced_classes(P: Poset, k: int) -> list[Poset]:
    buckets: dict[tuple, list[Poset]] = {}
    for combo in combinations(P.elements, k):
        sub = _induced(P, combo)
        key = (tuple(sorted(_refined_colors(sub))), len(sub.covers))
        bucket = buckets.setdefault(key, [])
        if not any(are_isomorphic(sub, seen, cap=len(P))[0] for seen in bucket):
            bucket.append(sub)
    return [p for bucket in buckets.values() for p in bucket]


def factorization(P: Poset, cap: int = DEFAULT_ISO_CAP) -> Factorization:
    """Search all cardinality splits d*e = |P| (d, e > 1) for a product form.

    Candidate factors range over induced subposets up to isomorphism; a
    successful split is decided by are_isomorphic against their product.
    """
    n = len(P)
    if n > cap:
        raise SizeCapExceeded(f"factorization cap {cap} exceeded")
    if n <= 3:
        return Factorization(True)
    for d in range(2, n):
        if d * d > n:
            break
        if n % d:
            continue
        e = n // d
        cands_d = _induced_classes(P, d)
        cands_e = cands_d if e == d else _induced_classes(P, e)
        for Q in cands_d:
            for R in cands_e:
                prod = product(Q, R, cap=max(DEFAULT_PRODUCT_CAP, n))
                ok, witness = are_isomorphic(P, prod, cap=max(cap, n))
                if ok:
                    return Factorization(False, Q, R, witness)
    return Factorization(True)


def is_irreducible(P: Poset, cap: int = DEFAULT_ISO_CAP) -> bool:
    return factorization(P, cap).irreducible


# -- bounds ------------------------------------------------------------------


@dataclass(frozen=True)
class BoundedPoset:
    """A poset with a fresh bottom and top adjoined."""

    inner: Poset
    bottom: str
    top: str
    poset: Poset

    def as_poset(self) -> Poset:
        return self.poset


def _fresh(name: str, taken) -> str:
    while name in taken:
        name = "_" + name
    return name


def adjoin_bounds(P: Poset) -> BoundedPoset:
    """Fresh bottom below everything and fresh top above everything."""
    bottom = _fresh("-oo", P.elements)
    top = _fresh("+oo", set(P.elements) | {bottom})
    elements = list(P.elements) + [bottom, top]
    covers = list(P.covers)
    if P.elements:
        covers += [(bottom, m) for m in P.minimal_elements()]
        covers += [(m, top) for m in P.maximal_elements()]
    else:
        covers.append((bottom, top))
    combined = build_poset(elements, covers, dict(P.labels))
    return BoundedPoset(P, bottom, top, combined)


# -- serialization -----------------------------------------------------------


def poset_to_json(P: Poset) -> dict:
    return {
        "elements": list(P.elements),
        "covers": [list(c) for c in P.covers],
        "labels": dict(P.labels),
    }


def poset_from_json(data: dict) -> Poset:
    return build_poset(
        data["elements"],
        [tuple(c) for c in data.get("covers", [])],
        data.get("labels", {}),
    )


def poset_to_dot(P: Poset, highlight: tuple[str, ...] = ()) -> str:
    """Hasse diagram in DOT, edges lower -> upper."""
    lines = ["digraph poset {", "  rankdir=BT;"]
    marked = set(highlight)
    for e in P.elements:
        label = P.label(e) or e
        style = ', style=bold, color="red"' if e in marked else ""
        lines.append(f'  "{e}" [label="{label}"{style}];')
    for lo, hi in P.covers:
        style = ' [style=bold, color="red"]' if lo in marked and hi in marked else ""
        lines.append(f'  "{lo}" -> "{hi}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps_canonical(data) -> str:
    """Deterministic JSON used by every CLI artifact."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"
