"""Points with at most two colored tree nodes on a branch, the restriction
map between two such spaces, the Euclidean coordinate identification, and a
symbolic oracle for the fiber preorder of the restriction map.

Color universes carry an `unbounded` flag meaning "infinitely many anonymous
colors beyond the named ones".  The only question the fiber analysis ever
asks of a universe is whether a color outside a finite exclusion set exists,
so the flag is a faithful stand-in for an infinite palette.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotASubtree, UnboundedRequired, UnknownElement
from .order import Poset, build_poset
from .trees import FiniteTree, comparability_upset


@dataclass(frozen=True)
class ColorUniverse:
    """Named colors plus optionally an unbounded anonymous remainder."""

    named: tuple[str, ...]
    unbounded: bool = False

    def __post_init__(self):
        names = tuple(sorted(self.named))
        if len(set(names)) != len(names):
            raise ValueError("duplicate color names")
        object.__setattr__(self, "named", names)

    def contains_universe(self, other: "ColorUniverse") -> bool:
        return set(other.named) <= set(self.named) and (
            not other.unbounded or self.unbounded
        )


@dataclass(frozen=True)
class BranchPoint:
    """At most two (node, color) pairs whose nodes lie on one branch."""

    pairs: frozenset

    def __post_init__(self):
        pairs = frozenset((str(n), str(c)) for n, c in self.pairs)
        if len(pairs) > 2:
            raise ValueError("points have at most two pairs")
        object.__setattr__(self, "pairs", pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> tuple[tuple[str, str], ...]:
        return tuple(sorted(self.pairs))

    def nodes(self) -> frozenset[str]:
        return frozenset(n for n, _ in self.pairs)


EMPTY_POINT = BranchPoint(frozenset())


def point(*pairs) -> BranchPoint:
    return BranchPoint(frozenset(pairs))


def point_valid(tree: FiniteTree, pt: BranchPoint) -> bool:
    """First coordinates exist in the tree and are pairwise comparable."""
    nodes = sorted(pt.nodes())
    for n in nodes:
        if n not in tree:
            return False
    for a in nodes:
        for b in nodes:
            if not tree.comparable(a, b):
                return False
    return True


@dataclass(frozen=True)
class PointEnumeration:
    points: tuple[BranchPoint, ...]
    anonymous_remainder: bool


def enumerate_points(tree: FiniteTree, colors: ColorUniverse) -> PointEnumeration:
    """Empty point, all singletons, all branch-valid doubletons over named colors.

    When the universe is unbounded the enumeration covers named colors only
    and flags the anonymous remainder.
    """
    pairs = [(n, c) for n in tree.nodes for c in colors.named]
    points = [EMPTY_POINT]
    points += [BranchPoint(frozenset({p})) for p in pairs]
    for i, p in enumerate(pairs):
        for q in pairs[i + 1:]:
            if tree.comparable(p[0], q[0]):
                points.append(BranchPoint(frozenset({p, q})))
    points.sort(key=lambda x: (len(x), x.sorted_pairs()))
    return PointEnumeration(tuple(points), colors.unbounded)


def project(pt: BranchPoint, nodes, colors) -> BranchPoint:
    """Restriction of the point to the given node and color sets."""
    nodes, colors = set(nodes), set(colors)
    return BranchPoint(
        frozenset((n, c) for n, c in pt.pairs if n in nodes and c in colors)
    )


def coordinates(pt: BranchPoint) -> dict[BranchPoint, Fraction]:
    """Sparse Euclidean coordinates of the point.

    The empty point is the origin; a singleton is its own basis vector; a
    doubleton is the sum of its own basis vector and those of its two
    singleton restrictions.
    """
    if len(pt) == 0:
        return {}
    if len(pt) == 1:
        return {pt: Fraction(1)}
    out = {pt: Fraction(1)}
    for p in pt.pairs:
        out[BranchPoint(frozenset({p}))] = Fraction(1)
    return out


# -- symbolic neighborhood images ---------------------------------------------


@dataclass(frozen=True)
class SymbolicImage:
    """Image of a basic neighborhood under the restriction map.

    Denotes every valid point w of the target space with forced ⊆ w,
    w disjoint from excluded, free pairs on base_nodes, and |w| <= size_cap.
    With an unbounded color palette, finite exclusion sets never change which
    sets of this shape contain which: that reduction is what `contains`
    implements, and the concrete enumeration in the tests discharges it.
    """

    forced: frozenset
    base_nodes: frozenset
    excluded: frozenset
    size_cap: int

    def reach(self) -> int:
        return self.size_cap if self.base_nodes else min(self.size_cap, len(self.forced))

    def has_free_slots(self) -> bool:
        return bool(self.base_nodes) and self.size_cap > len(self.forced)

    def contains(self, other: "SymbolicImage", named_colors) -> bool:
        """Exact containment of the denoted sets, colors unbounded."""
        if self.forced != other.forced:
            raise ValueError("containment is only defined within one fiber")
        if other.forced & self.excluded:
            return False
        if other.reach() > self.size_cap:
            return False
        if other.has_free_slots():
            if not other.base_nodes <= self.base_nodes:
                return False
            for n, c in self.excluded:
                if n in other.base_nodes and c in named_colors:
                    if (n, c) not in other.excluded:
                        return False
        return True


@dataclass(frozen=True)
class FiberElement:
    """One symbolic member (or member class) of a fiber."""

    kind: str  # zero | single | pairs | base
    node: str | None
    shape: SymbolicImage

    def image(self, excluded: frozenset) -> SymbolicImage:
        return SymbolicImage(
            self.shape.forced, self.shape.base_nodes, excluded, self.shape.size_cap
        )


def fiber_leq(x: FiberElement, y: FiberElement) -> bool:
    """x <= y in the fiber preorder, decided from neighborhood image shapes.

    x <= y demands, for every finite exclusion set F, some F' with
    image(y, F') contained in image(x, F).  Taking F' to be the part of F
    that y can produce makes the exclusions cancel, so the decision reduces
    to the exclusion-free shape comparison below.
    """
    sx, sy = x.shape, y.shape
    if sy.reach() > sx.size_cap:
        return False
    if sy.has_free_slots() and not sy.base_nodes <= sx.base_nodes:
        return False
    return True


def fiber_order(tree: FiniteTree, colors: ColorUniverse, subtree_nodes,
                subcolors: ColorUniverse, target: BranchPoint) -> Poset:
    """Quotient of the fiber preorder over the target point, as a labeled poset.

    Requires both universes unbounded (the anonymous remainder is what keeps
    exclusion sets absorbable).  Fibers over a doubleton are trivial, over a
    singleton a two-chain; over the empty point the singleton classes realize
    the comparability-upset family between fresh extremes.
    """
    if not (colors.unbounded and subcolors.unbounded):
        raise UnboundedRequired("both color universes must be flagged unbounded")
    if not colors.contains_universe(subcolors):
        raise ValueError("sub-universe colors must be contained in the big universe")
    sub = tuple(sorted(frozenset(subtree_nodes)))
    if not tree.is_subtree(sub):
        raise NotASubtree("subtree must be ancestor-closed and contain the root")
    for n, c in target.pairs:
        if n not in sub or c not in subcolors.named:
            raise UnknownElement(f"target pair ({n},{c}) is outside the quotient space")
    if not point_valid(tree, target):
        raise ValueError("target point nodes must lie on a branch")

    if len(target) == 2:
        return build_poset(["x"], [], {"x": "[the point itself]"})

    if len(target) == 1:
        ((node, _color),) = target.pairs
        reach = comparability_upset(tree, sub, node)
        base_elem = FiberElement(
            "base", None, SymbolicImage(target.pairs, frozenset(reach), frozenset(), 2)
        )
        pairs_elem = FiberElement(
            "pairs", None, SymbolicImage(target.pairs, frozenset(), frozenset(), 1)
        )
        elems = {"y": base_elem, "w": pairs_elem}
        labels = {"y": "[the point itself]", "w": "[isolated pairs]"}
        return _quotient_poset(elems, labels)

    elems: dict[str, FiberElement] = {
        "o": FiberElement(
            "zero", None, SymbolicImage(frozenset(), frozenset(sub), frozenset(), 2)
        ),
        "w": FiberElement(
            "pairs", None, SymbolicImage(frozenset(), frozenset(), frozenset(), 0)
        ),
    }
    labels = {"o": "[empty point]", "w": "[isolated pairs]"}
    for t in tree.nodes:
        r = comparability_upset(tree, sub, t)
        elems[f"s.{t}"] = FiberElement(
            "single", t, SymbolicImage(frozenset(), frozenset(r), frozenset(), 1)
        )
        labels[f"s.{t}"] = f"[{t},*]"
    return _quotient_poset(elems, labels)


def _quotient_poset(elems: dict[str, FiberElement], labels: dict[str, str]) -> Poset:
    ids = sorted(elems)
    leq = {
        (a, b): fiber_leq(elems[a], elems[b]) for a in ids for b in ids
    }
    rep: dict[str, str] = {}
    for a in ids:
        for b in sorted(rep):
            if leq[(a, b)] and leq[(b, a)]:
                rep[a] = rep[b]
                break
        else:
            rep[a] = a
    classes = sorted(set(rep.values()))
    pairs = [
        (a, b)
        for a in classes
        for b in classes
        if a != b and leq[(a, b)]
    ]
    merged_labels = {}
    for c in classes:
        members = sorted(labels[a] for a in ids if rep[a] == c)
        merged_labels[c] = " = ".join(members)
    return build_poset(classes, pairs, merged_labels)


# -- serialization --------------------------------------------------------------


def point_to_json(pt: BranchPoint) -> dict:
    return {"pairs": [list(p) for p in pt.sorted_pairs()]}


def point_from_json(data: dict) -> BranchPoint:
    return BranchPoint(frozenset(tuple(p) for p in data.get("pairs", [])))


def point_key(pt: BranchPoint) -> str:
    return json.dumps([list(p) for p in pt.sorted_pairs()], separators=(",", ":"))


def coordinates_to_json(pt: BranchPoint) -> dict:
    return {point_key(basis): int(v) for basis, v in coordinates(pt).items()}
