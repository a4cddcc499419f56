"""Rooted labeled trees: spine-tree constructions, admissibility predicates,
and comparability upsets.

Height and branch length count edges (number of levels minus one); walk
lengths elsewhere count elements.  The `unit` parameter is the finite stand-in
for the limit step of the transfinite constructions this mirrors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotASubtree, SizeCapExceeded, UnknownElement
from .order import Poset, build_poset

DEFAULT_TREE_CAP = 4096

PROFILES = ("caterpillar", "complete-binary")


@dataclass(frozen=True)
class FiniteTree:
    """Rooted tree with string node ids; the ancestor order makes it a poset."""

    nodes: tuple[str, ...]
    root: str
    parent: tuple[tuple[str, str], ...]
    labels: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        nodes = tuple(sorted(self.nodes))
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "parent", tuple(sorted(self.parent)))
        object.__setattr__(self, "labels", tuple(sorted(self.labels)))
        node_set = set(nodes)
        if self.root not in node_set:
            raise UnknownElement(self.root)
        parent_map = dict(self.parent)
        if set(parent_map) != node_set - {self.root} or self.root in parent_map:
            raise ValueError("parent map must cover exactly the non-root nodes")
        children: dict[str, list[str]] = {v: [] for v in nodes}
        for child, par in self.parent:
            if par not in node_set:
                raise UnknownElement(par)
            children[par].append(child)
        depth = {self.root: 0}
        stack = [self.root]
        seen = 1
        while stack:
            v = stack.pop()
            for c in sorted(children[v]):
                depth[c] = depth[v] + 1
                seen += 1
                stack.append(c)
        if seen != len(nodes):
            raise ValueError("not every node is reachable from the root")
        object.__setattr__(self, "_children", {v: tuple(sorted(children[v])) for v in nodes})
        object.__setattr__(self, "_parent_map", parent_map)
        object.__setattr__(self, "_depth", depth)

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, v: str) -> bool:
        return v in self._depth

    def children(self, v: str) -> tuple[str, ...]:
        try:
            return self._children[v]
        except KeyError:
            raise UnknownElement(v) from None

    def parent_of(self, v: str) -> str | None:
        if v not in self._depth:
            raise UnknownElement(v)
        return self._parent_map.get(v)

    def depth(self, v: str) -> int:
        try:
            return self._depth[v]
        except KeyError:
            raise UnknownElement(v) from None

    def ancestors(self, v: str) -> tuple[str, ...]:
        """Ancestors of v from the root down, v included."""
        chain = [v]
        while (p := self._parent_map.get(chain[-1])) is not None:
            chain.append(p)
        self.depth(v)
        return tuple(reversed(chain))

    def leq(self, a: str, b: str) -> bool:
        """Ancestor order: a <= b iff a lies on the root path of b."""
        return a in self.ancestors(b)

    def comparable(self, a: str, b: str) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def descendants(self, v: str) -> frozenset[str]:
        out = []
        stack = [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(self._children[u])
        return frozenset(out)

    def leaves(self) -> tuple[str, ...]:
        return tuple(v for v in self.nodes if not self._children[v])

    def label(self, v: str) -> str | None:
        return dict(self.labels).get(v)

    def as_poset(self) -> Poset:
        return build_poset(self.nodes, self.parent_pairs(), dict(self.labels))

    def parent_pairs(self) -> list[tuple[str, str]]:
        return [(par, child) for child, par in self.parent]

    def is_subtree(self, node_set) -> bool:
        """Ancestor-closed node set containing the root."""
        s = set(node_set)
        if not s <= set(self.nodes) or self.root not in s:
            return False
        return all(self._parent_map.get(v) in s for v in s if v != self.root)


@dataclass(frozen=True)
class SpineTreeParams:
    """Parameters of one spine tree: finite unit, positive index, profile."""

    unit: int
    index: int
    profile: str = "caterpillar"

    def __post_init__(self):
        if self.unit < 1 or self.index < 1:
            raise ValueError("unit and index must be positive")
        if self.profile not in PROFILES:
            raise ValueError(f"profile must be one of {PROFILES}")


def make_spine_tree(params: SpineTreeParams, cap: int = DEFAULT_TREE_CAP) -> FiniteTree:
    """Tree of height unit*index whose root carries the index label.

    Caterpillar: spine s_0 < ... < s_{h-1} plus one leaf child e_i on each
    spine node (2h nodes, h = unit*index).  Complete-binary: full binary tree
    of height h.  Every interior node except the truncation boundary has two
    children.
    """
    h = params.unit * params.index
    if params.profile == "caterpillar":
        return _caterpillar(h, str(params.index), prefix="")
    size = (1 << (h + 1)) - 1
    if size > cap:
        raise SizeCapExceeded(f"complete-binary tree has {size} nodes, cap {cap}")
    return _complete_binary(h, str(params.index), prefix="")


def _caterpillar(h: int, root_label: str, prefix: str) -> FiniteTree:
    width = max(2, len(str(h - 1)))
    spine = [f"{prefix}s{i:0{width}d}" for i in range(h)]
    leaves = [f"{prefix}e{i:0{width}d}" for i in range(h)]
    parent = []
    for i in range(1, h):
        parent.append((spine[i], spine[i - 1]))
    for i in range(h):
        parent.append((leaves[i], spine[i]))
    return FiniteTree(
        tuple(spine + leaves), spine[0], tuple(parent), ((spine[0], root_label),)
    )


def _complete_binary(h: int, root_label: str, prefix: str) -> FiniteTree:
    root = f"{prefix}b"
    nodes = [root]
    parent = []
    frontier = [root]
    for _ in range(h):
        nxt = []
        for v in frontier:
            for bit in "01":
                c = v + bit
                nodes.append(c)
                parent.append((c, v))
                nxt.append(c)
        frontier = nxt
    return FiniteTree(tuple(nodes), root, tuple(parent), ((root, root_label),))


def make_spine_forest(indices, unit: int, profile: str = "caterpillar",
                      cap: int = DEFAULT_TREE_CAP) -> FiniteTree:
    """Root labeled 0 whose children are the spine trees for each index.

    The subtree above the child labeled g is the spine tree with that index.
    """
    idx = sorted(set(int(g) for g in indices))
    if not idx or idx[0] < 1:
        raise ValueError("indices must be a nonempty set of positive integers")
    root = "0"
    nodes = [root]
    parent: list[tuple[str, str]] = []
    labels = [(root, "0")]
    total = 1
    for g in idx:
        sub = make_spine_tree(SpineTreeParams(unit, g, profile), cap=cap)
        prefix = f"g{g}."
        renamed = {v: prefix + v for v in sub.nodes}
        nodes.extend(renamed.values())
        parent.append((renamed[sub.root], root))
        parent.extend((renamed[c], renamed[p]) for c, p in sub.parent)
        labels.append((renamed[sub.root], str(g)))
        total += len(sub)
        if total > cap:
            raise SizeCapExceeded(f"family tree exceeds cap {cap}")
    return FiniteTree(tuple(nodes), root, tuple(parent), tuple(labels))


def forest_indices(tree: FiniteTree) -> dict[int, str]:
    """Map index -> subtree-root node for a tree built by make_spine_forest."""
    out = {}
    for child in tree.children(tree.root):
        lbl = tree.label(child)
        if lbl is None or not lbl.isdigit():
            raise ValueError(f"subtree root {child} carries no index label")
        out[int(lbl)] = child
    return out


# -- statistics --------------------------------------------------------------


@dataclass(frozen=True)
class TreeStats:
    height: int
    max_branch_length: int
    ever_branching: bool
    level_sizes: tuple[int, ...]


def tree_stats(tree: FiniteTree) -> TreeStats:
    """Height (levels minus one), longest branch in edges, branching flag.

    A node counts against ever_branching when it has exactly one child,
    unless all its children are leaves on the deepest level: those nodes are
    the truncation boundary of a tree that would keep branching if extended.
    """
    depths = [tree.depth(v) for v in tree.nodes]
    height = max(depths)
    level_sizes = [0] * (height + 1)
    for d in depths:
        level_sizes[d] += 1
    branching = True
    for v in tree.nodes:
        kids = tree.children(v)
        if not kids or len(kids) >= 2:
            continue
        boundary = all(
            not tree.children(c) and tree.depth(c) == height for c in kids
        )
        if not boundary:
            branching = False
            break
    return TreeStats(height, height, branching, tuple(level_sizes))


# -- admissible subtrees -----------------------------------------------------


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    reasons: tuple[str, ...]


def subtree_levels(tree: FiniteTree, sub_root: str, count: int) -> frozenset[str]:
    """Nodes of the subtree at relative depth < count below sub_root."""
    base = tree.depth(sub_root)
    return frozenset(
        v for v in tree.descendants(sub_root) if tree.depth(v) - base < count
    )


def admissible_subtree_report(tree: FiniteTree, node_set, indices, delta: int,
                              unit: int) -> AdmissibilityReport:
    """Membership test for the admissible-subtree family.

    Requires: for every index g <= delta the whole g-subtree is included;
    for every index g > delta that is touched at all, the first
    unit*(delta+1) levels of the g-subtree are included.  The cardinality
    bound of the transfinite setting is vacuous here and reported satisfied.
    """
    s = frozenset(node_set)
    if not tree.is_subtree(s):
        raise NotASubtree("node set is not a root-containing subtree")
    by_index = forest_indices(tree)
    declared = sorted(set(int(g) for g in indices))
    if declared != sorted(by_index):
        raise ValueError(f"declared indices {declared} do not match tree {sorted(by_index)}")
    reasons = ["size bound: satisfied (finite scale)"]
    ok = True
    for g, sub_root in sorted(by_index.items()):
        sub_nodes = tree.descendants(sub_root)
        if g <= delta:
            missing = sub_nodes - s
            if missing:
                ok = False
                reasons.append(
                    f"whole-subtree clause failed for index {g}: "
                    f"missing {sorted(missing)[:3]}"
                )
            else:
                reasons.append(f"whole-subtree clause holds for index {g}")
        else:
            if not (sub_nodes & s):
                reasons.append(f"prefix clause vacuous for index {g} (untouched)")
                continue
            needed = subtree_levels(tree, sub_root, unit * (delta + 1))
            missing = needed - s
            if missing:
                ok = False
                reasons.append(
                    f"prefix clause failed for index {g}: "
                    f"missing {sorted(missing)[:3]}"
                )
            else:
                reasons.append(f"prefix clause holds for index {g}")
    return AdmissibilityReport(ok, tuple(reasons))


def enumerate_admissible_subtrees(tree: FiniteTree, indices, delta: int, unit: int,
                                  cap: int = 512) -> list[frozenset[str]]:
    """All admissible subtrees, smallest first; always includes the full tree."""
    by_index = forest_indices(tree)
    per_subtree: list[list[frozenset[str]]] = []
    for g, sub_root in sorted(by_index.items()):
        sub_nodes = tree.descendants(sub_root)
        if g <= delta:
            per_subtree.append([frozenset(sub_nodes)])
            continue
        prefix = subtree_levels(tree, sub_root, unit * (delta + 1))
        tail = sorted(sub_nodes - prefix, key=lambda v: (tree.depth(v), v))
        choices = [frozenset()]
        for extra in _closed_supersets(tree, prefix, tail, cap):
            choices.append(extra)
        per_subtree.append(choices)
    results = [frozenset({tree.root})]
    for choices in per_subtree:
        results = [s | c for s in results for c in choices]
        if len(results) > cap:
            raise SizeCapExceeded(f"more than {cap} admissible subtrees")
    results.sort(key=lambda s: (len(s), tuple(sorted(s))))
    return results


def _closed_supersets(tree: FiniteTree, prefix: frozenset[str], tail: list[str], cap: int):
    """prefix plus each ancestor-closed subset of the tail nodes."""
    out = []

    def walk(chosen: frozenset[str], rest: list[str]):
        if len(out) > cap:
            raise SizeCapExceeded(f"more than {cap} tail extensions")
        out.append(prefix | chosen)
        for k, v in enumerate(rest):
            par = tree.parent_of(v)
            if par in prefix or par in chosen:
                walk(chosen | {v}, rest[k + 1:])

    walk(frozenset(), tail)
    return out


# -- comparability -----------------------------------------------------------


def comparability_upset(tree: FiniteTree, node_set, t: str) -> frozenset[str]:
    """Members of node_set comparable to t in the ancestor order of the tree."""
    if t not in tree:
        raise UnknownElement(t)
    s = frozenset(node_set)
    anc = set(tree.ancestors(t))
    desc = tree.descendants(t)
    return frozenset(v for v in s if v in anc or v in desc)


def contracted_branch_poset(tree: FiniteTree, sub_root: str) -> Poset:
    """Ancestor order of the subtree with unary parents merged into their child.

    The merge removes the one-child chains that finite truncation introduces;
    it is the structural twin of deduplicating comparability upsets.
    """
    nodes = sorted(tree.descendants(sub_root))
    node_set = set(nodes)
    rep: dict[str, str] = {}
    for v in nodes:
        u = v
        while True:
            p = tree.parent_of(u)
            if p is not None and p in node_set and len(tree.children(p)) == 1:
                u = p
            else:
                break
        rep[v] = u
    classes = sorted(set(rep[v] for v in nodes))
    pairs = []
    for a in classes:
        for b in classes:
            if a != b and tree.leq(a, b):
                pairs.append((a, b))
    return build_poset(classes, pairs)


# -- serialization -----------------------------------------------------------


def tree_to_json(tree: FiniteTree) -> dict:
    return {
        "root": tree.root,
        "parent": dict(tree.parent),
        "labels": dict(tree.labels),
    }


def tree_from_json(data: dict) -> FiniteTree:
    parent = tuple((c, p) for c, p in data.get("parent", {}).items())
    nodes = tuple(sorted({data["root"], *dict(parent), *dict(parent).values()}))
    labels = tuple((k, v) for k, v in data.get("labels", {}).items())
    return FiniteTree(nodes, data["root"], parent, labels)


def tree_to_dot(tree: FiniteTree) -> str:
    """DOT export with the deepest branch (the spine) highlighted."""
    deepest = max(tree.nodes, key=lambda v: (tree.depth(v), v))
    spine = set(tree.ancestors(deepest))
    lines = ["digraph tree {", "  rankdir=TB;"]
    for v in tree.nodes:
        label = tree.label(v) or v
        style = ', style=bold, color="red"' if v in spine else ""
        lines.append(f'  "{v}" [label="{label}"{style}];')
    for child, par in tree.parent:
        style = ' [style=bold, color="red"]' if child in spine and par in spine else ""
        lines.append(f'  "{par}" -> "{child}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"
