"""Fixed generator lists shared by the unit and acceptance suites."""

from posetlab.order import Poset, build_poset, product
from posetlab.trees import FiniteTree, SpineTreeParams, make_spine_forest, make_spine_tree


def chain(n: int) -> Poset:
    ids = [f"c{i}" for i in range(n)]
    return build_poset(ids, [(ids[i], ids[i + 1]) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return build_poset([f"a{i}" for i in range(n)], [])


def diamond() -> Poset:
    return build_poset(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def v_poset() -> Poset:
    return build_poset(["0", "a", "b"], [("0", "a"), ("0", "b")])


def wedge_poset() -> Poset:
    return build_poset(["a", "b", "1"], [("a", "1"), ("b", "1")])


def n_poset() -> Poset:
    return build_poset(["a", "b", "c", "d"], [("a", "c"), ("b", "c"), ("b", "d")])


def y_poset() -> Poset:
    return build_poset(["0", "1", "a", "b"], [("0", "1"), ("1", "a"), ("1", "b")])


def fence5() -> Poset:
    return build_poset(
        ["f0", "f1", "f2", "f3", "f4"],
        [("f0", "f1"), ("f2", "f1"), ("f2", "f3"), ("f4", "f3")],
    )


def broom5() -> Poset:
    return build_poset(
        ["0", "1", "x", "y", "z"],
        [("0", "1"), ("1", "x"), ("1", "y"), ("1", "z")],
    )


def poset_corpus_small() -> list[Poset]:
    """Every poset with at most 8 elements used by criteria 3-5."""
    out = [chain(n) for n in range(1, 9)]
    out += [antichain(2), antichain(3)]
    out += [v_poset(), wedge_poset(), diamond(), n_poset(), y_poset(), fence5(), broom5()]
    out.append(product(chain(2), chain(3)))          # 6-element grid
    out.append(product(chain(2), chain(4)))          # 8-element grid
    out.append(product(chain(2), product(chain(2), chain(2))))  # cube
    out.append(make_spine_tree(SpineTreeParams(2, 1)).as_poset())
    out.append(make_spine_tree(SpineTreeParams(2, 2)).as_poset())
    return out


def poset_corpus_12() -> list[tuple[Poset, str]]:
    """Posets up to 12 elements with how their irreducibility is known.

    Tags: 'chain' and 'tree' are irreducible by structure theorems,
    'product' instances were built as products, 'antichain' of composite
    size is a product of antichains, 'prime' has prime cardinality,
    'brute' is settled by the exhaustive grid oracle (size <= 8).
    """
    out: list[tuple[Poset, str]] = []
    for n in range(2, 13):
        tag = "prime" if n in (2, 3, 5, 7, 11) else "chain"
        out.append((chain(n), tag))
    out.append((antichain(12), "antichain"))
    out.append((diamond(), "product"))
    out.append((product(chain(2), chain(6)), "product"))
    out.append((product(chain(3), chain(4)), "product"))
    out.append((product(diamond(), chain(3)), "product"))
    out.append((product(antichain(2), antichain(6)), "antichain"))
    out.append((make_spine_tree(SpineTreeParams(3, 2)).as_poset(), "tree"))  # 12 nodes
    out.append((make_spine_tree(SpineTreeParams(2, 3)).as_poset(), "tree"))  # 12 nodes
    out.append((make_spine_forest([1, 2], 1).as_poset(), "tree"))            # 7 nodes
    out.append((v_poset(), "prime"))
    out.append((n_poset(), "brute"))
    out.append((y_poset(), "brute"))
    out.append((fence5(), "prime"))
    out.append((broom5(), "prime"))
    out.append((product(chain(2), chain(4)), "product"))
    return out


def tree_corpus_7() -> list[FiniteTree]:
    """Fixed list of rooted trees with at most 7 nodes for criteria 1-2."""
    def path(n):
        ids = [f"p{i}" for i in range(n)]
        return FiniteTree(tuple(ids), ids[0], tuple((ids[i], ids[i - 1]) for i in range(1, n)))

    star = FiniteTree(
        ("r", "x1", "x2", "x3", "x4"), "r",
        (("x1", "r"), ("x2", "r"), ("x3", "r"), ("x4", "r")),
    )
    vee = FiniteTree(("0", "a", "b"), "0", (("a", "0"), ("b", "0")))
    double_chain = FiniteTree(
        ("0", "a", "b", "c", "d"), "0",
        (("a", "0"), ("b", "a"), ("c", "0"), ("d", "c")),
    )
    broom = FiniteTree(
        ("0", "m", "u", "v", "w"), "0",
        (("m", "0"), ("u", "m"), ("v", "m"), ("w", "0")),
    )
    return [
        path(1),
        path(2),
        path(3),
        vee,
        star,
        double_chain,
        broom,
        make_spine_tree(SpineTreeParams(2, 1)),
        make_spine_tree(SpineTreeParams(1, 2)),
        make_spine_tree(SpineTreeParams(1, 1, "complete-binary")),
        make_spine_tree(SpineTreeParams(2, 1, "complete-binary")),
        make_spine_forest([1], 1),
        make_spine_forest([1, 2], 1),
        make_spine_forest([1], 2),
    ]
