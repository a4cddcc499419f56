"""Independent brute-force oracles the tests check the library against.

Everything here is deliberately naive: powerset filters, permutation scans,
and direct quantifier evaluation on small finite models.  None of it shares
code paths with the implementations it validates.
"""

from itertools import combinations, permutations, product as iproduct

from posetlab.order import Poset, build_poset


def brute_upsets(P: Poset) -> set[frozenset]:
    """Powerset filter for upward-closed subsets."""
    out = set()
    elems = list(P.elements)
    for r in range(len(elems) + 1):
        for combo in combinations(elems, r):
            s = frozenset(combo)
            if all(y in s for x in s for y in elems if P.leq(x, y)):
                out.add(s)
    return out


def brute_linear_successors(P: Poset, t: str) -> set[str]:
    """Direct evaluation of the linear-successor definition."""
    candidates = []
    for x in P.elements:
        if not P.lt(t, x):
            continue
        interval = [y for y in P.elements if P.leq(t, y) and P.leq(y, x)]
        if all(P.comparable(a, b) for a in interval for b in interval):
            candidates.append(x)
    return {
        x for x in candidates
        if not any(x != z and P.lt(x, z) for z in candidates)
    }


def brute_supremum(P: Poset, subset) -> str | None:
    ubs = [u for u in P.elements if all(P.leq(a, u) for a in subset)]
    least = [u for u in ubs if all(P.leq(u, v) for v in ubs)]
    return least[0] if least else None


def brute_transitive_reduction(elements, pairs) -> set[tuple[str, str]]:
    """Covers of the order generated by the pairs, by naive closure."""
    closure = set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(closure):
            for c, d in list(closure):
                if b == c and (a, d) not in closure:
                    closure.add((a, d))
                    changed = True
    return {
        (a, b)
        for a, b in closure
        if a != b and not any((a, c) in closure and (c, b) in closure
                              for c in elements if c not in (a, b))
    }


def brute_isomorphic(P: Poset, Q: Poset) -> bool:
    """Permutation scan restricted to crude invariant classes."""
    if len(P) != len(Q) or len(P.covers) != len(Q.covers):
        return False

    def sig(R, e):
        return (
            bin(R.up_mask(e)).count("1"),
            bin(R.down_mask(e)).count("1"),
        )

    p_elems = sorted(P.elements, key=lambda e: (sig(P, e), e))
    classes_p = {}
    for e in P.elements:
        classes_p.setdefault(sig(P, e), []).append(e)
    classes_q = {}
    for e in Q.elements:
        classes_q.setdefault(sig(Q, e), []).append(e)
    if {k: len(v) for k, v in classes_p.items()} != {
        k: len(v) for k, v in classes_q.items()
    }:
        return False
    keys = sorted(classes_p)
    pools = [permutations(classes_q[k]) for k in keys]
    flat_p = [e for k in keys for e in classes_p[k]]
    for choice in iproduct(*pools):
        mapping = {}
        for k_idx, k in enumerate(keys):
            for e, f in zip(classes_p[k], choice[k_idx]):
                mapping[e] = f
        if all(
            P.leq(a, b) == Q.leq(mapping[a], mapping[b])
            for a in flat_p
            for b in flat_p
        ):
            return True
    return False


def brute_product_decomposition(P: Poset, d: int, e: int):
    """Scan all bijections of P onto a d-by-e grid for a product structure.

    Returns (row_order, col_order) as leq dicts when a decomposition exists.
    """
    cells = [(i, j) for i in range(d) for j in range(e)]
    elems = list(P.elements)
    for perm in permutations(elems):
        g = dict(zip(cells, perm))
        row_leq = {
            (i, i2): P.leq(g[(i, 0)], g[(i2, 0)]) for i in range(d) for i2 in range(d)
        }
        col_leq = {
            (j, j2): P.leq(g[(0, j)], g[(0, j2)]) for j in range(e) for j2 in range(e)
        }
        ok = True
        for (i, j), x in g.items():
            for (i2, j2), y in g.items():
                if P.leq(x, y) != (row_leq[(i, i2)] and col_leq[(j, j2)]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return row_leq, col_leq
    return None


def brute_irreducible(P: Poset) -> bool:
    """Grid-bijection scan over every cardinality split; sizes <= 8 only."""
    n = len(P)
    for d in range(2, n):
        if d * d > n:
            break
        if n % d:
            continue
        if brute_product_decomposition(P, d, n // d) is not None:
            return False
    return True


# -- finite-model fiber preorder ------------------------------------------------


def all_points(tree, nodes, colors):
    """Every branch point over the given nodes and concrete colors."""
    pairs = [(n, c) for n in nodes for c in colors]
    points = [frozenset()]
    points += [frozenset({p}) for p in pairs]
    for i, p in enumerate(pairs):
        for q in pairs[i + 1:]:
            if tree.comparable(p[0], q[0]):
                points.append(frozenset({p, q}))
    return points


def restrict(x, sub, subcolors):
    return frozenset((n, c) for n, c in x if n in sub and c in subcolors)


def brute_fiber_leq(tree, sub, subcolors, big_colors, x, xp, max_excl):
    """Direct quantifier evaluation of the fiber preorder on a finite model.

    Neighborhood exclusion sets range over subsets of size <= max_excl; the
    model is faithful to the unbounded setting when max_excl is smaller than
    the number of colors available per node.
    """
    space = all_points(tree, tree.nodes, big_colors)
    all_pairs = [(n, c) for n in tree.nodes for c in big_colors]

    def image(base_point, excl):
        excl = frozenset(excl)
        out = set()
        for z in space:
            if base_point <= z and not (z & excl):
                out.add(restrict(z, sub, subcolors))
        return out

    def excl_sets(base_point):
        avail = [p for p in all_pairs if p not in base_point]
        for r in range(max_excl + 1):
            for combo in combinations(avail, r):
                yield combo

    for F in excl_sets(x):
        img_x = image(x, F)
        if not any(image(xp, F2) <= img_x for F2 in excl_sets(xp)):
            return False
    return True
