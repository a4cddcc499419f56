"""Exact-rational measures on finite posets and the dominance orders on them.

The implemented order is dominance over every upward-closed set; dominance
over principal upsets only is the companion necessary condition.  Everything
is exact Fraction arithmetic: no floats ever enter an order decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm

from . import kernels
from .errors import (
    CarrierMismatch,
    InvalidWeights,
    NotAbove,
    NotAChain,
    NotASubtree,
    UnknownElement,
)
from .order import (
    BoundedPoset,
    Poset,
    adjoin_bounds,
    are_isomorphic,
    build_poset,
    immediate_successors,
    supremum,
    upset_masks,
)
from .trees import FiniteTree, comparability_upset, contracted_branch_poset, forest_indices


@dataclass(frozen=True)
class RationalMeasure:
    """Finitely supported measure with positive rational masses summing to 1."""

    carrier: Poset
    mass: tuple[tuple[str, Fraction], ...]

    def __post_init__(self):
        total = Fraction(0)
        seen = set()
        for elt, q in self.mass:
            if elt not in self.carrier:
                raise UnknownElement(elt)
            if elt in seen:
                raise ValueError(f"duplicate mass entry for {elt}")
            seen.add(elt)
            if q <= 0:
                raise ValueError(f"mass at {elt} must be positive")
            total += q
        if total != 1:
            raise ValueError(f"total mass is {total}, not 1")
        object.__setattr__(self, "mass", tuple(sorted(self.mass)))

    def __call__(self, elt: str) -> Fraction:
        return dict(self.mass).get(elt, Fraction(0))

    def support(self) -> tuple[str, ...]:
        return tuple(e for e, _ in self.mass)

    def mass_of_set(self, subset) -> Fraction:
        members = set(subset)
        return sum((q for e, q in self.mass if e in members), Fraction(0))

    def scaled(self) -> tuple[list[int], int]:
        """Integer weights per carrier element over one common denominator."""
        den = lcm(*(q.denominator for _, q in self.mass))
        weights = [0] * len(self.carrier.elements)
        for e, q in self.mass:
            weights[self.carrier.index(e)] = int(q * den)
        return weights, den


def measure(carrier: Poset, masses) -> RationalMeasure:
    items = []
    for elt, q in masses.items() if isinstance(masses, dict) else masses:
        q = Fraction(q)
        if q:
            items.append((elt, q))
    return RationalMeasure(carrier, tuple(items))


def dirac(carrier: Poset, t: str) -> RationalMeasure:
    """The measure with all mass on t."""
    return RationalMeasure(carrier, ((t, Fraction(1)),))


def _require_same_carrier(mu: RationalMeasure, nu: RationalMeasure):
    if not mu.carrier.same_carrier(nu.carrier):
        raise CarrierMismatch("measures live on different carriers")


def _upset_sums(mu: RationalMeasure) -> tuple[list[int], int]:
    key = ("upset_sums", mu.mass)
    P = mu.carrier
    cached = P._memo.get(key)
    if cached is None:
        weights, den = mu.scaled()
        sums = kernels.sums_over_masks(list(upset_masks(P)), weights)
        cached = (sums, den)
        P._memo[key] = cached
    return cached


def leq_on_upsets(mu: RationalMeasure, nu: RationalMeasure,
                  witness: bool = False):
    """mu <= nu iff mu(A) <= nu(A) for every upward-closed A."""
    _require_same_carrier(mu, nu)
    sums_a, den_a = _upset_sums(mu)
    sums_b, den_b = _upset_sums(nu)
    if kernels.all_sums_leq(sums_a, den_a, sums_b, den_b):
        return (True, None) if witness else True
    if not witness:
        return False
    masks = upset_masks(mu.carrier)
    for mask, a, b in zip(masks, sums_a, sums_b):
        if a * den_b > b * den_a:
            return False, mu.carrier.mask_to_set(mask)
    raise AssertionError("unreachable")


def leq_on_principal(mu: RationalMeasure, nu: RationalMeasure,
                     witness: bool = False):
    """mu <= nu on every principal upset {s : s >= t}."""
    _require_same_carrier(mu, nu)
    for t in mu.carrier.elements:
        up = mu.carrier.up_set(t)
        if mu.mass_of_set(up) > nu.mass_of_set(up):
            return (False, up) if witness else False
    return (True, None) if witness else True


def enumerate_measures(P: Poset, max_support: int = 4, max_denominator: int = 8,
                       support_pool=None):
    """Deterministic list of every measure with bounded support and denominator.

    Each measure appears once, in reduced form; ordering is by denominator,
    then support tuple, then mass numerators.
    """
    pool = tuple(support_pool) if support_pool is not None else P.elements
    out = []
    for den in range(1, max_denominator + 1):
        for k in range(1, min(max_support, len(pool), den) + 1):
            for support in combinations(pool, k):
                for parts in _compositions(den, k):
                    g = 0
                    for p in parts:
                        g = _gcd(g, p)
                    if _gcd(g, den) != 1:
                        continue
                    out.append(
                        RationalMeasure(
                            P,
                            tuple(
                                (e, Fraction(p, den))
                                for e, p in zip(support, parts)
                            ),
                        )
                    )
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _compositions(total: int, k: int):
    """Ordered k-tuples of positive ints summing to total, lexicographic."""
    if k == 1:
        yield (total,)
        return
    for first in range(1, total - k + 2):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


# -- comparability family ----------------------------------------------------


@dataclass(frozen=True)
class ComparabilityFamily:
    """Deduplicated comparability upsets of a subtree, by reverse inclusion.

    Carries the bounded poset (fresh bottom and top around the family), one
    representative tree node per class, and the underlying node sets.
    """

    bounded: BoundedPoset
    sets: tuple[tuple[str, tuple[str, ...]], ...]
    reps: tuple[tuple[str, str], ...]
    tree: FiniteTree
    subtree: tuple[str, ...]

    def carrier(self) -> Poset:
        return self.bounded.poset

    def class_set(self, class_id: str) -> frozenset[str]:
        return frozenset(dict(self.sets)[class_id])

    def class_of_node(self, t: str) -> str:
        target = comparability_upset(self.tree, self.subtree, t)
        for cid, nodes in self.sets:
            if frozenset(nodes) == target:
                return cid
        raise UnknownElement(t)

    def root_class(self) -> str:
        return self.class_of_node(self.tree.root)


def comparability_family(tree: FiniteTree, subtree_nodes) -> ComparabilityFamily:
    """Family of comparability upsets over all tree nodes, bounds adjoined.

    Classes are named r.<node> after their lexicographically least
    representative; the order is reverse inclusion of the underlying sets.
    """
    sub = tuple(sorted(frozenset(subtree_nodes)))
    if not tree.is_subtree(sub):
        raise NotASubtree("subtree must be ancestor-closed and contain the root")
    by_set: dict[frozenset[str], str] = {}
    for t in tree.nodes:
        r = comparability_upset(tree, sub, t)
        if r not in by_set or t < by_set[r]:
            by_set[r] = t
    classes = {f"r.{rep}": nodes for nodes, rep in by_set.items()}
    pairs = []
    for a, na in classes.items():
        for b, nb in classes.items():
            if a != b and na > nb:  # reverse inclusion: bigger set is lower
                pairs.append((a, b))
    labels = {
        cid: "{" + ",".join(sorted(nodes)) + "}" for cid, nodes in classes.items()
    }
    inner = build_poset(classes, pairs, labels)
    bounded = adjoin_bounds(inner)
    sets = tuple(sorted((cid, tuple(sorted(nodes))) for cid, nodes in classes.items()))
    reps = tuple(sorted((f"r.{rep}", rep) for rep in by_set.values()))
    return ComparabilityFamily(bounded, sets, reps, tree, sub)


# -- structure report --------------------------------------------------------


@dataclass(frozen=True)
class ClauseResult:
    name: str
    passed: bool
    degenerate: bool
    detail: str


@dataclass(frozen=True)
class StructureReport:
    clauses: tuple[ClauseResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.clauses)


def structure_report(fam: ComparabilityFamily, indices, delta: int,
                     unit: int) -> StructureReport:
    """Check the four structural facts of the family over a spine forest.

    1. the root class is the minimum of the inner family;
    2. its immediate successors are exactly the subtree-root classes (reported
       degenerate when a subtree-root class collapses onto the root class,
       which happens whenever the forest root has a single included child);
    3. for each index g <= delta, the classes above the g-class form a copy of
       the boundary-contracted g-subtree, possibly with one extra top;
    4. for each index g > delta present, some discrete walk with
       unit*(delta+1) elements passes through the g-class.
    """
    from .walks import exists_walk_through  # local import to avoid a cycle

    tree, sub = fam.tree, set(fam.subtree)
    inner = fam.bounded.inner
    clauses = []

    root_class = fam.root_class()
    clauses.append(
        ClauseResult(
            "minimum",
            inner.minimum() == root_class,
            False,
            f"inner minimum is {inner.minimum()}, root class is {root_class}",
        )
    )

    by_index = forest_indices(tree)
    present = {g: node for g, node in by_index.items() if node in sub}
    gamma_classes = {g: fam.class_of_node(node) for g, node in present.items()}
    collapsed = {g for g, cid in gamma_classes.items() if cid == root_class}
    imsuc_root = immediate_successors(inner, root_class)
    expected = frozenset(cid for g, cid in gamma_classes.items() if g not in collapsed)
    if collapsed:
        detail = (
            f"degenerate: classes for {sorted(collapsed)} coincide with the root "
            f"class (single included child); successors found: {sorted(imsuc_root)}"
        )
        clauses.append(ClauseResult("root-successors", True, True, detail))
    else:
        ok = imsuc_root == expected
        clauses.append(
            ClauseResult(
                "root-successors",
                ok,
                False,
                f"found {sorted(imsuc_root)}, expected {sorted(expected)}",
            )
        )

    for g in sorted(present):
        if g > delta:
            continue
        gcls = gamma_classes[g]
        region = sorted(inner.mask_to_set(inner.up_mask(gcls)))
        sub_poset = _induced_poset(inner, region)
        expected_tree = contracted_branch_poset(tree, present[g])
        ok, _ = are_isomorphic(sub_poset, expected_tree, cap=max(64, len(sub_poset)))
        variant = "plain"
        if not ok:
            ok, _ = are_isomorphic(
                sub_poset,
                adjoin_top(expected_tree),
                cap=max(64, len(sub_poset) + 1),
            )
            variant = "with top"
        detail = (
            f"classes above the index-{g} class match the contracted subtree ({variant})"
            if ok
            else f"classes above the index-{g} class match no contracted-subtree variant"
        )
        clauses.append(ClauseResult(f"branch-copy[{g}]", ok, False, detail))

    length = unit * (delta + 1)
    for g in sorted(present):
        if g <= delta:
            continue
        gcls = gamma_classes[g]
        found = exists_walk_through(fam.carrier(), length, gcls)
        clauses.append(
            ClauseResult(
                f"long-walk[{g}]",
                found is not None,
                False,
                f"walk of {length} elements through {gcls}: "
                + (" -> ".join(found) if found else "none"),
            )
        )
    return StructureReport(tuple(clauses))


def _induced_poset(P: Poset, subset) -> Poset:
    pairs = [(a, b) for a in subset for b in subset if a != b and P.leq(a, b)]
    return build_poset(subset, pairs)


def adjoin_top(P: Poset) -> Poset:
    top = "+top"
    while top in P.elements:
        top = "_" + top
    return build_poset(
        list(P.elements) + [top],
        list(P.covers) + [(m, top) for m in P.maximal_elements()],
    )


# -- linear-successor certification (Fact 1 machinery) ------------------------


@dataclass(frozen=True)
class LinearSuccessorVerdict:
    """Outcome of certifying y as a linear successor of the Dirac at t.

    Exactly one of `successor`, `incomparable_pair`, `dominating_cover` is
    set: the Dirac at an immediate successor, an incomparable witness pair
    below y, or the cover Dirac strictly above a non-maximal chain point.
    """

    is_linear_successor: bool
    successor: str | None = None
    incomparable_pair: tuple[RationalMeasure, RationalMeasure] | None = None
    dominating_cover: tuple[str, Fraction] | None = None


def certify_linear_successor(P: Poset, t: str, y: RationalMeasure) -> LinearSuccessorVerdict:
    """Decide whether y is a linear successor of the Dirac at t.

    The yes-instances are the Diracs at immediate successors of t.  When y is
    strictly above the Dirac at t but not of that form, the verdict carries
    either an incomparable pair below y (so the interval up to y is not a
    chain) or the cover Dirac above y (so y is not maximal).  Both witnesses
    are re-verified internally before being returned.
    """
    base = dirac(P, t)
    if y.mass == base.mass or not leq_on_upsets(base, y):
        raise NotAbove(f"measure is not strictly above the Dirac at {t}")
    support = y.support()
    up_strict = P.up_set(t) - {t}
    for s in support:
        if s != t and s not in up_strict:
            raise AssertionError("measure above a Dirac must sit on its upset")
    covers = immediate_successors(P, t)
    extras = [s for s in support if s != t]
    if len(extras) == 1 and y(extras[0]) == 1 and extras[0] in covers:
        return LinearSuccessorVerdict(True, successor=extras[0])
    non_covers = sorted(s for s in extras if s not in covers)
    if non_covers:
        p = non_covers[0]
        lam = y(p)
        between = sorted(x for x in P.elements if P.lt(t, x) and P.lt(x, p))
        p2 = between[0]
        w1 = measure(P, {p: lam / 2, t: 1 - lam / 2})
        w2 = measure(P, {p2: lam, t: 1 - lam}) if lam < 1 else dirac(P, p2)
        _verify_witness_pair(y, w1, w2)
        return LinearSuccessorVerdict(False, incomparable_pair=(w1, w2))
    if len(extras) >= 2:
        s1, s2 = sorted(extras)[:2]
        m1, m2 = y(s1), y(s2)
        w1 = measure(P, {s1: m1, t: 1 - m1})
        w2 = measure(P, {s2: m2, t: 1 - m2})
        _verify_witness_pair(y, w1, w2)
        return LinearSuccessorVerdict(False, incomparable_pair=(w1, w2))
    # y sits on {t, s} for one cover s with y(s) < 1: below the cover Dirac.
    s = extras[0]
    return LinearSuccessorVerdict(False, dominating_cover=(s, y(s)))


def _verify_witness_pair(y, w1, w2):
    if not (leq_on_upsets(w1, y) and leq_on_upsets(w2, y)):
        raise AssertionError("witness is not below the candidate")
    if leq_on_principal(w1, w2) or leq_on_principal(w2, w1):
        raise AssertionError("witnesses are comparable")


def interval_chain_check(P: Poset, t: str, s: str, lam: Fraction,
                         max_denominator: int = 6) -> tuple[bool, RationalMeasure | None]:
    """Bounded scan confirming the interval from the Dirac at t up to the
    blend lam*dirac(s) + (1-lam)*dirac(t) is exactly the smaller blends.

    Samples all measures supported on {t, s} plus two further elements.
    Returns (True, None) or (False, offending measure).
    """
    if s not in immediate_successors(P, t):
        raise ValueError(f"{s} is not an immediate successor of {t}")
    lam = Fraction(lam)
    base = dirac(P, t)
    target = measure(P, {s: lam, t: 1 - lam})
    others = [e for e in P.elements if e not in (t, s)]
    pools = [(t, s)] + [(t, s) + extra for extra in combinations(others, min(2, len(others)))]
    seen = set()
    for pool in pools:
        for z in enumerate_measures(P, max_support=4, max_denominator=max_denominator,
                                    support_pool=pool):
            if z.mass in seen:
                continue
            seen.add(z.mass)
            in_interval = (
                z.mass != base.mass
                and leq_on_upsets(base, z)
                and leq_on_upsets(z, target)
            )
            is_blend = (
                set(z.support()) <= {t, s}
                and z(s) <= lam
                and z(s) > 0
            )
            if in_interval != is_blend:
                return False, z
    return True, None


# -- Dirac suprema (Fact 2 machinery) -----------------------------------------


@dataclass(frozen=True)
class DiracSupremumReport:
    """Least-upper-bound certificate for a chain of Diracs.

    `refutations` exercises the converse direction: for each sampled upper
    bound with mass off the supremum, a Dirac upper bound it fails to sit
    below, recorded as (measure, off-supremum element, witness element).
    """

    sup: str
    certified: bool
    upper_bounds_checked: int
    refutations: tuple[tuple[RationalMeasure, str, str], ...]


def dirac_supremum_report(P: Poset, chain, max_denominator: int = 6,
                          max_support: int = 3) -> DiracSupremumReport:
    chain = list(chain)
    if not chain:
        raise NotAChain("empty chain")
    for a, b in zip(chain, chain[1:]):
        if not P.lt(a, b):
            raise NotAChain(f"{a} -> {b} is not strictly increasing")
    sup = supremum(P, chain)
    if sup is None:
        raise AssertionError("finite chains always have their last element as supremum")
    upper = sorted(P.up_set(sup))
    sample = enumerate_measures(P, max_support=max_support, max_denominator=max_denominator)
    for u, v in combinations(upper, 2):
        if not P.comparable(u, v):
            sample.append(measure(P, {u: Fraction(1, 2), v: Fraction(1, 2)}))
    diracs = [dirac(P, c) for c in chain]
    sup_dirac = dirac(P, sup)
    certified = True
    refutations = []
    checked = 0
    seen = set()
    for x in sample:
        if x.mass in seen:
            continue
        seen.add(x.mass)
        if not all(leq_on_upsets(d, x) for d in diracs):
            continue
        checked += 1
        if x.mass_of_set(upper) != 1:
            raise AssertionError("upper bounds concentrate on the upper set")
        if not leq_on_upsets(sup_dirac, x):
            certified = False
        off = [e for e in x.support() if e != sup]
        if off:
            u = off[0]
            for v in upper:
                if not P.leq(u, v):
                    witness = dirac(P, v)
                    if all(leq_on_upsets(d, witness) for d in diracs) and not leq_on_upsets(
                        x, witness
                    ):
                        refutations.append((x, u, v))
                    break
    return DiracSupremumReport(sup, certified, checked, tuple(refutations))


# -- fiber classification ------------------------------------------------------


@dataclass(frozen=True)
class FiberFactor:
    kind: str  # trivial | interval | big
    weight: Fraction
    family: ComparabilityFamily | None = None


@dataclass(frozen=True)
class FiberTypeDescriptor:
    factors: tuple[FiberFactor, ...]


def classify_fiber(support, tree: FiniteTree, subtree_nodes) -> FiberTypeDescriptor:
    """Factor a measure on the quotient space into irreducible fiber types.

    Each support point contributes one factor: doubletons are trivial,
    singletons contribute the interval surrogate, and the empty point
    contributes the big fiber over the comparability family.
    """
    factors = []
    total = Fraction(0)
    for point, weight in support:
        weight = Fraction(weight)
        if weight <= 0:
            raise InvalidWeights(f"weight {weight} is not positive")
        total += weight
        size = len(point.pairs)
        if size == 2:
            factors.append(FiberFactor("trivial", weight))
        elif size == 1:
            factors.append(FiberFactor("interval", weight))
        else:
            fam = comparability_family(tree, subtree_nodes)
            factors.append(FiberFactor("big", weight, fam))
    if total != 1 or not factors:
        raise InvalidWeights(f"weights sum to {total}, need exactly 1")
    return FiberTypeDescriptor(tuple(factors))


# -- irreducibility ingredients ------------------------------------------------


@dataclass(frozen=True)
class IrreducibilityReport:
    chain_below_second: bool
    everything_above_blend: bool
    violations: tuple[RationalMeasure, ...]

    @property
    def all_passed(self) -> bool:
        return self.chain_below_second and self.everything_above_blend


def irreducibility_report(P: Poset, bottom: str | None = None,
                          second: str | None = None, max_denominator: int = 8,
                          max_support: int = 3) -> IrreducibilityReport:
    """Sample-verified ingredients of the irreducibility argument.

    (i) the measures below the Dirac at the second element are exactly the
    blends of that Dirac with the bottom Dirac; (ii) every sampled
    non-minimum measure dominates the blend with weight one minus its bottom
    mass.  The second element defaults to the unique cover of the minimum.
    """
    if bottom is None:
        bottom = P.minimum()
        if bottom is None:
            raise ValueError("carrier has no minimum")
    if second is None:
        covers = sorted(immediate_successors(P, bottom))
        if len(covers) != 1:
            raise ValueError("minimum must have a unique cover")
        second = covers[0]
    second_dirac = dirac(P, second)

    def blend(lam: Fraction) -> RationalMeasure:
        if lam == 0:
            return dirac(P, bottom)
        if lam == 1:
            return second_dirac
        return measure(P, {second: lam, bottom: 1 - lam})

    sample = enumerate_measures(P, max_support=max_support, max_denominator=max_denominator)
    violations = []
    chain_ok = True
    for v in sample:
        below = leq_on_upsets(v, second_dirac)
        is_blend = set(v.support()) <= {bottom, second}
        if below != is_blend:
            chain_ok = False
            violations.append(v)
    above_ok = True
    bottom_dirac = dirac(P, bottom)
    for v in sample:
        if v.mass == bottom_dirac.mass:
            continue
        lam = 1 - v(bottom)
        if not leq_on_upsets(blend(lam), v):
            above_ok = False
            violations.append(v)
    return IrreducibilityReport(chain_ok, above_ok, tuple(violations))


def family_irreducibility_report(fam: ComparabilityFamily, max_denominator: int = 8,
                                 max_support: int = 3) -> IrreducibilityReport:
    return irreducibility_report(
        fam.carrier(), fam.bounded.bottom, fam.root_class(),
        max_denominator, max_support,
    )


# -- serialization --------------------------------------------------------------


def measure_to_json(mu: RationalMeasure) -> dict:
    from .order import poset_to_json

    return {
        "carrier": poset_to_json(mu.carrier),
        "mass": {e: f"{q.numerator}/{q.denominator}" for e, q in mu.mass},
    }


def measure_from_json(data: dict) -> RationalMeasure:
    from .order import poset_from_json

    carrier = poset_from_json(data["carrier"])
    return measure(carrier, {e: Fraction(q) for e, q in data["mass"].items()})
