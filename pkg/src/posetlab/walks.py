"""Discrete walks in finite posets, their Dirac lifts, and the two-sided
distinguishing experiment over spine forests.

Walk length always counts elements, not steps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CarrierMismatch,
    NoMinimum,
    NotADiscreteWalk,
    ParameterViolation,
    SizeCapExceeded,
)
from .measures import (
    ComparabilityFamily,
    RationalMeasure,
    certify_linear_successor,
    comparability_family,
    dirac,
)
from .order import Poset, immediate_successors
from .trees import enumerate_admissible_subtrees, make_spine_forest

DEFAULT_WALK_CAP = 200_000


@dataclass(frozen=True)
class Walk:
    """Strictly increasing sequence of distinct poset elements."""

    steps: tuple[str, ...]
    carrier: Poset

    def __post_init__(self):
        if not self.steps:
            raise ValueError("walks are nonempty")
        for a, b in zip(self.steps, self.steps[1:]):
            if not self.carrier.lt(a, b):
                raise ValueError(f"steps {a} -> {b} are not strictly increasing")

    def __len__(self) -> int:
        return len(self.steps)


def is_discrete_walk(P: Poset, seq) -> bool:
    """Starts at the minimum and advances by immediate successors."""
    seq = list(seq)
    start = P.minimum()
    if start is None:
        raise NoMinimum("discrete walks need a minimum element")
    if not seq or seq[0] != start:
        return False
    for a, b in zip(seq, seq[1:]):
        if b not in immediate_successors(P, a):
            return False
    return True


def _height_up(P: Poset) -> dict[str, int]:
    """Longest chain (in elements) starting at each element, going up."""
    memo: dict[str, int] = {}
    # elements with smaller upsets sit higher, so their memo entries exist first
    for e in sorted(P.elements, key=lambda x: bin(P.up_mask(x)).count("1")):
        succ = immediate_successors(P, e)
        memo[e] = 1 + max((memo[s] for s in succ), default=0)
    return memo


def enumerate_discrete_walks(P: Poset, length: int, cap: int = DEFAULT_WALK_CAP) -> list[Walk]:
    """All discrete walks with exactly `length` elements, in DFS id order."""
    if length < 1:
        raise ValueError("length must be at least 1")
    start = P.minimum()
    if start is None:
        raise NoMinimum("discrete walks need a minimum element")
    height = _height_up(P)
    out: list[Walk] = []

    def extend(prefix: list[str]) -> None:
        if len(prefix) == length:
            if len(out) >= cap:
                raise SizeCapExceeded(f"more than {cap} walks")
            out.append(Walk(tuple(prefix), P))
            return
        for s in sorted(immediate_successors(P, prefix[-1])):
            if height[s] >= length - len(prefix):
                prefix.append(s)
                extend(prefix)
                prefix.pop()

    if height[start] >= length:
        extend([start])
    return out


def exists_walk_through(P: Poset, length: int, element: str) -> tuple[str, ...] | None:
    """First discrete walk of the given length visiting `element`, if any."""
    start = P.minimum()
    if start is None:
        raise NoMinimum("discrete walks need a minimum element")
    height = _height_up(P)

    def extend(prefix: list[str], seen_target: bool) -> tuple[str, ...] | None:
        if len(prefix) == length:
            return tuple(prefix) if seen_target else None
        if not seen_target and not P.leq(prefix[-1], element):
            return None  # walks only ascend, so the target is out of reach
        for s in sorted(immediate_successors(P, prefix[-1])):
            if height[s] < length - len(prefix):
                continue
            prefix.append(s)
            got = extend(prefix, seen_target or s == element)
            prefix.pop()
            if got:
                return got
        return None

    if height[start] < length:
        return None
    return extend([start], start == element)


def strongly_intersects(w1: Walk, w2: Walk) -> bool:
    """Both walks have at least three elements and share their first three."""
    if not w1.carrier.same_carrier(w2.carrier):
        raise CarrierMismatch("walks live on different carriers")
    return len(w1) >= 3 and len(w2) >= 3 and w1.steps[:3] == w2.steps[:3]


@dataclass(frozen=True)
class LiftReport:
    measures: tuple[RationalMeasure, ...]
    certified_steps: tuple[tuple[str, str], ...]


def lift_walk(fam: ComparabilityFamily, walk: Walk) -> LiftReport:
    """Dirac lift of a discrete walk, each step certified as a linear successor.

    The lift starts at the Dirac of the minimum and every consecutive pair is
    certified by the linear-successor test, so the result is a linear walk in
    the measure order.
    """
    P = fam.carrier()
    if not walk.carrier.same_carrier(P):
        raise CarrierMismatch("walk does not live on the family carrier")
    if not is_discrete_walk(P, walk.steps):
        raise NotADiscreteWalk(" -> ".join(walk.steps))
    measures = [dirac(P, t) for t in walk.steps]
    certified = []
    for a, b in zip(walk.steps, walk.steps[1:]):
        verdict = certify_linear_successor(P, a, dirac(P, b))
        if not verdict.is_linear_successor or verdict.successor != b:
            raise AssertionError(f"step {a} -> {b} failed certification")
        certified.append((a, b))
    return LiftReport(tuple(measures), tuple(certified))


def certify_dirac_sequence(P: Poset, seq) -> bool:
    """Whether the Dirac sequence over seq passes the linear-walk certification.

    True iff the first Dirac sits at the minimum and every consecutive pair is
    a certified linear-successor step; by the meridian correspondence this
    holds exactly for discrete walks.
    """
    seq = list(seq)
    start = P.minimum()
    if start is None:
        raise NoMinimum("linear walks need a minimum element")
    if not seq or seq[0] != start:
        return False
    for a, b in zip(seq, seq[1:]):
        if a == b or not P.leq(a, b):
            return False
        verdict = certify_linear_successor(P, a, dirac(P, b))
        if not verdict.is_linear_successor:
            return False
    return True


# -- the distinguishing experiment --------------------------------------------


@dataclass(frozen=True)
class SubtreeVerdict:
    side: str
    subtree_index: int
    subtree_size: int
    n_short_walks: int
    n_long_walks: int
    vacuous: bool
    verdict: bool
    witness_walk: tuple[str, ...] | None


@dataclass(frozen=True)
class DistinguishReport:
    params: dict
    rows: tuple[SubtreeVerdict, ...]
    side_a_all_true: bool
    side_b_all_false: bool

    @property
    def as_expected(self) -> bool:
        return self.side_a_all_true and self.side_b_all_false


def distinguish(A, B, delta: int, unit: int, profile: str = "caterpillar",
                subtree_cap: int = 512, walk_cap: int = DEFAULT_WALK_CAP) -> DistinguishReport:
    """Two-sided walk experiment separating the forests over A and B.

    For each side, every admissible subtree S yields the bounded
    comparability family; the verdict per S is whether some walk of
    unit*delta elements strongly intersects no walk of unit*(delta+1)
    elements.  Expected: true throughout side A, false throughout side B.
    """
    A, B = sorted(set(A)), sorted(set(B))
    if delta not in A or delta in B:
        raise ParameterViolation("delta must lie in A and not in B")
    if unit < 6:
        raise ParameterViolation("unit must be at least 6 to keep lengths separated")
    l_short = unit * delta
    l_long = unit * (delta + 1)
    rows = []
    for side, indices in (("A", A), ("B", B)):
        tree = make_spine_forest(indices, unit, profile)
        subtrees = enumerate_admissible_subtrees(tree, indices, delta, unit, cap=subtree_cap)
        for k, sub in enumerate(subtrees):
            fam = comparability_family(tree, sub)
            P = fam.carrier()
            short = enumerate_discrete_walks(P, l_short, cap=walk_cap)
            long_walks = enumerate_discrete_walks(P, l_long, cap=walk_cap)
            long_prefixes = {w.steps[:3] for w in long_walks}
            witness = None
            for w in short:
                if w.steps[:3] not in long_prefixes:
                    witness = w.steps
                    break
            n_long = len(long_walks)
            rows.append(
                SubtreeVerdict(
                    side,
                    k,
                    len(sub),
                    len(short),
                    n_long,
                    vacuous=not short,
                    verdict=witness is not None,
                    witness_walk=witness,
                )
            )
    a_rows = [r for r in rows if r.side == "A"]
    b_rows = [r for r in rows if r.side == "B"]
    report = DistinguishReport(
        params={
            "A": A,
            "B": B,
            "delta": delta,
            "unit": unit,
            "profile": profile,
            "short_length": l_short,
            "long_length": l_long,
        },
        rows=tuple(rows),
        side_a_all_true=all(r.verdict for r in a_rows),
        side_b_all_false=not any(r.verdict for r in b_rows),
    )
    return report


def distinguish_report_json(report: DistinguishReport) -> dict:
    return {
        "params": report.params,
        "rows": [
            {
                "side": r.side,
                "subtree": r.subtree_index,
                "subtree_size": r.subtree_size,
                "L1": report.params["short_length"],
                "L2": report.params["long_length"],
                "n_L1_walks": r.n_short_walks,
                "n_L2_walks": r.n_long_walks,
                "vacuous": r.vacuous,
                "verdict": r.verdict,
                "witness_walk": list(r.witness_walk) if r.witness_walk else None,
            }
            for r in report.rows
        ],
        "aggregate": {
            "side_a_all_true": report.side_a_all_true,
            "side_b_all_false": report.side_b_all_false,
            "as_expected": report.as_expected,
        },
    }
