"""Command-line front end: constructions, checks, and the distinguishing
experiment, with deterministic JSON artifacts.

Exit codes: 0 success/verified, 1 property violation (witness emitted),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import compactum, measures, trees, walks
from .errors import PosetlabError
from .order import (
    adjoin_bounds,
    are_isomorphic,
    dumps_canonical,
    poset_from_json,
    poset_to_dot,
    poset_to_json,
)


def _write(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit(args, data) -> None:
    _write(args, dumps_canonical(data))


def _load_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _str_list(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def _load_tree(path: str) -> trees.FiniteTree:
    return trees.tree_from_json(_load_json(path))


def _subtree(args, tree: trees.FiniteTree):
    if getattr(args, "subtree_nodes", None):
        return _str_list(args.subtree_nodes)
    return list(tree.nodes)


# -- subcommand handlers -------------------------------------------------------


def _cmd_tree_build(args) -> int:
    if args.family:
        tree = trees.make_spine_forest(_int_list(args.family), args.m, args.profile)
    else:
        tree = trees.make_spine_tree(trees.SpineTreeParams(args.m, args.gamma, args.profile))
    if args.format == "dot":
        _write(args, trees.tree_to_dot(tree))
    else:
        _emit(args, trees.tree_to_json(tree))
    return 0


def _cmd_tree_check(args) -> int:
    tree = _load_tree(args.tree)
    stats = trees.tree_stats(tree)
    out = {
        "stats": {
            "height": stats.height,
            "max_branch_length": stats.max_branch_length,
            "ever_branching": stats.ever_branching,
            "level_sizes": list(stats.level_sizes),
            "node_count": len(tree),
        },
        "conventions": "height and branch length count edges; walk length counts elements",
    }
    status = 0
    if args.indices:
        report = trees.admissible_subtree_report(
            tree, _subtree(args, tree), _int_list(args.indices), args.delta, args.m
        )
        out["admissibility"] = {
            "admissible": report.admissible,
            "reasons": list(report.reasons),
        }
        status = 0 if report.admissible else 1
    _emit(args, out)
    return status


def _family_json(fam: measures.ComparabilityFamily) -> dict:
    return {
        "poset": poset_to_json(fam.carrier()),
        "bottom": fam.bounded.bottom,
        "top": fam.bounded.top,
        "classes": {cid: list(nodes) for cid, nodes in fam.sets},
        "representatives": dict(fam.reps),
    }


def _cmd_r_build(args) -> int:
    tree = _load_tree(args.tree)
    fam = measures.comparability_family(tree, _subtree(args, tree))
    if args.format == "dot":
        _write(args, poset_to_dot(fam.carrier()))
        return 0
    out = _family_json(fam)
    status = 0
    if args.indices:
        report = measures.structure_report(
            fam, _int_list(args.indices), args.delta, args.m
        )
        out["structure_report"] = {
            "all_passed": report.all_passed,
            "clauses": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "degenerate": c.degenerate,
                    "detail": c.detail,
                }
                for c in report.clauses
            ],
        }
        status = 0 if report.all_passed else 1
    _emit(args, out)
    return status


def _cmd_fiber_oracle(args) -> int:
    tree = _load_tree(args.tree)
    sub = _subtree(args, tree)
    big = compactum.ColorUniverse(tuple(_str_list(args.colors)), unbounded=True)
    small = compactum.ColorUniverse(tuple(_str_list(args.subcolors)), unbounded=True)
    target = compactum.point_from_json(json.loads(args.y)) if args.y else compactum.EMPTY_POINT
    oracle = compactum.fiber_order(tree, big, sub, small, target)
    out = {"oracle": poset_to_json(oracle)}
    status = 0
    if len(target) == 0:
        fam = measures.comparability_family(tree, sub)
        reference = fam.carrier()
        iso, _ = are_isomorphic(oracle, reference, cap=max(64, len(reference)))
        out["reference"] = poset_to_json(reference)
        out["isomorphic"] = iso
        status = 0 if iso else 1
    _emit(args, out)
    return status


def _cmd_measure_order(args) -> int:
    mu = measures.measure_from_json(_load_json(args.first))
    nu = measures.measure_from_json(_load_json(args.second))
    up, up_wit = measures.leq_on_upsets(mu, nu, witness=True)
    pr, pr_wit = measures.leq_on_principal(mu, nu, witness=True)
    _emit(
        args,
        {
            "leq_upset": up,
            "leq_upset_witness": sorted(up_wit) if up_wit else None,
            "leq_principal": pr,
            "leq_principal_witness": sorted(pr_wit) if pr_wit else None,
        },
    )
    return 0


def _chains_up_to(P, max_len: int):
    chains = [[e] for e in P.elements]
    for chain in chains:
        if len(chain) < max_len:
            for e in P.elements:
                if P.lt(chain[-1], e):
                    chains.append(chain + [e])
    return chains


def _cmd_facts_verify(args) -> int:
    if args.poset:
        carrier = poset_from_json(_load_json(args.poset))
        bottom = second = None
    else:
        tree = _load_tree(args.tree)
        fam = measures.comparability_family(tree, _subtree(args, tree))
        carrier = fam.carrier()
        bottom, second = fam.bounded.bottom, fam.root_class()
    violations = []
    checked = {"linear_successor": 0, "dirac_suprema": 0}
    for t in carrier.elements:
        covers = measures.immediate_successors(carrier, t)
        for s in carrier.elements:
            if s == t or not carrier.lt(t, s):
                continue
            verdict = measures.certify_linear_successor(carrier, t, measures.dirac(carrier, s))
            checked["linear_successor"] += 1
            if verdict.is_linear_successor != (s in covers):
                violations.append(f"linear-successor mismatch at ({t}, {s})")
    for chain in _chains_up_to(carrier, 3):
        report = measures.dirac_supremum_report(
            carrier, chain, max_denominator=args.denominator_bound
        )
        checked["dirac_suprema"] += 1
        if not report.certified:
            violations.append(f"supremum Dirac not least above chain {chain}")
    irr = None
    try:
        irr_report = measures.irreducibility_report(
            carrier, bottom, second, max_denominator=args.denominator_bound
        )
        irr = {
            "chain_below_second": irr_report.chain_below_second,
            "everything_above_blend": irr_report.everything_above_blend,
        }
        if not irr_report.all_passed:
            violations.append("irreducibility ingredient failed")
    except ValueError as exc:
        irr = {"skipped": str(exc)}
    _emit(
        args,
        {"checked": checked, "irreducibility": irr, "violations": violations},
    )
    return 0 if not violations else 1


def _cmd_walks_enum(args) -> int:
    P = poset_from_json(_load_json(args.poset))
    found = walks.enumerate_discrete_walks(P, args.length)
    _emit(args, {"length": args.length, "walks": [list(w.steps) for w in found]})
    return 0


def _cmd_distinguish(args) -> int:
    report = walks.distinguish(
        _int_list(args.A),
        _int_list(args.B),
        args.delta,
        args.m,
        profile=args.profile,
        subtree_cap=args.subtree_cap,
    )
    _emit(args, walks.distinguish_report_json(report))
    return 0 if report.as_expected else 1


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posetlab",
        description="Finite poset, spine-tree, fiber-order, and walk laboratory.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    tree = sub.add_parser("tree", help="tree constructions and checks")
    tree_sub = tree.add_subparsers(dest="subcommand", required=True)
    tb = tree_sub.add_parser("build", help="build a spine tree or family tree")
    tb.add_argument("--gamma", type=int, default=1, help="spine index")
    tb.add_argument("--m", type=int, required=True, help="finite unit")
    tb.add_argument("--profile", choices=trees.PROFILES, default="caterpillar")
    tb.add_argument("--family", help="comma-separated indices for a family tree")
    tb.add_argument("--format", choices=("json", "dot"), default="json")
    tb.add_argument("--out")
    tb.set_defaults(func=_cmd_tree_build)
    tc = tree_sub.add_parser("check", help="tree statistics and admissibility")
    tc.add_argument("--tree", required=True)
    tc.add_argument("--subtree-nodes", dest="subtree_nodes")
    tc.add_argument("--indices")
    tc.add_argument("--delta", type=int, default=0)
    tc.add_argument("--m", type=int, default=1)
    tc.add_argument("--out")
    tc.set_defaults(func=_cmd_tree_check)

    r = sub.add_parser("r", help="comparability family of a subtree pair")
    r_sub = r.add_subparsers(dest="subcommand", required=True)
    rb = r_sub.add_parser("build", help="build the bounded comparability family")
    rb.add_argument("--tree", required=True)
    rb.add_argument("--subtree-nodes", dest="subtree_nodes")
    rb.add_argument("--indices")
    rb.add_argument("--delta", type=int, default=0)
    rb.add_argument("--m", type=int, default=1)
    rb.add_argument("--format", choices=("json", "dot"), default="json")
    rb.add_argument("--out")
    rb.set_defaults(func=_cmd_r_build)

    fiber = sub.add_parser("fiber", help="fiber-order oracle")
    fiber_sub = fiber.add_subparsers(dest="subcommand", required=True)
    fo = fiber_sub.add_parser("oracle", help="fiber order vs family comparison")
    fo.add_argument("--tree", required=True)
    fo.add_argument("--subtree-nodes", dest="subtree_nodes")
    fo.add_argument("--colors", default="c0,c1")
    fo.add_argument("--subcolors", default="c0")
    fo.add_argument("--y", help="target point as JSON, default empty")
    fo.add_argument("--out")
    fo.set_defaults(func=_cmd_fiber_oracle)

    meas = sub.add_parser("measure", help="measure order queries")
    meas_sub = meas.add_subparsers(dest="subcommand", required=True)
    mo = meas_sub.add_parser("order", help="compare two measure files")
    mo.add_argument("first")
    mo.add_argument("second")
    mo.add_argument("--out")
    mo.set_defaults(func=_cmd_measure_order)

    facts = sub.add_parser("facts", help="certifier suites")
    facts_sub = facts.add_subparsers(dest="subcommand", required=True)
    fv = facts_sub.add_parser("verify", help="linear-successor, suprema, irreducibility")
    group = fv.add_mutually_exclusive_group(required=True)
    group.add_argument("--poset")
    group.add_argument("--tree")
    fv.add_argument("--subtree-nodes", dest="subtree_nodes")
    fv.add_argument("--denominator-bound", type=int, default=6)
    fv.add_argument("--out")
    fv.set_defaults(func=_cmd_facts_verify)

    we = sub.add_parser("walks", help="walk enumeration")
    we_sub = we.add_subparsers(dest="subcommand", required=True)
    wen = we_sub.add_parser("enum", help="all discrete walks of one length")
    wen.add_argument("--poset", required=True)
    wen.add_argument("--length", type=int, required=True)
    wen.add_argument("--out")
    wen.set_defaults(func=_cmd_walks_enum)

    dist = sub.add_parser("distinguish", help="two-sided walk experiment")
    dist.add_argument("--A", required=True, help="comma-separated indices")
    dist.add_argument("--B", required=True, help="comma-separated indices")
    dist.add_argument("--delta", type=int, required=True)
    dist.add_argument("--m", type=int, required=True)
    dist.add_argument("--profile", choices=trees.PROFILES, default="caterpillar")
    dist.add_argument("--subtree-cap", type=int, default=512)
    dist.add_argument("--out")
    dist.set_defaults(func=_cmd_distinguish)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PosetlabError as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
