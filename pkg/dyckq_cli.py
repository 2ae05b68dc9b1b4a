"""Command-line front end for dyckq.

Verbs: enumerate, bijection, gf, poset, lattice-check, verify-paper. Every
verb renders as text or JSON; posets also as Graphviz DOT, tilings as SVG.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Callable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

import dyckq_env as env
import golden_checks
import render
import report_service
from dyckq_engine import DyckqError, InvalidInput, configure_logging, logger
from labels import (
    LabeledTree,
    all_labels,
    build_poset,
    from_pre_order_word,
    gf_Z,
    gf_Z_recursive,
    parse_word,
    post_order_word,
    pre_order_word,
    seed_label,
    word_string,
)
from lgv_factor import YoungDiagram, factorization_report, gf_W, gf_Y
from paths_trees import (
    DyckPath,
    chord_pairs,
    enumerate_paths,
    iter_trees,
    max_path,
    mirror,
    parse_path,
    path_to_tree,
    tree_to_path,
)
from qpoly import QPoly
from rational import (
    ETA_RULES,
    all_mu,
    dual_family,
    enumerate_rational,
    eta_of_label,
    eta_poset,
    family,
    is_trivial_mu,
    label_of_sets_k1,
    sets_from_mu,
    sets_from_xi,
    stirling_from_sets,
    tau_1k_of,
    tau_1k_poset,
    tiling_from_columns,
    top_of_mu,
    tree_1k,
    vhh_of_tiling,
    vhh_poset,
    vhh_window,
)
from tau_lattice import TauSeq, lattice_report, label_of_tau, parse_tau, tau_of_label, tau_poset, tau_string
from tilings import (
    dts,
    enumerate_tilings,
    gf_Z_paths,
    hermite_history,
    hook_length_gf,
    tiling_from_json,
    tiling_to_dict,
    validation_errors,
)

FORMATS = ("text", "json", "dot", "svg")


@dataclass
class Outcome:
    """What a verb produced, before it is rendered in the requested format."""

    lines: List[str]
    payload: Any
    dot: Optional[Callable[[], Iterable[str]]] = None
    svg: Optional[Callable[[], Iterable[str]]] = None
    ok: bool = True
    message: str = ""


# ----------------------------------------------------------------------------
# Argument parsing helpers
# ----------------------------------------------------------------------------


def _ints(text: Optional[str], what: str) -> Tuple[int, ...]:
    if text is None:
        raise InvalidInput(f"{what} is required")
    try:
        return tuple(int(v) for v in text.replace(" ", "").split(",") if v != "")
    except ValueError as exc:
        raise InvalidInput(f"cannot parse {what} {text!r}") from exc


def _sets(text: str):
    """"2,3;4,5;1,6" -> family({2,3},{4,5},{1,6})."""

    return family(*(_ints(chunk, "set") for chunk in text.split(";")))


def _bottom(args) -> DyckPath:
    word = args.path if args.path is not None else args.tree
    if word is None:
        raise InvalidInput("--path (or --tree) is required")
    return parse_path(word.strip())


def _top(args, bottom: DyckPath) -> DyckPath:
    return parse_path(args.top) if args.top else max_path(bottom.size)


def _require(value, flag: str):
    if value is None:
        raise InvalidInput(f"{flag} is required")
    return value


def _label(args, direction: str) -> LabeledTree:
    tree = path_to_tree(_bottom(args))
    if args.label is None:
        return seed_label(tree, direction)
    return from_pre_order_word(tree, parse_word(args.label), direction)


def _qpoly_outcome(poly: QPoly, name: str) -> Outcome:
    return Outcome([render.qpoly_text(poly, name)], render.qpoly_to_dict(poly, name))


def _label_dict(label: LabeledTree) -> dict:
    return {
        "tree": tree_to_path(label.tree).steps,
        "direction": label.direction,
        "labels": list(label.labels),
        "pre_order_word": word_string(pre_order_word(label)),
        "post_order_word": word_string(post_order_word(label)),
    }


# ----------------------------------------------------------------------------
# enumerate
# ----------------------------------------------------------------------------


def cmd_enumerate(args) -> Outcome:
    if args.paths:
        n = _require(args.n, "--n")
        words = [p.steps for p in enumerate_paths(n)]
        lines = [f"{len(words)} paths of size {n}"] + [w if w else "(empty)" for w in words]
        return Outcome(lines, {"kind": "paths", "n": n, "items": words})
    if args.trees:
        n = _require(args.n, "--n")
        env.check_size(n)
        words = sorted(tree_to_path(t).steps for t in iter_trees(n))
        return Outcome([f"{len(words)} trees with {n} edges"] + words, {"kind": "trees", "n": n, "items": words})
    if args.labels:
        tree = path_to_tree(_bottom(args))
        labels = all_labels(tree, args.direction)
        words = [word_string(pre_order_word(label)) for label in labels]
        lines = [f"{len(words)} {args.direction} labels"] + words
        return Outcome(lines, {"kind": "labels", "direction": args.direction, "items": words})
    if args.tilings:
        bottom = _bottom(args)
        found = enumerate_tilings(bottom, _top(args, bottom))
        lines = [f"{len(found)} tilings"] + [str(t) for t in found]
        return Outcome(lines, {"kind": "tilings", "items": [tiling_to_dict(t) for t in found]})
    if args.rational:
        n, a, b = _require(args.n, "--n"), args.a, args.b
        paths, members = enumerate_rational(n, a, b)
        marked = {p.steps for p in members}
        lines = [f"{len(paths)} ({a},{b})-paths of size {n}, {len(members)} inflated from Dyck paths"]
        lines += [f"{p.steps}{' *' if p.steps in marked else ''}" for p in paths]
        payload = {"kind": "rational", "n": n, "a": a, "b": b,
                   "items": [p.steps for p in paths], "ud_type": sorted(marked)}
        return Outcome(lines, payload)
    if args.families:
        bottom, k = _bottom(args), args.k
        env.check_rational_size(bottom.size, 1, k)
        rows = []
        for mu in all_mu(bottom.size, k):
            if is_trivial_mu(bottom, mu, k):
                fam = sets_from_mu(mu, bottom.size, k)
                rows.append({"mu": list(mu), "sets": fam.render(), "stirling": str(stirling_from_sets(fam))})
        lines = [f"{len(rows)} trivial (1,{k})-tilings"]
        lines += [f"{tau_string(r['mu'])}  {r['sets']}  {r['stirling']}" for r in rows]
        return Outcome(lines, {"kind": "families", "k": k, "items": rows})
    raise InvalidInput("choose one of --paths, --trees, --labels, --tilings, --rational, --families")


# ----------------------------------------------------------------------------
# bijection
# ----------------------------------------------------------------------------


def cmd_bijection(args) -> Outcome:
    kind = args.kind
    if kind == "dts":
        label = _label(args, "increasing")
        tiling = dts(label)
        lines = [f"DTS({word_string(pre_order_word(label))}) = {tiling}"] + render.tiling_text(tiling)
        payload = {"label": _label_dict(label), "tiling": tiling_to_dict(tiling)}
        return Outcome(lines, payload, svg=lambda: render.tiling_to_svg(tiling, "DTS"))
    if kind == "hermite":
        source = Path(_require(args.tiling, "--tiling"))
        try:
            tiling = tiling_from_json(source.read_text(encoding="utf-8"))
        except OSError as exc:
            raise InvalidInput(f"cannot read {source}: {exc}") from exc
        errors = validation_errors(tiling)
        if errors:
            raise InvalidInput(f"not a cover-inclusive tiling: {errors[0]}")
        history, label = hermite_history(tiling)
        lines = [f"h = {list(history.h)}", f"decreasing label {word_string(pre_order_word(label))}"]
        payload = {"h": list(history.h), "label": _label_dict(label), "tiling": tiling_to_dict(tiling)}
        return Outcome(lines, payload, svg=lambda: render.tiling_to_svg(tiling, "Hermite history"))
    if kind == "tau":
        label = _label(args, "decreasing")
        tau = tau_of_label(label)
        return Outcome([f"τ({word_string(pre_order_word(label))}) = {tau}"],
                       {"label": _label_dict(label), "tau": list(tau.entries)})
    if kind == "tau-inverse":
        tree = path_to_tree(_bottom(args))
        tau = TauSeq(parse_tau(_require(args.seed_tau, "--seed-tau")), tree)
        label = label_of_tau(tau)
        return Outcome([f"τ^-1({tau}) = {word_string(pre_order_word(label))}"],
                       {"tau": list(tau.entries), "label": _label_dict(label)})
    if kind == "sets":
        bottom, k = _bottom(args), args.k
        mu = _ints(args.mu, "--mu")
        fam = sets_from_mu(mu, bottom.size, k)
        tau = tau_1k_of(fam, bottom, k)
        payload = {
            "mu": list(mu),
            "sets": fam.render(),
            "stirling": list(stirling_from_sets(fam).entries),
            "tau": list(tau.entries),
            "top": top_of_mu(bottom, mu, k),
        }
        lines = [f"{key} = {value}" for key, value in payload.items()]
        return Outcome(lines, payload)
    if kind == "dual":
        bottom, k = _bottom(args), args.k
        fam = _sets(_require(args.sets, "--sets"))
        dual = dual_family(fam, bottom, k)
        eta = eta_of_label(label_of_sets_k1(dual, mirror(bottom), k))
        payload = {"sets": fam.render(), "dual": dual.render(descending=True), "eta": list(eta)}
        return Outcome([f"{fam.render()} -> {dual.render(descending=True)}", f"η = {tau_string(eta)}"], payload)
    raise InvalidInput(f"unknown bijection {kind!r}")


# ----------------------------------------------------------------------------
# gf
# ----------------------------------------------------------------------------


def _hook_name(tree) -> str:
    hooks = sorted(pair.length for pair in chord_pairs(tree_to_path(tree)))
    return f"[{tree.n}]!" + "".join(f"/[{h}]" for h in hooks if h > 1)


def cmd_gf(args) -> Outcome:
    if args.hook:
        tree = path_to_tree(_bottom(args))
        return _qpoly_outcome(hook_length_gf(tree), _hook_name(tree))
    if args.paths:
        bottom = _bottom(args)
        top = _top(args, bottom)
        return _qpoly_outcome(gf_Z_paths(bottom, top), f"Z({bottom.steps}, {top.steps})")
    if args.young is not None:
        mu = YoungDiagram(_ints(args.young, "--young"))
        return _qpoly_outcome(gf_Y(mu, args.direction_y), f"Y_{args.direction_y}({mu})")
    label = _label(args, "decreasing")
    word = word_string(pre_order_word(label))
    if args.w:
        return _qpoly_outcome(gf_W(label), f"W({word})")
    if args.factorized:
        report = factorization_report(label)
        return Outcome(report.lines(), {**render.qpoly_to_dict(report.product, f"Z({word})"),
                                        "diagrams": [list(d.parts) for d in report.diagrams],
                                        "z": report.z.to_json(), "matches": report.matches})
    if args.recursive:
        return _qpoly_outcome(gf_Z_recursive(label), f"Z({word})")
    return _qpoly_outcome(gf_Z(label), f"Z({word})")


# ----------------------------------------------------------------------------
# poset / lattice-check
# ----------------------------------------------------------------------------


def _build_poset(args):
    """(graph, node label function, seed text) for the requested poset kind."""

    kind = args.kind
    bottom = _bottom(args)
    if kind == "labels":
        seed = _label(args, "decreasing")
        return build_poset(seed), lambda v: word_string(pre_order_word(v)), word_string(pre_order_word(seed))
    if kind == "tau":
        tree = path_to_tree(bottom)
        if args.seed_tau is not None:
            seed = TauSeq(parse_tau(args.seed_tau), tree)
        else:
            seed = tau_of_label(_label(args, "decreasing"))
        return tau_poset(seed), str, str(seed)
    if kind == "1k":
        k = args.k
        mu = _ints(args.mu, "--mu") if args.mu else tuple(0 for _ in range(bottom.size))
        if args.seed_tau is not None:
            seed = TauSeq(parse_tau(args.seed_tau), tree_1k(bottom, k))
        else:
            seed = tau_1k_of(sets_from_mu(mu, bottom.size, k), bottom, k)
        return tau_1k_poset(seed, bottom, k), str, str(seed)
    if kind == "k1":
        k = args.k
        xi = _ints(args.xi, "--xi") if args.xi else tuple(0 for _ in range(bottom.size))
        seed = eta_of_label(label_of_sets_k1(sets_from_xi(xi, bottom.size, k), bottom, k))
        return eta_poset(seed, bottom, k, args.eta_rule), tau_string, tau_string(seed)
    if kind == "vhh":
        seed = tiling_from_columns(bottom, args.a, args.b, _ints(args.columns, "--columns"))
        left, right = vhh_window(vhh_of_tiling(seed))
        return vhh_poset(seed), lambda t: vhh_of_tiling(t).compressed(left, right), str(seed)
    raise InvalidInput(f"unknown poset kind {kind!r}")


def cmd_poset(args) -> Outcome:
    graph, node_label, seed_text = _build_poset(args)
    name = f"{args.kind} poset from {seed_text}"
    return Outcome(
        render.poset_text(graph, node_label),
        render.poset_to_dict(graph, node_label, name),
        dot=lambda: render.poset_to_dot(graph, node_label, name),
    )


def cmd_lattice_check(args) -> Outcome:
    graph, node_label, seed_text = _build_poset(args)
    relabeled = nx.relabel_nodes(graph, {v: node_label(v) for v in graph}, copy=True)
    report = lattice_report(relabeled, seed_text)
    payload = asdict(report)
    lines = [f"{key}: {value}" for key, value in payload.items()]
    lines.append("OK" if report.ok else "NOT A GRADED LATTICE")
    return Outcome(lines, payload, ok=report.ok, message="" if report.ok else "poset is not a graded lattice")


# ----------------------------------------------------------------------------
# verify-paper
# ----------------------------------------------------------------------------


def cmd_verify(args) -> Outcome:
    if args.list_checks:
        names = golden_checks.list_checks()
        return Outcome(names, {"checks": names})
    results = golden_checks.run_checks(args.only or None)
    if not results:
        raise InvalidInput(f"no golden check matches {args.only}")
    failed = [r for r in results if not r.passed]
    lines = [r.line() for r in results]
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
    payload = {"passed": len(results) - len(failed), "total": len(results),
               "results": [asdict(r) for r in results]}
    message = "" if not failed else f"{len(failed)} golden checks failed"
    return Outcome(lines, payload, ok=not failed, message=message)


# ----------------------------------------------------------------------------
# Output
# ----------------------------------------------------------------------------


def emit(outcome: Outcome, fmt: str, verb: str) -> None:
    available = ["text", "json"] + (["dot"] if outcome.dot else []) + (["svg"] if outcome.svg else [])
    render.require_format(fmt, available, verb)
    if fmt == "text":
        for line in outcome.lines:
            print(line)
    elif fmt == "json":
        print(render.dump_json(outcome.payload))
    else:
        writer = outcome.dot if fmt == "dot" else outcome.svg
        sys.stdout.write("".join(writer()))


HANDLERS = {
    "enumerate": cmd_enumerate,
    "bijection": cmd_bijection,
    "gf": cmd_gf,
    "poset": cmd_poset,
    "lattice-check": cmd_lattice_check,
    "verify-paper": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="output format (default from settings)")
    common.add_argument("--max-size", type=int, default=None, help="override the size guards")
    common.add_argument("--output", default=None, help="also write a JSON report to this file")
    common.add_argument("--verbose", action="store_true", help="debug logging")

    shape = argparse.ArgumentParser(add_help=False)
    shape.add_argument("--path", default=None, help="Dyck word, e.g. UDUUDD")
    shape.add_argument("--tree", default=None, help="tree as its Dyck word")
    shape.add_argument("--top", default=None, help="upper path (default U^nD^n)")
    shape.add_argument("--label", default=None, help="pre-order label word, e.g. 1423 or 1,4,2,3")
    shape.add_argument("--n", type=int, default=None)
    shape.add_argument("--a", type=int, default=1)
    shape.add_argument("--b", type=int, default=1)
    shape.add_argument("--k", type=int, default=2)
    shape.add_argument("--seed-tau", default=None, help="seed τ-sequence, e.g. 024")

    parser = argparse.ArgumentParser(prog="dyckq", description="Dyck tilings, labeled trees and their posets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common, shape], help="list paths, trees, labels or tilings")
    what = p.add_mutually_exclusive_group(required=True)
    for flag in ("--paths", "--trees", "--labels", "--tilings", "--rational", "--families"):
        what.add_argument(flag, action="store_true")
    p.add_argument("--direction", choices=("increasing", "decreasing"), default="decreasing")

    p = sub.add_parser("bijection", parents=[common, shape], help="apply one bijection")
    p.add_argument("--kind", choices=("dts", "hermite", "tau", "tau-inverse", "sets", "dual"), required=True)
    p.add_argument("--tiling", default=None, help="tiling JSON file (hermite)")
    p.add_argument("--mu", default=None, help="comma-separated μ (sets)")
    p.add_argument("--sets", default=None, help="S-family, e.g. '2,3;4,5;1,6' (dual)")

    p = sub.add_parser("gf", parents=[common, shape], help="q-generating functions")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--hook", action="store_true", help="hook-length formula of the tree")
    which.add_argument("--paths", action="store_true", help="sum over paths between --path and --top")
    which.add_argument("--young", default=None, help="subdiagram polynomial of a partition, e.g. 2,1")
    which.add_argument("--w", action="store_true", help="non-trivial part W of Z")
    which.add_argument("--factorized", action="store_true", help="product of rectangle factors")
    which.add_argument("--recursive", action="store_true", help="Z by leaf-removal recursion")
    p.add_argument("--direction-y", choices=("up", "down"), default="up")

    for verb, text in (("poset", "build a poset"), ("lattice-check", "check the graded lattice property")):
        p = sub.add_parser(verb, parents=[common, shape], help=text)
        p.add_argument("--kind", choices=("labels", "tau", "1k", "k1", "vhh"), default="tau")
        p.add_argument("--mu", default=None, help="seed μ for 1k posets")
        p.add_argument("--xi", default=None, help="seed ξ for k1 posets")
        p.add_argument("--eta-rule", choices=ETA_RULES, default="transported", help="cover rule for k1 posets")
        p.add_argument("--columns", default=None, help="seed column counts for vhh posets")

    p = sub.add_parser("verify-paper", parents=[common], help="run the golden example catalogue")
    p.add_argument("--list-checks", action="store_true")
    p.add_argument("--only", action="append", default=None, help="check name or area (repeatable)")
    return parser


def _parameters(args) -> dict:
    skip = {"command", "format", "output", "verbose"}
    return {k: v for k, v in vars(args).items() if k not in skip and v not in (None, False)}


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging("DEBUG" if args.verbose else env.log_level())
    env.override_max_size(args.max_size)
    fmt = args.format or env.default_format()
    try:
        outcome = HANDLERS[args.command](args)
        emit(outcome, fmt, args.command)
        if args.output:
            status = "OK" if outcome.ok else "FAILED"
            report = report_service.build_report(
                args.command, _parameters(args), outcome.payload, status=status, message=outcome.message
            )
            report_service.write_report(report, Path(args.output))
    except DyckqError as exc:
        logger.debug("command %s failed", args.command, exc_info=True)
        print(f"dyckq: error: {exc}", file=sys.stderr)
        return 2
    if not outcome.ok:
        print(f"dyckq: {outcome.message}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
