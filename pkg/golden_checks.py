"""Catalogue of worked examples with known exact answers.

``verify-paper`` runs every check in declaration order and reports one line per
check. The fixture builders at the top are shared with the unit tests.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import networkx as nx

from dyckq_engine import DyckqError, PreconditionFailed, is_lattice, logger
from labels import (
    LabeledTree,
    build_poset,
    collapse_below,
    complement,
    covers,
    from_pre_order_word,
    gf_Z,
    gf_Z_recursive,
    inversion,
    is_312_avoiding,
    iter_decreasing,
    post_order_word,
    pre_order_word,
    word_string,
)
from lgv_factor import (
    YoungDiagram,
    ab_points,
    factorization_report,
    factorized_gf,
    gf_W,
    gf_Y,
    lgv_determinant,
    rectangle_division,
)
from paths_trees import DyckPath, enumerate_paths, iter_trees, parse_path, path_to_tree
from qpoly import QPoly, q_binomial, q_factorial, q_int
from rational import (
    block_eta_covers,
    dual_family,
    enumerate_rational,
    eta_cover_mismatches,
    eta_of_label,
    eta_poset,
    expand_D,
    family,
    label_of_eta,
    label_of_sets_k1,
    decompose_ab,
    decompose_mu,
    sets_from_mu,
    sets_from_xi,
    sets_of_label_k1,
    stirling_from_sets,
    tau_1k_of,
    tau_1k_poset,
    tiling_from_columns,
    tree_k1,
    upper_rational_covers,
    upper_tau_1k_covers,
    vhh_of_tiling,
    vhh_poset,
    vhh_window,
    weight_sum_check,
    wt_ab,
)
from tau_lattice import TauSeq, join, parse_tau, rank, tau_covers, tau_of_label, tau_poset, verify_lattice
from tilings import (
    DyckTile,
    DyckTiling,
    dts,
    gf_Z_paths,
    hermite_history,
    hook_length_gf,
    is_all_trivial,
    validate,
    weight,
)


class GoldenMismatch(DyckqError):
    pass


# ----------------------------------------------------------------------------
# Fixtures
# ----------------------------------------------------------------------------


def labeled(path: str, word: Sequence[int], direction: str = "decreasing") -> LabeledTree:
    return from_pre_order_word(path_to_tree(parse_path(path)), tuple(word), direction)


def hasse_seed() -> LabeledTree:
    """Leaf edge a beside b with children c, d; a=1, b=4, c=2, d=3."""

    return labeled("UDUUDUDD", (1, 4, 2, 3))


def rectangles_label() -> LabeledTree:
    return labeled("UUDDUDUD", (2, 1, 4, 3))


def peaks_then_hill_label() -> LabeledTree:
    return labeled("UDUDUUDD", (1, 3, 4, 2))


def five_edges_label() -> LabeledTree:
    return labeled("UDUDUDUDUD", (1, 2, 5, 3, 4))


def factor_example_label() -> LabeledTree:
    return labeled("UUDDUUDUDD", (4, 1, 5, 2, 3))


def factor_counterexample_label() -> LabeledTree:
    return labeled("UUDDUUDUDD", (2, 1, 5, 4, 3))


def factor_mismatch_label() -> LabeledTree:
    """Passes every factorization precondition yet the product misses one tiling."""

    return labeled("UDUUDUUDDD", (1, 5, 3, 4, 2))


def hermite_example_tiling() -> DyckTiling:
    return DyckTiling(
        parse_path("UDUDUUDDUD"),
        (DyckTile((2, 1), "UD"), DyckTile((5, 2), "UD"), DyckTile((4, 3)), DyckTile((8, 1))),
    )


def cover_inclusive_example() -> DyckTiling:
    return DyckTiling(
        parse_path("UDUDUUDUDDUUDD"),
        (
            DyckTile((2, 1), "UD"),
            DyckTile((5, 2), "UDUD"),
            DyckTile((4, 3)),
            DyckTile((7, 4)),
            DyckTile((10, 1)),
            DyckTile((11, 2)),
        ),
    )


def non_inclusive_example() -> DyckTiling:
    return DyckTiling(parse_path("UUDDUUDD"), (DyckTile((4, 1)), DyckTile((3, 2), "UD")))


def three_peaks() -> DyckPath:
    return parse_path("UDUDUD")


def two_posets_tau(text: str) -> TauSeq:
    return TauSeq(parse_tau(text), path_to_tree(three_peaks()))


def one_k_seed() -> TauSeq:
    return tau_1k_of(family((2, 3), (4, 5), (1, 6)), three_peaks(), 2)


def k_one_seed() -> tuple:
    q_family = sets_from_xi((3, 1, 0), 3, 2)
    return eta_of_label(label_of_sets_k1(q_family, three_peaks(), 2))


def two_three_seed():
    return tiling_from_columns(three_peaks(), 2, 3, (0, 0, 3, 1, 1, 1, 0, 0, 0))


def two_three_single_tile():
    return next(t for t in upper_rational_covers(two_three_seed()) if t.tiles)


VHH_HISTORIES = {
    "2111/1000", "1111/1000", "1111/0000", "0111/0000", "0011/0000", "0001/0000", "0000/0000",
    "2110/1000", "1011/1000", "1001/1000", "1000/1000", "1000/0000", "1011/0000", "1001/0000",
}


# ----------------------------------------------------------------------------
# Check plumbing
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class GoldenCheck:
    name: str
    area: str
    citation: str
    run: Callable[[], None]


@dataclass
class CheckResult:
    """One catalogue row; ``status`` is PASS, FAIL (wrong answer) or ERROR (unexpected exception)."""

    name: str
    area: str
    citation: str
    status: str
    detail: str = ""
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def line(self) -> str:
        suffix = f" ({self.detail})" if self.detail else ""
        return f"[{self.status}] {self.area}/{self.name}: {self.citation}{suffix}"


def expect(actual, expected, what: str) -> None:
    if actual != expected:
        raise GoldenMismatch(f"{what}: expected {expected}, got {actual}")


CHECKS: List[GoldenCheck] = []


def golden(area: str, citation: str):
    def register(fn: Callable[[], None]) -> Callable[[], None]:
        CHECKS.append(GoldenCheck(fn.__name__, area, citation, fn))
        return fn

    return register


# ----------------------------------------------------------------------------
# qpoly
# ----------------------------------------------------------------------------


@golden("qpoly", "q-integer [3]")
def q_integer_three():
    expect(q_int(3), QPoly((1, 1, 1)), "[3]")


@golden("qpoly", "[3][2] expansion")
def q_three_two():
    expect(q_int(2) * q_int(3), QPoly((1, 2, 2, 1)), "[2][3]")


@golden("qpoly", "(1+q+q^2)^2 expansion")
def q_three_squared():
    expect(q_int(3) ** 2, QPoly((1, 2, 3, 2, 1)), "[3]^2")


# ----------------------------------------------------------------------------
# paths and trees
# ----------------------------------------------------------------------------


@golden("paths", "UUDUDD is a size-3 path")
def path_parse():
    expect(parse_path("UUDUDD").size, 3, "size")


@golden("paths", "five paths of size 3")
def path_count_three():
    expect([p.steps for p in enumerate_paths(3)], ["UDUDUD", "UDUUDD", "UUDDUD", "UUDUDD", "UUUDDD"], "paths")


@golden("paths", "the empty path is the only path of size 0")
def path_count_zero():
    expect(enumerate_paths(0), [DyckPath("")], "paths")


# ----------------------------------------------------------------------------
# labels
# ----------------------------------------------------------------------------


@golden("labels", "words of the Hermite-history example read from the right")
def words_from_right():
    _, label = hermite_history(hermite_example_tiling())
    expect(word_string(post_order_word(label, from_right=True)), "51423", "post-order word")
    expect(word_string(pre_order_word(label, from_right=True)), "54123", "pre-order word")


@golden("labels", "inv(52431) = 2 and inv of the longest permutation is 0")
def inversion_values():
    expect(inversion((5, 2, 4, 3, 1)), 2, "inv(52431)")
    expect(inversion((5, 4, 3, 2, 1)), 0, "inv(54321)")


@golden("labels", "pre-order word 52413 on U2D2U2D2UD contains 312")
def contains_312():
    expect(is_312_avoiding(labeled("UUDDUUDDUD", (5, 2, 4, 1, 3))), False, "312-avoiding")


@golden("labels", "collapsing the five single edges into one chain gives 54321 and keeps 312-avoidance")
def collapse_chain():
    collapsed = collapse_below(five_edges_label(), 0)
    expect(pre_order_word(collapsed), (5, 4, 3, 2, 1), "chain word")
    expect(len(collapsed.tree.leaves()), 1, "leaves")
    expect(is_312_avoiding(collapsed), True, "312-avoiding")


@golden("labels", "labeled-tree Hasse diagram: 8 elements, 11 covers")
def hasse_example_poset():
    seed = hasse_seed()
    graph = build_poset(seed)
    expect((graph.number_of_nodes(), graph.number_of_edges()), (8, 11), "elements/covers")
    left, right = seed.with_labels((2, 4, 1, 3)), seed.with_labels((1, 4, 3, 2))
    expect((covers(seed, left), covers(seed, right)), (True, True), "seed covers")
    expect(nx.has_path(graph, left, right) or nx.has_path(graph, right, left), False, "second column comparable")
    expect(gf_Z(seed), QPoly((1, 2, 2, 2, 1)), "Z")
    expect(is_lattice(graph), False, "label poset is a lattice")


@golden("labels", "three single-edge trees: all six labels")
def three_peaks_poset():
    graph = build_poset(labeled("UDUDUD", (1, 2, 3)))
    expect((graph.number_of_nodes(), graph.number_of_edges()), (6, 8), "elements/covers")


@golden("labels", "Z of the first worked tiling is (1+q+q^2)^2")
def z_rectangles():
    expect(gf_Z(rectangles_label()), q_int(3) ** 2, "Z")
    expect(gf_Z_recursive(rectangles_label()), q_int(3) ** 2, "recursive Z")


@golden("labels", "Z of the second worked tiling is (1+q)(1+2q+q^2+q^3)")
def z_peaks_then_hill():
    expect(gf_Z(peaks_then_hill_label()), q_int(2) * QPoly((1, 2, 1, 1)), "Z")


# ----------------------------------------------------------------------------
# tilings
# ----------------------------------------------------------------------------


@golden("tilings", "four trivial tiles and two larger ones form a valid tiling of weight 9")
def cover_inclusive():
    tiling = cover_inclusive_example()
    expect((validate(tiling), weight(tiling)), (True, 9), "valid/weight")


@golden("tilings", "a tile resting on a trivial box is rejected")
def not_cover_inclusive():
    expect(validate(non_inclusive_example()), False, "valid")


@golden("tilings", "Hermite history (0,0,2,0,4)")
def hermite_values():
    history, label = hermite_history(hermite_example_tiling())
    expect(history.h, (0, 0, 2, 0, 4), "history")
    expect(label.labels, (3, 2, 4, 1, 5), "decoded label")


@golden("tilings", "Z((UD)^3, U^3D^3) = [3][2]")
def z_paths():
    expect(gf_Z_paths(three_peaks(), parse_path("UUUDDD")), q_int(3) * q_int(2), "Z")


@golden("tilings", "hook formula on three single edges is [3]!")
def hook_three():
    expect(hook_length_gf(path_to_tree(three_peaks())), q_factorial(3), "hook")


@golden("tilings", "312-avoiding decreasing labels give all-trivial tilings; 52413 is all-trivial but not 312-avoiding")
def avoiding_gives_trivial():
    for n in range(1, 5):
        for tree in iter_trees(n):
            for label in iter_decreasing(tree):
                if is_312_avoiding(label) and not is_all_trivial(dts(complement(label))):
                    raise GoldenMismatch(f"{label} is 312-avoiding with a non-trivial tiling")
    converse = labeled("UUDDUUDDUD", (5, 2, 4, 1, 3))
    expect(is_all_trivial(dts(complement(converse))), True, "converse all-trivial")
    expect(is_312_avoiding(converse), False, "converse 312-avoiding")


# ----------------------------------------------------------------------------
# lgv-factor
# ----------------------------------------------------------------------------


@golden("lgv", "Y_down((2,1)) = 1+2q+q^2+q^3")
def y_down():
    expect(gf_Y(YoungDiagram((2, 1)), "down"), QPoly((1, 2, 1, 1)), "Y_down")


@golden("lgv", "rectangular Young diagram gives a Gaussian binomial")
def y_rectangle():
    expect(gf_Y(YoungDiagram((3, 3)), "up"), q_binomial(3, 2), "Y(3,3)")


@golden("lgv", "a/b determinant for (2,1)")
def y_determinant():
    expect(lgv_determinant(ab_points(YoungDiagram((2, 1)))), gf_Y(YoungDiagram((2, 1)), "up"), "det")


@golden("lgv", "rectangle division into three rectangles")
def rectangles_three():
    expect(len(rectangle_division(parse_path("UDUUDUDUUDDD")).rectangles), 3, "rectangles")


@golden("lgv", "five single edges: capacities (1),(2),(2),(3) and [4][3]^2[2]")
def factor_five_edges():
    report = factorization_report(five_edges_label())
    expect(sorted(d.parts for d in report.diagrams), [(1,), (2,), (2,), (3,)], "capacities")
    expected = q_int(4) * q_int(3) ** 2 * q_int(2)
    expect(report.product, expected, "product")
    expect(gf_Z(five_edges_label()), expected, "Z")


@golden("lgv", "factorization (1+2q+2q^2+q^3+q^4)(1+q)")
def factor_example():
    expected = QPoly((1, 2, 2, 1, 1)) * q_int(2)
    expect(factorized_gf(factor_example_label()), expected, "factorized")
    expect(gf_Z(factor_example_label()), expected, "Z")


@golden("lgv", "sibling condition violated: no factorization, Z = 1+2q+4q^2+4q^3+3q^4+2q^5+q^6")
def factor_counterexample():
    label = factor_counterexample_label()
    expect(gf_Z(label), QPoly((1, 2, 4, 4, 3, 2, 1)), "Z")
    try:
        factorized_gf(label)
    except PreconditionFailed:
        return
    raise GoldenMismatch("factorization accepted a label violating its preconditions")


@golden("lgv", "UDUUDUUDDD with 15342: product 1+2q+3q^2+3q^3+2q^4+q^5 misses a tiling of Z")
def factor_mismatch():
    label = factor_mismatch_label()
    report = factorization_report(label)
    expect(report.product, QPoly((1, 2, 3, 3, 2, 1)), "product")
    expect(report.z, QPoly((1, 3, 3, 3, 2, 1)), "Z")
    expect(report.matches, False, "flagged")


@golden("lgv", "non-trivial tiling counts W(1) = 1, 2, 35")
def w_counts():
    values = [gf_W(label).evaluate(1) for label in (rectangles_label(), peaks_then_hill_label(), five_edges_label())]
    expect(values, [1, 2, 35], "W(1)")


# ----------------------------------------------------------------------------
# tau-lattice
# ----------------------------------------------------------------------------


@golden("tau", "τ of the six labels on three single edges")
def tau_table():
    tree = path_to_tree(three_peaks())
    table = {}
    for word in ("123", "213", "132", "312", "231", "321"):
        label = from_pre_order_word(tree, tuple(int(c) for c in word), "decreasing")
        table[word] = str(tau_of_label(label))
    expect(
        table,
        {"123": "024", "213": "022", "132": "004", "312": "002", "231": "020", "321": "000"},
        "τ table",
    )


@golden("tau", "τ-poset drops the 132-312 cover")
def tau_edges():
    graph = tau_poset(two_posets_tau("024"))
    expect((graph.number_of_nodes(), graph.number_of_edges()), (6, 7), "elements/covers")
    expect(tau_covers(two_posets_tau("024"), two_posets_tau("022")), True, "024-022")
    expect(tau_covers(two_posets_tau("024"), two_posets_tau("004")), True, "024-004")
    expect(tau_covers(two_posets_tau("004"), two_posets_tau("002")), False, "004-002")


@golden("tau", "join(022, 004) and rank(024, 000)")
def tau_join_rank():
    expect(str(join(two_posets_tau("022"), two_posets_tau("004"))), "020", "join")
    expect(rank(two_posets_tau("024"), two_posets_tau("000")), 3, "rank")


@golden("tau", "τ-posets are lattices where label posets are not")
def tau_lattices():
    expect(verify_lattice(two_posets_tau("024")).ok, True, "three single edges")
    expect(verify_lattice(tau_of_label(hasse_seed())).ok, True, "Hasse diagram tree")


# ----------------------------------------------------------------------------
# rational
# ----------------------------------------------------------------------------


@golden("rational", "D^2(UDU^2D^2) = UD^2U^2D^4")
def expand_down():
    expect(expand_D(parse_path("UDUUDD"), 2).steps, "UDDUUDDDD", "expansion")


@golden("rational", "twelve (1,2)-paths of size 3, five of them expanded Dyck paths")
def rational_counts():
    paths, members = enumerate_rational(3, 1, 2)
    expect((len(paths), len(members)), (12, 5), "counts")


@golden("rational", "S-sets and Stirling permutation of the zero μ")
def zero_mu():
    fam = sets_from_mu((0, 0, 0), 3, 2)
    expect(fam, family((1, 2), (3, 4), (5, 6)), "sets")
    expect(stirling_from_sets(fam).entries, (3, 3, 2, 2, 1, 1), "Stirling")


@golden("rational", "(1,2) lattice: 8 elements from (0,2,3,6,7,1)")
def one_k_lattice():
    seed = one_k_seed()
    expect(seed.entries, (0, 2, 3, 6, 7, 1), "seed")
    expect(sorted(t.entries for t in upper_tau_1k_covers(seed, three_peaks(), 2)),
           [(0, 1, 0, 6, 7, 1), (0, 2, 4, 5, 3, 1)], "seed covers")
    graph = tau_1k_poset(seed, three_peaks(), 2)
    expect((graph.number_of_nodes(), graph.number_of_edges()), (8, 10), "elements/covers")
    tops = [t.entries for t in graph if graph.out_degree(t) == 0]
    expect(tops, [(0, 1, 0, 1, 0, 1)], "maximum")


@golden("rational", "(2,1) lattice: 8 elements from (0,0,1,4,5,9), isomorphic to the (1,2) lattice")
def k_one_lattice():
    seed = k_one_seed()
    expect(seed, (0, 0, 1, 4, 5, 9), "seed")
    graph = eta_poset(seed, three_peaks(), 2)
    expect(graph.number_of_nodes(), 8, "elements")
    expect([e for e in graph if graph.out_degree(e) == 0], [(0, 1, 0, 1, 0, 1)], "maximum")
    other = tau_1k_poset(one_k_seed(), three_peaks(), 2)
    expect(nx.is_isomorphic(graph, other), True, "isomorphic")
    label = label_of_eta((0, 0, 1, 0, 1, 9), tree_k1(three_peaks(), 2))
    expect(sets_of_label_k1(label, three_peaks(), 2), family((5, 4), (3, 2), (6, 1)), "Q-sets")


@golden("rational", "(2,1) block rule: seed covers as drawn; (0,0,0,1,5,9) -> (0,1,0,1,4,5) is drawn but not a block move")
def k_one_block_rule():
    seed = k_one_seed()
    expect(block_eta_covers(seed, three_peaks(), 2), [(0, 0, 0, 1, 5, 9), (0, 0, 1, 5, 4, 5)], "seed covers")
    expect(block_eta_covers((0, 0, 1, 5, 4, 5), three_peaks(), 2), [(0, 1, 0, 1, 4, 5)], "right branch")
    expect(block_eta_covers((0, 0, 0, 1, 5, 9), three_peaks(), 2), [(0, 0, 1, 0, 1, 9)], "left branch")
    found = {m.eta: m for m in eta_cover_mismatches(seed, three_peaks(), 2)}
    expect(seed in found, False, "seed agrees")
    expect(found[(0, 0, 0, 1, 5, 9)].transported_only, [(0, 1, 0, 1, 4, 5)], "missing drawn edge")


@golden("rational", "S-sets {2,3},{4,5},{1,6},{7,8} transpose to Q-sets {3,2},{7,6},{8,5},{4,1}")
def transpose_sets():
    fam = family((2, 3), (4, 5), (1, 6), (7, 8))
    expect(dual_family(fam, parse_path("UUDUDDUD"), 2), family((3, 2), (7, 6), (8, 5), (4, 1)), "Q-sets")


@golden("rational", "(1,3)-tiling splits into labels 213 <= 231 <= 321")
def split_one_three():
    parts = decompose_mu(three_peaks(), (2, 1, 0), 3)
    words = [word_string(pre_order_word(label, from_right=True)) for label in parts.labels]
    expect(words, ["213", "231", "321"], "labels")
    expect(parts.admissible(), True, "admissible")


@golden("rational", "(2,3)-tiling of weight 5 = 0+0+1+1+1+2")
def split_two_three():
    tiling = two_three_single_tile()
    expect(wt_ab(tiling), 5, "weight")
    grid = decompose_ab(tiling)
    expect(grid.weights(), [[0, 0, 1], [1, 1, 2]], "grid weights")
    expect(weight_sum_check(tiling), True, "weight identity")
    expect(grid.admissible(), True, "admissible")


@golden("rational", "fourteen (2,3)-tilings below (0,0,3,1,1,1,0,0,0)")
def vhh_fourteen():
    seed = two_three_seed()
    graph = vhh_poset(seed)
    left, right = vhh_window(vhh_of_tiling(seed))
    expect({vhh_of_tiling(t).compressed(left, right) for t in graph}, VHH_HISTORIES, "histories")
    ranks = {wt_ab(seed) - wt_ab(t) for t in graph}
    expect((min(ranks), max(ranks)), (0, 6), "rank span")
    heavy = [t for t in graph if t.tiles]
    expect([graph.out_degree(t) for t in heavy], [0], "covers above the non-trivial tiling")


# ----------------------------------------------------------------------------
# Runner
# ----------------------------------------------------------------------------


def list_checks() -> List[str]:
    return [f"{c.area}/{c.name}: {c.citation}" for c in CHECKS]


def run_checks(names: Optional[Sequence[str]] = None) -> List[CheckResult]:
    selected = [c for c in CHECKS if names is None or c.name in names or c.area in names]
    results = []
    for check in selected:
        started = time.perf_counter()
        try:
            check.run()
        except (DyckqError, AssertionError) as exc:
            logger.warning("golden check %s failed: %s", check.name, exc)
            status, detail = "FAIL", str(exc)
        except Exception as exc:
            logger.exception("golden check %s raised", check.name)
            status, detail = "ERROR", f"{type(exc).__name__}: {exc}"
        else:
            status, detail = "PASS", ""
        elapsed = (time.perf_counter() - started) * 1000.0
        results.append(CheckResult(check.name, check.area, check.citation, status, detail, elapsed))
    return results
