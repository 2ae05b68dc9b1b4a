"""Integer sequences τ encoding decreasing labels, and their lattice.

τ_i looks at the edge e carrying label n+1-i and counts, among edges with a
larger label, twice those strictly right of e plus the ancestors of e.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

import networkx as nx

import dyckq_env as env
from dyckq_engine import (
    InvalidInput,
    InvariantViolation,
    expand_up_set,
    first_non_lattice_pair,
    rank_function,
)
from labels import LabeledTree, from_pre_order_word, post_order_word, std_inversion
from paths_trees import PlaneTree, mirror, path_to_tree, tree_to_path

logger = logging.getLogger("dyckq")


@dataclass(frozen=True)
class TauSeq:
    entries: Tuple[int, ...]
    tree: PlaneTree

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(v) for v in self.entries))
        if len(self.entries) != self.tree.n:
            raise InvalidInput(f"τ has {len(self.entries)} entries for a tree with {self.tree.n} edges")
        for i, value in enumerate(self.entries, start=1):
            if not 0 <= value <= 2 * (i - 1):
                raise InvalidInput(f"τ_{i}={value} outside 0..{2 * (i - 1)}", index=i, offender=self.entries)

    def __getitem__(self, i: int) -> int:
        """1-based access."""

        return self.entries[i - 1]

    def __str__(self) -> str:
        return tau_string(self.entries)


def tau_string(entries: Sequence[int]) -> str:
    if all(v <= 9 for v in entries):
        return "".join(str(v) for v in entries)
    return json.dumps(list(entries))


def parse_tau(text: str) -> Tuple[int, ...]:
    text = text.strip()
    try:
        if text.startswith("["):
            return tuple(int(v) for v in json.loads(text))
        if "," in text:
            return tuple(int(v) for v in text.split(","))
        return tuple(int(ch) for ch in text)
    except ValueError as exc:
        raise InvalidInput(f"cannot parse τ sequence {text!r}") from exc


def _count(tree: PlaneTree, edge: int, others: Sequence[int]) -> int:
    right = sum(1 for f in others if tree.strictly_right(f, edge))
    above = sum(1 for f in others if tree.is_ancestor(f, edge))
    return 2 * right + above


def tau_of_label(label: LabeledTree) -> TauSeq:
    if label.direction != "decreasing":
        raise InvalidInput("τ is defined for decreasing labels")
    n = label.n
    entries = []
    for i in range(1, n + 1):
        value = n + 1 - i
        edge = label.edge_of(value)
        larger = [label.edge_of(j) for j in range(value + 1, n + 1)]
        entries.append(_count(label.tree, edge, larger))
    return TauSeq(tuple(entries), label.tree)


def label_of_tau(tau: TauSeq) -> LabeledTree:
    """Assign labels 1, 2, ... to leaves of the shrinking edge set."""

    tree = tau.tree
    n = tree.n
    remaining = set(tree.edges)
    labels = [0] * n
    for value in range(1, n + 1):
        target = tau[n + 1 - value]
        matches = []
        for edge in sorted(remaining):
            if any(c in remaining for c in tree.children(edge)):
                continue
            others = [f for f in remaining if f != edge]
            if _count(tree, edge, others) == target:
                matches.append(edge)
        if not matches:
            raise InvalidInput(f"{tau} does not decode to a label on {tree}", offender=tau.entries)
        if len(matches) > 1:
            raise InvariantViolation(f"τ decoding is ambiguous at label {value}: edges {matches}")
        labels[matches[0] - 1] = value
        remaining.discard(matches[0])
    return LabeledTree(tree, tuple(labels), "decreasing")


def is_valid_tau(tau: TauSeq) -> bool:
    try:
        label_of_tau(tau)
    except InvalidInput:
        return False
    return True


# ----------------------------------------------------------------------------
# Cover relation
# ----------------------------------------------------------------------------


def upper_tau_covers(tau: TauSeq) -> List[TauSeq]:
    """Apply every admissible (i, j) move; at most one i per j."""

    entries = tau.entries
    n = len(entries)
    result = []
    for j in range(n):
        admissible = [
            i
            for i in range(j)
            if entries[j] >= entries[i] + 2 and all(entries[k] >= entries[j] for k in range(i + 1, j))
        ]
        if len(admissible) > 1:
            raise InvariantViolation(f"several i admissible for j={j + 1} in {tau}: {[i + 1 for i in admissible]}")
        for i in admissible:
            moved = list(entries)
            moved[i], moved[j] = entries[j] - 2, entries[i]
            result.append(TauSeq(tuple(moved), tau.tree))
    return sorted(result, key=lambda t: t.entries)


def tau_covers(lower: TauSeq, upper: TauSeq) -> bool:
    if lower.tree != upper.tree:
        raise InvalidInput("τ sequences live on different trees")
    return upper in upper_tau_covers(lower)


def lower_tau_covers(tau: TauSeq) -> List[TauSeq]:
    entries = tau.entries
    n = len(entries)
    found = []
    for i in range(n):
        for j in range(i + 1, n):
            candidate = list(entries)
            candidate[i], candidate[j] = entries[j], entries[i] + 2
            try:
                lower = TauSeq(tuple(candidate), tau.tree)
            except InvalidInput:
                continue
            if is_valid_tau(lower) and tau in upper_tau_covers(lower):
                found.append(lower)
    return sorted(set(found), key=lambda t: t.entries)


def tau_poset(seed: TauSeq) -> nx.DiGraph:
    if not is_valid_tau(seed):
        raise InvalidInput(f"seed {seed} does not decode to a label")
    return expand_up_set(seed, upper_tau_covers, env.max_poset_elements(), label=f"τ poset of {seed}")


def _down_set(tau: TauSeq) -> Set[TauSeq]:
    seen = {tau}
    frontier = [tau]
    while frontier:
        current = frontier.pop()
        for lower in lower_tau_covers(current):
            if lower not in seen:
                seen.add(lower)
                frontier.append(lower)
    return seen


def tau_rank_value(tau: TauSeq) -> int:
    return std_inversion(post_order_word(label_of_tau(tau)))


def _unique(candidates: Set[TauSeq], minimal: bool, what: str) -> TauSeq:
    values = {t: tau_rank_value(t) for t in candidates}
    if not values:
        raise InvariantViolation(f"no common {what} bound")
    best = min(values.values()) if minimal else max(values.values())
    winners = [t for t, v in values.items() if v == best]
    if len(winners) != 1:
        raise InvariantViolation(f"{what} is not unique: {[str(t) for t in winners]}")
    winner = winners[0]
    # the extremal-rank element must also be comparable with every common bound
    bound = set(tau_poset(winner).nodes) if minimal else _down_set(winner)
    if not candidates <= bound:
        raise InvariantViolation(f"{what} candidate {winner} does not bound all common bounds")
    return winner


def _common_bounds(tau: TauSeq, other: TauSeq, upper: bool) -> Set[TauSeq]:
    if upper:
        return set(tau_poset(tau).nodes) & set(tau_poset(other).nodes)
    return _down_set(tau) & _down_set(other)


def bound_join(tau: TauSeq, other: TauSeq) -> TauSeq:
    """Least common upper bound found by intersecting up-sets."""

    if tau.tree != other.tree:
        raise InvalidInput("τ sequences live on different trees")
    return _unique(_common_bounds(tau, other, upper=True), minimal=True, what="upper")


def bound_meet(tau: TauSeq, other: TauSeq) -> TauSeq:
    """Greatest common lower bound found by intersecting down-sets."""

    if tau.tree != other.tree:
        raise InvalidInput("τ sequences live on different trees")
    return _unique(_common_bounds(tau, other, upper=False), minimal=False, what="lower")


def repair_move(entries: Sequence[int], j: int) -> Optional[Tuple[int, ...]]:
    """The (i, j) cover move at 0-based position ``j``, or None when no i is admissible.

    i is the nearest position left of j holding a value below τ_j; it is
    admissible when that value is at most τ_j - 2.
    """

    value = entries[j]
    for i in range(j - 1, -1, -1):
        if entries[i] < value:
            if entries[i] > value - 2:
                return None
            moved = list(entries)
            moved[i], moved[j] = value - 2, entries[i]
            return tuple(moved)
    return None


def join(tau: TauSeq, other: TauSeq) -> TauSeq:
    """Least common upper bound.

    Scans j from n down to 1. While the two sequences differ at j, the one with
    the larger τ_j takes its unique cover move at j. Positions right of j are
    never touched again.
    """

    if tau.tree != other.tree:
        raise InvalidInput("τ sequences live on different trees")
    left, right = tau.entries, other.entries
    for j in range(len(left) - 1, -1, -1):
        while left[j] != right[j]:
            larger_is_left = left[j] > right[j]
            moved = repair_move(left if larger_is_left else right, j)
            if moved is None:
                stuck = left if larger_is_left else right
                raise InvariantViolation(
                    f"join of {tau} and {other}: no admissible pair at j={j + 1} in {tau_string(stuck)}"
                )
            if larger_is_left:
                left = moved
            else:
                right = moved
    logger.debug("join(%s, %s) = %s", tau, other, tau_string(left))
    return TauSeq(left, tau.tree)


def mirror_label(label: LabeledTree) -> LabeledTree:
    """Reflect the tree and its labels in a vertical line."""

    tree = path_to_tree(mirror(tree_to_path(label.tree)))
    word = tuple(reversed(post_order_word(label)))
    return from_pre_order_word(tree, word, label.direction)


def mirror_tau(tau: TauSeq) -> TauSeq:
    return tau_of_label(mirror_label(label_of_tau(tau)))


def mirror_meet(tau: TauSeq, other: TauSeq) -> TauSeq:
    """Join of the mirror images, mirrored back.

    This is a lower bound only when mirroring reverses every τ cover, which
    fails already on three single edges; see ``meet``.
    """

    if tau.tree != other.tree:
        raise InvalidInput("τ sequences live on different trees")
    return mirror_tau(join(mirror_tau(tau), mirror_tau(other)))


def meet(tau: TauSeq, other: TauSeq) -> TauSeq:
    """Greatest common lower bound.

    The mirror reduction is tried first. When its result is not a common lower
    bound, the meet is the scan join of all common lower bounds.
    """

    if tau.tree != other.tree:
        raise InvalidInput("τ sequences live on different trees")
    common = _common_bounds(tau, other, upper=False)
    if not common:
        raise InvariantViolation(f"{tau} and {other} have no common lower bound")
    candidate = mirror_meet(tau, other)
    if candidate in common and common <= _down_set(candidate):
        return candidate
    logger.warning("mirror reduction gives %s for meet(%s, %s); joining the common lower bounds", candidate, tau, other)
    bounds = sorted(common, key=lambda t: t.entries)
    result = bounds[0]
    for bound in bounds[1:]:
        result = join(result, bound)
    if result not in common:
        raise InvariantViolation(f"join of the common lower bounds of {tau} and {other} is {result}, not a lower bound")
    return result


def rank(seed: TauSeq, tau: TauSeq) -> int:
    if tau not in tau_poset(seed):
        raise InvalidInput(f"{tau} is not above {seed}")
    return tau_rank_value(tau) - tau_rank_value(seed)


# ----------------------------------------------------------------------------
# Lattice verification
# ----------------------------------------------------------------------------


@dataclass
class LatticeReport:
    seed: str
    elements: int
    covers: int
    graded: bool
    minimum: Optional[str]
    maximum: Optional[str]
    is_lattice: bool
    violation: Optional[str] = None
    covers_separate: bool = True

    @property
    def ok(self) -> bool:
        return self.graded and self.is_lattice and self.minimum is not None and self.maximum is not None


def lower_covers_separate(graph: nx.DiGraph, ranks: Dict) -> bool:
    """Two distinct elements of equal nonzero rank share at most one lower cover."""

    nodes = [v for v in graph if ranks.get(v, 0) > 0]
    for a_index, a in enumerate(nodes):
        lower_a = set(graph.predecessors(a))
        for b in nodes[a_index + 1:]:
            if ranks[a] == ranks[b] and len(lower_a & set(graph.predecessors(b))) > 1:
                return False
    return True


def verify_lattice(seed: TauSeq) -> LatticeReport:
    graph = tau_poset(seed)
    return lattice_report(graph, str(seed))


def lattice_report(graph: nx.DiGraph, seed_text: str) -> LatticeReport:
    ranks = rank_function(graph)
    minima = [v for v in graph if graph.in_degree(v) == 0]
    maxima = [v for v in graph if graph.out_degree(v) == 0]
    violation = first_non_lattice_pair(graph)
    report = LatticeReport(
        seed=seed_text,
        elements=graph.number_of_nodes(),
        covers=graph.number_of_edges(),
        graded=ranks is not None,
        minimum=str(minima[0]) if len(minima) == 1 else None,
        maximum=str(maxima[0]) if len(maxima) == 1 else None,
        is_lattice=violation is None,
        violation=None if violation is None else f"{violation[2]} of {violation[0]} and {violation[1]}",
        covers_separate=ranks is not None and lower_covers_separate(graph, ranks),
    )
    logger.info("lattice check %s: %s", seed_text, report)
    return report
