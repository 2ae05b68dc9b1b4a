"""Edge labels on planar rooted trees, their words and the label poset.

Words are stored left to right. ``pre_order_word`` lists labels by edge
index; ``post_order_word`` lists them in post-order. ``from_right=True``
reads the mirror traversal instead, which is the reversal of the other word.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Literal, Optional, Sequence, Tuple

import networkx as nx

import dyckq_env as env
from dyckq_engine import InvalidInput, PreconditionFailed, expand_up_set
from paths_trees import PlaneTree
from qpoly import ONE, QPoly, ZERO

logger = logging.getLogger("dyckq")

Direction = Literal["increasing", "decreasing"]


@dataclass(frozen=True)
class LabeledTree:
    tree: PlaneTree
    labels: Tuple[int, ...]
    direction: Direction = "decreasing"

    def __post_init__(self):
        n = self.tree.n
        if len(self.labels) != n or sorted(self.labels) != list(range(1, n + 1)):
            raise InvalidInput(f"label {list(self.labels)} is not a bijection onto 1..{n}", offender=self.labels)
        if self.direction not in ("increasing", "decreasing"):
            raise InvalidInput(f"unknown direction {self.direction!r}")
        for e in self.tree.edges:
            p = self.tree.parent(e)
            if p and not _monotone(self.labels[p - 1], self.labels[e - 1], self.direction):
                raise InvalidInput(
                    f"label is not {self.direction} along edge {p} -> {e}", index=e, offender=self.labels
                )

    @property
    def n(self) -> int:
        return self.tree.n

    def __call__(self, e: int) -> int:
        return self.labels[e - 1]

    def edge_of(self, value: int) -> int:
        return self.labels.index(value) + 1

    def with_labels(self, labels: Sequence[int]) -> "LabeledTree":
        return LabeledTree(self.tree, tuple(labels), self.direction)

    def __str__(self) -> str:
        return word_string(pre_order_word(self))


def _monotone(parent_label: int, child_label: int, direction: Direction) -> bool:
    if direction == "increasing":
        return parent_label < child_label
    return parent_label > child_label


def is_monotone(tree: PlaneTree, labels: Sequence[int], direction: Direction) -> bool:
    return all(
        _monotone(labels[tree.parent(e) - 1], labels[e - 1], direction) for e in tree.edges if tree.parent(e)
    )


def word_string(word: Sequence[int]) -> str:
    if all(v <= 9 for v in word):
        return "".join(str(v) for v in word)
    return ",".join(str(v) for v in word)


def parse_word(text: str) -> Tuple[int, ...]:
    """"32415" or "3,2,4,1,5" -> (3, 2, 4, 1, 5)."""

    text = text.strip()
    try:
        if "," in text:
            return tuple(int(part) for part in text.split(","))
        return tuple(int(ch) for ch in text)
    except ValueError as exc:
        raise InvalidInput(f"cannot parse label word {text!r}") from exc


def from_pre_order_word(tree: PlaneTree, word: Sequence[int], direction: Direction) -> LabeledTree:
    """Build the label whose left-to-right pre-order word is ``word``."""

    return LabeledTree(tree, tuple(word), direction)


def from_post_order_word(tree: PlaneTree, word: Sequence[int], direction: Direction) -> LabeledTree:
    labels = [0] * tree.n
    for e, value in zip(tree.post_order, word):
        labels[e - 1] = value
    return LabeledTree(tree, tuple(labels), direction)


# ----------------------------------------------------------------------------
# Words and statistics
# ----------------------------------------------------------------------------


def pre_order_word(label: LabeledTree, from_right: bool = False) -> Tuple[int, ...]:
    if from_right:
        return tuple(reversed(post_order_word(label)))
    return label.labels


def post_order_word(label: LabeledTree, from_right: bool = False) -> Tuple[int, ...]:
    if from_right:
        return tuple(reversed(pre_order_word(label)))
    return tuple(label(e) for e in label.tree.post_order)


def inversion(word: Sequence[int]) -> int:
    """#{j < i : w_j < w_i}; 0 for the longest permutation."""

    return sum(1 for i in range(len(word)) for j in range(i) if word[j] < word[i])


def std_inversion(word: Sequence[int]) -> int:
    """Classical inversion count #{j < i : w_j > w_i}."""

    return sum(1 for i in range(len(word)) for j in range(i) if word[j] > word[i])


def strictly_right(e: int, other: int, tree: PlaneTree) -> bool:
    if e == other:
        raise InvalidInput("strictly_right needs two distinct edges")
    return tree.strictly_right(e, other)


def is_312_avoiding(label: LabeledTree) -> bool:
    tree = label.tree
    for e1, e2, e3 in itertools.permutations(tree.edges, 3):
        if label(e2) < label(e3) < label(e1) and tree.strictly_right(e1, e2) and tree.strictly_right(e2, e3):
            return False
    return True


def complement(label: LabeledTree) -> LabeledTree:
    """Edgewise i -> n+1-i; flips the direction."""

    n = label.n
    flipped: Direction = "increasing" if label.direction == "decreasing" else "decreasing"
    return LabeledTree(label.tree, tuple(n + 1 - v for v in label.labels), flipped)


def collapse_below(label: LabeledTree, vertex: int) -> LabeledTree:
    """Replace the subtree hanging from ``vertex`` by one chain carrying the same labels.

    The chain keeps the labels monotone in the label's direction.
    """

    tree = label.tree
    below = [e for c in tree.children(vertex) for e in tree.subtree(c)]
    if not below:
        return label
    values = sorted((label(e) for e in below), reverse=label.direction == "decreasing")
    parents: List[int] = []
    labels: List[int] = []
    mapping: Dict[int, int] = {}
    first = min(below)
    # the chain takes the place of the subtree in pre-order
    order: List[Tuple[str, int]] = []
    for e in tree.edges:
        if e == first:
            order.extend(("chain", i) for i in range(len(values)))
        elif e not in below:
            order.append(("edge", e))
    for kind, item in order:
        new_index = len(parents) + 1
        if kind == "chain":
            if item == 0:
                parents.append(mapping[vertex] if vertex else 0)
            else:
                parents.append(new_index - 1)
            labels.append(values[item])
        else:
            p = tree.parent(item)
            parents.append(mapping[p] if p else 0)
            labels.append(label(item))
            mapping[item] = new_index
    return LabeledTree(PlaneTree(tuple(parents)), tuple(labels), label.direction)


# ----------------------------------------------------------------------------
# Enumeration
# ----------------------------------------------------------------------------


def all_labels(tree: PlaneTree, direction: Direction) -> List[LabeledTree]:
    """Every monotone label on ``tree``, sorted by pre-order word."""

    env.check_size(tree.n)
    result = []
    for perm in itertools.permutations(range(1, tree.n + 1)):
        if is_monotone(tree, perm, direction):
            result.append(LabeledTree(tree, perm, direction))
    return result


def seed_label(tree: PlaneTree, direction: Direction) -> LabeledTree:
    """Minimal label: pre-order word 1..n (increasing) or post-order word 1..n (decreasing)."""

    if direction == "increasing":
        return LabeledTree(tree, tuple(tree.edges), "increasing")
    return from_post_order_word(tree, tuple(tree.edges), "decreasing")


# ----------------------------------------------------------------------------
# Cover relation and poset
# ----------------------------------------------------------------------------


def upper_covers(label: LabeledTree) -> List[LabeledTree]:
    """All labels covering ``label``.

    A cover swaps L(l) < L(r) for l strictly left of r, provided no edge strictly
    between them carries a value in [L(l), L(r)] and the result stays monotone.
    """

    tree = label.tree
    result = []
    for left in tree.edges:
        for right in tree.edges:
            low, high = label(left), label(right)
            if low >= high or not tree.strictly_right(right, left):
                continue
            blocked = any(
                low <= label(c) <= high
                for c in tree.edges
                if c not in (left, right) and tree.strictly_right(c, left) and tree.strictly_right(right, c)
            )
            if blocked:
                continue
            swapped = list(label.labels)
            swapped[left - 1], swapped[right - 1] = high, low
            if is_monotone(tree, swapped, label.direction):
                result.append(label.with_labels(swapped))
    return sorted(result, key=lambda item: item.labels)


def covers(lower: LabeledTree, upper: LabeledTree) -> bool:
    """True iff ``upper`` covers ``lower``."""

    if lower.tree != upper.tree or lower.direction != upper.direction:
        raise InvalidInput("covers() needs two labels on the same tree with the same direction")
    return upper in upper_covers(lower)


def label_poset_graph(seed: LabeledTree) -> nx.DiGraph:
    return expand_up_set(seed, upper_covers, env.max_poset_elements(), label=f"label poset of {seed}")


def build_poset(seed: LabeledTree) -> nx.DiGraph:
    """Up-set of ``seed``; nodes are labels, edges the Hasse covers."""

    env.check_size(seed.n)
    return label_poset_graph(seed)


def z_exponent(label: LabeledTree, seed: LabeledTree) -> int:
    return std_inversion(post_order_word(label)) - std_inversion(post_order_word(seed))


def gf_Z(seed: LabeledTree, tree: Optional[PlaneTree] = None) -> QPoly:
    """Σ q^inv over the up-set of ``seed``, normalized so the seed contributes 1."""

    if tree is not None and tree != seed.tree:
        raise InvalidInput("seed label does not live on the given tree")
    total = ZERO
    for element in build_poset(seed):
        total = total + QPoly.term(1, z_exponent(element, seed))
    return total


def rank_generating_function(graph: nx.DiGraph, ranks: Dict) -> QPoly:
    total = ZERO
    for node in graph:
        total = total + QPoly.term(1, ranks[node])
    return total


def gf_Z_recursive(seed: LabeledTree, tree: Optional[PlaneTree] = None) -> QPoly:
    """Leaf-deletion recursion for Z on decreasing labels.

    For each leaf, the nearest up-set element carrying label 1 on that leaf is
    found by breadth-first search; its distance is the q-exponent, and the
    recursion continues on the tree without that leaf.
    """

    if tree is not None and tree != seed.tree:
        raise InvalidInput("seed label does not live on the given tree")
    if seed.direction != "decreasing":
        raise PreconditionFailed(["decreasing label"])
    if seed.n <= 1:
        return ONE
    graph = build_poset(seed)
    distance = nx.single_source_shortest_path_length(graph, seed)
    total = ZERO
    for leaf in seed.tree.leaves():
        candidates = [node for node in graph if node(leaf) == 1]
        if not candidates:
            continue
        nearest = min(candidates, key=lambda node: (distance[node], node.labels))
        smaller_tree, mapping = seed.tree.without_leaf(leaf)
        labels = [0] * smaller_tree.n
        for old, new in mapping.items():
            labels[new - 1] = nearest(old) - 1
        reduced = LabeledTree(smaller_tree, tuple(labels), "decreasing")
        total = total + gf_Z_recursive(reduced).shift(distance[nearest])
    return total


def iter_decreasing(tree: PlaneTree) -> Iterator[LabeledTree]:
    yield from all_labels(tree, "decreasing")
