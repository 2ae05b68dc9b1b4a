"""Dyck paths, chord pairs, prime decomposition and planar rooted trees.

Step indices are 1-based. Edges of a tree are indexed 1..n in pre-order,
which is the order of their U steps in the corresponding path.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Tuple

import dyckq_env as env
from dyckq_engine import InvalidInput, Timer


@dataclass(frozen=True, order=True)
class DyckPath:
    steps: str = ""

    @property
    def size(self) -> int:
        return len(self.steps) // 2

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return self.steps

    def heights(self) -> List[int]:
        return height_profile(self.steps)

    def __add__(self, other: "DyckPath") -> "DyckPath":
        return DyckPath(self.steps + other.steps)


@dataclass(frozen=True, order=True)
class ChordPair:
    i: int
    j: int

    @property
    def length(self) -> int:
        return (self.j - self.i + 1) // 2


def height_profile(word: str) -> List[int]:
    """Heights h_0..h_len of a U/D word."""

    heights = [0]
    for step in word:
        heights.append(heights[-1] + (1 if step == "U" else -1))
    return heights


def parse_path(word: str) -> DyckPath:
    """Validate a U/D word; errors carry the first offending 1-based index."""

    height = 0
    for index, step in enumerate(word, start=1):
        if step == "U":
            height += 1
        elif step == "D":
            height -= 1
        else:
            raise InvalidInput(f"invalid step {step!r} at index {index}", index=index, offender=step)
        if height < 0:
            raise InvalidInput(f"path goes below zero at index {index}", index=index, offender=word)
    if height != 0:
        raise InvalidInput(
            f"unbalanced path: {height} unmatched up steps at index {len(word)}",
            index=len(word),
            offender=word,
        )
    return DyckPath(word)


def chord_pairs(path: DyckPath) -> List[ChordPair]:
    """Matched (U, D) pairs sorted by the U index, i.e. in edge order."""

    stack: List[int] = []
    pairs: List[ChordPair] = []
    for index, step in enumerate(path.steps, start=1):
        if step == "U":
            stack.append(index)
        else:
            pairs.append(ChordPair(stack.pop(), index))
    return sorted(pairs)


def prime_decompose(path: DyckPath) -> List[DyckPath]:
    factors: List[DyckPath] = []
    start = 0
    height = 0
    for index, step in enumerate(path.steps):
        height += 1 if step == "U" else -1
        if height == 0:
            factors.append(DyckPath(path.steps[start:index + 1]))
            start = index + 1
    return factors


def mirror(path: DyckPath) -> DyckPath:
    """Reverse the word and swap U and D."""

    swap = {"U": "D", "D": "U"}
    return DyckPath("".join(swap[s] for s in reversed(path.steps)))


def is_weakly_above(upper: DyckPath, lower: DyckPath) -> bool:
    if len(upper) != len(lower):
        return False
    return all(a >= b for a, b in zip(upper.heights(), lower.heights()))


def max_path(n: int) -> DyckPath:
    return DyckPath("U" * n + "D" * n)


def _extend(prefix: str, ups: int, downs: int, n: int, out: List[str]) -> None:
    if ups == n and downs == n:
        out.append(prefix)
        return
    if downs < ups:
        _extend(prefix + "D", ups, downs + 1, n, out)
    if ups < n:
        _extend(prefix + "U", ups + 1, downs, n, out)


def enumerate_paths(n: int, bound: Optional[int] = None) -> List[DyckPath]:
    """All Dyck paths of size ``n`` in sorted word order."""

    if n < 0:
        raise InvalidInput(f"size must be nonnegative, got {n}")
    env.check_size(n, bound)
    words: List[str] = []
    with Timer(f"enumerate_paths({n})"):
        _extend("", 0, 0, n, words)
    return [DyckPath(w) for w in sorted(words)]


def paths_between(lower: DyckPath, upper: DyckPath) -> List[DyckPath]:
    """Dyck paths ν with lower <= ν <= upper, sorted."""

    if not is_weakly_above(upper, lower):
        raise InvalidInput(f"{upper} is not weakly above {lower}")
    low, high = lower.heights(), upper.heights()
    found: List[str] = []

    def walk(prefix: str, height: int) -> None:
        x = len(prefix)
        if x == len(lower):
            found.append(prefix)
            return
        for step, delta in (("D", -1), ("U", 1)):
            nxt = height + delta
            if low[x + 1] <= nxt <= high[x + 1]:
                walk(prefix + step, nxt)

    walk("", 0)
    return [DyckPath(w) for w in sorted(found)]


# ----------------------------------------------------------------------------
# Planar rooted trees
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class PlaneTree:
    """Planar rooted tree stored as the parent of every edge.

    ``parents[e - 1]`` is the parent edge of edge ``e`` or 0 when ``e`` hangs
    from the root. Pre-order indexing makes every child list increasing.
    """

    parents: Tuple[int, ...] = ()
    _children: Dict[int, Tuple[int, ...]] = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        children: Dict[int, List[int]] = {0: []}
        for e, p in enumerate(self.parents, start=1):
            if not 0 <= p < e:
                raise InvalidInput(f"edge {e} has parent {p}; parents must precede children", index=e)
            children.setdefault(p, []).append(e)
            children.setdefault(e, [])
        object.__setattr__(self, "_children", {k: tuple(v) for k, v in children.items()})

    @property
    def n(self) -> int:
        return len(self.parents)

    @property
    def edges(self) -> range:
        return range(1, self.n + 1)

    def parent(self, e: int) -> int:
        return self.parents[e - 1]

    def children(self, e: int = 0) -> Tuple[int, ...]:
        """Child edges below edge ``e`` (0 stands for the root)."""

        return self._children.get(e, ())

    def ancestors(self, e: int) -> List[int]:
        """Proper ancestor edges of ``e``, nearest first."""

        chain = []
        p = self.parent(e)
        while p:
            chain.append(p)
            p = self.parent(p)
        return chain

    def is_ancestor(self, a: int, e: int) -> bool:
        return a in self.ancestors(e)

    def depth(self, e: int) -> int:
        return len(self.ancestors(e)) + 1

    def subtree(self, e: int) -> List[int]:
        """``e`` and all edges below it, in pre-order."""

        out = [e]
        for c in self.children(e):
            out.extend(self.subtree(c))
        return out

    def leaves(self) -> List[int]:
        return [e for e in self.edges if not self.children(e)]

    def strictly_right(self, e: int, other: int) -> bool:
        """Edge ``e`` is strictly right of ``other``: unrelated by ancestry and later in pre-order."""

        if e == other or self.is_ancestor(e, other) or self.is_ancestor(other, e):
            return False
        return e > other

    def branch_points(self) -> List[int]:
        """Vertices with at least two edges below them; 0 is the root, e the lower end of edge e."""

        return [v for v in (0, *self.edges) if len(self.children(v)) >= 2]

    @cached_property
    def post_order(self) -> Tuple[int, ...]:
        out: List[int] = []

        def visit(v: int) -> None:
            for c in self.children(v):
                visit(c)
                out.append(c)

        visit(0)
        return tuple(out)

    def without_leaf(self, leaf: int) -> Tuple["PlaneTree", Dict[int, int]]:
        """Delete a leaf edge; returns the new tree and the old->new index map."""

        if self.children(leaf):
            raise InvalidInput(f"edge {leaf} is not a leaf")
        mapping = {e: (e if e < leaf else e - 1) for e in self.edges if e != leaf}
        parents = tuple(mapping[p] if p else 0 for e, p in enumerate(self.parents, start=1) if e != leaf)
        return PlaneTree(parents), mapping

    def __str__(self) -> str:
        return tree_to_path(self).steps


def path_to_tree(path: DyckPath) -> PlaneTree:
    stack: List[int] = []
    parents: List[int] = []
    for step in path.steps:
        if step == "U":
            parents.append(stack[-1] if stack else 0)
            stack.append(len(parents))
        else:
            stack.pop()
    return PlaneTree(tuple(parents))


def tree_to_path(tree: PlaneTree) -> DyckPath:
    out: List[str] = []

    def visit(v: int) -> None:
        for c in tree.children(v):
            out.append("U")
            visit(c)
            out.append("D")

    visit(0)
    return DyckPath("".join(out))


def parse_tree(word: str) -> PlaneTree:
    """Trees serialize as their balanced-parenthesis (path) word."""

    return path_to_tree(parse_path(word))


def edge_chords(tree: PlaneTree) -> Dict[int, ChordPair]:
    """Edge e corresponds to the e-th chord pair."""

    return dict(zip(tree.edges, chord_pairs(tree_to_path(tree))))


def iter_trees(n: int) -> Iterator[PlaneTree]:
    for path in enumerate_paths(n):
        yield path_to_tree(path)
