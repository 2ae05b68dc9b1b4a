"""Non-intersecting path determinants, rectangle division and factorized Z.

Lattice paths here go right (+1, 0) or down (0, -1). A right step at height y
weighs q^(y + 1); the weighted count from (x1, y1) to (x2, y2) is therefore
q^(R (y2 + 1)) times the Gaussian binomial of R right and y1 - y2 down steps.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from dyckq_engine import InvalidInput, InvariantViolation, PreconditionFailed, Timer
from labels import LabeledTree, complement, gf_Z, is_312_avoiding
from paths_trees import DyckPath, PlaneTree, path_to_tree, prime_decompose, tree_to_path
from qpoly import ONE, QPoly, ZERO, product, q_binomial
from tilings import Box, dts, hermite_lines, is_all_trivial

logger = logging.getLogger("dyckq")

Point = Tuple[int, int]


@dataclass(frozen=True)
class YoungDiagram:
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidInput(f"{list(parts)} is not a weakly decreasing sequence", offender=parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def subdiagrams(self) -> Iterator["YoungDiagram"]:
        def walk(index: int, cap: int, prefix: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
            if index == len(self.parts):
                yield prefix
                return
            for value in range(min(cap, self.parts[index]), -1, -1):
                yield from walk(index + 1, value, prefix + (value,))

        for parts in walk(0, self.parts[0] if self.parts else 0, ()):
            yield YoungDiagram(parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def gf_Y(mu: YoungDiagram, direction: str = "up") -> QPoly:
    """Σ over μ' ⊆ μ of q^|μ'| (up) or q^(|μ| - |μ'|) (down)."""

    if direction not in ("up", "down"):
        raise InvalidInput(f"direction must be 'up' or 'down', got {direction!r}")
    total = ZERO
    for sub in mu.subdiagrams():
        exponent = sub.size if direction == "up" else mu.size - sub.size
        total = total + QPoly.term(1, exponent)
    return total


# ----------------------------------------------------------------------------
# Determinants
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class PointConfig:
    sources: Tuple[Point, ...]
    sinks: Tuple[Point, ...]
    normalization: Optional[int] = None  # None: divide out the lowest power of q

    def __post_init__(self):
        if len(self.sources) != len(self.sinks):
            raise InvalidInput("sources and sinks differ in number")


def path_weight(start: Point, end: Point) -> QPoly:
    right = end[0] - start[0]
    down = start[1] - end[1]
    if right < 0 or down < 0:
        return ZERO
    return q_binomial(right, down).shift(right * (end[1] + 1))


def path_count_matrix(cfg: PointConfig) -> np.ndarray:
    m = len(cfg.sources)
    matrix = np.empty((m, m), dtype=object)
    for i, a in enumerate(cfg.sources):
        for j, b in enumerate(cfg.sinks):
            matrix[i, j] = path_weight(a, b)
    return matrix


def bareiss_determinant(matrix: np.ndarray) -> QPoly:
    """Fraction-free determinant of a square matrix of QPoly entries."""

    m = matrix.shape[0]
    if m == 0:
        return ONE
    entries = sympy.Matrix(m, m, lambda i, j: matrix[i, j].to_sympy().as_expr())
    return QPoly.from_sympy(entries.det(method="bareiss"))


def lgv_determinant(cfg: PointConfig) -> QPoly:
    with Timer(f"lgv_determinant({len(cfg.sources)}x{len(cfg.sources)})"):
        det = bareiss_determinant(path_count_matrix(cfg))
    if det.is_zero():
        return det
    if cfg.normalization is not None:
        try:
            return det.shift(-cfg.normalization)
        except InvariantViolation as exc:
            raise InvariantViolation(f"determinant {det} is not divisible by q^{cfg.normalization}") from exc
    normalized = det.shift(-det.low_degree())
    if normalized[0] != 1:
        raise InvariantViolation(f"determinant {det} has no unique lowest family")
    return normalized


def ab_points(mu: YoungDiagram, m: Optional[int] = None) -> PointConfig:
    """a_i = (i-1, i-1), b_i = (μ_{m+1-i} + i - 1, i - 2), D = Σ (i-1) μ_{m+1-i}."""

    parts = list(mu.parts)
    m = len(parts) if m is None else m
    parts += [0] * (m - len(parts))
    sources = tuple((i - 1, i - 1) for i in range(1, m + 1))
    sinks = tuple((parts[m - i] + i - 1, i - 2) for i in range(1, m + 1))
    exponent = sum((i - 1) * parts[m - i] for i in range(1, m + 1))
    return PointConfig(sources, sinks, exponent)


def cd_points(bottom: DyckPath, line_counts: Sequence[int]) -> PointConfig:
    """c/d points from the up steps of ``bottom`` read right to left.

    ``line_counts[i]`` is the box count on the Hermite line of the (i+1)-th up
    step from the right. x(u) counts the down steps before u.
    """

    xs: List[int] = []
    downs = 0
    for step in bottom.steps:
        if step == "U":
            xs.append(downs)
        else:
            downs += 1
    xs.reverse()
    sources: List[Point] = [(0, 0)]
    for i in range(len(xs) - 1):
        cx, cy = sources[-1]
        sources.append((cx + 1 + xs[i] - xs[i + 1], cy + 1))
    sinks = tuple((cx + mu, cy - 1) for (cx, cy), mu in zip(sources, line_counts))
    return PointConfig(tuple(sources), sinks)


def det_Y_label(label: LabeledTree, tree: Optional[PlaneTree] = None) -> QPoly:
    """Determinant for the all-trivial tiling of an increasing label.

    Equals Σ q^(N - |ν'|) over Dyck paths ν' between the bottom path and the
    tiling's top path, where N is the number of boxes of the tiling.
    """

    if tree is not None and tree != label.tree:
        raise InvalidInput("label does not live on the given tree")
    tiling = dts(label)
    if not is_all_trivial(tiling):
        raise PreconditionFailed(["all-trivial tiling"])
    if not tiling.tiles:
        return ONE
    history = hermite_lines(tiling)
    counts = list(reversed(history.h))
    # the determinant counts boxes below ν'; Z counts them from the top path
    return lgv_determinant(cd_points(tiling.bottom, counts)).reverse(len(tiling.boxes))


# ----------------------------------------------------------------------------
# Rectangle division and factorization
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Rectangle:
    """A×B rectangle above the valley between U^A D^A and U^B D^B."""

    valley: Point
    rows: int
    cols: int

    def box(self, r: int, c: int) -> Box:
        vx, vy = self.valley
        return (vx - r + c, vy + 1 + r + c)

    def boxes(self) -> List[Box]:
        return [self.box(r, c) for c in range(self.cols) for r in range(self.rows)]

    def capacity(self, present: Optional[set] = None) -> YoungDiagram:
        """Rows present per column; the full rectangle when ``present`` is None."""

        parts = []
        for c in range(self.cols):
            if present is None:
                parts.append(self.rows)
            else:
                parts.append(sum(1 for r in range(self.rows) if self.box(r, c) in present))
        return YoungDiagram(tuple(sorted(parts, reverse=True)))


@dataclass
class RectangleDivision:
    bottom: DyckPath
    rectangles: List[Rectangle] = field(default_factory=list)

    def capacities(self, present: Optional[set] = None) -> List[YoungDiagram]:
        return [rect.capacity(present) for rect in self.rectangles]


def _peel_candidate(tree: PlaneTree) -> Optional[int]:
    """Leftmost branch vertex whose child subtrees are all chains."""

    def is_chain(e: int) -> bool:
        return all(len(tree.children(x)) <= 1 for x in tree.subtree(e))

    candidates = [
        v for v in tree.branch_points() if all(is_chain(c) for c in tree.children(v))
    ]
    if not candidates:
        return None
    return min(candidates, key=lambda v: tree.children(v)[0])


def rectangle_division(bottom: DyckPath) -> RectangleDivision:
    """Peel branch points bottom-left first until the path is U^n D^n."""

    division = RectangleDivision(bottom)
    word = bottom.steps
    while True:
        tree = path_to_tree(DyckPath(word))
        vertex = _peel_candidate(tree)
        if vertex is None:
            break
        first, second = tree.children(vertex)[:2]
        rows = len(tree.subtree(first))
        cols = len(tree.subtree(second))
        start = _u_position(tree, first)
        heights = DyckPath(word).heights()
        valley = (start + 2 * rows, heights[start])
        division.rectangles.append(Rectangle(valley, rows, cols))
        span = 2 * (rows + cols)
        word = word[:start] + "U" * (rows + cols) + "D" * (rows + cols) + word[start + span:]
    return division


def _u_position(tree: PlaneTree, edge: int) -> int:
    """Number of steps before the U of ``edge``."""

    position = 0
    for e in tree.edges:
        if e == edge:
            break
        # edges before ``edge`` in pre-order contribute a U; closed ones also a D
        position += 1
        if not tree.is_ancestor(e, edge):
            position += 1
    return position


def check_condition_star2(label: LabeledTree) -> bool:
    """Siblings carry increasing labels from left to right."""

    tree = label.tree
    for v in (0, *tree.edges):
        kids = tree.children(v)
        if any(label(a) > label(b) for a, b in zip(kids, kids[1:])):
            return False
    return True


def is_concatenation_of_peaks(path: DyckPath) -> bool:
    for factor in prime_decompose(path):
        m = factor.size
        if factor.steps != "U" * m + "D" * m:
            return False
    return True


@dataclass
class FactorizationReport:
    bottom: str
    top: str
    diagrams: List[YoungDiagram]
    factors: List[QPoly]
    product: QPoly
    z: QPoly

    @property
    def matches(self) -> bool:
        return self.product == self.z

    def lines(self) -> List[str]:
        out = [f"bottom {self.bottom}, top {self.top}"]
        for index, (mu, factor) in enumerate(zip(self.diagrams, self.factors), start=1):
            out.append(f"  mu_{index} = {mu}: Y_down = {factor}")
        out.append(f"  product = {self.product}")
        if not self.matches:
            out.append(f"  Z = {self.z} differs from the product")
        return out


def factorization_report(label: LabeledTree, tree: Optional[PlaneTree] = None) -> FactorizationReport:
    if tree is not None and tree != label.tree:
        raise InvalidInput("label does not live on the given tree")
    failed = []
    if label.direction != "decreasing":
        failed.append("decreasing label")
    else:
        if not is_312_avoiding(label):
            failed.append("312-avoiding")
        bottom = tree_to_path(label.tree)
        if not check_condition_star2(label) and not is_concatenation_of_peaks(bottom):
            failed.append("condition (**) or concatenation of U^m D^m")
    if failed:
        raise PreconditionFailed(failed)
    tiling = dts(complement(label))
    if not is_all_trivial(tiling):
        raise PreconditionFailed(["all-trivial tiling"])
    division = rectangle_division(tiling.bottom)
    diagrams = [d for d in division.capacities(tiling.boxes) if d.parts]
    factors = [gf_Y(mu, "down") for mu in diagrams]
    report = FactorizationReport(tiling.bottom.steps, tiling.top.steps, diagrams, factors, product(factors), gf_Z(label))
    if not report.matches:
        logger.warning("factorization of %s gives %s but Z = %s", label, report.product, report.z)
    return report


def factorized_gf(label: LabeledTree, tree: Optional[PlaneTree] = None) -> QPoly:
    """Product of the Y_down factors; raises where it disagrees with Z."""

    report = factorization_report(label, tree)
    if not report.matches:
        raise InvariantViolation(f"factorized Z {report.product} differs from Z = {report.z}")
    return report.product


def gf_W(label: LabeledTree, tree: Optional[PlaneTree] = None) -> QPoly:
    """Z minus the trivial-tiling part; counts up-set tilings with a non-trivial tile."""

    if label.direction != "decreasing":
        raise PreconditionFailed(["decreasing label"])
    difference = gf_Z(label, tree) - det_Y_label(complement(label))
    if not difference.has_nonnegative_coefficients():
        raise InvariantViolation(f"W = {difference} has a negative coefficient")
    return difference
