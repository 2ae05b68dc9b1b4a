"""Cover-inclusive Dyck tilings, the DTS map and Hermite histories.

Geometry: a path vertex is (x, h) with 0 <= x <= 2n. A unit box is named by its
center (x, y); between a bottom path λ and a top path μ the boxes are the
centers with λ(x) + 1 <= y <= μ(x) - 1 and y ≡ x + 1 (mod 2). A tile is an
anchor (its leftmost box) plus a Dyck word tracing the box centers.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import dyckq_env as env
from dyckq_engine import InvalidInput, InvariantViolation, Timer
from labels import (
    LabeledTree,
    complement,
    from_pre_order_word,
    pre_order_word,
    std_inversion,
)
from paths_trees import (
    DyckPath,
    PlaneTree,
    chord_pairs,
    height_profile,
    is_weakly_above,
    max_path,
    parse_path,
    path_to_tree,
    paths_between,
    tree_to_path,
)
from qpoly import QPoly, ZERO, product, q_factorial, q_int

logger = logging.getLogger("dyckq")

TILING_SCHEMA = "tiling.v1"

Box = Tuple[int, int]


@dataclass(frozen=True, order=True)
class DyckTile:
    anchor: Box
    shape: str = ""

    @property
    def size(self) -> int:
        return len(self.shape) // 2

    @property
    def weight(self) -> int:
        return self.size + 1

    @property
    def is_trivial(self) -> bool:
        return not self.shape

    def boxes(self) -> List[Box]:
        x, y = self.anchor
        cells = [(x, y)]
        for step in self.shape:
            x += 1
            y += 1 if step == "U" else -1
            cells.append((x, y))
        return cells


def region_boxes(bottom: Sequence[int], top: Sequence[int]) -> Set[Box]:
    """Box centers between two height profiles."""

    boxes: Set[Box] = set()
    for x in range(1, len(bottom) - 1):
        y = bottom[x] + 1
        while y <= top[x] - 1:
            boxes.add((x, y))
            y += 2
    return boxes


def top_profile(bottom: Sequence[int], boxes: Iterable[Box]) -> List[int]:
    top = list(bottom)
    for x, y in boxes:
        if 0 <= x < len(top):
            top[x] = max(top[x], y + 1)
    return top


def profile_word(heights: Sequence[int]) -> str:
    steps = []
    for a, b in zip(heights, heights[1:]):
        if b - a == 1:
            steps.append("U")
        elif a - b == 1:
            steps.append("D")
        else:
            raise InvalidInput(f"heights {list(heights)} do not form a lattice path")
    return "".join(steps)


@dataclass(frozen=True)
class DyckTiling:
    bottom: DyckPath
    tiles: Tuple[DyckTile, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tiles", tuple(sorted(self.tiles)))

    @cached_property
    def box_owner(self) -> Dict[Box, DyckTile]:
        owner: Dict[Box, DyckTile] = {}
        for tile in self.tiles:
            for box in tile.boxes():
                if box in owner:
                    raise InvalidInput(f"tiles overlap at {box}", offender=tile)
                owner[box] = tile
        return owner

    @property
    def boxes(self) -> Set[Box]:
        return set(self.box_owner)

    @cached_property
    def top(self) -> DyckPath:
        return DyckPath(profile_word(top_profile(self.bottom.heights(), self.box_owner)))

    @property
    def n(self) -> int:
        return self.bottom.size

    def __str__(self) -> str:
        return tiling_to_json(self)


# ----------------------------------------------------------------------------
# Validation
# ----------------------------------------------------------------------------


def validation_errors(tiling: DyckTiling) -> List[str]:
    errors: List[str] = []
    bottom = tiling.bottom.heights()
    owner: Dict[Box, DyckTile] = {}
    for tile in tiling.tiles:
        if height_profile(tile.shape) and (
            min(height_profile(tile.shape)) < 0 or height_profile(tile.shape)[-1] != 0
        ):
            errors.append(f"tile {tile} is not a Dyck ribbon")
            continue
        for box in tile.boxes():
            if box in owner:
                errors.append(f"tile {tile} overlaps tile {owner[box]} at {box}")
            owner[box] = tile
    if errors:
        return errors
    try:
        top = top_profile(bottom, owner)
        profile_word(top)
    except InvalidInput:
        return [f"tiles do not bound a lattice path above {tiling.bottom}"]
    if top[0] != 0 or top[-1] != 0:
        return ["top path does not return to height zero"]
    region = region_boxes(bottom, top)
    for box in sorted(set(owner) - region):
        errors.append(f"tile {owner[box]} has box {box} outside the region")
    for box in sorted(region - set(owner)):
        errors.append(f"box {box} of the region is not covered")
    if errors:
        return errors
    for tile in tiling.tiles:
        shifted = [(x, y - 2) for x, y in tile.boxes()]
        below = [bottom[x] + 1 > y for x, y in shifted]
        if all(below):
            continue
        holders = {owner.get(box) for box in shifted}
        if any(below) or len(holders) != 1 or None in holders:
            errors.append(f"tile {tile} is not cover-inclusive")
    return errors


def validate(tiling: DyckTiling) -> bool:
    errors = validation_errors(tiling)
    for message in errors:
        logger.debug("invalid tiling %s: %s", tiling.bottom, message)
    return not errors


def weight(tiling: DyckTiling) -> int:
    return sum(tile.weight for tile in tiling.tiles)


def is_all_trivial(tiling: DyckTiling) -> bool:
    return all(tile.is_trivial for tile in tiling.tiles)


# ----------------------------------------------------------------------------
# Enumeration
# ----------------------------------------------------------------------------


def _ribbons(anchor: Box, free: Set[Box]) -> Iterator[str]:
    """Dyck words tracing boxes in ``free`` from ``anchor``."""

    x0, y0 = anchor

    def walk(word: str, x: int, y: int) -> Iterator[str]:
        if y == y0:
            yield word
        for step, dy in (("U", 1), ("D", -1)):
            nxt = (x + 1, y + dy)
            if nxt[1] >= y0 and nxt in free:
                yield from walk(word + step, nxt[0], nxt[1])

    yield from walk("", x0, y0)


def enumerate_tilings(bottom: DyckPath, top: DyckPath) -> List[DyckTiling]:
    """All cover-inclusive tilings between two fixed paths."""

    if not is_weakly_above(top, bottom):
        raise InvalidInput(f"{top} is not weakly above {bottom}")
    env.check_size(bottom.size)
    region = region_boxes(bottom.heights(), top.heights())
    found: List[DyckTiling] = []

    def fill(free: Set[Box], tiles: List[DyckTile]) -> None:
        if not free:
            candidate = DyckTiling(bottom, tuple(tiles))
            if validate(candidate):
                found.append(candidate)
            return
        anchor = min(free)
        for shape in _ribbons(anchor, free):
            tile = DyckTile(anchor, shape)
            fill(free - set(tile.boxes()), tiles + [tile])

    fill(set(region), [])
    return sorted(found, key=lambda t: t.tiles)


def path_to_trivial_tiling(bottom: DyckPath, top: DyckPath) -> DyckTiling:
    if not is_weakly_above(top, bottom):
        raise InvalidInput(f"{top} is not weakly above {bottom}")
    boxes = region_boxes(bottom.heights(), top.heights())
    return DyckTiling(bottom, tuple(DyckTile(box) for box in boxes))


def trivial_tiling_to_path(tiling: DyckTiling) -> DyckPath:
    for tile in tiling.tiles:
        if not tile.is_trivial:
            raise InvalidInput(f"tile {tile} is not trivial", offender=tile)
    return tiling.top


def enumerate_trivial_tilings(bottom: DyckPath, top: Optional[DyckPath] = None) -> List[DyckTiling]:
    top = top or max_path(bottom.size)
    return [path_to_trivial_tiling(bottom, nu) for nu in paths_between(bottom, top)]


def gf_dyck(bottom: DyckPath, top: DyckPath) -> QPoly:
    total = ZERO
    for tiling in enumerate_tilings(bottom, top):
        total = total + QPoly.term(1, weight(tiling))
    return total


def gf_Z_paths(bottom: DyckPath, top: DyckPath, from_top: bool = False) -> QPoly:
    """Σ Dyck(λ, ν) over λ <= ν <= μ.

    With ``from_top`` each tiling D counts q^(N - wt(D)), N the number of boxes
    between λ and μ; this is the orientation of Z on decreasing labels.
    """

    total = ZERO
    with Timer(f"gf_Z_paths({bottom}, {top})"):
        for nu in paths_between(bottom, top):
            total = total + gf_dyck(bottom, nu)
    if from_top:
        return total.reverse(len(region_boxes(bottom.heights(), top.heights())))
    return total


def hook_length_gf(tree: PlaneTree) -> QPoly:
    """[n]! / ∏ [|a|] over the chord pairs of the tree's path."""

    arcs = product(q_int(pair.length) for pair in chord_pairs(tree_to_path(tree)))
    return q_factorial(tree.n).exact_div(arcs)


# ----------------------------------------------------------------------------
# DTS
# ----------------------------------------------------------------------------


def _insert_peak(tiles: Sequence[DyckTile], position: int) -> List[DyckTile]:
    """Open the tiling at vertex ``position`` for a new UD of the bottom path."""

    grown: List[DyckTile] = []
    for tile in tiles:
        ax, ay = tile.anchor
        if ax > position:
            grown.append(DyckTile((ax + 2, ay), tile.shape))
            continue
        if ax + len(tile.shape) < position:
            grown.append(tile)
            continue
        # the tile crosses column ``position``: splice UD after that box
        offset = position - ax
        grown.append(DyckTile(tile.anchor, tile.shape[:offset] + "UD" + tile.shape[offset:]))
    return grown


def _insert_step(tiling: DyckTiling, position: int) -> DyckTiling:
    word = tiling.bottom.steps
    bottom = DyckPath(word[:position] + "UD" + word[position:])
    tiles = _insert_peak(tiling.tiles, position)
    top = top_profile(bottom.heights(), (box for tile in tiles for box in tile.boxes()))
    strip = [
        DyckTile((x, top[x] + 1))
        for x in range(position + 2, len(top) - 1)
        if top[x + 1] == top[x] + 1
    ]
    return DyckTiling(bottom, tuple(tiles) + tuple(strip))


def _leaf_position(tree: PlaneTree, edges: Set[int], leaf: int) -> int:
    """U index (0-based vertex before it) of ``leaf`` in the path of the sub-tree ``edges``."""

    position = 0

    def visit(v: int) -> bool:
        nonlocal position
        for c in tree.children(v):
            if c not in edges:
                continue
            if c == leaf:
                return True
            position += 1
            if visit(c):
                return True
            position += 1
        return False

    if not visit(0):
        raise InvariantViolation(f"edge {leaf} not found")
    return position


def dts(label: LabeledTree) -> DyckTiling:
    """Dyck tiling strip: insert edges by increasing label value."""

    if label.direction != "increasing":
        raise InvalidInput("dts needs an increasing label")
    tiling = DyckTiling(DyckPath(""))
    present: Set[int] = set()
    for value in range(1, label.n + 1):
        edge = label.edge_of(value)
        present.add(edge)
        position = _leaf_position(label.tree, present, edge)
        tiling = _insert_step(tiling, position)
    if tiling.bottom != tree_to_path(label.tree):
        raise InvariantViolation(f"dts rebuilt {tiling.bottom}, expected {tree_to_path(label.tree)}")
    return tiling


# ----------------------------------------------------------------------------
# Hermite history
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class HermiteHistory:
    h: Tuple[int, ...]
    routes: Tuple[Tuple[DyckTile, ...], ...] = field(default=(), compare=False)


def hermite_lines(tiling: DyckTiling) -> HermiteHistory:
    bottom = tiling.bottom.heights()
    owner = tiling.box_owner
    claimed: Set[DyckTile] = set()
    ups = [x for x in range(len(bottom) - 1) if bottom[x + 1] == bottom[x] + 1]
    weights: Dict[int, int] = {}
    routes: Dict[int, Tuple[DyckTile, ...]] = {}
    for x in reversed(ups):
        cx, cy = x, bottom[x] + 1
        while (cx, cy) in owner and owner[(cx, cy)] in claimed:
            cy += 2
        total = 0
        route: List[DyckTile] = []
        while (cx, cy) in owner:
            tile = owner[(cx, cy)]
            if tile in claimed:
                raise InvariantViolation(f"line from step {x} re-enters claimed tile {tile}")
            claimed.add(tile)
            route.append(tile)
            total += tile.weight
            ax, ay = tile.anchor
            cx, cy = ax - 1, ay + 1
        weights[x] = total
        routes[x] = tuple(route)
    return HermiteHistory(tuple(weights[x] for x in ups), tuple(routes[x] for x in ups))


def decode_lehmer(h: Sequence[int]) -> Tuple[int, ...]:
    """p_k is the (h_k + 1)-th smallest remaining value, for k = n..1."""

    remaining = list(range(1, len(h) + 1))
    word = [0] * len(h)
    for k in range(len(h) - 1, -1, -1):
        if h[k] >= len(remaining):
            raise InvalidInput(f"history entry h_{k + 1}={h[k]} is too large", index=k + 1)
        word[k] = remaining.pop(h[k])
    return tuple(word)


def hermite_history(tiling: DyckTiling) -> Tuple[HermiteHistory, LabeledTree]:
    history = hermite_lines(tiling)
    tree = path_to_tree(tiling.bottom)
    try:
        label = from_pre_order_word(tree, decode_lehmer(history.h), "decreasing")
    except InvalidInput as exc:
        raise InvariantViolation(f"history {history.h} does not decode to a decreasing label") from exc
    return history, label


def label_duality(label: LabeledTree) -> LabeledTree:
    """L↓(e) = n + 1 - L↑(e)."""

    if label.direction != "increasing":
        raise InvalidInput("label_duality needs an increasing label")
    return complement(label)


def dts_inverse(tiling: DyckTiling) -> LabeledTree:
    _, decreasing = hermite_history(tiling)
    return complement(decreasing)


def dts_weight_word(label: LabeledTree) -> int:
    """Inversion count matching the tiling weight of ``dts(label)``."""

    return std_inversion(pre_order_word(label))


# ----------------------------------------------------------------------------
# JSON
# ----------------------------------------------------------------------------


def tiling_to_dict(tiling: DyckTiling) -> dict:
    return {
        "schema": TILING_SCHEMA,
        "bottom": tiling.bottom.steps,
        "top": tiling.top.steps,
        "tiles": [{"anchor": list(tile.anchor), "shape": tile.shape} for tile in tiling.tiles],
        "weight": weight(tiling),
    }


def tiling_to_json(tiling: DyckTiling) -> str:
    return json.dumps(tiling_to_dict(tiling), ensure_ascii=False)


def tiling_from_json(data) -> DyckTiling:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        bottom = parse_path(data["bottom"])
        tiles = tuple(DyckTile(tuple(item["anchor"]), item.get("shape", "")) for item in data["tiles"])
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed tiling JSON: {exc}") from exc
    return DyckTiling(bottom, tiles)
