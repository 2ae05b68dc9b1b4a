"""Text, JSON, Graphviz DOT and SVG renderings of engine objects.

DOT and SVG writers are generators of text chunks; join them or pass them to
``writelines``.
"""
from __future__ import annotations

import json
from typing import Callable, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from dyckq_engine import InvalidInput, rank_function
from paths_trees import height_profile
from qpoly import QPoly
from rational import RationalTiling, rational_tiling_to_dict
from tilings import Box, DyckTiling, tiling_to_dict

POSET_SCHEMA = "poset.v1"
QPOLY_SCHEMA = "qpoly.v1"

# half-diagonal of one box in SVG units
UNIT = 16
PALETTE = ("#DCE9ED", "#F4E5AD", "#E8EED2", "#F6D5D5", "#E2DAF0", "#D9EAD3")


def _gvquote(s: str) -> str:
    return '"{}"'.format(s.replace('"', r"\""))


# ----------------------------------------------------------------------------
# Polynomials
# ----------------------------------------------------------------------------


def qpoly_to_dict(poly: QPoly, name: str = "") -> dict:
    return {"schema": QPOLY_SCHEMA, "name": name, "coefficients": poly.to_json(), "text": poly.render(star=False)}


def qpoly_text(poly: QPoly, name: str = "") -> str:
    body = poly.render(star=False)
    return f"{name} = {body}" if name else body


# ----------------------------------------------------------------------------
# Posets
# ----------------------------------------------------------------------------


def _sorted_nodes(graph: nx.DiGraph, node_label: Callable[[Hashable], str]) -> List[Hashable]:
    ranks = rank_function(graph) or {}
    return sorted(graph.nodes, key=lambda v: (ranks.get(v, 0), node_label(v)))


def poset_to_dict(graph: nx.DiGraph, node_label: Callable[[Hashable], str] = str, name: str = "") -> dict:
    ranks = rank_function(graph)
    nodes = _sorted_nodes(graph, node_label)
    edges = sorted((node_label(u), node_label(v)) for u, v in graph.edges)
    return {
        "schema": POSET_SCHEMA,
        "name": name,
        "graded": ranks is not None,
        "elements": [
            {"id": node_label(v), "rank": None if ranks is None else ranks[v]} for v in nodes
        ],
        "covers": [list(edge) for edge in edges],
    }


def poset_text(graph: nx.DiGraph, node_label: Callable[[Hashable], str] = str) -> List[str]:
    ranks = rank_function(graph)
    lines = [f"{graph.number_of_nodes()} elements, {graph.number_of_edges()} covers"]
    for v in _sorted_nodes(graph, node_label):
        uppers = sorted(node_label(u) for u in graph.successors(v))
        prefix = "" if ranks is None else f"[{ranks[v]}] "
        lines.append(f"{prefix}{node_label(v)} -> {', '.join(uppers) if uppers else '-'}")
    return lines


def poset_to_dot(
    graph: nx.DiGraph, node_label: Callable[[Hashable], str] = str, name: str = "poset"
) -> Iterator[str]:
    """Hasse diagram, bottom-to-top, one rank per row when the poset is graded."""

    ranks = rank_function(graph)
    yield "digraph {\n"
    yield f"  label={_gvquote(name)};\n"
    yield "  rankdir=BT;\n"
    yield '  node [shape=box fontname="Helvetica"];\n'
    nodes = _sorted_nodes(graph, node_label)
    for v in nodes:
        yield f"  {_gvquote(node_label(v))};\n"
    if ranks is not None:
        for level in sorted(set(ranks.values())):
            members = " ".join(_gvquote(node_label(v)) for v in nodes if ranks[v] == level)
            yield f"  {{rank=same; {members}}}\n"
    for u, v in sorted(graph.edges, key=lambda e: (node_label(e[0]), node_label(e[1]))):
        yield f"  {_gvquote(node_label(u))} -> {_gvquote(node_label(v))} [arrowhead=none];\n"
    yield "}\n"


# ----------------------------------------------------------------------------
# Tilings
# ----------------------------------------------------------------------------

AnyTiling = Union[DyckTiling, RationalTiling]


def _tiling_parts(tiling: AnyTiling) -> Tuple[str, str, List[List[Box]]]:
    if isinstance(tiling, RationalTiling):
        groups = [[box] for box in sorted(tiling.trivial_boxes)]
        groups.extend(list(tile.boxes()) for tile in tiling.tiles)
        return tiling.bottom, tiling.top, groups
    groups = [list(tile.boxes()) for tile in tiling.tiles]
    return tiling.bottom.steps, tiling.top.steps, groups


def tiling_dict(tiling: AnyTiling) -> dict:
    if isinstance(tiling, RationalTiling):
        return rational_tiling_to_dict(tiling)
    return tiling_to_dict(tiling)


def tiling_text(tiling: AnyTiling) -> List[str]:
    """ASCII picture: '/' and '\\' for the paths, a letter per tile."""

    bottom, top, groups = _tiling_parts(tiling)
    low, high = height_profile(bottom), height_profile(top)
    floor, ceiling = min(low), max(high)
    width = len(bottom)
    grid = [[" "] * (width + 1) for _ in range(ceiling - floor + 1)]

    def put(x: int, y: int, ch: str) -> None:
        grid[ceiling - y][x] = ch

    for heights, word in ((low, bottom), (high, top)):
        for x, step in enumerate(word):
            if step == "U":
                put(x, heights[x], "/")
            else:
                put(x, heights[x + 1], "\\")
    for index, cells in enumerate(groups):
        mark = "." if len(cells) == 1 else chr(ord("A") + index % 26)
        for x, y in cells:
            if grid[ceiling - y][x] == " ":
                put(x, y, mark)
    return ["".join(row).rstrip() for row in grid]


def _diamond(x: int, y: int, ceiling: int) -> str:
    cx, cy = x * UNIT, (ceiling - y) * UNIT
    points = [(cx - UNIT, cy), (cx, cy - UNIT), (cx + UNIT, cy), (cx, cy + UNIT)]
    return " ".join(f"{px},{py}" for px, py in points)


def _polyline(heights: Sequence[int], ceiling: int) -> str:
    return " ".join(f"{x * UNIT},{(ceiling - h) * UNIT}" for x, h in enumerate(heights))


def tiling_to_svg(tiling: AnyTiling, title: Optional[str] = None) -> Iterator[str]:
    """Boxes as diamonds, one fill colour per tile, paths drawn on top."""

    bottom, top, groups = _tiling_parts(tiling)
    low, high = height_profile(bottom), height_profile(top)
    floor, ceiling = min(low) - 1, max(high) + 1
    width = len(bottom) * UNIT
    height = (ceiling - floor) * UNIT
    yield (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width + 2 * UNIT}" height="{height + 2 * UNIT}" '
        f'viewBox="{-UNIT} {-UNIT} {width + 2 * UNIT} {height + 2 * UNIT}">\n'
    )
    if title:
        yield f"  <title>{title}</title>\n"
    for index, cells in enumerate(groups):
        fill = "#FFFFFF" if len(cells) == 1 else PALETTE[index % len(PALETTE)]
        yield f'  <g fill="{fill}" stroke="#708BA6" stroke-width="1">\n'
        for x, y in cells:
            yield f'    <polygon points="{_diamond(x, y, ceiling)}"/>\n'
        yield "  </g>\n"
    yield f'  <polyline points="{_polyline(low, ceiling)}" fill="none" stroke="#000000" stroke-width="3"/>\n'
    yield f'  <polyline points="{_polyline(high, ceiling)}" fill="none" stroke="#000000" stroke-width="1.5"/>\n'
    yield "</svg>\n"


# ----------------------------------------------------------------------------
# Dispatch
# ----------------------------------------------------------------------------


def dump_json(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=False)


def require_format(fmt: str, allowed: Iterable[str], what: str) -> None:
    allowed = tuple(allowed)
    if fmt not in allowed:
        raise InvalidInput(f"{fmt} output is not available for {what} (use one of: {', '.join(allowed)})")
