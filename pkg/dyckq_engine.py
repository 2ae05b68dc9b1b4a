"""Shared engine pieces for dyckq.

Logging setup, timing, the exception hierarchy and the frontier expansion
used by every poset in the package (labels, tau sequences, rational tilings).
"""
from __future__ import annotations

import logging
import sys
import time
from collections import deque
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx


class Timer:
    """Lightweight context manager for logging elapsed milliseconds."""

    def __init__(self, label: str):
        self.label = label
        self.start: Optional[float] = None

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self.start is None:
            return False
        elapsed_ms = (time.perf_counter() - self.start) * 1000.0
        logger.info("[PERF] %s: %.1f ms", self.label, elapsed_ms)
        return False


# ============================================================================
# Errors
# ============================================================================


class DyckqError(Exception):
    """Base class for every error raised by dyckq."""


class InvalidInput(DyckqError, ValueError):
    """Malformed user input. ``index`` is 1-based when a position is known."""

    def __init__(self, message: str, *, index: Optional[int] = None, offender=None):
        super().__init__(message)
        self.index = index
        self.offender = offender


class SizeBoundExceeded(DyckqError):
    """Requested object is above the configured desk-scale bound."""


class InvariantViolation(DyckqError, AssertionError):
    """An internal identity failed; always a bug or a mis-configured input."""


class PreconditionFailed(DyckqError):
    def __init__(self, failed: Sequence[str]):
        super().__init__("precondition(s) failed: " + ", ".join(failed))
        self.failed = list(failed)


# ============================================================================
# Poset machinery
# ============================================================================


def expand_up_set(
    seed: Hashable,
    successors: Callable[[Hashable], Iterable[Hashable]],
    limit: Optional[int] = None,
    label: str = "poset",
) -> nx.DiGraph:
    """Breadth-first closure of ``seed`` under a cover function.

    Nodes are the elements, edges ``x -> y`` are the covers ``x ⋖ y``.
    """

    graph = nx.DiGraph()
    graph.add_node(seed)
    queue = deque([seed])
    with Timer(f"expand {label}"):
        while queue:
            current = queue.popleft()
            for upper in successors(current):
                if upper not in graph:
                    if limit is not None and graph.number_of_nodes() >= limit:
                        raise SizeBoundExceeded(f"{label} exceeds {limit} elements")
                    graph.add_node(upper)
                    queue.append(upper)
                graph.add_edge(current, upper)
    logger.debug("%s: %d elements, %d covers", label, graph.number_of_nodes(), graph.number_of_edges())
    return graph


def rank_function(graph: nx.DiGraph) -> Optional[Dict[Hashable, int]]:
    """Rank from the unique minimum, or None when the poset is not graded."""

    minima = [node for node in graph if graph.in_degree(node) == 0]
    if len(minima) != 1:
        return None
    ranks: Dict[Hashable, int] = {minima[0]: 0}
    for node in nx.topological_sort(graph):
        for upper in graph.successors(node):
            value = ranks[node] + 1
            if upper in ranks and ranks[upper] != value:
                return None
            ranks[upper] = value
    return ranks


def upper_bounds(graph: nx.DiGraph, x: Hashable) -> set:
    return nx.descendants(graph, x) | {x}


def lower_bounds(graph: nx.DiGraph, x: Hashable) -> set:
    return nx.ancestors(graph, x) | {x}


def _extremal(graph: nx.DiGraph, candidates: set, below: bool) -> List[Hashable]:
    result = []
    for node in candidates:
        others = nx.ancestors(graph, node) if not below else nx.descendants(graph, node)
        if not (others & candidates):
            result.append(node)
    return result


def join_in(graph: nx.DiGraph, x: Hashable, y: Hashable) -> Optional[Hashable]:
    """Least upper bound in the Hasse graph, None if it is not unique."""

    common = upper_bounds(graph, x) & upper_bounds(graph, y)
    minimal = _extremal(graph, common, below=False)
    return minimal[0] if len(minimal) == 1 else None


def meet_in(graph: nx.DiGraph, x: Hashable, y: Hashable) -> Optional[Hashable]:
    common = lower_bounds(graph, x) & lower_bounds(graph, y)
    maximal = _extremal(graph, common, below=True)
    return maximal[0] if len(maximal) == 1 else None


def first_non_lattice_pair(graph: nx.DiGraph) -> Optional[Tuple[Hashable, Hashable, str]]:
    nodes = sorted(graph.nodes, key=repr)
    for i, x in enumerate(nodes):
        for y in nodes[i + 1:]:
            if join_in(graph, x, y) is None:
                return x, y, "join"
            if meet_in(graph, x, y) is None:
                return x, y, "meet"
    return None


def is_lattice(graph: nx.DiGraph) -> bool:
    return first_non_lattice_pair(graph) is None


def configure_logging(level: str = "WARNING") -> None:
    """Configure the package logger for console output."""

    logger.setLevel(getattr(logging, level.upper(), logging.WARNING))
    if not any(isinstance(handler, logging.StreamHandler) for handler in logger.handlers):
        handler = logging.StreamHandler(sys.stdout)
        handler.setFormatter(logging.Formatter("%(asctime)s - %(levelname)s - %(message)s"))
        logger.addHandler(handler)
    logger.propagate = False


logger = logging.getLogger("dyckq")
