"""Rational Dyck paths and tilings of 𝕌^a𝔻^b type.

Paths are U/D words. In N/E terms a U is a north step (a row of the region)
and a D is an east step (a column). Boxes keep the tilings-module convention:
centers (x, y) between two height profiles.

(1,k) objects live above 𝔻^k(λ) and are indexed by S-families; (k,1) objects
live above 𝕌^k(λ') and are indexed by Q-families. Both sides share the tree
T(mirror λ) = T(λ') with every edge subdivided k times.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

import dyckq_env as env
from dyckq_engine import (
    InvalidInput,
    InvariantViolation,
    Timer,
    expand_up_set,
)
from labels import LabeledTree
from paths_trees import (
    DyckPath,
    PlaneTree,
    chord_pairs,
    enumerate_paths,
    height_profile,
    is_weakly_above,
    mirror,
    parse_path,
    path_to_tree,
    paths_between,
)
from tau_lattice import TauSeq, label_of_tau, tau_of_label
from tilings import (
    Box,
    DyckTile,
    DyckTiling,
    hermite_history,
    path_to_trivial_tiling,
    profile_word,
    region_boxes,
    top_profile,
    weight,
)

logger = logging.getLogger("dyckq")

RATIONAL_TILING_SCHEMA = "rational_tiling.v1"


# ----------------------------------------------------------------------------
# Paths
# ----------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class RationalPath:
    steps: str
    a: int = 1
    b: int = 1

    @property
    def n(self) -> int:
        return self.steps.count("U") // self.a

    @property
    def is_ud_type(self) -> bool:
        return is_ud_type(self.steps, self.a, self.b)

    def __str__(self) -> str:
        return self.steps


def expand_D(path: DyckPath, k: int) -> RationalPath:
    return RationalPath(path.steps.replace("D", "D" * k), 1, k)


def expand_U(path: DyckPath, k: int) -> RationalPath:
    return RationalPath(path.steps.replace("U", "U" * k), k, 1)


def expand_UD(path: DyckPath, a: int, b: int) -> RationalPath:
    """𝕌^a(𝔻^b(λ)); the two substitutions commute."""

    return RationalPath("".join("U" * a if s == "U" else "D" * b for s in path.steps), a, b)


def is_rational_path(word: str, a: int, b: int) -> bool:
    ups = downs = 0
    for step in word:
        if step == "U":
            ups += 1
        elif step == "D":
            downs += 1
        else:
            return False
        if b * ups < a * downs:
            return False
    return ups % a == 0 and ups * b == downs * a


def collapse(word: str, a: int, b: int) -> DyckPath:
    """Recover λ from 𝕌^a𝔻^b(λ); runs must be multiples of a (U) and b (D)."""

    out = []
    for letter, run in itertools.groupby(word):
        size = len(list(run))
        unit = a if letter == "U" else b
        if size % unit:
            raise InvalidInput(f"{word} is not of 𝕌^{a}𝔻^{b} type", offender=word)
        out.append(letter * (size // unit))
    return parse_path("".join(out))


def is_ud_type(word: str, a: int, b: int) -> bool:
    try:
        collapse(word, a, b)
    except InvalidInput:
        return False
    return True


def enumerate_rational(n: int, a: int, b: int) -> Tuple[List[RationalPath], List[RationalPath]]:
    """All (a,b)-paths of size n and those of 𝕌𝔻 type, in sorted word order."""

    env.check_rational_size(n, a, b)
    ups_total, downs_total = a * n, b * n
    words: List[str] = []

    def extend(prefix: str, ups: int, downs: int) -> None:
        if ups == ups_total and downs == downs_total:
            words.append(prefix)
            return
        if downs < downs_total and b * ups >= a * (downs + 1):
            extend(prefix + "D", ups, downs + 1)
        if ups < ups_total:
            extend(prefix + "U", ups + 1, downs)

    with Timer(f"enumerate_rational({n},{a},{b})"):
        extend("", 0, 0)
    paths = [RationalPath(w, a, b) for w in sorted(words)]
    return paths, [p for p in paths if p.is_ud_type]


def x_positions(word: str) -> List[int]:
    """#D before each U."""

    out, downs = [], 0
    for step in word:
        if step == "U":
            out.append(downs)
        else:
            downs += 1
    return out


def y_positions(word: str) -> List[int]:
    """#U before each D."""

    out, ups = [], 0
    for step in word:
        if step == "D":
            out.append(ups)
        else:
            ups += 1
    return out


def word_from_x(xs: Sequence[int], downs: int) -> str:
    if any(p > q for p, q in zip(xs, xs[1:])) or (xs and (xs[0] < 0 or xs[-1] > downs)):
        raise InvalidInput(f"row positions {list(xs)} do not describe a path")
    out, placed = [], 0
    for x in xs:
        out.append("D" * (x - placed) + "U")
        placed = x
    out.append("D" * (downs - placed))
    return "".join(out)


def word_from_y(ys: Sequence[int], ups: int) -> str:
    if any(p > q for p, q in zip(ys, ys[1:])) or (ys and (ys[0] < 0 or ys[-1] > ups)):
        raise InvalidInput(f"column positions {list(ys)} do not describe a path")
    out, placed = [], 0
    for y in ys:
        out.append("U" * (y - placed) + "D")
        placed = y
    out.append("U" * (ups - placed))
    return "".join(out)


# ----------------------------------------------------------------------------
# Set families and k-Stirling permutations
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class SetFamily:
    sets: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        sets = tuple(frozenset(s) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        union: Set[int] = set()
        for s in sets:
            if union & s:
                raise InvalidInput(f"sets overlap: {self}")
            union |= s
        size = sum(len(s) for s in sets)
        if union != set(range(1, size + 1)) or len({len(s) for s in sets}) > 1:
            raise InvalidInput(f"family does not partition 1..{size} into equal blocks")

    @property
    def n(self) -> int:
        return len(self.sets)

    @property
    def k(self) -> int:
        return len(self.sets[0]) if self.sets else 0

    def render(self, descending: bool = False) -> str:
        return ",".join(
            "{" + ",".join(str(v) for v in sorted(s, reverse=descending)) + "}" for s in self.sets
        )

    def __str__(self) -> str:
        return self.render()


def family(*sets: Sequence[int]) -> SetFamily:
    return SetFamily(tuple(frozenset(s) for s in sets))


def sets_from_mu(mu: Sequence[int], n: int, k: int) -> SetFamily:
    """S_i: k successive remaining integers from the (μ_i + 1)-th smallest."""

    if len(mu) != n:
        raise InvalidInput(f"μ needs {n} entries")
    remaining = list(range(1, n * k + 1))
    sets = []
    for i, value in enumerate(mu, start=1):
        if not 0 <= value <= len(remaining) - k:
            raise InvalidInput(f"μ_{i}={value} exceeds the capacity {len(remaining) - k}", index=i)
        chosen = remaining[value:value + k]
        sets.append(frozenset(chosen))
        del remaining[value:value + k]
    return SetFamily(tuple(sets))


def mu_from_sets(fam: SetFamily) -> Tuple[int, ...]:
    remaining = sorted(set().union(*fam.sets)) if fam.sets else []
    mu = []
    for i, s in enumerate(fam.sets, start=1):
        start = remaining.index(min(s))
        if remaining[start:start + len(s)] != sorted(s):
            raise InvalidInput(f"S_{i}={sorted(s)} is not successive in {remaining}", index=i)
        mu.append(start)
        del remaining[start:start + len(s)]
    return tuple(mu)


def sets_from_xi(xi: Sequence[int], n: int, k: int) -> SetFamily:
    """Q_i: k successive remaining integers going down from the (ξ_i + 1)-th largest."""

    if len(xi) != n:
        raise InvalidInput(f"ξ needs {n} entries")
    remaining = list(range(n * k, 0, -1))
    sets = []
    for i, value in enumerate(xi, start=1):
        if not 0 <= value <= len(remaining) - k:
            raise InvalidInput(f"ξ_{i}={value} exceeds the capacity {len(remaining) - k}", index=i)
        sets.append(frozenset(remaining[value:value + k]))
        del remaining[value:value + k]
    return SetFamily(tuple(sets))


def xi_from_sets(fam: SetFamily) -> Tuple[int, ...]:
    remaining = sorted(set().union(*fam.sets), reverse=True) if fam.sets else []
    xi = []
    for i, s in enumerate(fam.sets, start=1):
        start = remaining.index(max(s))
        if remaining[start:start + len(s)] != sorted(s, reverse=True):
            raise InvalidInput(f"Q_{i}={sorted(s)} is not successive", index=i)
        xi.append(start)
        del remaining[start:start + len(s)]
    return tuple(xi)


def all_mu(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    yield from itertools.product(*(range((n - i) * k + 1) for i in range(1, n + 1)))


@dataclass(frozen=True)
class StirlingPerm:
    entries: Tuple[int, ...]
    k: int

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if self.k < 1 or len(entries) % self.k:
            raise InvalidInput(f"length {len(entries)} is not a multiple of k={self.k}")
        n = len(entries) // self.k
        if sorted(entries) != sorted(list(range(1, n + 1)) * self.k):
            raise InvalidInput(f"{entries} is not a permutation of {{1^k..{n}^k}}", offender=entries)
        for value in range(1, n + 1):
            spots = [p for p, v in enumerate(entries) if v == value]
            if any(entries[q] < value for q in range(spots[0], spots[-1] + 1)):
                raise InvalidInput(f"entries between the copies of {value} must be >= {value}", offender=entries)

    @property
    def n(self) -> int:
        return len(self.entries) // self.k

    def __str__(self) -> str:
        return "".join(str(v) for v in self.entries) if self.n <= 9 else str(list(self.entries))


def stirling_from_sets(fam: SetFamily) -> StirlingPerm:
    n, k = fam.n, fam.k
    entries = [0] * (n * k)
    for i, s in enumerate(fam.sets, start=1):
        for j in s:
            entries[j - 1] = n + 1 - i
    return StirlingPerm(tuple(entries), k)


def sets_from_stirling(perm: StirlingPerm) -> SetFamily:
    n = perm.n
    sets = tuple(
        frozenset(p for p, v in enumerate(perm.entries, start=1) if v == n + 1 - i) for i in range(1, n + 1)
    )
    fam = SetFamily(sets)
    mu_from_sets(fam)
    return fam


def mu_from_stirling(perm: StirlingPerm) -> Tuple[int, ...]:
    """μ'_i counts the smaller entries up to the first copy of n+1-i."""

    n = perm.n
    out = []
    for i in range(1, n + 1):
        first = perm.entries.index(n + 1 - i)
        out.append(sum(1 for p in range(first + 1) if perm.entries[p] < n + 1 - i))
    return tuple(out)


# ----------------------------------------------------------------------------
# Trees on the subdivided shape
# ----------------------------------------------------------------------------


def subdivide_tree(tree: PlaneTree, k: int) -> PlaneTree:
    """Replace every edge by a chain of k edges; edge m becomes (m-1)k+1..mk."""

    parents = []
    for m in tree.edges:
        p = tree.parent(m)
        parents.append(p * k if p else 0)
        parents.extend((m - 1) * k + r for r in range(1, k))
    return PlaneTree(tuple(parents))


def tree_1k(bottom: DyckPath, k: int) -> PlaneTree:
    return subdivide_tree(path_to_tree(mirror(bottom)), k)


def tree_k1(bottom: DyckPath, k: int) -> PlaneTree:
    return subdivide_tree(path_to_tree(bottom), k)


def up_chains(bottom: DyckPath, k: int) -> List[List[int]]:
    """Chain of the i-th U from the right of λ, top to bottom.

    The chord (u, d) of λ is edge #{D at positions >= d} of mirror λ.
    """

    pairs = sorted(chord_pairs(bottom), key=lambda pair: -pair.i)
    downs = [p for p, s in enumerate(bottom.steps, start=1) if s == "D"]
    chains = []
    for pair in pairs:
        m = sum(1 for d in downs if d >= pair.j)
        chains.append(list(range((m - 1) * k + 1, m * k + 1)))
    return chains


def down_chains(bottom: DyckPath, k: int) -> List[List[int]]:
    """Chain of the i-th D from the left of λ', top to bottom."""

    pairs = chord_pairs(bottom)
    edge_of_d = {pair.j: m for m, pair in enumerate(pairs, start=1)}
    chains = []
    for position, step in enumerate(bottom.steps, start=1):
        if step == "D":
            m = edge_of_d[position]
            chains.append(list(range((m - 1) * k + 1, m * k + 1)))
    return chains


def label_of_sets_1k(fam: SetFamily, bottom: DyckPath, k: int) -> LabeledTree:
    """Decreasing label: S_i on the chain of the i-th U from the right."""

    if fam.n != bottom.size or fam.k != k:
        raise InvalidInput("family does not match the bottom path")
    tree = tree_1k(bottom, k)
    labels = [0] * tree.n
    for chain, s in zip(up_chains(bottom, k), fam.sets):
        for e, value in zip(chain, sorted(s, reverse=True)):
            labels[e - 1] = value
    return LabeledTree(tree, tuple(labels), "decreasing")


def sets_of_label_1k(label: LabeledTree, bottom: DyckPath, k: int) -> SetFamily:
    return SetFamily(tuple(frozenset(label(e) for e in chain) for chain in up_chains(bottom, k)))


def label_of_sets_k1(fam: SetFamily, bottom: DyckPath, k: int) -> LabeledTree:
    """Increasing label: Q_i on the chain of the i-th D from the left."""

    if fam.n != bottom.size or fam.k != k:
        raise InvalidInput("family does not match the bottom path")
    tree = tree_k1(bottom, k)
    labels = [0] * tree.n
    for chain, q in zip(down_chains(bottom, k), fam.sets):
        for e, value in zip(chain, sorted(q)):
            labels[e - 1] = value
    return LabeledTree(tree, tuple(labels), "increasing")


def sets_of_label_k1(label: LabeledTree, bottom: DyckPath, k: int) -> SetFamily:
    return SetFamily(tuple(frozenset(label(e) for e in chain) for chain in down_chains(bottom, k)))


def phi(label: LabeledTree) -> LabeledTree:
    """Complement the labels inside every root subtree; flips the direction."""

    tree = label.tree
    labels = list(label.labels)
    for root_edge in tree.children(0):
        edges = tree.subtree(root_edge)
        values = sorted(label(e) for e in edges)
        rank = {v: r for r, v in enumerate(values)}
        m = len(values)
        for e in edges:
            labels[e - 1] = values[m - 1 - rank[label(e)]]
    flipped = "increasing" if label.direction == "decreasing" else "decreasing"
    return LabeledTree(tree, tuple(labels), flipped)


# ----------------------------------------------------------------------------
# τ side: (1,k)
# ----------------------------------------------------------------------------


def tau_1k_of(fam: SetFamily, bottom: DyckPath, k: int) -> TauSeq:
    return tau_of_label(label_of_sets_1k(fam, bottom, k))


def family_of_tau_1k(tau: TauSeq, bottom: DyckPath, k: int) -> SetFamily:
    return sets_of_label_1k(label_of_tau(tau), bottom, k)


def blocks_of(tau: TauSeq, bottom: DyckPath, k: int) -> List[Tuple[int, ...]]:
    """τ positions of each S_i: v -> nk + 1 - v."""

    fam = family_of_tau_1k(tau, bottom, k)
    total = fam.n * k
    return [tuple(sorted(total + 1 - v for v in s)) for s in fam.sets]


def _valid_1k(entries: Sequence[int], bottom: DyckPath, k: int, tree: PlaneTree) -> Optional[TauSeq]:
    try:
        tau = TauSeq(tuple(entries), tree)
        mu_from_sets(family_of_tau_1k(tau, bottom, k))
    except InvalidInput as exc:
        logger.debug("rejected block move %s: %s", list(entries), exc)
        return None
    return tau


def upper_tau_1k_covers(
    tau: TauSeq, bottom: DyckPath, k: int, blocks: Optional[Sequence[Sequence[int]]] = None
) -> List[TauSeq]:
    """Block rotations.

    For a block j_1 < ... < j_k and p < j_1 outside it: every q in (p, j_k)
    outside the block has τ_q >= τ_{j_1}, and τ_p <= τ_{j_1} - 2. Then
    τ'_p = τ_{j_1} - 2, τ'_{j_r} = τ_{j_{r+1}} - 2 and τ'_{j_k} = τ_p.
    """

    blocks = blocks_of(tau, bottom, k) if blocks is None else blocks
    t = (0,) + tau.entries  # 1-based
    found: List[TauSeq] = []
    for block in blocks:
        block = sorted(block)
        if len(block) != k:
            raise InvalidInput(f"malformed block {block} for k={k}")
        first, last = block[0], block[-1]
        for p in range(1, first):
            if t[p] > t[first] - 2:
                continue
            if any(t[q] < t[first] for q in range(p + 1, last) if q not in block):
                continue
            moved = list(t)
            moved[p] = t[first] - 2
            for r in range(len(block) - 1):
                moved[block[r]] = t[block[r + 1]] - 2
            moved[last] = t[p]
            upper = _valid_1k(moved[1:], bottom, k, tau.tree)
            if upper is not None:
                found.append(upper)
    return sorted(set(found), key=lambda item: item.entries)


def tau_1k_covers(
    tau: TauSeq, other: TauSeq, bottom: DyckPath, k: int, blocks: Optional[Sequence[Sequence[int]]] = None
) -> bool:
    return other in upper_tau_1k_covers(tau, bottom, k, blocks)


def tau_1k_poset(seed: TauSeq, bottom: DyckPath, k: int) -> nx.DiGraph:
    return expand_up_set(
        seed,
        lambda t: upper_tau_1k_covers(t, bottom, k),
        env.max_poset_elements(),
        label=f"(1,{k}) poset of {seed}",
    )


# ----------------------------------------------------------------------------
# η side: (k,1)
# ----------------------------------------------------------------------------


def _eta_count(tree: PlaneTree, edge: int, others: Sequence[int]) -> int:
    left = sum(1 for f in others if tree.strictly_right(edge, f))
    above = sum(1 for f in others if tree.is_ancestor(f, edge))
    return 2 * left + above


def eta_of_label(label: LabeledTree) -> Tuple[int, ...]:
    """η_i: among smaller labels, twice those strictly left of e(i) plus its ancestors."""

    if label.direction != "increasing":
        raise InvalidInput("η is defined for increasing labels")
    out = []
    for value in range(1, label.n + 1):
        edge = label.edge_of(value)
        smaller = [label.edge_of(j) for j in range(1, value)]
        out.append(_eta_count(label.tree, edge, smaller))
    return tuple(out)


def label_of_eta(eta: Sequence[int], tree: PlaneTree) -> LabeledTree:
    if len(eta) != tree.n:
        raise InvalidInput(f"η has {len(eta)} entries for {tree.n} edges")
    remaining = set(tree.edges)
    labels = [0] * tree.n
    for value in range(tree.n, 0, -1):
        matches = [
            e
            for e in sorted(remaining)
            if not any(c in remaining for c in tree.children(e))
            and _eta_count(tree, e, [f for f in remaining if f != e]) == eta[value - 1]
        ]
        if not matches:
            raise InvalidInput(f"η={list(eta)} does not decode on {tree}", offender=tuple(eta))
        if len(matches) > 1:
            raise InvariantViolation(f"η decoding is ambiguous at label {value}")
        labels[matches[0] - 1] = value
        remaining.discard(matches[0])
    return LabeledTree(tree, tuple(labels), "increasing")


def upper_eta_covers(eta: Sequence[int], bottom: DyckPath, k: int) -> List[Tuple[int, ...]]:
    """η covers, transported through φ from the (1,k) side over mirror(λ')."""

    tree = tree_k1(bottom, k)
    tau = tau_of_label(phi(label_of_eta(eta, tree)))
    out = []
    for upper in upper_tau_1k_covers(tau, mirror(bottom), k):
        out.append(eta_of_label(phi(label_of_tau(upper))))
    return sorted(set(out))


def eta_blocks(eta: Sequence[int], bottom: DyckPath, k: int) -> List[Tuple[int, ...]]:
    """η positions of each Q_i; position i carries label i."""

    fam = sets_of_label_k1(label_of_eta(eta, tree_k1(bottom, k)), bottom, k)
    return [tuple(sorted(q)) for q in fam.sets]


def _decodable_k1(entries: Sequence[int], bottom: DyckPath, k: int) -> bool:
    try:
        xi_from_sets(sets_of_label_k1(label_of_eta(entries, tree_k1(bottom, k)), bottom, k))
    except InvalidInput as exc:
        logger.warning("block move leaves the decodable range: η=%s (%s)", list(entries), exc)
        return False
    return True


def block_eta_covers(
    eta: Sequence[int], bottom: DyckPath, k: int, blocks: Optional[Sequence[Sequence[int]]] = None
) -> List[Tuple[int, ...]]:
    """η covers by the block rule on Q-blocks.

    For a block j_1 < ... < j_k and p > j_k: every q in [j_1, p] outside the
    block and p has η_q >= max(η_block, η_p), and η_p >= max(η_block, 2k).
    Then η'_{j_1} = η_p - 2k, η'_{j_r} = η_{j_{r-1}} and η'_p = η_{j_k}.
    Moves that leave the decodable range are logged and dropped.
    """

    blocks = eta_blocks(eta, bottom, k) if blocks is None else blocks
    e = (0,) + tuple(eta)  # 1-based
    n = len(eta)
    found = set()
    for block in blocks:
        block = sorted(block)
        if len(block) != k:
            raise InvalidInput(f"malformed block {block} for k={k}")
        first, last = block[0], block[-1]
        top = max(e[j] for j in block)
        for p in range(last + 1, n + 1):
            if e[p] < top or e[p] < 2 * k:
                continue
            floor = max(top, e[p])
            if any(e[q] < floor for q in range(first, p) if q not in block):
                continue
            moved = list(e)
            moved[first] = e[p] - 2 * k
            for r in range(1, len(block)):
                moved[block[r]] = e[block[r - 1]]
            moved[p] = e[last]
            if _decodable_k1(moved[1:], bottom, k):
                found.add(tuple(moved[1:]))
    return sorted(found)


ETA_RULES = ("transported", "block")


def _eta_rule(rule: str):
    if rule not in ETA_RULES:
        raise InvalidInput(f"η rule must be one of {ETA_RULES}, got {rule!r}")
    return upper_eta_covers if rule == "transported" else block_eta_covers


def eta_covers(
    eta: Sequence[int],
    other: Sequence[int],
    bottom: DyckPath,
    k: int,
    blocks: Optional[Sequence[Sequence[int]]] = None,
) -> bool:
    """Block-rule cover test; ``blocks`` defaults to the Q-blocks of ``eta``."""

    return tuple(other) in block_eta_covers(eta, bottom, k, blocks)


def eta_poset(seed: Sequence[int], bottom: DyckPath, k: int, rule: str = "transported") -> nx.DiGraph:
    upper = _eta_rule(rule)
    return expand_up_set(
        tuple(seed),
        lambda e: upper(e, bottom, k),
        env.max_poset_elements(),
        label=f"({k},1) poset of {tuple(seed)} by the {rule} rule",
    )


@dataclass
class EtaCoverMismatch:
    eta: Tuple[int, ...]
    block_only: List[Tuple[int, ...]]
    transported_only: List[Tuple[int, ...]]


def eta_cover_mismatches(seed: Sequence[int], bottom: DyckPath, k: int) -> List[EtaCoverMismatch]:
    """Elements of the η poset where the block rule and the φ-transported covers differ."""

    mismatches = []
    for eta in sorted(eta_poset(seed, bottom, k)):
        block = set(block_eta_covers(eta, bottom, k))
        transported = set(upper_eta_covers(eta, bottom, k))
        if block != transported:
            mismatch = EtaCoverMismatch(eta, sorted(block - transported), sorted(transported - block))
            logger.warning("η covers disagree at %s: %s", eta, mismatch)
            mismatches.append(mismatch)
    return mismatches
    return mismatches


def dual_family(fam: SetFamily, bottom: DyckPath, k: int) -> SetFamily:
    """S-family above 𝔻^k(λ) -> Q-family above 𝕌^k(mirror λ)."""

    increasing = phi(label_of_sets_1k(fam, bottom, k))
    return sets_of_label_k1(increasing, mirror(bottom), k)


# ----------------------------------------------------------------------------
# Trivial (1,k) and (k,1) tilings
# ----------------------------------------------------------------------------


def mu_of_top(bottom: DyckPath, top: str, k: int) -> Tuple[int, ...]:
    """μ_i = #D before the i-th U from the right of the top path."""

    return tuple(reversed(x_positions(top)))


def top_of_mu(bottom: DyckPath, mu: Sequence[int], k: int) -> str:
    return word_from_x(list(reversed(mu)), bottom.size * k)


def is_trivial_mu(bottom: DyckPath, mu: Sequence[int], k: int) -> bool:
    xs = list(reversed(mu))
    floor = x_positions(expand_D(bottom, k).steps)
    return all(p <= q for p, q in zip(xs, xs[1:])) and all(x <= f for x, f in zip(xs, floor))


def is_trivial_family(fam: SetFamily, bottom: DyckPath, k: int) -> bool:
    return is_trivial_mu(bottom, mu_from_sets(fam), k)


def xi_of_top(bottom: DyckPath, top: str, k: int) -> Tuple[int, ...]:
    """ξ_i = boxes in the column above the i-th D of 𝕌^k(λ')."""

    floor = y_positions(expand_U(bottom, k).steps)
    return tuple(t - f for t, f in zip(y_positions(top), floor))


def top_of_xi(bottom: DyckPath, xi: Sequence[int], k: int) -> str:
    floor = y_positions(expand_U(bottom, k).steps)
    return word_from_y([f + v for f, v in zip(floor, xi)], bottom.size * k)


# ----------------------------------------------------------------------------
# (a,b) tilings with floor tiles
# ----------------------------------------------------------------------------


def tile_size(tile: DyckTile, a: int, b: int) -> int:
    return len(tile.shape) // (a + b)


def tile_weight(tile: DyckTile, a: int, b: int) -> int:
    """(a + b - 1) m + 1 for a tile of size m."""

    return (a + b - 1) * tile_size(tile, a, b) + 1


@dataclass(frozen=True)
class RationalTiling:
    """Region between two (a,b)-paths; ``tiles`` are the non-trivial floor tiles."""

    a: int
    b: int
    bottom: str
    top: str
    tiles: Tuple[DyckTile, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tiles", tuple(sorted(self.tiles)))
        if len(self.bottom) != len(self.top) or not is_weakly_above(DyckPath(self.top), DyckPath(self.bottom)):
            raise InvalidInput(f"{self.top} is not weakly above {self.bottom}")
        seen: Set[Box] = set()
        for tile in self.tiles:
            cells = set(tile.boxes())
            if not cells <= self.boxes or cells & seen:
                raise InvalidInput(f"tile {tile} does not fit the region", offender=tile)
            seen |= cells

    @cached_property
    def boxes(self) -> FrozenSet[Box]:
        return frozenset(region_boxes(height_profile(self.bottom), height_profile(self.top)))

    @property
    def trivial_boxes(self) -> FrozenSet[Box]:
        covered = {box for tile in self.tiles for box in tile.boxes()}
        return self.boxes - covered

    @property
    def is_trivial(self) -> bool:
        return not self.tiles

    @property
    def base(self) -> DyckPath:
        return collapse(self.bottom, self.a, self.b)

    def __str__(self) -> str:
        extra = "".join(f" +{t.anchor}:{t.shape}" for t in self.tiles)
        return f"{self.top}{extra}"


def wt_ab(tiling: RationalTiling) -> int:
    return len(tiling.trivial_boxes) + sum(tile_weight(t, tiling.a, tiling.b) for t in tiling.tiles)


def rational_tiling_to_dict(tiling: RationalTiling) -> dict:
    return {
        "schema": RATIONAL_TILING_SCHEMA,
        "a": tiling.a,
        "b": tiling.b,
        "kind": "trivial" if tiling.is_trivial else "non-trivial",
        "bottom": tiling.bottom,
        "top": tiling.top,
        "tiles": [{"anchor": list(t.anchor), "shape": t.shape} for t in tiling.tiles],
        "weight": wt_ab(tiling),
    }


def column_of(bottom: str, box: Box) -> int:
    """0-based index of the D step whose column holds ``box``."""

    heights = height_profile(bottom)
    column = 0
    for s, step in enumerate(bottom):
        if step != "D":
            continue
        t = box[0] - s - 1
        if t >= 0 and heights[s] + t == box[1]:
            return column
        column += 1
    raise InvariantViolation(f"box {box} lies in no column of {bottom}")


def column_counts(bottom: str, top: str) -> Tuple[int, ...]:
    """Boxes above every D step (vertical Hermite history of the trivial tiling)."""

    return tuple(t - f for t, f in zip(y_positions(top), y_positions(bottom)))


def row_counts(bottom: str, top: str) -> Tuple[int, ...]:
    """Boxes left of every U step (horizontal Hermite history of the trivial tiling)."""

    return tuple(f - t for t, f in zip(x_positions(top), x_positions(bottom)))


def floor_placements(bottom: str, a: int, b: int) -> List[DyckTile]:
    """Every non-trivial floor tile 𝕌^a𝔻^b(σ) whose lower boundary lies on ``bottom``.

    The tile sits on a segment D·𝕌^a𝔻^b(σ)·U with the shape starting on a
    letter boundary of λ.
    """

    base = collapse(bottom, a, b)
    starts = set()
    position = 0
    for step in base.steps:
        starts.add(position)
        position += a if step == "U" else b
    heights = height_profile(bottom)
    tiles = []
    for m in range(1, base.size):
        for sigma in enumerate_paths(m, bound=base.size):
            shape = expand_UD(sigma, a, b).steps
            pattern = "D" + shape + "U"
            for p in range(len(bottom) - len(pattern) + 1):
                if p + 1 in starts and bottom.startswith(pattern, p):
                    tiles.append(DyckTile((p + 1, heights[p]), shape))
    return sorted(tiles)


def trivial_rational_tilings(bottom: str, top: str, a: int, b: int) -> List[RationalTiling]:
    return [
        RationalTiling(a, b, bottom, nu.steps)
        for nu in paths_between(DyckPath(bottom), DyckPath(top))
    ]


def upper_rational_covers(tiling: RationalTiling) -> List[RationalTiling]:
    """Drop one trivial box, or merge tiles into a floor tile losing exactly one unit of weight."""

    a, b = tiling.a, tiling.b
    floor = height_profile(tiling.bottom)
    out: List[RationalTiling] = []
    for box in sorted(tiling.trivial_boxes):
        remaining = set(tiling.boxes) - {box}
        heights = top_profile(floor, remaining)
        try:
            word = profile_word(heights)
        except InvalidInput:
            continue
        if region_boxes(floor, heights) != remaining:
            continue
        out.append(RationalTiling(a, b, tiling.bottom, word, tiling.tiles))
    for candidate in floor_placements(tiling.bottom, a, b):
        cells = set(candidate.boxes())
        if candidate in tiling.tiles or not cells <= tiling.boxes:
            continue
        inside = [t for t in tiling.tiles if cells & set(t.boxes())]
        if any(not set(t.boxes()) <= cells for t in inside):
            continue
        covered = {box for t in inside for box in t.boxes()}
        removed = len(cells - covered) + sum(tile_weight(t, a, b) for t in inside)
        if removed - tile_weight(candidate, a, b) != 1:
            continue
        kept = tuple(t for t in tiling.tiles if t not in inside) + (candidate,)
        out.append(RationalTiling(a, b, tiling.bottom, tiling.top, kept))
    return sorted(set(out), key=lambda t: (t.top, t.tiles))


# ----------------------------------------------------------------------------
# Vertical Hermite histories
# ----------------------------------------------------------------------------


def _split(value: int, part: int, parts: int) -> int:
    """``part``-th (1-based) piece of the descending split of ``value`` into ``parts``."""

    return max(0, -(-(value - part + 1) // parts))


@dataclass(frozen=True)
class VHHTuple:
    histories: Tuple[Tuple[int, ...], ...]
    tiles: Tuple[Tuple[int, DyckTile], ...] = ()

    def interleaving_ok(self) -> bool:
        for j, k in itertools.combinations(range(len(self.histories)), 2):
            for vj, vk in zip(self.histories[j], self.histories[k]):
                if not vk <= vj <= vk + 1:
                    return False
        return True

    def compressed(self, left: int = 0, right: int = 0) -> str:
        rows = []
        for history in self.histories:
            window = history[left:len(history) - right if right else None]
            rows.append("".join(str(v) for v in window))
        return "/".join(rows)


def vhh_window(vhh: VHHTuple) -> Tuple[int, int]:
    """Leading and trailing columns that are zero in every history."""

    width = len(vhh.histories[0]) if vhh.histories else 0
    nonzero = [c for c in range(width) if any(h[c] for h in vhh.histories)]
    if not nonzero:
        return 0, 0
    return nonzero[0], width - 1 - nonzero[-1]


def _tile_correction_columns(tiling: RationalTiling, tile: DyckTile) -> List[int]:
    """Columns of the last box of every D-run of the tile shape."""

    boxes = tile.boxes()
    columns = []
    for index, step in enumerate(tile.shape):
        if step == "D" and (index + 1 == len(tile.shape) or tile.shape[index + 1] != "D"):
            columns.append(column_of(tiling.bottom, boxes[index + 1]))
    return columns


def vhh_of_tiling(tiling: RationalTiling) -> VHHTuple:
    counts = column_counts(tiling.bottom, tiling.top)
    a = tiling.a
    histories = [[_split(c, j, a) for c in counts] for j in range(1, a + 1)]
    placed = []
    for tile in tiling.tiles:
        columns = sorted({column_of(tiling.bottom, box) for box in tile.boxes()})
        part = next((j for j in range(a) if all(histories[j][c] >= 1 for c in columns)), None)
        if part is None:
            raise InvariantViolation(f"no (1,{tiling.b}) part holds tile {tile}")
        for c in _tile_correction_columns(tiling, tile):
            histories[part][c] -= 1
        placed.append((part + 1, tile))
    return VHHTuple(tuple(tuple(h) for h in histories), tuple(placed))


def tiling_of_vhh(vhh: VHHTuple, bottom: str, a: int, b: int) -> RationalTiling:
    if not vhh.interleaving_ok():
        raise InvalidInput(f"histories {vhh.compressed()} violate the interleaving constraint")
    counts = [sum(column) for column in zip(*vhh.histories)]
    probe = RationalTiling(a, b, bottom, bottom)
    for _, tile in vhh.tiles:
        for c in _tile_correction_columns(probe, tile):
            counts[c] += 1
    top = word_from_y([f + c for f, c in zip(y_positions(bottom), counts)], bottom.count("U"))
    return RationalTiling(a, b, bottom, top, tuple(tile for _, tile in vhh.tiles))


def vhh_covers(vhh: VHHTuple, other: VHHTuple, bottom: str, a: int, b: int) -> bool:
    lower = tiling_of_vhh(vhh, bottom, a, b)
    upper = tiling_of_vhh(other, bottom, a, b)
    return upper in upper_rational_covers(lower)


def vhh_poset(seed: RationalTiling) -> nx.DiGraph:
    """Tilings below ``seed``; graded by weight loss from the seed."""

    env.check_rational_size(seed.base.size, seed.a, seed.b)
    return expand_up_set(seed, upper_rational_covers, env.max_poset_elements(), label=f"VHH poset of {seed}")


def tiling_from_columns(bottom: DyckPath, a: int, b: int, counts: Sequence[int]) -> RationalTiling:
    word = expand_UD(bottom, a, b).steps
    top = word_from_y([f + c for f, c in zip(y_positions(word), counts)], word.count("U"))
    return RationalTiling(a, b, word, top)


# ----------------------------------------------------------------------------
# Decompositions
# ----------------------------------------------------------------------------


def admissible(smaller: Sequence[int], larger: Sequence[int]) -> bool:
    """larger - 1 <= smaller <= larger componentwise."""

    return all(l - 1 <= s <= l for s, l in zip(smaller, larger))


def _dyck_tiling_from_rows(base: DyckPath, counts: Sequence[int]) -> DyckTiling:
    floor = x_positions(base.steps)
    top = word_from_x([f - c for f, c in zip(floor, counts)], base.size)
    return path_to_trivial_tiling(base, DyckPath(top))


@dataclass
class OneKDecomposition:
    tilings: List[DyckTiling]
    labels: List[LabeledTree]
    counts: List[Tuple[int, ...]]

    def admissible(self) -> bool:
        return all(
            admissible(self.counts[i], self.counts[j])
            for i, j in itertools.combinations(range(len(self.counts)), 2)
        )


def decompose_1k(tiling: RationalTiling) -> OneKDecomposition:
    """Split a (1,k)-tiling into k Dyck tilings, fewest boxes first.

    Row counts c split as ceil((c - i + 1) / k); the i-th piece from the end
    comes first, so consecutive pieces grow by at most one box per row.
    Non-trivial tiles shrink into the last piece, which keeps its row counts.
    """

    if tiling.a != 1:
        raise InvalidInput("decompose_1k needs a (1,k)-tiling")
    k = tiling.b
    base = tiling.base
    rows = row_counts(tiling.bottom, tiling.top)
    parts = [tuple(_split(c, i, k) for c in rows) for i in range(k, 0, -1)]
    tilings = [_dyck_tiling_from_rows(base, p) for p in parts]
    for tile in tiling.tiles:
        tilings[-1] = _merge_into_dyck(tilings[-1], tiling, tile)
    labels = [hermite_history(t)[1] for t in tilings]
    return OneKDecomposition(tilings, labels, parts)


def decompose_mu(bottom: DyckPath, mu: Sequence[int], k: int) -> OneKDecomposition:
    word = expand_D(bottom, k).steps
    return decompose_1k(RationalTiling(1, k, word, top_of_mu(bottom, mu, k)))


@dataclass
class GridDecomposition:
    """D[i][j] for rows i = 1..a and columns j = 1..b (0-based lists)."""

    grid: List[List[DyckTiling]]

    def weights(self) -> List[List[int]]:
        return [[weight(t) for t in row] for row in self.grid]

    def admissible(self) -> bool:
        rows = [[row_counts(t.bottom.steps, t.top.steps) for t in row] for row in self.grid]
        cols = [[column_counts(t.bottom.steps, t.top.steps) for t in row] for row in self.grid]
        a, b = len(self.grid), len(self.grid[0]) if self.grid else 0
        for i in range(a):
            for j, jj in itertools.combinations(range(b), 2):
                if not admissible(rows[i][j], rows[i][jj]):
                    return False
        for j in range(b):
            for i, ii in itertools.combinations(range(a), 2):
                if not admissible(cols[i][j], cols[ii][j]):
                    return False
        return True


def decompose_ab(tiling: RationalTiling) -> GridDecomposition:
    """a x b grid of Dyck tilings above λ; D[a][b] receives every non-trivial tile."""

    a, b = tiling.a, tiling.b
    base = tiling.base
    counts = column_counts(tiling.bottom, tiling.top)
    histories = [[_split(c, j, a) for c in counts] for j in range(1, a + 1)]
    middle = expand_D(base, b).steps
    grid: List[List[DyckTiling]] = []
    for i in range(1, a + 1):
        history = histories[a - i]
        top = word_from_y([f + v for f, v in zip(y_positions(middle), history)], base.size)
        rows = row_counts(middle, top)
        grid.append([_dyck_tiling_from_rows(base, [_split(r, b + 1 - j, b) for r in rows]) for j in range(1, b + 1)])
    for tile in tiling.tiles:
        grid[a - 1][b - 1] = _merge_into_dyck(grid[a - 1][b - 1], tiling, tile)
    return GridDecomposition(grid)


def _merge_into_dyck(target: DyckTiling, tiling: RationalTiling, tile: DyckTile) -> DyckTiling:
    a, b = tiling.a, tiling.b
    base = tiling.base
    start = tile.anchor[0]
    position = 0
    letter = None
    for index, step in enumerate(base.steps):
        if position == start:
            letter = index
            break
        position += a if step == "U" else b
    if letter is None:
        raise InvariantViolation(f"tile {tile} does not start on a letter boundary")
    m = tile_size(tile, a, b)
    sigma = base.steps[letter:letter + 2 * m]
    heights = base.heights()
    small = DyckTile((letter, heights[letter - 1]), sigma)
    cells = set(small.boxes())
    if not cells <= target.boxes:
        raise InvariantViolation(f"tile {small} is not inside {target.top}")
    kept = tuple(t for t in target.tiles if t.anchor not in cells)
    return DyckTiling(target.bottom, kept + (small,))


def weight_sum_check(tiling: RationalTiling) -> bool:
    grid = decompose_ab(tiling)
    return wt_ab(tiling) == sum(sum(row) for row in grid.weights())


def dual_tiling(tiling: RationalTiling) -> RationalTiling:
    """Transpose a (1,k)-tiling into a (k,1)-tiling by mirroring both paths."""

    length = len(tiling.bottom)
    drop = height_profile(tiling.bottom)[-1]
    swap = {"U": "D", "D": "U"}

    def flip(word: str) -> str:
        return "".join(swap[s] for s in reversed(word))

    tiles = []
    for tile in tiling.tiles:
        last = tile.boxes()[-1]
        tiles.append(DyckTile((length - last[0], last[1] - drop), flip(tile.shape)))
    return RationalTiling(tiling.b, tiling.a, flip(tiling.bottom), flip(tiling.top), tuple(tiles))
