"""Non-transitive dice: enumeration, beating graphs, and graph distances.

A die is a canonical (non-decreasing) tuple of integer faces.  All arithmetic
in this module is exact — integer win counts, Fraction-valued constants —
and is converted to floats only at distance-matrix assembly.

Two tie conventions for "Y beats X" are supported, because win counts can
include ties:

* ``strict``   — wins / n² > 1/2  (ties count against both sides)
* ``majority`` — wins > losses    (ties are ignored)

The default space DT(6) is all 6-sided dice with faces in 1..6 summing to 21.
"""

from __future__ import annotations

import collections
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .metrics import DistanceMatrix

Die = Tuple[int, ...]

TIE_CONVENTIONS = ("strict", "majority")
SYMMETRY_PAIRINGS = ("literal", "opposite")

DICE_METRICS = ("similarity", "euclidean", "foliation-symmetry")


class BudgetExceededError(ValueError):
    """Exhaustive search rejected: the graph exceeds the node budget."""


class UnreachableNodeError(ValueError):
    """No directed path exists between two nodes of the beating graph."""


def make_die(faces: Iterable[int], max_face: int) -> Die:
    """Canonicalize a face multiset into a sorted tuple, validating range."""
    t = tuple(sorted(int(f) for f in faces))
    if not t:
        raise ValueError("a die needs at least one face")
    if t[0] < 1 or t[-1] > max_face:
        raise ValueError(f"faces must lie in [1, {max_face}], got {t}")
    return t


def die_label(d: Die) -> str:
    """Render a die as concatenated digits (comma-joined when faces > 9)."""
    if all(f <= 9 for f in d):
        return "".join(str(f) for f in d)
    return ",".join(str(f) for f in d)


def parse_die(text: str) -> Die:
    """Inverse of :func:`die_label`: digits string or comma-separated faces."""
    text = text.strip()
    if "," in text:
        faces = [int(tok) for tok in text.split(",")]
    else:
        if not text.isdigit():
            raise ValueError(f"cannot parse die {text!r}")
        faces = [int(ch) for ch in text]
    return tuple(sorted(faces))


@dataclass(frozen=True)
class DiceSpace:
    """All canonical dice with given side count, face bound, and face sum."""

    sides: int
    max_face: int
    face_sum: Optional[int]
    dice: Tuple[Die, ...]


def enumerate_dice(sides: int, max_face: int, face_sum: int) -> DiceSpace:
    """Enumerate every non-decreasing tuple with the given sum, once each,
    in lexicographic order.  An infeasible sum yields an empty space."""
    if sides < 1 or max_face < 1:
        raise ValueError("sides and max_face must be positive")
    out: List[Die] = []

    def rec(prefix: List[int], lo: int, remaining: int, slots: int) -> None:
        if slots == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for v in range(lo, max_face + 1):
            rest = remaining - v
            # The remaining slots must be fillable with values in [v, max_face].
            if rest < v * (slots - 1) or rest > max_face * (slots - 1):
                continue
            prefix.append(v)
            rec(prefix, v, rest, slots - 1)
            prefix.pop()

    rec([], 1, face_sum, sides)
    return DiceSpace(sides=sides, max_face=max_face, face_sum=face_sum, dice=tuple(out))


class WinCount(collections.namedtuple("WinCount", ["wins", "ties", "losses"])):
    """Exhaustive face-pair outcome counts for an ordered pair of dice."""

    @property
    def total(self) -> int:
        return self.wins + self.ties + self.losses

    def label(self) -> str:
        return f"{self.wins}/{self.total}"


def beating_probability(x: Die, y: Die) -> WinCount:
    """Count all n² ordered face pairs of ``x`` rolled against ``y``."""
    if len(x) != len(y):
        raise ValueError(f"side counts differ: {len(x)} vs {len(y)}")
    wins = ties = 0
    for a in x:
        for b in y:
            if a > b:
                wins += 1
            elif a == b:
                ties += 1
    return WinCount(wins, ties, len(x) * len(y) - wins - ties)


def beats(x: Die, y: Die, convention: str) -> bool:
    """Whether ``x`` beats ``y`` under the given tie convention."""
    wc = beating_probability(x, y)
    if convention == "strict":
        return 2 * wc.wins > wc.total
    if convention == "majority":
        return wc.wins > wc.losses
    raise ValueError(f"unknown tie convention {convention!r}; choose from {TIE_CONVENTIONS}")


@dataclass(frozen=True)
class BeatingGraph:
    """Directed graph with an edge X → Y whenever X beats Y.

    Nodes are kept in lexicographic order; every edge stores its exact win
    count.  ``succ`` maps each node to its sorted successor tuple.
    """

    nodes: Tuple[Die, ...]
    succ: Dict[Die, Tuple[Die, ...]]
    win_counts: Dict[Tuple[Die, Die], WinCount]
    convention: str

    @property
    def n(self) -> int:
        return len(self.nodes)

    def edges(self) -> List[Tuple[Die, Die]]:
        return [(x, y) for x in self.nodes for y in self.succ[x]]

    def predecessors(self, y: Die) -> Tuple[Die, ...]:
        return tuple(x for x in self.nodes if y in set(self.succ[x]))


def build_beating_graph(space: DiceSpace, convention: str) -> BeatingGraph:
    if convention not in TIE_CONVENTIONS:
        raise ValueError(
            f"unknown tie convention {convention!r}; choose from {TIE_CONVENTIONS}"
        )
    nodes = tuple(sorted(space.dice))
    succ: Dict[Die, Tuple[Die, ...]] = {}
    win_counts: Dict[Tuple[Die, Die], WinCount] = {}
    for x in nodes:
        out: List[Die] = []
        for y in nodes:
            if x == y:
                continue
            wc = beating_probability(x, y)
            ok = 2 * wc.wins > wc.total if convention == "strict" else wc.wins > wc.losses
            if ok:
                out.append(y)
                win_counts[(x, y)] = wc
        succ[x] = tuple(out)
    return BeatingGraph(nodes=nodes, succ=succ, win_counts=win_counts, convention=convention)


def induced_subgraph(g: BeatingGraph, keep: Iterable[Die]) -> BeatingGraph:
    keep_set = frozenset(keep)
    missing = keep_set - set(g.nodes)
    if missing:
        raise ValueError(f"nodes not in graph: {sorted(missing)}")
    nodes = tuple(sorted(keep_set))
    succ = {x: tuple(y for y in g.succ[x] if y in keep_set) for x in nodes}
    win_counts = {
        (x, y): g.win_counts[(x, y)] for x in nodes for y in succ[x]
    }
    return BeatingGraph(nodes=nodes, succ=succ, win_counts=win_counts, convention=g.convention)


def non_transitive_subset(g: BeatingGraph) -> Tuple[Die, ...]:
    """Nodes lying on at least one directed cycle of length >= 2.

    These are exactly the members of strongly connected components of size
    >= 2 (within an SCC there is a cycle through any two members, and a
    cycle is contained in one SCC).  Tarjan's algorithm, iteratively.
    """
    index: Dict[Die, int] = {}
    low: Dict[Die, int] = {}
    on_stack: set = set()
    stack: List[Die] = []
    counter = 0
    result: List[Die] = []

    for root in g.nodes:
        if root in index:
            continue
        # Each frame: (node, iterator position over successors)
        work: List[Tuple[Die, int]] = [(root, 0)]
        while work:
            v, i = work[-1]
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            advanced = False
            while i < len(g.succ[v]):
                w = g.succ[v][i]
                i += 1
                if w not in index:
                    work[-1] = (v, i)
                    work.append((w, 0))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp: List[Die] = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                if len(comp) >= 2:
                    result.extend(comp)
            if work:
                parent, pi = work[-1]
                low[parent] = min(low[parent], low[v])
    return tuple(sorted(result))


#: Exhaustive cycle search is exponential; refuse larger graphs by default.
LONGEST_CYCLE_BUDGET = 16


def longest_cycle(g: BeatingGraph, budget: int = LONGEST_CYCLE_BUDGET) -> List[Die]:
    """A maximum-length simple directed cycle, deterministically chosen.

    DFS over simple paths, restricted per start node to nodes that are not
    lexicographically smaller (every cycle is found from its smallest
    member).  Successors are scanned in lexicographic order and a strictly
    longer cycle is required to replace the incumbent, so ties resolve to
    the lexicographically first cycle discovered.  Returns [] when acyclic.
    """
    if g.n > budget:
        raise BudgetExceededError(
            f"graph has {g.n} nodes, exceeding the exhaustive-search budget {budget}"
        )
    order = {v: i for i, v in enumerate(g.nodes)}
    best: List[Die] = []

    def dfs(start: Die, v: Die, path: List[Die], seen: set) -> None:
        nonlocal best
        for w in g.succ[v]:
            if order[w] < order[start]:
                continue
            if w == start:
                if len(path) > len(best):
                    best = list(path)
                continue
            if w in seen:
                continue
            seen.add(w)
            path.append(w)
            dfs(start, w, path, seen)
            path.pop()
            seen.discard(w)

    for start in g.nodes:
        dfs(start, start, [start], {start})
    return best


def _bfs_hops(g: BeatingGraph, src: Die) -> Dict[Die, int]:
    dist = {src: 0}
    queue = collections.deque([src])
    while queue:
        v = queue.popleft()
        for w in g.succ[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def shortest_path_distance(g: BeatingGraph, x: Die, y: Die) -> int:
    """Directed hop count x→y plus y→x (unit edge weights).

    Symmetrizing by the round trip makes this a metric on any strongly
    connected graph; a missing path in either direction is surfaced as an
    error instead of a sentinel value.
    """
    for v in (x, y):
        if v not in set(g.nodes):
            raise ValueError(f"{die_label(v)} is not a node of the graph")
    if x == y:
        return 0
    fwd = _bfs_hops(g, x)
    if y not in fwd:
        raise UnreachableNodeError(f"no directed path {die_label(x)} -> {die_label(y)}")
    back = _bfs_hops(g, y)
    if x not in back:
        raise UnreachableNodeError(f"no directed path {die_label(y)} -> {die_label(x)}")
    return fwd[y] + back[x]


def shortest_path_matrix(g: BeatingGraph) -> List[List[int]]:
    """All-pairs round-trip hop counts, ordered like ``g.nodes``."""
    hops = {v: _bfs_hops(g, v) for v in g.nodes}
    n = g.n
    out = [[0] * n for _ in range(n)]
    for i, x in enumerate(g.nodes):
        for j in range(i + 1, n):
            y = g.nodes[j]
            if y not in hops[x]:
                raise UnreachableNodeError(
                    f"no directed path {die_label(x)} -> {die_label(y)}"
                )
            if x not in hops[y]:
                raise UnreachableNodeError(
                    f"no directed path {die_label(y)} -> {die_label(x)}"
                )
            out[i][j] = out[j][i] = hops[x][y] + hops[y][x]
    return out


def similarity_matrix(D: Sequence[Sequence[int]]) -> List[List[float]]:
    """Euclidean distances between shortest-path profile columns.

    Comparing columns i and j, the entries at BOTH positions i and j are
    removed from each column, so the profiles live in R^(n-2) and describe
    how the two nodes relate to the rest of the graph only.  Nodes with
    identical in/out neighborhoods come out at distance exactly 0.
    """
    n = len(D)
    out = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            total = 0
            for k in range(n):
                if k == i or k == j:
                    continue
                diff = D[k][i] - D[k][j]
                total += diff * diff
            out[i][j] = out[j][i] = math.sqrt(total)
    return out


def foliation(x: Die) -> int:
    """x₁ − 1 + 6 − x₆ for a 6-sided die with faces in 1..6.

    The constants 1 and 6 are part of the definition; other spaces are
    rejected rather than silently generalized.
    """
    if len(x) != 6 or x[0] < 1 or x[-1] > 6:
        raise ValueError(
            f"foliation is defined on 6-sided dice with faces in [1, 6], got {x}"
        )
    return x[0] - 1 + 6 - x[-1]


def symmetry(x: Die, pairing: str = "literal") -> Fraction:
    """Σ ((dᵢ + d_pair)/2 − 7/2)² over three face pairs, exact.

    ``literal`` pairs face i with face n−i — (d₁,d₅), (d₂,d₄), (d₃,d₃) —
    as the defining formula reads; ``opposite`` pairs face i with face
    n+1−i — (d₁,d₆), (d₂,d₅), (d₃,d₄) — the physically opposite faces.
    """
    if len(x) != 6:
        raise ValueError(f"symmetry is defined on 6-sided dice, got {len(x)} sides")
    if pairing == "literal":
        pairs = ((x[0], x[4]), (x[1], x[3]), (x[2], x[2]))
    elif pairing == "opposite":
        pairs = ((x[0], x[5]), (x[1], x[4]), (x[2], x[3]))
    else:
        raise ValueError(
            f"unknown symmetry pairing {pairing!r}; choose from {SYMMETRY_PAIRINGS}"
        )
    total = Fraction(0)
    for a, b in pairs:
        term = Fraction(a + b, 2) - Fraction(7, 2)
        total += term * term
    return total


def foliation_symmetry_distance(x: Die, y: Die, pairing: str = "literal") -> Fraction:
    """|(s(x) + f(x)) − (s(y) + f(y))| — a pullback of |·|, so a pseudometric
    that may vanish on distinct dice."""
    sx = symmetry(x, pairing) + foliation(x)
    sy = symmetry(y, pairing) + foliation(y)
    return abs(sx - sy)


def euclidean_dice(x: Die, y: Die) -> float:
    if len(x) != len(y):
        raise ValueError(f"side counts differ: {len(x)} vs {len(y)}")
    return math.sqrt(sum((a - b) ** 2 for a, b in zip(x, y)))


def _labels(nodes: Sequence[Die]) -> Tuple[str, ...]:
    return tuple(die_label(d) for d in nodes)


def similarity_distance_matrix(g: BeatingGraph) -> DistanceMatrix:
    """Similarity distances over the graph's nodes (floats only here)."""
    sim = similarity_matrix(shortest_path_matrix(g))
    return DistanceMatrix(
        entries=np.array(sim, dtype=float), labels=_labels(g.nodes), metric="similarity"
    )


def euclidean_dice_distance_matrix(nodes: Sequence[Die]) -> DistanceMatrix:
    n = len(nodes)
    d = np.zeros((n, n), dtype=float)
    for i in range(n):
        for j in range(i + 1, n):
            d[i, j] = d[j, i] = euclidean_dice(nodes[i], nodes[j])
    return DistanceMatrix(entries=d, labels=_labels(nodes), metric="euclidean")


def foliation_symmetry_distance_matrix(
    nodes: Sequence[Die], pairing: str = "literal"
) -> DistanceMatrix:
    n = len(nodes)
    values = [symmetry(x, pairing) + foliation(x) for x in nodes]
    d = np.zeros((n, n), dtype=float)
    for i in range(n):
        for j in range(i + 1, n):
            d[i, j] = d[j, i] = float(abs(values[i] - values[j]))
    return DistanceMatrix(
        entries=d, labels=_labels(nodes), metric="foliation-symmetry"
    )


def to_dot(g: BeatingGraph, name: str = "beating") -> str:
    """Render the graph in DOT format, deterministically ordered.

    Edges carry their exhaustive win counts as labels (``wins/total``).
    """
    lines = [f"digraph {name} {{"]
    lines.append(f'  // tie convention: {g.convention}')
    for v in g.nodes:
        lines.append(f'  "{die_label(v)}";')
    for x in g.nodes:
        for y in g.succ[x]:
            wc = g.win_counts[(x, y)]
            lines.append(f'  "{die_label(x)}" -> "{die_label(y)}" [label="{wc.label()}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
