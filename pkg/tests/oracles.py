"""Independent oracles the test suite checks the library against.

Everything here is deliberately brute force and shares no code with the
implementation under test: cliques by direct enumeration, cycle membership
by exhaustive DFS, simplex births by max pairwise distance.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Sequence, Set, Tuple

from ripsbars.metrics import DistanceMatrix


def flag_complex_brute(m: DistanceMatrix, eps: float, max_dim: int) -> Set[Tuple[int, ...]]:
    """Every vertex subset of size ≤ max_dim+1 that is pairwise within eps."""
    n = m.n
    simplices: Set[Tuple[int, ...]] = {(i,) for i in range(n)}
    for size in range(2, max_dim + 2):
        for combo in itertools.combinations(range(n), size):
            if all(m.entries[i, j] <= eps for i, j in itertools.combinations(combo, 2)):
                simplices.add(combo)
    return simplices


def simplex_birth_brute(m: DistanceMatrix, vertices: Sequence[int]) -> float:
    """A clique enters the filtration when its longest edge does."""
    if len(vertices) < 2:
        return 0.0
    return max(m.entries[i, j] for i, j in itertools.combinations(vertices, 2))


def cycle_nodes_brute(nodes: Sequence, succ: Dict) -> Set:
    """Nodes lying on at least one simple directed cycle (exhaustive DFS).

    Exponential; meant for graphs of ≤ 8 nodes.
    """
    on_cycle: Set = set()

    def walk(start, v, visited: Set) -> bool:
        for w in succ[v]:
            if w == start:
                return True
            if w in visited:
                continue
            visited.add(w)
            hit = walk(start, w, visited)
            visited.discard(w)
            if hit:
                return True
        return False

    for v in nodes:
        if walk(v, v, {v}):
            on_cycle.add(v)
    return on_cycle


def simple_cycles_brute(nodes: Sequence, succ: Dict) -> List[List]:
    """All simple directed cycles, each reported from its first node in
    ``nodes`` order (used to cross-check longest_cycle lengths)."""
    order = {v: i for i, v in enumerate(nodes)}
    cycles: List[List] = []

    def walk(start, v, path: List, visited: Set) -> None:
        for w in succ[v]:
            if order[w] < order[start]:
                continue
            if w == start:
                cycles.append(list(path))
                continue
            if w in visited:
                continue
            visited.add(w)
            path.append(w)
            walk(start, w, path, visited)
            path.pop()
            visited.discard(w)

    for v in nodes:
        walk(v, v, [v], {v})
    return cycles
