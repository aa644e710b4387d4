"""Tree walks, covering numbers, and box-counting dimension estimates.

A doubling walk visits every vertex of a tree, steps only along tree
edges, and uses each edge at most twice, so its length is at most
twice the tree's total length.  Covering numbers count the fewest
diameter-limited blocks needed to cover a point set; together with the
walk bound they convert separation into distance lower bounds, and a
log-log fit of covering numbers yields a (purely diagnostic) estimate
of the upper box-counting dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import PointSet, WeightedGraph, connected_components, normalize_edge
from .errors import DegenerateLadder, NotATree

EXACT_COVER_CAP = 16


@dataclass(frozen=True)
class DoublingWalk:
    """Vertex sequence traversing a tree with every edge used at most twice."""

    sequence: tuple[int, ...]
    source_tree: WeightedGraph

    @property
    def length(self) -> float:
        space = self.source_tree.space
        return math.fsum(
            space.distance(self.sequence[i - 1], self.sequence[i])
            for i in range(1, len(self.sequence))
        )

    def edge_traversals(self) -> dict[tuple[int, int], int]:
        counts: dict[tuple[int, int], int] = {}
        for i in range(1, len(self.sequence)):
            e = normalize_edge(self.sequence[i - 1], self.sequence[i])
            counts[e] = counts.get(e, 0) + 1
        return counts


def doubling_walk(tree: WeightedGraph) -> DoublingWalk:
    """Build a doubling walk by peeling leaves and reinserting them.

    Leaves are removed highest index first; rebuilding inserts each
    leaf next to its neighbor, extending the walk end when possible so
    that paths come out traversed once instead of twice.
    """
    comps = connected_components(tree)
    if len(comps) != 1 or len(tree.edges) != len(tree.vertices) - 1:
        raise NotATree(
            f"graph has {len(comps)} components and {len(tree.edges)} edges "
            f"on {len(tree.vertices)} vertices"
        )
    if len(tree.vertices) == 1:
        return DoublingWalk((tree.vertices[0],), tree)

    adj: dict[int, set[int]] = {v: set() for v in tree.vertices}
    for i, j in tree.edges:
        adj[i].add(j)
        adj[j].add(i)

    removed = []  # (leaf, neighbor) in removal order
    alive = set(tree.vertices)
    while len(alive) > 1:
        leaf = max(v for v in alive if len(adj[v]) == 1)
        neighbor = next(iter(adj[leaf]))
        adj[neighbor].discard(leaf)
        adj[leaf].clear()
        alive.discard(leaf)
        removed.append((leaf, neighbor))

    walk = [next(iter(alive))]
    for leaf, neighbor in reversed(removed):
        if walk[-1] == neighbor:
            walk.append(leaf)
        elif walk[0] == neighbor:
            walk.insert(0, leaf)
        else:
            i = walk.index(neighbor)
            walk[i + 1 : i + 1] = [leaf, neighbor]
    return DoublingWalk(tuple(walk), tree)


class CoveringNumber(NamedTuple):
    value: int
    exact: bool


def _bits(mask):
    while mask:
        low = mask & (-mask)
        yield low.bit_length() - 1
        mask ^= low


def _maximal_cliques(adj, n):
    """Bron-Kerbosch with pivoting over bitmask adjacency (self excluded)."""
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(r)
            return
        pivot = max(_bits(p | x), key=lambda v: bin(p & adj[v]).count("1"))
        for v in list(_bits(p & ~adj[pivot])):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    expand(0, (1 << n) - 1, 0)
    return out


def covering_number(points: PointSet, epsilon: float) -> CoveringNumber:
    """Fewest diameter-<=epsilon blocks covering the point set.

    Exact (clique-cover search) up to ``EXACT_COVER_CAP`` points;
    beyond that a deterministic greedy pass gives an upper bound and
    the result is flagged ``exact=False``.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    n = len(points)
    dist = points.space.pairwise(points.members)
    within = dist <= epsilon

    # greedy: grow a block from the first uncovered point, keeping every
    # pair inside the block within epsilon
    uncovered = np.ones(n, dtype=bool)
    greedy = 0
    while uncovered.any():
        seed = int(np.argmax(uncovered))
        compatible = within[seed] & uncovered
        block = [seed]
        for j in range(n):
            if j != seed and compatible[j]:
                block.append(j)
                compatible &= within[j]
        uncovered[block] = False
        greedy += 1

    if n > EXACT_COVER_CAP:
        return CoveringNumber(greedy, False)

    adj = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and within[i, j]:
                adj[i] |= 1 << j
    cliques = _maximal_cliques(adj, n)
    by_vertex: list[list[int]] = [[] for _ in range(n)]
    for c in cliques:
        for v in _bits(c):
            by_vertex[v].append(c)

    memo = {0: 0}

    def cover(mask):
        if mask in memo:
            return memo[mask]
        pivot = (mask & (-mask)).bit_length() - 1
        best = n
        for clique in by_vertex[pivot]:
            best = min(best, 1 + cover(mask & ~clique))
        memo[mask] = best
        return best

    return CoveringNumber(cover((1 << n) - 1), True)


def box_dimension_estimate(points: PointSet, epsilon_ladder) -> float:
    """Least-squares slope of ln N_eps against ln(1/eps).

    Diagnostic only: a finite ladder can suggest the asymptotic
    dimension but never certify it.
    """
    ladder = [float(e) for e in epsilon_ladder]
    if len(ladder) < 3:
        raise DegenerateLadder("need at least 3 ladder values")
    if any(e <= 0 for e in ladder):
        raise DegenerateLadder("ladder values must be positive")
    if any(ladder[i] <= ladder[i + 1] for i in range(len(ladder) - 1)):
        raise DegenerateLadder("ladder must be strictly decreasing")
    counts = [covering_number(points, e).value for e in ladder]
    x = np.log(1.0 / np.array(ladder))
    y = np.log(np.array(counts, dtype=float))
    slope = np.polyfit(x, y, 1)[0]
    return float(slope)
