"""Exact forest-length distance on finite metric spaces.

The distance between two finite sets A and B is the minimum total edge
length over graphs in which every connected component touches both A
and B.  Any such optimum decomposes into a partition of A union B into
blocks, each block meeting both sets, joined per block by a minimum
Steiner tree that may route through extra candidate vertices (the
"pool").  ``d1_exact`` solves this with a subset dynamic program over
terminals (Steiner trees for every terminal subset in one pass)
followed by a partition DP over admissible blocks.

``d1_brute_force`` is the independent oracle: it enumerates pool
subsets and set partitions of the chosen vertices and prices each
group by its minimum spanning tree, which equals the cheapest forest
with that exact component structure.  ``mst_upper_bound`` restricts
the forest to terminal vertices only, and ``separation_lower_bound``
turns pairwise separation into a certified lower bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    GraphCertificate,
    MetricSpace,
    PointSet,
    WeightedGraph,
    _require_same_space,
    normalize_edge,
    validate_certificate,
)
from .errors import CapExceeded, NotSeparated, TooLarge

TERMINAL_CAP = 14
POOL_CAP = 16
ORACLE_CAP = 8


@dataclass(frozen=True)
class SteinerInstance:
    """Two terminal sets plus optional extra routing vertices.

    Pool indices may overlap the terminals; overlaps are dropped since
    a terminal is already available as a vertex.
    """

    space: MetricSpace
    terminals_a: PointSet
    terminals_b: PointSet
    steiner_pool: tuple[int, ...] = ()

    def __init__(self, space, terminals_a, terminals_b, steiner_pool=()):
        _require_same_space(space, terminals_a.space, terminals_b.space)
        pool = sorted({int(i) for i in steiner_pool})
        for i in pool:
            space.check_index(i)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "terminals_a", terminals_a)
        object.__setattr__(self, "terminals_b", terminals_b)
        object.__setattr__(self, "steiner_pool", tuple(pool))

    def terminal_indices(self) -> list[int]:
        return sorted(self.terminals_a.as_set() | self.terminals_b.as_set())

    def pool_indices(self) -> list[int]:
        terminals = set(self.terminal_indices())
        return [i for i in self.steiner_pool if i not in terminals]


def _dreyfus_wagner(dist: np.ndarray, t: int):
    """Subset DP for Steiner trees over a complete metric graph.

    ``dist`` is the m-by-m distance matrix whose first ``t`` rows are
    the terminals.  Returns ``dp`` with ``dp[S][v]`` = minimum length
    of a tree spanning terminal subset S plus vertex v, together with
    the merge/attach choices needed to rebuild an optimal tree.  The
    attach step uses a single direct-edge relaxation, which is exact
    because the distance matrix is a metric.
    """
    m = dist.shape[0]
    size = 1 << t
    dp = np.full((size, m), np.inf)
    merge_choice = np.zeros((size, m), dtype=np.int32)
    attach_choice = np.zeros((size, m), dtype=np.int32)
    cols = np.arange(m)
    for i in range(t):
        dp[1 << i] = dist[i]
        attach_choice[1 << i] = i
    for s in range(1, size):
        if s & (s - 1) == 0:
            continue
        pivot = s & (-s)
        merged = np.full(m, np.inf)
        merged_sub = np.zeros(m, dtype=np.int32)
        sub = (s - 1) & s
        while sub:
            if sub & pivot:
                cand = dp[sub] + dp[s ^ sub]
                upd = cand < merged
                if upd.any():
                    merged[upd] = cand[upd]
                    merged_sub[upd] = sub
            sub = (sub - 1) & s
        total = merged[:, None] + dist
        best_u = np.argmin(total, axis=0)
        dp[s] = total[best_u, cols]
        merge_choice[s] = merged_sub
        attach_choice[s] = best_u
    return dp, merge_choice, attach_choice


def _rebuild_tree(s, v, merge_choice, attach_choice, edges):
    """Collect the edges (local vertex ids) of an optimal tree for (s, v)."""
    while True:
        if s & (s - 1) == 0:
            ti = s.bit_length() - 1
            if ti != v:
                edges.add(normalize_edge(ti, v))
            return
        u = int(attach_choice[s][v])
        if u != v:
            edges.add(normalize_edge(u, v))
        sub = int(merge_choice[s][u])
        _rebuild_tree(sub, u, merge_choice, attach_choice, edges)
        s, v = s ^ sub, u


def _best_partition(t, mask_a, mask_b, block_cost):
    """Partition DP over terminal bitmasks.

    ``block_cost`` maps an admissible block mask to its tree cost.
    A block is admissible when it intersects both terminal masks.
    Returns the optimal value and the list of chosen block masks.
    """
    size = 1 << t
    best = [math.inf] * size
    pick = [0] * size
    best[0] = 0.0
    for s in range(1, size):
        pivot = s & (-s)
        b = math.inf
        bp = 0
        sub = s
        while sub:
            if (sub & pivot) and (sub & mask_a) and (sub & mask_b):
                rest = best[s ^ sub]
                if rest < b:
                    cand = block_cost(sub) + rest
                    if cand < b:
                        b = cand
                        bp = sub
            sub = (sub - 1) & s
        best[s] = b
        pick[s] = bp
    blocks = []
    s = size - 1
    while s:
        blocks.append(pick[s])
        s ^= pick[s]
    return best[size - 1], blocks


def _terminal_masks(terminals, a: PointSet, b: PointSet):
    aset, bset = a.as_set(), b.as_set()
    mask_a = mask_b = 0
    for i, v in enumerate(terminals):
        if v in aset:
            mask_a |= 1 << i
        if v in bset:
            mask_b |= 1 << i
    return mask_a, mask_b


def d1_exact(
    inst: SteinerInstance,
    terminal_cap: int = TERMINAL_CAP,
    pool_cap: int = POOL_CAP,
) -> tuple[float, GraphCertificate]:
    """Minimum forest length linking the two terminal sets, with certificate.

    Exact relative to the declared vertex universe (terminals plus
    pool).  The returned value is the total length of the certificate
    graph itself, so value and certificate agree to the last bit.
    """
    terminals = inst.terminal_indices()
    t = len(terminals)
    if t > terminal_cap:
        raise CapExceeded(f"{t} terminals exceed the cap of {terminal_cap}")
    pool = inst.pool_indices()
    if len(pool) > pool_cap:
        raise CapExceeded(f"{len(pool)} pool points exceed the cap of {pool_cap}")

    local = terminals + pool
    dist = inst.space.pairwise(local)
    mask_a, mask_b = _terminal_masks(terminals, inst.terminals_a, inst.terminals_b)
    dp, merge_choice, attach_choice = _dreyfus_wagner(dist, t)

    def block_cost(s):
        root = (s & (-s)).bit_length() - 1
        return float(dp[s][root])

    _, blocks = _best_partition(t, mask_a, mask_b, block_cost)

    local_edges: set[tuple[int, int]] = set()
    for s in blocks:
        root = (s & (-s)).bit_length() - 1
        _rebuild_tree(s, root, merge_choice, attach_choice, local_edges)
    edges = {normalize_edge(local[i], local[j]) for i, j in local_edges}
    used = {v for e in edges for v in e}
    vertices = sorted(set(terminals) | used)
    graph = WeightedGraph(inst.space, vertices, sorted(edges))
    cert = validate_certificate(inst.terminals_a, inst.terminals_b, graph)
    return graph.total_length, cert


def _mst_cost_edges(dist: np.ndarray, ids: tuple[int, ...]):
    """Prim's algorithm over the listed local ids; returns (cost, edges)."""
    k = len(ids)
    if k == 1:
        return 0.0, []
    sub = dist[np.ix_(ids, ids)]
    in_tree = np.zeros(k, dtype=bool)
    in_tree[0] = True
    key = sub[0].copy()
    parent = np.zeros(k, dtype=np.int64)
    key[0] = np.inf
    edges = []
    costs = []
    for _ in range(k - 1):
        nxt = int(np.argmin(np.where(in_tree, np.inf, key)))
        costs.append(float(key[nxt]))
        edges.append(normalize_edge(ids[parent[nxt]], ids[nxt]))
        in_tree[nxt] = True
        key[nxt] = np.inf
        better = sub[nxt] < key
        better &= ~in_tree
        parent[better] = nxt
        key[better] = sub[nxt][better]
    return math.fsum(costs), edges


def mst_upper_bound(inst: SteinerInstance, terminal_cap: int = TERMINAL_CAP):
    """Cheapest admissible forest over the terminals only (no pool).

    Always at least ``d1_exact`` since Steiner vertices are forbidden.
    """
    terminals = inst.terminal_indices()
    t = len(terminals)
    if t > terminal_cap:
        raise CapExceeded(f"{t} terminals exceed the cap of {terminal_cap}")
    dist = inst.space.pairwise(terminals)
    mask_a, mask_b = _terminal_masks(terminals, inst.terminals_a, inst.terminals_b)

    memo: dict[int, float] = {}

    def block_cost(s):
        if s not in memo:
            ids = tuple(i for i in range(t) if s >> i & 1)
            memo[s] = _mst_cost_edges(dist, ids)[0]
        return memo[s]

    _, blocks = _best_partition(t, mask_a, mask_b, block_cost)
    edges = set()
    for s in blocks:
        ids = tuple(i for i in range(t) if s >> i & 1)
        for i, j in _mst_cost_edges(dist, ids)[1]:
            edges.add(normalize_edge(terminals[i], terminals[j]))
    graph = WeightedGraph(inst.space, terminals, sorted(edges))
    cert = validate_certificate(inst.terminals_a, inst.terminals_b, graph)
    return graph.total_length, cert


def _set_partitions(items):
    """All partitions of ``items`` into nonempty groups."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def d1_brute_force(inst: SteinerInstance, cap: int = ORACLE_CAP) -> float:
    """Independent oracle: exhaustive pool subsets and vertex partitions.

    For every subset of the pool and every partition of the chosen
    vertices into groups that each contain an A terminal and a B
    terminal, prices the partition by per-group minimum spanning trees
    (the cheapest forest with exactly those components) and returns the
    overall minimum.
    """
    terminals = inst.terminal_indices()
    pool = inst.pool_indices()
    t = len(terminals)
    if t + len(pool) > cap:
        raise TooLarge(f"oracle capped at {cap} vertices, got {t + len(pool)}")
    local = terminals + pool
    dist = inst.space.pairwise(local)
    aset, bset = inst.terminals_a.as_set(), inst.terminals_b.as_set()
    a_ids = {i for i, v in enumerate(terminals) if v in aset}
    b_ids = {i for i, v in enumerate(terminals) if v in bset}

    mst_memo: dict[tuple[int, ...], float] = {}

    def group_cost(ids):
        key = tuple(sorted(ids))
        if key not in mst_memo:
            mst_memo[key] = _mst_cost_edges(dist, key)[0]
        return mst_memo[key]

    best = math.inf
    npool = len(pool)
    for pool_mask in range(1 << npool):
        vs = list(range(t)) + [t + i for i in range(npool) if pool_mask >> i & 1]
        for part in _set_partitions(vs):
            total = 0.0
            ok = True
            for group in part:
                gs = set(group)
                if not (gs & a_ids) or not (gs & b_ids):
                    ok = False
                    break
                total += group_cost(group)
                if total >= best:
                    ok = False
                    break
            if ok and total < best:
                best = total
    return best


def separation_lower_bound(a: PointSet, epsilon: float) -> float:
    """Lower bound on the distance from ``a`` to any singleton.

    Requires all pairwise distances in ``a`` to be at least
    ``2 * epsilon``.  Walking any admissible tree visits all of ``a``
    while traversing each edge at most twice, so a tree of length L
    can only reach fewer than 1 + 2L/epsilon separated points; solving
    for L gives the bound epsilon * (|a| - 1) / 2.
    """
    if epsilon <= 0:
        raise NotSeparated("epsilon must be positive")
    members = a.members
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            d = a.space.distance(members[i], members[j])
            if d + 1e-12 < 2 * epsilon:
                raise NotSeparated(
                    f"points {members[i]} and {members[j]} are {d} apart, "
                    f"below the required 2*epsilon = {2 * epsilon}"
                )
    return epsilon * (len(members) - 1) / 2.0
