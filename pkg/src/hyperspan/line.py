"""Exact forest-length distance between finite subsets of the real line.

On the line an optimal admissible graph can always be replaced by a
union of intervals: sort the merged points of A and B, cut them into
consecutive blocks so that every block contains at least one A point
and one B point, and pay the span (max - min) of each block.  The
distance is the minimum total span over all such cuttings.

Three routes compute that minimum:

* ``d1_line``           prefix-minimum DP, O(n log n) including the sort;
* ``d1_line_quadratic`` plain O(n^2) DP, kept as an internal reference;
* ``d1_line_brute_force`` exhaustive enumeration of all 2^(n-1)
  consecutive-block cuttings, capped at n <= 20 points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    GraphCertificate,
    PointSet,
    RealLine,
    WeightedGraph,
    _require_same_space,
    validate_certificate,
)
from .errors import SpaceMismatch, TooLarge

BRUTE_FORCE_CAP = 20

_INF = math.inf


@dataclass(frozen=True)
class LabeledPoint:
    """A merged coordinate tagged with the sets it belongs to."""

    index: int
    coordinate: float
    in_a: bool
    in_b: bool

    @property
    def label(self) -> str:
        if self.in_a and self.in_b:
            return "both"
        return "A" if self.in_a else "B"


def merge_labeled(a: PointSet, b: PointSet) -> list[LabeledPoint]:
    """Union of both sets sorted by coordinate, with membership labels."""
    _require_same_space(a.space, b.space)
    if not isinstance(a.space, RealLine):
        raise SpaceMismatch("line distance requires a RealLine ambient space")
    space = a.space
    aset, bset = a.as_set(), b.as_set()
    idx = sorted(aset | bset, key=lambda i: space.points[i])
    return [
        LabeledPoint(i, space.points[i], i in aset, i in bset)
        for i in idx
    ]


def _block_certificate(a, b, merged, blocks) -> GraphCertificate:
    # Path graph through each block; a one-point block is an isolated vertex.
    space = a.space
    vertices = [p.index for p in merged]
    edges = []
    for lo, hi in blocks:
        for k in range(lo, hi - 1):
            edges.append((merged[k].index, merged[k + 1].index))
    graph = WeightedGraph(space, vertices, edges)
    return validate_certificate(a, b, graph)


def d1_line(a: PointSet, b: PointSet) -> tuple[float, GraphCertificate]:
    """Exact distance plus an optimal block certificate.

    cost(i) = min over feasible cut positions j < i of
    cost(j) + (p_i - p_{j+1}).  A cut at j is feasible when the block
    (j+1 .. i) contains both labels, which holds exactly for
    j <= min(lastA(i), lastB(i)) - 1; that upper end is monotone in i,
    so a running prefix minimum of cost(j) - p_{j+1} suffices.  Ties
    between equal-cost cuttings are broken toward fewer blocks.
    """
    merged = merge_labeled(a, b)
    n = len(merged)
    pts = [p.coordinate for p in merged]

    cost = [0.0] + [_INF] * n
    nblocks = [0] + [0] * n
    choice = [-1] * (n + 1)

    last_a = last_b = 0  # 1-based position of the latest A / B label
    run_val = _INF
    run_blocks = 0
    run_j = -1
    folded = 0  # prefix positions already folded into the running minimum
    for i in range(1, n + 1):
        p = merged[i - 1]
        if p.in_a:
            last_a = i
        if p.in_b:
            last_b = i
        upper = min(last_a, last_b) - 1
        while folded <= upper:
            j = folded
            if cost[j] < _INF:
                val = cost[j] - pts[j]
                if val < run_val or (val == run_val and nblocks[j] < run_blocks):
                    run_val, run_blocks, run_j = val, nblocks[j], j
            folded += 1
        if run_j >= 0:
            cost[i] = run_val + pts[i - 1]
            nblocks[i] = run_blocks + 1
            choice[i] = run_j

    value = cost[n]
    blocks = []
    i = n
    while i > 0:
        j = choice[i]
        blocks.append((j, i))
        i = j
    blocks.reverse()
    cert = _block_certificate(a, b, merged, blocks)
    return value, cert


def d1_line_quadratic(a: PointSet, b: PointSet) -> float:
    """Same DP with an explicit inner loop; internal reference route."""
    merged = merge_labeled(a, b)
    n = len(merged)
    pts = [p.coordinate for p in merged]
    # prefix counts of A / B labels over positions 1..n
    ca = [0] * (n + 1)
    cb = [0] * (n + 1)
    for i, p in enumerate(merged, start=1):
        ca[i] = ca[i - 1] + (1 if p.in_a else 0)
        cb[i] = cb[i - 1] + (1 if p.in_b else 0)

    cost = [0.0] + [_INF] * n
    for i in range(1, n + 1):
        best = _INF
        for j in range(i):
            if cost[j] == _INF:
                continue
            if ca[i] - ca[j] == 0 or cb[i] - cb[j] == 0:
                continue
            cand = cost[j] + (pts[i - 1] - pts[j])
            if cand < best:
                best = cand
        cost[i] = best
    return cost[n]


def d1_line_brute_force(a: PointSet, b: PointSet) -> float:
    """Minimum over every consecutive-block cutting, enumerated explicitly.

    Independent oracle for ``d1_line``; raises ``TooLarge`` beyond
    ``BRUTE_FORCE_CAP`` merged points.
    """
    merged = merge_labeled(a, b)
    n = len(merged)
    if n > BRUTE_FORCE_CAP:
        raise TooLarge(f"brute force capped at {BRUTE_FORCE_CAP} merged points, got {n}")
    pts = [p.coordinate for p in merged]
    has_a = [p.in_a for p in merged]
    has_b = [p.in_b for p in merged]

    best = _INF
    for mask in range(1 << (n - 1)):
        total = 0.0
        start = 0
        block_a = block_b = False
        feasible = True
        for k in range(n):
            block_a = block_a or has_a[k]
            block_b = block_b or has_b[k]
            if k == n - 1 or (mask >> k) & 1:
                if not (block_a and block_b):
                    feasible = False
                    break
                total += pts[k] - pts[start]
                if total >= best:
                    feasible = False
                    break
                start = k + 1
                block_a = block_b = False
        if feasible and total < best:
            best = total
    return best
