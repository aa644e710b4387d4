"""Built-in oracle-equivalence checks, runnable from the CLI.

Also home to the random instance generators used by the check suites:
random line configurations, random metric matrices (shortest-path
closure of a random symmetric weight matrix), and random Euclidean
clouds.
"""

from __future__ import annotations

import random

import numpy as np

from .core import EuclideanPoints, FiniteMatrix, PointSet, RealLine
from .line import d1_line, d1_line_brute_force
from .steiner import SteinerInstance, d1_brute_force, d1_exact
from .trees import doubling_walk
from .core import WeightedGraph


def random_line_sets(rng: random.Random, max_points: int = 12):
    """Random A, B on a random line with |A union B| <= max_points."""
    n = rng.randint(2, max_points)
    coords = sorted(rng.sample(range(10 * max_points), n))
    coords = [c + rng.random() * 0.5 for c in coords]
    space = RealLine(coords)
    idx = list(range(n))
    na = rng.randint(1, n)
    a = rng.sample(idx, na)
    b = rng.sample(idx, rng.randint(1, n))
    return PointSet(space, a), PointSet(space, b)


def random_matrix_space(rng: random.Random, n: int) -> FiniteMatrix:
    """Shortest-path closure of random symmetric positive weights."""
    w = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            w[i, j] = w[j, i] = rng.uniform(0.2, 2.0)
    dist = w.copy()
    for k in range(n):
        dist = np.minimum(dist, dist[:, k][:, None] + dist[k, :][None, :])
        np.fill_diagonal(dist, 0.0)
    return FiniteMatrix(dist)


def random_euclidean_space(rng: random.Random, n: int, dim: int = 2) -> EuclideanPoints:
    pts = set()
    while len(pts) < n:
        pts.add(tuple(round(rng.uniform(0, 10), 6) for _ in range(dim)))
    return EuclideanPoints(dim, sorted(pts))


def random_steiner_instance(rng: random.Random, max_vertices: int = 8):
    """Random instance within the brute-force oracle cap."""
    n = rng.randint(2, max_vertices)
    space = (
        random_matrix_space(rng, n)
        if rng.random() < 0.5
        else random_euclidean_space(rng, n, dim=rng.choice([1, 2, 3]))
    )
    idx = list(range(n))
    a = rng.sample(idx, rng.randint(1, max(1, n // 2)))
    b = rng.sample(idx, rng.randint(1, max(1, n // 2)))
    terminals = set(a) | set(b)
    free = [i for i in idx if i not in terminals]
    pool = rng.sample(free, min(len(free), rng.randint(0, 2)))
    return SteinerInstance(space, PointSet(space, a), PointSet(space, b), pool)


def random_tree(rng: random.Random, space, n: int) -> WeightedGraph:
    """Uniform random tree on n vertices via a random attachment order."""
    if n == 1:
        return WeightedGraph(space, [0], [])
    edges = []
    for v in range(1, n):
        edges.append((rng.randrange(v), v))
    return WeightedGraph(space, range(n), edges)


def run_selftest(seed: int = 0, line_cases: int = 300, steiner_cases: int = 60, tol: float = 1e-12):
    """Run the oracle-equivalence suites; returns a summary dict."""
    rng = random.Random(seed)
    suites = []

    mism = 0
    cases = 0
    grid = RealLine([float(i) for i in range(5)])
    subsets = [[i for i in range(5) if m >> i & 1] for m in range(1, 32)]
    for sa in subsets:
        for sb in subsets:
            a, b = PointSet(grid, sa), PointSet(grid, sb)
            cases += 1
            if abs(d1_line(a, b)[0] - d1_line_brute_force(a, b)) > tol:
                mism += 1
    for _ in range(line_cases):
        a, b = random_line_sets(rng)
        cases += 1
        if abs(d1_line(a, b)[0] - d1_line_brute_force(a, b)) > tol:
            mism += 1
    suites.append({"suite": "line-oracle", "cases": cases, "mismatches": mism})

    mism = 0
    for _ in range(steiner_cases):
        inst = random_steiner_instance(rng)
        if abs(d1_exact(inst)[0] - d1_brute_force(inst)) > tol:
            mism += 1
    suites.append({"suite": "steiner-oracle", "cases": steiner_cases, "mismatches": mism})

    mism = 0
    walk_cases = 50
    for _ in range(walk_cases):
        n = rng.randint(1, 30)
        space = random_euclidean_space(rng, n, dim=2)
        tree = random_tree(rng, space, n)
        walk = doubling_walk(tree)
        ok = set(walk.sequence) == set(tree.vertices)
        counts = walk.edge_traversals()
        ok = ok and set(counts) == set(tree.edges)
        ok = ok and all(c <= 2 for c in counts.values())
        ok = ok and walk.length <= 2 * tree.total_length + 1e-12
        if not ok:
            mism += 1
    suites.append({"suite": "doubling-walk", "cases": walk_cases, "mismatches": mism})

    total_mismatches = sum(s["mismatches"] for s in suites)
    return {
        "ok": total_mismatches == 0,
        "seed": seed,
        "suites": suites,
        "total_mismatches": total_mismatches,
    }
