"""Ambient metric spaces, point sets, weighted graphs, and certificates.

Points are referenced by index into an ambient space.  Graphs carry no
explicit weights: an edge {i, j} costs the ambient distance between its
endpoints, and the total length of a graph is the sum of those costs.
A certificate packages a graph together with evidence that every
connected component touches both of two given point sets, which makes
the graph's total length an upper bound on the hyperspace distance
between the sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ComponentMissesSet,
    EmptySet,
    InvalidGraph,
    InvalidSpace,
    SpaceMismatch,
    VertexNotCovered,
)

#: Absolute tolerance for metric-axiom validation and equality checks.
METRIC_TOL = 1e-9


class MetricSpace:
    """Common interface for the three ambient space variants."""

    def __len__(self) -> int:
        raise NotImplementedError

    def distance(self, i: int, j: int) -> float:
        raise NotImplementedError

    def pairwise(self, indices) -> np.ndarray:
        """Distance matrix restricted to the given point indices."""
        idx = list(indices)
        n = len(idx)
        out = np.zeros((n, n))
        for a in range(n):
            for b in range(a + 1, n):
                d = self.distance(idx[a], idx[b])
                out[a, b] = out[b, a] = d
        return out

    def check_index(self, i: int) -> None:
        if not isinstance(i, (int, np.integer)) or isinstance(i, bool):
            raise InvalidSpace(f"point index must be an integer, got {i!r}")
        if not 0 <= i < len(self):
            raise InvalidSpace(f"point index {i} out of range for space of size {len(self)}")


class RealLine(MetricSpace):
    """Finitely many distinct coordinates on the real line."""

    def __init__(self, points):
        coords = tuple(float(x) for x in points)
        if not coords:
            raise InvalidSpace("a line space needs at least one coordinate")
        if len(set(coords)) != len(coords):
            raise InvalidSpace("line coordinates must be distinct")
        self.points = coords

    def __len__(self):
        return len(self.points)

    def distance(self, i, j):
        return abs(self.points[i] - self.points[j])

    def pairwise(self, indices):
        xs = np.array([self.points[i] for i in indices])
        return np.abs(xs[:, None] - xs[None, :])

    def __eq__(self, other):
        return isinstance(other, RealLine) and self.points == other.points

    def __hash__(self):
        return hash(("line", self.points))

    def __repr__(self):
        return f"RealLine({len(self.points)} points)"


class EuclideanPoints(MetricSpace):
    """Finitely many distinct points in R^dim with the Euclidean metric."""

    def __init__(self, dim, points):
        if dim < 1:
            raise InvalidSpace("dimension must be a positive integer")
        self.dim = int(dim)
        pts = tuple(tuple(float(c) for c in p) for p in points)
        if not pts:
            raise InvalidSpace("a Euclidean space needs at least one point")
        for p in pts:
            if len(p) != self.dim:
                raise InvalidSpace(f"point {p} does not have dimension {self.dim}")
        if len(set(pts)) != len(pts):
            raise InvalidSpace("Euclidean points must be distinct")
        self.points = pts
        self._array = np.array(pts, dtype=float)

    def __len__(self):
        return len(self.points)

    def distance(self, i, j):
        return float(np.linalg.norm(self._array[i] - self._array[j]))

    def pairwise(self, indices):
        xs = self._array[list(indices)]
        diff = xs[:, None, :] - xs[None, :, :]
        return np.sqrt((diff * diff).sum(axis=2))

    def __eq__(self, other):
        return (
            isinstance(other, EuclideanPoints)
            and self.dim == other.dim
            and self.points == other.points
        )

    def __hash__(self):
        return hash(("euclidean", self.dim, self.points))

    def __repr__(self):
        return f"EuclideanPoints(dim={self.dim}, {len(self.points)} points)"


class FiniteMatrix(MetricSpace):
    """Explicit distance matrix, validated against the metric axioms.

    Rejects matrices whose symmetry defect, diagonal, or triangle
    inequality violations exceed ``METRIC_TOL``; off-diagonal entries
    must be strictly positive.  The stored matrix is symmetrized and
    its diagonal zeroed so that lookups are exactly symmetric.
    """

    def __init__(self, dist):
        m = np.array(dist, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidSpace("distance matrix must be square")
        n = m.shape[0]
        if n == 0:
            raise InvalidSpace("distance matrix must be nonempty")
        if np.max(np.abs(m - m.T)) > METRIC_TOL:
            raise InvalidSpace("distance matrix is not symmetric")
        if np.max(np.abs(np.diag(m))) > METRIC_TOL:
            raise InvalidSpace("distance matrix has a nonzero diagonal")
        m = (m + m.T) / 2.0
        np.fill_diagonal(m, 0.0)
        off = m[~np.eye(n, dtype=bool)]
        if off.size and np.min(off) <= 0.0:
            raise InvalidSpace("off-diagonal distances must be strictly positive")
        for k in range(n):
            via_k = m[:, k][:, None] + m[k, :][None, :]
            if np.max(m - via_k) > METRIC_TOL:
                i, j = np.unravel_index(np.argmax(m - via_k), m.shape)
                raise InvalidSpace(
                    f"triangle inequality fails: d({i},{j}) > d({i},{k}) + d({k},{j})"
                )
        m.setflags(write=False)
        self.matrix = m

    def __len__(self):
        return self.matrix.shape[0]

    def distance(self, i, j):
        return float(self.matrix[i, j])

    def pairwise(self, indices):
        idx = list(indices)
        return self.matrix[np.ix_(idx, idx)].copy()

    def __eq__(self, other):
        return isinstance(other, FiniteMatrix) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(("matrix", self.matrix.shape[0], self.matrix.tobytes()))

    def __repr__(self):
        return f"FiniteMatrix({self.matrix.shape[0]} points)"


def _require_same_space(*spaces):
    first = spaces[0]
    for s in spaces[1:]:
        if s != first:
            raise SpaceMismatch("operands reference different ambient spaces")


@dataclass(frozen=True)
class PointSet:
    """Nonempty set of distinct point indices in an ambient space."""

    space: MetricSpace
    members: tuple[int, ...]

    def __init__(self, space, members):
        mem = tuple(int(i) for i in members)
        if not mem:
            raise EmptySet("a point set must contain at least one point")
        if len(set(mem)) != len(mem):
            raise InvalidGraph("point set members must be distinct")
        for i in mem:
            space.check_index(i)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "members", tuple(sorted(mem)))

    def __len__(self):
        return len(self.members)

    def __contains__(self, i):
        return i in set(self.members)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.members)


def normalize_edge(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class WeightedGraph:
    """Graph over ambient point indices; edge cost = ambient distance.

    Self-loops are not representable: a one-element edge would add
    nothing to the total length or the component structure.
    """

    space: MetricSpace
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __init__(self, space, vertices, edges):
        verts = tuple(sorted({int(v) for v in vertices}))
        if not verts:
            raise InvalidGraph("a graph needs at least one vertex")
        for v in verts:
            space.check_index(v)
        vset = set(verts)
        seen = set()
        norm = []
        for e in edges:
            i, j = (int(e[0]), int(e[1]))
            if i == j:
                raise InvalidGraph(f"self-loop at vertex {i} is not allowed")
            if i not in vset or j not in vset:
                raise InvalidGraph(f"edge ({i},{j}) uses a vertex outside the graph")
            key = normalize_edge(i, j)
            if key in seen:
                raise InvalidGraph(f"duplicate edge ({key[0]},{key[1]})")
            seen.add(key)
            norm.append(key)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def total_length(self) -> float:
        return total_length(self)


def total_length(g: WeightedGraph) -> float:
    """Sum of edge distances; zero exactly when the edge set is empty."""
    return math.fsum(g.space.distance(i, j) for i, j in g.edges)


def connected_components(g: WeightedGraph) -> tuple[tuple[int, ...], ...]:
    """Partition of the vertices into connected components.

    Components are returned sorted internally and ordered by their
    smallest vertex, so the output is deterministic.
    """
    parent = {v: v for v in g.vertices}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for i, j in g.edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for v in g.vertices:
        groups.setdefault(find(v), []).append(v)
    comps = [tuple(sorted(vs)) for vs in groups.values()]
    return tuple(sorted(comps, key=lambda c: c[0]))


@dataclass(frozen=True)
class GraphCertificate:
    """A graph plus evidence that it links two point sets admissibly.

    Every connected component of ``graph`` contains at least one member
    of each set; ``witnesses`` records one such pair per component.  The
    graph's total length is therefore an upper bound on the hyperspace
    distance between the two sets.
    """

    graph: WeightedGraph
    component_count: int
    witnesses: tuple[tuple[int, int], ...]
    components: tuple[tuple[int, ...], ...] = field(default=(), repr=False)

    @property
    def total_length(self) -> float:
        return self.graph.total_length


def validate_certificate(a: PointSet, b: PointSet, g: WeightedGraph) -> GraphCertificate:
    """Check that ``g`` admissibly links ``a`` and ``b`` and build the certificate.

    Requirements: all three share one space, every member of either set
    is a vertex of ``g``, and every connected component of ``g``
    contains a member of ``a`` and a member of ``b``.
    """
    _require_same_space(a.space, b.space, g.space)
    vset = set(g.vertices)
    for label, ps in (("A", a), ("B", b)):
        for p in ps.members:
            if p not in vset:
                raise VertexNotCovered(f"point {p} of set {label} is not a vertex of the graph")
    aset, bset = a.as_set(), b.as_set()
    comps = connected_components(g)
    witnesses = []
    for comp in comps:
        in_a = sorted(aset.intersection(comp))
        in_b = sorted(bset.intersection(comp))
        if not in_a:
            raise ComponentMissesSet(
                f"component {comp} contains no point of A", comp, "A"
            )
        if not in_b:
            raise ComponentMissesSet(
                f"component {comp} contains no point of B", comp, "B"
            )
        witnesses.append((in_a[0], in_b[0]))
    return GraphCertificate(
        graph=g,
        component_count=len(comps),
        witnesses=tuple(witnesses),
        components=comps,
    )


def complete_graph(space: MetricSpace, indices) -> WeightedGraph:
    """Complete graph over the given point indices."""
    verts = sorted({int(i) for i in indices})
    edges = [(verts[i], verts[j]) for i in range(len(verts)) for j in range(i + 1, len(verts))]
    return WeightedGraph(space, verts, edges)
