"""Compact subsets of the line as nested interval systems.

An interval system produces, level by level, finite unions of closed
intervals shrinking onto a compact set.  When the level measures decay
geometrically the set has zero length, and ``certify_zero_length``
builds the explicit witness graph: one edge per interval, one edge
linking each interval to its leftmost child, and one edge per gap
between siblings inside a common parent.  The graph's total length is
below three times the summed level measures.

Distances between two such compact sets are bracketed by
``d1_compact_approx``: the exact line distance between finite level
samples, widened by each system's certified sampling error.
``cauchy_demo`` tabulates distances between successive samples,
exhibiting the summable decay that makes the sample sequence Cauchy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import PointSet, RealLine, WeightedGraph, normalize_edge, validate_certificate
from .errors import (
    CertificateUnavailable,
    GeneratorFailure,
    NoContractionInfo,
)
from .line import d1_line

NEST_TOL = 1e-12


@dataclass(frozen=True)
class AffineMap:
    """Contraction x -> ratio * x + offset with 0 < ratio < 1."""

    ratio: float
    offset: float

    def __post_init__(self):
        if not 0.0 < self.ratio < 1.0:
            raise GeneratorFailure(f"map ratio must be in (0, 1), got {self.ratio}")


def _normalize_intervals(lo, hi):
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    if lo.size == 0:
        raise GeneratorFailure("a level must contain at least one interval")
    if np.any(hi < lo):
        raise GeneratorFailure("interval with upper end below lower end")
    order = np.argsort(lo, kind="stable")
    lo, hi = lo[order], hi[order]
    if lo.size == 1:
        return np.column_stack([lo, hi])
    cummax = np.maximum.accumulate(hi)
    starts = np.empty(lo.size, dtype=bool)
    starts[0] = True
    starts[1:] = lo[1:] > cummax[:-1]
    idx = np.flatnonzero(starts)
    merged_lo = lo[idx]
    merged_hi = np.maximum.reduceat(hi, idx)
    return np.column_stack([merged_lo, merged_hi])


def _parent_indices(parents, children):
    """Index of the parent interval containing each child, or raise."""
    plo, phi = parents[:, 0], parents[:, 1]
    clo, chi = children[:, 0], children[:, 1]
    idx = np.searchsorted(plo, clo + NEST_TOL, side="right") - 1
    if np.any(idx < 0):
        raise GeneratorFailure("child interval starts before every parent")
    ok = (clo >= plo[idx] - NEST_TOL) & (chi <= phi[idx] + NEST_TOL)
    if not np.all(ok):
        k = int(np.argmin(ok))
        raise GeneratorFailure(
            f"interval [{clo[k]}, {chi[k]}] is not contained in the previous level"
        )
    return idx


class IntervalSystem:
    """Nested sequence of finite unions of closed intervals.

    Built either from an iterated system of affine contractions applied
    to a seed interval, or from an explicit list of levels.  Levels are
    validated on materialization: intervals disjoint and sorted, each
    level nested in the previous one, and every interval containing at
    least one deeper interval.  An explicit system whose last level has
    measure zero is a finite set and repeats that level indefinitely.
    """

    def __init__(self, kind, maps=None, seed=None, levels=None):
        self.kind = kind
        self.maps = tuple(maps) if maps else ()
        self.seed = seed
        self._levels: list[np.ndarray] = []
        self._explicit_depth = None
        if kind == "ifs":
            if not self.maps:
                raise GeneratorFailure("an iterated system needs at least one map")
            lo, hi = float(seed[0]), float(seed[1])
            if hi < lo:
                raise GeneratorFailure("seed interval is empty")
            self._levels.append(np.array([[lo, hi]]))
        elif kind == "explicit":
            if not levels:
                raise GeneratorFailure("an explicit system needs at least one level")
            prev = None
            for raw in levels:
                arr = _normalize_intervals(
                    [float(p[0]) for p in raw], [float(p[1]) for p in raw]
                )
                if prev is not None:
                    _parent_indices(prev, arr)
                    self._check_chain(prev, arr)
                self._levels.append(arr)
                prev = arr
            self._explicit_depth = len(self._levels) - 1
        else:
            raise GeneratorFailure(f"unknown generator kind {kind!r}")

    @classmethod
    def from_ifs(cls, maps, seed):
        return cls("ifs", maps=[m if isinstance(m, AffineMap) else AffineMap(*m) for m in maps], seed=seed)

    @classmethod
    def from_levels(cls, levels):
        return cls("explicit", levels=levels)

    @staticmethod
    def _check_chain(parents, children):
        covered = np.unique(_parent_indices(parents, children))
        if covered.size != parents.shape[0]:
            missing = sorted(set(range(parents.shape[0])) - set(covered.tolist()))[0]
            raise GeneratorFailure(
                f"interval {missing} of the parent level contains no deeper interval"
            )

    def level(self, k: int) -> np.ndarray:
        """Level-k intervals as an (n_k, 2) array, materializing on demand."""
        if k < 0:
            raise GeneratorFailure("level index must be nonnegative")
        if self.kind == "explicit" and k > self._explicit_depth:
            last = self._levels[self._explicit_depth]
            if float(np.sum(last[:, 1] - last[:, 0])) != 0.0:
                raise GeneratorFailure(
                    f"explicit system provides levels up to {self._explicit_depth}, "
                    f"level {k} requested"
                )
            return last
        while len(self._levels) <= k:
            prev = self._levels[-1]
            lo = np.concatenate([m.ratio * prev[:, 0] + m.offset for m in self.maps])
            hi = np.concatenate([m.ratio * prev[:, 1] + m.offset for m in self.maps])
            arr = _normalize_intervals(lo, hi)
            _parent_indices(prev, arr)
            self._check_chain(prev, arr)
            self._levels.append(arr)
        return self._levels[k]

    def level_measure(self, k: int) -> float:
        """Total length of the level-k intervals."""
        arr = self.level(k)
        return float(np.sum(arr[:, 1] - arr[:, 0]))

    def contraction_sum(self) -> float | None:
        """Sum of map ratios when below 1; None when no tail bound exists."""
        if self.kind != "ifs":
            return None
        s = math.fsum(m.ratio for m in self.maps)
        return s if s < 1.0 else None

    def sample_coordinates(self, k: int) -> list[float]:
        """One point per level-k interval: the left endpoints."""
        return [float(x) for x in self.level(k)[:, 0]]

    def membership_assured(self) -> bool:
        """Whether every interval provably contains a point of the set.

        True for iterated systems (each interval holds the image of the
        whole attractor under some map composition); explicit lists are
        only checked for nonempty nesting chains, which is necessary
        but not sufficient.
        """
        return self.kind == "ifs"


def middle_thirds_cantor() -> IntervalSystem:
    """The classical middle-thirds construction on [0, 1]."""
    return IntervalSystem.from_ifs([(1 / 3, 0.0), (1 / 3, 2 / 3)], (0.0, 1.0))


def fat_cantor(depth: int) -> IntervalSystem:
    """Positive-measure Cantor-type set: level k removes middles of length 4^-k.

    Level measures are 1/2 + 2^-(k+1), bounded below by 1/2, so the set
    can never be certified to have zero length.
    """
    levels = []
    lo = np.array([0.0])
    hi = np.array([1.0])
    levels.append(np.column_stack([lo, hi]).tolist())
    for k in range(1, depth + 1):
        gap = 4.0 ** (-k)
        child = (hi - lo - gap) / 2.0
        if np.any(child < 0):
            raise GeneratorFailure("fat Cantor depth too large for interval widths")
        lo, hi = (
            np.concatenate([lo, hi - child]),
            np.concatenate([lo + child, hi]),
        )
        order = np.argsort(lo)
        lo, hi = lo[order], hi[order]
        levels.append(np.column_stack([lo, hi]).tolist())
    return IntervalSystem.from_levels(levels)


def finite_set_system(coordinates) -> IntervalSystem:
    """A finite set of reals as a single level of degenerate intervals."""
    pts = sorted(set(float(x) for x in coordinates))
    return IntervalSystem.from_levels([[[x, x] for x in pts]])


@dataclass(frozen=True)
class ZeroLengthCertificate:
    """Witness that the represented set admits arbitrarily short graphs.

    ``graph`` spans the interval endpoints of levels ``start_level``
    through ``end_level``; its total length plus the certified tail is
    below ``target_epsilon``.  ``sample`` holds one vertex per
    start-level interval and the graph links every component to it.
    """

    start_level: int
    end_level: int
    graph: WeightedGraph
    sample: PointSet
    graph_length: float
    total_length_bound: float
    tail_bound: float
    target_epsilon: float
    level_measures: tuple[float, ...]
    membership_assured: bool


@dataclass(frozen=True)
class Refusal:
    """Certification did not succeed; explicitly not a disproof."""

    reason: str
    target_epsilon: float
    level_measures: tuple[float, ...]
    best_bound: float


def _proof_graph(system: IntervalSystem, start: int, end: int):
    """Endpoint graph over levels start..end with link and gap edges."""
    coord_id: dict[float, int] = {}
    coords: list[float] = []

    def vid(x: float) -> int:
        x = float(x)
        i = coord_id.get(x)
        if i is None:
            i = len(coords)
            coord_id[x] = i
            coords.append(x)
        return i

    levels = [system.level(k) for k in range(start, end + 1)]
    edges: set[tuple[int, int]] = set()
    for arr in levels:
        for lo, hi in arr:
            a, b = vid(lo), vid(hi)
            if a != b:
                edges.add(normalize_edge(a, b))
    for depth in range(len(levels) - 1):
        parents, children = levels[depth], levels[depth + 1]
        pidx = _parent_indices(parents, children)
        prev_parent = -1
        prev_hi = 0.0
        for c in range(children.shape[0]):
            p = int(pidx[c])
            clo, chi = float(children[c, 0]), float(children[c, 1])
            if p != prev_parent:
                # link the parent's left endpoint to its leftmost child
                a, b = vid(float(parents[p, 0])), vid(clo)
                if a != b:
                    edges.add(normalize_edge(a, b))
            else:
                # gap between consecutive siblings inside one parent
                a, b = vid(prev_hi), vid(clo)
                if a != b:
                    edges.add(normalize_edge(a, b))
            prev_parent = p
            prev_hi = chi
    space = RealLine(coords)
    graph = WeightedGraph(space, range(len(coords)), sorted(edges))
    sample = PointSet(space, sorted({vid(float(x)) for x in levels[0][:, 0]}))
    return graph, sample


def certify_zero_length(
    system: IntervalSystem, epsilon: float, max_depth: int
) -> ZeroLengthCertificate | Refusal:
    """Certify that the represented set has zero length, if possible.

    Searches for the smallest start level m whose bound
    3 * sum(level measures m..K) + tail < epsilon, where the tail uses
    the generator's contraction factor; builds the witness graph over a
    two-level window from m.  Returns a ``Refusal`` when the measures
    cannot drop below epsilon within ``max_depth``; raises
    ``NoContractionInfo`` when the finite levels would fit but the tail
    cannot be bounded.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if max_depth < 0:
        raise ValueError("max_depth must be nonnegative")
    if system.kind == "explicit":
        max_depth = min(max_depth, system._explicit_depth)
    measures = [system.level_measure(k) for k in range(max_depth + 1)]

    for k, lam in enumerate(measures):
        if lam == 0.0:
            graph, sample = _proof_graph(system, k, k)
            validate_certificate(sample, sample, graph)
            return ZeroLengthCertificate(
                start_level=k,
                end_level=k,
                graph=graph,
                sample=sample,
                graph_length=graph.total_length,
                total_length_bound=0.0,
                tail_bound=0.0,
                target_epsilon=epsilon,
                level_measures=tuple(measures),
                membership_assured=system.membership_assured(),
            )

    q = system.contraction_sum()
    if q is None:
        finite_best = 3.0 * measures[-1]
        if finite_best >= epsilon:
            return Refusal(
                reason=(
                    "level measures do not decay below epsilon within max_depth; "
                    "this refusal is not a disproof of zero length"
                ),
                target_epsilon=epsilon,
                level_measures=tuple(measures),
                best_bound=finite_best,
            )
        raise NoContractionInfo(
            "the finite levels fit under epsilon but the measure tail "
            "cannot be bounded without a contraction factor"
        )

    tail = 3.0 * measures[-1] * q / (1.0 - q)
    suffix = [0.0] * (max_depth + 2)
    for k in range(max_depth, -1, -1):
        suffix[k] = suffix[k + 1] + measures[k]
    bounds = [3.0 * suffix[m] + tail for m in range(max_depth + 1)]
    start = next((m for m in range(max_depth + 1) if bounds[m] < epsilon), None)
    if start is None:
        return Refusal(
            reason=(
                "even the deepest level bound does not drop below epsilon "
                "within max_depth; not a disproof"
            ),
            target_epsilon=epsilon,
            level_measures=tuple(measures),
            best_bound=min(bounds),
        )
    end = min(start + 1, max_depth)
    graph, sample = _proof_graph(system, start, end)
    validate_certificate(sample, sample, graph)
    return ZeroLengthCertificate(
        start_level=start,
        end_level=end,
        graph=graph,
        sample=sample,
        graph_length=graph.total_length,
        total_length_bound=bounds[start],
        tail_bound=tail,
        target_epsilon=epsilon,
        level_measures=tuple(measures),
        membership_assured=system.membership_assured(),
    )


def sample_error_bound(system: IntervalSystem, depth: int) -> float:
    """Certified bound on the distance from the set to its level sample.

    The witness graph from ``depth`` downward is admissible for the set
    against the sample, so 3 * sum of the remaining measures bounds the
    distance; the geometric tail needs the contraction factor.
    """
    lam = system.level_measure(depth)
    if lam == 0.0:
        return 0.0
    q = system.contraction_sum()
    if q is None:
        raise CertificateUnavailable(
            "sampling error requires zero-measure levels or a contraction factor"
        )
    return 3.0 * lam / (1.0 - q)


@dataclass(frozen=True)
class CompactBracket:
    """Certified enclosure of the distance between two compact sets."""

    lower: float
    upper: float
    line_distance: float
    error_a: float
    error_b: float
    depth: int

    @property
    def width(self) -> float:
        return self.upper - self.lower


def _sample_point_sets(coords_a, coords_b):
    coords = sorted(set(coords_a) | set(coords_b))
    index = {x: i for i, x in enumerate(coords)}
    space = RealLine(coords)
    a = PointSet(space, [index[x] for x in set(coords_a)])
    b = PointSet(space, [index[x] for x in set(coords_b)])
    return a, b


def d1_compact_approx(
    system_a: IntervalSystem, system_b: IntervalSystem, depth: int
) -> CompactBracket:
    """Bracket the distance between the two represented compact sets.

    Computes the exact line distance between the level-``depth``
    samples and widens it by both certified sampling errors; the true
    distance lies inside the bracket by the triangle inequality.
    """
    err_a = sample_error_bound(system_a, depth)
    err_b = sample_error_bound(system_b, depth)
    a, b = _sample_point_sets(
        system_a.sample_coordinates(depth), system_b.sample_coordinates(depth)
    )
    center, _ = d1_line(a, b)
    slack = err_a + err_b
    return CompactBracket(
        lower=max(0.0, center - slack),
        upper=center + slack,
        line_distance=center,
        error_a=err_a,
        error_b=err_b,
        depth=depth,
    )


@dataclass(frozen=True)
class CauchyStep:
    """Distance between successive level samples, with a proven envelope."""

    depth_from: int
    depth_to: int
    distance: float
    envelope: float


def cauchy_demo(system: IntervalSystem, depths) -> list[CauchyStep]:
    """Exact distances between successive level samples.

    For a zero-length system the distances decay summably (the sample
    sequence is Cauchy); for systems with non-vanishing measures the
    table documents the failure.  The envelope column is the window
    graph bound 3 * sum of the level measures between the two depths.
    """
    ds = [int(k) for k in depths]
    if len(ds) < 2:
        raise ValueError("need at least two depths")
    if any(ds[i] >= ds[i + 1] for i in range(len(ds) - 1)):
        raise ValueError("depths must be strictly increasing")
    if ds[0] < 0:
        raise ValueError("depths must be nonnegative")
    steps = []
    for j, k in zip(ds, ds[1:]):
        a, b = _sample_point_sets(
            system.sample_coordinates(j), system.sample_coordinates(k)
        )
        value, _ = d1_line(a, b)
        envelope = 3.0 * math.fsum(system.level_measure(i) for i in range(j, k + 1))
        steps.append(CauchyStep(j, k, value, envelope))
    return steps
