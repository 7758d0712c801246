"""Finite metric spaces: weighted graphs and uniform interval samplings.

A space is a finite point set {0, ..., n-1} with symmetric positive edge
lengths. Distances beyond adjacent pairs are defined only in
shortest-path-closure mode or through stored point coordinates; slope
computations themselves only ever compare adjacent points.

Spaces are immutable after construction and every query is pure, so they
are safe to share across threads. Because the point set is finite, every
sublevel set of every field on a space is compact in any topology, which
is why minimizers (and hence critical points) always exist here without
any extra coercivity hypothesis.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DanglingEndpoint,
    DegenerateInterval,
    DuplicateEdge,
    EmptyEdgeList,
    InvalidPoint,
    NoMetricClosure,
    NonPositiveLength,
    SelfLoopEdge,
    TooFewPoints,
)

PointId = int

EDGE_LOCAL = "edge-local"
SHORTEST_PATH_CLOSURE = "shortest-path-closure"
_METRIC_MODES = (EDGE_LOCAL, SHORTEST_PATH_CLOSURE)


@dataclass(eq=False)
class MetricSpaceGraph:
    """A finite point set with symmetric positive pairwise edge lengths.

    Build instances with `build_graph` or `sample_interval`; the raw
    constructor assumes already-validated canonical edges (u < v, no
    duplicates, positive lengths).
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]
    coordinates: np.ndarray | None = None
    metric_mode: str = EDGE_LOCAL
    _adjacency: tuple[tuple[tuple[int, float], ...], ...] = field(
        init=False, repr=False)
    _dist_cache: dict[int, np.ndarray] = field(
        init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        if self.metric_mode not in _METRIC_MODES:
            raise ValueError(f"unknown metric mode {self.metric_mode!r}")
        if self.n < 1:
            raise ValueError("a space needs at least one point")
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        self._adjacency = tuple(tuple(sorted(a)) for a in adj)
        if self.coordinates is not None:
            coords = np.array(self.coordinates, dtype=float)
            if coords.shape[0] != self.n:
                raise ValueError(
                    f"coordinates cover {coords.shape[0]} points, space has {self.n}")
            coords.setflags(write=False)
            self.coordinates = coords

    def check_point(self, x: PointId) -> None:
        if not 0 <= x < self.n:
            raise InvalidPoint(f"point {x} outside [0, {self.n})")

    def adjacency(self, x: PointId) -> tuple[tuple[int, float], ...]:
        """Adjacent points of x with edge lengths, sorted by point id."""
        self.check_point(x)
        return self._adjacency[x]

    def degree(self, x: PointId) -> int:
        return len(self.adjacency(x))

    def is_isolated(self, x: PointId) -> bool:
        return self.degree(x) == 0


@dataclass(frozen=True)
class Neighborhood:
    """Points near a center, each with its distance to the center.

    The center itself is never a member and all recorded distances are
    strictly positive.
    """

    center: PointId
    members: tuple[tuple[int, float], ...]

    def point_ids(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def build_graph(edge_list, n: int | None = None,
                metric_mode: str = EDGE_LOCAL,
                coordinates=None) -> MetricSpaceGraph:
    """Construct a space from an undirected edge list.

    Each (u, v, length) entry is one undirected edge; the symmetric
    closure is implied, and a pair appearing twice (in either
    orientation) is rejected. `n` defaults to 1 + the largest endpoint;
    pass it explicitly to create isolated points or a single-point space.
    """
    edges: list[tuple[int, int, float]] = []
    seen: set[tuple[int, int]] = set()
    max_endpoint = -1
    for item in edge_list:
        try:
            u, v, w = item
        except (TypeError, ValueError):
            raise ValueError(f"edge entries must be (u, v, length), got {item!r}")
        u, v, w = int(u), int(v), float(w)
        if u < 0 or v < 0:
            raise DanglingEndpoint(f"negative endpoint in edge ({u}, {v})")
        if u == v:
            raise SelfLoopEdge(f"self-loop at point {u}")
        if not w > 0.0:  # also rejects NaN
            raise NonPositiveLength(f"edge ({u}, {v}) has length {w}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"edge {key} appears more than once")
        seen.add(key)
        edges.append((key[0], key[1], w))
        max_endpoint = max(max_endpoint, u, v)
    if n is None:
        if not edges:
            raise EmptyEdgeList("cannot infer the point count from an empty edge list")
        n = max_endpoint + 1
    else:
        n = int(n)
        if n < 1:
            raise ValueError("a space needs at least one point")
        if max_endpoint >= n:
            raise DanglingEndpoint(
                f"edge endpoint {max_endpoint} outside [0, {n})")
        if not edges and n > 1:
            raise EmptyEdgeList(f"no edges given for a {n}-point space")
    edges.sort()
    return MetricSpaceGraph(n=n, edges=tuple(edges),
                            coordinates=coordinates, metric_mode=metric_mode)


def sample_interval(a: float, b: float, n: int,
                    metric_mode: str = EDGE_LOCAL) -> MetricSpaceGraph:
    """Sample [a, b] at n uniformly spaced points.

    Consecutive samples are joined by edges of length h = (b-a)/(n-1)
    and the sample coordinates are stored on the space.
    """
    a, b = float(a), float(b)
    if not a < b:
        raise DegenerateInterval(f"need a < b, got a={a}, b={b}")
    n = int(n)
    if n < 2:
        raise TooFewPoints(f"need at least 2 sample points, got {n}")
    h = (b - a) / (n - 1)
    coords = np.linspace(a, b, n)
    edges = tuple((i, i + 1, h) for i in range(n - 1))
    return MetricSpaceGraph(n=n, edges=edges, coordinates=coords,
                            metric_mode=metric_mode)


def distances_from(space: MetricSpaceGraph, x: PointId) -> np.ndarray:
    """Single-source shortest-path distances along edges.

    Unreachable points get math.inf. Results are cached on the space.
    """
    space.check_point(x)
    cached = space._dist_cache.get(x)
    if cached is not None:
        return cached
    dist = np.full(space.n, math.inf)
    dist[x] = 0.0
    done = np.zeros(space.n, dtype=bool)
    heap: list[tuple[float, int]] = [(0.0, x)]
    while heap:
        dv, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for y, w in space._adjacency[v]:
            nd = dv + w
            if nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    dist.setflags(write=False)
    space._dist_cache[x] = dist
    return dist


def metric_distances(space: MetricSpaceGraph, x: PointId) -> np.ndarray:
    """Distances from x to every point under the space's metric mode.

    Closure mode uses shortest-path distances; otherwise stored
    coordinates define the (Euclidean) metric. Without either there is
    no notion of distance beyond adjacency.
    """
    if space.metric_mode == SHORTEST_PATH_CLOSURE:
        return distances_from(space, x)
    if space.coordinates is not None:
        space.check_point(x)
        diff = space.coordinates - space.coordinates[x]
        if diff.ndim == 1:
            return np.abs(diff)
        return np.sqrt(np.sum(diff * diff, axis=1))
    raise NoMetricClosure(
        "radius queries need coordinates or shortest-path-closure mode")


def neighbors(space: MetricSpaceGraph, x: PointId,
              radius: float | None = None) -> Neighborhood:
    """Adjacent points of x, or every point within `radius` of x.

    Without a radius the members are the graph-adjacent points with
    their edge lengths. With a radius the members are all points y != x
    with 0 < d(x, y) <= radius under the space's metric mode.
    """
    space.check_point(x)
    if radius is None:
        return Neighborhood(center=x, members=space._adjacency[x])
    if not radius > 0.0:
        raise ValueError(f"radius must be positive, got {radius}")
    dist = metric_distances(space, x)
    members = tuple((y, float(dist[y])) for y in range(space.n)
                    if y != x and 0.0 < dist[y] <= radius)
    return Neighborhood(center=x, members=members)


def is_connected(space: MetricSpaceGraph) -> bool:
    if space.n <= 1:
        return True
    seen = np.zeros(space.n, dtype=bool)
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        v = stack.pop()
        for y, _ in space._adjacency[v]:
            if not seen[y]:
                seen[y] = True
                count += 1
                stack.append(y)
    return count == space.n
