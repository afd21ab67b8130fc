"""Partial metrics on finite vertex sets and the three derived distance functions.

A :class:`PartialMetric` is a positive-rational weight function on the edges of
a graph over labeled vertices.  From it we derive

* ``shortest_path(m, x, y)`` -- the shortest-chain pseudometric between vertices,
* ``doubleton_dist(m, p, q)`` -- the induced pseudometric between unordered pairs,
* ``lower_envelope(m, x, y)`` -- the largest value any extension of ``m`` is
  forced to respect at the pair ``xy``.

All arithmetic is exact (``fractions.Fraction``); no floats enter the core
path.  Verdicts like floppiness hinge on strict inequalities, so rounding is
never acceptable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from types import MappingProxyType

from .errors import (
    DisconnectedError,
    ExtensionDivergedError,
    MalformedInputError,
    NotGraphMetricError,
    UnknownVertexError,
)

INF = math.inf  # unreachable sentinel inside distance tables; never serialized


def as_rational(value) -> Fraction:
    """Coerce ints, rational strings like "3/2", and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInputError(f"not a rational: {value!r}") from exc
    raise MalformedInputError(f"not a rational: {value!r} (floats are rejected)")


def rational_str(value: Fraction) -> str:
    return str(value)


@dataclass(frozen=True, order=True)
class Doubleton:
    """Unordered pair of distinct vertex labels, stored in sorted order."""

    a: str
    b: str

    def __post_init__(self):
        if self.a == self.b:
            raise MalformedInputError(f"doubleton needs two distinct vertices, got {self.a!r} twice")
        if self.a > self.b:
            lo, hi = self.b, self.a
            object.__setattr__(self, "a", lo)
            object.__setattr__(self, "b", hi)

    def __iter__(self):
        return iter((self.a, self.b))

    def other(self, v: str) -> str:
        if v == self.a:
            return self.b
        if v == self.b:
            return self.a
        raise UnknownVertexError(f"{v!r} is not an endpoint of {self}")

    def __str__(self):
        return f"{{{self.a},{self.b}}}"


def pair(a: str, b: str) -> Doubleton:
    return Doubleton(a, b)


class PartialMetric:
    """An edge-weight function over labeled vertices.

    Weights are nonnegative rationals (zero weights put the object in
    pseudometric mode; metric-grade operations reject them).  Instances are
    immutable; derived tables are cached lazily and shared by value-preserving
    copies.
    """

    __slots__ = ("_vertices", "_edges", "_hat", "_envelope_memo")

    def __init__(self, vertices, edges):
        vset = frozenset(vertices)
        if not vset:
            raise MalformedInputError("a metric needs at least one vertex")
        emap = {}
        for key, raw in dict(edges).items():
            d = key if isinstance(key, Doubleton) else Doubleton(*key)
            if d.a not in vset or d.b not in vset:
                raise MalformedInputError(f"edge {d} has an endpoint outside the vertex set")
            w = as_rational(raw)
            if w < 0:
                raise MalformedInputError(f"edge {d} has negative weight {w}")
            emap[d] = w
        self._vertices = vset
        self._edges = emap
        self._hat = None
        self._envelope_memo = {}

    @property
    def vertices(self) -> frozenset:
        return self._vertices

    @property
    def edges(self):
        return MappingProxyType(self._edges)

    def __eq__(self, other):
        if not isinstance(other, PartialMetric):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self):
        return hash((self._vertices, frozenset(self._edges.items())))

    def __repr__(self):
        return f"PartialMetric(|V|={len(self._vertices)}, |E|={len(self._edges)})"

    def is_edge(self, d: Doubleton) -> bool:
        return d in self._edges

    def weight(self, d: Doubleton) -> Fraction:
        return self._edges[d]

    def non_edges(self):
        """Sorted list of vertex pairs that carry no edge."""
        return [
            Doubleton(u, v)
            for u, v in combinations(sorted(self._vertices), 2)
            if Doubleton(u, v) not in self._edges
        ]

    def with_edge(self, d: Doubleton, w) -> "PartialMetric":
        """New metric with one extra (or replaced) edge.

        When this instance's distance table is already computed and the pair
        is new, the copy's table is derived by relaxing through the new edge
        (a shortest chain uses a fresh edge at most once), which is O(n^2)
        instead of a full recompute.
        """
        w = as_rational(w)
        out = PartialMetric.__new__(PartialMetric)
        out._vertices = self._vertices
        out._edges = dict(self._edges)
        out._edges[d] = w
        out._hat = None
        out._envelope_memo = {}
        if w < 0:
            raise MalformedInputError(f"edge {d} has negative weight {w}")
        if d.a not in self._vertices or d.b not in self._vertices:
            raise MalformedInputError(f"edge {d} has an endpoint outside the vertex set")
        if self._hat is not None and d not in self._edges:
            out._hat = _relax_through(self._hat, self._vertices, d, w)
        return out

    def _table(self):
        if self._hat is None:
            self._hat = _all_pairs_shortest(self)
        return self._hat


def _all_pairs_shortest(m: PartialMetric):
    """Floyd-Warshall over the vertex list; exact, deterministic."""
    verts = sorted(m.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    zero = Fraction(0)
    dist = [[zero if i == j else INF for j in range(n)] for i in range(n)]
    for d, w in m.edges.items():
        i, j = idx[d.a], idx[d.b]
        if w < dist[i][j]:
            dist[i][j] = dist[j][i] = w
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik is INF:
                continue
            di = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    table = {}
    for i, u in enumerate(verts):
        row = dist[i]
        for j, v in enumerate(verts):
            table[(u, v)] = row[j]
    return table


def _relax_through(table, vertices, d: Doubleton, w: Fraction):
    """Distance table after inserting edge ``d`` with weight ``w``."""
    x, y = d.a, d.b
    out = dict(table)
    verts = sorted(vertices)
    for u in verts:
        ux = table[(u, x)]
        uy = table[(u, y)]
        for v in verts:
            cur = out[(u, v)]
            alt = ux + w + table[(y, v)]
            if alt < cur:
                cur = alt
            alt = uy + w + table[(x, v)]
            if alt < cur:
                cur = alt
            out[(u, v)] = cur
    return out


def _require_vertex(m: PartialMetric, v: str):
    if v not in m.vertices:
        raise UnknownVertexError(f"unknown vertex {v!r}")


def shortest_path(m: PartialMetric, x: str, y: str) -> Fraction:
    """Minimum chain weight between two vertices (the induced pseudometric)."""
    _require_vertex(m, x)
    _require_vertex(m, y)
    val = m._table()[(x, y)]
    if val == INF:
        raise DisconnectedError(f"no chain connects {x!r} and {y!r}")
    return val


def shortest_chain(m: PartialMetric, x: str, y: str):
    """One vertex chain realizing shortest_path(m, x, y) (Dijkstra with parents)."""
    _require_vertex(m, x)
    _require_vertex(m, y)
    if x == y:
        return [x]
    adj = {v: [] for v in m.vertices}
    for d, w in m.edges.items():
        adj[d.a].append((d.b, w))
        adj[d.b].append((d.a, w))
    dist = {x: Fraction(0)}
    parent = {}
    done = set()
    while True:
        u = min((v for v in dist if v not in done), key=lambda v: (dist[v], v), default=None)
        if u is None:
            raise DisconnectedError(f"no chain connects {x!r} and {y!r}")
        if u == y:
            break
        done.add(u)
        for v, w in adj[u]:
            alt = dist[u] + w
            if v not in dist or alt < dist[v]:
                dist[v] = alt
                parent[v] = u
    chain = [y]
    while chain[-1] != x:
        chain.append(parent[chain[-1]])
    chain.reverse()
    return chain


def doubleton_dist(m: PartialMetric, p: Doubleton, q: Doubleton) -> Fraction:
    """Distance between unordered pairs: the cheaper endpoint matching."""
    t = m._table()
    for v in (p.a, p.b, q.a, q.b):
        _require_vertex(m, v)
    straight = t[(p.a, q.a)] + t[(p.b, q.b)]
    crossed = t[(p.a, q.b)] + t[(p.b, q.a)]
    val = straight if straight <= crossed else crossed
    if val == INF:
        raise DisconnectedError(f"pairs {p} and {q} span disconnected components")
    return val


def lower_envelope(m: PartialMetric, x: str, y: str) -> Fraction:
    """Largest lower bound that every extension must respect at the pair xy.

    Max over edges ab of weight(ab) - doubleton_dist(ab, xy), clamped at 0.
    """
    _require_vertex(m, x)
    _require_vertex(m, y)
    if x == y:
        return Fraction(0)
    key = (x, y) if x < y else (y, x)
    memo = m._envelope_memo
    if key in memo:
        return memo[key]
    t = m._table()
    best = Fraction(0)
    for d, w in m.edges.items():
        straight = t[(d.a, x)] + t[(d.b, y)]
        crossed = t[(d.a, y)] + t[(d.b, x)]
        dd = straight if straight <= crossed else crossed
        val = w - dd
        if val > best:
            best = val
    memo[key] = best
    return best


@dataclass(frozen=True)
class ValidationReport:
    connected: bool
    graph_pseudometric: bool
    graph_metric: bool
    full: bool

    def to_json(self):
        return {
            "connected": self.connected,
            "graph_pseudometric": self.graph_pseudometric,
            "graph_metric": self.graph_metric,
            "full": self.full,
        }


def validate(m: PartialMetric) -> ValidationReport:
    """Classify a weight function: connectivity, pseudometric/metric grade, fullness.

    A weight function is a graph pseudometric exactly when every edge weight
    equals the induced shortest-chain distance between its endpoints.
    """
    t = m._table()
    verts = sorted(m.vertices)
    n = len(verts)
    connected = all(t[(verts[0], v)] != INF for v in verts[1:]) if n > 1 else True
    pseudometric = all(t[(d.a, d.b)] == w for d, w in m.edges.items())
    metric = pseudometric and all(w > 0 for w in m.edges.values())
    full = len(m.edges) == n * (n - 1) // 2
    return ValidationReport(connected, pseudometric, metric, full)


def _require_metric_grade(m: PartialMetric, *, allow_pseudometric=False):
    rep = validate(m)
    if not rep.connected:
        raise NotGraphMetricError("graph is not connected")
    if allow_pseudometric:
        if not rep.graph_pseudometric:
            raise NotGraphMetricError("weights violate the polygonal inequality")
    elif not rep.graph_metric:
        raise NotGraphMetricError(
            "not a graph metric"
            + ("" if rep.graph_pseudometric else " (weights violate the polygonal inequality)")
        )
    return rep


@dataclass(frozen=True)
class FloppyReport:
    floppy: bool
    worst_pair: Doubleton | None
    gap: Fraction | None

    def to_json(self):
        out = {"floppy": self.floppy}
        if self.worst_pair is not None:
            out["worst_pair"] = [self.worst_pair.a, self.worst_pair.b]
            out["gap"] = rational_str(self.gap)
        return out


def is_floppy(m: PartialMetric, *, require_metric=True) -> FloppyReport:
    """Check strict envelope-below-distance at every non-edge.

    Full (pseudo)metrics are floppy vacuously and report no worst pair.
    ``require_metric=False`` admits pseudometric-grade inputs (used by the
    glued-patchwork certificate).
    """
    _require_metric_grade(m, allow_pseudometric=not require_metric)
    t = m._table()
    worst = None
    worst_gap = None
    for d in m.non_edges():
        gap = t[(d.a, d.b)] - lower_envelope(m, d.a, d.b)
        if worst_gap is None or gap < worst_gap:
            worst, worst_gap = d, gap
    if worst is None:
        return FloppyReport(True, None, None)
    return FloppyReport(worst_gap > 0, worst, worst_gap)


def minimal_floppy_extension(m: PartialMetric, *, return_iterations=False):
    """Adjoin every forced pair (envelope == distance > 0) until none remain.

    Whether a single pass suffices is not settled, so we iterate to a
    fixpoint and cap at n^2 rounds defensively.
    """
    _require_metric_grade(m)
    current = m
    cap = len(m.vertices) ** 2
    for iteration in range(cap + 1):
        t = current._table()
        forced = []
        for d in current.non_edges():
            h = t[(d.a, d.b)]
            if h > 0 and lower_envelope(current, d.a, d.b) == h:
                forced.append((d, h))
        if not forced:
            return (current, iteration) if return_iterations else current
        for d, h in forced:
            current = current.with_edge(d, h)
    raise ExtensionDivergedError(f"no fixpoint after {cap} rounds")
