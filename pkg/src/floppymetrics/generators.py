"""Deterministic instance factories for tests, demos, and the CLI.

Vertices of the truncated Cantor tree are binary strings (the root is the
empty string); every comparable pair s < t (proper prefix) carries weight
2^-|s| - 2^-|t|.  Random floppy metrics come from taxicab distances between
distinct integer grid points, thinned down to a target density while keeping
a spanning tree, then rejection-sampled on the floppiness check.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product

from .core import Doubleton, PartialMetric, as_rational, is_floppy, lower_envelope, validate
from .errors import DepthZeroError, GenerationExhaustedError, MalformedInputError


def cantor_tree(depth: int, *, verify=True) -> PartialMetric:
    """Truncated Cantor tree metric on all binary strings of length <= depth."""
    if depth < 1:
        raise DepthZeroError("depth must be at least 1")
    vertices = [""]
    for k in range(1, depth + 1):
        vertices.extend("".join(bits) for bits in product("01", repeat=k))
    edges = {}
    for s in vertices:
        for t in vertices:
            if len(s) < len(t) and t.startswith(s):
                edges[Doubleton(s, t)] = Fraction(1, 2 ** len(s)) - Fraction(1, 2 ** len(t))
    m = PartialMetric(vertices, edges)
    if verify:
        report = is_floppy(m)
        assert report.floppy, f"cantor tree depth {depth} not floppy: {report}"
        for s, t in combinations(vertices, 2):
            expected = abs(Fraction(1, 2 ** len(s)) - Fraction(1, 2 ** len(t)))
            assert lower_envelope(m, s, t) == expected, (s, t)
    return m


def path_metric(n: int, scale=1) -> PartialMetric:
    if n < 1:
        raise MalformedInputError("n must be at least 1")
    scale = as_rational(scale)
    vertices = [f"v{i}" for i in range(n)]
    edges = {Doubleton(f"v{i}", f"v{i+1}"): scale for i in range(n - 1)}
    return PartialMetric(vertices, edges)


def cycle_metric(n: int, scale=1) -> PartialMetric:
    if n < 3:
        raise MalformedInputError("a cycle needs at least 3 vertices")
    scale = as_rational(scale)
    vertices = [f"v{i}" for i in range(n)]
    edges = {Doubleton(f"v{i}", f"v{(i+1) % n}"): scale for i in range(n)}
    return PartialMetric(vertices, edges)


def star_metric(n: int, scale=1) -> PartialMetric:
    """Center c with n leaves at equal distance."""
    if n < 1:
        raise MalformedInputError("a star needs at least 1 leaf")
    scale = as_rational(scale)
    vertices = ["c"] + [f"u{i}" for i in range(n)]
    edges = {Doubleton("c", f"u{i}"): scale for i in range(n)}
    return PartialMetric(vertices, edges)


def complete_metric(n: int, scale=1) -> PartialMetric:
    """Equilateral full metric on n vertices."""
    if n < 1:
        raise MalformedInputError("n must be at least 1")
    scale = as_rational(scale)
    vertices = [f"v{i}" for i in range(n)]
    edges = {Doubleton(u, v): scale for u, v in combinations(vertices, 2)}
    return PartialMetric(vertices, edges)


def h_graph() -> PartialMetric:
    """Two far-apart leaves hanging off a heavy edge; the standard 4-vertex example."""
    return PartialMetric(
        ["a", "b", "x", "y"],
        {Doubleton("a", "b"): 10, Doubleton("a", "x"): 1, Doubleton("b", "y"): 1},
    )


def _taxicab_full_metric(rng: random.Random, n: int, scale: Fraction) -> PartialMetric:
    span = max(3 * n, 6)
    grid = [(i, j) for i in range(span) for j in range(span)]
    points = rng.sample(grid, n)
    vertices = [f"v{i}" for i in range(n)]
    edges = {}
    for (i, p), (j, q) in combinations(enumerate(points), 2):
        dist = abs(p[0] - q[0]) + abs(p[1] - q[1])
        edges[Doubleton(vertices[i], vertices[j])] = scale * dist
    return PartialMetric(vertices, edges)


def random_floppy(n: int, density, seed: int, *, scale=1, max_attempts=64) -> PartialMetric:
    """Seeded random floppy graph metric with roughly the requested density."""
    if n < 2:
        raise MalformedInputError("n must be at least 2")
    density = as_rational(density)
    if not 0 < density <= 1:
        raise MalformedInputError(f"density must be in (0, 1], got {density}")
    scale = as_rational(scale)
    rng = random.Random(seed)
    total_pairs = n * (n - 1) // 2
    target = max(n - 1, round(density * total_pairs))
    for _ in range(max_attempts):
        full = _taxicab_full_metric(rng, n, scale)
        verts = sorted(full.vertices)
        # random spanning tree: attach each vertex to a random earlier one
        order = verts[:]
        rng.shuffle(order)
        keep = {Doubleton(order[i], order[rng.randrange(i)]) for i in range(1, n)}
        rest = [d for d in sorted(full.edges) if d not in keep]
        rng.shuffle(rest)
        keep.update(rest[: max(0, target - len(keep))])
        m = PartialMetric(verts, {d: full.weight(d) for d in keep})
        rep = validate(m)
        if rep.graph_metric and rep.connected and is_floppy(m).floppy:
            return m
    raise GenerationExhaustedError(f"no floppy instance after {max_attempts} attempts (seed {seed})")
