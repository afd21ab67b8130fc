"""Glued patchworks: a full base pseudometric with overlapping pieces.

Pieces meet the base in nonempty gateway sets, agree with it on gateway
pairs, and meet each other only inside the base.  The union is then a graph
pseudometric whose shortest-path distances have a closed form: within one
member, the member's own distance; across members, the cheapest route through
one gateway of each side.  ``floppy_certificate`` checks the hypotheses under
which the glued metric is provably floppy and returns per-pair gap bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    Doubleton,
    PartialMetric,
    is_floppy,
    lower_envelope,
    rational_str,
    shortest_path,
    validate,
)
from .errors import EmptyGatewaySetError, MalformedInputError, UnknownVertexError

BASE = "base"  # member id of the base pseudometric in reports


@dataclass(frozen=True)
class Patchwork:
    base: PartialMetric
    pieces: tuple

    def __init__(self, base, pieces):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "pieces", tuple(pieces))

    def gateways(self, i: int) -> frozenset:
        """Vertices a piece shares with the base."""
        return self.pieces[i].vertices & self.base.vertices

    def members(self):
        """(member id, metric) for the base and every piece."""
        yield BASE, self.base
        for i, piece in enumerate(self.pieces):
            yield i, piece


@dataclass
class PatchworkReport:
    base_full_pseudometric: bool
    pieces_pseudometric: list
    gateways_nonempty: list
    gateway_agreement: list
    intersections_in_base: bool
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.base_full_pseudometric
            and all(self.pieces_pseudometric)
            and all(self.gateways_nonempty)
            and all(self.gateway_agreement)
            and self.intersections_in_base
        )

    def to_json(self):
        return {
            "ok": self.ok,
            "base_full_pseudometric": self.base_full_pseudometric,
            "pieces_pseudometric": self.pieces_pseudometric,
            "gateways_nonempty": self.gateways_nonempty,
            "gateway_agreement": self.gateway_agreement,
            "intersections_in_base": self.intersections_in_base,
            "witnesses": self.witnesses,
        }


def validate_patchwork(pw: Patchwork) -> PatchworkReport:
    """Check the three gluing hypotheses, reporting a witness per failure."""
    witnesses = []
    base_rep = validate(pw.base)
    base_ok = base_rep.connected and base_rep.graph_pseudometric and base_rep.full
    if not base_ok:
        witnesses.append("base is not a full pseudometric")
    pieces_ok, gw_nonempty, gw_agree = [], [], []
    for i, piece in enumerate(pw.pieces):
        rep = validate(piece)
        ok = rep.connected and rep.graph_pseudometric
        pieces_ok.append(ok)
        if not ok:
            witnesses.append(f"piece {i} is not a connected graph pseudometric")
        gates = sorted(pw.gateways(i))
        gw_nonempty.append(bool(gates))
        if not gates:
            witnesses.append(f"piece {i} shares no vertex with the base")
        agree = True
        if ok and base_ok:
            for j, a in enumerate(gates):
                for b in gates[j + 1 :]:
                    if shortest_path(piece, a, b) != shortest_path(pw.base, a, b):
                        agree = False
                        witnesses.append(f"piece {i} disagrees with the base on gateway pair {{{a},{b}}}")
        gw_agree.append(agree)
    inter_ok = True
    for i in range(len(pw.pieces)):
        for j in range(i + 1, len(pw.pieces)):
            stray = (pw.pieces[i].vertices & pw.pieces[j].vertices) - pw.base.vertices
            if stray:
                inter_ok = False
                witnesses.append(f"pieces {i} and {j} share vertices outside the base: {sorted(stray)}")
    return PatchworkReport(base_ok, pieces_ok, gw_nonempty, gw_agree, inter_ok, witnesses)


def glue(pw: Patchwork) -> PartialMetric:
    """Union of the base and all pieces (overlapping weights must coincide)."""
    report = validate_patchwork(pw)
    if not report.ok:
        raise MalformedInputError("invalid patchwork: " + "; ".join(report.witnesses))
    vertices = set(pw.base.vertices)
    edges = dict(pw.base.edges)
    for i, piece in enumerate(pw.pieces):
        vertices |= piece.vertices
        for d, w in piece.edges.items():
            if d in edges and edges[d] != w:
                raise MalformedInputError(f"pieces assign conflicting weights to {d}")
            edges[d] = w
    return PartialMetric(vertices, edges)


def _locate(pw: Patchwork, v: str):
    """Member id holding a vertex (the base wins; non-base vertices are in one piece)."""
    if v in pw.base.vertices:
        return BASE
    for i, piece in enumerate(pw.pieces):
        if v in piece.vertices:
            return i
    raise UnknownVertexError(f"unknown vertex {v!r}")


def _member(pw: Patchwork, mid):
    return pw.base if mid == BASE else pw.pieces[mid]


def _member_gates(pw: Patchwork, mid):
    return sorted(pw.base.vertices if mid == BASE else pw.gateways(mid))


def glue_hat(pw: Patchwork, x: str, y: str) -> Fraction:
    """Glued shortest-path distance via the closed form (no union-wide search).

    Same member: the member's own distance.  Different members: minimum over
    gateway pairs of (distance to own gateway) + (base distance between
    gateways) + (distance from the other gateway).
    """
    mx, my = _locate(pw, x), _locate(pw, y)
    if mx == my:
        return shortest_path(_member(pw, mx), x, y)
    for mid, member in pw.members():
        if x in member.vertices and y in member.vertices:
            return shortest_path(member, x, y)
    f, g = _member(pw, mx), _member(pw, my)
    best = None
    for a in _member_gates(pw, mx):
        fa = shortest_path(f, x, a)
        for b in _member_gates(pw, my):
            cand = fa + shortest_path(pw.base, a, b) + shortest_path(g, b, y)
            if best is None or cand < best:
                best = cand
    return best


def gateway_slack(pw: Patchwork, v: str, gates) -> Fraction:
    """Minimal triangle slack of v against a gateway set B.

    min over a, b in B of d(a,v) + d(v,b) - d(a,b), distances in the glued
    metric; a == b is allowed and gives 2*d(a,v).
    """
    gates = sorted(set(gates))
    if not gates:
        raise EmptyGatewaySetError("gateway set must be nonempty")
    glued = glue(pw)
    return _slack(glued, v, gates)


def _slack(glued: PartialMetric, v: str, gates) -> Fraction:
    best = None
    for a in gates:
        av = shortest_path(glued, a, v)
        for b in gates:
            cand = av + shortest_path(glued, v, b) - shortest_path(glued, a, b)
            if best is None or cand < best:
                best = cand
    return best


@dataclass
class GapBound:
    pair: Doubleton
    delta: Fraction
    measured_gap: Fraction

    def to_json(self):
        return {
            "pair": [self.pair.a, self.pair.b],
            "delta": rational_str(self.delta),
            "gap": rational_str(self.measured_gap),
        }


@dataclass
class CertReport:
    certified: bool
    base_full: bool
    pieces_floppy: list
    slack_failures: list
    glued_floppy: bool | None
    bounds: list

    def to_json(self):
        return {
            "certified": self.certified,
            "base_full": self.base_full,
            "pieces_floppy": self.pieces_floppy,
            "slack_failures": [str(w) for w in self.slack_failures],
            "glued_floppy": self.glued_floppy,
            "bounds": [b.to_json() for b in self.bounds],
        }


def floppy_certificate(pw: Patchwork) -> CertReport:
    """Certify floppiness of the glued metric from local hypotheses.

    Hypotheses: the base is a full pseudometric; every piece is floppy; for
    every piece, every outside-piece vertex x and every base vertex y outside
    the piece have strictly positive slack against the piece's gateways.  On
    success the report carries, for every cross pair, the provable lower
    bound on its floppiness gap together with the measured gap.
    """
    report = validate_patchwork(pw)
    if not report.ok:
        raise MalformedInputError("invalid patchwork: " + "; ".join(report.witnesses))
    base_rep = validate(pw.base)
    base_full = base_rep.full and base_rep.graph_pseudometric
    pieces_floppy = []
    for piece in pw.pieces:
        pieces_floppy.append(is_floppy(piece, require_metric=False).floppy)
    glued = glue(pw)
    slack_failures = []
    piece_slacks = []  # per piece: dict vertex -> slack against that piece's gateways
    for i, piece in enumerate(pw.pieces):
        gates = sorted(pw.gateways(i))
        slacks = {}
        for x in sorted(piece.vertices - pw.base.vertices):
            slacks[x] = _slack(glued, x, gates)
            if slacks[x] <= 0:
                slack_failures.append(f"piece {i}: slack of {x} against gateways is {slacks[x]}")
        for y in sorted(pw.base.vertices - piece.vertices):
            slacks[y] = _slack(glued, y, gates)
            if slacks[y] <= 0:
                slack_failures.append(f"piece {i}: slack of base vertex {y} against gateways is {slacks[y]}")
        piece_slacks.append(slacks)
    certified = base_full and all(pieces_floppy) and not slack_failures
    if not certified:
        return CertReport(False, base_full, pieces_floppy, slack_failures, None, [])

    glued_floppy = is_floppy(glued, require_metric=False).floppy
    bounds = []
    table = glued._table()
    for i, piece in enumerate(pw.pieces):
        outside = sorted(piece.vertices - pw.base.vertices)
        # piece vertex vs base vertex not in the piece
        for x in outside:
            for y in sorted(pw.base.vertices - piece.vertices):
                delta = min(piece_slacks[i][x], piece_slacks[i][y] / 2)
                gap = table[(x, y)] - lower_envelope(glued, x, y)
                bounds.append(GapBound(Doubleton(x, y), delta, gap))
        # piece vertex vs other-piece vertex
        for j in range(i + 1, len(pw.pieces)):
            for x in outside:
                for y in sorted(pw.pieces[j].vertices - pw.base.vertices):
                    delta = min(piece_slacks[i][x], piece_slacks[j][y])
                    gap = table[(x, y)] - lower_envelope(glued, x, y)
                    bounds.append(GapBound(Doubleton(x, y), delta, gap))
    return CertReport(True, base_full, pieces_floppy, slack_failures, glued_floppy, bounds)
