"""One-step and full extensions of floppy graph metrics.

``one_step_extend`` adjoins a single non-edge.  In *theorem* mode the chosen
value must lie in the admissible interval ``[lo, hi)`` with
``lo = envelope/3 + 2*distance/3`` and ``hi = distance``; the result is then
again a floppy graph metric.  In *proposition* mode any value between the
envelope and the distance (inclusive) is accepted and the result is only
guaranteed to be a graph pseudometric.

``full_extend`` drives one-step extension over every missing pair and records
the interval and chosen value of each step.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    Doubleton,
    PartialMetric,
    as_rational,
    is_floppy,
    lower_envelope,
    rational_str,
    shortest_path,
    validate,
)
from .errors import (
    AlreadyEdgeError,
    ChoiceSetMissesIntervalError,
    MalformedInputError,
    MissingChoiceSetError,
    NotFloppyError,
    ROutOfRangeError,
)

THEOREM = "theorem"
PROPOSITION = "proposition"


@dataclass(frozen=True)
class AdmissibleInterval:
    """Value range [lo, hi) that keeps a one-step extension floppy."""

    lo: Fraction
    hi: Fraction
    closed_lo: bool = True
    open_hi: bool = True

    def contains(self, r: Fraction) -> bool:
        return self.lo <= r < self.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def to_json(self):
        return {"lo": rational_str(self.lo), "hi": rational_str(self.hi)}


def _require_floppy(m: PartialMetric):
    rep = is_floppy(m)
    if not rep.floppy:
        raise NotFloppyError(
            f"metric is not floppy: pair {rep.worst_pair} has gap {rep.gap}",
            pair=rep.worst_pair,
            gap=rep.gap,
        )


def _interval(m: PartialMetric, xy: Doubleton) -> AdmissibleInterval:
    h = shortest_path(m, xy.a, xy.b)
    c = lower_envelope(m, xy.a, xy.b)
    return AdmissibleInterval(c / 3 + 2 * h / 3, h)


def admissible_interval(m: PartialMetric, xy: Doubleton, *, assume_floppy=False) -> AdmissibleInterval:
    if m.is_edge(xy):
        raise AlreadyEdgeError(f"{xy} is already an edge")
    if not assume_floppy:
        _require_floppy(m)
    return _interval(m, xy)


def one_step_extend(
    m: PartialMetric,
    xy: Doubleton,
    r,
    mode: str = THEOREM,
    *,
    assume_floppy=False,
    verify=True,
) -> PartialMetric:
    """Adjoin the pair ``xy`` at value ``r``; see module docstring for modes."""
    if mode not in (THEOREM, PROPOSITION):
        raise MalformedInputError(f"unknown mode {mode!r}")
    if m.is_edge(xy):
        raise AlreadyEdgeError(f"{xy} is already an edge")
    if not assume_floppy:
        _require_floppy(m)
    r = as_rational(r)
    h = shortest_path(m, xy.a, xy.b)
    c = lower_envelope(m, xy.a, xy.b)
    if mode == THEOREM:
        lo = c / 3 + 2 * h / 3
        if r < lo:
            raise ROutOfRangeError(f"r={r} below admissible lower bound {lo}", bound="lo", lo=lo, hi=h)
        if r >= h:
            raise ROutOfRangeError(f"r={r} not below admissible upper bound {h}", bound="hi", lo=lo, hi=h)
    else:
        if r < c:
            raise ROutOfRangeError(f"r={r} below lower envelope {c}", bound="lo", lo=c, hi=h)
        if r > h:
            raise ROutOfRangeError(f"r={r} above shortest-path distance {h}", bound="hi", lo=c, hi=h)
    extended = m.with_edge(xy, r)
    if verify:
        if mode == THEOREM:
            rep = is_floppy(extended)
            if not rep.floppy:
                raise AssertionError(f"one-step extension lost floppiness at {rep.worst_pair}")
        else:
            if not validate(extended).graph_pseudometric:
                raise AssertionError("one-step extension broke the polygonal inequality")
    return extended


# ---------------------------------------------------------------------------
# Proposition-style property checking for a single extension step.

@dataclass
class StatementResult:
    applicable: int = 0
    failures: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.failures


@dataclass
class StepPropertyReport:
    pair: Doubleton
    r: Fraction
    statements: dict

    @property
    def ok(self) -> bool:
        return all(s.holds for s in self.statements.values())

    def to_json(self):
        return {
            "pair": [self.pair.a, self.pair.b],
            "r": rational_str(self.r),
            "ok": self.ok,
            "statements": {
                str(k): {
                    "applicable_pairs": s.applicable,
                    "holds": s.holds,
                    "failures": [[u, v] for u, v in s.failures],
                }
                for k, s in self.statements.items()
            },
        }


def verify_step_properties(m: PartialMetric, xy: Doubleton, r) -> StepPropertyReport:
    """Evaluate the five step-extension properties over every vertex pair.

    The guard of each conditional statement is evaluated exactly; pairs where
    a guard fails are simply not counted as applicable.
    """
    if m.is_edge(xy):
        raise AlreadyEdgeError(f"{xy} is already an edge")
    r = as_rational(r)
    h_xy = shortest_path(m, xy.a, xy.b)
    c_xy = lower_envelope(m, xy.a, xy.b)
    if r < c_xy or r > h_xy:
        raise ROutOfRangeError(
            f"r={r} outside [{c_xy}, {h_xy}]", bound="lo" if r < c_xy else "hi", lo=c_xy, hi=h_xy
        )
    extended = m.with_edge(xy, r)
    t_old = m._table()
    t_new = extended._table()
    strong_lower = c_xy / 3 + 2 * h_xy / 3 <= r  # statement (5) hypothesis

    stmts = {k: StatementResult() for k in (1, 2, 3, 4, 5)}
    verts = sorted(m.vertices)
    for i, u in enumerate(verts):
        for v in verts[i + 1 :]:
            uv = Doubleton(u, v)
            h_old = t_old[(u, v)]
            h_new = t_new[(u, v)]
            c_old = lower_envelope(m, u, v)
            c_new = lower_envelope(extended, u, v)
            straight = t_old[(xy.a, u)] + t_old[(xy.b, v)]
            crossed = t_old[(xy.a, v)] + t_old[(xy.b, u)]
            dd = straight if straight <= crossed else crossed

            stmts[1].applicable += 1
            if not (h_new <= h_old and c_new >= max(c_old, r - dd)):
                stmts[1].failures.append((u, v))

            if h_old != h_new:
                stmts[2].applicable += 1
                if not (h_old - (h_xy - r) <= h_new == r + dd):
                    stmts[2].failures.append((u, v))
                stmts[3].applicable += 1
                if not (h_new - c_old >= r - c_xy):
                    stmts[3].failures.append((u, v))

            if c_old != c_new != r - dd and c_new > h_xy - 2 * r:
                stmts[4].applicable += 1
                if not (c_new - c_old <= h_xy - r and h_old - c_new >= r - c_xy):
                    stmts[4].failures.append((u, v))

            if strong_lower:
                stmts[5].applicable += 1
                bound = min(h_old - c_old, h_xy - r, 2 * dd)
                if not (h_new - c_new >= bound):
                    stmts[5].failures.append((u, v))
    return StepPropertyReport(xy, r, stmts)


# ---------------------------------------------------------------------------
# Full extension driver.

@dataclass(frozen=True)
class ExtensionStep:
    pair: Doubleton
    interval: AdmissibleInterval
    value: Fraction

    def to_json(self):
        return {
            "pair": [self.pair.a, self.pair.b],
            "interval": self.interval.to_json(),
            "value": rational_str(self.value),
        }


@dataclass
class ExtensionTrace:
    steps: list
    result: PartialMetric

    def to_json(self):
        from .serialize import metric_to_doc

        return {"steps": [s.to_json() for s in self.steps], "result": metric_to_doc(self.result)}


def _parse_order(order):
    if order in ("lex", "maxgap"):
        return order, None
    if isinstance(order, str) and order.startswith("random:"):
        return "random", random.Random(int(order.split(":", 1)[1]))
    if order == "random":
        return "random", random.Random(0)
    raise MalformedInputError(f"unknown order policy {order!r}")


def _next_pair(policy, rng, current, remaining):
    if policy == "lex":
        return remaining[0]
    if policy == "random":
        return remaining[rng.randrange(len(remaining))]
    # maxgap: largest distance-minus-envelope gap, lexicographic tie-break
    best = None
    best_gap = None
    for d in remaining:
        gap = shortest_path(current, d.a, d.b) - lower_envelope(current, d.a, d.b)
        if best_gap is None or gap > best_gap:
            best, best_gap = d, gap
    return best


def _choose_midpoint(interval, used):
    c = interval.midpoint
    while c in used:
        c = (c + interval.hi) / 2
    return c


def _choose_from_set(choice_set, interval, used):
    """Element of the choice set inside [lo, hi), unused if possible."""
    lo, hi = interval.lo, interval.hi
    in_range = sorted(p for p in choice_set.points if lo <= p < hi)
    for p in in_range:
        if p not in used:
            return p
    for ilo, ihi in choice_set.intervals:
        top = hi if ihi is None else min(hi, ihi)
        bottom = max(ilo, lo)
        if top <= bottom:
            continue
        c = (bottom + top) / 2
        while c in used:
            c = (c + top) / 2
        return c
    if in_range:
        return in_range[0]  # dense-set injectivity not achievable with points only
    raise ChoiceSetMissesIntervalError(
        f"choice set misses admissible interval [{lo}, {hi})", lo=lo, hi=hi
    )


def full_extend(m: PartialMetric, order="lex", choice="midpoint") -> ExtensionTrace:
    """Extend to a full metric, one admissible step per missing pair.

    ``order``: "lex", "maxgap", or "random:SEED".  ``choice``: "midpoint" or a
    mapping from Doubleton to a game ChoiceSet; with per-pair choice sets the
    chosen values are kept pairwise distinct (bisecting toward the upper end
    on collision).
    """
    _require_floppy(m)
    policy, rng = _parse_order(order)
    current = m
    remaining = list(m.non_edges())
    used = set()
    steps = []
    while remaining:
        d = _next_pair(policy, rng, current, remaining)
        remaining.remove(d)
        interval = _interval(current, d)
        if choice == "midpoint":
            value = _choose_midpoint(interval, used)
        else:
            try:
                cs = choice[d]
            except KeyError:
                raise MissingChoiceSetError(f"no choice set supplied for {d}") from None
            value = _choose_from_set(cs, interval, used)
        used.add(value)
        current = one_step_extend(current, d, value, THEOREM, assume_floppy=True, verify=False)
        steps.append(ExtensionStep(d, interval, value))
    return ExtensionTrace(steps, current)
