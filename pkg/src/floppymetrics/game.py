"""The metric-extending game with algorithmic players (finite length only).

Player I names a vertex pair and a choice set; Player II answers with a value
from the set.  After a fixed finite number of innings the referee inspects the
accumulated relation: Player I wins exactly when it is a full metric.

Provided players:

* ``winning_player_one`` -- offers the open interval that keeps the running
  metric floppy; wins whenever the game is long enough to cover every missing
  pair, against every legal opponent.
* ``adversary_player_two`` -- waits for an inning where the offered set allows
  an answer too far (w.r.t. the pair pseudometric) from a previous answer,
  then takes it, wrecking the triangle inequality.
* ``sabotage_witness`` -- the quantitative version of the adversary: given
  choice sets for all missing pairs, returns two pairs and two values that no
  full metric extension can accommodate, when the sets are wide enough.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Doubleton,
    PartialMetric,
    as_rational,
    doubleton_dist,
    is_floppy,
    lower_envelope,
    rational_str,
    shortest_chain,
    shortest_path,
    validate,
)
from .errors import (
    MalformedInputError,
    MetricError,
    MissingChoiceSetError,
    NotFloppyError,
    NotGraphMetricError,
)

PLAYER_I_WINS = "PLAYER_I_WINS"
PLAYER_II_WINS = "PLAYER_II_WINS"


@dataclass(frozen=True)
class ChoiceSet:
    """Finite union of rational points and open rational intervals in (0, inf).

    ``intervals`` entries are (lo, hi) with hi=None meaning unbounded above.
    """

    points: frozenset = frozenset()
    intervals: tuple = ()

    def __post_init__(self):
        pts = frozenset(as_rational(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        ivs = []
        for lo, hi in self.intervals:
            lo = as_rational(lo)
            hi = None if hi is None else as_rational(hi)
            if lo < 0 or (hi is not None and hi <= lo):
                raise MalformedInputError(f"bad interval ({lo}, {hi})")
            ivs.append((lo, hi))
        object.__setattr__(self, "intervals", tuple(ivs))
        if any(p <= 0 for p in pts):
            raise MalformedInputError("choice-set points must be positive")
        if not pts and not ivs:
            raise MalformedInputError("choice set must be nonempty")

    @classmethod
    def of_points(cls, *values):
        return cls(points=frozenset(as_rational(v) for v in values))

    @classmethod
    def open_interval(cls, lo, hi=None):
        return cls(intervals=((as_rational(lo), None if hi is None else as_rational(hi)),))

    def contains(self, v: Fraction) -> bool:
        if v in self.points:
            return True
        return any(lo < v and (hi is None or v < hi) for lo, hi in self.intervals)

    @property
    def nondegenerate(self) -> bool:
        return bool(self.intervals) or len(self.points) >= 2

    def diameter(self):
        """sup of pairwise distances; math.inf for unbounded sets."""
        los = list(self.points) + [lo for lo, _ in self.intervals]
        his = list(self.points) + [math.inf if hi is None else hi for _, hi in self.intervals]
        return max(his) - min(los)

    def least_element(self) -> Fraction:
        """Canonical 'arbitrary' answer: smallest point, or a quarter into an interval."""
        candidates = list(self.points)
        for lo, hi in self.intervals:
            candidates.append(lo + 1 if hi is None else lo + (hi - lo) / 4)
        return min(candidates)

    def element_far_from(self, center: Fraction, gap: Fraction):
        """Some element v with |v - center| > gap, or None."""
        pts = sorted(self.points, key=lambda p: (-abs(p - center), p))
        if pts and abs(pts[0] - center) > gap:
            return pts[0]
        for lo, hi in self.intervals:
            if hi is None:
                return max(lo, center + gap) + 1
            if hi > center + gap:
                bottom = max(lo, center + gap)
                return (bottom + hi) / 2
            top = min(hi, center - gap)
            if top > lo:
                return (lo + top) / 2
        return None

    def sample(self, rng: random.Random) -> Fraction:
        """Seeded random element; exact rationals only."""
        components = [("p", p) for p in sorted(self.points)] + [("i", iv) for iv in self.intervals]
        kind, payload = components[rng.randrange(len(components))]
        if kind == "p":
            return payload
        lo, hi = payload
        if hi is None:
            hi = lo + rng.randrange(1, 64)
        k = rng.randrange(1, 1 << 16)
        return lo + (hi - lo) * Fraction(k, 1 << 16)

    def to_json(self):
        return {
            "points": [rational_str(p) for p in sorted(self.points)],
            "intervals": [[rational_str(lo), None if hi is None else rational_str(hi)] for lo, hi in self.intervals],
        }


@dataclass(frozen=True)
class Move:
    pair: Doubleton
    offered: ChoiceSet
    answer: Fraction

    def to_json(self):
        return {
            "pair": [self.pair.a, self.pair.b],
            "offered": self.offered.to_json(),
            "answer": rational_str(self.answer),
        }


@dataclass(frozen=True)
class GameReason:
    kind: str
    detail: dict

    def to_json(self):
        return {"kind": self.kind, "detail": {k: _jsonable(v) for k, v in self.detail.items()}}


def _jsonable(v):
    if isinstance(v, Fraction):
        return rational_str(v)
    if isinstance(v, Doubleton):
        return [v.a, v.b]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass
class GameTranscript:
    base: PartialMetric
    moves: list
    verdict: str
    reason: GameReason

    def to_json(self):
        from .serialize import metric_to_doc

        return {
            "base": metric_to_doc(self.base),
            "moves": [m.to_json() for m in self.moves],
            "verdict": self.verdict,
            "reason": self.reason.to_json(),
        }


class PlayerIStrategy:
    def propose(self, base: PartialMetric, history: list):
        """Return (Doubleton, ChoiceSet) for the next inning."""
        raise NotImplementedError


class PlayerIIStrategy:
    def respond(self, base: PartialMetric, history: list, pair: Doubleton, offered: ChoiceSet):
        """Return an answer value from the offered set."""
        raise NotImplementedError


def accumulate(base: PartialMetric, moves):
    """Relation base-union-moves as a metric, or (None, pair) on conflicting values."""
    current = base
    assigned = dict(base.edges)
    for mv in moves:
        if mv.pair in assigned:
            if assigned[mv.pair] != mv.answer:
                return None, mv.pair
            continue
        assigned[mv.pair] = mv.answer
        current = current.with_edge(mv.pair, mv.answer)
    return current, None


def _loss_witness(relation: PartialMetric) -> GameReason:
    rep = validate(relation)
    if not rep.full:
        missing = relation.non_edges()[0]
        return GameReason("MISSING_PAIR", {"pair": missing})
    for d, w in sorted(relation.edges.items()):
        if w <= 0:
            return GameReason("NON_POSITIVE", {"pair": d, "weight": w})
    for d, w in sorted(relation.edges.items()):
        h = shortest_path(relation, d.a, d.b)
        if w > h:
            chain = shortest_chain(relation, d.a, d.b)
            return GameReason(
                "POLYGONAL_VIOLATION",
                {"pair": d, "weight": w, "chain": chain, "chain_weight": h},
            )
    return GameReason("NOT_FULL_METRIC", {})


def play(base: PartialMetric, game_length: int, player_one: PlayerIStrategy, player_two: PlayerIIStrategy) -> GameTranscript:
    """Referee a finite game and return the full transcript with verdict."""
    rep = validate(base)
    if not (rep.connected and rep.graph_metric):
        raise NotGraphMetricError("game base must be a graph metric")
    moves = []
    for _ in range(game_length):
        try:
            d, offered = player_one.propose(base, moves)
            if d.a not in base.vertices or d.b not in base.vertices:
                raise MalformedInputError(f"pair {d} outside the vertex set")
            if not isinstance(offered, ChoiceSet):
                raise MalformedInputError("offered set must be a ChoiceSet")
        except MetricError as exc:
            return GameTranscript(base, moves, PLAYER_II_WINS, GameReason("ILLEGAL_MOVE_I", {"message": str(exc)}))
        try:
            answer = as_rational(player_two.respond(base, moves, d, offered))
        except MetricError as exc:
            return GameTranscript(base, moves, PLAYER_I_WINS, GameReason("ILLEGAL_MOVE_II", {"message": str(exc)}))
        if not offered.contains(answer):
            moves.append(Move(d, offered, answer))
            return GameTranscript(base, moves, PLAYER_I_WINS, GameReason("ILLEGAL_MOVE_II", {"pair": d, "answer": answer}))
        moves.append(Move(d, offered, answer))
    relation, conflict = accumulate(base, moves)
    if conflict is not None:
        return GameTranscript(
            base, moves, PLAYER_II_WINS, GameReason("MULTIVALUED_PAIR", {"pair": conflict})
        )
    rep = validate(relation)
    if rep.full and rep.graph_metric and rep.connected:
        return GameTranscript(base, moves, PLAYER_I_WINS, GameReason("FULL_METRIC", {}))
    return GameTranscript(base, moves, PLAYER_II_WINS, _loss_witness(relation))


class WinningFirstPlayer(PlayerIStrategy):
    """Walks the missing pairs in a fixed order, offering the open floppiness
    interval against the running metric.  Wins every game whose length equals
    the number of missing pairs."""

    def __init__(self, base: PartialMetric):
        rep = is_floppy(base)
        if not rep.floppy:
            raise NotFloppyError(f"base is not floppy: pair {rep.worst_pair} has gap {rep.gap}")
        self._missing = sorted(base.non_edges())
        self._cache_len = 0
        self._cache_metric = base
        self._base = base

    def _current(self, base, history):
        # incremental rebuild: histories grow by one inning within a game and
        # reset to empty between games
        if len(history) == self._cache_len + 1:
            mv = history[-1]
            if not self._cache_metric.is_edge(mv.pair):
                self._cache_metric = self._cache_metric.with_edge(mv.pair, mv.answer)
            self._cache_len += 1
        elif len(history) != self._cache_len:
            metric, conflict = accumulate(base, history)
            self._cache_metric = metric if metric is not None else base
            self._cache_len = len(history)
        return self._cache_metric

    def propose(self, base, history):
        current = self._current(base, history)
        k = len(history)
        if k < len(self._missing):
            d = self._missing[k]
            h = shortest_path(current, d.a, d.b)
            c = lower_envelope(current, d.a, d.b)
            return d, ChoiceSet.open_interval(c / 3 + 2 * h / 3, h)
        # everything already assigned: burn the inning on a settled pair
        if current.edges:
            d = min(current.edges)
            return d, ChoiceSet.of_points(current.weight(d))
        raise MalformedInputError("no doubleton exists on this vertex set")


def winning_player_one(base: PartialMetric) -> WinningFirstPlayer:
    return WinningFirstPlayer(base)


class AdversarySecondPlayer(PlayerIIStrategy):
    """Answers canonically until an offered set permits a value whose distance
    from some earlier answer exceeds the pair pseudometric between the two
    doubletons; then takes that value."""

    def __init__(self, choice_sets=None):
        self.choice_sets = choice_sets  # informational; answers come from the offered set

    def respond(self, base, history, pair, offered):
        for mv in history:
            if mv.pair == pair:
                continue
            gap = doubleton_dist(base, pair, mv.pair)
            far = offered.element_far_from(mv.answer, gap)
            if far is not None:
                return far
        return offered.least_element()


def adversary_player_two(choice_sets=None) -> AdversarySecondPlayer:
    return AdversarySecondPlayer(choice_sets)


class RandomSecondPlayer(PlayerIIStrategy):
    def __init__(self, seed: int):
        self._rng = random.Random(seed)

    def respond(self, base, history, pair, offered):
        return offered.sample(self._rng)


class ProbeSecondPlayer(PlayerIIStrategy):
    """Deterministic answers near an end (or the middle) of offered intervals."""

    def __init__(self, mode: str):
        if mode not in ("low", "high", "mid"):
            raise MalformedInputError(f"unknown probe mode {mode!r}")
        self.mode = mode

    def respond(self, base, history, pair, offered):
        if offered.intervals:
            lo, hi = offered.intervals[0]
            if hi is None:
                hi = lo + 2
            span = hi - lo
            if self.mode == "low":
                return lo + span / 1024
            if self.mode == "high":
                return hi - span / 1024
            return lo + span / 2
        return offered.least_element()


class ScriptedFirstPlayer(PlayerIStrategy):
    """Plays a fixed script of (pair, choice set) moves."""

    def __init__(self, script):
        self.script = list(script)

    def propose(self, base, history):
        if len(history) >= len(self.script):
            raise MalformedInputError("script exhausted")
        return self.script[len(history)]


class PlanSecondPlayer(PlayerIIStrategy):
    """Executes a sabotage plan, answering canonically elsewhere."""

    def __init__(self, plan: "SabotagePlan"):
        self.plan = plan

    def respond(self, base, history, pair, offered):
        if pair == self.plan.p and offered.contains(self.plan.r_p):
            return self.plan.r_p
        if pair == self.plan.q and offered.contains(self.plan.r_q):
            return self.plan.r_q
        return offered.least_element()


@dataclass(frozen=True)
class SabotagePlan:
    p: Doubleton
    q: Doubleton
    r_p: Fraction
    r_q: Fraction
    separation: Fraction  # doubleton_dist(p, q); |r_p - r_q| exceeds it

    def to_json(self):
        return {
            "p": [self.p.a, self.p.b],
            "q": [self.q.a, self.q.b],
            "r_p": rational_str(self.r_p),
            "r_q": rational_str(self.r_q),
            "separation": rational_str(self.separation),
        }


def sabotage_witness(base: PartialMetric, choice_sets) -> SabotagePlan | None:
    """Find two missing pairs whose choice sets force a non-metric completion.

    Trigger: 3 * doubleton_dist(p, q) < diameter(F_p).  Then some value of F_p
    sits farther from any fixed F_q value than the pair pseudometric allows,
    and no full metric extension can take both values.
    """
    missing = base.non_edges()
    for d in missing:
        if d not in choice_sets:
            raise MissingChoiceSetError(f"no choice set for missing pair {d}")
    for p in missing:
        diam = choice_sets[p].diameter()
        for q in missing:
            if q == p:
                continue
            sep = doubleton_dist(base, p, q)
            if 3 * sep < diam:
                r_q = choice_sets[q].least_element()
                r_p = choice_sets[p].element_far_from(r_q, sep)
                if r_p is None:  # cannot happen when the trigger fired
                    continue
                return SabotagePlan(p, q, r_p, r_q, sep)
    return None


def replay_sabotage(base: PartialMetric, choice_sets, plan: SabotagePlan) -> GameTranscript:
    """Play out a plan: Player I offers every missing pair's own choice set."""
    missing = sorted(base.non_edges())
    script = [(d, choice_sets[d]) for d in missing]
    return play(base, len(script), ScriptedFirstPlayer(script), PlanSecondPlayer(plan))
