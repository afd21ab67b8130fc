"""Play the metric-extending game.

Each inning, Player I names a missing pair and a set of candidate values;
Player II picks one.  After a fixed number of innings Player I wins exactly
when the accumulated relation is a full metric.

Two morals, both demonstrated below:

1. Player I has a winning strategy on any floppy base: offer the open
   admissible interval against the running metric.  Whatever Player II
   answers, floppiness survives, so the game never jams.
2. Player I must keep the offers narrow.  If some offered set is wide
   relative to how tightly two pairs constrain each other (diameter more
   than three times their doubleton distance), Player II can pick two
   answers no metric can reconcile.
"""

from floppymetrics import (
    ChoiceSet,
    PartialMetric,
    pair,
    play,
    replay_sabotage,
    sabotage_witness,
    winning_player_one,
)
from floppymetrics.game import RandomSecondPlayer, adversary_player_two
from floppymetrics.generators import h_graph


def main():
    base = h_graph()
    innings = len(base.non_edges())

    print(f"=== winning strategy on the H-graph ({innings} innings) ===")
    t = play(base, innings, winning_player_one(base), RandomSecondPlayer(7))
    for mv in t.moves:
        print(f"  offered {mv.pair.a}-{mv.pair.b} from {mv.offered.to_json()['intervals']},"
              f" answered {mv.answer}")
    print("verdict:", t.verdict, t.reason.kind)

    t = play(base, innings, winning_player_one(base), adversary_player_two())
    print("against the adversary:", t.verdict, t.reason.kind)

    print("\n=== sabotage on a unit path a-b-c-d ===")
    path = PartialMetric(
        ["a", "b", "c", "d"],
        {pair("a", "b"): 1, pair("b", "c"): 1, pair("c", "d"): 1},
    )
    sets = {d: ChoiceSet.of_points(1, 100) for d in path.non_edges()}
    plan = sabotage_witness(path, sets)
    print(f"plan: answer {plan.r_p} on {plan.p.a}-{plan.p.b} and {plan.r_q} on"
          f" {plan.q.a}-{plan.q.b}; their separation is only {plan.separation}")
    t = replay_sabotage(path, sets, plan)
    print("verdict:", t.verdict, t.reason.kind)
    print("witness:", t.reason.to_json()["detail"])


if __name__ == "__main__":
    main()
