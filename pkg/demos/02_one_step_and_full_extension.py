"""Extend a partial metric one missing pair at a time.

Every missing pair xy has an admissible interval

    [ check/3 + 2*hat/3 , hat )

and assigning any value from it keeps the metric floppy, so the process never
gets stuck.  Choosing values below that (down to the envelope) still yields a
graph pseudometric ("proposition" mode) but may pin other pairs tight.

The script extends the H-graph step by step, printing each interval and the
midpoint that gets chosen, and finishes with a full metric on all six pairs.
"""

from floppymetrics import (
    admissible_interval,
    full_extend,
    is_floppy,
    one_step_extend,
    pair,
    validate,
)
from floppymetrics.errors import ROutOfRangeError
from floppymetrics.generators import h_graph


def main():
    m = h_graph()

    xy = pair("x", "y")
    iv = admissible_interval(m, xy)
    print(f"admissible interval for x-y: [{iv.lo}, {iv.hi})  midpoint {iv.midpoint}")

    extended = one_step_extend(m, xy, iv.midpoint)
    print("after the step, still floppy?", is_floppy(extended).floppy)

    # the interval is half-open: the shortest-path distance itself is refused
    try:
        one_step_extend(m, xy, iv.hi)
    except ROutOfRangeError as exc:
        print("assigning hat itself is rejected:", exc)

    # proposition mode accepts the whole closed range [check, hat] but only
    # promises a pseudometric
    loose = one_step_extend(m, xy, 8, mode="proposition")
    print("envelope value in proposition mode: pseudometric?",
          validate(loose).graph_pseudometric,
          "still floppy?", is_floppy(loose).floppy)

    print("\nfull extension, largest-gap-first order:")
    trace = full_extend(m, order="maxgap")
    for step in trace.steps:
        d = step.pair
        print(f"  {d.a}-{d.b}: interval [{step.interval.lo}, {step.interval.hi}) -> {step.value}")
    rep = validate(trace.result)
    print("result is a full metric?", rep.full and rep.graph_metric)


if __name__ == "__main__":
    main()
