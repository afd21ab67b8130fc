"""Walk through the three derived distances on a small partial metric.

The running example is an H-shaped graph: a heavy edge ab of weight 10 with
one light leaf hanging off each end (ax and by, weight 1).  Three pairs carry
no weight yet: xy, ay, bx.  For each of them we look at

* the shortest-path distance d-hat (the largest value any metric extension
  can assign), and
* the lower envelope d-check (the smallest value any metric extension can
  assign without breaking a triangle through an existing edge).

A partial metric is *floppy* when d-check < d-hat strictly at every missing
pair: every pair still has wiggle room.
"""

from floppymetrics import (
    doubleton_dist,
    is_floppy,
    lower_envelope,
    pair,
    shortest_path,
    validate,
)
from floppymetrics.generators import h_graph


def main():
    m = h_graph()
    print("vertices:", sorted(m.vertices))
    for d, w in sorted(m.edges.items()):
        print(f"  edge {d.a}-{d.b}: {w}")

    rep = validate(m)
    print("\nvalidation:", rep.to_json())

    print("\nmissing pairs:")
    for d in sorted(m.non_edges()):
        hat = shortest_path(m, d.a, d.b)
        check = lower_envelope(m, d.a, d.b)
        print(f"  {d.a}-{d.b}: d-check = {check}, d-hat = {hat}, gap = {hat - check}")

    # the envelope at xy comes from the heavy edge ab: any extension D must
    # satisfy D(a,b) <= D(a,x) + D(x,y) + D(y,b), i.e. D(x,y) >= 10 - 1 - 1.
    sep = doubleton_dist(m, pair("a", "b"), pair("x", "y"))
    print("\ndoubleton distance between {a,b} and {x,y}:", sep)
    print("envelope at xy = weight(ab) - that separation =", 10 - sep)

    print("\nfloppy?", is_floppy(m).to_json())


if __name__ == "__main__":
    main()
