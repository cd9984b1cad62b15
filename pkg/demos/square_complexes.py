"""
Square complexes and their links
================================

Each cell of the automaton table is a square with bottom ``x``, left
``q``, top ``output[q][x]`` and right ``transition[q][x]``.  Gluing them
along one vertex gives a complex whose link tells whether the automaton
is bi-reversible.
"""

from bireversible import complexes as cx
from bireversible import fixtures

for name in ("identity2", "odometer"):
    a = fixtures.FIXTURES[name]()
    c = cx.build_sigma(a)
    lk = cx.link(c)
    print(name, "squares:", len(c.squares), "complete bipartite:", lk.is_complete_bipartite())
    for vg, hg, k in lk.bad_pairs():
        print("   ", c.edge_name(hg), c.edge_name(vg), "lie on", k, "squares")

print(cx.format_sqc(cx.build_sigma(fixtures.odometer())))

###############################################################################
# Normal forms
# ------------
# In a complete bipartite link every path can be pushed into a horizontal
# part followed by a vertical part.  The height (signed counts of each
# kind) never changes on the way.

a = fixtures.identity2()
w = (cx.v(1), cx.h(0), cx.v(0, -1), cx.h(1))
hw, vw = cx.normal_form(a, w)
c = cx.build_sigma(a)
print(" ".join(c.edge_name(e) for e in hw), "|", " ".join(c.edge_name(e) for e in vw))
print(tuple(cx.height(w)), tuple(cx.height(hw + vw)))
