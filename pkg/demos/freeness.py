"""
Bounded freeness and growth
===========================

The states of a quaternion automaton should generate a free group.  We
can only check this up to a length, but we can check it exhaustively.
"""

import time

from bireversible.analysis import freeness_certificate, growth_table, separating_depth
from bireversible.quaternions import lattice_automaton

a = lattice_automaton(5, 13)
names = a.state_labels
pairing = tuple(names.index(n[:-2] if n.endswith("^-") else n + "^-") for n in names)

for L in (2, 3, 4):
    t0 = time.perf_counter()
    cert = freeness_certificate(a, L, pairing)
    print(L, cert.verdict, cert.words_checked, f"{time.perf_counter() - t0:.2f}s")

# Growth counts distinct maps on a finite level.  Once the level is deep
# enough, reduced words of length n give 14 * 13^(n-1) distinct maps.
d, table = separating_depth(a, 3, pairing)
print("separating depth", d, table.counts, table.expected_free(14))
print(growth_table(a, 3, 1, pairing).counts, "at depth 1")
