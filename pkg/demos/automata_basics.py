"""
Automata, duals and inverses
============================

A synchronous automaton reads a letter, writes a letter and changes
state.  Here we take the binary adding machine apart.
"""

from bireversible import automata as au
from bireversible import fixtures

odo = fixtures.odometer()
print(au.format_aut(odo))

# The output rows are permutations, so the automaton is invertible.
# Two states both move to ``e`` on letter 0, so the dual is not.
print("invertible:", au.is_invertible(odo))
print("reversible:", au.is_reversible(odo))

# Swapping the roles of letters and states gives the dual automaton.
print(au.format_aut(au.dual(odo)))

# The inverse reads outputs as inputs; its states carry a bar.
print(au.format_aut(au.inverse(odo)))

###############################################################################
# Eight relatives
# ---------------
# Alternating dual and inverse visits at most eight automata.  The orbit
# stops wherever an inverse is asked of a non-invertible member.

orbit = au.eight_orbit(odo)
for m in orbit.members:
    print(f"{m.word or '-':5s}", "defined" if m.defined else m.reason)
print(len(orbit.distinct), "distinct up to isomorphism")

###############################################################################
# Counting over all small automata
# --------------------------------

small = list(au.all_automata(2, 2))
print(len(small), "automata on two letters and two states")
print(sum(au.is_bireversible(a) for a in small), "of them bi-reversible")
