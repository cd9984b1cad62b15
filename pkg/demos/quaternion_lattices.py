"""
Complexes from quaternions
==========================

For a prime ``p = 1 mod 4`` there are ``p + 1`` integral quaternions of
norm ``p`` with odd positive real part and even imaginary parts.  Two
such primes give a one-vertex complex whose link is complete bipartite.
"""

from bireversible import automata as au
from bireversible import complexes as cx
from bireversible.errors import MultipleSolutions
from bireversible.quaternions import Quaternion, build_lattice_complex, enumerate_generators, solve_square

for p in (5, 13, 17, 29):
    print(p, len(enumerate_generators(p).elements))

xs, qs = enumerate_generators(5), enumerate_generators(13)
q2, x2, sign = solve_square(Quaternion(1, 2), Quaternion(3, 0, 2), xs, qs)
print(f"(1+2i)(3+2j) = {'+' if sign > 0 else '-'}({q2})({x2})")

c = build_lattice_complex(5, 13)
a = cx.automaton_from_vht(c)
print(len(c.squares), "squares;", a.alphabet_size, "letters;", a.state_count, "states")
print("bi-reversible:", au.is_bireversible(a))

###############################################################################
# Equal primes
# ------------
# With ``p = l`` the cell of ``x`` and its conjugate is ``x * conj(x) = p``,
# which factors in ``p + 1`` ways, so no square is singled out.

g = enumerate_generators(5)
x = g.elements[0]
try:
    solve_square(x, x.conj(), g, g)
except MultipleSolutions as exc:
    print(len(exc.solutions), "solutions for the cell", x, x.conj())
