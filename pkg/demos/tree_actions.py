"""
Acting on the rooted tree
=========================

Every state word moves the words over the alphabet.  The odometer adds
one to a binary number written least significant digit first.
"""

from bireversible import fixtures, tree

odo = fixtures.odometer()
a = odo.state_index("a")

for w in [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)]:
    print(w, "->", tree.apply(odo, a, w))

# Words of states compose with the rightmost acting first.
print(tree.apply_word(odo, (a, a), (0, 0, 0)))

###############################################################################
# Rectangles
# ----------
# Stacking squares row by row records both the image (top) and the
# states left over (right side).

r = tree.rectangle(odo, (a, a), (1, 1, 0))
print("top:", [s.index for s in r.top], "right:", [odo.state_labels[s.index] for s in r.right])

###############################################################################
# Deciding triviality
# -------------------
# The oracle follows composed states until the reachable set closes
# up, then keeps only those that act trivially on one letter and lead to
# such states.  A nontrivial word comes back with an input it moves.

res = tree.triviality(odo, (a,))
print(res)
gs = fixtures.gupta_sidki()
print("a c trivial:", tree.acts_trivially(gs, (0, 2)))
print("(a b)^9 trivial:", tree.acts_trivially(gs, (0, 1) * 9))

# Portraits list the local permutation at each vertex.
for v, perm in sorted(tree.portrait(odo, (a,), 3).items(), key=lambda kv: (len(kv[0]), kv[0])):
    print(v, perm)
