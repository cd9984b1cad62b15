"""Actions of state words on the rooted tree ``X*`` and on ``F_X``.

Composition follows ``T(q1) o T(q2) o ... o T(ql)``: the rightmost state of a
state word acts first.  Signed state words act through the inverse
automaton, signed letter words through the reversible corners of the
square complex.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .automata import (
    Automaton,
    is_bireversible,
    is_invertible,
    is_reversible,
    with_inverse,
)
from .errors import (
    NotBireversible,
    NotInvertible,
    NotReduced,
    NotReversible,
    ResourceLimit,
)
from .words import SignedSymbol, as_signed, is_reduced

MAX_STATES_ENV = "BIREVERSIBLE_MAX_STATES"
DEFAULT_MAX_STATES = 5_000_000


def max_states() -> int:
    return int(os.environ.get(MAX_STATES_ENV, DEFAULT_MAX_STATES))


def _state_indices(a: Automaton, qw) -> tuple[Automaton, tuple[int, ...]]:
    """Resolve a possibly signed state word to indices of an unsigned automaton."""
    w = as_signed(qw)
    if all(s.sign == 1 for s in w):
        return a, tuple(s.index for s in w)
    if not is_invertible(a):
        raise NotInvertible("negative states need an invertible automaton")
    n = a.state_count
    return with_inverse(a), tuple(s.index if s.sign == 1 else n + s.index for s in w)


def _letters(w) -> tuple[int, ...]:
    out = []
    for s in as_signed(w):
        if s.sign != 1:
            raise ValueError("expected a positive word over X")
        out.append(s.index)
    return tuple(out)


def step(a: Automaton, states: tuple, x: int) -> tuple[int, tuple]:
    """Feed one letter to a composed state; returns (output letter, next composed state)."""
    nxt = list(states)
    for i in range(len(states) - 1, -1, -1):
        q = states[i]
        nxt[i] = a.transition[q][x]
        x = a.output[q][x]
    return x, tuple(nxt)


def _run(a: Automaton, states: tuple, w: Sequence[int]) -> tuple[list, tuple]:
    out = []
    for x in w:
        y, states = step(a, states, x)
        out.append(y)
    return out, states


def apply(a: Automaton, q: int, w: Iterable) -> tuple[int, ...]:
    """Image of the positive word ``w`` under the tree map of state ``q``."""
    out = []
    for x in _letters(w):
        out.append(a.output[q][x])
        q = a.transition[q][x]
    return tuple(out)


def apply_word(a: Automaton, qw, w) -> tuple[int, ...]:
    aut, states = _state_indices(a, qw)
    return tuple(_run(aut, states, _letters(w))[0])


def section(a: Automaton, qw, w) -> tuple[SignedSymbol, ...]:
    """The composed state reached after reading ``w``, as a signed state word."""
    aut, states = _state_indices(a, qw)
    _, states = _run(aut, states, _letters(w))
    n = a.state_count
    if aut is a:
        return tuple(SignedSymbol(q, 1) for q in states)
    return tuple(SignedSymbol(q, 1) if q < n else SignedSymbol(q - n, -1) for q in states)


# -- rectangles ---------------------------------------------------------------


@lru_cache(maxsize=64)
def _corner_tables(a: Automaton):
    nx, nq = a.alphabet_size, a.state_count
    inv_out = None
    if is_invertible(a):
        inv_out = [[0] * nx for _ in range(nq)]
        for q in range(nq):
            for x in range(nx):
                inv_out[q][a.output[q][x]] = x
    back = None  # back[x][q] = q' with transition[q'][x] == q
    if is_reversible(a):
        back = [[0] * nq for _ in range(nx)]
        for q in range(nq):
            for x in range(nx):
                back[x][a.transition[q][x]] = q
    opposite = None  # opposite[(q, y)] = (q', x') with output y and target q
    if inv_out is not None and back is not None and is_bireversible(a):
        opposite = {}
        for q in range(nq):
            for x in range(nx):
                opposite[(a.transition[q][x], a.output[q][x])] = (q, x)
    return inv_out, back, opposite


def tile(a: Automaton, q: SignedSymbol, x: SignedSymbol) -> tuple[SignedSymbol, SignedSymbol]:
    """The unique square with bottom ``x`` and left side ``q``; returns (top, right).

    Directions are read rightwards along the bottom and top and upwards
    along the left and right sides.
    """
    inv_out, back, opposite = _corner_tables(a)
    if q.sign == 1 and x.sign == 1:
        return SignedSymbol(a.output[q.index][x.index]), SignedSymbol(a.transition[q.index][x.index])
    if q.sign == -1 and x.sign == 1:
        if inv_out is None:
            raise NotInvertible("negative state needs an invertible automaton")
        y = inv_out[q.index][x.index]
        return SignedSymbol(y), SignedSymbol(a.transition[q.index][y], -1)
    if q.sign == 1:
        if back is None:
            raise NotReversible("negative letter needs a reversible automaton")
        p = back[x.index][q.index]
        return SignedSymbol(a.output[p][x.index], -1), SignedSymbol(p)
    if opposite is None:
        raise NotBireversible("negative state on negative letter needs a bi-reversible automaton")
    p, y = opposite[(q.index, x.index)]
    return SignedSymbol(y, -1), SignedSymbol(p, -1)


@dataclass(frozen=True)
class Rectangle:
    bottom: tuple
    left: tuple
    top: tuple
    right: tuple
    cells: tuple  # cells[row][col] = (letter, state) at the cell's lower-left corner; row 0 is the bottom row

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.bottom), len(self.left)


def rectangle(a: Automaton, qw, xw) -> Rectangle:
    """Fill the tessellated rectangle with lower side ``xw`` and left side ``qw``.

    The bottom row uses the last state of ``qw``, matching the composition
    order, so for positive words ``top == apply_word(a, qw, xw)``.
    """
    qs, xs = as_signed(qw), as_signed(xw)
    neg_q = any(s.sign == -1 for s in qs)
    neg_x = any(s.sign == -1 for s in xs)
    if neg_q and neg_x:
        if not is_bireversible(a):
            raise NotBireversible("signed states and signed letters need a bi-reversible automaton")
    elif neg_q and not is_invertible(a):
        raise NotInvertible("signed states need an invertible automaton")
    elif neg_x and not is_reversible(a):
        raise NotReversible("signed letters need a reversible automaton")
    row = xs
    rows = []
    right = [None] * len(qs)
    for i in range(len(qs) - 1, -1, -1):
        s = qs[i]
        cells, top = [], []
        for x in row:
            cells.append((x, s))
            y, s = tile(a, s, x)
            top.append(y)
        rows.append(tuple(cells))
        right[i] = s
        row = tuple(top)
    return Rectangle(xs, qs, tuple(row), tuple(right), tuple(rows))


# -- triviality oracle ----------------------------------------------------------


@dataclass(frozen=True)
class TrivialityResult:
    trivial: bool
    reachable: int
    witness: tuple | None = None  # positive letter word moved by the state word


def triviality(a: Automaton, qw, limit: int | None = None) -> TrivialityResult:
    """Decide whether a (signed) state word acts as the identity on ``X*``.

    Explores the composed states reachable from ``qw`` and takes the
    greatest subset whose members write the identity permutation and only
    lead to members.  Exact: no depth bound is involved.
    """
    aut, start = _state_indices(a, qw)
    limit = limit or max_states()
    nx = aut.alphabet_size
    ident = tuple(range(nx))
    index = {start: 0}
    order = [start]
    succ: list[list[int]] = []
    perms: list[tuple] = []
    parent: list[tuple] = [(-1, -1)]
    i = 0
    while i < len(order):
        st = order[i]
        row, perm = [], []
        for x in range(nx):
            y, nxt = step(aut, st, x)
            perm.append(y)
            j = index.get(nxt)
            if j is None:
                if len(order) >= limit:
                    raise ResourceLimit(f"more than {limit} composed states reachable")
                j = index[nxt] = len(order)
                order.append(nxt)
                parent.append((i, x))
            row.append(j)
        succ.append(row)
        perms.append(tuple(perm))
        i += 1
    n = len(order)
    preds: list[list[int]] = [[] for _ in range(n)]
    for u, row in enumerate(succ):
        for v in row:
            preds[v].append(u)
    removed = [perms[u] != ident for u in range(n)]
    queue = deque(u for u in range(n) if removed[u])
    while queue:
        v = queue.popleft()
        for u in preds[v]:
            if not removed[u]:
                removed[u] = True
                queue.append(u)
    if not removed[0]:
        return TrivialityResult(True, n)
    # BFS order means the first moving node has a shortest access path.
    u = next(k for k in range(n) if perms[k] != ident)
    x = next(x for x in range(nx) if perms[u][x] != x)
    path = [x]
    while u != 0:
        u, y = parent[u]
        path.append(y)
    return TrivialityResult(False, n, tuple(reversed(path)))


def acts_trivially(a: Automaton, qw) -> bool:
    return triviality(a, qw).trivial


def composite_tables(a: Automaton, length: int):
    """Transition and output tables of all state words of a fixed length.

    A word ``q1..qn`` is encoded in base ``|Q|`` with ``q1`` most
    significant.  Returns ``(succ, out)`` of shape ``(|Q|**n, |X|)``.
    """
    nq, nx = a.state_count, a.alphabet_size
    size = nq**length
    if size * nx > max_states() * 4:
        raise ResourceLimit(f"{size} words of length {length} exceed the state budget")
    tr = np.asarray(a.transition, dtype=np.int64)
    ou = np.asarray(a.output, dtype=np.int64)
    codes = np.arange(size, dtype=np.int64)
    digits = [(codes // nq ** (length - 1 - i)) % nq for i in range(length)]
    succ = np.empty((size, nx), dtype=np.int64)
    out = np.empty((size, nx), dtype=np.int64)
    for x in range(nx):
        y = np.full(size, x, dtype=np.int64)
        new = np.zeros(size, dtype=np.int64)
        for i in range(length - 1, -1, -1):
            d = digits[i]
            new += tr[d, y] * nq ** (length - 1 - i)
            y = ou[d, y]
        succ[:, x] = new
        out[:, x] = y
    return succ, out


def trivial_mask(a: Automaton, length: int) -> np.ndarray:
    """Boolean mask over all words of a given length: which act trivially.

    Same greatest fixpoint as :func:`triviality`, run at once on the whole
    (transition-closed) set of words of that length.
    """
    succ, out = composite_tables(a, length)
    bad = (out != np.arange(a.alphabet_size)).any(axis=1)
    while True:
        nxt = bad | bad[succ].any(axis=1)
        if (nxt == bad).all():
            return ~bad
        bad = nxt


def encode(word: Sequence[int], base: int) -> int:
    code = 0
    for s in word:
        code = code * base + s
    return code


# -- portraits ----------------------------------------------------------------


def portrait(a: Automaton, qw, depth: int) -> dict:
    """Output permutation at every vertex of ``X^{<depth}``, keyed by vertex word."""
    aut, start = _state_indices(a, qw)
    nx = aut.alphabet_size
    if nx**depth > max_states():
        raise ResourceLimit(f"portrait of depth {depth} has too many vertices")
    result = {}
    level = [((), start)]
    for _ in range(depth):
        nxt_level = []
        for v, st in level:
            perm = []
            for x in range(nx):
                y, nxt = step(aut, st, x)
                perm.append(y)
                nxt_level.append((v + (x,), nxt))
            result[v] = tuple(perm)
        level = nxt_level
    return result


def identity_up_to(a: Automaton, qw, depth: int) -> tuple | None:
    """Check the portrait to ``depth`` level by level; None if all identity.

    Otherwise returns a vertex word whose local permutation is not the
    identity.  Levels are deduplicated by composed state, so large depths
    stay cheap; works without the fixpoint machinery.
    """
    aut, start = _state_indices(a, qw)
    nx = aut.alphabet_size
    level = {start: ()}
    for _ in range(depth):
        nxt_level = {}
        for st, v in level.items():
            for x in range(nx):
                y, nxt = step(aut, st, x)
                if y != x:
                    return v
                nxt_level.setdefault(nxt, v + (x,))
        level = nxt_level
    return None


# -- action on the free group ----------------------------------------------------


def check_pairing(pairing: Sequence[int], size: int) -> tuple[int, ...]:
    p = tuple(pairing)
    if len(p) != size or any(not 0 <= v < size for v in p) or any(p[p[i]] != i for i in range(size)):
        raise ValueError("pairing must be an involution on the index set")
    return p


def fold_letters(w: Iterable, pairing: Sequence[int]) -> tuple[SignedSymbol, ...]:
    """Read letters of ``X = Y + bar(Y)`` as signed letters of ``Y``.

    A letter is positive when its index is not larger than its partner's.
    """
    out = []
    for s in as_signed(w):
        x = s.index if s.sign == 1 else pairing[s.index]
        out.append(SignedSymbol(x) if x <= pairing[x] else SignedSymbol(pairing[x], -1))
    return tuple(out)


def act_on_signed(a: Automaton, qw, xw, pairing: Sequence[int] | None = None) -> tuple:
    """Action of a state word on a freely reduced word of ``F_X``.

    Without ``pairing`` this is the top side of the rectangle with signed
    bottom in the complex of ``a``.  With an involutive ``pairing`` on the
    letters (as for automata read off undirected complexes) the negative
    letter ``x^-`` is the letter ``pairing[x]`` and the action is the plain
    action on ``X*`` folded back to signed form.
    """
    if not is_bireversible(a):
        raise NotBireversible("the free-group action needs a bi-reversible automaton")
    if pairing is None:
        xs = as_signed(xw)
        if not is_reduced(xs):
            raise NotReduced("letter word is not freely reduced")
        return rectangle(a, qw, xs).top
    pairing = check_pairing(pairing, a.alphabet_size)
    xs = fold_letters(xw, pairing)
    if not is_reduced(xs):
        raise NotReduced("letter word is not freely reduced")
    plain = [s.index if s.sign == 1 else pairing[s.index] for s in xs]
    return fold_letters(apply_word(a, qw, plain), pairing)
