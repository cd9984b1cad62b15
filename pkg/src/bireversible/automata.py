"""Finite synchronous automata and the operations between them.

Tables are indexed ``(state, letter)`` throughout: ``transition[q][x]`` is
the state entered after reading ``x`` in state ``q`` and ``output[q][x]`` is
the letter written.  Labels are cosmetic and never take part in equality.
"""

from __future__ import annotations

import hashlib
import itertools
import operator
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import (
    FormatError,
    MissingEntry,
    NotInvertible,
    OutOfRangeEntry,
    SizeMismatch,
)
from .words import BAR, toggle_bar


def _default_letters(n):
    return tuple(str(i) for i in range(n))


def _default_states(n):
    return tuple(f"q{i}" for i in range(n))


@dataclass(frozen=True)
class Automaton:
    alphabet_size: int
    state_count: int
    transition: tuple
    output: tuple
    letter_labels: tuple = field(default=(), compare=False)
    state_labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        validate(self)
        set_ = object.__setattr__
        set_(self, "transition", tuple(tuple(int(v) for v in row) for row in self.transition))
        set_(self, "output", tuple(tuple(int(v) for v in row) for row in self.output))
        letters = tuple(self.letter_labels) or _default_letters(self.alphabet_size)
        states = tuple(self.state_labels) or _default_states(self.state_count)
        if len(letters) != self.alphabet_size or len(states) != self.state_count:
            raise ValueError("label count does not match table size")
        set_(self, "letter_labels", letters)
        set_(self, "state_labels", states)

    @classmethod
    def from_tables(cls, transition, output, letter_labels=(), state_labels=()):
        """Build from ``(state, letter)`` tables, inferring the sizes."""
        state_count = len(output)
        alphabet_size = len(letter_labels) if letter_labels else (len(output[0]) if output else 0)
        return cls(alphabet_size, state_count, transition, output, tuple(letter_labels), tuple(state_labels))

    def __repr__(self):
        return (
            f"Automaton(|X|={self.alphabet_size}, |Q|={self.state_count}, "
            f"letters={self.letter_labels}, states={self.state_labels})"
        )

    def output_row(self, q) -> tuple:
        return self.output[q]

    def letter_index(self, name: str) -> int:
        return self.letter_labels.index(name)

    def state_index(self, name: str) -> int:
        return self.state_labels.index(name)

    def relabel(self, letter_labels=None, state_labels=None) -> "Automaton":
        return Automaton(
            self.alphabet_size,
            self.state_count,
            self.transition,
            self.output,
            tuple(letter_labels or self.letter_labels),
            tuple(state_labels or self.state_labels),
        )


def validate(a) -> None:
    """Raise :class:`MissingEntry` or :class:`OutOfRangeEntry` on a bad table.

    Cells are checked state by state, letter by letter, transition before
    output, so the first reported error is deterministic.
    """
    nx, nq = a.alphabet_size, a.state_count
    if nx < 1 or nq < 1:
        raise ValueError("alphabet and state set must be nonempty")
    tables = (("transition", a.transition, nq), ("output", a.output, nx))
    for name, table, _ in tables:
        if len(table) > nq:
            raise OutOfRangeEntry((nq,), name, "extra row")
    for q in range(nq):
        for x in range(nx):
            for name, table, bound in tables:
                try:
                    v = table[q][x]
                except (IndexError, TypeError):
                    raise MissingEntry((q, x), name) from None
                if v is None:
                    raise MissingEntry((q, x), name)
                try:
                    v = operator.index(v)
                except TypeError:
                    raise OutOfRangeEntry((q, x), name, v) from None
                if isinstance(v, bool) or not 0 <= v < bound:
                    raise OutOfRangeEntry((q, x), name, v)
        for name, table, _ in tables:
            if len(table[q]) > nx:
                raise OutOfRangeEntry((q, nx), name, "extra column")


def is_invertible(a: Automaton) -> bool:
    n = a.alphabet_size
    return all(len(set(row)) == n for row in a.output)


def _require_invertible(a):
    if not is_invertible(a):
        bad = next(q for q, row in enumerate(a.output) if len(set(row)) != a.alphabet_size)
        raise NotInvertible(f"output row of state {a.state_labels[bad]!r} is not a permutation")


def inverse(a: Automaton) -> Automaton:
    """The inverse automaton; state ``q`` of the result is the barred ``q``.

    Its output row is the inverse permutation of ``a``'s row and reading
    ``x`` leads to the bar of ``transition[q][y]`` where ``y`` is the
    preimage of ``x``.  Bars live in the labels and cancel in pairs.
    """
    _require_invertible(a)
    out, trans = [], []
    for q in range(a.state_count):
        row = a.output[q]
        inv = [0] * a.alphabet_size
        for x, y in enumerate(row):
            inv[y] = x
        out.append(tuple(inv))
        trans.append(tuple(a.transition[q][inv[x]] for x in range(a.alphabet_size)))
    return Automaton(
        a.alphabet_size,
        a.state_count,
        tuple(trans),
        tuple(out),
        a.letter_labels,
        tuple(toggle_bar(s) for s in a.state_labels),
    )


def dual(a: Automaton) -> Automaton:
    """Swap letters with states and output with transition."""
    nx, nq = a.alphabet_size, a.state_count
    out = tuple(tuple(a.transition[q][x] for q in range(nq)) for x in range(nx))
    trans = tuple(tuple(a.output[q][x] for q in range(nq)) for x in range(nx))
    return Automaton(nq, nx, trans, out, a.state_labels, a.letter_labels)


def is_reversible(a: Automaton) -> bool:
    nq = a.state_count
    return all(len({a.transition[q][x] for q in range(nq)}) == nq for x in range(a.alphabet_size))


def is_bireversible(a: Automaton) -> bool:
    return is_invertible(a) and is_reversible(a) and is_reversible(inverse(a))


def with_inverse(a: Automaton) -> Automaton:
    """Disjoint union of ``a`` and its inverse on ``2|Q|`` states.

    State ``q`` keeps index ``q``; its bar gets index ``|Q| + q``.  This is
    how signed state words act.
    """
    inv = inverse(a)
    n = a.state_count
    trans = a.transition + tuple(tuple(n + t for t in row) for row in inv.transition)
    return Automaton(
        a.alphabet_size,
        2 * n,
        trans,
        a.output + inv.output,
        a.letter_labels,
        a.state_labels + inv.state_labels,
    )


# -- morphisms and isomorphism ------------------------------------------------


@dataclass(frozen=True)
class AutomatonMorphism:
    letter_map: tuple
    state_map: tuple


def is_morphism(m: AutomatonMorphism, a: Automaton, b: Automaton) -> bool:
    fx, fq = m.letter_map, m.state_map
    if len(fx) != a.alphabet_size or len(fq) != a.state_count:
        return False
    if any(not 0 <= v < b.alphabet_size for v in fx) or any(not 0 <= v < b.state_count for v in fq):
        return False
    for q in range(a.state_count):
        for x in range(a.alphabet_size):
            if b.output[fq[q]][fx[x]] != fx[a.output[q][x]]:
                return False
            if b.transition[fq[q]][fx[x]] != fq[a.transition[q][x]]:
                return False
    return True


def collapse_morphism(a: Automaton) -> AutomatonMorphism:
    """The unique morphism onto the one-letter one-state automaton."""
    return AutomatonMorphism((0,) * a.alphabet_size, (0,) * a.state_count)


def _state_signature(a, q):
    row = a.output[q]
    return (
        tuple(sorted(Counter(row).values())),
        sum(row[x] == x for x in range(a.alphabet_size)),
        sum(a.transition[q][x] == q for x in range(a.alphabet_size)),
        len(set(a.transition[q])),
    )


def _letter_signature(a, x):
    col_out = [a.output[q][x] for q in range(a.state_count)]
    col_tr = [a.transition[q][x] for q in range(a.state_count)]
    return (
        sum(v == x for v in col_out),
        tuple(sorted(Counter(col_tr).values())),
        tuple(sorted(Counter(col_out).values())),
    )


def find_isomorphism(a: Automaton, b: Automaton) -> Optional[AutomatonMorphism]:
    """Search for a bijective morphism ``a -> b`` by backtracking.

    Every assignment is pushed through both commuting conditions before
    branching again, so in practice only a handful of branches survive.
    """
    if a.alphabet_size != b.alphabet_size or a.state_count != b.state_count:
        raise SizeMismatch(
            f"|X|={a.alphabet_size}, |Q|={a.state_count} vs |X'|={b.alphabet_size}, |Q'|={b.state_count}"
        )
    nx, nq = a.alphabet_size, a.state_count
    sq_a = [_state_signature(a, q) for q in range(nq)]
    sq_b = [_state_signature(b, q) for q in range(nq)]
    sx_a = [_letter_signature(a, x) for x in range(nx)]
    sx_b = [_letter_signature(b, x) for x in range(nx)]
    if sorted(sq_a) != sorted(sq_b) or sorted(sx_a) != sorted(sx_b):
        return None

    def assign(fq, fx, iq, ix, pending):
        # pending: list of ("q"|"x", source, target)
        while pending:
            kind, s, t = pending.pop()
            f, finv, sig_a, sig_b = (fq, iq, sq_a, sq_b) if kind == "q" else (fx, ix, sx_a, sx_b)
            if f[s] == t:
                continue
            if f[s] != -1 or finv[t] != -1 or sig_a[s] != sig_b[t]:
                return False
            f[s], finv[t] = t, s
            if kind == "q":
                pairs = [(s, x) for x in range(nx) if fx[x] != -1]
            else:
                pairs = [(q, s) for q in range(nq) if fq[q] != -1]
            for q, x in pairs:
                pending.append(("x", a.output[q][x], b.output[fq[q]][fx[x]]))
                pending.append(("q", a.transition[q][x], b.transition[fq[q]][fx[x]]))
        return True

    def search(fq, fx, iq, ix):
        free_q = [q for q in range(nq) if fq[q] == -1]
        free_x = [x for x in range(nx) if fx[x] == -1]
        if not free_q and not free_x:
            return AutomatonMorphism(tuple(fx), tuple(fq))
        options = []
        for q in free_q:
            options.append((sum(iq[t] == -1 and sq_b[t] == sq_a[q] for t in range(nq)), "q", q))
        for x in free_x:
            options.append((sum(ix[t] == -1 and sx_b[t] == sx_a[x] for t in range(nx)), "x", x))
        _, kind, s = min(options)
        size, sig_a, sig_b, finv = (nq, sq_a, sq_b, iq) if kind == "q" else (nx, sx_a, sx_b, ix)
        for t in range(size):
            if finv[t] != -1 or sig_b[t] != sig_a[s]:
                continue
            c = [fq[:], fx[:], iq[:], ix[:]]
            if assign(*c, [(kind, s, t)]):
                found = search(*c)
                if found is not None:
                    return found
        return None

    return search([-1] * nq, [-1] * nx, [-1] * nq, [-1] * nx)


def are_isomorphic(a: Automaton, b: Automaton) -> bool:
    return find_isomorphism(a, b) is not None


# -- the eight relatives -------------------------------------------------------

# D4 generated by D (dual) and I (inverse); words read left to right as the
# order in which operations are applied, so "DI" is inverse(dual(a)).
ORBIT_WORDS = ("", "D", "I", "DI", "ID", "DID", "IDI", "DIDI")


@dataclass(frozen=True)
class OrbitMember:
    word: str
    automaton: Optional[Automaton]
    reason: Optional[str] = None

    @property
    def defined(self) -> bool:
        return self.automaton is not None


@dataclass(frozen=True)
class EightOrbit:
    members: tuple
    distinct: tuple  # OrbitMember, one per isomorphism class, shortest word first

    @property
    def all_defined(self) -> bool:
        return all(m.defined for m in self.members)

    @property
    def undefined(self) -> tuple:
        return tuple(m for m in self.members if not m.defined)


def _apply_ops(a, word, cache):
    if word in cache:
        return cache[word]
    prev = _apply_ops(a, word[:-1], cache)
    if prev.automaton is None:
        res = OrbitMember(word, None, prev.reason)
    elif word[-1] == "D":
        res = OrbitMember(word, dual(prev.automaton))
    elif is_invertible(prev.automaton):
        res = OrbitMember(word, inverse(prev.automaton))
    else:
        where = f"'{word[:-1]}'" if word[:-1] else "the automaton itself"
        res = OrbitMember(word, None, f"{where} is not invertible")
    cache[word] = res
    return res


def eight_orbit(a: Automaton) -> EightOrbit:
    cache = {"": OrbitMember("", a)}
    members = tuple(_apply_ops(a, w, cache) for w in ORBIT_WORDS)
    distinct: list = []
    for m in sorted((m for m in members if m.defined), key=lambda m: (len(m.word), m.word)):
        b = m.automaton
        if not any(
            (d.automaton.alphabet_size, d.automaton.state_count) == (b.alphabet_size, b.state_count)
            and are_isomorphic(d.automaton, b)
            for d in distinct
        ):
            distinct.append(m)
    return EightOrbit(members, tuple(distinct))


# -- inverse closure ------------------------------------------------------------


def inverse_closure(a: Automaton, oracle: Callable | None = None) -> Automaton:
    """Adjoin inverses of all states, reusing states that already invert.

    The barred copy of ``q`` is dropped in favour of the first state ``r``
    for which ``oracle(a, (r, q))`` certifies that ``r`` after ``q`` is the
    identity.  Without that certificate the barred state is kept.
    """
    if oracle is None:
        from .tree import acts_trivially as oracle
    _require_invertible(a)
    n = a.state_count
    inv = inverse(a)
    partner = {}
    for q in range(n):
        for r in range(n):
            if oracle(a, (r, q)):
                partner[q] = r
                break
    kept = [q for q in range(n) if q not in partner]
    new_index = {("+", q): q for q in range(n)}
    for k, q in enumerate(kept):
        new_index[("-", q)] = n + k
    for q, r in partner.items():
        new_index[("-", q)] = r
    trans = [list(row) for row in a.transition]
    out = [list(row) for row in a.output]
    labels = list(a.state_labels)
    for q in kept:
        trans.append([new_index[("-", t)] for t in inv.transition[q]])
        out.append(list(inv.output[q]))
        labels.append(inv.state_labels[q])
    return Automaton(a.alphabet_size, len(trans), trans, out, a.letter_labels, tuple(labels))


# -- text format -----------------------------------------------------------------


def fingerprint(a: Automaton) -> str:
    """Label-free digest of the tables, for report headers."""
    h = hashlib.sha256(repr((a.alphabet_size, a.state_count, a.transition, a.output)).encode())
    return h.hexdigest()[:16]


def format_aut(a: Automaton) -> str:
    lines = [
        "alphabet: " + " ".join(a.letter_labels),
        "states: " + " ".join(a.state_labels),
    ]
    for q, name in enumerate(a.state_labels):
        cells = [
            f"{a.letter_labels[x]} -> {a.letter_labels[a.output[q][x]]} @ {a.state_labels[a.transition[q][x]]}"
            for x in range(a.alphabet_size)
        ]
        lines.append(f"{name}: " + " ; ".join(cells))
    return "\n".join(lines) + "\n"


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if line.strip():
            yield lineno, line


def _header(item, key, source):
    lineno, line = item
    head, sep, rest = line.partition(":")
    if not sep or head.strip() != key:
        raise FormatError(f"expected '{key}:'", lineno, len(line) - len(line.lstrip()) + 1, source)
    names = rest.split()
    if not names:
        raise FormatError(f"'{key}:' needs at least one name", lineno, len(line) + 1, source)
    if len(set(names)) != len(names):
        dup = next(n for n in names if names.count(n) > 1)
        raise FormatError(f"duplicate name {dup!r}", lineno, line.index(dup, len(head) + 1) + 1, source)
    return names


def parse_aut(text: str, source: str = "<aut>") -> Automaton:
    """Parse the ``.aut`` format (see :func:`format_aut`)."""
    items = list(_content_lines(text))
    eof = len(text.splitlines()) + 1
    if not items:
        raise FormatError("expected 'alphabet:'", eof, 1, source)
    letters = _header(items[0], "alphabet", source)
    if len(items) < 2:
        raise FormatError("expected 'states:'", eof, 1, source)
    states = _header(items[1], "states", source)
    li = {n: i for i, n in enumerate(letters)}
    si = {n: i for i, n in enumerate(states)}
    trans = [[None] * len(letters) for _ in states]
    out = [[None] * len(letters) for _ in states]
    seen = {}
    for lineno, line in items[2:]:
        head, sep, rest = line.partition(":")
        col0 = len(line) - len(line.lstrip()) + 1
        if not sep:
            raise FormatError("expected '<state>: ...'", lineno, col0, source)
        sname = head.strip()
        if sname not in si:
            raise FormatError(f"unknown state {sname!r}", lineno, col0, source)
        q = si[sname]
        if q in seen:
            raise FormatError(f"state {sname!r} defined twice", lineno, col0, source)
        seen[q] = (lineno, len(line) + 1)
        offset = len(head) + 1
        for cell in rest.split(";"):
            ccol = offset + len(cell) - len(cell.lstrip()) + 1
            offset += len(cell) + 1
            if not cell.strip():
                continue
            toks = cell.split()
            if len(toks) != 5 or toks[1] != "->" or toks[3] != "@":
                raise FormatError("expected '<letter> -> <letter> @ <state>'", lineno, ccol, source)
            x, y, t = toks[0], toks[2], toks[4]
            for name, table in ((x, li), (y, li), (t, si)):
                if name not in table:
                    kind = "letter" if table is li else "state"
                    raise FormatError(
                        f"unknown {kind} {name!r}", lineno, ccol + cell.strip().index(name), source
                    )
            if trans[q][li[x]] is not None:
                raise FormatError(f"letter {x!r} given twice for state {sname!r}", lineno, ccol, source)
            out[q][li[x]] = li[y]
            trans[q][li[x]] = si[t]
    for q, sname in enumerate(states):
        if q not in seen:
            raise FormatError(f"no line for state {sname!r}", eof, 1, source)
        missing = [letters[x] for x in range(len(letters)) if trans[q][x] is None]
        if missing:
            raise FormatError(f"state {sname!r} has no entry for letter {missing[0]!r}", *seen[q], source)
    return Automaton(len(letters), len(states), trans, out, tuple(letters), tuple(states))


def all_automata(nx: int, nq: int):
    """Every automaton on ``nx`` letters and ``nq`` states: ``(nq*nx)**(nq*nx)`` of them."""
    cells = nq * nx
    for outs in itertools.product(range(nx), repeat=cells):
        out = [outs[q * nx:(q + 1) * nx] for q in range(nq)]
        for trs in itertools.product(range(nq), repeat=cells):
            tr = [trs[q * nx:(q + 1) * nx] for q in range(nq)]
            yield Automaton(nx, nq, tr, out)


def unbar(a: Automaton) -> Automaton:
    return a.relabel(state_labels=[s[: -len(BAR)] if s.endswith(BAR) else s for s in a.state_labels])
