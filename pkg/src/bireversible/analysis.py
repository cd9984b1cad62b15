"""Certificates about the groups generated by an automaton.

Nothing here claims more than it checked: freeness is certified up to a
stated word length, infinite order only through a nonzero height, and
growth counts distinct maps on a finite level of the tree.
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .automata import Automaton, fingerprint, is_bireversible, is_invertible
from .complexes import HeightVector, height
from .errors import NotBireversible, NotInvertible, PairingInvalid, ResourceLimit
from .tree import acts_trivially, check_pairing, encode, max_states, trivial_mask, triviality
from .words import SignedSymbol, invert_word

MAX_LEAVES_ENV = "BIREVERSIBLE_MAX_LEAVES"
DEFAULT_MAX_LEAVES = 1_000_000


def reduced_words(n_gens: int, length: int, pairing: Sequence[int]):
    """Words of a given length with no factor ``q q*``, in lexicographic order."""
    if length == 0:
        yield ()
        return

    def extend(prefix):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for s in range(n_gens):
            if prefix and pairing[prefix[-1]] == s:
                continue
            prefix.append(s)
            yield from extend(prefix)
            prefix.pop()

    yield from extend([])


def count_reduced(n_gens: int, length: int, pairing: Sequence[int]) -> int:
    """Number of reduced words; ``n (n-1)^(k-1)`` for a fixed-point-free pairing."""
    fixed = sum(pairing[i] == i for i in range(n_gens))
    if fixed == 0 and length > 0:
        return n_gens * (n_gens - 1) ** (length - 1)
    return sum(1 for _ in reduced_words(n_gens, length, pairing))


# -- freeness ------------------------------------------------------------------


@dataclass(frozen=True)
class FreenessCertificate:
    automaton_id: str
    pairing: tuple
    max_length: int
    words_checked: int
    relation: tuple | None = None
    checked_by_length: tuple = ()
    seconds: float = field(default=0.0, compare=False)

    @property
    def verdict(self) -> str:
        if self.relation is None:
            return f"no-relation-up-to-{self.max_length}"
        return "relation-found"

    @property
    def holds(self) -> bool:
        return self.relation is None


def _verify_pairing(a: Automaton, pairing) -> tuple:
    try:
        pairing = check_pairing(pairing, a.state_count)
    except ValueError as exc:
        raise PairingInvalid(str(exc)) from None
    for q in range(a.state_count):
        if q <= pairing[q] and not acts_trivially(a, (q, pairing[q])):
            raise PairingInvalid(
                f"{a.state_labels[q]} {a.state_labels[pairing[q]]} does not act trivially"
            )
    return pairing


def freeness_certificate(a: Automaton, max_length: int, pairing: Sequence[int]) -> FreenessCertificate:
    """Check every reduced nonempty state word of length <= ``max_length``.

    ``pairing[q]`` names the state inverse to ``q``; each claimed pair is
    verified with the triviality oracle first.  The first relation found is
    the lexicographically least among the shortest.
    """
    t0 = time.perf_counter()
    if not is_bireversible(a):
        raise NotBireversible("freeness certificates are offered for bi-reversible automata")
    pairing = _verify_pairing(a, pairing)
    nq = a.state_count
    checked = 0
    per_length = []
    for k in range(1, max_length + 1):
        use_mask = nq**k * a.alphabet_size <= max_states()
        mask = trivial_mask(a, k) if use_mask else None
        n_k = 0
        for w in reduced_words(nq, k, pairing):
            n_k += 1
            trivial = bool(mask[encode(w, nq)]) if use_mask else triviality(a, w).trivial
            if trivial:
                per_length.append(n_k)
                return FreenessCertificate(
                    fingerprint(a), pairing, max_length, checked + n_k,
                    tuple(SignedSymbol(s) for s in w), tuple(per_length), time.perf_counter() - t0,
                )
        checked += n_k
        per_length.append(n_k)
    return FreenessCertificate(
        fingerprint(a), pairing, max_length, checked, None, tuple(per_length), time.perf_counter() - t0
    )


# -- infinite order ----------------------------------------------------------------


@dataclass(frozen=True)
class OrderWitness:
    verdict: str  # "yes-by-height" or "unknown"
    height: HeightVector


def infinite_order_witness(a: Automaton, w) -> OrderWitness:
    ht = height(w)
    return OrderWitness("unknown" if ht.is_zero() else "yes-by-height", ht)


# -- growth --------------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthTable:
    depth: int
    counts: tuple  # counts[k - 1] = distinct maps from words of length k
    reduced: bool = False
    exact: bool = False

    def expected_free(self, n_gens: int) -> tuple:
        return tuple(n_gens * (n_gens - 1) ** (k - 1) for k in range(1, len(self.counts) + 1))


def max_leaves() -> int:
    return int(os.environ.get(MAX_LEAVES_ENV, DEFAULT_MAX_LEAVES))


def level_maps(a: Automaton, depth: int) -> np.ndarray:
    """Row ``q`` is the map of state ``q`` on ``X^depth`` (words as base-|X| codes)."""
    nx = a.alphabet_size
    size = nx**depth
    if size > max_leaves():
        raise ResourceLimit(f"|X|^d = {size} exceeds the leaf budget {max_leaves()}")
    tr = np.asarray(a.transition, dtype=np.int64)
    ou = np.asarray(a.output, dtype=np.int64)
    codes = np.arange(size, dtype=np.int64)
    maps = np.empty((a.state_count, size), dtype=np.int64)
    for q in range(a.state_count):
        state = np.full(size, q, dtype=np.int64)
        img = np.zeros(size, dtype=np.int64)
        for i in range(depth):
            weight = nx ** (depth - 1 - i)
            x = (codes // weight) % nx
            img += ou[state, x] * weight
            state = tr[state, x]
        maps[q] = img
    return maps


def growth_table(
    a: Automaton,
    max_len: int,
    depth: int | None = None,
    pairing: Sequence[int] | None = None,
    exact: bool = False,
) -> GrowthTable:
    """Count distinct transformations induced by state words of each length.

    Distinctness is judged by the restriction to ``X^depth`` (default
    ``2 * max_len``), a lower bound for distinctness in the semigroup.  With
    ``exact`` the words agreeing on that level are compared again with the
    triviality oracle.  With ``pairing`` only reduced words are counted.
    """
    depth = 2 * max_len if depth is None else depth
    if exact and not is_invertible(a):
        raise NotInvertible("exact growth compares words through inverses")
    if pairing is not None:
        pairing = check_pairing(pairing, a.state_count)
    gens = level_maps(a, depth)
    nq = a.state_count

    def same(u, w):
        return acts_trivially(a, invert_word(_signed(u)) + _signed(w))

    # level: (first state, map bytes) -> [(map array, representative word)], one per known element
    level = {(q, gens[q].tobytes()): [(gens[q], (q,))] for q in range(nq)}
    counts = []
    for k in range(1, max_len + 1):
        if k > 1:
            nxt: dict = {}
            for (first, _), reps in level.items():
                for m, w in reps:
                    for q in range(nq):
                        if pairing is not None and pairing[q] == first:
                            continue
                        m2 = gens[q][m]
                        w2 = (q,) + w
                        bucket = nxt.setdefault((q, m2.tobytes()), [])
                        if not bucket or exact and not any(same(u, w2) for _, u in bucket):
                            bucket.append((m2, w2))
            level = nxt
        if not exact:
            counts.append(len({key[1] for key in level}))
            continue
        by_map: dict = {}
        for (_, mb), reps in level.items():
            classes = by_map.setdefault(mb, [])
            for _, w in reps:
                if not any(same(u, w) for u in classes):
                    classes.append(w)
        counts.append(sum(len(c) for c in by_map.values()))
    return GrowthTable(depth, tuple(counts), pairing is not None, exact)


def _signed(w):
    return tuple(SignedSymbol(s) for s in w)


def separating_depth(
    a: Automaton, max_len: int, pairing: Sequence[int], max_depth: int = 8
) -> tuple[int | None, GrowthTable | None]:
    """Smallest depth at which reduced words of length <= max_len give free counts."""
    n = a.state_count
    table = None
    for d in range(1, max_depth + 1):
        if a.alphabet_size**d > max_leaves():
            break
        table = growth_table(a, max_len, d, pairing)
        if table.counts == table.expected_free(n):
            return d, table
    return None, table
