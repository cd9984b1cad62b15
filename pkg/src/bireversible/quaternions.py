"""Integer quaternions and the one-vertex complexes built from two primes.

For a prime ``p = 1 (mod 4)`` the generators are the ``p + 1`` quaternions
``a + bi + cj + dk`` of norm ``p`` with ``a`` odd and positive and ``b, c, d``
even.  A pair of primes gives one square for every relation
``x q = +-q' x'``: bottom ``x``, right ``q``, left ``q'``, top ``x'``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from sympy import isprime

from .automata import Automaton
from .complexes import Edge, SquareComplex, automaton_from_vht, canonical_loop, is_vht
from .errors import BadPrime, MultipleSolutions, NoSolution, NotVHT


@dataclass(frozen=True, order=True)
class Quaternion:
    a: int
    b: int = 0
    c: int = 0
    d: int = 0

    def __mul__(self, o: "Quaternion") -> "Quaternion":
        a1, b1, c1, d1 = self
        a2, b2, c2, d2 = o
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d))

    def conj(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self) -> int:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def __str__(self) -> str:
        return f"{self.a}{self.b:+d}i{self.c:+d}j{self.d:+d}k"


def mul(x: Quaternion, y: Quaternion) -> Quaternion:
    return x * y


def conj(x: Quaternion) -> Quaternion:
    return x.conj()


def norm(x: Quaternion) -> int:
    return x.norm()


@dataclass(frozen=True)
class GeneratorSet:
    prime: int
    elements: tuple  # lexicographic

    def index(self, x: Quaternion) -> int:
        return self.elements.index(x)

    @property
    def positive(self) -> tuple:
        """One element per conjugate pair: the one whose first nonzero imaginary part is positive."""
        return tuple(x for x in self.elements if _is_positive(x))


def _is_positive(x: Quaternion) -> bool:
    for t in (x.b, x.c, x.d):
        if t:
            return t > 0
    return True


def enumerate_generators(p: int) -> GeneratorSet:
    if not isinstance(p, int) or p < 2 or not isprime(p) or p % 4 != 1:
        raise BadPrime(f"{p} is not a prime congruent to 1 mod 4")
    r = isqrt(p)
    evens = [t for t in range(-r, r + 1) if t % 2 == 0]
    found = []
    for a in range(1, r + 1, 2):
        for b in evens:
            for c in evens:
                rest = p - a * a - b * b - c * c
                if rest < 0:
                    continue
                d = isqrt(rest)
                if d * d != rest or d % 2:
                    continue
                found.append(Quaternion(a, b, c, -d))
                if d:
                    found.append(Quaternion(a, b, c, d))
    return GeneratorSet(p, tuple(sorted(found)))


def solve_square(x: Quaternion, q: Quaternion, xs: GeneratorSet, qs: GeneratorSet):
    """The unique ``(q', x', sign)`` with ``x q = sign q' x'``, by exhaustive search."""
    target = x * q
    hits = []
    for q2 in qs.elements:
        for x2 in xs.elements:
            prod = q2 * x2
            for sign in (1, -1):
                if (prod if sign == 1 else -prod) == target:
                    hits.append((q2, x2, sign))
    if not hits:
        raise NoSolution(f"no solution for x={x}, q={q}")
    if len(hits) > 1:
        raise MultipleSolutions((str(x), str(q)), hits)
    return hits[0]


def _edge(kind: str, gens: GeneratorSet, y: Quaternion) -> Edge:
    pos = gens.positive
    if y in pos:
        return Edge(kind, pos.index(y), 1)
    return Edge(kind, pos.index(y.conj()), -1)


def build_lattice_complex(p: int, l: int) -> SquareComplex:
    """Undirected one-vertex complex on the generator sets of ``p`` and ``l``.

    Horizontal geometric edges are the conjugate pairs of norm-``p``
    generators, vertical ones those of norm ``l``; edge names are the
    positive representatives.
    """
    xs = enumerate_generators(p)
    qs = enumerate_generators(l)
    loops = set()
    for x in xs.elements:
        for q in qs.elements:
            q2, x2, _ = solve_square(x, q, xs, qs)
            loop = (_edge("h", xs, x), _edge("v", qs, q), _edge("h", xs, x2.conj()), _edge("v", qs, q2.conj()))
            loops.add(canonical_loop(loop))
    c = SquareComplex(
        tuple(str(y) for y in xs.positive),
        tuple(str(y) for y in qs.positive),
        tuple(sorted(loops)),
        directed=False,
    )
    if not is_vht(c):
        raise NotVHT(f"complex for (p, l) = ({p}, {l}) is not VH-T")
    return c


def lattice_automaton(p: int, l: int) -> Automaton:
    """Bi-reversible automaton on the ``p + 1`` letters and ``l + 1`` states."""
    return automaton_from_vht(build_lattice_complex(p, l))
