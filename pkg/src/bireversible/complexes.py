"""One-vertex VH square complexes, their links, and the automata they carry.

A square is stored as its boundary loop ``(e1, e2, e3, e4)`` of directed
edges, starting with a horizontal edge: ``e1`` runs rightwards along the
bottom, ``e2`` up the right side, ``e3`` leftwards along the top and ``e4``
down the left side.  Of the eight symmetric readings of a loop the
lexicographically least is kept.

A *tile* is the same square read in standard position, as the tuple
``(bottom, right, top, left)`` with bottom/top directed rightwards and
left/right directed upwards; ``bottom . right == left . top`` as paths.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .automata import Automaton, is_bireversible
from .errors import (
    FormatError,
    MalformedSquare,
    MinimalLinkViolated,
    NotBireversible,
    NotDirected,
    NotVHT,
)
from .words import BAR, free_reduce


class Edge(NamedTuple):
    """A directed edge: kind ``"h"`` or ``"v"``, geometric index, orientation sign."""

    kind: str
    index: int
    sign: int = 1

    def inverse(self) -> "Edge":
        return Edge(self.kind, self.index, -self.sign)


def h(i: int, sign: int = 1) -> Edge:
    return Edge("h", i, sign)


def v(i: int, sign: int = 1) -> Edge:
    return Edge("v", i, sign)


def _readings(loop):
    rev = tuple(e.inverse() for e in reversed(loop))
    for base in (tuple(loop), rev):
        for k in range(4):
            yield base[k:] + base[:k]


def canonical_loop(loop: Sequence[Edge]) -> tuple:
    loop = tuple(Edge(*e) for e in loop)
    if len(loop) != 4:
        raise MalformedSquare(f"a square has 4 sides, got {len(loop)}")
    kinds = [e.kind for e in loop]
    if kinds not in (["h", "v", "h", "v"], ["v", "h", "v", "h"]):
        raise MalformedSquare(f"sides must alternate horizontal/vertical, got {kinds}")
    return min(_readings(loop))


def tiles_of(loop: Sequence[Edge]):
    """The four standard-position readings of a square (horizontal stays horizontal)."""
    for r in _readings(loop):
        if r[0].kind == "h":
            yield (r[0], r[1], r[2].inverse(), r[3].inverse())


def is_directed_loop(loop) -> bool:
    e1, e2, e3, e4 = loop
    return e1.sign == -e3.sign and e2.sign == -e4.sign


@dataclass(frozen=True)
class SquareComplex:
    horizontal: tuple  # names of geometric horizontal edges
    vertical: tuple
    squares: tuple  # sorted canonical loops, with multiplicity
    directed: bool = False

    def __post_init__(self):
        canon = []
        for loop in self.squares:
            c = canonical_loop(loop)
            for e in c:
                bound = len(self.horizontal) if e.kind == "h" else len(self.vertical)
                if not 0 <= e.index < bound or e.sign not in (1, -1):
                    raise MalformedSquare(f"edge {e} out of range")
            if self.directed and not is_directed_loop(c):
                raise NotDirected(f"square {c} has oppositely oriented opposite sides")
            canon.append(c)
        object.__setattr__(self, "horizontal", tuple(self.horizontal))
        object.__setattr__(self, "vertical", tuple(self.vertical))
        object.__setattr__(self, "squares", tuple(sorted(canon)))

    def edge_name(self, e: Edge) -> str:
        names = self.horizontal if e.kind == "h" else self.vertical
        return names[e.index] if e.sign == 1 else names[e.index] + BAR

    def germs(self, kind: str) -> list[Edge]:
        n = len(self.horizontal) if kind == "h" else len(self.vertical)
        return [Edge(kind, i, s) for i in range(n) for s in (1, -1)]

    @cached_property
    def tiles(self) -> dict:
        """Map from (bottom, left) corner germs to the list of tiles there."""
        table: dict = {}
        for loop in self.squares:
            for t in tiles_of(loop):
                table.setdefault((t[0], t[3]), []).append(t)
        return table

    @cached_property
    def tiles_by_left_top(self) -> dict:
        table: dict = {}
        for loop in self.squares:
            for t in tiles_of(loop):
                table.setdefault((t[3], t[2]), []).append(t)
        return table


def swap_vh(c: SquareComplex) -> SquareComplex:
    flip = {"h": "v", "v": "h"}
    loops = [tuple(Edge(flip[e.kind], e.index, e.sign) for e in loop) for loop in c.squares]
    return SquareComplex(c.vertical, c.horizontal, tuple(loops), c.directed)


def build_sigma(a: Automaton) -> SquareComplex:
    """The directed complex with one square per (letter, state) pair.

    The square of ``(x, q)`` has bottom ``x``, left ``q``, top
    ``output[q][x]`` and right ``transition[q][x]``.
    """
    loops = []
    for q in range(a.state_count):
        for x in range(a.alphabet_size):
            loops.append((h(x), v(a.transition[q][x]), h(a.output[q][x], -1), v(q, -1)))
    return SquareComplex(a.letter_labels, a.state_labels, tuple(loops), directed=True)


# -- links ----------------------------------------------------------------------


@dataclass(frozen=True)
class LinkGraph:
    vertical_germs: tuple
    horizontal_germs: tuple
    edges: tuple  # (vertical germ, horizontal germ, square index, corner index)

    @cached_property
    def multiplicity(self) -> Counter:
        return Counter((vg, hg) for vg, hg, _, _ in self.edges)

    def count(self, vgerm: Edge, hgerm: Edge) -> int:
        return self.multiplicity.get((vgerm, hgerm), 0)

    def degree(self, germ: Edge) -> int:
        return sum(1 for vg, hg, _, _ in self.edges if germ in (vg, hg))

    def bad_pairs(self, restrict_positive: bool = False) -> list:
        """Germ pairs not joined by exactly one edge, as (vertical, horizontal, count)."""
        out = []
        for vg in self.vertical_germs:
            for hg in self.horizontal_germs:
                if restrict_positive and (vg.sign != 1 or hg.sign != 1):
                    continue
                k = self.count(vg, hg)
                if k != 1:
                    out.append((vg, hg, k))
        return out

    def is_complete_bipartite(self) -> bool:
        return not self.bad_pairs()

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.vertical_germs), len(self.horizontal_germs)


def corners(loop) -> list[tuple[Edge, Edge]]:
    """Germ pairs at the four corners: arriving along ``e_i``, leaving along ``e_{i+1}``."""
    return [(loop[i].inverse(), loop[(i + 1) % 4]) for i in range(4)]


def link(c: SquareComplex) -> LinkGraph:
    edges = []
    for s, loop in enumerate(c.squares):
        for k, (g1, g2) in enumerate(corners(loop)):
            vg, hg = (g1, g2) if g1.kind == "v" else (g2, g1)
            edges.append((vg, hg, s, k))
    return LinkGraph(tuple(c.germs("v")), tuple(c.germs("h")), tuple(edges))


def is_vht(c: SquareComplex) -> bool:
    return link(c).is_complete_bipartite()


def satisfies_minimal_link(c: SquareComplex) -> bool:
    if not c.directed:
        raise NotDirected("the minimal link condition needs a directed complex")
    return not link(c).bad_pairs(restrict_positive=True)


# -- automata from complexes -----------------------------------------------------


def automaton_from_directed(c: SquareComplex) -> Automaton:
    """Read letters/states off positive edges; the inverse of :func:`build_sigma`."""
    if not c.directed:
        raise NotDirected("expected a directed complex")
    bad = link(c).bad_pairs(restrict_positive=True)
    if bad:
        vg, hg, k = bad[0]
        raise MinimalLinkViolated((c.edge_name(hg), c.edge_name(vg)), k)
    nx, nq = len(c.horizontal), len(c.vertical)
    out = [[None] * nx for _ in range(nq)]
    trans = [[None] * nx for _ in range(nq)]
    for (bottom, left), found in c.tiles.items():
        if bottom.sign == 1 and left.sign == 1:
            _, right, top, _ = found[0]
            out[left.index][bottom.index] = top.index
            trans[left.index][bottom.index] = right.index
    return Automaton(nx, nq, trans, out, c.horizontal, c.vertical)


def directed_index(e: Edge) -> int:
    """Position of a directed edge among letters/states of :func:`automaton_from_vht`."""
    return 2 * e.index + (0 if e.sign == 1 else 1)


def directed_edge(kind: str, i: int) -> Edge:
    return Edge(kind, i // 2, 1 if i % 2 == 0 else -1)


def reverse_pairing(n_geometric: int) -> tuple[int, ...]:
    """Index involution sending each directed edge to its reverse."""
    return tuple(i ^ 1 for i in range(2 * n_geometric))


def automaton_from_vht(c: SquareComplex) -> Automaton:
    """Automaton on all directed edges of a VH-T complex (always bi-reversible).

    Directed edge ``e`` of geometric index ``i`` gets index ``2i`` when
    positive and ``2i + 1`` when negative.
    """
    bad = link(c).bad_pairs()
    if bad:
        vg, hg, k = bad[0]
        raise NotVHT(f"germ pair ({c.edge_name(hg)}, {c.edge_name(vg)}) lies on {k} squares")
    nx, nq = 2 * len(c.horizontal), 2 * len(c.vertical)
    out = [[0] * nx for _ in range(nq)]
    trans = [[0] * nx for _ in range(nq)]
    for (bottom, left), (t,) in c.tiles.items():
        _, right, top, _ = t
        out[directed_index(left)][directed_index(bottom)] = directed_index(top)
        trans[directed_index(left)][directed_index(bottom)] = directed_index(right)
    letters = tuple(c.edge_name(directed_edge("h", i)) for i in range(nx))
    states = tuple(c.edge_name(directed_edge("v", i)) for i in range(nq))
    return Automaton(nx, nq, trans, out, letters, states)


# -- heights and normal forms -------------------------------------------------------


@dataclass(frozen=True)
class HeightVector:
    horizontal: int
    vertical: int

    def __add__(self, other):
        return HeightVector(self.horizontal + other.horizontal, self.vertical + other.vertical)

    def is_zero(self) -> bool:
        return self.horizontal == 0 and self.vertical == 0

    def __iter__(self):
        return iter((self.horizontal, self.vertical))


def height(w: Iterable[Edge]) -> HeightVector:
    hh = vv = 0
    for e in w:
        if e.kind == "h":
            hh += e.sign
        else:
            vv += e.sign
    return HeightVector(hh, vv)


def boundary_word(loop) -> tuple:
    return tuple(loop)


def normal_form_complex(c: SquareComplex, w: Iterable[Edge]) -> tuple[tuple, tuple]:
    """Rewrite a path word into (horizontal part, vertical part).

    Each vertical-then-horizontal pair is replaced by the horizontal-then-
    vertical sides of the unique square they bound; both parts come out
    freely reduced.  ``c`` must be VH-T.
    """
    table = c.tiles_by_left_top
    word = list(free_reduce(Edge(*e) for e in w))
    while True:
        k = next((i for i in range(len(word) - 1) if word[i].kind == "v" and word[i + 1].kind == "h"), None)
        if k is None:
            break
        found = table.get((word[k], word[k + 1]))
        if not found or len(found) != 1:
            raise NotVHT(f"no unique square with left {word[k]} and top {word[k + 1]}")
        bottom, right, _, _ = found[0]
        word[k:k + 2] = [bottom, right]
        word = list(free_reduce(word))
    split = next((i for i, e in enumerate(word) if e.kind == "v"), len(word))
    return tuple(free_reduce(word[:split])), tuple(free_reduce(word[split:]))


def normal_form(a: Automaton, w: Iterable[Edge]) -> tuple[tuple, tuple]:
    """Horizontal-then-vertical normal form of ``w`` in the fundamental group.

    Horizontal edges are letters of ``a`` and vertical edges its states.
    """
    if not is_bireversible(a):
        raise NotBireversible("normal forms need a bi-reversible automaton")
    return normal_form_complex(build_sigma(a), w)


# -- text format -------------------------------------------------------------------


TILDE = "~"


def _unambiguous(c: SquareComplex) -> SquareComplex:
    """Rename ``n^-`` to ``n~`` when it would clash with the inverse of ``n``."""
    names = set(c.horizontal) | set(c.vertical)
    if not any(n + BAR in names for n in names):
        return c
    fix = lambda ns: tuple(n[: -len(BAR)] + TILDE if n.endswith(BAR) else n for n in ns)  # noqa: E731
    return SquareComplex(fix(c.horizontal), fix(c.vertical), c.squares, c.directed)


def format_sqc(c: SquareComplex) -> str:
    c = _unambiguous(c)
    lines = [
        "horizontal: " + " ".join(c.horizontal),
        "vertical: " + " ".join(c.vertical),
        "directed: " + ("yes" if c.directed else "no"),
    ]
    for loop in c.squares:
        lines.append("square: " + " ".join(c.edge_name(e) for e in loop))
    return "\n".join(lines) + "\n"


def parse_sqc(text: str, source: str = "<sqc>") -> SquareComplex:
    items = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if line.strip():
            items.append((lineno, line))
    header = {}
    expected = ("horizontal", "vertical", "directed")
    for (lineno, line), key in zip(items[:3], expected):
        head, sep, rest = line.partition(":")
        if not sep or head.strip() != key:
            raise FormatError(f"expected '{key}:'", lineno, 1, source)
        header[key] = (lineno, line, rest)
    if len(header) < 3:
        raise FormatError("incomplete header", len(text.splitlines()) + 1, 1, source)
    hnames = header["horizontal"][2].split()
    vnames = header["vertical"][2].split()
    for key, names in (("horizontal", hnames), ("vertical", vnames)):
        lineno, line, _ = header[key]
        if not names:
            raise FormatError(f"'{key}:' needs at least one name", lineno, len(line) + 1, source)
    lineno, line, rest = header["directed"]
    flag = rest.strip()
    if flag not in ("yes", "no"):
        col = line.index(flag, line.index(":")) + 1 if flag else len(line) + 1
        raise FormatError("expected 'yes' or 'no'", lineno, col, source)
    lookup = {}
    for i, n in enumerate(hnames):
        lookup[n] = h(i)
    for i, n in enumerate(vnames):
        if n in lookup:
            raise FormatError(f"name {n!r} used for two edges", header["vertical"][0], 1, source)
        lookup[n] = v(i)
    loops = []
    for lineno, line in items[3:]:
        head, sep, rest = line.partition(":")
        if not sep or head.strip() != "square":
            raise FormatError("expected 'square:'", lineno, 1, source)
        toks = rest.split()
        if len(toks) != 4:
            raise FormatError(f"a square lists 4 sides, got {len(toks)}", lineno, len(head) + 2, source)
        loop = []
        pos = len(head) + 1
        for tok in toks:
            col = line.index(tok, pos) + 1
            pos = col + len(tok) - 1
            if tok in lookup:
                loop.append(lookup[tok])
            elif tok.endswith(BAR) and tok[: -len(BAR)] in lookup:
                loop.append(lookup[tok[: -len(BAR)]].inverse())
            else:
                raise FormatError(f"unknown edge {tok!r}", lineno, col, source)
        try:
            canon = canonical_loop(loop)
        except MalformedSquare as exc:
            raise FormatError(str(exc), lineno, len(head) + 2, source) from None
        if flag == "yes" and not is_directed_loop(canon):
            raise FormatError("opposite sides of a directed square must agree", lineno, len(head) + 2, source)
        loops.append(tuple(loop))
    try:
        return SquareComplex(tuple(hnames), tuple(vnames), tuple(loops), flag == "yes")
    except NotDirected as exc:
        raise FormatError(str(exc), header["directed"][0], 1, source) from None
