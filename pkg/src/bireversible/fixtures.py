"""Small named automata used in tests, demos and the ``examples`` command.

The lamplighter and Gupta-Sidki tables follow the standard automata from
the automaton-group literature; their defining properties are pinned by
tests rather than taken on faith.
"""

from __future__ import annotations

from .automata import Automaton


def trivial() -> Automaton:
    """One letter, one state: its square complex is the torus."""
    return Automaton(1, 1, [[0]], [[0]], ("x",), ("q",))


def identity2() -> Automaton:
    """Two states acting as the identity on a binary alphabet."""
    return Automaton(2, 2, [[0, 0], [1, 1]], [[0, 1], [0, 1]], ("0", "1"), ("a", "b"))


def odometer() -> Automaton:
    """Binary adding machine, least significant digit first."""
    return Automaton(2, 2, [[0, 0], [0, 1]], [[0, 1], [1, 0]], ("0", "1"), ("e", "a"))


def lamplighter() -> Automaton:
    """Self-dual two-state automaton generating the lamplighter group.

    ``a`` swaps the letters and ``b`` fixes them; both enter ``b`` after
    reading 0 from ``a`` or 1 from ``b``, and ``a`` otherwise.
    """
    return Automaton(2, 2, [[1, 0], [0, 1]], [[1, 0], [0, 1]], ("0", "1"), ("a", "b"))


def gupta_sidki() -> Automaton:
    """Three states over three letters; ``c`` inverts ``a``.

    ``a`` and ``c`` rotate every letter by +1 and -1 and stay put, while
    ``b`` fixes the letter it reads and moves to ``a``, ``c``, ``b``.
    """
    return Automaton(
        3,
        3,
        [[0, 0, 0], [0, 2, 1], [2, 2, 2]],
        [[1, 2, 0], [0, 1, 2], [2, 0, 1]],
        ("0", "1", "2"),
        ("a", "b", "c"),
    )


FIXTURES = {
    "trivial": trivial,
    "identity2": identity2,
    "odometer": odometer,
    "lamplighter": lamplighter,
    "gupta_sidki": gupta_sidki,
}


def all_fixtures() -> dict:
    return {name: make() for name, make in FIXTURES.items()}
