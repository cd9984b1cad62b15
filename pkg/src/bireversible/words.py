"""Signed symbols and words over a finite alphabet.

A word is a tuple of :class:`SignedSymbol`.  Plain integers are accepted
wherever a word is expected and read as positive symbols.  Free reduction
is always explicit (:func:`free_reduce`); nothing here reduces silently.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

from .errors import FormatError

BAR = "^-"


class SignedSymbol(NamedTuple):
    index: int
    sign: int = 1

    def inverse(self) -> "SignedSymbol":
        return SignedSymbol(self.index, -self.sign)


Word = tuple  # tuple[SignedSymbol, ...]


def as_signed(word: Iterable) -> tuple[SignedSymbol, ...]:
    out = []
    for s in word:
        if isinstance(s, SignedSymbol):
            if s.sign not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {s.sign}")
            out.append(s)
        elif isinstance(s, tuple):
            out.append(SignedSymbol(*s))
        else:
            out.append(SignedSymbol(int(s), 1))
    return tuple(out)


def is_positive(word: Iterable) -> bool:
    return all(s.sign == 1 for s in as_signed(word))


def indices(word: Iterable) -> tuple[int, ...]:
    """Indices of a positive word; raises if a negative symbol is present."""
    w = as_signed(word)
    if not all(s.sign == 1 for s in w):
        raise ValueError("word has negative symbols")
    return tuple(s.index for s in w)


def invert_word(word: Iterable) -> tuple:
    return tuple(s.inverse() for s in reversed(as_signed(word)))


def free_reduce(word: Iterable) -> tuple:
    """Cancel adjacent ``s s^-1`` pairs until none remain.

    Works for any symbols exposing ``inverse()``; plain integers are treated
    as positive :class:`SignedSymbol`.
    """
    stack: list = []
    for s in word:
        if not hasattr(s, "inverse"):
            s = SignedSymbol(int(s), 1)
        if stack and stack[-1] == s.inverse():
            stack.pop()
        else:
            stack.append(s)
    return tuple(stack)


def is_reduced(word: Sequence) -> bool:
    w = list(word)
    return all(w[i + 1] != w[i].inverse() for i in range(len(w) - 1))


def parse_word(text: str, names: Sequence[str], source: str = "<word>") -> tuple[SignedSymbol, ...]:
    """Parse whitespace-separated names; a ``^-`` suffix flips the sign.

    A name that itself ends in ``^-`` (a barred state of an inverse
    automaton) is matched literally first.
    """
    lookup = {n: i for i, n in enumerate(names)}
    out = []
    col = 1
    for tok in text.split():
        col = text.index(tok, col - 1) + 1
        if tok in lookup:
            out.append(SignedSymbol(lookup[tok], 1))
        elif tok.endswith(BAR) and tok[: -len(BAR)] in lookup:
            out.append(SignedSymbol(lookup[tok[: -len(BAR)]], -1))
        else:
            raise FormatError(f"unknown symbol {tok!r}", 1, col, source)
        col += len(tok)
    return tuple(out)


def format_word(word: Iterable, names: Sequence[str] | None = None) -> str:
    parts = []
    for s in as_signed(word):
        name = names[s.index] if names is not None else str(s.index)
        parts.append(name if s.sign == 1 else name + BAR)
    return " ".join(parts)


def toggle_bar(name: str) -> str:
    return name[: -len(BAR)] if name.endswith(BAR) else name + BAR
