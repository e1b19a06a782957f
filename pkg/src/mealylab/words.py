"""Signed words over opaque symbol sets.

A word is a plain tuple of :class:`SignedSymbol`.  Formal inverses are
written with the ``^-1`` suffix in text form (``s 0 s^-1``), and the empty
word prints as ``eps``.  Free reduction (cancelling adjacent ``x x^-1``
pairs) is provided by :func:`reduce_word`; functions in the rest of the
library return reduced words but accept unreduced input where documented.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

INVERSE_SUFFIX = "^-1"
EMPTY_WORD_TOKEN = "eps"


@dataclass(frozen=True, order=True)
class SignedSymbol:
    """A symbol together with a sign: +1 for the symbol, -1 for its inverse."""

    base: str
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1, got %r" % (self.sign,))
        if not self.base:
            raise ValueError("symbol name must be non-empty")

    @property
    def inverse(self) -> "SignedSymbol":
        return SignedSymbol(self.base, -self.sign)

    @property
    def is_positive(self) -> bool:
        return self.sign == 1

    def token(self) -> str:
        return self.base if self.sign == 1 else self.base + INVERSE_SUFFIX

    @classmethod
    def from_token(cls, token: str) -> "SignedSymbol":
        if token.endswith(INVERSE_SUFFIX) and len(token) > len(INVERSE_SUFFIX):
            return cls(token[: -len(INVERSE_SUFFIX)], -1)
        return cls(token, 1)

    def __str__(self) -> str:
        return self.token()

    def __repr__(self) -> str:
        return "SignedSymbol(%r)" % self.token()


Word = Tuple[SignedSymbol, ...]


def sym(base: str, sign: int = 1) -> SignedSymbol:
    return SignedSymbol(base, sign)


def positive_word(bases: Iterable[str]) -> Word:
    """Word of positive symbols, one per item of `bases`."""
    return tuple(SignedSymbol(b, 1) for b in bases)


def parse_word(text: str) -> Word:
    """Parse whitespace-separated tokens (``^-1`` marks an inverse).

    ``eps`` and the empty/blank string both denote the empty word.  No free
    reduction is applied; the word is returned exactly as written.
    """
    tokens = text.split()
    if tokens == [EMPTY_WORD_TOKEN]:
        return ()
    return tuple(SignedSymbol.from_token(t) for t in tokens)


def format_word(word: Iterable[SignedSymbol], sep: str = " ") -> str:
    """Render a word; the empty word renders as ``eps``."""
    tokens = [s.token() for s in word]
    return sep.join(tokens) if tokens else EMPTY_WORD_TOKEN


def reduce_word(symbols: Iterable[SignedSymbol]) -> Word:
    """Freely reduce: repeatedly cancel adjacent ``x x^-1`` / ``x^-1 x``."""
    stack: list[SignedSymbol] = []
    for s in symbols:
        if stack and stack[-1].base == s.base and stack[-1].sign == -s.sign:
            stack.pop()
        else:
            stack.append(s)
    return tuple(stack)


def invert_word(word: Iterable[SignedSymbol]) -> Word:
    return tuple(s.inverse for s in reversed(tuple(word)))


def word_power(word: Iterable[SignedSymbol], n: int) -> Word:
    """Reduced n-th power of a word (negative n uses the inverse)."""
    base = tuple(word)
    if n < 0:
        base, n = invert_word(base), -n
    return reduce_word(base * n)


def is_reduced(word: Iterable[SignedSymbol]) -> bool:
    word = tuple(word)
    return all(
        not (a.base == b.base and a.sign == -b.sign)
        for a, b in zip(word, word[1:])
    )


def is_positive(word: Iterable[SignedSymbol]) -> bool:
    return all(s.sign == 1 for s in word)
