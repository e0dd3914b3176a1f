"""Finite and infinite words over small alphabets.

Infinite words come in two finitely-describable flavours: ultimately
periodic words (lassos, u.v^omega) and block-pattern words of the shape
A.B1.A.B2.A... given by a computable block function.  Positions are
1-based everywhere.
"""

from __future__ import annotations

import math
import threading
from bisect import bisect_right
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Union

Letter = str
FiniteWord = str


class AlphabetMismatch(ValueError):
    """A word uses letters outside the declared alphabet."""


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of single-character symbols."""

    letters: tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("alphabet must be nonempty")
        if any(len(ch) != 1 for ch in self.letters):
            raise ValueError("alphabet letters must be single characters")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("alphabet has duplicate letters")

    @classmethod
    def of(cls, letters: str) -> "Alphabet":
        return cls(tuple(letters))

    def __contains__(self, ch: object) -> bool:
        return ch in self.letters

    def __str__(self) -> str:
        return "".join(self.letters)

    def check_word(self, word: str, what: str = "word") -> None:
        for ch in word:
            if ch not in self.letters:
                raise AlphabetMismatch(
                    f"{what} {word!r} uses letter {ch!r} not in alphabet {{{self}}}"
                )


BINARY = Alphabet.of("01")
GAMMA = Alphabet.of("01A")


def _primitive_root(s: str) -> str:
    """Shortest word whose repetition yields s."""
    n = len(s)
    for d in range(1, n + 1):
        if n % d == 0 and s[:d] * (n // d) == s:
            return s[:d]
    return s


@lru_cache(maxsize=4096)
def _normal_parts(prefix: str, period: str) -> tuple[str, str]:
    period = _primitive_root(period)
    # Fold trailing prefix letters into a rotation of the period.  This
    # reaches the minimal preperiod, so equal words get equal parts.
    while prefix and prefix[-1] == period[-1]:
        period = prefix[-1] + period[:-1]
        prefix = prefix[:-1]
    return prefix, period


@dataclass(frozen=True)
class LassoWord:
    """Ultimately periodic word prefix.period^omega, text form "prefix|period"."""

    prefix: str
    period: str

    def __post_init__(self):
        if not self.period:
            raise ValueError("lasso period must be nonempty")

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet | None = None) -> "LassoWord":
        if text.count("|") != 1:
            raise ValueError(f"lasso text needs exactly one '|': {text!r}")
        prefix, period = text.split("|")
        if not period:
            raise ValueError(f"lasso period must be nonempty: {text!r}")
        if alphabet is not None:
            alphabet.check_word(prefix + period, "lasso")
        return cls(prefix, period)

    def __str__(self) -> str:
        return f"{self.prefix}|{self.period}"

    def normal(self) -> "LassoWord":
        """Canonical form: minimal period, then minimal prefix."""
        p, q = _normal_parts(self.prefix, self.period)
        if p == self.prefix and q == self.period:
            return self
        return LassoWord(p, q)

    def letter_at(self, n: int) -> str:
        if n < 1:
            raise ValueError("positions are 1-based")
        lp = len(self.prefix)
        if n <= lp:
            return self.prefix[n - 1]
        return self.period[(n - lp - 1) % len(self.period)]

    def prefix_of(self, n: int) -> str:
        if n < 0:
            raise ValueError("prefix length must be >= 0")
        if n <= len(self.prefix):
            return self.prefix[:n]
        rest = n - len(self.prefix)
        reps = rest // len(self.period) + 1
        return self.prefix + (self.period * reps)[:rest]

    def letters(self) -> str:
        """All letters occurring in the word (prefix may include dead letters)."""
        return self.prefix + self.period


@dataclass(frozen=True, eq=False)
class BlockWord:
    """Word A.B1.A.B2.A... with Bn computed on demand.

    ``block_len_fn`` must agree with ``len(block_fn(n))``; it exists so
    structural checks can reason about the layout without materialising
    blocks.  ``h_source`` tags words that encode a grid (see ratrel.grid);
    it is what makes membership predicates on coded words decidable.
    """

    block_fn: Callable[[int], str]
    block_len_fn: Callable[[int], int]
    h_source: object | None = None
    _seps: list[int] = field(default_factory=lambda: [1], repr=False)
    _blocks: dict[int, str] = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def block(self, n: int) -> str:
        b = self._blocks.get(n)
        if b is None:
            b = self.block_fn(n)
            self._blocks[n] = b  # idempotent, so a racing writer is harmless
        return b

    def _extend_seps(self, upto: int) -> None:
        if self._seps[-1] >= upto:
            return
        with self._lock:
            seps = self._seps
            while seps[-1] < upto:
                n = len(seps)  # separator n already placed; block n follows it
                seps.append(seps[-1] + 1 + self.block_len_fn(n))

    def letter_at(self, n: int) -> str:
        if n < 1:
            raise ValueError("positions are 1-based")
        self._extend_seps(n)
        seps = self._seps
        i = bisect_right(seps, n) - 1
        if seps[i] == n:
            return "A"
        return self.block(i + 1)[n - seps[i] - 1]

    def prefix_of(self, n: int) -> str:
        if n < 0:
            raise ValueError("prefix length must be >= 0")
        parts: list[str] = []
        total = 0
        b = 1
        while total < n:
            parts.append("A")
            total += 1
            if total >= n:
                break
            blk = self.block(b)
            parts.append(blk)
            total += len(blk)
            b += 1
        return "".join(parts)[:n]


OmegaWord = Union[LassoWord, BlockWord]


def letter_at(w: OmegaWord, n: int) -> str:
    """The n-th letter of an infinite word, n >= 1."""
    return w.letter_at(n)


def prefix_of(w: OmegaWord, n: int) -> str:
    """The first n letters of an infinite word; n = 0 gives the empty word."""
    return w.prefix_of(n)


def lasso_equal(a: LassoWord, b: LassoWord) -> bool:
    """Whether two lassos denote the same infinite word."""
    return a.normal() == b.normal()


def lasso_first_difference(a: LassoWord, b: LassoWord) -> int | None:
    """First position where two lassos differ, or None if they are equal.

    Agreement up to max prefix length plus one lcm of the periods forces
    equality, so the scan is bounded.
    """
    a = a.normal()
    b = b.normal()
    bound = max(len(a.prefix), len(b.prefix)) + math.lcm(len(a.period), len(b.period))
    for n in range(1, bound + 1):
        if a.letter_at(n) != b.letter_at(n):
            return n
    return None
