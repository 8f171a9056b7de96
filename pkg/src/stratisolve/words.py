"""Free words over named generators.

A word is a tuple of (generator_name, exponent) pairs with nonzero integer
exponents.  All operations return freely reduced words: adjacent pairs carry
distinct generator names and no exponent is zero.
"""

from __future__ import annotations

from typing import Iterable, Tuple

Pair = Tuple[str, int]
Word = Tuple[Pair, ...]

EMPTY: Word = ()


def free_reduce(pairs: Iterable[Pair]) -> Word:
    """Merge adjacent equal-generator pairs and drop zero exponents."""
    out: list[Pair] = []
    for name, exp in pairs:
        if exp == 0:
            continue
        if out and out[-1][0] == name:
            merged = out[-1][1] + exp
            if merged == 0:
                out.pop()
            else:
                out[-1] = (name, merged)
        else:
            out.append((name, exp))
    return tuple(out)


def inverse(w: Iterable[Pair]) -> Word:
    return tuple((name, -exp) for name, exp in reversed(list(w)))


def concat(*ws: Iterable[Pair]) -> Word:
    pairs: list[Pair] = []
    for w in ws:
        pairs.extend(w)
    return free_reduce(pairs)


def power(w: Iterable[Pair], n: int) -> Word:
    w = tuple(w)
    if n == 0:
        return EMPTY
    if n < 0:
        w, n = inverse(w), -n
    return free_reduce(w * n)


def word_length(w: Iterable[Pair]) -> int:
    """Number of letters, counting multiplicity."""
    return sum(abs(exp) for _, exp in w)


def letters(w: Iterable[Pair]) -> Tuple[Pair, ...]:
    """Flatten to single-letter pairs (name, +-1)."""
    out: list[Pair] = []
    for name, exp in w:
        step = 1 if exp > 0 else -1
        out.extend((name, step) for _ in range(abs(exp)))
    return tuple(out)


def from_letters(ls: Iterable[Pair]) -> Word:
    return free_reduce(ls)
