"""Words over the infinite generating set x0, x1, x2, ...

A word is a plain tuple of :class:`Letter` values, read left to right in group
multiplication order.  The text grammar is whitespace separated terms
``x<index>`` or ``x<index>^<exponent>``, e.g. ``"x0 x1^-1 x2^3"``.
"""

from __future__ import annotations

import random
import re
from typing import Iterable, NamedTuple, Tuple

MAX_INDEX = 2**31 - 1
MAX_LETTERS = 1_000_000


class Letter(NamedTuple):
    index: int
    sign: int = 1

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)

    def __str__(self) -> str:
        return f"x{self.index}" if self.sign > 0 else f"x{self.index}^-1"


Word = Tuple[Letter, ...]


class WordSyntaxError(ValueError):
    """Malformed word text.  ``position`` is a 0-based character offset."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


_TERM = re.compile(r"x(\d+)(?:\^(-?\d+))?")
_SPACE = re.compile(r"\s+")


def letter(index: int, sign: int = 1) -> Letter:
    if index < 0:
        raise ValueError(f"generator index must be nonnegative, got {index}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    return Letter(index, sign)


def parse_word(text: str) -> Word:
    letters: list[Letter] = []
    pos = 0
    n = len(text)
    m = _SPACE.match(text, pos)
    if m:
        pos = m.end()
    while pos < n:
        if text[pos] == "x" and pos + 1 < n and text[pos + 1] == "-":
            raise WordSyntaxError("negative generator index", text, pos + 1)
        m = _TERM.match(text, pos)
        if m is None:
            raise WordSyntaxError("expected a term 'x<index>[^<exponent>]'", text, pos)
        index = int(m.group(1))
        if index > MAX_INDEX:
            raise WordSyntaxError(f"generator index exceeds {MAX_INDEX}", text, m.start(1))
        exponent = 1 if m.group(2) is None else int(m.group(2))
        if exponent == 0:
            raise WordSyntaxError("exponent must be nonzero", text, m.start(2))
        if len(letters) + abs(exponent) > MAX_LETTERS:
            raise WordSyntaxError(f"word expands to more than {MAX_LETTERS} letters", text, m.start())
        sign = 1 if exponent > 0 else -1
        letters.extend([Letter(index, sign)] * abs(exponent))
        pos = m.end()
        if pos == n:
            break
        gap = _SPACE.match(text, pos)
        if gap is None:
            raise WordSyntaxError("expected whitespace between terms", text, pos)
        pos = gap.end()
    return tuple(letters)


def format_word(w: Iterable[Letter]) -> str:
    terms = []
    run_letter = None
    run = 0
    for lt in w:
        if lt == run_letter:
            run += 1
            continue
        if run_letter is not None:
            terms.append(_term(run_letter, run))
        run_letter, run = lt, 1
    if run_letter is not None:
        terms.append(_term(run_letter, run))
    return " ".join(terms)


def _term(lt: Letter, count: int) -> str:
    exponent = count * lt.sign
    return f"x{lt.index}" if exponent == 1 else f"x{lt.index}^{exponent}"


def free_reduce(w: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for lt in w:
        if out and out[-1].index == lt.index and out[-1].sign == -lt.sign:
            out.pop()
        else:
            out.append(lt)
    return tuple(out)


def invert_word(w: Iterable[Letter]) -> Word:
    return tuple(lt.inverse() for lt in reversed(tuple(w)))


def random_word(rng: random.Random, max_length: int, max_index: int, min_length: int = 0) -> Word:
    """Uniformly sized random word; length in [min_length, max_length]."""
    length = rng.randint(min_length, max_length)
    return tuple(Letter(rng.randint(0, max_index), rng.choice((1, -1))) for _ in range(length))
