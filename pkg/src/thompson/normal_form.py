"""Unique normal forms over the infinite presentation of F.

Every element has a unique expression

    x_{i1}^{r1} ... x_{in}^{rn} x_{jm}^{-sm} ... x_{j1}^{-s1}

with positive exponents, ``i1 < ... < in``, ``j1 < ... < jm``, ``in != jm`` and
the extra condition: whenever ``x_i`` and ``x_i^-1`` both occur, ``x_{i+1}`` or
``x_{i+1}^-1`` occurs too.

Normalization keeps the element as ``P * N^-1`` with ``P`` and ``N``
nondecreasing index lists and pushes each incoming letter into place with the
oriented relations (for ``i < j``)::

    x_j x_i      -> x_i x_{j+1}
    x_i^-1 x_j   -> x_{j+1} x_i^-1
    x_j^-1 x_i   -> x_i x_{j+1}^-1

and then removes pairs ``x_i ... x_i^-1`` that enclose only letters of index
``>= i+2`` (conjugation by ``x_i`` shifts those indices down by one).
"""

from __future__ import annotations

import json
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Tuple

from thompson.words import Letter, Word, format_word, parse_word

Block = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class NormalForm:
    """Element of F in normal form.

    ``pos`` holds ``(i, r)`` pairs and ``neg`` holds ``(j, s)`` pairs, both in
    ascending index order; the negative block is written right to left, so
    ``NormalForm(((0, 2),), ((1, 1), (2, 1)))`` is ``x0^2 x2^-1 x1^-1``.
    """

    pos: Block = ()
    neg: Block = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "pos", tuple((int(i), int(r)) for i, r in self.pos))
        object.__setattr__(self, "neg", tuple((int(j), int(s)) for j, s in self.neg))
        for block in (self.pos, self.neg):
            for t, (i, r) in enumerate(block):
                if i < 0 or r <= 0:
                    raise ValueError(f"invalid block entry {(i, r)}: need index >= 0 and exponent > 0")
                if t and block[t - 1][0] >= i:
                    raise ValueError("block indices must be strictly increasing")
        if self.pos and self.neg and self.pos[-1][0] == self.neg[-1][0]:
            raise ValueError("last positive and last negative index must differ")
        present = {i for i, _ in self.pos} | {j for j, _ in self.neg}
        both = {i for i, _ in self.pos} & {j for j, _ in self.neg}
        for i in both:
            if i + 1 not in present:
                raise ValueError(f"x{i} and x{i}^-1 both occur but x{i + 1} does not")

    @classmethod
    def identity(cls) -> "NormalForm":
        return cls()

    @classmethod
    def parse(cls, text: str) -> "NormalForm":
        return normalize(parse_word(text))

    def is_identity(self) -> bool:
        return not self.pos and not self.neg

    def length(self) -> int:
        """Total exponent length, the word length of the normal form."""
        return sum(r for _, r in self.pos) + sum(s for _, s in self.neg)

    def __mul__(self, other: "NormalForm") -> "NormalForm":
        return multiply(self, other)

    def __invert__(self) -> "NormalForm":
        return invert(self)

    def __pow__(self, n: int) -> "NormalForm":
        base = self if n >= 0 else invert(self)
        result = NormalForm()
        for _ in range(abs(n)):
            result = multiply(result, base)
        return result

    def __str__(self) -> str:
        return format_word(to_word(self))

    def to_json(self) -> dict:
        return {"pos": [list(p) for p in self.pos], "neg": [list(p) for p in self.neg]}

    @classmethod
    def from_json(cls, data) -> "NormalForm":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(map(tuple, data["pos"])), tuple(map(tuple, data["neg"])))


class _Reducer:
    """Mutable ``P * N^-1`` accumulator used while normalizing."""

    __slots__ = ("pos", "neg")

    def __init__(self) -> None:
        self.pos: list = []
        self.neg: list = []

    def push(self, lt: Letter) -> None:
        if lt.sign > 0:
            self._push_positive(lt.index)
        else:
            self._push_negative(lt.index)

    def _push_positive(self, c: int) -> None:
        neg = self.neg
        # neg[0] is the rightmost inverse letter; x_c travels left through them
        k = 0
        while k < len(neg):
            q = neg[k]
            if q < c:
                c += 1
                k += 1
            elif q == c:
                del neg[k]
                return
            else:
                neg[k:] = [v + 1 for v in neg[k:]]
                break
        _insert_sorted(self.pos, c)

    def _push_negative(self, c: int) -> None:
        # x_c^-1 on the right means x_c on the left of N; sort it into N
        _insert_sorted(self.neg, c, passing_smaller=True)

    def finish(self) -> NormalForm:
        pos, neg = Counter(self.pos), Counter(self.neg)
        while True:
            present = pos.keys() | neg.keys()
            bad = [i for i in pos.keys() & neg.keys() if i + 1 not in present]
            if not bad:
                break
            i = min(bad)
            for block in (pos, neg):
                block[i] -= 1
                if not block[i]:
                    del block[i]
                moved = sorted(v for v in block if v > i + 1)
                for v in moved:
                    block[v - 1] += block.pop(v)
        return NormalForm(tuple(sorted(pos.items())), tuple(sorted(neg.items())))


def _insert_sorted(block: list, c: int, passing_smaller: bool = False) -> None:
    """Insert ``x_c`` into a nondecreasing positive word.

    With ``passing_smaller`` the letter enters from the left and gains one for
    every smaller index it passes; otherwise it enters from the right and
    every larger index it passes gains one.
    """
    if passing_smaller:
        k = 0
        while k < len(block) and block[k] < c:
            c += 1
            k += 1
        block.insert(k, c)
    else:
        k = bisect_right(block, c)
        block[k:] = [c] + [v + 1 for v in block[k:]]


def normalize(w: Iterable[Letter]) -> NormalForm:
    red = _Reducer()
    for lt in w:
        red.push(lt)
    return red.finish()


def to_word(a: NormalForm) -> Word:
    letters = []
    for i, r in a.pos:
        letters.extend([Letter(i, 1)] * r)
    for j, s in reversed(a.neg):
        letters.extend([Letter(j, -1)] * s)
    return tuple(letters)


def multiply(a: NormalForm, b: NormalForm) -> NormalForm:
    return normalize(to_word(a) + to_word(b))


def invert(a: NormalForm) -> NormalForm:
    return NormalForm(a.neg, a.pos)


def shift(a: NormalForm, k: int = 1) -> NormalForm:
    """Apply the shift endomorphism ``x_i -> x_{i+1}`` k times."""
    if k < 0:
        raise ValueError("shift is only defined for k >= 0")
    return NormalForm(
        tuple((i + k, r) for i, r in a.pos),
        tuple((j + k, s) for j, s in a.neg),
    )


def d_statistic(a: NormalForm) -> int:
    """Exponent sum plus the largest positive and largest negative index.

    An empty block contributes 0 in place of its largest index.
    """
    d = a.length()
    if a.pos:
        d += a.pos[-1][0]
    if a.neg:
        d += a.neg[-1][0]
    return d


def x(i: int, exponent: int = 1) -> NormalForm:
    """The generator power ``x_i^exponent`` as a normal form."""
    if exponent > 0:
        return NormalForm(((i, exponent),))
    if exponent < 0:
        return NormalForm((), ((i, -exponent),))
    return NormalForm()
