"""Independent oracles: nothing here touches the canonical PLMap machinery."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, List

from thompson.words import Letter

F_LETTERS = (Letter(0, 1), Letter(0, -1), Letter(1, 1), Letter(1, -1))


def f_k(k: int, t: Fraction) -> Fraction:
    if t <= k:
        return t
    if t <= k + 1:
        return 2 * t - k
    return t + 1


def f_k_inverse(k: int, t: Fraction) -> Fraction:
    if t <= k:
        return t
    if t <= k + 2:
        return (t + k) / 2
    return t - 1


def naive_apply(word: Iterable[Letter], t) -> Fraction:
    """Evaluate a word's map at ``t`` letter by letter (right action)."""
    t = Fraction(t)
    for lt in word:
        t = f_k(lt.index, t) if lt.sign > 0 else f_k_inverse(lt.index, t)
    return t


def probe_points(max_coord: int = 12, denominator: int = 64) -> List[Fraction]:
    return [Fraction(n, denominator) for n in range(-denominator, max_coord * denominator + 1, 7)]


def words_up_to(length: int):
    for n in range(length + 1):
        yield from itertools.product(F_LETTERS, repeat=n)


def brute_force_norm(target, max_length: int, to_map) -> int | None:
    """Length of the shortest word over x0^{+-1}, x1^{+-1} whose map equals ``target``."""
    for n in range(max_length + 1):
        for w in itertools.product(F_LETTERS, repeat=n):
            if to_map(w) == target:
                return n
    return None
