"""Word metric of F with respect to the generators ``x0, x1``.

Exact norms come from breadth-first search of the Cayley graph, with maps
deduplicated by their canonical PL form.  Norms beyond the stored ball are
resolved by meeting in the middle: ``|g| = min |u| + |u^-1 g|`` over ``u`` in a
smaller ball.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from thompson import plmap
from thompson.normal_form import NormalForm, d_statistic, multiply, shift, to_word, x
from thompson.plmap import PLMap, compose, invert
from thompson.words import Letter, Word, format_word, free_reduce, invert_word, parse_word, random_word

DEFAULT_CAP = 10**7

F_GENERATORS: Tuple[Letter, ...] = (Letter(0, 1), Letter(0, -1), Letter(1, 1), Letter(1, -1))


class ResourceLimitError(RuntimeError):
    """A breadth-first search would exceed its configured state cap."""


@dataclass
class Ball:
    """Ball in a Cayley graph, keyed by canonical maps."""

    radius: int
    dist: Dict[PLMap, int]
    spheres: List[List[PLMap]]
    labels: Tuple[Hashable, ...]
    parents: Optional[Dict[PLMap, Tuple[PLMap, int]]] = None

    def __contains__(self, f: PLMap) -> bool:
        return f in self.dist

    def __len__(self) -> int:
        return len(self.dist)

    def __iter__(self):
        for sphere in self.spheres:
            yield from sphere

    @property
    def sphere_sizes(self) -> List[int]:
        return [len(s) for s in self.spheres]

    def geodesic(self, f: PLMap) -> tuple:
        """Generator labels of one geodesic from the identity to ``f``."""
        if self.parents is None:
            raise ValueError("ball was built without store_paths=True")
        out = []
        while f in self.parents:
            f, k = self.parents[f]
            out.append(self.labels[k])
        return tuple(reversed(out))


def cayley_ball(
    generators: Sequence[PLMap],
    radius: int,
    *,
    labels: Optional[Sequence[Hashable]] = None,
    cap_states: int = DEFAULT_CAP,
    store_paths: bool = False,
) -> Ball:
    """Frontier-by-frontier BFS from the identity, right-multiplying by ``generators``.

    ``generators`` should be closed under inversion for the result to be a
    metric ball.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    gens = list(generators)
    labels = tuple(labels) if labels is not None else tuple(range(len(gens)))
    start = plmap.identity()
    dist = {start: 0}
    spheres = [[start]]
    parents: Optional[dict] = {} if store_paths else None
    frontier = [start]
    for d in range(1, radius + 1):
        nxt = []
        for f in frontier:
            for k, g in enumerate(gens):
                h = compose(f, g)
                if h in dist:
                    continue
                dist[h] = d
                nxt.append(h)
                if parents is not None:
                    parents[h] = (f, k)
            if len(dist) > cap_states:
                raise ResourceLimitError(
                    f"ball of radius {radius} exceeds {cap_states} states (reached distance {d})"
                )
        spheres.append(nxt)
        frontier = nxt
    return Ball(radius, dist, spheres, labels, parents)


@functools.lru_cache(maxsize=8)
def f_ball(radius: int, cap_states: int = DEFAULT_CAP, store_paths: bool = False) -> Ball:
    """Ball of F in the generators ``x0^{+-1}, x1^{+-1}`` (cached)."""
    gens = [plmap.letter_map(lt) for lt in F_GENERATORS]
    return cayley_ball(gens, radius, labels=F_GENERATORS, cap_states=cap_states, store_paths=store_paths)


@dataclass(frozen=True)
class BallStats:
    radius: int
    sphere_sizes: Tuple[int, ...]
    total: int

    def to_json(self) -> dict:
        return {"radius": self.radius, "spheres": list(self.sphere_sizes), "total": self.total}


def ball_sizes(radius: int, cap_states: int = DEFAULT_CAP) -> BallStats:
    sizes = tuple(f_ball(radius, cap_states).sphere_sizes)
    return BallStats(radius, sizes, sum(sizes))


class WordMetric:
    """Exact norms in F up to twice the radius of a stored ball."""

    def __init__(self, radius: int, cap_states: int = DEFAULT_CAP):
        self.ball = f_ball(radius, cap_states)
        self.radius = radius
        self._inverses: Dict[int, List[PLMap]] = {}

    def _inverse_sphere(self, d: int) -> List[PLMap]:
        if d not in self._inverses:
            self._inverses[d] = [invert(u) for u in self.ball.spheres[d]]
        return self._inverses[d]

    def norm(self, f: PLMap, max_radius: Optional[int] = None) -> Optional[int]:
        """``|f|`` if it is at most ``max_radius`` (default twice the ball radius), else None."""
        if max_radius is None:
            max_radius = 2 * self.radius
        if max_radius > 2 * self.radius:
            raise ValueError(f"max_radius {max_radius} exceeds twice the stored radius {self.radius}")
        d = self.ball.dist.get(f)
        if d is not None:
            return d if d <= max_radius else None
        a = self.radius
        dist = self.ball.dist
        best = None
        for d in range(1, max_radius - a + 1):
            # a geodesic of length n splits with |u| = n - a, so deeper levels cannot improve
            if best is not None and d > best - a:
                break
            for u_inv in self._inverse_sphere(d):
                rest = dist.get(compose(u_inv, f))
                if rest is not None and (best is None or d + rest < best):
                    best = d + rest
        if best is None or best > max_radius:
            return None
        return best


@functools.lru_cache(maxsize=4)
def _metric(radius: int, cap_states: int) -> WordMetric:
    return WordMetric(radius, cap_states)


def exact_norm(f: PLMap, max_radius: int, cap_states: int = DEFAULT_CAP) -> Optional[int]:
    """Geodesic length of ``f`` in ``x0, x1`` if at most ``max_radius``, else None."""
    if max_radius < 0:
        raise ValueError("max_radius must be nonnegative")
    return _metric(max(1, math.ceil(max_radius / 2)), cap_states).norm(f, max_radius)


@dataclass(frozen=True)
class NormBounds:
    breakpoint_lb: int
    d_lower: Fraction
    d_upper: int

    @property
    def lower(self) -> int:
        """Best integer lower bound combining both estimates."""
        return max(self.breakpoint_lb, math.ceil(self.d_lower), 0)

    def to_json(self) -> dict:
        return {"breakpoint_lb": self.breakpoint_lb, "d_lower": str(self.d_lower), "d_upper": self.d_upper}


def d_bounds(a: NormalForm) -> Tuple[Fraction, int]:
    """``(D/6 - 2, 3D)`` for the D statistic of ``a``."""
    d = d_statistic(a)
    return Fraction(d, 6) - 2, 3 * d


def breakpoint_lower_bound(f: PLMap) -> int:
    """Ceiling of the largest ``max(1, a-2, b-2)`` over breaking points ``(a, b)``."""
    best = 0
    for a, b in plmap.breaking_points(f):
        best = max(best, 1, math.ceil(a - 2), math.ceil(b - 2))
    return best


def norm_bounds(a: NormalForm) -> NormBounds:
    lb, ub = d_bounds(a)
    return NormBounds(breakpoint_lower_bound(plmap.from_word(to_word(a))), lb, ub)


def rewrite_to_finite_gens(a: NormalForm) -> Word:
    """Spell ``a`` in ``x0, x1`` using ``x_i = x0^-(i-1) x1 x0^(i-1)``."""
    letters: List[Letter] = []
    for lt in to_word(a):
        if lt.index <= 1:
            letters.append(lt)
            continue
        n = lt.index - 1
        letters.extend([Letter(0, -1)] * n)
        letters.append(Letter(1, lt.sign))
        letters.extend([Letter(0, 1)] * n)
    return free_reduce(letters)


@dataclass
class CheckReport:
    """Outcome of a batch of exact identity checks."""

    name: str
    checked: int = 0
    failures: List[Tuple[str, str]] = field(default_factory=list)
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, description: str, passed: bool, witness: str = "") -> None:
        self.checked += 1
        if not passed:
            self.failures.append((description, witness))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "skipped": self.skipped,
            "failures": [{"check": d, "witness": w} for d, w in self.failures],
        }

    def summary(self) -> str:
        if self.ok:
            return f"{self.name}: {self.checked} checks passed"
        lines = [f"{self.name}: {len(self.failures)} of {self.checked} checks FAILED"]
        lines += [f"  {d}: {w}" for d, w in self.failures]
        return "\n".join(lines)


def _evaluator(generator: Callable[[int], PLMap]) -> Callable[[Sequence[Letter]], PLMap]:
    def word_map(w: Sequence[Letter]) -> PLMap:
        result = plmap.identity()
        for lt in w:
            g = generator(lt.index)
            result = compose(result, g if lt.sign > 0 else invert(g))
        return result

    return word_map


def _commutator_word(u: Word, v: Word) -> Word:
    return invert_word(u) + invert_word(v) + u + v


FINITE_RELATORS: Tuple[Tuple[str, str], ...] = (
    ("x0 x1^-1", "x0^-1 x1 x0"),
    ("x0 x1^-1", "x0^-2 x1 x0^2"),
)


def check_presentation(
    max_index: int = 8,
    *,
    samples: int = 200,
    max_length: int = 12,
    seed: int = 0,
    generator: Callable[[int], PLMap] = plmap.generator,
) -> CheckReport:
    """Verify the two finite relators, the infinite relations up to ``max_index``
    and the conjugacy-idempotent law on seeded random words."""
    if max_index < 2:
        raise ValueError("max_index must be at least 2")
    word_map = _evaluator(generator)
    report = CheckReport("presentation")
    for left, right in FINITE_RELATORS:
        w = _commutator_word(parse_word(left), parse_word(right))
        report.record(f"relator [{left}, {right}]", plmap.is_identity(word_map(w)), format_word(w))
    for i in range(max_index + 1):
        for j in range(i + 1, max_index + 1):
            w = (Letter(i, -1), Letter(j, 1), Letter(i, 1), Letter(j + 1, -1))
            report.record(f"x{i}^-1 x{j} x{i} = x{j + 1}", plmap.is_identity(word_map(w)), format_word(w))
    rng = random.Random(seed)
    x0 = (Letter(0, 1),)
    x0_inv = (Letter(0, -1),)
    for _ in range(samples):
        w = random_word(rng, max_length, max_index)
        once = tuple(Letter(lt.index + 1, lt.sign) for lt in w)
        twice = tuple(Letter(lt.index + 2, lt.sign) for lt in w)
        report.record(
            "phi^2(w) = x0^-1 phi(w) x0",
            word_map(twice) == word_map(x0_inv + once + x0),
            format_word(w),
        )
    return report


def phi_law_holds(a: NormalForm) -> bool:
    """Conjugacy-idempotent law checked on normal forms."""
    return shift(a, 2) == multiply(multiply(x(0, -1), shift(a, 1)), x(0))
