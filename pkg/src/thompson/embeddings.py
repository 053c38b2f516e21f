"""Undistorted copies of F x Z^n inside F.

``embed(x, k)`` is ``(x0 x1^-1)^k phi^2(x)``, an injective homomorphism of
F x Z onto the subgroup generated by ``x0 x1^-1``, ``x2`` and ``x3``.  The
n-fold version uses the commuting elements ``x_{2i} x_{2i+1}^-1`` for
``i < n`` together with ``phi^{2n}``.

:func:`h_distortion` samples the distortion function
``h(r) = max{|x|_H : x in H, |x|_F <= r} / r``.  Values come from finite balls,
so they are lower bounds for the true function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from thompson import plmap
from thompson.metrics import (
    DEFAULT_CAP,
    CheckReport,
    WordMetric,
    cayley_ball,
    breakpoint_lower_bound,
    rewrite_to_finite_gens,
)
from thompson.normal_form import NormalForm, d_statistic, invert, multiply, normalize, shift, to_word, x
from thompson.plmap import PLMap, commutator
from thompson.words import format_word, parse_word

QI_K = 18
QI_C = 48
QI_C_LOWER = 2  # additive constant on the lower side of the displayed inequality


def _t(i: int) -> NormalForm:
    """Image of the i-th Z generator: ``x_{2i} x_{2i+1}^-1``."""
    return NormalForm(((2 * i, 1),), ((2 * i + 1, 1),))


def embed(a: NormalForm, k: int) -> NormalForm:
    """``(x0 x1^-1)^k phi^2(a)`` in normal form."""
    if k < 0:
        return invert(embed(invert(a), -k))
    word = to_word(_t(0)) * k + to_word(shift(a, 2))
    return normalize(word)


def displayed_normal_form(a: NormalForm, k: int) -> NormalForm:
    """Closed-form normal form of ``embed(a, k)`` for ``k >= 0``:
    ``x0^k`` then ``a`` shifted by ``k + 2``, then ``x_k^-1 ... x_1^-1``."""
    if k < 0:
        raise ValueError("closed form is stated for k >= 0")
    pos = (((0, k),) if k else ()) + tuple((i + k + 2, r) for i, r in a.pos)
    neg = tuple((j, 1) for j in range(1, k + 1)) + tuple((j + k + 2, s) for j, s in a.neg)
    return NormalForm(pos, neg)


def embed_n(a: NormalForm, ks: Sequence[int]) -> NormalForm:
    """``t_1^{k_1} ... t_n^{k_n} phi^{2n}(a)`` with ``t_i = x_{2i-2} x_{2i-1}^-1``."""
    n = len(ks)
    if n < 1:
        raise ValueError("need at least one Z coordinate")
    word: tuple = ()
    for i, k in enumerate(ks):
        t = to_word(_t(i) if k >= 0 else invert(_t(i)))
        word += t * abs(k)
    return normalize(word + to_word(shift(a, 2 * n)))


def fxz_generators(n: int = 1) -> List[NormalForm]:
    """Generators of the copy of F x Z^n: the n commuting elements, then ``x_{2n}``, ``x_{2n+1}``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return [_t(i) for i in range(n)] + [x(2 * n), x(2 * n + 1)]


@dataclass(frozen=True)
class FxZnElement:
    x: NormalForm
    k: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.k)

    def image(self) -> NormalForm:
        if self.n == 1:
            return embed(self.x, self.k[0])
        return embed_n(self.x, self.k)

    def norm(self, x_norm: int) -> int:
        """Product-metric norm given ``|x|_F``."""
        return sum(abs(k) for k in self.k) + x_norm

    def __mul__(self, other: "FxZnElement") -> "FxZnElement":
        return FxZnElement(multiply(self.x, other.x), tuple(a + b for a, b in zip(self.k, other.k)))

    def __invert__(self) -> "FxZnElement":
        return FxZnElement(invert(self.x), tuple(-a for a in self.k))

    def __str__(self) -> str:
        ks = ",".join(map(str, self.k))
        return f"({str(self.x) or 'id'}; t^[{ks}])"


def verify_subgroup_relations(
    n: int = 1,
    max_k: int = 5,
    *,
    fxz: Optional[Sequence[str]] = None,
) -> CheckReport:
    """Commutation and support facts behind the F x Z^n subgroups.

    ``fxz`` overrides the three words standing for ``x0 x1^-1, x2, x3`` (used
    for mutation testing).
    """
    words = list(fxz) if fxz is not None else ["x0 x1^-1", "x2", "x3"]
    maps = [plmap.from_word(parse_word(w)) for w in words]
    report = CheckReport("subgroup relations")
    for w, g in zip(words[1:], maps[1:]):
        c = commutator(maps[0], g)
        report.record(f"[{words[0]}, {w}] = 1", plmap.is_identity(c), f"commutator map {c!r}")

    t_maps = [plmap.from_word(to_word(_t(i))) for i in range(max(max_k, n) + 1)]
    for k in range(max_k + 1):
        for l in range(max_k + 1):
            if k == l:
                report.skipped += 1
                continue
            if k < l:
                c = commutator(t_maps[k], t_maps[l])
                report.record(f"[t{k}, t{l}] = 1", plmap.is_identity(c), format_word(to_word(_t(k))) + " vs " + format_word(to_word(_t(l))))
        lo, hi = plmap.support(t_maps[k])
        report.record(
            f"support of x{2 * k} x{2 * k + 1}^-1 in [{2 * k}, {2 * k + 2}]",
            lo >= 2 * k and hi <= 2 * k + 2,
            f"support [{lo}, {hi}]",
        )

    gens = [plmap.from_word(to_word(g)) for g in fxz_generators(n)]
    for i in range(n):
        for j in range(i + 1, n + 2):
            c = commutator(gens[i], gens[j])
            report.record(f"F x Z^{n}: generators {i} and {j} commute", plmap.is_identity(c), repr(c))
    for g in gens[n:]:
        first = g.nodes[0].a
        report.record(f"F x Z^{n}: F factor fixes (-inf, {2 * n}]", first >= 2 * n, repr(g))
    return report


@dataclass
class QISample:
    element: FxZnElement
    image: NormalForm
    displayed_ok: bool
    d_x: int
    d_image: int
    d_relation_ok: Optional[bool]
    x_norm: Optional[int]
    image_norm: Optional[int]
    exact: bool
    inequality_ok: bool

    @property
    def ok(self) -> bool:
        return self.displayed_ok and self.d_relation_ok is not False and self.inequality_ok

    def to_json(self) -> dict:
        return {
            "x": self.element.x.to_json(),
            "k": list(self.element.k),
            "image": self.image.to_json(),
            "displayed_ok": self.displayed_ok,
            "d_x": self.d_x,
            "d_image": self.d_image,
            "d_relation_ok": self.d_relation_ok,
            "x_norm": self.x_norm,
            "image_norm": self.image_norm,
            "exact": self.exact,
            "inequality_ok": self.inequality_ok,
            "ok": self.ok,
        }


@dataclass
class QIReport:
    K: int
    C: int
    samples: List[QISample] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.samples)

    def to_json(self) -> dict:
        return {"K": self.K, "C": self.C, "ok": self.ok, "samples": [s.to_json() for s in self.samples]}


def _norm_interval(a: NormalForm, metric: WordMetric, max_radius: int) -> Tuple[int, int, bool]:
    """Exact ``(|a|, |a|, True)`` when resolvable, else integer bounds from the D statistic."""
    f = plmap.from_word(to_word(a))
    n = metric.norm(f, max_radius)
    if n is not None:
        return n, n, True
    d = d_statistic(a)
    lower = max(breakpoint_lower_bound(f), math.ceil(Fraction(d, 6) - 2), 0)
    upper = min(3 * d, len(rewrite_to_finite_gens(a)))
    return lower, upper, False


def qi_check(
    samples: Sequence[FxZnElement],
    max_bfs_radius: int = 12,
    *,
    metric: Optional[WordMetric] = None,
    cap_states: int = DEFAULT_CAP,
) -> QIReport:
    """Check the F x Z embedding on samples against ``K = 18, C = 48``.

    Only ``n = 1`` samples are accepted.  Norms beyond ``max_bfs_radius`` are
    replaced by the D-statistic sandwich, which keeps the check sound but
    weaker.
    """
    if metric is None:
        metric = WordMetric(max(1, math.ceil(max_bfs_radius / 2)), cap_states)
    report = QIReport(QI_K, QI_C)
    for s in samples:
        if s.n != 1:
            raise ValueError("qi_check covers the F x Z embedding (n = 1)")
        a, k = s.x, s.k[0]
        image = embed(a, k)
        base, kk = (a, k) if k >= 0 else (invert(a), -k)
        displayed_ok = embed(base, kk) == displayed_normal_form(base, kk) and image == (
            embed(base, kk) if k >= 0 else invert(embed(base, kk))
        )
        d_x, d_image = d_statistic(a), d_statistic(image)
        d_relation_ok = None
        if base.pos and base.neg and kk >= 1:
            d_relation_ok = d_image == d_x + 4 * kk + 4
        x_lo, x_hi, x_exact = _norm_interval(a, metric, max_bfs_radius)
        im_lo, im_hi, im_exact = _norm_interval(image, metric, max_bfs_radius)
        lhs_hi = abs(k) + x_hi
        lhs_lo = abs(k) + x_lo
        inequality_ok = Fraction(lhs_hi, QI_K) - QI_C_LOWER <= im_lo and im_hi <= QI_K * lhs_lo + QI_C
        report.samples.append(
            QISample(
                s,
                image,
                displayed_ok,
                d_x,
                d_image,
                d_relation_ok,
                x_lo if x_exact else None,
                im_lo if im_exact else None,
                x_exact and im_exact,
                inequality_ok,
            )
        )
    return report


@dataclass
class SubgroupSpec:
    """A finitely generated subgroup H of F with optional preimages in F x Z^n."""

    name: str
    generators: List[NormalForm]
    preimages: Optional[List[FxZnElement]] = None
    envelope: bool = False

    @classmethod
    def parse(cls, spec: str) -> "SubgroupSpec":
        spec = spec.strip()
        if spec == "fxz":
            return cls.fxz(1)
        if spec.startswith("fxz^n:"):
            return cls.fxz(int(spec.split(":", 1)[1]))
        words = [w for w in spec.split(",") if w.strip()]
        if not words:
            raise ValueError(f"empty subgroup spec {spec!r}")
        return cls(spec, [normalize(parse_word(w)) for w in words])

    @classmethod
    def fxz(cls, n: int) -> "SubgroupSpec":
        zero = (0,) * n
        pre = []
        for i in range(n):
            pre.append(FxZnElement(NormalForm(), tuple(int(j == i) for j in range(n))))
        pre += [FxZnElement(x(0), zero), FxZnElement(x(1), zero)]
        name = "fxz" if n == 1 else f"fxz^n:{n}"
        return cls(name, fxz_generators(n), pre, envelope=(n == 1))

    def describe(self) -> str:
        return f"{self.name} = <" + ", ".join(str(g) for g in self.generators) + ">"


@dataclass
class DistortionSample:
    element: NormalForm
    h_norm: int
    f_norm: Optional[int]
    h_word: str
    preimage: Optional[FxZnElement] = None
    preimage_norm: Optional[int] = None
    qi_ok: Optional[bool] = None


@dataclass
class DistortionReport:
    generator_set: str
    h_radius: int
    f_radius: int
    samples: List[DistortionSample]
    h_values: Dict[int, Fraction]
    witnesses: Dict[int, Optional[DistortionSample]]
    envelope_checked: bool
    note: str = "sampled values are lower bounds for h(r)"

    @property
    def beyond_radius(self) -> List[DistortionSample]:
        return [s for s in self.samples if s.f_norm is None]

    @property
    def envelope_violations(self) -> List[int]:
        if not self.envelope_checked:
            return []
        return [r for r, h in self.h_values.items() if h > QI_K + Fraction(QI_C, r)]

    @property
    def qi_failures(self) -> List[DistortionSample]:
        return [s for s in self.samples if s.qi_ok is False]

    @property
    def ok(self) -> bool:
        return not self.envelope_violations and not self.qi_failures

    def table(self) -> str:
        lines = [f"subgroup {self.generator_set}", f"note: {self.note}", "r\th(r)\twitness (F normal form | H word)"]
        for r, h in self.h_values.items():
            w = self.witnesses[r]
            wit = "-" if w is None else f"{str(w.element) or 'id'} | {w.h_word or 'id'}"
            lines.append(f"{r}\t{h}\t{wit}")
        lines.append(f"samples: {len(self.samples)}, beyond F radius {self.f_radius}: {len(self.beyond_radius)}")
        if self.envelope_checked:
            status = "ok" if not self.envelope_violations else f"violated at r={self.envelope_violations}"
            lines.append(f"envelope h(r) <= {QI_K} + {QI_C}/r: {status}")
        checked = [s for s in self.samples if s.qi_ok is not None]
        if checked:
            lines.append(f"QI inequalities: {len(checked) - len(self.qi_failures)}/{len(checked)} samples ok")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "subgroup": self.generator_set,
            "h_radius": self.h_radius,
            "f_radius": self.f_radius,
            "note": self.note,
            "h_values": [
                {
                    "r": r,
                    "h": str(h),
                    "witness": None if self.witnesses[r] is None else self.witnesses[r].element.to_json(),
                    "witness_word": None if self.witnesses[r] is None else self.witnesses[r].h_word,
                }
                for r, h in self.h_values.items()
            ],
            "samples": len(self.samples),
            "beyond_radius": len(self.beyond_radius),
            "envelope_checked": self.envelope_checked,
            "envelope_violations": self.envelope_violations,
            "qi_failures": len(self.qi_failures),
            "ok": self.ok,
        }


def h_distortion(
    subgroup,
    h_radius: int,
    f_radius: int,
    *,
    metric: Optional[WordMetric] = None,
    cap_states: int = DEFAULT_CAP,
) -> DistortionReport:
    """Sample ``h(r)`` for ``r = 1..f_radius`` from the H-ball of radius ``h_radius``.

    ``subgroup`` is a :class:`SubgroupSpec` or a sequence of generator normal
    forms.  ``metric`` must resolve norms up to ``f_radius``.
    """
    if h_radius < 1 or f_radius < 1:
        raise ValueError("radii must be positive")
    spec = subgroup if isinstance(subgroup, SubgroupSpec) else SubgroupSpec("custom", list(subgroup))
    if metric is None:
        metric = WordMetric(max(1, math.ceil(f_radius / 2)), cap_states)

    gen_maps: List[PLMap] = []
    labels: List[Tuple[int, int]] = []
    for i, g in enumerate(spec.generators):
        m = plmap.from_word(to_word(g))
        gen_maps += [m, plmap.invert(m)]
        labels += [(i, 1), (i, -1)]
    ball = cayley_ball(gen_maps, h_radius, labels=labels, cap_states=cap_states, store_paths=True)

    samples: List[DistortionSample] = []
    for f in ball:
        path = ball.geodesic(f)
        word = []
        for i, sign in path:
            word.extend(to_word(spec.generators[i] if sign > 0 else invert(spec.generators[i])))
        element = normalize(word)
        h_word = " ".join(f"h{i}" if sign > 0 else f"h{i}^-1" for i, sign in path)
        sample = DistortionSample(element, ball.dist[f], metric.norm(f, f_radius), h_word)
        if spec.preimages is not None:
            n = spec.preimages[0].n
            pre = FxZnElement(NormalForm(), (0,) * n)
            for i, sign in path:
                g = spec.preimages[i]
                pre = pre * (g if sign > 0 else ~g)
            sample.preimage = pre
            x_norm = metric.norm(plmap.from_word(to_word(pre.x)), f_radius)
            if x_norm is not None:
                sample.preimage_norm = pre.norm(x_norm)
                if sample.f_norm is not None and n == 1:
                    d, image = sample.preimage_norm, sample.f_norm
                    sample.qi_ok = Fraction(d, QI_K) - QI_C_LOWER <= image <= QI_K * d + QI_C
        samples.append(sample)

    h_values: Dict[int, Fraction] = {}
    witnesses: Dict[int, Optional[DistortionSample]] = {}
    for r in range(1, f_radius + 1):
        best: Optional[DistortionSample] = None
        for s in samples:
            if s.f_norm is not None and s.f_norm <= r and (best is None or s.h_norm > best.h_norm):
                best = s
        h_values[r] = Fraction(best.h_norm if best else 0, r)
        witnesses[r] = best
    return DistortionReport(spec.describe(), h_radius, f_radius, samples, h_values, witnesses, spec.envelope)
