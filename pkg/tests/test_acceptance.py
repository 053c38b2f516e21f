"""Exit criteria.  All checks are exact; each test records one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` to see the lines as they
are produced; they are also repeated in the terminal summary.
"""

import random
import time
from fractions import Fraction

import pytest

from oracles import words_up_to
from thompson import plmap
from thompson.embeddings import (
    SubgroupSpec,
    displayed_normal_form,
    embed,
    h_distortion,
    verify_subgroup_relations,
)
from thompson.metrics import WordMetric, check_presentation, f_ball, breakpoint_lower_bound, d_bounds
from thompson.normal_form import d_statistic, multiply, normalize, to_word
from thompson.plmap import compose, eventual_translation, from_word
from thompson.words import free_reduce, random_word

SEED = 20240601


@pytest.fixture(scope="module")
def ball8():
    return f_ball(8, store_paths=True)


@pytest.fixture(scope="module")
def metric8():
    return WordMetric(8)


def test_criterion_1_presentation(criterion):
    start = time.perf_counter()
    report = check_presentation(8, samples=200, max_length=12, seed=SEED)
    elapsed = time.perf_counter() - start
    ok = report.ok and report.checked == 2 + 36 + 200 and elapsed < 1.0
    criterion(1, "presentation soundness", ok, f"{report.checked} identities, {elapsed:.2f}s")
    assert report.ok, report.summary()
    assert elapsed < 1.0


def test_criterion_2_normal_forms(criterion):
    rng = random.Random(SEED)
    bad = []
    for _ in range(1000):
        w = random_word(rng, 14, 6)
        a = normalize(w)
        if from_word(w) != from_word(to_word(a)) or a.length() > len(free_reduce(w)):
            bad.append(w)
    for _ in range(1000):
        a = normalize(random_word(rng, 14, 6))
        b = normalize(random_word(rng, 14, 6))
        product = from_word(to_word(multiply(a, b)))
        if product != compose(from_word(to_word(a)), from_word(to_word(b))):
            bad.append((a, b))
    criterion(2, "normal-form correctness", not bad, f"{len(bad)} failures over 2000 cases")
    assert not bad


def test_criterion_3_d_sandwich(criterion, ball8):
    start = time.perf_counter()
    violations = []
    for f, norm in ball8.dist.items():
        a = normalize(ball8.geodesic(f))
        lower, upper = d_bounds(a)
        if not lower <= norm <= upper:
            violations.append((str(a), norm))
    elapsed = time.perf_counter() - start
    ok = not violations and len(ball8) == 11237
    criterion(3, "D/6 - 2 <= |f| <= 3D on the radius-8 ball", ok, f"{len(ball8)} elements, {elapsed:.1f}s")
    assert not violations, violations[:5]
    assert elapsed < 300


def test_criterion_4_breakpoints_and_symmetry(criterion, ball8):
    bad_break, bad_sym = [], []
    for f, norm in ball8.dist.items():
        if breakpoint_lower_bound(f) > norm:
            bad_break.append(f)
        if ball8.dist.get(plmap.invert(f)) != norm:
            bad_sym.append(f)
    ok = not bad_break and not bad_sym
    criterion(4, "breakpoint bound and |f| = |f^-1| on the radius-8 ball", ok, f"{len(bad_break)}+{len(bad_sym)} failures")
    assert ok


def test_criterion_5_embedding_structure(criterion):
    rng = random.Random(SEED + 5)
    failures = []
    d_checked = 0
    for _ in range(500):
        a = normalize(random_word(rng, 10, 6))
        k = rng.randint(0, 6)
        image = embed(a, k)
        if image != displayed_normal_form(a, k):
            failures.append(("closed form", str(a), k))
        if a.pos and a.neg and k >= 1:
            d_checked += 1
            if d_statistic(image) != d_statistic(a) + 4 * k + 4:
                failures.append(("D + 4k + 4", str(a), k))
    for _ in range(200):
        a = normalize(random_word(rng, 10, 6))
        b = normalize(random_word(rng, 10, 6))
        k, l = rng.randint(-6, 6), rng.randint(-6, 6)
        if multiply(embed(a, k), embed(b, l)) != embed(multiply(a, b), k + l):
            failures.append(("homomorphism", str(a), str(b)))
    ok = not failures and d_checked > 100
    criterion(5, "embedding closed form, D' = D + 4k + 4, homomorphism", ok, f"{d_checked} D checks, {len(failures)} failures")
    assert not failures, failures[:5]
    assert d_checked > 100


def test_criterion_6_qi_constants(criterion, metric8):
    report = h_distortion(SubgroupSpec.parse("fxz"), 4, 12, metric=metric8)
    resolved = [s for s in report.samples if s.f_norm is not None]
    failures = []
    for s in resolved:
        d = s.preimage_norm
        if d is None:
            failures.append(("preimage norm unresolved", str(s.element)))
            continue
        if not (Fraction(d, 18) - 2 <= s.f_norm <= 18 * d + 48):
            failures.append(("inequality", str(s.element), d, s.f_norm))
        if d != s.h_norm:
            failures.append(("H norm differs from |k| + |x|", str(s.element)))
    for r, h in report.h_values.items():
        if h > 18 + Fraction(48, r):
            failures.append(("envelope", r, h))
    ok = not failures and len(resolved) > 0
    criterion(
        6,
        "K=18, C=48 on the H-ball of radius 4 and h(r) <= 18 + 48/r",
        ok,
        f"{len(resolved)} resolved, {len(report.beyond_radius)} beyond radius 12",
    )
    assert not failures, failures[:5]


def test_criterion_7_commuting_subgroups(criterion):
    start = time.perf_counter()
    reports = [verify_subgroup_relations(n, 5) for n in range(1, 5)]
    elapsed = time.perf_counter() - start
    ok = all(r.ok for r in reports) and elapsed < 1.0
    criterion(7, "commutation and support facts, n <= 4", ok, f"{sum(r.checked for r in reports)} checks, {elapsed:.2f}s")
    assert all(r.ok for r in reports), [r.summary() for r in reports if not r.ok]
    assert elapsed < 1.0


def test_criterion_8_oracle_cross_checks(criterion):
    start = time.perf_counter()
    naive = [set(), set(), set()]
    for w in words_up_to(2):
        f = from_word(w)
        for r in range(len(w), 3):
            naive[r].add(f)
    ball = f_ball(2)
    sizes_ok = len(f_ball(1)) == 5 == len(naive[1]) and len(ball) == len(naive[2]) and set(ball.dist) == naive[2]
    rng = random.Random(SEED + 8)
    translation_ok = all(
        eventual_translation(from_word(w)) == sum(lt.sign for lt in w)
        for w in (random_word(rng, 14, 6) for _ in range(1000))
    )
    elapsed = time.perf_counter() - start
    ok = sizes_ok and translation_ok and elapsed < 1.0
    criterion(8, "ball sizes vs naive enumeration, eventual translation", ok, f"|B(2)| = {len(ball)}, {elapsed:.2f}s")
    assert sizes_ok and translation_ok
    assert elapsed < 1.0
