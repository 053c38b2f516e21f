import random
from fractions import Fraction

import pytest

from oracles import F_LETTERS, brute_force_norm, words_up_to
from thompson import plmap
from thompson.metrics import (
    CheckReport,
    ResourceLimitError,
    WordMetric,
    ball_sizes,
    cayley_ball,
    check_presentation,
    exact_norm,
    f_ball,
    breakpoint_lower_bound,
    norm_bounds,
    phi_law_holds,
    d_bounds,
    rewrite_to_finite_gens,
)
from thompson.normal_form import NormalForm, d_statistic, normalize, x
from thompson.plmap import PLMap, from_word, generator
from thompson.words import parse_word, random_word


def nf(text):
    return normalize(parse_word(text))


class TestRewrite:
    def test_examples(self):
        assert rewrite_to_finite_gens(x(2)) == parse_word("x0^-1 x1 x0")
        assert rewrite_to_finite_gens(x(1)) == parse_word("x1")
        w = rewrite_to_finite_gens(nf("x2 x3"))
        assert w == parse_word("x0^-1 x1 x0^-1 x1 x0 x0")
        assert len(w) == 6

    def test_random_normal_forms(self):
        rng = random.Random(9)
        for _ in range(300):
            a = normalize(random_word(rng, 12, 7))
            w = rewrite_to_finite_gens(a)
            assert {lt.index for lt in w} <= {0, 1}
            assert from_word(w) == from_word(parse_word(str(a)))
            assert len(w) <= 3 * d_statistic(a)


class TestBounds:
    def test_d_sandwich(self):
        assert d_bounds(x(2)) == (Fraction(-3, 2), 9)
        assert d_bounds(NormalForm()) == (-2, 0)
        assert d_bounds(nf("x0^2 x2^-1 x1^-1")) == (-1, 18)

    def test_breakpoint_bound(self):
        assert breakpoint_lower_bound(generator(1)) == 1
        assert breakpoint_lower_bound(plmap.identity()) == 0
        assert breakpoint_lower_bound(generator(5)) == 5
        assert len(rewrite_to_finite_gens(x(5))) == 9

    def test_norm_bounds(self):
        b = norm_bounds(x(5))
        assert (b.breakpoint_lb, b.d_lower, b.d_upper) == (5, Fraction(-1, 1), 18)
        assert b.lower == 5


class TestNorms:
    def test_small_examples(self):
        assert exact_norm(plmap.identity(), 3) == 0
        assert exact_norm(generator(0), 3) == 1
        assert exact_norm(generator(2), 5) == 3
        assert exact_norm(generator(2), 2) is None

    @pytest.mark.parametrize("word", ["x2", "x3", "x0 x1^-1", "x2^2", "x0^2 x2^-1 x1^-1", "x4"])
    def test_against_brute_force(self, word):
        f = from_word(parse_word(word))
        assert exact_norm(f, 7) == brute_force_norm(f, 7, from_word)

    def test_meet_in_the_middle_matches_full_ball(self):
        big = f_ball(8)
        metric = WordMetric(4)
        for sphere in big.spheres:
            for f in sphere[:150]:
                assert metric.norm(f, 8) == big.dist[f]
        for f in big.spheres[8][:200]:
            assert metric.norm(f, 7) is None

    def test_radius_limit(self):
        with pytest.raises(ValueError):
            WordMetric(2).norm(generator(0), 5)


class TestBalls:
    def test_small_balls(self):
        assert ball_sizes(0).sphere_sizes == (1,)
        assert ball_sizes(1).sphere_sizes == (1, 4)
        stats = ball_sizes(3)
        assert stats.total == sum(stats.sphere_sizes)
        assert stats.to_json() == {"radius": 3, "spheres": [1, 4, 12, 36], "total": 53}

    def test_ball_against_naive_enumeration(self):
        for r in range(5):
            seen = {}
            for w in words_up_to(r):
                f = from_word(w)
                seen[f] = min(seen.get(f, r), len(w))
            assert len(seen) == len(f_ball(r))
            assert seen == f_ball(r).dist

    def test_deterministic(self):
        a = cayley_ball([plmap.letter_map(lt) for lt in F_LETTERS], 5)
        b = cayley_ball([plmap.letter_map(lt) for lt in F_LETTERS], 5)
        assert a.sphere_sizes == b.sphere_sizes
        assert a.spheres == b.spheres

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            cayley_ball([plmap.letter_map(lt) for lt in F_LETTERS], 6, cap_states=100)

    def test_geodesics(self):
        ball = f_ball(5, store_paths=True)
        for f in ball:
            w = ball.geodesic(f)
            assert len(w) == ball.dist[f]
            assert from_word(w) == f


class TestPresentation:
    def test_passes(self):
        report = check_presentation(8)
        assert report.ok
        assert report.checked == 2 + 36 + 200

    def test_corrupted_generator_fails(self):
        # x1 with node (2,3) moved to (2,4); (3/2,2) keeps slopes powers of two
        corrupt = PLMap([(1, 1), (Fraction(3, 2), 2), (2, 4)], 2)

        def gen(k):
            return corrupt if k == 1 else generator(k)

        report = check_presentation(4, samples=10, generator=gen)
        assert not report.ok
        assert any("relator" in d for d, _ in report.failures)
        assert all(w for _, w in report.failures)

    def test_phi_law_on_identity(self):
        assert phi_law_holds(NormalForm())
        assert phi_law_holds(nf("x0 x1^-1 x3"))

    def test_report_summary(self):
        r = CheckReport("demo")
        r.record("a", True)
        r.record("b", False, "x0")
        assert not r.ok
        assert "b: x0" in r.summary()
        assert r.to_json()["failures"] == [{"check": "b", "witness": "x0"}]
