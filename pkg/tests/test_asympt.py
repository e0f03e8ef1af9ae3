"""High-precision extrapolation machinery, tested on exactly known plants."""

from fractions import Fraction

import mpmath
import pytest

from seqlab import (
    HpContext,
    HpSeq,
    Poly,
    Sequence,
    amplitude_fit,
    bst_extrapolate,
    elim_power,
    hp_eval_builtin,
    loglog_gradient,
    poly_smallest_positive_root,
    powerlaw_pipeline,
    ratios,
    square_subsample,
    stretched_amplitude_seq,
    stretched_lambda,
    stretched_triple_fit,
    summarize_stretched,
)
from seqlab.errors import (
    DomainError,
    IllConditioned,
    InsufficientTerms,
    NonPositiveValue,
    NoPositiveRoot,
    TableauBlowup,
)

CTX50 = HpContext(50)
CTX100 = HpContext(100)


def frac_seq(offset, values):
    return HpSeq(offset, tuple(Fraction(v) for v in values), CTX50)


class TestHpSeq:
    def test_accessors(self):
        s = frac_seq(3, [10, 20, 30, 40])
        assert len(s) == 4
        assert s.last_index == 6
        assert s.value(5) == 30
        assert list(s.indices()) == [3, 4, 5, 6]
        with pytest.raises(IndexError):
            s.value(7)

    def test_slice_tail_map(self):
        s = frac_seq(1, [1, 2, 3, 4, 5])
        assert s.slice_from(3).values == (3, 4, 5)
        assert s.slice_from(0) is s
        assert s.tail(2).offset == 4
        assert s.map(lambda v: 2 * v).values == (2, 4, 6, 8, 10)

    def test_from_sequence(self):
        hs = HpSeq.from_sequence(Sequence(0, (1, 2, 3)), CTX50)
        assert hs.offset == 0
        assert hs.values[2] == 3


class TestRatios:
    def test_values_and_offset(self):
        s = frac_seq(0, [1, 2, 6, 24])
        r = ratios(s)
        assert r.offset == 1
        assert r.values == (Fraction(2), Fraction(3), Fraction(4))

    def test_zero_term(self):
        with pytest.raises(ZeroDivisionError):
            ratios(frac_seq(0, [1, 0, 2]))


class TestElimPower:
    def test_cancels_planted_term_exactly(self):
        # s_n = 4 + 3/n is mapped to the constant 4 by the p = 1 filter
        s = frac_seq(1, [4 + Fraction(3, n) for n in range(1, 12)])
        out = elim_power(s, 1)
        assert out.offset == 2
        assert all(v == 4 for v in out.values)

    def test_second_power(self):
        s = frac_seq(1, [7 + Fraction(5, n * n) for n in range(1, 12)])
        assert all(v == 7 for v in elim_power(s, 2).values)

    def test_composition_residue(self):
        # after p=1 then p=2 the residue of a 1/n + 1/n^2 plant is exactly
        # b / ((2n-1)(n-1)(n-2))
        a, b, lim = Fraction(3), Fraction(-5), Fraction(11)
        s = frac_seq(
            1,
            [lim + a / n + b / (n * n) for n in range(1, 15)],
        )
        out = elim_power(elim_power(s, 1), 2)
        for n, v in zip(out.indices(), out.values):
            assert v - lim == b / ((2 * n - 1) * (n - 1) * (n - 2))

    def test_rejects_bad_power(self):
        with pytest.raises(ValueError):
            elim_power(frac_seq(1, [1, 2]), 0)


class TestSquareSubsample:
    def test_on_integer_sequence(self):
        s = Sequence(0, tuple(range(100)))
        sub = square_subsample(s)
        assert isinstance(sub, Sequence)
        assert sub.offset == 1
        assert sub.terms == (1, 4, 9, 16, 25, 36, 49, 64, 81)

    def test_on_hpseq(self):
        s = frac_seq(1, [n * n for n in range(1, 26)])
        sub = square_subsample(s)
        assert isinstance(sub, HpSeq)
        assert sub.values == (1, 16, 81, 256, 625)

    def test_too_short(self):
        with pytest.raises(InsufficientTerms):
            square_subsample(Sequence(0, (1,)))
        with pytest.raises(InsufficientTerms):
            square_subsample(Sequence(2, tuple(range(50))))


class TestLogLogGradient:
    def test_pure_power_is_exact(self):
        with CTX100.work():
            s = HpSeq(
                1,
                tuple(7 * mpmath.mpf(n) ** Fraction(5, 2) for n in range(1, 30)),
                CTX100,
            )
        g = loglog_gradient(s)
        assert g.offset == 2
        for v in g.values:
            assert abs(v - Fraction(5, 2)) < mpmath.mpf(10) ** -90

    def test_guards(self):
        with pytest.raises(ValueError):
            loglog_gradient(frac_seq(0, [1, 2]))
        with pytest.raises(NonPositiveValue):
            loglog_gradient(frac_seq(1, [1, -2, 3]))


class TestStretchedFit:
    def plant(self, a, e2, e3, n_max, ctx=CTX100):
        # lambda_n = a + e2 log(n)/(pi sqrt n) + e3/(pi sqrt n) exactly
        with ctx.work():
            pi = mpmath.pi
            vals = tuple(
                mpmath.exp(
                    a * pi * mpmath.sqrt(n)
                    + e2 * mpmath.log(n)
                    + e3
                )
                for n in range(1, n_max + 1)
            )
        return HpSeq(1, vals, ctx)

    def test_triple_fit_recovers_plant(self):
        a, e2, e3 = Fraction(3, 2), Fraction(-5, 4), Fraction(7, 8)
        s = self.plant(a, e2, e3, 40)
        lam = stretched_lambda(s)
        f1, f2, f3 = stretched_triple_fit(lam)
        eps = mpmath.mpf(10) ** -80
        assert f1.offset == lam.offset + 1
        assert all(abs(v - a) < eps for v in f1.values)
        assert all(abs(v - e2) < eps for v in f2.values)
        assert all(abs(v - e3) < eps for v in f3.values)

    def test_summary_and_spreads(self):
        s = self.plant(Fraction(2), Fraction(-3, 2), Fraction(1, 3), 40)
        lam = stretched_lambda(s)
        model, spreads = summarize_stretched(*stretched_triple_fit(lam))
        with CTX100.work():
            eps = mpmath.mpf(10) ** -60
            expected_c = mpmath.exp(-mpmath.mpf(1) / 3)
        assert abs(model.a - 2) < eps
        assert abs(model.delta - Fraction(3, 2)) < eps
        # c is the reciprocal of the amplitude exp(e3)
        assert abs(model.c - expected_c) < eps
        assert set(spreads) == {"a", "delta", "log_c"}
        assert all(abs(v) < eps for v in spreads.values())

    def test_amplitude_seq_inverts_model(self):
        # s_n = A exp(a pi sqrt n) / n^delta gives back A at every index
        a, delta, amp = Fraction(1, 2), Fraction(3, 2), Fraction(9, 4)
        with CTX100.work():
            vals = tuple(
                amp
                * mpmath.exp(a * mpmath.pi * mpmath.sqrt(n))
                / mpmath.mpf(n) ** delta
                for n in range(1, 30)
            )
        c_seq = stretched_amplitude_seq(
            HpSeq(1, vals, CTX100), a, Fraction(1, 2), delta
        )
        eps = mpmath.mpf(10) ** -85
        assert all(abs(v - amp) < eps for v in c_seq.values)

    def test_lambda_rejects_non_positive(self):
        with pytest.raises(NonPositiveValue):
            stretched_lambda(frac_seq(1, [1, -1, 1]))

    def test_triple_fit_needs_three(self):
        with pytest.raises(InsufficientTerms):
            stretched_triple_fit(frac_seq(1, [1, 2]))


class TestPowerLaw:
    def test_pure_exponential_gives_zero_power(self):
        s = frac_seq(1, [Fraction(5) * 3 ** n for n in range(1, 20)])
        diag = powerlaw_pipeline(s, 3)
        assert all(v == 0 for v in diag.g_seq.values)
        assert diag.g_estimate == 0
        assert diag.g_spread == 0
        assert diag.model.mu == 3

    def test_planted_power_converges(self):
        with CTX100.work():
            vals = tuple(
                mpmath.mpf(3) ** n * mpmath.mpf(n) ** -3
                for n in range(1, 60)
            )
        diag = powerlaw_pipeline(HpSeq(1, vals, CTX100), 3)
        # the once-accelerated estimator is O(1/n^2) accurate
        assert abs(diag.g2_seq.values[-1] + 3) < 0.01
        assert abs(diag.g_estimate + 3) < 0.01

    def test_rejects_non_positive_mu(self):
        with pytest.raises(ValueError):
            powerlaw_pipeline(frac_seq(1, [1, 2, 3]), 0)


class TestBst:
    def test_planted_three_power_model(self):
        with CTX50.work():
            vals = tuple(
                5
                + 3 / mpmath.sqrt(n)
                - 2 / mpmath.mpf(n)
                + 7 / mpmath.mpf(n) ** Fraction(3, 2)
                for n in range(1, 26)
            )
        res = bst_extrapolate(HpSeq(1, vals, CTX50), Fraction(1, 2))
        assert abs(res.value - 5) < mpmath.mpf(10) ** -38
        assert res.depth == 24

    def test_constant_sequence(self):
        res = bst_extrapolate(frac_seq(1, [7] * 10), Fraction(1, 2))
        assert res.value == 7
        assert res.spread == 0

    def test_guards(self):
        with pytest.raises(InsufficientTerms):
            bst_extrapolate(frac_seq(1, [1, 2, 3]), Fraction(1, 2))
        with pytest.raises(ValueError):
            bst_extrapolate(frac_seq(0, [1, 2, 3, 4]), Fraction(1, 2))
        with pytest.raises(ValueError):
            bst_extrapolate(frac_seq(1, [1, 2, 3, 4]), Fraction(0))

    def test_tableau_blowup(self):
        # with w = 1 the first update hits (x_1/x_2)(1 - D/Dp) - 1 = 0
        # exactly when s = (1, 2, ...): all quantities are dyadic
        with pytest.raises(TableauBlowup):
            bst_extrapolate(frac_seq(1, [1, 2, 5, 9]), Fraction(1))


class TestAmplitudeFit:
    def test_planted_one_correction(self):
        # s_n = 3 * 2^n (n + 1) = 2^n n (3 + 3/n): C = 3, a_1 = 1, g = 1
        s = Sequence(1, tuple(3 * 2 ** n * (n + 1) for n in range(1, 41)))
        fit = amplitude_fit(s, 2, -1, 1, CTX50)
        eps = mpmath.mpf(10) ** -40
        assert abs(fit.model.C - 3) < eps
        assert abs(fit.model.corrections[0] - 1) < eps
        assert fit.model.mu == 2
        assert fit.model.g == 1
        assert fit.c_spread < eps
        assert fit.window_end == 40

    def test_planted_pure_power(self):
        s = Sequence(1, tuple(5 * 3 ** n for n in range(1, 20)))
        fit = amplitude_fit(s, 3, 0, 0, CTX50)
        assert abs(fit.model.C - 5) < mpmath.mpf(10) ** -45
        assert fit.model.corrections == ()

    def test_needs_enough_terms(self):
        with pytest.raises(InsufficientTerms):
            amplitude_fit(Sequence(1, (1, 2, 3)), 2, 0, 5, CTX50)

    def test_ill_conditioned_at_low_precision(self, b202062):
        mu = 1 / poly_smallest_positive_root(Poly([1, -8, 5, 1]), digits=40)
        with pytest.raises(IllConditioned):
            amplitude_fit(b202062, mu, Fraction(9, 2), 20, HpContext(30))


class TestPolyRoot:
    TOL = mpmath.mpf(10) ** -45  # default digits=50, a few ulps of slack

    def test_rational_root(self):
        r = poly_smallest_positive_root(Poly([-1, 2]))  # 2x - 1
        assert abs(r - 0.5) < self.TOL

    def test_picks_smallest(self):
        # (2x - 1)(x - 3)
        r = poly_smallest_positive_root(Poly([-1, 2]) * Poly([-3, 1]))
        assert abs(r - 0.5) < self.TOL

    def test_repeated_root(self):
        p = Poly([-1, 1]) * Poly([-1, 1]) * Poly([-3, 1])
        assert abs(poly_smallest_positive_root(p) - 1) < self.TOL

    def test_root_at_origin_ignored(self):
        r = poly_smallest_positive_root(Poly([0, 0, -1, 1]))  # x^2 (x - 1)
        assert abs(r - 1) < self.TOL

    def test_irrational_root_residual(self):
        p = Poly([-2, 0, 1])  # x^2 - 2
        r = poly_smallest_positive_root(p, digits=60)
        with HpContext(60).work():
            assert abs(r - mpmath.sqrt(2)) < mpmath.mpf(10) ** -58

    def test_no_positive_root(self):
        for p in (Poly([1, 0, 1]), Poly([1, 1]), Poly([0, 1]), Poly([3])):
            with pytest.raises(NoPositiveRoot):
                poly_smallest_positive_root(p)

    def test_random_polys_match_mpmath(self):
        import random

        rng = random.Random(99)
        checked = 0
        for _ in range(40):
            cs = [rng.randint(-20, 20) for _ in range(rng.randint(2, 5))]
            if not cs[-1]:
                cs[-1] = 1
            p = Poly(cs)
            try:
                mine = poly_smallest_positive_root(p, digits=40)
            except NoPositiveRoot:
                mine = None
            with mpmath.workdps(60):
                roots = mpmath.polyroots(
                    [int(c) for c in reversed(p.coeffs)],
                    maxsteps=200,
                    extraprec=200,
                )
                pos = sorted(
                    r.real
                    for r in roots
                    if abs(r.imag) < mpmath.mpf(10) ** -30
                    and r.real > mpmath.mpf(10) ** -30
                )
                expect = pos[0] if pos else None
                if expect is None:
                    assert mine is None
                else:
                    assert mine is not None
                    assert abs(mine - expect) < mpmath.mpf(10) ** -25
                    checked += 1
        assert checked > 10


class TestHpEval:
    def test_values(self):
        with CTX50.work():
            eps = mpmath.mpf(10) ** -48
            assert abs(hp_eval_builtin("exp", 0, CTX50) - 1) < eps
            assert abs(
                hp_eval_builtin("cos", mpmath.pi / 3, CTX50) - Fraction(1, 2)
            ) < eps
            assert abs(hp_eval_builtin("pi", ctx=CTX50) - mpmath.pi) < eps
            assert abs(hp_eval_builtin("sqrt", 2, CTX50) ** 2 - 2) < eps
            assert abs(
                hp_eval_builtin("arccos", Fraction(1, 2), CTX50)
                - mpmath.pi / 3
            ) < eps
            assert abs(
                hp_eval_builtin("log", mpmath.e, CTX50) - 1
            ) < eps

    def test_domain_errors(self):
        for fn, x in (("log", 0), ("log", -1), ("sqrt", -2), ("arccos", 2)):
            with pytest.raises(DomainError):
                hp_eval_builtin(fn, x, CTX50)
        with pytest.raises(DomainError):
            hp_eval_builtin("tan", 1, CTX50)
