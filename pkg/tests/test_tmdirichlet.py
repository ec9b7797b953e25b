from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import mpmath
import pytest

from zetareg import oracles
from zetareg import specialfns as sf
from zetareg import tmdirichlet as tm
from zetareg.mpcore import (
    ApproxReal,
    DomainError,
    PoleError,
    PrecisionContext,
    agree_to,
    agreement_digits,
    to_decimal_truncated,
)

Method = tm.Method


def real_part(ev) -> ApproxReal:
    return ApproxReal(ev.value.re.value, ev.value.error_radius)


def cgap(a, b):
    return abs(a.value - b.value)


class TestG:
    def test_g0_is_minus_one(self, ctx):
        ev = tm.g(0, ctx)
        assert ev.method is Method.FUNCTIONAL_EQUATION
        assert ev.k_truncation is not None
        v = real_part(ev)
        assert agree_to(v, ApproxReal.exact(-1, ctx), 70)
        assert abs(v.value + 1) <= v.error_radius

    def test_direct_matches_plain_partial_sum(self, ctx):
        ev = tm.g_direct(20, ctx)
        est = oracles.dirichlet_partial("g", 20, 10**5, ctx)
        assert abs(ev.value.re.value - est.value.value) <= est.error_estimate + ev.value.error_radius

    def test_leading_term_dominates(self, ctx):
        s0 = tm.default_sigma0(ctx)
        v = tm.g_direct(s0, ctx).value.re.value
        assert -1 - v > 0  # eps_2 = -1 pushes below -1
        assert abs(v + 1) < 2.0 ** (-s0 + 1)

    def test_conjugate_symmetry(self, ctx):
        mp = ctx.mp
        a = tm.g(mp.mpc(16, 10), ctx).value
        b = tm.g(mp.mpc(16, -10), ctx).value
        assert abs(a.value - mp.conj(b.value)) <= a.error_radius + b.error_radius
        assert a.error_radius < ctx.tol

    def test_conjugate_symmetry_left_region(self, ctx):
        mp = ctx.mp
        a = tm.g(mp.mpc(-1.5, 3), ctx).value
        b = tm.g(mp.mpc(-1.5, -3), ctx).value
        assert abs(a.value - mp.conj(b.value)) <= 2 * (a.error_radius + b.error_radius)

    def test_g2_against_paired_oracle(self, ctx):
        est = oracles.dirichlet_partial("g", 2, 10**7, ctx, paired=True)
        assert abs(tm.g(2, ctx).value.re.value - est.value.value) < 1e-6

    def test_direct_refuses_left_of_sigma0(self, ctx):
        with pytest.raises(DomainError):
            tm.g_direct(3, ctx)

    def test_direct_method_only_right_of_sigma0(self, ctx):
        s0 = tm.default_sigma0(ctx)
        assert tm.g(s0, ctx).method is Method.DIRECT_PAIRED
        assert tm.g(s0 - 0.5, ctx).method is Method.FUNCTIONAL_EQUATION

    @pytest.mark.parametrize("s", ["16.5", "17.5+2i", "18-6i"])
    def test_route_overlap(self, ctx, s):
        from zetareg.cli import parse_complex

        z = parse_complex(s, ctx)
        d = tm.g(z, ctx, method=Method.DIRECT_PAIRED).value
        e = tm.g(z, ctx, method=Method.FUNCTIONAL_EQUATION).value
        assert cgap(d, e) <= d.error_radius + e.error_radius
        assert cgap(d, e) < 10.0**-70

    def test_g1_against_paired_sum(self, ctx):
        # the plain sum converges only conditionally at s = 1; pairing fixes that
        v = tm.g(1, ctx).value
        est = oracles.dirichlet_partial("g", 1, 10**6, ctx, paired=True)
        assert abs(v.re.value - est.value.value) <= est.error_estimate
        assert v.error_radius < ctx.tol

    def test_real_inputs_have_zero_imaginary_part(self, ctx):
        for s in (0, 0.5, 3, -2.25, 17):
            v = tm.g(s, ctx).value
            assert v.im.value == 0 and v.im.error_radius == 0

    def test_custom_sigma0(self, ctx):
        a = tm.g(3, ctx, sigma0=24).value
        b = tm.g(3, ctx).value
        assert cgap(a, b) <= a.error_radius + b.error_radius

    def test_sigma0_too_small_is_refused(self, ctx):
        with pytest.raises(DomainError):
            tm.g_direct(6, ctx, sigma0=6)

    def test_g3_matches_unpaired_oracle(self, ctx):
        est = oracles.dirichlet_partial("g", 3, 10**5, ctx)
        assert abs(tm.g(3, ctx).value.re.value - est.value.value) <= est.error_estimate


class TestMemo:
    def test_cache_invisible(self, ctx):
        points = [0, ctx.mp.mpc(0.25, 1), 5, -3]
        tm.clear_cache()
        cached = [tm.g(s, ctx).value for s in points] + [tm.f(s, ctx).value for s in points]
        with tm.cache_disabled():
            fresh = [tm.g(s, ctx).value for s in points] + [tm.f(s, ctx).value for s in points]
        for a, b in zip(cached, fresh):
            assert a.re.value == b.re.value and a.im.value == b.im.value
            assert a.error_radius == b.error_radius

    def test_concurrent_evaluation(self, ctx):
        mp = ctx.mp
        points = [mp.mpc(k / 4, k % 2) for k in range(-3, 3)]
        tm.clear_cache()
        with ThreadPoolExecutor(6) as pool:
            par = list(pool.map(lambda s: tm.g(s, ctx).value, points))
        with tm.cache_disabled():
            ser = [tm.g(s, ctx).value for s in points]
        assert [(a.re.value, a.im.value) for a in par] == [(b.re.value, b.im.value) for b in ser]


class TestConstants:
    def test_g_prime0_and_q(self, ctx):
        gp = tm.g_prime0(ctx)
        q = tm.q_constant(ctx)
        assert to_decimal_truncated(q, 5) == "1.6281"
        assert q.value > 1
        assert agree_to((-gp).exp(), q, 70)

    def test_g_prime0_against_oracle(self, ctx):
        est = oracles.q_product_oracle(10**6, ctx)
        assert abs(tm.q_constant(ctx).value - est.value.value) <= est.error_estimate

    def test_phi(self, ctx):
        phi = tm.fm_phi(ctx)
        assert to_decimal_truncated(phi, 5) == "0.77351"
        assert 0.7 < phi.value < 1

    def test_constant_identity(self, ctx):
        q, phi, gamma = tm.q_constant(ctx), tm.fm_phi(ctx), sf.euler_gamma(ctx)
        one = q * phi * ApproxReal.exact(ctx.mp.sqrt(2), ctx) * (-gamma).exp()
        assert agree_to(one, ApproxReal.exact(1, ctx), 50)

    def test_g_prime0_vs_phi(self, ctx):
        mp = ctx.mp
        phi = tm.fm_phi(ctx)
        lhs = -tm.g_prime0(ctx)
        rhs = (ApproxReal.exact(mp.sqrt(2) / 2, ctx) * sf.euler_gamma(ctx).exp() / phi).log()
        assert agree_to(lhs, rhs, 70)

    def test_tm_constants_invariants(self, ctx):
        c = tm.tm_constants(ctx)
        assert agree_to(c.q, (-c.g_prime0).exp(), 70)
        mp = ctx.mp
        phi = ApproxReal.exact(mp.sqrt(2) / 2, ctx) * sf.euler_gamma(ctx).exp() / c.q
        assert agree_to(c.phi, phi, 70)

    def test_higher_precision_consistent(self, ctx):
        hi = PrecisionContext(512)
        a, b = tm.q_constant(ctx), tm.q_constant(hi)
        assert abs(a.value - b.value) <= a.error_radius + b.error_radius
        assert b.error_radius < ctx.mp.mpf(2) ** -500


class TestF:
    def test_f0(self, ctx):
        v = tm.f(0, ctx).value
        assert v.re.value == 0 and v.error_radius == 0

    def test_small_s_continuation(self, ctx):
        # f(h) ~ f'(0) h near 0, confirming the exact zero numerically
        mp = ctx.mp
        h = mp.mpf(10) ** -12
        v = tm.f(h, ctx).value.re
        fp = tm.f_prime0(ctx)
        assert abs(v.value / h - fp.value) < 1e-10

    def test_f2_against_oracle(self, ctx):
        est = oracles.dirichlet_partial("f", 2, 10**7, ctx, paired=True)
        assert abs(tm.f(2, ctx).value.re.value - est.value.value) <= est.error_estimate

    def test_conjugate_symmetry(self, ctx):
        mp = ctx.mp
        a = tm.f(mp.mpc(0.5, 7), ctx).value
        b = tm.f(mp.mpc(0.5, -7), ctx).value
        assert abs(a.value - mp.conj(b.value)) <= a.error_radius + b.error_radius

    def test_f_prime0(self, ctx):
        fp = tm.f_prime0(ctx)
        assert str(fp.value).startswith("0.3465735902")
        assert fp.value > 0
        assert agree_to(fp, ApproxReal.exact(ctx.mp.log(2) / 2, ctx), 50)
        assert agreement_digits(fp, ApproxReal.exact(ctx.mp.log(2) / 2, ctx)) > 70

    def test_direct_vs_fe(self, ctx):
        d = tm.f(ctx.mp.mpf(17), ctx, method=Method.DIRECT_PAIRED).value
        e = tm.f(ctx.mp.mpf(17), ctx, method=Method.FUNCTIONAL_EQUATION).value
        assert cgap(d, e) <= d.error_radius + e.error_radius


class TestOdiousZeta:
    def test_s2_against_partial_sum(self, ctx):
        est = oracles.dirichlet_partial("zeta_odious", 2, 10**6, ctx)
        v = tm.zeta_odious(2, ctx)
        assert abs(v.re.value - est.value.value) <= est.error_estimate

    def test_derivative_at_zero(self, ctx):
        mp = ctx.mp
        h = mp.mpf(10) ** -25
        d = (tm.zeta_odious(h, ctx).re.value - tm.zeta_odious(-h, ctx).re.value) / (2 * h)
        expected = -mp.log(2 * mp.pi) / 4 + mp.log(tm.q_constant(ctx).value) / 2
        assert abs(d - expected) < mp.mpf(10) ** -40

    def test_partition_at_3(self, ctx):
        total = tm.zeta_odious(3, ctx).re + tm.zeta_evil(3, ctx).re
        assert agree_to(total, sf.riemann_zeta(3, ctx), 70)
        # brute force: the two sets split the integers
        n = 2000
        mp = ctx.mp
        odd = mp.fsum(mp.mpf(k) ** -3 for k in range(1, n) if bin(k).count("1") % 2)
        assert abs(tm.zeta_odious(3, ctx).re.value - odd) < mp.mpf(n) ** -2

    def test_pole(self, ctx):
        with pytest.raises(PoleError):
            tm.zeta_odious(1, ctx)
        with pytest.raises(PoleError):
            tm.zeta_evil(1, ctx)
