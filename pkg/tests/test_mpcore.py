from __future__ import annotations

from decimal import Decimal

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetareg.mpcore import (
    ApproxComplex,
    ApproxReal,
    DomainError,
    InsufficientAccuracy,
    PrecisionContext,
    Rigor,
    agree_to,
    agreement_digits,
    format_radius,
    to_decimal,
    to_decimal_truncated,
)

CTX = PrecisionContext()
MP = CTX.mp
REF = mpmath.MPContext()
REF.prec = 600


def ar(v, r=0, rigor=Rigor.RIGOROUS):
    return ApproxReal(MP.mpf(v), MP.mpf(r), rigor)


class TestPrecisionContext:
    def test_defaults(self):
        assert CTX.bits == 256 and CTX.guard_bits == 32
        assert CTX.prec == 288
        assert CTX.tol == MP.ldexp(1, -256)

    @pytest.mark.parametrize("bits,guard", [(63, 32), (256, 15), (0, 32)])
    def test_rejects_small(self, bits, guard):
        with pytest.raises(DomainError):
            PrecisionContext(bits, guard)

    def test_mp_is_shared_and_unmutated(self):
        a = PrecisionContext(128).mp
        b = PrecisionContext(128).mp
        assert a is b and a.prec == 128 + 32

    def test_doubled(self):
        assert CTX.doubled() == PrecisionContext(512, 32)


class TestApproxReal:
    def test_negative_radius_rejected(self):
        with pytest.raises(ValueError):
            ar(1, -1)

    def test_infinite_radius_rejected(self):
        with pytest.raises(ValueError):
            ApproxReal(MP.one, MP.inf)

    def test_heuristic_is_contagious(self):
        x = ar(1, 0, Rigor.HEURISTIC)
        y = ar(2)
        for z in (x + y, y - x, x * y, y / x, x.exp(), x.sqrt()):
            assert z.rigor is Rigor.HEURISTIC
        assert (y + y).rigor is Rigor.RIGOROUS

    def test_divide_by_ball_containing_zero(self):
        with pytest.raises(ZeroDivisionError):
            ar(1) / ar(0.1, 0.2)

    def test_log_domain(self):
        with pytest.raises(DomainError):
            ar(0.1, 0.2).log()

    def test_scale2_exact(self):
        x = ar(3, "1e-10").scale2(-1)
        assert x.value == MP.mpf(1.5) and x.error_radius == MP.mpf("1e-10") / 2

    @settings(max_examples=60, deadline=None)
    @given(
        a=st.floats(-50, 50, allow_nan=False),
        b=st.floats(-50, 50, allow_nan=False),
        ra=st.floats(0, 1e-3),
        rb=st.floats(0, 1e-3),
        ta=st.floats(-1, 1),
        tb=st.floats(-1, 1),
        op=st.sampled_from(["add", "sub", "mul", "div"]),
    )
    def test_arithmetic_encloses(self, a, b, ra, rb, ta, tb, op):
        x, y = ar(a, ra), ar(b, rb)
        if op == "div" and abs(b) <= rb * 2 + 1e-6:
            return
        z = {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__, "div": x.__truediv__}[op](y)
        # any point of the input balls maps into the output ball
        pa = REF.mpf(a) + REF.mpf(ta) * REF.mpf(ra)
        pb = REF.mpf(b) + REF.mpf(tb) * REF.mpf(rb)
        exact = {"add": pa.__add__, "sub": pa.__sub__, "mul": pa.__mul__, "div": pa.__truediv__}[op](pb)
        assert abs(exact - REF.mpf(z.value)) <= REF.mpf(z.error_radius)
        if op in ("add", "sub"):
            assert z.error_radius >= x.error_radius + y.error_radius

    @settings(max_examples=40, deadline=None)
    @given(a=st.floats(0.01, 20), ra=st.floats(0, 1e-4), t=st.floats(-1, 1),
           fn=st.sampled_from(["exp", "log", "sqrt"]))
    def test_unary_encloses(self, a, ra, t, fn):
        if fn == "log" and a <= ra:
            return
        x = ar(a, ra)
        z = getattr(x, fn)()
        p = REF.mpf(a) + REF.mpf(t) * REF.mpf(ra)
        exact = getattr(REF, fn)(p)
        assert abs(exact - REF.mpf(z.value)) <= REF.mpf(z.error_radius)


class TestToDecimal:
    def test_exact_one(self):
        assert to_decimal(ar(1), 3) == "1.00"

    def test_sqrt2(self):
        x = ApproxReal(MP.sqrt(2), CTX.ulp(MP.sqrt(2)))
        assert to_decimal(x, 10) == "1.414213562"

    def test_refuses_wide_radius(self):
        with pytest.raises(InsufficientAccuracy) as info:
            to_decimal(ar(0.5, 0.1), 6)
        assert info.value.requested == 6
        assert info.value.max_safe_digits == 0

    def test_max_safe_digits_reported(self):
        with pytest.raises(InsufficientAccuracy) as info:
            to_decimal(ar(1, "1e-20"), 30)
        d = info.value.max_safe_digits
        assert d == 17
        to_decimal(ar(1, "1e-20"), d)

    def test_rounding_vs_truncation(self):
        x = ar("0.7735162909")
        assert to_decimal(x, 5) == "0.77352"
        assert to_decimal_truncated(x, 5) == "0.77351"
        assert to_decimal_truncated(-x, 5) == "-0.77351"

    def test_more_than_28_digits(self):
        # the decimal module's default context has 28 digits of precision
        s = to_decimal(ApproxReal(MP.pi, CTX.ulp(MP.pi)), 60)
        assert s == mpmath.nstr(REF.pi, 60, strip_zeros=False)

    def test_deterministic(self):
        x = ApproxReal(MP.e, CTX.ulp(MP.e))
        assert to_decimal(x, 40) == to_decimal(x, 40)

    @settings(max_examples=80, deadline=None)
    @given(v=st.floats(-1e6, 1e6, allow_nan=False), d=st.integers(1, 40))
    def test_round_trip(self, v, d):
        x = ar(v)
        back = Decimal(to_decimal(x, d))
        scale = max(Decimal(1), abs(Decimal(v)))
        assert abs(back - Decimal(v)) <= Decimal(10) ** (1 - d) * scale

    def test_format_radius_rounds_up(self):
        assert format_radius(MP.mpf("1.01e-78")) == "1.1e-78"
        assert format_radius(0) == "0"


class TestAgreement:
    def test_identical(self):
        x = ApproxReal(MP.pi, MP.zero)
        assert agree_to(x, x, 1000)

    def test_examples(self):
        one = ar(1)
        assert not agree_to(one, ar(1 + 1e-3), 5)
        assert agree_to(one, ApproxReal(MP.one + MP.mpf(10) ** -7, MP.zero), 5)

    @settings(max_examples=60, deadline=None)
    @given(a=st.floats(-1e3, 1e3), b=st.floats(-1e3, 1e3),
           ra=st.floats(0, 1e-2), rb=st.floats(0, 1e-2), d=st.integers(1, 20))
    def test_symmetric(self, a, b, ra, rb, d):
        x, y = ar(a, ra), ar(b, rb)
        assert agree_to(x, y, d) == agree_to(y, x, d)
        assert agreement_digits(x, y) == agreement_digits(y, x)

    def test_digits_consistent_with_agree_to(self):
        x, y = ar(2), ar("2.000001")
        d = agreement_digits(x, y)
        assert agree_to(x, y, int(d))
        assert not agree_to(x, y, int(d) + 2)

    def test_radii_count_against_agreement(self):
        assert agreement_digits(ar(1), ar(1, "1e-10")) == pytest.approx(10)


def test_complex_components():
    z = ApproxComplex.from_mpc(MP.mpc(1, -2), MP.mpf("1e-30"), CTX)
    assert z.error_radius == MP.mpf("1e-30")
    assert z.conjugate().im.value == 2
    assert ApproxComplex.exact(3, CTX).im.value == 0
