"""Interval arithmetic: containment soundness, exactness, extended semantics."""

import math
from fractions import Fraction as F

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubeiso.interval import (
    INVALID,
    Interval,
    arith,
    elementary,
    normal_cdf,
    normal_pdf,
    normal_quantile,
    strictly_greater,
    strictly_less,
)

mp.mp.dps = 40

finite = st.floats(min_value=-1e12, max_value=1e12, allow_nan=False)
positive = st.floats(min_value=1e-12, max_value=1e12)


def ivs(a, b):
    return Interval(min(a, b), max(a, b))


# ---------------------------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------------------------

def test_additive_identity_is_exact():
    out = Interval(0.0) + Interval(-3.25, 7.5)
    assert out.lo == -3.25 and out.hi == 7.5


def test_small_integer_product_is_exact():
    out = Interval(1, 2) * Interval(-3, -1)
    assert out.lo == -6.0 and out.hi == -1.0


def test_division_by_zero_straddle_is_invalid():
    assert not (Interval(1, 2) / Interval(-1, 1)).valid
    assert not (Interval(1, 2) / Interval(0, 0)).valid


def test_invalid_absorbs_everything():
    assert not (INVALID + Interval(1)).valid
    assert not (Interval(1) * INVALID).valid
    assert not abs(INVALID).valid
    assert not INVALID.sqrt().valid


def test_comparison_is_partial_order():
    assert strictly_greater(Interval(0.3, 0.4), F(1, 5))
    assert not strictly_greater(Interval(0.1, 0.4), F(1, 5))  # unproven, not <=
    assert not strictly_greater(INVALID, 0)
    assert strictly_less(Interval(0.1, 0.15), F(1, 5))


def test_infinite_endpoints():
    big = Interval(1e308, math.inf)
    out = big * Interval(2.0)
    assert out.hi == math.inf and out.lo >= 1e308
    assert (Interval(0.0) * big) == Interval(0.0)
    with pytest.raises(ValueError):
        Interval(math.inf, math.inf)


def test_arith_dispatcher_covers_all_kinds():
    a, b = Interval(1, 2), Interval(3, 4)
    assert arith(a, b, "add").lo == 4.0
    assert arith(a, b, "sub").hi == -1.0
    assert arith(a, b, "mul").lo == 3.0
    assert arith(a, b, "div").hi <= 2.0 / 3.0 + 1e-15
    assert arith(a, None, "neg") == Interval(-2, -1)
    assert arith(a, b, "min") == a
    assert arith(a, b, "max") == b
    assert arith(Interval(-2, 1), None, "abs") == Interval(0, 2)


# ---------------------------------------------------------------------------
# Elementary functions
# ---------------------------------------------------------------------------

def test_log_one_is_exact_zero():
    out = elementary(Interval(1.0), "log")
    assert out.lo == 0.0 and out.hi == 0.0


def test_sqrt_two_tight():
    out = Interval(2.0).sqrt()
    true = mp.sqrt(2)
    assert mp.mpf(out.lo) <= true <= mp.mpf(out.hi)
    assert out.width <= 2 * math.ulp(1.5)


def test_log_requires_positive():
    assert not Interval(0.0, 1.0).log().valid
    assert not Interval(-1.0, 1.0).log().valid


def test_sqrt_requires_nonnegative():
    assert Interval(0.0, 4.0).sqrt().lo == 0.0
    assert not Interval(-1e-30, 1.0).sqrt().valid


def test_one_to_any_power_is_tight():
    beta = F(32805, 65536)
    out = Interval(1.0).pow(Interval.from_fraction(beta))
    assert out.contains(1.0) and out.width <= 4 * math.ulp(1.0)


def test_pow_zero_exponent_convention():
    assert Interval(0.0, 0.25).pow(Interval(0.0)) == Interval(1.0)


def test_pow_rejects_negative_base_for_fractional_exponent():
    assert not Interval(-0.5, 1.0).pow(Interval(0.5)).valid


def test_pow_zero_base_positive_exponent():
    out = Interval(0.0, 0.5).pow(Interval(1.5))
    assert out.lo == 0.0
    assert out.hi >= 0.5 ** 1.5


def test_integer_power_straddle_is_tight():
    out = Interval(-1.0, 2.0).ipow(2)
    assert out.lo == 0.0 and out.hi == 4.0


@settings(max_examples=150, deadline=None)
@given(finite, finite, finite, finite)
def test_containment_add_mul(a, b, c, d):
    x = ivs(a, b)
    y = ivs(c, d)
    for px in (x.lo, x.hi, 0.5 * (x.lo + x.hi)):
        for py in (y.lo, y.hi):
            s = F(px) + F(py)
            out = x + y
            assert F(out.lo) <= s <= F(out.hi)
            pr = F(px) * F(py)
            out = x * y
            assert F(out.lo) <= pr <= F(out.hi)


@settings(max_examples=150, deadline=None)
@given(positive, positive)
def test_containment_log_exp(a, b):
    x = ivs(a, b)
    lg = x.log()
    for p in (x.lo, x.hi):
        assert mp.mpf(lg.lo) <= mp.log(mp.mpf(p)) <= mp.mpf(lg.hi)
    y = ivs(math.log(a), math.log(b))
    ex = y.exp()
    for p in (y.lo, y.hi):
        assert mp.mpf(ex.lo) <= mp.exp(mp.mpf(p)) <= mp.mpf(ex.hi)


@settings(max_examples=80, deadline=None)
@given(st.floats(min_value=-8, max_value=8), st.floats(min_value=1e-6, max_value=2.0))
def test_monotone_width_under_subdivision(center, width):
    x = Interval(center - width, center + width)
    m = x.mid
    left = Interval(x.lo, m)
    right = Interval(m, x.hi)
    whole = x.exp()
    union_hi = max(left.exp().hi, right.exp().hi)
    union_lo = min(left.exp().lo, right.exp().lo)
    assert whole.lo <= union_lo and union_hi <= whole.hi


# ---------------------------------------------------------------------------
# Gaussian enclosures
# ---------------------------------------------------------------------------

def test_cdf_at_zero_is_half():
    out = normal_cdf(Interval(0.0))
    assert out.contains(F(1, 2)) and out.width <= 4 * math.ulp(0.5)


def test_pdf_at_zero():
    out = normal_pdf(Interval(0.0))
    true = 1 / mp.sqrt(2 * mp.pi)
    assert mp.mpf(out.lo) <= true <= mp.mpf(out.hi)
    assert out.width < 1e-15


def test_quantile_median():
    out = normal_quantile(Interval(0.5))
    assert out.contains(0.0) and out.width <= 2.0 ** -46


def test_quantile_domain():
    assert not normal_quantile(Interval(0.0, 0.5)).valid
    assert not normal_quantile(Interval(0.5, 1.0)).valid
    assert not normal_quantile(INVALID).valid


def test_gaussian_identities(rng):
    for _ in range(200):
        t = rng.uniform(-3.0, 3.0)
        csum = normal_cdf(Interval(t)) + normal_cdf(Interval(-t))
        assert csum.contains(F(1))
        p = normal_cdf(Interval(t))
        q = normal_quantile(p)
        assert q.valid and q.lo <= t <= q.hi


def test_cdf_containment_vs_reference(rng):
    for _ in range(300):
        t = rng.uniform(-8.0, 8.0)
        out = normal_cdf(Interval(t))
        true = mp.ncdf(mp.mpf(t))
        assert mp.mpf(out.lo) <= true <= mp.mpf(out.hi)
