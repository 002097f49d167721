"""Self-contained interval arithmetic with outward rounding.

Endpoints are IEEE-754 doubles.  Every operation satisfies the containment
contract: if x in [a.lo, a.hi] and y in [b.lo, b.hi], then the exact real
result op(x, y) lies in the returned interval.  Undefined operations (log of
a non-positive interval, division by an interval containing zero, ...) return
the designated Invalid value, which absorbs all further arithmetic.

Outward rounding is realized by post-hoc next-representable stepping rather
than FPU rounding-mode control, so the module is pure Python and thread-safe.
Additions and subtractions recover the exact rounding error with a 2Sum step
and only widen when the float result is inexact; multiplications detect the
common exactly-representable cases (small integers, scaling by a power of
two).  Library transcendentals (exp, log) are assumed correct to <= 1 ulp and
are widened by 2 ulp on each side; this assumption is exercised empirically
by the randomized containment suite against a high-precision oracle.

Endpoints may be -inf (lower) or +inf (upper) to express one-sided bounds.
Comparison against scalars is a partial order: ``strictly_greater(a, t)``
returning False proves nothing.
"""

from __future__ import annotations

import math
import sys
from fractions import Fraction
from typing import Union

_INF = math.inf
_MAX = sys.float_info.max
_MIN_NORMAL = sys.float_info.min
_nextafter = math.nextafter

ScalarLike = Union[int, float, Fraction]


# ---------------------------------------------------------------------------
# Directed-rounding scalar helpers
# ---------------------------------------------------------------------------

def _up(x: float) -> float:
    return _nextafter(x, _INF)


def _down(x: float) -> float:
    return _nextafter(x, -_INF)


def _add_down(a: float, b: float) -> float:
    if math.isinf(a) or math.isinf(b):
        s = a + b
        return -_INF if s != s else s  # inf + -inf: no information, round to -inf
    s = a + b
    if math.isinf(s):
        # overflow of a finite true sum
        return _MAX if s > 0 else s
    bv = s - a
    if math.isinf(bv):
        return _down(s)
    err = (a - (s - bv)) + (b - bv)
    return s if err >= 0 else _down(s)


def _add_up(a: float, b: float) -> float:
    if math.isinf(a) or math.isinf(b):
        s = a + b
        return _INF if s != s else s
    s = a + b
    if math.isinf(s):
        return s if s > 0 else -_MAX
    bv = s - a
    if math.isinf(bv):
        return _up(s)
    err = (a - (s - bv)) + (b - bv)
    return s if err <= 0 else _up(s)


def _sub_down(a: float, b: float) -> float:
    return _add_down(a, -b)


def _sub_up(a: float, b: float) -> float:
    return _add_up(a, -b)


def _mul_exact(a: float, b: float, p: float) -> bool:
    """True only if the float product p == a*b is provably exact."""
    if a == 0.0 or b == 0.0:
        return True
    # both small integers: product fits in 53 bits
    if a.is_integer() and b.is_integer() and abs(a) < 67108864.0 and abs(b) < 67108864.0:
        return True
    # scaling by a power of two is exact unless the result leaves the
    # normal range (overflow is handled by the caller)
    if abs(p) >= _MIN_NORMAL:
        ma, _ = math.frexp(a)
        if ma == 0.5 or ma == -0.5:
            return True
        mb, _ = math.frexp(b)
        if mb == 0.5 or mb == -0.5:
            return True
    return False


def _mul_down(a: float, b: float) -> float:
    p = a * b
    if p != p:  # 0 * inf
        return 0.0 if (a == 0.0 or b == 0.0) else p
    if math.isinf(p):
        if math.isinf(a) or math.isinf(b):
            return p
        return _MAX if p > 0 else p
    if _mul_exact(a, b, p):
        return p
    return _down(p)


def _mul_up(a: float, b: float) -> float:
    p = a * b
    if p != p:
        return 0.0 if (a == 0.0 or b == 0.0) else p
    if math.isinf(p):
        if math.isinf(a) or math.isinf(b):
            return p
        return p if p > 0 else -_MAX
    if _mul_exact(a, b, p):
        return p
    return _up(p)


def _div_exact(a: float, b: float, q: float) -> bool:
    if a == 0.0:
        return True
    if abs(q) >= _MIN_NORMAL and not math.isinf(q):
        mb, _ = math.frexp(b)
        if mb == 0.5 or mb == -0.5:
            return True
    return False


def _div_down(a: float, b: float) -> float:
    q = a / b
    if q != q:
        return q
    if math.isinf(q):
        if math.isinf(a):
            return q
        return _MAX if q > 0 else q
    if _div_exact(a, b, q):
        return q
    return _down(q)


def _div_up(a: float, b: float) -> float:
    q = a / b
    if q != q:
        return q
    if math.isinf(q):
        if math.isinf(a):
            return q
        return q if q > 0 else -_MAX
    if _div_exact(a, b, q):
        return q
    return _up(q)


def _pow_mag_down(v: float, n: int) -> float:
    """Directed v**n for v >= 0, rounding down."""
    r = v
    for _ in range(n - 1):
        r = _mul_down(r, v)
    return r


def _pow_mag_up(v: float, n: int) -> float:
    r = v
    for _ in range(n - 1):
        r = _mul_up(r, v)
    return r


# ---------------------------------------------------------------------------
# The Interval type
# ---------------------------------------------------------------------------

class Interval:
    """A closed interval [lo, hi] of extended reals, or Invalid (NaN ends)."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float | None = None):
        if hi is None:
            hi = lo
        lo = float(lo)
        hi = float(hi)
        if lo != lo or hi != hi:
            lo = hi = math.nan
        elif lo > hi or lo == _INF or hi == -_INF:
            raise ValueError(f"malformed interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    # -- constructors ------------------------------------------------------

    @staticmethod
    def invalid() -> "Interval":
        iv = Interval.__new__(Interval)
        iv.lo = math.nan
        iv.hi = math.nan
        return iv

    @staticmethod
    def _raw(lo: float, hi: float) -> "Interval":
        iv = Interval.__new__(Interval)
        iv.lo = lo
        iv.hi = hi
        return iv

    @staticmethod
    def point(x: float) -> "Interval":
        return Interval(x, x)

    @staticmethod
    def from_fraction(fr: ScalarLike) -> "Interval":
        """Width-minimal interval containing an exact rational."""
        fr = Fraction(fr)
        f = float(fr)
        if math.isinf(f):
            return Interval._raw(_MAX, _INF) if f > 0 else Interval._raw(-_INF, -_MAX)
        ff = Fraction(f)
        if ff == fr:
            return Interval._raw(f, f)
        if ff < fr:
            return Interval._raw(f, _up(f))
        return Interval._raw(_down(f), f)

    # -- predicates ---------------------------------------------------------

    @property
    def valid(self) -> bool:
        return self.lo == self.lo

    @property
    def width(self) -> float:
        return _sub_up(self.hi, self.lo)

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: ScalarLike) -> bool:
        if not self.valid:
            return False
        if isinstance(x, Fraction):
            return Fraction(self.lo) <= x <= Fraction(self.hi)
        return self.lo <= x <= self.hi

    def encloses(self, other: "Interval") -> bool:
        return self.valid and other.valid and self.lo <= other.lo and other.hi <= self.hi

    def __repr__(self) -> str:
        if not self.valid:
            return "Interval.invalid()"
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        if not self.valid or not other.valid:
            return (not self.valid) and (not other.valid)
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Interval":
        other = _coerce(other)
        if not (self.valid and other.valid):
            return INVALID
        return Interval._raw(_add_down(self.lo, other.lo), _add_up(self.hi, other.hi))

    __radd__ = __add__

    def __sub__(self, other) -> "Interval":
        other = _coerce(other)
        if not (self.valid and other.valid):
            return INVALID
        return Interval._raw(_sub_down(self.lo, other.hi), _sub_up(self.hi, other.lo))

    def __rsub__(self, other) -> "Interval":
        return _coerce(other).__sub__(self)

    def __neg__(self) -> "Interval":
        if not self.valid:
            return INVALID
        return Interval._raw(-self.hi, -self.lo)

    def __mul__(self, other) -> "Interval":
        other = _coerce(other)
        if not (self.valid and other.valid):
            return INVALID
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        lo = min(_mul_down(a, c), _mul_down(a, d), _mul_down(b, c), _mul_down(b, d))
        hi = max(_mul_up(a, c), _mul_up(a, d), _mul_up(b, c), _mul_up(b, d))
        return Interval._raw(lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        other = _coerce(other)
        if not (self.valid and other.valid):
            return INVALID
        if other.lo <= 0.0 <= other.hi:
            return INVALID
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        lo = min(_div_down(a, c), _div_down(a, d), _div_down(b, c), _div_down(b, d))
        hi = max(_div_up(a, c), _div_up(a, d), _div_up(b, c), _div_up(b, d))
        return Interval._raw(lo, hi)

    def __rtruediv__(self, other) -> "Interval":
        return _coerce(other).__truediv__(self)

    def __abs__(self) -> "Interval":
        if not self.valid:
            return INVALID
        a, b = self.lo, self.hi
        if a >= 0.0:
            return self
        if b <= 0.0:
            return Interval._raw(-b, -a)
        return Interval._raw(0.0, max(-a, b))

    def min(self, other) -> "Interval":
        other = _coerce(other)
        if not (self.valid and other.valid):
            return INVALID
        return Interval._raw(min(self.lo, other.lo), min(self.hi, other.hi))

    def max(self, other) -> "Interval":
        other = _coerce(other)
        if not (self.valid and other.valid):
            return INVALID
        return Interval._raw(max(self.lo, other.lo), max(self.hi, other.hi))

    def hull(self, other: "Interval") -> "Interval":
        if not (self.valid and other.valid):
            return INVALID
        return Interval._raw(min(self.lo, other.lo), max(self.hi, other.hi))

    # -- elementary functions ------------------------------------------------

    def sqrt(self) -> "Interval":
        if not self.valid or self.lo < 0.0:
            return INVALID
        lo = 0.0 if self.lo == 0.0 else max(0.0, _down(math.sqrt(self.lo)))
        hi = self.hi if math.isinf(self.hi) else _up(math.sqrt(self.hi))
        return Interval._raw(lo, hi)

    def exp(self) -> "Interval":
        if not self.valid:
            return INVALID
        if self.lo == -_INF:
            lo = 0.0
        elif self.lo == 0.0:
            lo = 1.0
        else:
            try:
                lo = max(0.0, _down(_down(math.exp(self.lo))))
            except OverflowError:
                lo = _MAX
        if self.hi == _INF:
            hi = _INF
        elif self.hi == 0.0:
            hi = 1.0
        else:
            try:
                hi = _up(_up(math.exp(self.hi)))
            except OverflowError:
                hi = _INF
        return Interval._raw(lo, hi)

    def log(self) -> "Interval":
        if not self.valid or self.lo <= 0.0:
            return INVALID
        lo = 0.0 if self.lo == 1.0 else _down(_down(math.log(self.lo)))
        if self.hi == 1.0:
            hi = 0.0
        else:
            hi = _INF if math.isinf(self.hi) else _up(_up(math.log(self.hi)))
        return Interval._raw(lo, hi)

    def ipow(self, n: int) -> "Interval":
        """Integer power, tight on the dependency x**n (not x*x*...*x)."""
        if not self.valid:
            return INVALID
        if n == 0:
            return ONE
        if n < 0:
            return ONE / self.ipow(-n)
        if n == 1:
            return self
        if n % 2 == 0:
            m = abs(self)
            return Interval._raw(_pow_mag_down(m.lo, n), _pow_mag_up(m.hi, n))
        lo, hi = self.lo, self.hi
        rlo = -_pow_mag_up(-lo, n) if lo < 0.0 else _pow_mag_down(lo, n)
        rhi = -_pow_mag_down(-hi, n) if hi < 0.0 else _pow_mag_up(hi, n)
        return Interval._raw(rlo, rhi)

    def pow(self, p) -> "Interval":
        """Real power x**p.

        Non-integer exponents require lo >= 0.  0**p is 0 for p > 0; the
        degenerate exponent [0,0] yields [1,1] (the convention used by the
        tight-lower-bound formulas, where h**0 arises as a limit).
        """
        if isinstance(p, int):
            return self.ipow(p)
        if isinstance(p, Fraction):
            if p.denominator == 1:
                return self.ipow(p.numerator)
            p = Interval.from_fraction(p)
        if not isinstance(p, Interval):
            p = Interval(float(p))
        if not (self.valid and p.valid):
            return INVALID
        if p.lo == p.hi:
            if p.lo == 0.0:
                return ONE
            if float(p.lo).is_integer() and abs(p.lo) <= 128:
                return self.ipow(int(p.lo))
        if self.lo < 0.0:
            return INVALID
        if self.lo == 0.0:
            if p.lo > 0.0:
                if self.hi == 0.0:
                    return ZERO
                tip = Interval._raw(self.hi, self.hi)._pow_pos(p)
                if not tip.valid:
                    return INVALID
                return Interval._raw(0.0, tip.hi)
            return INVALID
        return self._pow_pos(p)

    def _pow_pos(self, p: "Interval") -> "Interval":
        return (p * self.log()).exp()


def _coerce(x) -> Interval:
    if isinstance(x, Interval):
        return x
    if isinstance(x, Fraction):
        return Interval.from_fraction(x)
    if isinstance(x, (int, float)):
        f = float(x)
        if isinstance(x, int) and f != x:
            return Interval.from_fraction(x)
        return Interval._raw(f, f)
    raise TypeError(f"cannot use {type(x).__name__} as an interval")


INVALID = Interval.invalid()
ZERO = Interval._raw(0.0, 0.0)
ONE = Interval._raw(1.0, 1.0)
HALF = Interval._raw(0.5, 0.5)
TWO = Interval._raw(2.0, 2.0)

PI = Interval._raw(_down(math.pi), _up(math.pi))
LOG2 = Interval._raw(2.0, 2.0).log()
LOG10 = Interval._raw(10.0, 10.0).log()
SQRT_TWO_PI = (TWO * PI).sqrt()
INV_SQRT_TWO_PI = ONE / SQRT_TWO_PI


# ---------------------------------------------------------------------------
# Kind-keyed dispatchers (thin; the methods above are the real API)
# ---------------------------------------------------------------------------

_ARITH = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
    "neg": lambda a, b: -a,
    "min": lambda a, b: a.min(b),
    "max": lambda a, b: a.max(b),
    "abs": lambda a, b: abs(a),
}


def arith(a: Interval, b: Interval | None, kind: str) -> Interval:
    return _ARITH[kind](a, b)


def elementary(a: Interval, kind: str, exponent=None) -> Interval:
    if kind == "exp":
        return a.exp()
    if kind == "log":
        return a.log()
    if kind == "sqrt":
        return a.sqrt()
    if kind == "pow_real":
        return a.pow(exponent)
    raise ValueError(f"unknown elementary kind {kind!r}")


def strictly_greater(a: Interval, t: ScalarLike) -> bool:
    """True only if every x in a exceeds t.  False proves nothing."""
    if not a.valid:
        return False
    if isinstance(t, Fraction):
        return Fraction(a.lo) > t
    return a.lo > t


def strictly_less(a: Interval, t: ScalarLike) -> bool:
    if not a.valid:
        return False
    if isinstance(t, Fraction):
        return Fraction(a.hi) < t
    return a.hi < t


# ---------------------------------------------------------------------------
# Gaussian density, distribution and quantile with certified enclosures
# ---------------------------------------------------------------------------
#
# For |t| <= 4.5 the cdf uses the alternating Maclaurin series of
# int_0^t exp(-s^2/2) ds; the truncation error is bounded by the first
# omitted term.  For |t| > 4.5 the Mills-ratio asymptotic expansion gives
# two-sided bounds (partial sums ending on a positive term overestimate,
# on a negative term underestimate).

_SERIES_CUT = 4.5
_N_SERIES = 64

def _series_coeffs(n_max: int) -> list[Interval]:
    out = []
    fact = 1
    for n in range(n_max + 1):
        if n > 0:
            fact *= n
        c = Fraction(1, fact * 2**n * (2 * n + 1))
        out.append(Interval.from_fraction(c))
    return out

_COEFFS = _series_coeffs(_N_SERIES + 1)


def _cdf_series(t: Interval) -> Interval:
    """Phi on an interval with |endpoints| <= _SERIES_CUT, via the series."""
    u = t.ipow(2)
    amax = max(abs(t.lo), abs(t.hi))
    if amax <= 2.0:
        n_terms = 28
    elif amax <= 3.2:
        n_terms = 44
    else:
        n_terms = _N_SERIES
    acc = ZERO
    power = t
    sign = 1
    for n in range(n_terms + 1):
        term = power * _COEFFS[n]
        acc = acc + term if sign > 0 else acc - term
        sign = -sign
        power = power * u
    rem = abs(power * _COEFFS[n_terms + 1])
    acc = acc + Interval._raw(-rem.hi, rem.hi)
    return HALF + INV_SQRT_TWO_PI * acc


def _upper_tail(z: Interval) -> Interval:
    """1 - Phi(z) for z >= _SERIES_CUT, by the alternating asymptotic series."""
    iz2 = ONE / z.ipow(2)
    # partial sums: ... + 105/z^8 is an upper bound, ... - 945/z^10 a lower one
    acc_hi = ((((Interval(105.0) * iz2 - 15.0) * iz2 + 3.0) * iz2 - 1.0) * iz2) + 1.0
    acc_lo = acc_hi - Interval(945.0) * iz2.ipow(5)
    dens = INV_SQRT_TWO_PI * (-(z.ipow(2)) * HALF).exp()
    out = (dens / z) * Interval._raw(max(acc_lo.lo, 0.0), acc_hi.hi)
    return Interval._raw(max(out.lo, 0.0), out.hi)


def _cdf_point(t: float) -> Interval:
    ti = Interval._raw(t, t)
    if t == 0.0:
        return HALF
    a = abs(t)
    if a <= _SERIES_CUT:
        res = _cdf_series(ti)
        return Interval._raw(max(res.lo, 0.0), min(res.hi, 1.0))
    tail = _upper_tail(abs(ti))
    if t < 0.0:
        return tail
    res = ONE - tail
    return Interval._raw(res.lo, min(res.hi, 1.0))


def normal_pdf(t: Interval) -> Interval:
    """Certified enclosure of (2*pi)**(-1/2) * exp(-t^2/2)."""
    if not t.valid:
        return INVALID
    return INV_SQRT_TWO_PI * (-(t.ipow(2)) * HALF).exp()


def normal_cdf(t: Interval) -> Interval:
    if not t.valid:
        return INVALID
    lo = 0.0 if t.lo == -_INF else _cdf_point(t.lo).lo
    hi = 1.0 if t.hi == _INF else _cdf_point(t.hi).hi
    return Interval._raw(max(lo, 0.0), min(hi, 1.0))


QUANTILE_TOL = 2.0**-46


class QuantileError(ValueError):
    """Raised in strict mode when bisection cannot certify a bracket."""


def _quantile_seed(p: float) -> float:
    # Newton on the float cdf; only used as a seed, never trusted.
    if p < 0.02 or p > 0.98:
        q = min(p, 1.0 - p)
        t = math.sqrt(max(2.0 * math.log(1.0 / q) - math.log(2.0 * math.pi), 1e-8))
        t = math.copysign(t, p - 0.5)
    else:
        t = 0.0
    for _ in range(80):
        f = 0.5 * (1.0 + math.erf(t / math.sqrt(2.0))) - p
        d = math.exp(-0.5 * t * t) / math.sqrt(2.0 * math.pi)
        if d <= 0.0:
            break
        step = f / d
        step = max(min(step, 1.0), -1.0)
        t -= step
        if abs(step) < 1e-15 * max(1.0, abs(t)):
            break
    return t


def _quantile_point(p: float, tol: float) -> tuple[float, float]:
    """Certified bracket [a, b] with Phi(a) < p < Phi(b)."""
    t = _quantile_seed(p)
    delta = max(4e-16 * max(1.0, abs(t)), 2e-16)
    for _ in range(64):
        a = t - delta
        b = t + delta
        if _cdf_point(a).hi < p and _cdf_point(b).lo > p:
            break
        delta *= 8.0
    else:
        raise QuantileError(f"cannot bracket quantile at p={p!r}")
    # certified bisection down to the requested width
    while b - a > tol * max(1.0, abs(a), abs(b)):
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = _cdf_point(m)
        if fm.hi < p:
            a = m
        elif fm.lo > p:
            b = m
        else:
            break  # sign undecidable at working precision
    return a, b


def normal_quantile(p: Interval, tol: float = QUANTILE_TOL, strict: bool = False) -> Interval:
    """Certified enclosure of Phi^{-1}(p) for p strictly inside (0, 1).

    The bracket is refined by certified bisection on the cdf enclosure until
    its relative width is <= tol.  Near the tails double precision cannot
    always reach the default tolerance; the sound best-effort bracket is
    returned unless strict=True, which raises QuantileError instead.
    """
    if not p.valid or p.lo <= 0.0 or p.hi >= 1.0:
        return INVALID
    try:
        alo, bhi = _quantile_point(p.lo, tol)
        if p.hi != p.lo:
            bhi = _quantile_point(p.hi, tol)[1]
    except QuantileError:
        if strict:
            raise
        return INVALID
    res = Interval._raw(alo, bhi)
    if strict and res.width > 4.0 * tol * max(1.0, abs(alo), abs(bhi)):
        raise QuantileError(f"quantile width {res.width} exceeds tolerance at p={p!r}")
    return res
