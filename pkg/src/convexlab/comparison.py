"""Exact comparison of radical/power expressions via directed-rounded intervals.

Everything the audits compare is a product of nonnegative integers,
rationals, and RadicalSum values raised to rational exponents.  Verdicts are
produced by interval arithmetic over exact dyadic rationals: square/cube/n-th
roots come from integer n-th roots of scaled integers (floor for the lower
endpoint, +1 ulp for the upper), so every bound is rigorous.  Precision
starts at 128 bits and doubles to 4096; if the intervals never separate, an
exact fallback clears denominators, raises both sides to the least common
exponent multiple, and compares canonical integer-coefficient radical sums
structurally, which decides equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, ROUND_CEILING, ROUND_HALF_EVEN, localcontext
from fractions import Fraction
from math import isqrt, lcm

from .errors import ComparisonUndecided
from .radicals import RadicalSum

LADDER = (128, 256, 512, 1024, 2048, 4096)
EXTENDED_LADDER = (8192, 16384, 32768, 65536)

LT, EQ, GT = -1, 0, 1


def iroot_floor(x: int, n: int) -> int:
    """floor(x ** (1/n)) for x >= 0, n >= 1, by Newton iteration on integers."""
    if x < 0:
        raise ValueError("negative radicand")
    if n == 1 or x == 0:
        return x
    if n == 2:
        return isqrt(x)
    g = 1 << -(-x.bit_length() // n)
    while True:
        t = ((n - 1) * g + x // g ** (n - 1)) // n
        if t >= g:
            break
        g = t
    while g ** n > x:
        g -= 1
    return g


def root_bounds(q: Fraction, k: int, prec: int) -> tuple[Fraction, Fraction]:
    """Rational enclosure of q ** (1/k) for q >= 0 with width 1/(den*2**prec)."""
    if q < 0:
        raise ValueError("negative base for even-style root")
    if k == 1:
        return q, q
    num, den = q.numerator, q.denominator
    scaled = num * den ** (k - 1) << (k * prec)
    r = iroot_floor(scaled, k)
    unit = den << prec
    lo = Fraction(r, unit)
    if lo ** k == q:
        return lo, lo
    return lo, Fraction(r + 1, unit)


def pow_frac_bounds(q: Fraction, e: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    """Rational enclosure of q ** e for q >= 0 (q > 0 when e < 0)."""
    if e.denominator == 1:
        v = q ** e.numerator
        return v, v
    if e < 0:
        lo, hi = pow_frac_bounds(q, -e, prec)
        return 1 / hi, 1 / lo
    t = q ** e.numerator
    return root_bounds(t, e.denominator, prec)


def log2_bounds(n: int, prec: int) -> tuple[Fraction, Fraction]:
    """Dyadic enclosure of log2(n) for an integer n >= 1, width ~2**(1-prec).

    Tracks n**(2**prec) by repeated squaring of a width-limited mantissa,
    rounding down for the lower bound and up for the upper; the bit length of
    the final mantissa pins log2 to within 2 ulps at scale 2**-prec.
    """
    if n < 1:
        raise ValueError("log2 needs a positive integer")
    if n & (n - 1) == 0:
        e = Fraction(n.bit_length() - 1)
        return e, e
    width = 2 * prec + 16
    top = n.bit_length() - 1
    shift = width - top
    # value tracked as m * 2**(E - width) with m in [2**width, 2**(width+1))
    if shift >= 0:
        mlo = mhi = n << shift
    else:
        mlo = n >> -shift
        mhi = -((-n) >> -shift)
    elo = ehi = top
    for _ in range(prec):
        t = mlo * mlo
        s = t.bit_length() - width - 1
        mlo = t >> s
        elo = 2 * elo + (s - width)
        t = mhi * mhi
        s = t.bit_length() - width - 1
        mhi = -((-t) >> s)
        if mhi.bit_length() > width + 1:
            mhi >>= 1
            s += 1
        ehi = 2 * ehi + (s - width)
    denom = 1 << prec
    lo = Fraction(mlo.bit_length() - 1 + elo - width, denom)
    hi = Fraction(mhi.bit_length() + ehi - width, denom)
    return lo, hi


def log2_upper(n: int, prec: int = 100) -> Fraction:
    """Exact dyadic-rational upper bound on log2(n)."""
    return log2_bounds(n, prec)[1]


@dataclass(frozen=True)
class PowerProduct:
    """Value of the form prod_i base_i ** exp_i with nonnegative bases."""

    factors: tuple[tuple[object, Fraction], ...]

    def __repr__(self) -> str:
        bits = [f"({b!r})^{e}" for b, e in self.factors]
        return "PowerProduct(" + " * ".join(bits) + ")"


def power_product(*factors) -> PowerProduct:
    """Build a PowerProduct from (base, exponent) pairs."""
    norm = []
    for base, exp in factors:
        e = exp if isinstance(exp, Fraction) else Fraction(exp)
        if e == 0:
            continue
        if isinstance(base, int):
            base = Fraction(base)
        if isinstance(base, Fraction) and base < 0:
            raise ValueError("bases must be nonnegative")
        norm.append((base, e))
    return PowerProduct(tuple(norm))


def _normalize(v) -> PowerProduct:
    if isinstance(v, PowerProduct):
        return v
    if isinstance(v, (int, Fraction, RadicalSum)):
        return power_product((v, 1))
    raise TypeError(f"cannot compare value of type {type(v).__name__}")


def exact_fraction(v) -> Fraction | None:
    """The exact rational value of an expression, or None when it is irrational
    (or not provably rational by perfect-power extraction)."""
    pp = _normalize(v)
    out = Fraction(1)
    for base, e in pp.factors:
        if isinstance(base, RadicalSum):
            r = base.rational_value()
            if r is None:
                return None
            base = Fraction(r)
        t = base ** e.numerator
        q = e.denominator
        if q > 1:
            rn = iroot_floor(t.numerator, q)
            rd = iroot_floor(t.denominator, q)
            if rn ** q != t.numerator or rd ** q != t.denominator:
                return None
            t = Fraction(rn, rd)
        out *= t
    return out


def value_bounds(v, prec: int) -> tuple[Fraction, Fraction]:
    """Rigorous rational enclosure of a nonnegative expression."""
    if isinstance(v, int):
        f = Fraction(v)
        return f, f
    if isinstance(v, Fraction):
        return v, v
    if isinstance(v, RadicalSum):
        return v.bounds(prec)
    pp = _normalize(v)
    lo = hi = Fraction(1)
    for base, e in pp.factors:
        blo, bhi = value_bounds(base, prec)
        if e > 0:
            flo = pow_frac_bounds(blo, e, prec)[0]
            fhi = pow_frac_bounds(bhi, e, prec)[1]
        else:
            if blo <= 0:
                raise ZeroDivisionError("negative exponent needs a positive base bound")
            flo = pow_frac_bounds(bhi, e, prec)[0]
            fhi = pow_frac_bounds(blo, e, prec)[1]
        lo, hi = lo * flo, hi * fhi
    return lo, hi


def _cleared_radical_pair(px: PowerProduct, py: PowerProduct):
    """Raise both sides to the least common exponent multiple and clear rational
    denominators, yielding two integer-coefficient RadicalSums, or None when a
    RadicalSum base carries a negative exponent (outside the fallback's scope)."""
    denoms = [e.denominator for _, e in px.factors] + [e.denominator for _, e in py.factors]
    power = lcm(*denoms) if denoms else 1

    def side(pp: PowerProduct):
        coeff = Fraction(1)
        rad = RadicalSum.from_int(1)
        for base, e in pp.factors:
            ee = e * power
            assert ee.denominator == 1
            ee = ee.numerator
            if isinstance(base, RadicalSum):
                if ee < 0:
                    return None
                rad = rad * base ** ee
            else:
                coeff *= base ** ee
        return coeff, rad

    sx, sy = side(px), side(py)
    if sx is None or sy is None:
        return None
    (cx, rx), (cy, ry) = sx, sy
    scale = cx.denominator * cy.denominator
    return rx * (cx * scale).numerator, ry * (cy * scale).numerator


def compare_radical(x, y) -> int:
    """Strict three-way comparison of two nonnegative radical/power expressions.

    Returns -1, 0, or 1.  Interval precision escalates 128 -> 4096 bits; the
    exact fallback then decides equality structurally.  ComparisonUndecided is
    raised only if everything fails, which no catalog input triggers.
    """
    px, py = _normalize(x), _normalize(y)
    ex, ey = exact_fraction(px), exact_fraction(py)
    if ex is not None and ey is not None:
        return (ex > ey) - (ex < ey)
    for prec in LADDER:
        xlo, xhi = value_bounds(px, prec)
        ylo, yhi = value_bounds(py, prec)
        if xhi < ylo:
            return LT
        if yhi < xlo:
            return GT
    pair = _cleared_radical_pair(px, py)
    if pair is not None:
        rx, ry = pair
        if rx == ry:
            return EQ
        for prec in EXTENDED_LADDER:
            xlo, xhi = rx.bounds(prec)
            ylo, yhi = ry.bounds(prec)
            if xhi < ylo:
                return LT
            if yhi < xlo:
                return GT
    raise ComparisonUndecided(f"could not separate {x!r} and {y!r}")


def fraction_to_decimal(q: Fraction, digits: int = 30, rounding: str = ROUND_HALF_EVEN) -> str:
    """Exact rational -> decimal string with the given significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = rounding
        d = Decimal(q.numerator) / Decimal(q.denominator)
    return str(d)


def decimal_of(v, digits: int = 30, rounding: str = ROUND_HALF_EVEN) -> str:
    """Deterministic decimal rendering of any comparable expression.

    Exact rationals render exactly; irrational values escalate interval
    precision until both endpoints agree at the requested digit count (the
    lower endpoint's rendering is used if the 4096-bit ceiling is reached,
    which no catalog value does).
    """
    ex = exact_fraction(v) if not isinstance(v, (int, Fraction)) else Fraction(v)
    if ex is not None:
        return fraction_to_decimal(ex, digits, rounding)
    for prec in LADDER:
        lo, hi = value_bounds(v, prec)
        slo = fraction_to_decimal(lo, digits, rounding)
        shi = fraction_to_decimal(hi, digits, rounding)
        if slo == shi:
            return slo
    return slo


def decimal_of_ratio(num, den, digits: int = 30) -> str:
    """Deterministic decimal rendering of num/den for nonnegative expressions."""
    en = exact_fraction(num) if not isinstance(num, (int, Fraction)) else Fraction(num)
    ed = exact_fraction(den) if not isinstance(den, (int, Fraction)) else Fraction(den)
    if en is not None and ed is not None:
        return fraction_to_decimal(en / ed, digits)
    for prec in LADDER:
        nlo, nhi = value_bounds(num, prec)
        dlo, dhi = value_bounds(den, prec)
        lo, hi = nlo / dhi, nhi / dlo
        slo = fraction_to_decimal(lo, digits)
        shi = fraction_to_decimal(hi, digits)
        if slo == shi:
            return slo
    return slo


def ratio_bounds(num, den, prec: int) -> tuple[Fraction, Fraction]:
    """Enclosure of num/den, both nonnegative with den bounded away from 0."""
    nlo, nhi = value_bounds(num, prec)
    dlo, dhi = value_bounds(den, prec)
    return nlo / dhi, nhi / dlo


def decimal_round_up(v, digits: int = 30) -> str:
    """Upper decimal rendering (round toward +infinity of an upper bound)."""
    ex = exact_fraction(v) if not isinstance(v, (int, Fraction)) else Fraction(v)
    if ex is not None:
        return fraction_to_decimal(ex, digits, ROUND_CEILING)
    _, hi = value_bounds(v, LADDER[0])
    return fraction_to_decimal(hi, digits, ROUND_CEILING)
