"""The boxcar self-convolution family rect^p (cardinal B-splines).

rect^1 is the indicator of [-1/2, 1/2]; rect^p = rect^(p-1) * rect^1 is
supported on [-p/2, p/2] with knots at j - p/2 and polynomial degree p - 1.
Two independent constructions are provided and must agree exactly:

* `rect_p_explicit`: the alternating truncated-power formula
      rect^p(x) = 1/(p-1)! * sum_j (-1)^j C(p,j) max(0, x + p/2 - j)^(p-1)
  expanded between consecutive integer-offset knots;
* `rect_p_recursive`: the sliding-window integral
      rect^p(x) = int_{x-1/2}^{x+1/2} rect^(p-1)(s) ds.

With u_p = int x^2 |rect^p|^2 / int |rect^p|^2 and nu_p = ||(rect^p)'||^2 /
||rect^p||^2 (the frequency variance of the sinc^p transform), the product
U(p) = u_p * nu_p decreases strictly toward the Gaussian floor 1/4 and
U(2) = 3/10, U(3) = 215/847 exactly.

Scan rows are exact rationals; the integer cores below keep the p <= 64 scan
fast by clearing denominators once per piece instead of per coefficient.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .moments import INF, ExtReal
from .piecewise import PiecewisePoly
from .poly import Polynomial

HALF = Fraction(1, 2)


@lru_cache(maxsize=None)
def rect_p_explicit(p: int) -> PiecewisePoly:
    """Truncated-power construction, canonicalized."""
    if p < 1:
        raise ValueError("p must be >= 1")
    knots = [Fraction(2 * j - p, 2) for j in range(p + 1)]
    fact = math.factorial(p - 1)
    acc = [Fraction(0)] * p  # ascending coefficients of the running sum
    pieces = []
    for j in range(p):
        # add (-1)^j C(p,j)/(p-1)! * (x - knots[j])^(p-1)
        c = Fraction((-1) ** j * math.comb(p, j), fact)
        shift = -knots[j]
        power = Fraction(1)
        for k in range(p - 1, -1, -1):
            acc[k] += c * math.comb(p - 1, k) * power
            power *= shift
        pieces.append(Polynomial.of(list(acc)))
    return PiecewisePoly.from_pieces(knots, pieces)


def _window_integral(f: PiecewisePoly) -> PiecewisePoly:
    """g(x) = int_{x-1/2}^{x+1/2} f(s) ds for compactly supported f."""
    lo, hi = f.support
    # antiderivative pieces A_i with A(lo) = 0, plus total mass beyond hi
    prefix = Fraction(0)
    anti: list[tuple[Fraction, Fraction, Polynomial]] = []
    for a, b, piece in f.intervals():
        ap = piece.antiderivative()
        anti.append((a, b, ap + Polynomial.of([prefix - ap(a)])))
        prefix += ap(b) - ap(a)
    total = Polynomial.of([prefix])
    shifted: dict[tuple[int, Fraction], Polynomial] = {}

    def composed(shift: Fraction, y: Fraction) -> Polynomial:
        """A(x + shift) as a polynomial valid near the sample point y + shift."""
        target = y + shift
        if target < lo:
            return Polynomial(())
        if target >= hi:
            return total
        for i, (a, b, ap) in enumerate(anti):
            if a <= target < b:
                key = (i, shift)
                if key not in shifted:
                    shifted[key] = ap.taylor_shift(shift)
                return shifted[key]
        raise AssertionError("unreachable")

    cuts = sorted({b - HALF for b in f.breakpoints} | {b + HALF for b in f.breakpoints})
    pieces = []
    for a, b in zip(cuts, cuts[1:]):
        mid = (a + b) / 2
        pieces.append(composed(HALF, mid) - composed(-HALF, mid))
    return PiecewisePoly.from_pieces(cuts, pieces)


@lru_cache(maxsize=None)
def rect_p_recursive(p: int) -> PiecewisePoly:
    """Iterated sliding-window construction starting from the boxcar."""
    if p < 1:
        raise ValueError("p must be >= 1")
    if p == 1:
        return rect_p_explicit(1)
    return _window_integral(rect_p_recursive(p - 1))


# -- exact scan -----------------------------------------------------------
#
# Degree-63 squares make per-coefficient Fraction arithmetic the bottleneck,
# so the scan clears every piece to integers over the known denominator
# (p-1)! * 2^(p-1) (knots are half-integers) and accumulates the integrals
# as plain integers, normalizing once per row.


def _square_int(coeffs: list[int]) -> list[int]:
    out = [0] * (2 * len(coeffs) - 1) if coeffs else []
    for i, a in enumerate(coeffs):
        if a:
            for j, b in enumerate(coeffs):
                out[i + j] += a * b
    return out


def _sq_moment_sums(
    pieces: list[tuple[int, int, list[int]]], top: int, want_m2: bool
) -> tuple[int, int, int]:
    """Accumulate int_a^b P^2 and optionally int_a^b x^2 P^2 over pieces.

    Each piece is (2a, 2b, integer coefficients); `top` bounds the x-power
    appearing, so everything lives over the denominator L * 2^top with
    L = lcm(1..top).  Returns (sum0, sum2, common denominator).
    """
    L = math.lcm(*range(1, top + 1))
    sum0 = 0
    sum2 = 0
    pow_cache: dict[int, list[int]] = {}

    def powers(i2x: int) -> list[int]:
        if i2x not in pow_cache:
            ps = [1] * (top + 1)
            for t in range(1, top + 1):
                ps[t] = ps[t - 1] * i2x
            pow_cache[i2x] = ps
        return pow_cache[i2x]

    for ia2, ib2, sq in pieces:
        pa, pb = powers(ia2), powers(ib2)
        for j, m in enumerate(sq):
            if not m:
                continue
            sum0 += m * (L // (j + 1)) * (pb[j + 1] - pa[j + 1]) * (1 << (top - j - 1))
            if want_m2:
                sum2 += m * (L // (j + 3)) * (pb[j + 3] - pa[j + 3]) * (1 << (top - j - 3))
    return sum0, sum2, L


@dataclass(frozen=True)
class ScanRow:
    p: int
    u_p: Fraction
    nu_p: ExtReal
    uncertainty: ExtReal
    uncertainty_float: float


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise AssertionError(f"expected an integer, got {x}")
    return x.numerator


def scan_row(p: int) -> ScanRow:
    """Exact u_p, nu_p and their product for one member (p >= 2 finite)."""
    f = rect_p_explicit(p)
    den = math.factorial(p - 1) * (1 << (p - 1))
    squares = []
    dsquares = []
    for a, b, piece in f.intervals():
        ints = [_as_int(c * den) for c in piece.coeffs]
        ia2, ib2 = _as_int(2 * a), _as_int(2 * b)
        squares.append((ia2, ib2, _square_int(ints)))
        dints = [k * c for k, c in enumerate(ints)][1:]
        dsquares.append((ia2, ib2, _square_int(dints)))
    top = 2 * p + 1  # highest power is x^2 * x^(2p-2), integrated once
    s0, s2, L = _sq_moment_sums(squares, top, want_m2=True)
    n0 = Fraction(s0, den * den * L << top)
    n2 = Fraction(s2, den * den * L << top)
    u_p = n2 / n0
    if p == 1:
        return ScanRow(p, u_p, INF, INF, math.inf)
    d0, _, Ld = _sq_moment_sums(dsquares, top, want_m2=False)
    nu_p = Fraction(d0, den * den * Ld << top) / n0
    u = u_p * nu_p
    return ScanRow(p, u_p, nu_p, u, float(u))


@lru_cache(maxsize=8)
def rect_scan(p_min: int = 2, p_max: int = 64) -> tuple[ScanRow, ...]:
    """Exact rows for p_min..p_max; p_min >= 2 keeps every row finite."""
    if p_min < 2:
        raise ValueError("scan starts at p = 2; the boxcar has infinite nu_p")
    if p_max < p_min:
        raise ValueError("p_max must be >= p_min")
    return tuple(scan_row(p) for p in range(p_min, p_max + 1))


@dataclass(frozen=True)
class LimitReport:
    p_max: int
    strictly_decreasing: bool
    all_above_quarter: bool
    gap_product_bounded: bool
    gap_at_8: Fraction
    gap_at_p_max: Fraction
    ok: bool


def limit_check(p_max: int = 64) -> LimitReport:
    """Monotone approach to the 1/4 floor with a 1/p-rate certificate.

    Checks, on exact rationals: U(p) strictly decreasing on [2, p_max];
    U(p) > 1/4 throughout; and the scaled gap (U(p) - 1/4) * p on [8, p_max]
    never exceeds twice its value at p = 8.
    """
    if p_max < 8:
        raise ValueError("limit check needs p_max >= 8")
    rows = rect_scan(2, p_max)
    qs = [r.uncertainty for r in rows]
    quarter = Fraction(1, 4)
    decreasing = all(a > b for a, b in zip(qs, qs[1:]))
    above = all(q > quarter for q in qs)
    gaps = {r.p: (r.uncertainty - quarter) * r.p for r in rows}
    bound = 2 * gaps[8]
    bounded = all(gaps[p] <= bound for p in range(8, p_max + 1))
    return LimitReport(
        p_max,
        decreasing,
        above,
        bounded,
        gaps[8],
        gaps[p_max],
        decreasing and above and bounded,
    )
