"""Compactly supported piecewise polynomials on half-open rational intervals.

A function is a list of polynomial pieces over strictly increasing
breakpoints b_0 < b_1 < ... < b_n: piece i applies on [b_i, b_{i+1}), the
final breakpoint is closed (f(b_n) taken as the last piece's left limit), and
the function vanishes outside [b_0, b_n].  Constructors always canonicalize:
identical adjacent pieces are merged and zero pieces at either edge are
trimmed, so structural equality of canonical forms is function equality.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable

from .poly import ZERO, Polynomial, RationalLike, rat, rat_str

# Dyadic sample count per piece used by the advisory nonnegativity check.
_GRID_POINTS_PER_PIECE = 2**6 + 1


class SupportError(ValueError):
    """Raised for empty, degenerate or malformed piece layouts."""


class JumpDiscontinuityError(ValueError):
    """Raised when an operation requires continuity across interior knots."""


class FunctionClass(str, Enum):
    """Nested regularity classes, from bare support up to even bump."""

    NONE = "none"                  # has an interior jump
    F_SUPP = "F_supp"              # continuous inside its support
    F_PLUS_SUPP = "F_plus_supp"    # additionally nonnegative
    F_PLUS_ZERO = "F_plus_zero"    # additionally zero at both support ends
    P_PLUS_ZERO = "P_plus_zero"    # additionally even about the support midpoint


@dataclass(frozen=True)
class ClassTag:
    """Classification report: most specific class plus the raw evidence.

    The nonnegativity step evaluates each piece exactly on a dyadic grid of
    2**6 + 1 points (plus interval endpoints).  A negative sample disproves
    nonnegativity; an all-clear is advisory rather than a proof, which is
    acceptable because downstream math never relies on the sign.
    """

    family: FunctionClass
    interior_jumps: tuple[Fraction, ...]
    boundary_values: tuple[Fraction, Fraction]


@dataclass(frozen=True)
class PiecewisePoly:
    breakpoints: tuple[Fraction, ...]
    pieces: tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        if len(self.breakpoints) != len(self.pieces) + 1 or not self.pieces:
            raise SupportError("need n+1 breakpoints for n >= 1 pieces")
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if not a < b:
                raise SupportError("breakpoints must be strictly increasing")

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_pieces(
        breakpoints: Iterable[RationalLike], pieces: Iterable[Polynomial]
    ) -> PiecewisePoly:
        """Build and canonicalize (merge equal neighbours, trim zero edges)."""
        bps = [rat(b) for b in breakpoints]
        ps = list(pieces)
        if len(bps) != len(ps) + 1:
            raise SupportError("need n+1 breakpoints for n pieces")
        # merge adjacent identical pieces
        merged_b = bps[:1]
        merged_p: list[Polynomial] = []
        for b, p in zip(bps[1:], ps):
            if merged_p and merged_p[-1] == p:
                merged_b[-1] = b
            else:
                merged_b.append(b)
                merged_p.append(p)
        # trim zero pieces at the edges
        while merged_p and merged_p[0].is_zero():
            merged_p.pop(0)
            merged_b.pop(0)
        while merged_p and merged_p[-1].is_zero():
            merged_p.pop()
            merged_b.pop()
        if not merged_p:
            return _ZERO_FN
        return PiecewisePoly(tuple(merged_b), tuple(merged_p))

    @staticmethod
    def single(lo: RationalLike, hi: RationalLike, piece: Polynomial) -> PiecewisePoly:
        return PiecewisePoly.from_pieces([lo, hi], [piece])

    @staticmethod
    def zero() -> PiecewisePoly:
        return _ZERO_FN

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return len(self.pieces) == 1 and self.pieces[0].is_zero()

    @property
    def support(self) -> tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    def intervals(self) -> list[tuple[Fraction, Fraction, Polynomial]]:
        return [
            (a, b, p)
            for a, b, p in zip(self.breakpoints, self.breakpoints[1:], self.pieces)
        ]

    def __call__(self, x: RationalLike) -> Fraction:
        x = rat(x)
        lo, hi = self.support
        if x < lo or x > hi:
            return Fraction(0)
        if x == hi:
            return self.pieces[-1](hi)
        # linear scan is fine: piece counts stay small (<= ~130)
        for a, b, p in self.intervals():
            if a <= x < b:
                return p(x)
        raise AssertionError("unreachable")

    def boundary_values(self) -> tuple[Fraction, Fraction]:
        lo, hi = self.support
        return self.pieces[0](lo), self.pieces[-1](hi)

    def interior_jumps(self) -> list[tuple[Fraction, Fraction]]:
        """(knot, right limit - left limit) at every discontinuous interior knot."""
        out = []
        for i in range(1, len(self.pieces)):
            knot = self.breakpoints[i]
            jump = self.pieces[i](knot) - self.pieces[i - 1](knot)
            if jump != 0:
                out.append((knot, jump))
        return out

    # -- algebra ----------------------------------------------------------

    def _piece_at(self, a: Fraction, b: Fraction) -> Polynomial:
        """Piece applying on (a, b), zero if outside the support."""
        mid_twice = a + b
        for lo, hi, p in self.intervals():
            if 2 * lo <= mid_twice < 2 * hi:
                return p
        return ZERO

    def __add__(self, other: PiecewisePoly) -> PiecewisePoly:
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        pieces = [
            self._piece_at(a, b) + other._piece_at(a, b)
            for a, b in zip(bps, bps[1:])
        ]
        return PiecewisePoly.from_pieces(bps, pieces)

    def __neg__(self) -> PiecewisePoly:
        return PiecewisePoly(self.breakpoints, tuple(-p for p in self.pieces))

    def __sub__(self, other: PiecewisePoly) -> PiecewisePoly:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return _ZERO_FN
            return PiecewisePoly.from_pieces(
                self.breakpoints, [p * other for p in self.pieces]
            )
        if not isinstance(other, PiecewisePoly):
            return NotImplemented
        lo = max(self.support[0], other.support[0])
        hi = min(self.support[1], other.support[1])
        if not lo < hi:
            return _ZERO_FN
        cuts = sorted(
            {b for b in self.breakpoints if lo <= b <= hi}
            | {b for b in other.breakpoints if lo <= b <= hi}
            | {lo, hi}
        )
        pieces = [
            self._piece_at(a, b) * other._piece_at(a, b)
            for a, b in zip(cuts, cuts[1:])
        ]
        return PiecewisePoly.from_pieces(cuts, pieces)

    __rmul__ = __mul__

    # -- calculus and transforms ------------------------------------------

    def affine(
        self, lam: RationalLike, gamma: RationalLike, tau: RationalLike
    ) -> PiecewisePoly:
        """g(x) = lam * f(gamma*x - tau) with gamma != 0, exactly."""
        lam, gamma, tau = rat(lam), rat(gamma), rat(tau)
        if gamma == 0:
            raise ValueError("gamma must be nonzero")
        if lam == 0:
            return _ZERO_FN
        new_b = [(b + tau) / gamma for b in self.breakpoints]
        new_p = [lam * p.compose_affine(gamma, -tau) for p in self.pieces]
        if gamma < 0:
            new_b.reverse()
            new_p.reverse()
        return PiecewisePoly.from_pieces(new_b, new_p)

    def translate(self, shift: RationalLike) -> PiecewisePoly:
        """f(x - shift)."""
        return self.affine(1, 1, rat(shift))

    def reflect(self, center: RationalLike) -> PiecewisePoly:
        """f(2c - x): mirror image about x = c."""
        return self.affine(1, -1, -2 * rat(center))

    def restrict(self, lo: RationalLike, hi: RationalLike) -> PiecewisePoly:
        """f * indicator([lo, hi))."""
        lo, hi = rat(lo), rat(hi)
        if not lo < hi:
            raise SupportError("empty restriction window")
        lo = max(lo, self.support[0])
        hi = min(hi, self.support[1])
        if not lo < hi:
            return _ZERO_FN
        cuts = sorted({b for b in self.breakpoints if lo <= b <= hi} | {lo, hi})
        pieces = [self._piece_at(a, b) for a, b in zip(cuts, cuts[1:])]
        return PiecewisePoly.from_pieces(cuts, pieces)

    def derivative(self) -> PiecewisePoly:
        """Piecewise derivative; refuses functions with interior jumps,
        where the distributional derivative would pick up delta terms."""
        jumps = self.interior_jumps()
        if jumps:
            knots = ", ".join(str(k) for k, _ in jumps)
            raise JumpDiscontinuityError(f"interior jump(s) at {knots}")
        return self._formal_derivative()

    def _formal_derivative(self) -> PiecewisePoly:
        """Derivative of each piece on its own interval, jump checks skipped."""
        return PiecewisePoly.from_pieces(
            self.breakpoints, [p.derivative() for p in self.pieces]
        )

    def moment(self, k: int, squared: bool = False) -> Fraction:
        """Exact integral of x^k * f(x) (or x^k * f(x)^2)."""
        if k < 0:
            raise ValueError("moment order must be >= 0")
        total = Fraction(0)
        for a, b, p in self.intervals():
            q = p * p if squared else p
            total += q.shift_up(k).integrate(a, b)
        return total

    # -- classification ---------------------------------------------------

    def _nonneg_on_grid(self, tol: float) -> bool:
        for a, b, p in self.intervals():
            step = (b - a) / (_GRID_POINTS_PER_PIECE - 1)
            for i in range(_GRID_POINTS_PER_PIECE):
                if float(p(a + i * step)) < -tol:
                    return False
        return True

    def _even_about_midpoint(self, tol: float) -> bool:
        lo, hi = self.support
        mirrored = self.reflect((lo + hi) / 2)
        if tol == 0:
            return self == mirrored
        diff = self - mirrored
        if diff.is_zero():
            return True
        worst = 0.0
        for a, b, p in diff.intervals():
            step = (b - a) / (_GRID_POINTS_PER_PIECE - 1)
            for i in range(_GRID_POINTS_PER_PIECE):
                worst = max(worst, abs(float(p(a + i * step))))
        return worst <= tol

    def classify(self, tol: float = 0.0) -> ClassTag:
        """Most specific class tag; `tol > 0` relaxes the jump, boundary-zero
        and evenness tests to that absolute tolerance (for inputs whose
        coefficients carry printed-decimal roundoff)."""
        jumps = self.interior_jumps()
        boundary = self.boundary_values()
        tag = lambda family: ClassTag(family, tuple(k for k, _ in jumps), boundary)
        if any(abs(float(j)) > tol for _, j in jumps):
            return tag(FunctionClass.NONE)
        if not self._nonneg_on_grid(tol):
            return tag(FunctionClass.F_SUPP)
        if not all(abs(float(v)) <= tol for v in boundary):
            return tag(FunctionClass.F_PLUS_SUPP)
        if not self._even_about_midpoint(tol):
            return tag(FunctionClass.F_PLUS_ZERO)
        return tag(FunctionClass.P_PLUS_ZERO)

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "breakpoints": [rat_str(b) for b in self.breakpoints],
            "pieces": [p.to_strings() for p in self.pieces],
        }

    @staticmethod
    def from_json_dict(obj: dict) -> PiecewisePoly:
        try:
            bps = obj["breakpoints"]
            pieces = obj["pieces"]
        except (KeyError, TypeError) as exc:
            raise SupportError(f"descriptor missing field: {exc}") from exc
        return PiecewisePoly.from_pieces(
            bps, [Polynomial.from_strings(p) for p in pieces]
        )

    @staticmethod
    def from_json(text: str) -> PiecewisePoly:
        return PiecewisePoly.from_json_dict(json.loads(text))

    def __repr__(self) -> str:
        parts = ", ".join(
            f"[{a},{b}): {p!r}" for a, b, p in self.intervals()
        )
        return f"PiecewisePoly({parts})"


# Canonical zero function: single zero piece on [0, 1).
_ZERO_FN = PiecewisePoly((Fraction(0), Fraction(1)), (ZERO,))


def tent() -> PiecewisePoly:
    """The unit tent 1 - |x| on [-1, 1]."""
    return PiecewisePoly.from_pieces(
        [-1, 0, 1], [Polynomial.of([1, 1]), Polynomial.of([1, -1])]
    )
