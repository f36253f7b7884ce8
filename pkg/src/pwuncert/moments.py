"""Exact time/frequency moments and the Heisenberg uncertainty product.

Conventions, for f with squared norm N = integral of |f|^2:

    alpha     = (1/N) * int x |f(x)|^2 dx
    sigma_x2  = (1/N) * int (x - alpha)^2 |f(x)|^2 dx
    sigma_w2  = (1/(2 pi N)) * int w^2 |fhat(w)|^2 dw
    U         = sigma_x2 * sigma_w2

with the transform fhat(w) = int exp(-i w x) f(x) dx.  For a compactly
supported piecewise polynomial, sigma_w2 is finite exactly when f is
continuous across interior knots and vanishes at both support endpoints; by
Plancherel it then equals ||f'||^2 / ||f||^2, an exact rational.  Otherwise
sigma_w2 = +inf (math.inf here; the frequency tail decays like 1/w^2 only).

Frequency means are rational multiples of 2*pi, so reports carry `beta_coeff`
with beta = 2*pi*beta_coeff.  Modulated atoms

    A(x) = env((x - u)/t) * exp(2 pi i xi x)

are never materialized: their moments follow from the envelope's by the exact
covariance rules (alpha -> u + t*alpha, beta_coeff -> xi, sigma_x2 -> t^2 *
sigma_x2, sigma_w2 -> sigma_w2 / t^2, U unchanged).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .piecewise import ClassTag, PiecewisePoly
from .poly import RationalLike, rat, rat_str

#: Finite values are exact Fractions; the only float ever used is math.inf.
ExtReal = Union[Fraction, float]

INF: float = math.inf


class ZeroFunctionError(ValueError):
    """Moments of the zero function are undefined."""


def is_finite(value: ExtReal) -> bool:
    return isinstance(value, Fraction)


def ext_mul(a: ExtReal, b: ExtReal) -> ExtReal:
    if not is_finite(a) or not is_finite(b):
        if a == 0 or b == 0:
            raise ArithmeticError("0 * inf is undefined")
        return INF
    return a * b


def ext_str(value: ExtReal) -> str:
    return rat_str(value) if is_finite(value) else "inf"


def ext_float(value: ExtReal) -> float:
    return float(value)


def ext_json_float(value: ExtReal) -> float | None:
    """Float for JSON payloads: None (-> null) when the value is inf, since
    strict JSON has no Infinity literal; the paired string field says "inf"."""
    return float(value) if is_finite(value) else None


@dataclass(frozen=True)
class AtomParams:
    """Scale t > 0, modulation frequency xi (in units of 2*pi), shift u."""

    t: Fraction
    xi: Fraction
    u: Fraction

    @staticmethod
    def of(t: RationalLike, xi: RationalLike, u: RationalLike) -> AtomParams:
        t = rat(t)
        if t <= 0:
            raise ValueError("atom scale t must be positive")
        return AtomParams(t, rat(xi), rat(u))


@dataclass(frozen=True)
class MomentsReport:
    norm_sq: Fraction
    alpha: Fraction
    beta_coeff: Fraction
    sigma_x2: Fraction
    sigma_w2: ExtReal
    uncertainty: ExtReal
    class_tag: ClassTag | None = None

    def to_json_dict(self) -> dict:
        out = {
            "norm_sq": rat_str(self.norm_sq),
            "norm_sq_float": float(self.norm_sq),
            "alpha": rat_str(self.alpha),
            "alpha_float": float(self.alpha),
            "beta_coeff": rat_str(self.beta_coeff),
            "beta_float": 2.0 * math.pi * float(self.beta_coeff),
            "sigma_x2": rat_str(self.sigma_x2),
            "sigma_x2_float": float(self.sigma_x2),
            "sigma_w2": ext_str(self.sigma_w2),
            "sigma_w2_float": ext_json_float(self.sigma_w2),
            "uncertainty": ext_str(self.uncertainty),
            "uncertainty_float": ext_json_float(self.uncertainty),
        }
        if self.class_tag is not None:
            out["class"] = self.class_tag.family.value
            out["interior_jumps"] = [rat_str(k) for k in self.class_tag.interior_jumps]
            out["boundary_values"] = [
                rat_str(v) for v in self.class_tag.boundary_values
            ]
        return out


def norm_sq(f: PiecewisePoly) -> Fraction:
    n = f.moment(0, squared=True)
    if n == 0:
        raise ZeroFunctionError("function has zero L2 norm")
    return n


def alpha(f: PiecewisePoly) -> Fraction:
    return f.moment(1, squared=True) / norm_sq(f)


def sigma_x2(f: PiecewisePoly) -> Fraction:
    n = norm_sq(f)
    a = f.moment(1, squared=True) / n
    return f.moment(2, squared=True) / n - a * a


def _h1_obstructions(f: PiecewisePoly, class_tol: float) -> bool:
    """True when the finiteness criterion fails: an interior jump or a
    nonzero boundary value (each compared against class_tol)."""
    if any(abs(float(j)) > class_tol for _, j in f.interior_jumps()):
        return True
    return any(abs(float(v)) > class_tol for v in f.boundary_values())


def sigma_w2(f: PiecewisePoly, class_tol: float = 0.0) -> ExtReal:
    """Exact frequency variance, +inf outside the finite regime.

    With class_tol > 0, boundary values and jumps below the tolerance are
    treated as zero for the finiteness decision (the Plancherel value is
    still computed from the exact coefficients as given).
    """
    n = norm_sq(f)
    if _h1_obstructions(f, class_tol):
        return INF
    return f._formal_derivative().moment(0, squared=True) / n


def uncertainty(f: PiecewisePoly, class_tol: float = 0.0) -> ExtReal:
    sx = sigma_x2(f)
    if sx <= 0:
        # impossible for a nonzero piecewise polynomial; guards 0 * inf
        raise ArithmeticError("sigma_x2 must be positive")
    return ext_mul(sx, sigma_w2(f, class_tol))


def report(
    f: PiecewisePoly, class_tol: float = 0.0, classify: bool = True
) -> MomentsReport:
    n = norm_sq(f)
    a = f.moment(1, squared=True) / n
    sx = f.moment(2, squared=True) / n - a * a
    sw = sigma_w2(f, class_tol)
    return MomentsReport(
        norm_sq=n,
        alpha=a,
        beta_coeff=Fraction(0),
        sigma_x2=sx,
        sigma_w2=sw,
        uncertainty=ext_mul(sx, sw),
        class_tag=f.classify(class_tol) if classify else None,
    )


def atom_report(
    envelope: PiecewisePoly, params: AtomParams, class_tol: float = 0.0
) -> MomentsReport:
    """Moments of env((x-u)/t) * exp(2 pi i xi x), via exact covariance."""
    base = report(envelope, class_tol)
    t, t2 = params.t, params.t * params.t
    sw = base.sigma_w2 / t2 if is_finite(base.sigma_w2) else INF
    return MomentsReport(
        norm_sq=t * base.norm_sq,
        alpha=params.u + t * base.alpha,
        beta_coeff=params.xi,
        sigma_x2=t2 * base.sigma_x2,
        sigma_w2=sw,
        uncertainty=base.uncertainty,
        class_tag=base.class_tag,
    )
