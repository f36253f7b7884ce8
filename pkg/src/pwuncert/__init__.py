"""Exact time-frequency uncertainty products for piecewise polynomials.

The package computes the Heisenberg product U = sigma_x^2 * sigma_w^2 for
compactly supported piecewise-polynomial functions in exact rational
arithmetic, with a floating-point spectral module serving as an independent
cross-check.  See the module docstrings for conventions and derivations:

- `poly`, `piecewise`: exact polynomial and piecewise-polynomial arithmetic
- `moments`: norms, means, variances, the uncertainty product, atom covariance
- `dictionaries`: the two closed-form envelope families G and F
- `bspline`: the iterated-boxcar family rect^p and its monotone limit
- `symmetry`: reflection halves, convexity bounds, even/odd energy balance
- `spectrum`: numerical Fourier transforms and frequency-moment quadrature
- `verify`: every headline value as a named pass/fail check
- `cli`: the `pwuncert` command-line tool
"""

from .poly import Polynomial, Rational, rat, rat_str
from .piecewise import (
    ClassTag,
    FunctionClass,
    JumpDiscontinuityError,
    PiecewisePoly,
    SupportError,
    tent,
)
from .moments import (
    INF,
    AtomParams,
    ExtReal,
    MomentsReport,
    ZeroFunctionError,
    atom_report,
    report,
    uncertainty,
)
from .dictionaries import DictionaryId, DictRow, dict_table, envelope, verify_minimizer
from .bspline import limit_check, rect_p_explicit, rect_p_recursive, rect_scan
from .symmetry import (
    ClassViolationError,
    ReflectionPair,
    asymmetric_cubic,
    corollary_normalize,
    even_odd_split,
    reflections,
    theorem_bound_check,
)
from .spectrum import (
    DivergentIntegralError,
    F_sq_integral,
    atom_freq_mean,
    fourier_eval,
    quad_freq_moment,
    quad_sigma_w2,
)
from .verify import CheckResult, run_checks

__version__ = "0.1.0"

__all__ = [
    "AtomParams",
    "CheckResult",
    "ClassTag",
    "ClassViolationError",
    "DictRow",
    "DictionaryId",
    "DivergentIntegralError",
    "ExtReal",
    "F_sq_integral",
    "FunctionClass",
    "INF",
    "JumpDiscontinuityError",
    "MomentsReport",
    "PiecewisePoly",
    "Polynomial",
    "Rational",
    "ReflectionPair",
    "SupportError",
    "ZeroFunctionError",
    "asymmetric_cubic",
    "atom_freq_mean",
    "atom_report",
    "corollary_normalize",
    "dict_table",
    "envelope",
    "even_odd_split",
    "fourier_eval",
    "limit_check",
    "quad_freq_moment",
    "quad_sigma_w2",
    "rat",
    "rat_str",
    "rect_p_explicit",
    "rect_p_recursive",
    "rect_scan",
    "reflections",
    "report",
    "tent",
    "theorem_bound_check",
    "uncertainty",
    "verify_minimizer",
    "run_checks",
]
