import math
from fractions import Fraction

import pytest

from pwuncert.moments import (
    INF,
    AtomParams,
    ZeroFunctionError,
    alpha,
    atom_report,
    ext_float,
    ext_json_float,
    ext_mul,
    ext_str,
    is_finite,
    norm_sq,
    report,
    sigma_w2,
    sigma_x2,
    uncertainty,
)
from pwuncert.piecewise import FunctionClass, PiecewisePoly, tent

CUBIC_TOL = 1e-9


class TestTentReport:
    def test_exact_values(self):
        rep = report(tent())
        assert rep.norm_sq == Fraction(2, 3)
        assert rep.alpha == 0
        assert rep.beta_coeff == 0
        assert rep.sigma_x2 == Fraction(1, 10)
        assert rep.sigma_w2 == Fraction(3)
        assert rep.uncertainty == Fraction(3, 10)
        assert rep.class_tag.family == FunctionClass.P_PLUS_ZERO

    def test_classify_opt_out(self):
        assert report(tent(), classify=False).class_tag is None

    def test_json_dict_fields(self):
        d = report(tent()).to_json_dict()
        assert d["uncertainty"] == "3/10"
        assert d["uncertainty_float"] == 0.3
        assert Fraction(d["sigma_x2"]) == Fraction(1, 10)
        assert d["class"] == "P_plus_zero"


class TestDivergence:
    def test_boxcar_sigma_w2_is_inf(self, boxcar):
        assert sigma_w2(boxcar) == INF
        assert uncertainty(boxcar) == INF
        assert not is_finite(uncertainty(boxcar))

    def test_interior_jump_diverges(self):
        from pwuncert.poly import Polynomial

        step = PiecewisePoly.from_pieces(
            [-1, 0, 1], [Polynomial.of([1]), Polynomial.of([0, 0, 1])]
        )
        assert sigma_w2(step) == INF

    def test_json_dict_inf_fields(self, boxcar):
        d = report(boxcar).to_json_dict()
        assert d["sigma_w2"] == "inf"
        assert d["sigma_w2_float"] is None
        assert d["uncertainty_float"] is None

    def test_class_tol_restores_finiteness(self, cubic):
        assert sigma_w2(cubic) == INF
        assert is_finite(sigma_w2(cubic, class_tol=CUBIC_TOL))


class TestInvariance:
    def test_translation_shifts_alpha_only(self, quartic_bump):
        base = report(quartic_bump)
        moved = report(quartic_bump.translate("7/3"))
        assert moved.alpha == base.alpha + Fraction(7, 3)
        assert moved.sigma_x2 == base.sigma_x2
        assert moved.sigma_w2 == base.sigma_w2
        assert moved.uncertainty == base.uncertainty

    def test_scalar_multiple_changes_nothing_but_mass(self, quartic_bump):
        base = report(quartic_bump)
        scaled = report(quartic_bump * Fraction(5, 2))
        assert scaled.norm_sq == base.norm_sq * Fraction(25, 4)
        assert scaled.sigma_x2 == base.sigma_x2
        assert scaled.uncertainty == base.uncertainty

    def test_dilation_trades_variances_exactly(self, quartic_bump):
        base = report(quartic_bump)
        squeezed = report(quartic_bump.affine(1, 3, 0))  # f(3x)
        assert squeezed.sigma_x2 == base.sigma_x2 / 9
        assert squeezed.sigma_w2 == base.sigma_w2 * 9
        assert squeezed.uncertainty == base.uncertainty


class TestAtoms:
    def test_covariance_rules(self):
        params = AtomParams.of(t=2, xi=1, u=5)
        rep = atom_report(tent(), params)
        assert rep.norm_sq == Fraction(4, 3)
        assert rep.alpha == 5
        assert rep.beta_coeff == 1
        assert rep.sigma_x2 == Fraction(2, 5)
        assert rep.sigma_w2 == Fraction(3, 4)
        assert rep.uncertainty == Fraction(3, 10)

    def test_beta_float_is_2pi_xi(self):
        params = AtomParams.of(t=1, xi="5/2", u=0)
        d = atom_report(tent(), params).to_json_dict()
        assert d["beta_coeff"] == "5/2"
        assert d["beta_float"] == pytest.approx(5 * math.pi)

    def test_divergent_envelope_stays_divergent(self, boxcar):
        rep = atom_report(boxcar, AtomParams.of(t="1/2", xi=0, u=1))
        assert rep.sigma_w2 == INF

    def test_scale_must_be_positive(self):
        with pytest.raises(ValueError):
            AtomParams.of(t=0, xi=0, u=0)
        with pytest.raises(ValueError):
            AtomParams.of(t="-1/2", xi=0, u=0)


class TestGuards:
    def test_zero_function_rejected(self):
        z = PiecewisePoly.zero()
        with pytest.raises(ZeroFunctionError):
            norm_sq(z)
        with pytest.raises(ZeroFunctionError):
            alpha(z)
        with pytest.raises(ZeroFunctionError):
            sigma_x2(z)

    def test_ext_helpers(self):
        assert ext_str(Fraction(1, 3)) == "1/3"
        assert ext_str(INF) == "inf"
        assert ext_float(Fraction(1, 2)) == 0.5
        assert ext_json_float(INF) is None
        assert ext_mul(Fraction(2), INF) == INF
        with pytest.raises(ArithmeticError):
            ext_mul(Fraction(0), INF)
