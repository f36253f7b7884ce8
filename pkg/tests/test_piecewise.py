import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pwuncert.piecewise import (
    FunctionClass,
    JumpDiscontinuityError,
    PiecewisePoly,
    SupportError,
    tent,
)
from pwuncert.poly import Polynomial

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def piecewise_functions(draw):
    """Small random piecewise polynomials (possibly discontinuous)."""
    n_pieces = draw(st.integers(1, 3))
    bps = sorted(draw(st.sets(rationals, min_size=n_pieces + 1,
                              max_size=n_pieces + 1)))
    pieces = [
        Polynomial.of(draw(st.lists(rationals, max_size=3)))
        for _ in range(n_pieces)
    ]
    return PiecewisePoly.from_pieces(bps, pieces)


class TestConstruction:
    def test_tent_layout(self):
        f = tent()
        assert f.support == (Fraction(-1), Fraction(1))
        assert len(f.pieces) == 2

    def test_merges_identical_adjacent_pieces(self):
        p = Polynomial.of([1, 1])
        f = PiecewisePoly.from_pieces([0, 1, 2], [p, p])
        assert len(f.pieces) == 1
        assert f.support == (Fraction(0), Fraction(2))

    def test_trims_zero_edges(self):
        p = Polynomial.of([1])
        f = PiecewisePoly.from_pieces(
            [-2, -1, 1, 2], [Polynomial.of([]), p, Polynomial.of([])]
        )
        assert f.support == (Fraction(-1), Fraction(1))

    def test_all_zero_collapses_to_canonical_zero(self):
        f = PiecewisePoly.from_pieces([0, 5], [Polynomial.of([])])
        assert f.is_zero()
        assert f == PiecewisePoly.zero()

    def test_rejects_bad_layouts(self):
        with pytest.raises(SupportError):
            PiecewisePoly.from_pieces([0, 1], [Polynomial.of([1]), Polynomial.of([2])])
        with pytest.raises(SupportError):
            PiecewisePoly.from_pieces([1, 0], [Polynomial.of([1])])

    def test_hashable_and_structurally_equal(self):
        assert len({tent(), tent()}) == 1


class TestEvaluation:
    def test_tent_values(self):
        f = tent()
        assert f(Fraction(-1, 2)) == Fraction(1, 2)
        assert f(0) == 1
        assert f("3/4") == Fraction(1, 4)

    def test_outside_support_is_zero(self):
        f = tent()
        assert f(2) == 0
        assert f(-100) == 0

    def test_final_breakpoint_takes_last_piece(self):
        f = tent()
        assert f(1) == 0
        step = PiecewisePoly.from_pieces(
            [0, 1, 2], [Polynomial.of([1]), Polynomial.of([5])]
        )
        assert step(1) == 5   # interior knots belong to the right piece
        assert step(2) == 5   # the right endpoint belongs to the last piece

    def test_boundary_values_and_interior_jumps(self):
        step = PiecewisePoly.from_pieces(
            [0, 1, 2], [Polynomial.of([1]), Polynomial.of([5])]
        )
        assert step.boundary_values() == (Fraction(1), Fraction(5))
        assert step.interior_jumps() == [(Fraction(1), Fraction(4))]
        assert tent().interior_jumps() == []


class TestAlgebra:
    @given(piecewise_functions(), piecewise_functions(), rationals)
    @settings(max_examples=60, deadline=None)
    def test_add_sub_match_pointwise(self, f, g, x):
        assert (f + g)(x) == f(x) + g(x)
        assert (f - g)(x) == f(x) - g(x)
        assert (-f)(x) == -f(x)

    @given(piecewise_functions(), piecewise_functions(), rationals)
    @settings(max_examples=60, deadline=None)
    def test_product_matches_pointwise_inside_supports(self, f, g, x):
        h = f * g
        lo_f, hi_f = f.support
        lo_g, hi_g = g.support
        # the product is truncated to the support intersection, where the
        # half-open piece convention makes it pointwise exact
        if max(lo_f, lo_g) <= x < min(hi_f, hi_g):
            assert h(x) == f(x) * g(x)

    def test_scalar_multiplication(self):
        f = tent() * Fraction(3, 2)
        assert f(0) == Fraction(3, 2)
        assert (tent() * 0).is_zero()
        assert (2 * tent())(0) == 2


class TestTransforms:
    def test_affine_matches_pointwise(self):
        f = tent().affine(2, 3, 1)  # 2 * tent(3x - 1)
        for x in (Fraction(1, 3), Fraction(1, 2), Fraction(0)):
            assert f(x) == 2 * tent()(3 * x - 1)

    def test_affine_negative_gamma_reverses(self):
        f = tent().affine(1, -2, "1/2")  # tent(-2x - 1/2)
        for x in (Fraction(-3, 4), Fraction(0), Fraction(1, 4)):
            assert f(x) == tent()(-2 * x - Fraction(1, 2))

    def test_affine_rejects_zero_gamma(self):
        with pytest.raises(ValueError):
            tent().affine(1, 0, 0)

    def test_affine_zero_lam_gives_zero(self):
        assert tent().affine(0, 1, 0).is_zero()

    def test_translate_and_reflect(self):
        g = tent().translate(5)
        assert g.support == (Fraction(4), Fraction(6))
        assert g(Fraction(9, 2)) == Fraction(1, 2)
        r = g.reflect(0)
        assert r.support == (Fraction(-6), Fraction(-4))
        assert r.reflect(0) == g

    def test_restrict_clips_and_zero_extends(self):
        f = tent().restrict("-1/2", 5)
        assert f.support == (Fraction(-1, 2), Fraction(1))
        assert f(Fraction(-3, 4)) == 0
        assert f(Fraction(1, 2)) == Fraction(1, 2)

    def test_restrict_empty_overlap_gives_zero(self):
        assert tent().restrict(3, 4).is_zero()

    def test_restrict_rejects_empty_window(self):
        with pytest.raises(SupportError):
            tent().restrict(1, 1)


class TestCalculus:
    def test_tent_derivative(self):
        d = tent().derivative()
        assert d(Fraction(-1, 2)) == 1
        assert d(Fraction(1, 2)) == -1

    def test_derivative_rejects_interior_jumps(self):
        step = PiecewisePoly.from_pieces(
            [0, 1, 2], [Polynomial.of([1]), Polynomial.of([5])]
        )
        with pytest.raises(JumpDiscontinuityError):
            step.derivative()
        assert step._formal_derivative().is_zero()

    def test_boundary_jumps_do_not_block_derivative(self, boxcar):
        # boundary deltas are the frequency layer's concern, not this one's
        assert boxcar.derivative().is_zero()

    def test_tent_moments(self):
        f = tent()
        assert f.moment(0) == 1
        assert f.moment(0, squared=True) == Fraction(2, 3)
        assert f.moment(1, squared=True) == 0
        assert f.moment(2, squared=True) == Fraction(1, 15)

    def test_moment_rejects_negative_order(self):
        with pytest.raises(ValueError):
            tent().moment(-1)

    @given(piecewise_functions())
    @settings(max_examples=40, deadline=None)
    def test_squared_moments_are_nonnegative(self, f):
        assert f.moment(0, squared=True) >= 0
        assert f.moment(2, squared=True) >= 0


class TestClassification:
    def test_nested_families(self, boxcar):
        assert tent().classify().family == FunctionClass.P_PLUS_ZERO
        assert boxcar.classify().family == FunctionClass.F_PLUS_SUPP
        skew = PiecewisePoly.single(0, 1, Polynomial.of([0, 0, 1, -1]))
        assert skew.classify().family == FunctionClass.F_PLUS_ZERO
        signed = PiecewisePoly.single(-1, 1, Polynomial.of([0, 1]))
        assert signed.classify().family == FunctionClass.F_SUPP
        step = PiecewisePoly.from_pieces(
            [0, 1, 2], [Polynomial.of([1]), Polynomial.of([2])]
        )
        assert step.classify().family == FunctionClass.NONE

    def test_tolerance_admits_decimal_roundoff(self, cubic):
        assert cubic.classify().family == FunctionClass.F_SUPP
        assert cubic.classify(1e-9).family == FunctionClass.F_PLUS_ZERO


class TestSerialization:
    def test_json_round_trip(self, cubic):
        for f in (tent(), cubic):
            assert PiecewisePoly.from_json(json.dumps(f.to_json_dict())) == f

    def test_descriptor_missing_field(self):
        with pytest.raises(SupportError):
            PiecewisePoly.from_json('{"breakpoints": ["0", "1"]}')

    def test_descriptor_bad_rational(self):
        with pytest.raises(ValueError):
            PiecewisePoly.from_json(
                '{"breakpoints": ["0", "x"], "pieces": [["1"]]}'
            )
