from fractions import Fraction

import pytest

from weylwalk.domain import ArithmeticMode
from weylwalk.errors import (
    InexactRootError,
    NonPositiveWeightError,
    NotCentralError,
    NotFactorableError,
    NotSymmetricError,
    ValidationError,
)
from weylwalk.weighting import (
    build_weights,
    classify_central,
    classify_symmetric,
    exact_sqrt,
    factor_weighting,
    weight_profile,
    weighted_drift,
)

from conftest import NONCENTRAL_WEIGHTS, TABLE_WEIGHTS

IRRATIONAL_CENTRAL = {(1, 0): Fraction(2), (-1, 0): Fraction(1), (0, 1): Fraction(2), (0, -1): Fraction(1)}


class TestCentral:
    def test_table_weights(self, simple3d):
        weighting = classify_central(simple3d, TABLE_WEIGHTS)
        assert weighting.alpha == (2, 1, Fraction(1, 4))
        assert weighting.beta == 4
        assert weighting.exact

    def test_build_weights_round_trip(self, simple3d):
        rebuilt = build_weights(simple3d, (2, 1, Fraction(1, 4)), Fraction(4))
        assert rebuilt == TABLE_WEIGHTS

    def test_non_central_has_witness(self, simple2d):
        with pytest.raises(NotCentralError) as exc:
            classify_central(simple2d, NONCENTRAL_WEIGHTS)
        assert "beta_squared" in exc.value.detail

    def test_irrational_roots_in_exact_mode(self, simple2d):
        with pytest.raises(InexactRootError) as exc:
            classify_central(simple2d, IRRATIONAL_CENTRAL)
        assert exc.value.approximate is not None
        assert not exc.value.approximate.exact

    def test_irrational_roots_in_approximate_mode(self, simple2d):
        weighting = classify_central(simple2d, IRRATIONAL_CENTRAL, ArithmeticMode.APPROXIMATE)
        assert not weighting.exact
        assert float(weighting.alpha[0]) == pytest.approx(2**0.5)
        assert float(weighting.beta) == pytest.approx(2**0.5)

    def test_non_positive_weight(self, simple2d):
        weights = dict(IRRATIONAL_CENTRAL)
        weights[(0, 1)] = Fraction(0)
        with pytest.raises(NonPositiveWeightError):
            classify_central(simple2d, weights)

    def test_missing_step(self, simple2d):
        weights = dict(IRRATIONAL_CENTRAL)
        del weights[(0, 1)]
        with pytest.raises(ValidationError):
            classify_central(simple2d, weights)

    def test_alpha_ratio_disagreement(self, diagonal2d):
        weights = build_weights(diagonal2d, (Fraction(1, 2), Fraction(2)))
        weights[(1, 0)] = Fraction(1)
        with pytest.raises(NotCentralError) as exc:
            classify_central(diagonal2d, weights)
        assert exc.value.detail["axis"] == 0


class TestFactored:
    def test_non_central_example(self, simple2d):
        factored = factor_weighting(simple2d, NONCENTRAL_WEIGHTS)
        assert factored.alpha == (Fraction(1, 2), 7)
        assert factored.omega.weights == {(1, 0): 3, (-1, 0): 3, (0, 1): 5, (0, -1): 5}
        assert factored.exact

    def test_irrational_alpha_in_exact_mode(self, simple2d):
        weights = {(1, 0): Fraction(2), (-1, 0): Fraction(1), (0, 1): Fraction(1), (0, -1): Fraction(1)}
        with pytest.raises(NotFactorableError) as exc:
            factor_weighting(simple2d, weights)
        assert exc.value.kind == "NotFactorable(exact)"
        assert exc.value.approximate is not None

    def test_rebuilds_weights(self, simple2d):
        factored = factor_weighting(simple2d, NONCENTRAL_WEIGHTS)
        assert build_weights(simple2d, factored.alpha, omega=factored.omega.weights) == NONCENTRAL_WEIGHTS


class TestSymmetric:
    def test_reflection_invariant_weights(self, simple2d):
        weights = {(1, 0): Fraction(3), (-1, 0): Fraction(3), (0, 1): Fraction(5), (0, -1): Fraction(5)}
        assert classify_symmetric(simple2d, weights).weights == weights

    def test_asymmetric_weights(self, simple2d):
        with pytest.raises(NotSymmetricError) as exc:
            classify_symmetric(simple2d, NONCENTRAL_WEIGHTS)
        assert exc.value.detail["reflection"] == "(0,-1)"


class TestProfile:
    def test_3d_profile(self, simple3d):
        profile = weight_profile(simple3d, (2, 1, Fraction(1, 4)))
        assert profile.alpha_plus == (2, 1, 1)
        assert profile.alpha_minus == (1, 1, Fraction(1, 4))
        assert (profile.r, profile.m) == (2, 1)
        assert profile.t_minimal == Fraction(8, 13)

    def test_weighted_drift(self, simple2d):
        assert weighted_drift(simple2d, (2, Fraction(1, 2))) == (Fraction(3, 2), Fraction(-3, 2))

    def test_exact_sqrt(self):
        assert exact_sqrt(Fraction(9, 4)) == Fraction(3, 2)
        assert exact_sqrt(Fraction(2)) is None
        assert exact_sqrt(Fraction(-1)) is None
