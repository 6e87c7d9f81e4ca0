from fractions import Fraction

import pytest

from weylwalk.errors import StepSetError, ValidationError, ViolationKind, ZeroCoordinateError
from weylwalk.stepset import decomposition, drift, inventory_eval, pq_eval, reflect, validate


class TestValidate:
    def test_simple_2d_steps_are_sorted(self, simple2d):
        assert simple2d.steps == ((-1, 0), (0, -1), (0, 1), (1, 0))
        assert len(simple2d) == 4
        assert (1, 0) in simple2d

    def test_missing_reflection_is_rejected(self):
        with pytest.raises(StepSetError) as exc:
            validate(2, [[1, 0], [0, 1], [0, -1]])
        assert exc.value.kinds() == {ViolationKind.NOT_REFLECTABLE}
        assert exc.value.kind == "NotReflectable"
        violation = exc.value.violations[0]
        assert violation.step == (1, 0)
        assert violation.axis == 0

    def test_all_violations_are_collected(self):
        with pytest.raises(StepSetError) as exc:
            validate(2, [[2, 0], [1, 0], [1, 0]])
        assert exc.value.kinds() == {
            ViolationKind.COMPONENT_OUT_OF_RANGE,
            ViolationKind.DUPLICATE_STEP,
            ViolationKind.NOT_REFLECTABLE,
            ViolationKind.TRIVIAL_DIMENSION,
        }
        assert exc.value.kind == "ComponentOutOfRange"
        assert len(exc.value.detail) == 4

    def test_trivial_dimension(self):
        with pytest.raises(StepSetError) as exc:
            validate(2, [[1, 0], [-1, 0]])
        assert exc.value.kinds() == {ViolationKind.TRIVIAL_DIMENSION}
        assert exc.value.violations[0].axis == 1

    def test_empty_step_set(self):
        with pytest.raises(StepSetError) as exc:
            validate(1, [])
        assert exc.value.kinds() == {ViolationKind.EMPTY_STEP_SET}

    def test_dimension_mismatch(self):
        with pytest.raises(StepSetError) as exc:
            validate(2, [[1]])
        assert exc.value.kinds() == {ViolationKind.DIMENSION_MISMATCH}

    def test_zero_step_is_allowed(self):
        s = validate(1, [[0], [1], [-1]])
        assert s.steps == ((-1,), (0,), (1,))

    def test_dimension_must_be_positive(self):
        with pytest.raises(ValidationError):
            validate(0, [[1], [-1]])

    def test_reflect(self):
        assert reflect((1, -1, 0), 1) == (1, 1, 0)


class TestInventory:
    def test_simple_2d_values(self, simple2d):
        assert inventory_eval(simple2d, (1, 1)) == 4
        assert inventory_eval(simple2d, (Fraction(2), Fraction(1, 2))) == 5

    def test_3d_growth_point(self, simple3d):
        assert inventory_eval(simple3d, (2, 1, 1)) == Fraction(13, 2)

    def test_omega_weights_every_term(self, simple2d):
        omega = {(1, 0): 3, (-1, 0): 3, (0, 1): 5, (0, -1): 5}
        assert inventory_eval(simple2d, (1, 7), omega) == Fraction(292, 7)

    def test_zero_coordinate(self, simple2d):
        with pytest.raises(ZeroCoordinateError):
            inventory_eval(simple2d, (0, 1))

    def test_wrong_length(self, simple2d):
        with pytest.raises(ValidationError):
            inventory_eval(simple2d, (1,))


class TestDecomposition:
    def test_diagonal_model(self, diagonal2d):
        assert pq_eval(diagonal2d, 0, [2]) == (Fraction(7, 2), 0)
        assert pq_eval(diagonal2d, 1, [1]) == (2, 2)

    def test_decomposition_rebuilds_inventory(self, diagonal2d):
        x, y = Fraction(3), Fraction(1, 5)
        p, q = decomposition(diagonal2d, 1).evaluate([x])
        assert (y + 1 / y) * p + q == inventory_eval(diagonal2d, (x, y))

    def test_asymmetric_omega_is_rejected(self, simple2d):
        omega = {(1, 0): 1, (-1, 0): 1, (0, 1): 2, (0, -1): 1}
        with pytest.raises(ValidationError):
            pq_eval(simple2d, 1, [1], omega)

    def test_axis_out_of_range(self, simple2d):
        with pytest.raises(ValidationError):
            pq_eval(simple2d, 2, [1])

    def test_reflectable_sets_have_zero_drift(self, simple3d, diagonal2d):
        assert drift(simple3d) == (0, 0, 0)
        assert drift(diagonal2d) == (0, 0)

    def test_simple_3d_last_axis(self, simple3d):
        assert pq_eval(simple3d, 2, [2, 1]) == (1, Fraction(9, 2))

    def test_weighted_first_axis(self, simple2d):
        omega = {(1, 0): 3, (-1, 0): 3, (0, 1): 5, (0, -1): 5}
        assert pq_eval(simple2d, 0, [1], omega) == (3, 10)
