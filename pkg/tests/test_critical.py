from fractions import Fraction

from weylwalk.critical import contributing_points, enumerate_critical_points, minimal_point, sign_patterns
from weylwalk.domain import ParitySign

HALF = Fraction(1, 2)


class TestSignPatterns:
    def test_counts_and_order(self):
        patterns = sign_patterns(2)
        assert len(patterns) == 4
        assert patterns[0] == (1, 1)
        assert patterns[1] == (-1, 1)
        assert set(patterns) == {(1, 1), (-1, 1), (1, -1), (-1, -1)}


class TestCriticalPoints:
    def test_one_dimensional_points(self, simple1d):
        points = enumerate_critical_points(simple1d, [HALF])
        assert [point.x for point in points] == [(HALF,), (-HALF,)]
        assert [point.t for point in points] == [1, 1]
        assert [point.s_value for point in points] == [2, -2]

    def test_vanishing_inventory_has_no_t(self, simple2d):
        points = {point.signs: point for point in enumerate_critical_points(simple2d, [1, 1])}
        assert points[(1, -1)].t is None
        assert points[(1, 1)].t == Fraction(1, 4)

    def test_minimal_point_3d(self, simple3d):
        point = minimal_point(simple3d, [2, 1, Fraction(1, 4)])
        assert point.x == (1, 1, Fraction(1, 4))
        assert point.t == Fraction(8, 13)


class TestContributingPoints:
    def test_unweighted_has_single_point(self, simple2d):
        contributing = contributing_points(simple2d, [1, 1])
        assert contributing.s_plus == 4
        assert [point.signs for point in contributing.points] == [(1, 1)]
        assert contributing.points[0].parity is ParitySign.ALWAYS_PLUS

    def test_small_alpha_adds_alternating_point(self, simple1d):
        contributing = contributing_points(simple1d, [HALF])
        parities = {point.signs: point.parity for point in contributing.points}
        assert parities == {(1,): ParitySign.ALWAYS_PLUS, (-1,): ParitySign.ALTERNATING}

    def test_flipped_point_below_s_plus_is_dropped(self, simple3d):
        contributing = contributing_points(simple3d, [2, 1, Fraction(1, 4)])
        assert contributing.s_plus == Fraction(13, 2)
        assert [point.signs for point in contributing.points] == [(1, 1, 1)]

    def test_diagonal_model_flips_sign(self, diagonal2d):
        contributing = contributing_points(diagonal2d, [HALF, 2])
        values = {point.signs: point.s_value for point in contributing.points}
        assert values == {(1, 1): 7, (-1, 1): -7}

    def test_omega_enters_s_plus(self, simple2d):
        omega = {(1, 0): 3, (-1, 0): 3, (0, 1): 5, (0, -1): 5}
        contributing = contributing_points(simple2d, [HALF, 7], omega)
        assert contributing.s_plus == Fraction(292, 7)
        assert len(contributing.points) == 1
