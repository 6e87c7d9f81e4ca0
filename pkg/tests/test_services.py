from fractions import Fraction
import math

import pytest

from weylwalk.domain import ArithmeticMode, PjEvaluation, WeightingKind
from weylwalk.errors import InexactRootError, ModelSpecError, StepSetError, ValidationError
from weylwalk.oracle import DpMode
from weylwalk.services import parse_grid, phase_cell

from conftest import FIXED_TIME, NONCENTRAL_WEIGHTS, TABLE_WEIGHTS

SIMPLE_2D_STEPS = [[1, 0], [-1, 0], [0, 1], [0, -1]]


def simple2d_with(weights):
    return {"dimension": 2, "steps": SIMPLE_2D_STEPS, "weights": weights}


class TestModelLoader:
    def test_named_model(self, loader):
        model = loader.named("table3d")
        assert model.name == "table3d"
        assert model.weights == TABLE_WEIGHTS
        assert model.options.n_max == 80
        assert model.options.reference_gammas["169/(6pi)"] == pytest.approx(8.965738)

    def test_available_models(self, loader):
        assert loader.available() == [
            "diagonal2d",
            "noncentral2d",
            "simple1d",
            "simple1d_half",
            "simple2d",
            "simple2d_weighted",
            "table3d",
        ]

    def test_alpha_and_beta(self, loader):
        model = loader.from_dict({"dimension": 1, "steps": [[1], [-1]], "weights": {"alpha": ["2"], "beta": "3"}})
        assert model.weights == {(1,): 6, (-1,): Fraction(3, 2)}
        assert model.omega is None

    def test_per_axis_omega(self, loader):
        model = loader.from_dict(simple2d_with({"alpha": ["1/2", "7"], "omega": ["3", "5"]}))
        assert model.weights == NONCENTRAL_WEIGHTS
        assert model.omega == {(1, 0): 3, (-1, 0): 3, (0, 1): 5, (0, -1): 5}

    def test_unweighted_model(self, loader):
        model = loader.from_dict({"dimension": 1, "steps": [[1], [-1]]})
        assert model.weights is None
        assert model.dimension == 1

    @pytest.mark.parametrize(
        "weights",
        [
            {"step_weights": {"(1,0)": 1, "(-1,0)": 1, "(0,1)": 1, "(0,-1)": 1}, "alpha": ["1", "1"]},
            {"gamma": ["1"]},
            {"beta": "2"},
            {"alpha": [0.5, 1]},
            {"step_weights": {"1,0": 1}},
        ],
    )
    def test_bad_weight_blocks(self, loader, weights):
        with pytest.raises(ModelSpecError):
            loader.from_dict(simple2d_with(weights))

    def test_missing_step_weight(self, loader):
        with pytest.raises(ValidationError):
            loader.from_dict(simple2d_with({"step_weights": {"(1,0)": 1, "(-1,0)": 1, "(0,1)": 1}}))

    def test_schema_errors(self, loader):
        with pytest.raises(ModelSpecError):
            loader.from_dict({"steps": SIMPLE_2D_STEPS})

    def test_invalid_steps(self, loader):
        with pytest.raises(StepSetError):
            loader.from_dict({"dimension": 2, "steps": [[1, 0], [0, 1], [0, -1]]})

    def test_text_errors(self, loader):
        with pytest.raises(ModelSpecError):
            loader.from_text("{not json")
        with pytest.raises(ModelSpecError):
            loader.from_text("[1, 2]")

    def test_unknown_name(self, loader):
        with pytest.raises(ModelSpecError):
            loader.named("does_not_exist")


class TestGrid:
    def test_list_reused_for_every_axis(self):
        points = parse_grid("1/2,1,2", 2)
        assert len(points) == 9
        assert points[0] == (Fraction(1, 2), Fraction(1, 2))
        assert points[-1] == (2, 2)

    def test_geometric_axis(self):
        assert parse_grid("geom:1/4:2:3", 1) == [(Fraction(1, 4),), (Fraction(1, 2),), (1,)]

    def test_separate_axes(self):
        assert parse_grid("1;2", 2) == [(1, 2)]

    @pytest.mark.parametrize("grid", ["1;2;3", "geom:1:0:2", "geom:1:2", "geom:1:2:x", "0,1", "abc"])
    def test_rejected_grids(self, grid):
        with pytest.raises(ValidationError):
            parse_grid(grid, 2)

    def test_phase_cells(self):
        assert phase_cell((2, 1, Fraction(1, 2))) == (">1", "=1", "<1")


class TestClassificationService:
    def test_unweighted_is_central(self, container, loader):
        report = container.classification_service.classify(loader.named("simple2d"))
        assert report.kind is WeightingKind.CENTRAL
        assert report.alpha == (1, 1)
        assert report.beta == 1

    def test_central_weights(self, container, loader):
        report = container.classification_service.classify(loader.named("table3d"))
        assert report.kind is WeightingKind.CENTRAL
        assert report.alpha == (2, 1, Fraction(1, 4))
        assert report.beta == 4

    def test_factored_weights(self, container, loader):
        report = container.classification_service.classify(loader.named("noncentral2d"))
        assert report.kind is WeightingKind.FACTORED
        assert report.alpha == (Fraction(1, 2), 7)
        assert report.omega == {"(-1,0)": 3, "(0,-1)": 5, "(0,1)": 5, "(1,0)": 3}
        assert "central" in report.witnesses
        assert report.witnesses["symmetric"]["axis"] == 1

    def test_symmetric_weights(self, container, loader):
        model = loader.from_dict(
            {
                "dimension": 2,
                "steps": [[1, 1], [1, -1], [-1, 1], [-1, -1], [1, 0], [-1, 0]],
                "weights": {
                    "step_weights": {"(1,1)": 1, "(1,-1)": 1, "(-1,1)": 1, "(-1,-1)": 1, "(1,0)": 2, "(-1,0)": 2}
                },
            }
        )
        report = container.classification_service.classify(model)
        assert report.kind is WeightingKind.SYMMETRIC
        assert report.alpha == (1, 1)
        assert report.omega["(1,0)"] == 2
        assert report.omega["(-1,-1)"] == 1
        assert "symmetric" not in report.witnesses

    def test_irrational_roots(self, container, loader):
        model = loader.from_dict(simple2d_with({"step_weights": {"(1,0)": 2, "(-1,0)": 1, "(0,1)": 2, "(0,-1)": 1}}))
        service = container.classification_service
        report = service.classify(model)
        assert report.kind is WeightingKind.NONE
        assert not report.exact
        assert report.approximate is not None
        with pytest.raises(InexactRootError):
            service.weighting(model)
        assert service.classify(model, ArithmeticMode.APPROXIMATE).kind is WeightingKind.CENTRAL

    def test_unfactorable_weights(self, container, loader):
        model = loader.from_dict(simple2d_with({"step_weights": {"(1,0)": 2, "(-1,0)": 1, "(0,1)": 1, "(0,-1)": 1}}))
        report = container.classification_service.classify(model)
        assert report.kind is WeightingKind.NONE
        assert set(report.witnesses) == {"central", "symmetric", "factored"}


class TestAnalysisService:
    def test_table_model(self, container, loader):
        report = container.analysis_service.analyze(loader.named("table3d"))
        assert report.growth == 26
        assert report.exponent == -2
        assert (report.r, report.m) == (2, 1)
        assert report.gamma_even == pytest.approx(169 / (6 * math.pi))
        assert report.minimal_point.t == Fraction(8, 13)
        assert len(report.critical_points) == 8
        assert len(report.contributing_points) == 1
        assert report.to_formula().growth == 26

    def test_pj_choice_is_reported(self, container, loader):
        report = container.analysis_service.analyze(
            loader.named("diagonal2d"), pj_evaluation=PjEvaluation.AT_ONES
        )
        assert report.pj_evaluation is PjEvaluation.AT_ONES
        assert report.per_factor_breakdown[0].factors[0].p_value == 3

    def test_rejects_unclassifiable_weights(self, container, loader):
        model = loader.from_dict(simple2d_with({"step_weights": {"(1,0)": 2, "(-1,0)": 1, "(0,1)": 2, "(0,-1)": 1}}))
        with pytest.raises(InexactRootError):
            container.analysis_service.analyze(model)

    def test_serialises_rationals_as_strings(self, container, loader):
        payload = container.analysis_service.analyze(loader.named("table3d")).model_dump(mode="json")
        assert payload["growth"] == "26"
        assert payload["minimal_point"]["x"] == ["1", "1", "1/4"]


class TestVerificationService:
    def test_quadrant_walks(self, container, loader):
        report = container.verification_service.verify(loader.named("simple2d"), n_max=80)
        assert report.run_id == "run-1"
        assert report.generated_at == FIXED_TIME
        assert report.mode is DpMode.FLOAT
        assert report.gamma_pass
        assert report.exponent_pass
        assert report.passed
        assert report.confirmed_pj_evaluation is PjEvaluation.AT_POINT
        assert [ratio.n for ratio in report.ratios] == [77, 78, 79, 80]
        assert all(ratio.ratio == pytest.approx(1.0, rel=0.05) for ratio in report.ratios)

    def test_short_run_skips_exponent(self, container, loader):
        report = container.verification_service.verify(loader.named("simple2d"), n_max=50)
        assert report.estimated_exponent is None
        assert not report.passed
        assert any("exponent" in warning for warning in report.warnings)

    def test_evaluation_identity(self, container, loader):
        report = container.verification_service.verify(
            loader.named("simple2d_weighted"), n_max=60, check_evaluation=True
        )
        assert report.evaluation is not None
        assert report.evaluation.passed
        assert report.evaluation.n_max == 12

    def test_evaluation_needs_weights(self, container, loader):
        report = container.verification_service.verify(loader.named("simple2d"), n_max=60, check_evaluation=True)
        assert report.evaluation is None
        assert any("evaluation identity" in warning for warning in report.warnings)

    def test_excursions(self, container, loader):
        report = container.verification_service.verify(loader.named("simple1d"), n_max=200, check_excursions=True)
        assert report.excursions is not None
        assert report.excursions.expected_exponent == Fraction(-3, 2)
        assert report.excursions.passed

    def test_budget_is_enforced(self, container, loader):
        from weylwalk.errors import BudgetExceededError

        with pytest.raises(BudgetExceededError):
            container.verification_service.verify(loader.named("simple2d"), n_max=80, budget_bytes=1024)


class TestRegionService:
    def test_rows(self, container, loader):
        report = container.region_service.regions(loader.named("simple2d"), "1/2,1,2")
        rows = {row.alpha: row for row in report.rows}
        assert len(rows) == 9
        assert rows[(Fraction(1, 2), Fraction(1, 2))].exponent == -3
        assert rows[(Fraction(1, 2), Fraction(1, 2))].base == 4
        assert rows[(1, Fraction(1, 2))].exponent == -2
        assert rows[(2, 2)].base == 5
        assert rows[(2, 2)].exponent == 0
        assert rows[(2, 2)].cells == (">1", ">1")

    def test_non_grid_point(self, container, loader):
        report = container.region_service.regions(loader.named("simple2d"), "2;3")
        row = report.rows[0]
        assert row.base == Fraction(35, 6)
        assert row.gamma_even == pytest.approx(2 / 3)

    def test_declared_omega_is_kept(self, container, loader):
        model = loader.from_dict(simple2d_with({"omega": ["3", "5"]}))
        report = container.region_service.regions(model, "1/2;7")
        assert report.rows[0].base == Fraction(292, 7)

    def test_default_grid(self, container, loader):
        report = container.region_service.regions(loader.named("simple1d"))
        assert report.grid == "geom:1/4:2:5"
        assert [row.alpha for row in report.rows] == [(Fraction(1, 4),), (Fraction(1, 2),), (1,), (2,), (4,)]


class TestEnumerationService:
    def test_totals(self, container, loader):
        report = container.enumeration_service.enumerate(loader.named("simple2d"), n_max=3, mode=DpMode.EXACT)
        assert report.header == ["n", "point", "count"]
        assert [row[2] for row in report.rows] == ["1", "2", "6", "18"]

    def test_endpoints_force_exact(self, container, loader):
        report = container.enumeration_service.enumerate(loader.named("simple1d"), n_max=2, by_endpoint=True)
        assert report.mode is DpMode.EXACT
        assert report.rows[-1] == ["2", "(2)", "1"]

    def test_weighted_counts(self, container, loader):
        report = container.enumeration_service.enumerate(
            loader.named("simple1d_half"), n_max=2, mode=DpMode.EXACT
        )
        assert [row[2] for row in report.rows] == ["1", "1/2", "5/4"]
