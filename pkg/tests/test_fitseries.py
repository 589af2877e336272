import json
import math

import numpy as np
import pytest

from finwell import (
    DEFAULT_GRID,
    DomainError,
    FitCoefficients,
    FitGrid,
    PAPER_FIT,
    SingularSystem,
    dump_coefficients,
    energy_ratio,
    eval_fit,
    fit_inverse_poly,
    load_coefficients,
    refit,
    sample_energies,
)

# frozen from the bisection oracle
RATIO_N2 = 0.26515626705456863

PUBLISHED_C = (-0.000618, 0.018006, 2.259278, -3.678692, 2.908830, -0.960535)
PUBLISHED_CRITICAL_RATIO = 2.476601


class TestFitGrid:
    def test_default(self):
        assert DEFAULT_GRID.n_start == 1.0
        assert DEFAULT_GRID.n_stop == 10.0
        assert DEFAULT_GRID.n_count >= 12

    @pytest.mark.parametrize(
        "start,stop,count",
        [(0.5, 10.0, 20), (1.0, 1.0, 20), (2.0, 1.0, 20), (1.0, 10.0, 11)],
    )
    def test_invalid(self, start, stop, count):
        with pytest.raises(DomainError):
            FitGrid(start, stop, count)


class TestSampleEnergies:
    def test_grid_construction(self):
        pairs = sample_energies(FitGrid(1.0, 10.0, 91))
        assert len(pairs) == 91
        assert pairs[0][0] == 1.0
        assert pairs[-1][0] == 10.0

    def test_ratios_bounded(self):
        pairs = sample_energies(FitGrid(1.0, 10.0, 19))
        assert all(0.0 < r < 1.0 for _, r in pairs)

    def test_value_at_n2(self):
        pairs = sample_energies(FitGrid(1.0, 10.0, 91))
        n, ratio = pairs[10]
        assert n == pytest.approx(2.0, abs=1e-12)
        assert ratio == pytest.approx(RATIO_N2, rel=1e-10)


class TestFitInversePoly:
    def test_exact_model_recovery_paper(self):
        ns = DEFAULT_GRID.points()
        points = [(float(n), eval_fit(PAPER_FIT, float(n))) for n in ns]
        fitted = fit_inverse_poly(points)
        for got, want in zip(fitted.c, PUBLISHED_C):
            assert got == pytest.approx(want, abs=1e-9)
        assert fitted.sigma < 1e-12

    def test_exact_model_recovery_random(self):
        rng = np.random.default_rng(101)
        ns = np.linspace(1.0, 10.0, 25)
        for _ in range(100):
            c = tuple(rng.uniform(-10.0, 10.0, 6))
            synthetic = FitCoefficients(c=c, sigma=0.0, source="refit")
            points = [(float(n), eval_fit(synthetic, float(n))) for n in ns]
            fitted = fit_inverse_poly(points)
            for got, want in zip(fitted.c, c):
                assert got == pytest.approx(want, abs=1e-9)

    def test_default_refit_sigma(self):
        fitted = refit()
        assert fitted.sigma <= 1e-5
        assert fitted.source == "refit"
        assert fitted.grid == DEFAULT_GRID

    def test_default_refit_c2_near_published(self):
        fitted = refit()
        assert abs(fitted.c[2] - PUBLISHED_C[2]) / abs(PUBLISHED_C[2]) < 0.15

    def test_residuals_bounded_by_sigma(self):
        fitted = refit()
        worst = max(
            abs(eval_fit(fitted, n) - ratio)
            for n, ratio in sample_energies(DEFAULT_GRID)
        )
        assert worst <= 10 * fitted.sigma

    def test_critical_ratio_grid_insensitive(self):
        grids = [FitGrid(1.0, 10.0, 12), FitGrid(1.25, 9.5, 12), FitGrid(1.5, 10.0, 35)]
        ratios = [-7.5 * f.c[5] / f.c[4] for f in map(refit, grids)]
        for r in ratios:
            assert abs(r - PUBLISHED_CRITICAL_RATIO) / PUBLISHED_CRITICAL_RATIO < 0.10
        for r1 in ratios:
            for r2 in ratios:
                assert abs(r1 - r2) / abs(r2) < 0.10

    def test_too_few_points(self):
        points = [(float(n), 0.5) for n in range(1, 12)]
        with pytest.raises(DomainError):
            fit_inverse_poly(points)

    def test_duplicate_points(self):
        points = [(1.0 + 0.5 * k, 0.5) for k in range(12)]
        points[3] = points[2]
        with pytest.raises(DomainError):
            fit_inverse_poly(points)

    def test_singular_system(self):
        # twelve numerically coincident abscissae: rank collapses
        points = [(1.0 + k * 1e-9, 0.5 + k * 1e-9) for k in range(12)]
        with pytest.raises(SingularSystem):
            fit_inverse_poly(points)


class TestEvalFit:
    def test_paper_at_n2_by_hand(self):
        c = PUBLISHED_C
        by_hand = c[0] + c[1] / 2 + c[2] / 4 + c[3] / 8 + c[4] / 16 + c[5] / 32
        assert eval_fit(PAPER_FIT, 2.0) == pytest.approx(by_hand, rel=1e-15)
        assert eval_fit(PAPER_FIT, 2.0) == pytest.approx(0.265153, abs=1e-6)

    def test_constant_series(self):
        coeffs = FitCoefficients(c=(1.0, 0, 0, 0, 0, 0), sigma=0.0, source="refit")
        for n in (0.3, 1.0, 7.5):
            assert eval_fit(coeffs, n) == 1.0

    def test_paper_close_to_exact_at_n2(self):
        assert abs(eval_fit(PAPER_FIT, 2.0) - energy_ratio(2.0)) <= 1e-4

    @pytest.mark.parametrize("n", [0.0, -1.0])
    def test_nonpositive_strength(self, n):
        with pytest.raises(DomainError):
            eval_fit(PAPER_FIT, n)


class TestCoefficientsJson:
    def test_paper_set_values(self):
        assert PAPER_FIT.c == PUBLISHED_C
        assert PAPER_FIT.sigma == 2.2e-6
        assert PAPER_FIT.source == "paper"
        assert PAPER_FIT.grid is None

    def test_dict_roundtrip(self):
        fitted = refit()
        again = FitCoefficients.from_dict(fitted.to_dict())
        assert again == fitted

    def test_document_shape(self):
        doc = PAPER_FIT.to_dict()
        assert set(doc) == {"c", "sigma", "source", "grid"}
        assert len(doc["c"]) == 6
        assert doc["grid"] is None

    def test_file_roundtrip(self, tmp_path):
        path = tmp_path / "coeffs.json"
        fitted = refit()
        dump_coefficients(fitted, str(path))
        assert load_coefficients(str(path)) == fitted
        doc = json.loads(path.read_text())
        assert doc["grid"] == {"n_start": 1.0, "n_stop": 10.0, "n_count": 13}

    def test_from_dict_rejects_wrong_length(self):
        with pytest.raises(DomainError):
            FitCoefficients.from_dict({"c": [1, 2, 3], "sigma": 0.0, "source": "refit"})
