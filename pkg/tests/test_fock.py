"""Tests for the truncated-Fock numerical oracle: dense representation,
safe-block fitting, engine cross-validation, coherent-state residuals,
and the four-body verification report."""

import math

import numpy as np
import pytest

from jpocoupler import fock
from jpocoupler.algebra import GradedCoefficient, OperatorExpr, monomial


class TestRepresent:
    def test_ladder_matrix_elements(self):
        config = fock.FockConfig(levels_per_mode=4, active_modes=(0,),
                                 safe_occupation=2)
        a = fock.represent(OperatorExpr.annihilation(0), {}, config)
        expected = np.diag(np.sqrt([1.0, 2.0, 3.0]), k=1)
        assert np.allclose(a, expected, atol=1e-15)
        n = fock.represent(OperatorExpr.number_op(0), {}, config)
        assert np.allclose(n, np.diag([0.0, 1.0, 2.0, 3.0]), atol=1e-15)

    def test_symbol_values_and_grades_enter_linearly(self):
        config = fock.FockConfig(levels_per_mode=4, active_modes=(0,),
                                 safe_occupation=2)
        expr = OperatorExpr.number_op(0).scale(
            GradedCoefficient.sym("K").mul(GradedCoefficient.g_power(0, 1))
        )
        m = fock.represent(expr, {"K": 2.0}, config, g_prime=(0.0, 0.5))
        assert m[1, 1] == pytest.approx(1.0)

    def test_missing_symbol_is_typed(self):
        config = fock.FockConfig(levels_per_mode=4, active_modes=(0,),
                                 safe_occupation=2)
        expr = OperatorExpr.number_op(0).scale(GradedCoefficient.sym("K"))
        with pytest.raises(fock.MissingParameterError):
            fock.represent(expr, {}, config)

    def test_inactive_mode_use_is_typed(self):
        config = fock.FockConfig(levels_per_mode=4, active_modes=(0, 1),
                                 safe_occupation=2)
        with pytest.raises(fock.FockError):
            fock.represent(OperatorExpr.annihilation(5), {}, config)

    def test_config_validation(self):
        with pytest.raises(fock.FockError):
            fock.FockConfig(levels_per_mode=2, active_modes=(0,))


class TestEngineCrossValidation:
    def test_dense_matrix_oracle_agrees(self):
        report = fock.verify_symbolic_engine(seed=20260815, trials=40)
        assert report.trials == 40
        assert report.failures == ()
        assert report.max_multiply_deviation < 1e-12
        assert report.max_commutator_deviation < 1e-12

    def test_deterministic_for_fixed_seed(self):
        a = fock.verify_symbolic_engine(seed=7, trials=10)
        b = fock.verify_symbolic_engine(seed=7, trials=10)
        assert a == b


class TestCoherentResidual:
    def test_residual_vanishes_at_matched_amplitude(self):
        assert fock.coherent_residual_check(1.0, 25) < 1e-8
        assert fock.coherent_residual_check(4.0, 40) < 1e-8

    def test_insufficient_cutoff_is_typed(self):
        with pytest.raises(fock.TruncationError):
            fock.coherent_residual_check(4.0, 12)


class TestFourBodyFit:
    def test_fitted_channel_equals_exact_rotation_formula(self):
        # The generator acts as an exact rotation on the truncated
        # space, so the fitted channel coefficient (in units of the
        # coupler self-Kerr) is sin(2 g')^4 / 8 exactly.
        config = fock.FockConfig(levels_per_mode=4,
                                 active_modes=fock.FIVE_MODES)
        for g in (0.3, 0.15):
            fitted, residual = fock.fitted_four_body(g, config)
            assert fitted == pytest.approx(math.sin(2 * g) ** 4 / 8.0,
                                           rel=1e-10)
            assert residual < 1e-12

    def test_low_occupation_block_is_truncation_exact(self):
        # the fit is identical at d=4 and d=5: the safe block never sees
        # the truncation edge
        c4 = fock.FockConfig(levels_per_mode=4,
                             active_modes=fock.FIVE_MODES)
        c5 = fock.FockConfig(levels_per_mode=5,
                             active_modes=fock.FIVE_MODES)
        f4, _ = fock.fitted_four_body(0.3, c4)
        f5, _ = fock.fitted_four_body(0.3, c5)
        assert f4 == pytest.approx(f5, rel=1e-12)


class TestFourBodyReport:
    def test_report_at_headline_point(self, fock_run):
        report, _elapsed = fock_run
        assert report.g_prime_minus == pytest.approx(0.28067345110270003,
                                                     rel=1e-10)
        assert abs(report.relative_deviation) < 0.35
        # the deviation is exactly the quartic rotation correction
        g = report.g_prime_minus
        predicted = math.sin(2 * g) ** 4 / (2 * g) ** 4 - 1.0
        assert report.relative_deviation == pytest.approx(predicted,
                                                          rel=1e-6)
        assert report.fitted_gamma4 == pytest.approx(
            report.analytic_gamma4 * (1.0 + report.relative_deviation),
            rel=1e-12,
        )
        assert report.fit_residual < 1e-10
        assert report.d_convergence_shift < 1e-10

    def test_deviation_scales_quadratically_in_coupling(self, fock_run):
        report, _elapsed = fock_run
        assert len(report.scaling_exponents) == 2
        for exponent in report.scaling_exponents:
            assert exponent == pytest.approx(2.0, abs=0.3)
        # halving C roughly halves g'
        g0 = report.g_prime_minus
        g1, g2 = report.scaling_g_primes[-2:]
        assert g1 == pytest.approx(g0 / 2.0, rel=0.05)
        assert g2 == pytest.approx(g0 / 4.0, rel=0.05)

    def test_out_of_regime_point_is_typed(self):
        import warnings

        from jpocoupler import circuit

        with warnings.catch_warnings():
            warnings.simplefilter("ignore",
                                  circuit.PerturbativeRegimeWarning)
            params = circuit.make_params(
                C_J=500e-15, C=0.5e-15, C_g=100e-15,
                omega=2.0 * math.pi * 10e9,
                Omega=2.0 * math.pi * 2e6,
            )
            with pytest.raises(fock.ValidationError):
                fock.verify_four_body(params)
