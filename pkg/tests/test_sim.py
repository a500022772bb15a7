import numpy as np
import pytest

from shapcond.coalitions import nontrivial_coalitions
from shapcond.errors import ConfigError, InvalidDimensionError
from shapcond.numerics import make_rng
from shapcond.shapley import ContributionMatrix, ShapleyExplanation
from shapcond.sim import (DataSpec, TrueModelSpec, eval_true_model, fit_predictive_model,
                          gen_burr_data, gen_data, gen_gaussian_data, mae_metric, mse_v_metric,
                          pair_interaction, true_contribution_matrix, true_shapley_oracle)


class TestTrueModels:
    def test_lm_no_at_origin_is_intercept(self):
        spec = TrueModelSpec("lm_no")
        assert eval_true_model(spec, np.zeros(8))[0] == pytest.approx(1.0)

    def test_interaction_g_hand_value(self):
        # g(1, 2) = 1*2 + 1*4 + 2*1 = 8
        assert pair_interaction(np.array([1.0]), np.array([2.0]))[0] == pytest.approx(8.0)

    def test_gam_all_at_origin(self):
        spec = TrueModelSpec("gam_all")
        # 1.0 + sum of the eight slope coefficients (cos(0) = 1)
        assert eval_true_model(spec, np.zeros(8))[0] == pytest.approx(0.4)

    def test_wrong_dimension_rejected(self):
        with pytest.raises(InvalidDimensionError):
            eval_true_model(TrueModelSpec("lm_no"), np.zeros(9))

    def test_truncated_low_dimensional_variant(self):
        # desk-scale configs run the designs on the leading features
        spec = TrueModelSpec("lm_more")
        x = np.array([2.0, 3.0, 1.0, -1.0])
        expect = (1.0 + 0.2 * 2.0 - 0.8 * 3.0 + 1.0 * 1.0 + 0.5 * -1.0
                  + 0.8 * 6.0 - 1.0 * -1.0)
        assert eval_true_model(spec, x)[0] == pytest.approx(expect)

    def test_lm_more_includes_two_products(self):
        spec = TrueModelSpec("lm_more")
        x = np.zeros(8)
        x[0], x[1] = 2.0, 3.0
        base = TrueModelSpec("lm_no")
        diff = eval_true_model(spec, x)[0] - eval_true_model(base, x)[0]
        assert diff == pytest.approx(0.8 * 6.0)  # gamma_1 x1 x2

    def test_gam_three_mixes_cos_and_linear(self):
        spec = TrueModelSpec("gam_three")
        x = np.full(8, 0.7)
        beta = np.array(spec.beta)
        expect = beta[0] + np.cos(0.7) * beta[1:4].sum() + 0.7 * beta[4:].sum()
        assert eval_true_model(spec, x)[0] == pytest.approx(expect)

    def test_unknown_name_rejected(self):
        with pytest.raises(ConfigError):
            TrueModelSpec("lm_everything")


class TestGaussianData:
    def test_independent_features(self):
        data = gen_gaussian_data(DataSpec(rho=0.0, n_train=1000, seed=1),
                                 TrueModelSpec("lm_no"))
        corr = np.corrcoef(data.x_train, rowvar=False)
        off = corr[~np.eye(8, dtype=bool)]
        assert np.max(np.abs(off)) < 0.11
        assert np.mean(np.abs(off)) < 0.07

    def test_ar1_decay(self):
        data = gen_gaussian_data(DataSpec(rho=0.9, n_train=1000, seed=2),
                                 TrueModelSpec("lm_no"))
        corr = np.corrcoef(data.x_train, rowvar=False)
        for j in range(7):
            assert corr[j, j + 1] == pytest.approx(0.9, abs=0.05)
        assert corr[0, 7] == pytest.approx(0.9 ** 7, abs=0.08)

    def test_seeded_reproducibility(self):
        spec = DataSpec(rho=0.5, seed=3)
        tm = TrueModelSpec("lm_more")
        a, b = gen_data(spec, tm), gen_data(spec, tm)
        assert np.array_equal(a.x_train, b.x_train)
        assert np.array_equal(a.y_test, b.y_test)

    def test_invalid_rho(self):
        with pytest.raises(ConfigError):
            DataSpec(rho=1.0)

    def test_noise_level(self):
        data = gen_gaussian_data(DataSpec(rho=0.0, n_train=4000, seed=4),
                                 TrueModelSpec("lm_no"))
        resid = data.y_train - eval_true_model(data.true_model, data.x_train)
        assert np.std(resid) == pytest.approx(1.0, abs=0.05)


class TestBurrData:
    def test_mean_correlation_kappa1(self):
        data = gen_burr_data(DataSpec(family="burr", kappa=1.0, n_train=5000, seed=5),
                             TrueModelSpec("gam_three"))
        corr = np.corrcoef(data.x_train, rowvar=False)
        mean_corr = corr[np.triu_indices(8, k=1)].mean()
        assert mean_corr == pytest.approx(0.63, abs=0.05)

    def test_mean_correlation_kappa3(self):
        data = gen_burr_data(DataSpec(family="burr", kappa=3.0, n_train=5000, seed=6),
                             TrueModelSpec("gam_three"))
        corr = np.corrcoef(data.x_train, rowvar=False)
        mean_corr = corr[np.triu_indices(8, k=1)].mean()
        assert 0.20 <= mean_corr <= 0.35

    def test_strictly_positive(self):
        data = gen_burr_data(DataSpec(family="burr", kappa=0.5, n_train=500, seed=7),
                             TrueModelSpec("lm_no"))
        assert np.all(data.x_train > 0)
        assert np.all(data.x_test > 0)

    def test_lower_kappa_more_dependence(self):
        def mean_corr(kappa, seed):
            data = gen_burr_data(DataSpec(family="burr", kappa=kappa, n_train=3000,
                                          seed=seed), TrueModelSpec("lm_no"))
            c = np.corrcoef(data.x_train, rowvar=False)
            return c[np.triu_indices(8, k=1)].mean()

        assert mean_corr(1.0, 8) > mean_corr(3.0, 8)


class TestPredictiveModels:
    def test_lm_formula_recovers_coefficients(self):
        tm = TrueModelSpec("lm_no")
        data = gen_gaussian_data(DataSpec(rho=0.3, n_train=1000, seed=9), tm)
        model = fit_predictive_model("lm_formula", data.x_train, data.y_train, tm)
        assert np.all(np.abs(model.coef - np.array(tm.beta)) < 0.1)

    def test_oracle_basis_on_gam_all(self):
        tm = TrueModelSpec("gam_all")
        data = gen_gaussian_data(DataSpec(rho=0.5, n_train=5000, n_test=1000, seed=10), tm)
        model = fit_predictive_model("oracle_basis_lm", data.x_train, data.y_train, tm)
        test_mse = np.mean((model.predict(data.x_test) - data.y_test) ** 2)
        assert test_mse <= 1.15  # approaches Var(eps) = 1

    def test_cart_predicts_finite_everywhere(self):
        tm = TrueModelSpec("gam_more")
        data = gen_gaussian_data(DataSpec(rho=0.5, n_train=300, seed=11), tm)
        model = fit_predictive_model("cart", data.x_train, data.y_train)
        wild = 10.0 * make_rng(0).standard_normal((50, 8))
        assert np.all(np.isfinite(model.predict(wild)))

    def test_unknown_kind(self):
        with pytest.raises(ConfigError):
            fit_predictive_model("boosting", np.zeros((10, 8)), np.zeros(10))


class TestTruthOracle:
    def linear_f(self, beta0, beta):
        return lambda a: beta0 + np.atleast_2d(a) @ beta

    def test_constant_model(self):
        spec = DataSpec(rho=0.5, seed=12)
        f = lambda a: np.full(np.atleast_2d(a).shape[0], 2.5)
        x_test = gen_data(spec, TrueModelSpec("lm_no")).x_test[:3]
        expl = true_shapley_oracle(f, spec, x_test, phi0=2.5, k=200, seed=0)
        assert np.allclose(expl.baseline, 2.5, atol=1e-6)
        assert np.allclose(expl.contributions, 0.0, atol=1e-6)

    def test_linear_gaussian_matches_closed_form(self):
        # antithetic pairing integrates linear functions exactly, so the
        # oracle should match the analytic contribution values to float noise
        spec = DataSpec(rho=0.5, seed=13, n_test=4)
        beta0, beta = 0.3, np.array([1.0, -0.5, 0.8, 0.2, -0.7, 0.4, 0.9, -0.3])
        f = self.linear_f(beta0, beta)
        data = gen_data(spec, TrueModelSpec("lm_no"))
        x_test = data.x_test
        phi0 = beta0  # exact E[f] for mu = 0
        vm = true_contribution_matrix(f, spec, x_test, phi0, k=50, seed=1)

        from shapcond.distributions.gaussian import GaussianConditioner
        params = spec.true_params()
        for row, coalition in enumerate(nontrivial_coalitions(8), start=1):
            cond = GaussianConditioner(params, coalition)
            s, b = coalition.members(), coalition.complement().members()
            mu_cond = cond.mu_b + (x_test[:, s] - cond.mu_s) @ cond.reg.T
            expect = beta0 + x_test[:, s] @ beta[s] + mu_cond @ beta[b]
            assert np.allclose(vm.values[row], expect, atol=1e-10)

    def test_independent_linear_phi(self):
        spec = DataSpec(rho=0.0, seed=14, n_test=5)
        beta0, beta = 1.0, np.array([0.5, -1.0, 0.3, 0.8, -0.2, 0.6, -0.4, 0.1])
        f = self.linear_f(beta0, beta)
        x_test = gen_data(spec, TrueModelSpec("lm_no")).x_test
        expl = true_shapley_oracle(f, spec, x_test, phi0=beta0, k=100, seed=2)
        expect = beta * x_test  # beta_j (x*_j - mu_j) with mu = 0
        assert np.max(np.abs(expl.contributions - expect.T)) < 1e-6

    def test_burr_oracle_runs_and_pins(self):
        spec = DataSpec(family="burr", kappa=1.0, seed=15, n_test=3)
        beta0, beta = 0.0, np.array([1.0, -0.5, 0.8, 0.2, -0.7, 0.4, 0.9, -0.3])
        f = self.linear_f(beta0, beta)
        data = gen_data(spec, TrueModelSpec("lm_no"))
        vm = true_contribution_matrix(f, spec, data.x_test[:3], phi0=0.1, k=500, seed=3)
        assert np.allclose(vm.values[0], 0.1)
        assert np.allclose(vm.values[-1], f(data.x_test[:3]))

    def test_oracle_seed_stability(self):
        tm = TrueModelSpec("gam_three")
        spec = DataSpec(rho=0.5, seed=16, n_test=5)
        data = gen_data(spec, tm)
        model = fit_predictive_model("oracle_basis_lm", data.x_train, data.y_train, tm)
        f = model.predict
        phi0 = float(np.mean(f(data.x_train)))
        a = true_shapley_oracle(f, spec, data.x_test, phi0, k=10_000, seed=100)
        b = true_shapley_oracle(f, spec, data.x_test, phi0, k=10_000, seed=200)
        overall, _ = mae_metric(a, b)
        assert overall < 0.01


class TestMetrics:
    def test_mae_identical_is_zero(self):
        phi = make_rng(17).standard_normal((9, 10))
        overall, per_obs = mae_metric(phi, phi)
        assert overall == 0.0
        assert np.all(per_obs == 0.0)

    def test_mae_single_entry(self):
        m, n = 8, 250
        a = np.zeros((m + 1, n))
        b = a.copy()
        b[3, 17] += 1.0
        overall, per_obs = mae_metric(a, b)
        assert overall == pytest.approx(1.0 / 2000.0)
        assert per_obs[17] == pytest.approx(1.0 / 8.0)

    def test_mae_hand_checked_2x2(self):
        a = np.array([[0.0, 0.0], [1.0, 2.0], [3.0, 4.0]])  # M=2, 2 observations
        b = np.array([[0.0, 0.0], [2.0, 2.0], [3.0, 0.0]])
        overall, per_obs = mae_metric(a, b)
        assert np.allclose(per_obs, [0.5, 2.0])
        assert overall == pytest.approx(1.25)

    def test_mae_shape_mismatch(self):
        with pytest.raises(ValueError):
            mae_metric(np.zeros((3, 2)), np.zeros((4, 2)))

    def test_mse_v_perfect_is_zero(self):
        m = 3
        f_values = np.array([1.0, -2.0])
        values = np.tile(f_values, (1 << m, 1))
        vm = ContributionMatrix(values=values, m=m)
        assert mse_v_metric(f_values, vm) == 0.0

    def test_mse_v_constant_offset(self):
        m = 3
        f_values = np.array([1.0, -2.0, 0.5])
        vm = ContributionMatrix(values=np.tile(f_values, (1 << m, 1)) - 1.0, m=m)
        assert mse_v_metric(f_values, vm) == pytest.approx(1.0)

    def test_mse_v_hand_checked_m2(self):
        # M=2, one observation: rows for {1} and {2} off by 1 and 3
        f_values = np.array([2.0])
        values = np.array([[0.0], [1.0], [-1.0], [2.0]])
        vm = ContributionMatrix(values=values, m=2)
        assert mse_v_metric(f_values, vm) == pytest.approx((1.0 + 9.0) / 2.0)

    def test_mse_v_shape_mismatch(self):
        with pytest.raises(ValueError):
            mse_v_metric(np.zeros(3), np.zeros((6, 2)))

    def test_explanation_input(self):
        phi = np.array([[1.0], [2.0]])
        overall, _ = mae_metric(ShapleyExplanation(phi=phi), ShapleyExplanation(phi=phi))
        assert overall == 0.0
