import numpy as np
import pytest
import scipy.stats

from shapcond.coalitions import Coalition, enumerate_coalitions
from shapcond.distributions import GaussianParams, gaussian_sample
from shapcond.distributions.gaussian import GaussianConditioner
from shapcond.numerics import make_rng, substream
from shapcond.samplers import (CtreeSampler, EmpiricalSampler, GaussianSampler,
                               IndependenceSampler, WeightedSamples, contribution_matrix,
                               ctree_draw, ctree_fit, estimate_contributions)


def ar1_sigma(m, rho):
    idx = np.arange(m)
    return rho ** np.abs(idx[:, None] - idx[None, :])


class TestWeightedSamples:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            WeightedSamples(samples=np.empty((0, 2)), weights=np.empty(0))

    def test_rejects_zero_weight_total(self):
        with pytest.raises(ValueError):
            WeightedSamples(samples=np.ones((2, 1)), weights=np.zeros(2))


class TestIndependence:
    def test_uniform_resampling(self):
        n = 40
        x = np.column_stack([np.arange(n, dtype=float), np.zeros(n)])
        sampler = IndependenceSampler(x)
        ws = sampler.draw(Coalition(0b10, 2), np.zeros(2), 50 * n, make_rng(0))
        counts = np.bincount(ws.samples[:, 0].astype(int), minlength=n)
        res = scipy.stats.chisquare(counts)
        assert res.pvalue > 0.01

    def test_single_row_training(self):
        x = np.array([[3.0, 4.0, 5.0]])
        ws = IndependenceSampler(x).draw(Coalition(0b001, 3), np.zeros(3), 10, make_rng(1))
        assert np.all(ws.samples == [4.0, 5.0])

    def test_single_unobserved_feature(self):
        x = make_rng(2).standard_normal((20, 3))
        ws = IndependenceSampler(x).draw(Coalition(0b011, 3), np.zeros(3), 15, make_rng(3))
        assert ws.samples.shape == (15, 1)
        assert set(ws.samples[:, 0]) <= set(x[:, 2])

    def test_empty_training_rejected(self):
        with pytest.raises(ValueError):
            IndependenceSampler(np.empty((0, 2)))


class TestEmpirical:
    def test_exact_match_gets_unit_weight(self):
        x = make_rng(4).standard_normal((50, 3))
        sampler = EmpiricalSampler(x, sigma=0.1, eta=0.95)
        coalition = Coalition(0b011, 3)
        order, w = sampler.weights_for(coalition, x[7])
        assert order[0] == 7
        assert w[0] == pytest.approx(1.0)

    def test_eta_one_keeps_all_rows(self):
        x = make_rng(5).standard_normal((30, 2))
        sampler = EmpiricalSampler(x, sigma=0.5, eta=1.0)
        rows, w = sampler.select(Coalition(0b01, 2), x[0])
        assert rows.size == 30

    def test_two_point_eta_rule(self):
        # weights {1, e^-2}: the top row alone holds 0.88 > 0.7 of the mass
        d = 2.0
        x = np.array([[0.0, 9.0], [d, -9.0]])
        # sample variance of the conditioned column is d^2/2, so D^2 = 2 for
        # the far row; sigma = 1/sqrt(2) turns that into w = e^-2
        sampler = EmpiricalSampler(x, sigma=1.0 / np.sqrt(2.0), eta=0.7)
        coalition = Coalition(0b01, 2)
        order, w = sampler.weights_for(coalition, np.array([0.0, 0.0]))
        assert np.allclose(w, [1.0, np.exp(-2.0)])
        rows, kept = sampler.select(coalition, np.array([0.0, 0.0]))
        assert rows.size == 1 and rows[0] == 0

    def test_all_zero_weights_falls_back_to_nearest(self):
        x = np.array([[0.0, 1.0], [0.1, 2.0], [5.0, 3.0]])
        sampler = EmpiricalSampler(x, sigma=1e-8, eta=0.95)
        rows, w = sampler.select(Coalition(0b01, 2), np.array([1000.0, 0.0]))
        assert rows.size == 1
        assert w[0] == 1.0

    def test_draw_returns_unobserved_columns(self):
        x = make_rng(6).standard_normal((40, 3))
        sampler = EmpiricalSampler(x)
        ws = sampler.draw(Coalition(0b101, 3), x[3], 250, make_rng(7))
        assert ws.samples.shape[1] == 1


class TestCtree:
    def test_independent_response_mostly_root_only(self):
        # shuffled columns kill any association; at alpha=0.05 the tree should
        # stay a single leaf for >= 95% of a fixed batch of seeds
        n, singles, reps = 300, 0, 100
        coalition = Coalition(0b0011, 4)
        for rep in range(reps):
            rng = make_rng(1000 + rep)
            x = rng.standard_normal((n, 4))
            model = ctree_fit(x, coalition)
            singles += model.n_leaves == 1
        assert singles >= 95

    def test_step_response_splits_near_zero(self):
        rng = make_rng(8)
        n = 1000
        f1 = rng.standard_normal(n)
        resp = np.where(f1 > 0.0, 5.0, -5.0)
        x = np.column_stack([f1, rng.standard_normal(n), resp + 0.01 * rng.standard_normal(n)])
        model = ctree_fit(x, Coalition(0b011, 3))
        assert not model.root.is_leaf
        assert model.root.feature == 0
        assert abs(model.root.split_value) < 0.2

    def test_small_node_is_root_only(self):
        x = make_rng(9).standard_normal((13, 3))  # < 2 * minbucket = 14
        model = ctree_fit(x, Coalition(0b001, 3))
        assert model.n_leaves == 1
        assert model.root.is_leaf

    def test_leaf_of_size_one(self):
        x = make_rng(10).standard_normal((5, 2))
        model = ctree_fit(x, Coalition(0b01, 2))  # root-only: 5 < 14
        # force a singleton pool by drawing from a model with one row
        tiny = ctree_fit(x[:1], Coalition(0b01, 2))
        ws = ctree_draw(tiny, x[:1], np.array([0.0]), 25, make_rng(11))
        assert ws.k_star == 1
        assert ws.weights[0] == 25.0

    def test_duplicates_collapse_and_weights_sum_to_k(self):
        x = make_rng(12).standard_normal((20, 3))
        model = ctree_fit(x, Coalition(0b001, 3))
        k = 500
        ws = ctree_draw(model, x, np.array([0.0]), k, make_rng(13))
        assert ws.k_star <= 20
        assert ws.weights.sum() == pytest.approx(k)

    def test_determinism(self):
        x = make_rng(14).standard_normal((200, 4))
        a = CtreeSampler(x)
        b = CtreeSampler(x)
        coalition = Coalition(0b0101, 4)
        assert a.models[coalition.bits].n_leaves == b.models[coalition.bits].n_leaves
        da = a.draw(coalition, x[0], 100, substream(3, "ctree", coalition.bits, 0))
        db = b.draw(coalition, x[0], 100, substream(3, "ctree", coalition.bits, 0))
        assert np.array_equal(da.samples, db.samples)
        assert np.array_equal(da.weights, db.weights)


class TestEstimateContributions:
    M = 4

    def setup_method(self):
        self.rng = make_rng(15)
        self.params = GaussianParams(mu=np.array([0.5, -0.5, 1.0, 0.0]),
                                     sigma=ar1_sigma(self.M, 0.6))
        self.x_train = gaussian_sample(self.params, 400, self.rng)
        self.beta0 = 0.7
        self.beta = np.array([1.0, -2.0, 0.5, 1.5])

    def f_linear(self, x):
        return self.beta0 + np.atleast_2d(x) @ self.beta

    def test_constant_model_all_samplers(self):
        const = lambda x: np.full(np.atleast_2d(x).shape[0], 3.3)
        for sampler in (IndependenceSampler(self.x_train), EmpiricalSampler(self.x_train),
                        GaussianSampler(self.x_train), CtreeSampler(self.x_train)):
            col = estimate_contributions(const, sampler, self.x_train[0], self.M,
                                         k=50, phi0=3.3, seed=1)
            assert np.allclose(col, 3.3)

    def test_pinned_rows_exact(self):
        sampler = IndependenceSampler(self.x_train)
        x_star = self.x_train[1]
        phi0 = 0.123
        col = estimate_contributions(self.f_linear, sampler, x_star, self.M,
                                     k=10, phi0=phi0, seed=2)
        assert col[0] == phi0
        assert col[-1] == pytest.approx(float(self.f_linear(x_star[None, :])[0]), abs=0)

    def test_gaussian_sampler_matches_closed_form(self):
        # exact parameters + linear model: v(S) = b0 + b_S x*_S + b_Sbar mu_{Sbar|S}
        sampler = GaussianSampler(self.x_train, params=self.params)
        x_star = np.array([1.0, 0.0, -1.0, 0.5])
        k = 10_000
        col = estimate_contributions(self.f_linear, sampler, x_star, self.M,
                                     k=k, phi0=0.0, seed=3)
        coalitions = enumerate_coalitions(self.M)
        for row, coalition in enumerate(coalitions[1:-1], start=1):
            cond = GaussianConditioner(self.params, coalition)
            s, b = coalition.members(), coalition.complement().members()
            expect = self.beta0 + self.beta[s] @ x_star[s] + self.beta[b] @ cond.mean(x_star[s])
            cond_sd = np.sqrt(self.beta[b] @ cond.cond_sigma @ self.beta[b])
            assert abs(col[row] - expect) <= 3.5 * cond_sd / np.sqrt(k) + 1e-9

    def test_independence_sampler_matches_closed_form(self):
        sampler = IndependenceSampler(self.x_train)
        x_star = np.array([1.0, 0.0, -1.0, 0.5])
        k = 20_000
        train_mean = self.x_train.mean(axis=0)
        col = estimate_contributions(self.f_linear, sampler, x_star, self.M,
                                     k=k, phi0=0.0, seed=4)
        coalitions = enumerate_coalitions(self.M)
        for row, coalition in enumerate(coalitions[1:-1], start=1):
            s, b = coalition.members(), coalition.complement().members()
            expect = self.beta0 + self.beta[s] @ x_star[s] + self.beta[b] @ train_mean[b]
            sd = np.sqrt(self.beta[b] @ np.cov(self.x_train[:, b], rowvar=False,
                                               ddof=1).reshape(b.size, b.size) @ self.beta[b])
            assert abs(col[row] - expect) <= 3.5 * sd / np.sqrt(k) + 1e-9

    def test_empirical_degenerates_to_independence(self):
        # sigma huge + eta = 1: every training row enters with weight ~1,
        # so the estimate equals the plain training average
        sampler = EmpiricalSampler(self.x_train, sigma=1e6, eta=1.0)
        x_star = self.x_train[5]
        col = estimate_contributions(self.f_linear, sampler, x_star, self.M,
                                     k=0, phi0=0.0, seed=5)
        coalitions = enumerate_coalitions(self.M)
        for row, coalition in enumerate(coalitions[1:-1], start=1):
            s, b = coalition.members(), coalition.complement().members()
            expect = (self.beta0 + self.beta[s] @ x_star[s]
                      + self.beta[b] @ self.x_train[:, b].mean(axis=0))
            assert col[row] == pytest.approx(expect, abs=1e-6)

    def test_matrix_shape_and_pins(self):
        sampler = GaussianSampler(self.x_train)
        x_test = self.x_train[:3]
        vm = contribution_matrix(self.f_linear, sampler, x_test, self.M,
                                 k=100, phi0=1.5, seed=6)
        assert vm.values.shape == (2 ** self.M, 3)
        assert np.allclose(vm.values[0], 1.5)
        assert np.allclose(vm.values[-1], self.f_linear(x_test))

    def test_nonfinite_model_propagates(self):
        bad = lambda x: np.full(np.atleast_2d(x).shape[0], np.nan)
        sampler = IndependenceSampler(self.x_train)
        with pytest.raises(Exception, match="coalition"):
            estimate_contributions(bad, sampler, self.x_train[0], self.M,
                                   k=10, phi0=0.0, seed=7)
