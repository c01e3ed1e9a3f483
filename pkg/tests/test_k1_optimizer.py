import math

import numpy as np
import pytest

from tvbounds.closed_bounds import corollary_k1_tilde, theta_star
from tvbounds.components.optimizers import (
    ClosedFormSearch,
    CommonAlphaSearch,
    CubicCoeffs,
    K1Variant,
    OptimizerConfig,
    ThetaOnlySearch,
    ThreeParamSearch,
    cubic_real_roots,
    g_lambda,
    get_search,
    h_lambda,
    k1_objective,
    optimize_k1,
    x_eval,
    x_extrema,
)
from tvbounds.distributions import ProbVector
from tvbounds.errors import InfeasibleParamsError, InvalidParameterError
from tvbounds.stein_core import SteinParams, analytic_quotient_bound, chen_stein_quotient


def _random_coeffs(rng: np.random.Generator) -> CubicCoeffs:
    lam = rng.uniform(0.05, 30.0)
    theta = math.exp(rng.uniform(math.log(0.1), math.log(300.0)))
    spread = 3.0 * math.sqrt(lam) + 3.0
    return CubicCoeffs.from_params(
        lam, lam + rng.uniform(-spread, spread), lam + rng.uniform(-spread, 1.5), theta)


class TestCubic:

    def test_leading_coefficient_negative(self):
        with pytest.raises(InvalidParameterError):
            CubicCoeffs(0.0, 0.0, 0.0)

    def test_x_eval_examples(self):
        c = CubicCoeffs(0.0, 0.0, -2.0)
        assert x_eval(CubicCoeffs(0.7, 1.0, -1.0), 0.0) == 0.7
        assert x_eval(c, 1.0) == pytest.approx(-2.0 / math.e)
        assert x_eval(c, -1.0) == pytest.approx(-2.0 / math.e)
        assert x_eval(CubicCoeffs(1.0, 1.0, -1.0), 2.0) == pytest.approx(-0.0183156, rel=1e-5)

    def test_x_eval_array(self):
        c = CubicCoeffs(1.0, 1.0, -1.0)
        u = np.array([0.0, 2.0])
        np.testing.assert_allclose(x_eval(c, u), [x_eval(c, 0.0), x_eval(c, 2.0)])

    def test_symmetric_roots(self):
        roots = cubic_real_roots(CubicCoeffs(0.0, 0.0, -5.0)).roots
        np.testing.assert_allclose(roots, [-1.0, 0.0, 1.0], atol=1e-12)

    def test_known_cubic(self):
        roots = np.array(cubic_real_roots(CubicCoeffs(0.0, 1.0, -1.0)).roots)
        np.testing.assert_allclose(np.polyval([-2.0, 2.0, 2.0, -1.0], roots), 0.0, atol=1e-12)
        np.testing.assert_allclose(roots, np.sort(np.roots([-2.0, 2.0, 2.0, -1.0]).real), atol=1e-10)

    def test_scaling_invariance(self):
        roots = cubic_real_roots(CubicCoeffs(0.0, 1.0, -1.0)).roots
        scaled = cubic_real_roots(CubicCoeffs(0.0, 2.0, -2.0)).roots
        np.testing.assert_allclose(roots, scaled, atol=1e-12)

    def test_residuals_and_order(self, rng):
        for _ in range(100):
            c = _random_coeffs(rng)
            found = cubic_real_roots(c)
            assert 1 <= len(found.roots) <= 3
            assert list(found.roots) == sorted(found.roots)
            assert max(abs(r) for r in found.residuals) <= 1e-10 * 2.0 * c.scale()


class TestExtrema:

    def test_centered(self):
        c = CubicCoeffs(0.0, 0.0, -7.0)
        x_min, x_max = x_extrema(c)
        assert x_min == pytest.approx(-7.0 / math.e)
        assert x_max == pytest.approx(0.0, abs=1e-15)

    def test_known(self):
        x_min, x_max = x_extrema(CubicCoeffs(1.0, 0.0, -1.0))
        assert x_max == pytest.approx(1.0)
        assert x_min == pytest.approx(-math.exp(-2.0))

    def test_dense_grid_oracle(self, rng):
        u = np.linspace(-10.0, 10.0, 10 ** 6)
        for _ in range(100):
            c = _random_coeffs(rng)
            x_min, x_max = x_extrema(c)
            values = x_eval(c, u)
            assert values.max() <= x_max + 1e-9
            assert values.min() >= x_min - 1e-9


class TestObjective:

    def test_h_centered(self):
        assert h_lambda(1.0, 1.0, 1.0, 10.0) == pytest.approx(1.0)
        for lam in (0.1, 2.0, 50.0):
            assert h_lambda(lam, lam, lam, 3.0) == pytest.approx((3 * lam + 7) / (3.0 * lam))

    def test_h_vanishes_with_theta(self):
        assert h_lambda(2.0, 1.0, 2.5, 1e12) < 1e-9

    def test_g_centered(self):
        assert g_lambda(1.0, 1.0, 1.0, 1.0) == pytest.approx(1.0)
        assert g_lambda(1.0, 1.0, 1.0, 20.0) == pytest.approx(2 * math.exp(-1.5) + 20 / math.e)
        for lam in (0.1, 2.0, 50.0):
            assert g_lambda(lam, lam, lam, 7.0) == pytest.approx(lam * (2 * math.exp(-1.5) + 7.0 / math.e))

    def test_g_positive(self, rng):
        for _ in range(50):
            lam = rng.uniform(0.01, 20.0)
            assert g_lambda(lam, rng.uniform(-5, 5), rng.uniform(-5, lam + 1.5), rng.uniform(0.01, 100)) > 0.0

    @pytest.mark.parametrize('lam', [0.1, 1.0, 10.0])
    def test_restricted_equals_closed_form(self, lam):
        assert k1_objective(lam, lam, lam, theta_star(lam)) == pytest.approx(corollary_k1_tilde(lam), abs=1e-12)

    def test_small_theta_is_vacuous(self):
        assert k1_objective(1.0, 1.0, 1.0, 1e-3) < 0.0

    def test_infeasible(self):
        with pytest.raises(InfeasibleParamsError):
            k1_objective(1.0, 1.0, 3.0, 10.0)

    def test_rejects_bad_theta(self):
        with pytest.raises(InvalidParameterError):
            h_lambda(1.0, 1.0, 1.0, 0.0)
        with pytest.raises(InvalidParameterError):
            g_lambda(1.0, 1.0, 1.0, -1.0)


class TestSearch:

    def test_closed_form(self):
        result = optimize_k1(1.0, K1Variant.CLOSED_FORM)
        assert result.k1 == pytest.approx(0.0320616, rel=1e-5)
        np.testing.assert_allclose(result.argmax, (1.0, 1.0, 20.58918), rtol=1e-6)
        assert not result.vacuous

    def test_get_search_by_name(self, small_config):
        assert isinstance(get_search('closed_form'), ClosedFormSearch)
        assert isinstance(get_search('theta_only', small_config), ThetaOnlySearch)
        assert isinstance(get_search('common_alpha', small_config), CommonAlphaSearch)
        assert isinstance(get_search('three_param', small_config), ThreeParamSearch)

    def test_rejects_bad_config(self):
        with pytest.raises(InvalidParameterError):
            OptimizerConfig(grid_size=1)

    def test_rejects_bad_lambda(self):
        with pytest.raises(InvalidParameterError):
            ClosedFormSearch().search(0.0)

    @pytest.mark.parametrize('lam', [0.01, 1.0, 100.0])
    def test_theta_only_matches_closed_form(self, lam):
        closed = corollary_k1_tilde(lam)
        result = ThetaOnlySearch().search(lam)
        assert result.k1 >= closed - 1e-9
        assert result.k1 == pytest.approx(closed, rel=1e-7)

    def test_small_budget_chain(self, small_config):
        lam = 2.0
        common = CommonAlphaSearch(config=small_config)
        three = ThreeParamSearch(config=small_config, common_alpha=common)
        k1_common = common.search(lam).k1
        assert three.search(lam).k1 >= k1_common - 1e-9
        assert k1_common >= corollary_k1_tilde(lam) - 1e-9

    def test_result_is_reevaluated(self, small_config):
        result = CommonAlphaSearch(config=small_config).search(3.0)
        assert result.k1 == k1_objective(3.0, *result.argmax)
        alpha1, alpha2, theta = result.argmax
        assert alpha1 == alpha2 <= 3.0 + 1.5
        assert theta > 0.0
        assert result.evaluations > small_config.grid_size ** 2

    def test_deterministic(self, small_config):
        first = ThreeParamSearch(config=small_config).search(0.5)
        second = ThreeParamSearch(config=small_config).search(0.5)
        assert first == second


def _argmax_params(lam: float, argmax) -> SteinParams:
    alpha1, alpha2, theta = argmax
    return SteinParams(alpha1=alpha1, alpha2=alpha2, theta=theta, lam=lam)


class TestArgmaxAgainstQuotient:

    @pytest.mark.parametrize('lam', [0.3, 1.0, 3.0, 7.5])
    def test_bound_below_quotient(self, small_config, lam):
        result = ThreeParamSearch(config=small_config).search(lam)
        params = _argmax_params(lam, result.argmax)
        assert analytic_quotient_bound(params) == pytest.approx(result.k1, rel=1e-12)

        for n in (10, 15, 20):
            p = ProbVector.from_lambda(lam, n)
            assert result.k1 <= chen_stein_quotient(p, params) / p.sum_p2 + 1e-9

    def test_unequal_probabilities(self, small_config, rng):
        for _ in range(5):
            probs = rng.uniform(0.05, 0.3, size=12)
            p = ProbVector.from_iterable(probs.tolist())
            result = CommonAlphaSearch(config=small_config).search(p.lam)
            params = _argmax_params(p.lam, result.argmax)
            assert result.k1 <= chen_stein_quotient(p, params) / p.sum_p2 + 1e-9


@pytest.mark.slow
class TestFullSearch:

    def test_argmax_bound_below_quotient(self):
        result = optimize_k1(1.0)
        p = ProbVector.from_lambda(1.0, 20)
        assert result.k1 <= chen_stein_quotient(p, _argmax_params(1.0, result.argmax)) / p.sum_p2 + 1e-9

    def test_improves_on_closed_form(self):
        assert optimize_k1(1.0).k1 >= 0.0320616

    @pytest.mark.parametrize('lam', [0.01, 0.3, 3.0, 30.0])
    def test_ordering_chain(self, lam):
        config = OptimizerConfig()
        common = CommonAlphaSearch(config=config)
        k1_three = ThreeParamSearch(config=config, common_alpha=common).search(lam).k1
        k1_common = common.search(lam).k1
        assert k1_three >= k1_common - 1e-9
        assert k1_common >= corollary_k1_tilde(lam) - 1e-9

    def test_merge_at_large_lambda(self):
        assert optimize_k1(30.0).k1 == pytest.approx(corollary_k1_tilde(30.0), rel=0.01)

    def test_gap_near_twenty(self):
        # оптимум α₁ = α₂ ≈ λ + 0.6 допустим, поэтому при λ = 20 K₁ выше K̃₁ примерно на 1.4%
        result = optimize_k1(20.0)
        gap = result.k1 / corollary_k1_tilde(20.0) - 1.0
        assert 0.0 <= gap < 0.02
        _, alpha2, _ = result.argmax
        assert alpha2 <= 20.0 + 1.5

    def test_feasible_argmax(self):
        result = optimize_k1(5.0)
        alpha1, alpha2, theta = result.argmax
        assert alpha2 <= 5.0 + 1.5
        assert theta > 0.0
        assert result.k1 == pytest.approx(k1_objective(5.0, *result.argmax), abs=1e-12)

    def test_ratio_at_large_lambda(self):
        lam = 1e6
        upper_coefficient = -math.expm1(-lam) / lam
        assert 4.133 <= upper_coefficient / optimize_k1(lam).k1 <= 10.539 + 0.05
