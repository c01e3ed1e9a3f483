import math

import pytest

from tvbounds.components.optimizers import (
    ClosedFormSearch,
    CommonAlphaSearch,
    OptimizerConfig,
    ThetaOnlySearch,
    ThreeParamSearch,
)
from tvbounds.components.verifiers import (
    CheckAccumulator,
    LimitsSuite,
    OrderingSuite,
    SandwichSuite,
    SteinSuite,
    run_suites,
)


class TestAccumulator:

    def test_counts_and_worst_margin(self):
        check = CheckAccumulator('suite', 'check')
        check.add_le(1.0, 2.0)
        check.add_le(2.0, 1.0, tol=0.5)
        check.add_close(1.0, 1.05, 0.1)
        result = check.result()
        assert (result.passed, result.total) == (2, 3)
        assert result.worst_margin == pytest.approx(-0.5)
        assert result.status == 'FAIL'

    def test_nan_fails(self):
        check = CheckAccumulator('suite', 'check')
        check.add(math.nan)
        check.add(1.0)
        result = check.result()
        assert not result.ok
        assert math.isnan(result.worst_margin)

    def test_empty_passes(self):
        result = CheckAccumulator('suite', 'check').result()
        assert result.ok and result.total == 0


class TestLimits:

    def test_all_pass(self):
        results = LimitsSuite().run(seed=0)
        assert [r.name for r in results if not r.ok] == []
        assert len(results) == 13


class TestStein:

    def test_small_run_passes(self):
        results = SteinSuite(identity_draws=10, transfer_draws=10, quotient_draws=20, max_n=8).run(seed=3)
        assert [r.name for r in results if not r.ok] == []
        assert results[0].total == 10

    def test_deterministic(self):
        suite = SteinSuite(identity_draws=5, transfer_draws=5, quotient_draws=5)
        assert suite.run(seed=11) == suite.run(seed=11)


class TestOrdering:

    def test_small_grid_with_theta_only(self, small_config):
        common = CommonAlphaSearch(config=small_config)
        suite = OrderingSuite(searches={
            'three_param': ThreeParamSearch(config=small_config, common_alpha=common),
            'common_alpha': common,
            'closed_form': ClosedFormSearch(),
            'theta_only': ThetaOnlySearch(config=small_config),
        }, points=4, threads_count=1)
        results = {r.name: r for r in suite.run(seed=0)}
        assert list(results) == ['coefficient_chain', 'ratio_chain', 'large_lambda_merge', 'theta_star_is_optimal']
        assert [name for name, r in results.items() if not r.ok] == []
        assert results['theta_star_is_optimal'].total == 4
        assert results['large_lambda_merge'].total == 1


class TestRunSuites:

    def test_collects_results(self):
        results = run_suites([LimitsSuite(), SteinSuite(identity_draws=3, transfer_draws=3, quotient_draws=3)], 0)
        assert {r.suite for r in results} == {'limits', 'stein'}


@pytest.mark.slow
class TestOptimizerSuites:

    def test_sandwich(self):
        config = OptimizerConfig(grid_size=6, refine_starts=3, max_iterations=500)
        suite = SandwichSuite(search=ThreeParamSearch(config=config), instances=30)
        assert all(r.ok for r in suite.run(seed=7))

    def test_ordering(self):
        common = CommonAlphaSearch()
        suite = OrderingSuite(searches={
            'three_param': ThreeParamSearch(common_alpha=common),
            'common_alpha': common,
            'closed_form': ClosedFormSearch(),
        }, points=10)
        assert all(r.ok for r in suite.run(seed=0))

    def test_ordering_default_grid(self):
        common = CommonAlphaSearch()
        suite = OrderingSuite(searches={
            'three_param': ThreeParamSearch(common_alpha=common),
            'common_alpha': common,
            'closed_form': ClosedFormSearch(),
        })
        results = {r.name: r for r in suite.run(seed=7)}
        assert all(r.ok for r in results.values())
        # на сетке из 30 точек слияние проверяется при λ ≈ 28, 39, 53, 73, 100
        assert results['large_lambda_merge'].total == 5
