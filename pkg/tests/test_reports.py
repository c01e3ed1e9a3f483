import pytest

from tvbounds.closed_bounds import corollary_k1_tilde, theta_star
from tvbounds.components.optimizers import ClosedFormSearch, CommonAlphaSearch, ThreeParamSearch
from tvbounds.distributions import ProbVector
from tvbounds.reports import build_bound_report

from .conftest import random_instance


class TestBuildReport:

    def test_without_search(self, two_probs):
        report = build_bound_report(two_probs)
        assert report.n == 2
        assert report.sum_p2 == pytest.approx(0.05)
        assert report.exact_tv == pytest.approx(0.0377545, rel=1e-6)
        assert report.theta_star == pytest.approx(theta_star(0.3))
        assert report.corollary_lower == pytest.approx(corollary_k1_tilde(0.3) * 0.05)
        assert report.k1_lower is None and report.k1_common_alpha_lower is None
        assert report.vacuous_flags == {'bh_lower': False, 'corollary_lower': False}
        assert report.is_consistent()

    def test_equal_probabilities(self):
        report = build_bound_report(ProbVector.from_lambda(1.0, 10))
        assert report.sum_p2 == pytest.approx(0.1)
        assert report.bh_lower <= report.corollary_lower <= report.exact_tv <= report.bh_upper <= report.le_cam

    def test_zero_instance(self):
        report = build_bound_report(ProbVector((0.0, 0.0)))
        assert report.theta_star is None
        assert report.exact_tv == 0.0
        assert report.corollary_lower == report.asymptotic_tv == report.bh_upper == 0.0
        assert report.is_consistent()

    def test_exact_limit(self, two_probs):
        report = build_bound_report(two_probs, exact_max_n=1)
        assert report.exact_tv is None
        assert report.is_consistent()

    def test_with_searches(self, two_probs, small_config):
        common = CommonAlphaSearch(config=small_config)
        report = build_bound_report(
            two_probs,
            three_param=ThreeParamSearch(config=small_config, common_alpha=common),
            common_alpha=common,
        )
        assert report.corollary_lower <= report.k1_common_alpha_lower + 1e-12
        assert report.k1_common_alpha_lower <= report.k1_lower + 1e-12
        assert report.k1_lower <= report.exact_tv
        assert report.vacuous_flags['k1_lower'] is False
        assert report.is_consistent()

    def test_closed_form_as_common_alpha(self, two_probs):
        report = build_bound_report(two_probs, common_alpha=ClosedFormSearch())
        assert report.k1_common_alpha_lower == pytest.approx(report.corollary_lower, rel=1e-15)

    def test_random_sandwich(self, rng):
        for _ in range(50):
            report = build_bound_report(random_instance(rng, 12))
            assert report.corollary_lower <= report.exact_tv + 1e-12
            assert report.exact_tv <= report.bh_upper + 1e-12
            assert report.is_consistent()


@pytest.mark.slow
class TestSandwichWithSearch:

    def test_random_instances(self, rng):
        search = ThreeParamSearch()
        for _ in range(20):
            report = build_bound_report(random_instance(rng, 12), three_param=search)
            assert report.corollary_lower <= report.k1_lower + 1e-12
            assert report.k1_lower <= report.exact_tv + 1e-12
            assert report.exact_tv <= report.bh_upper + 1e-12 <= report.le_cam + 2e-12
