import abc
import math
from typing import Iterable, Mapping, Optional

import numpy as np
from loguru import logger

from ._checks import CheckAccumulator, CheckResult
from ..optimizers import BaseK1Search, K1Variant, k1_objective
from ...closed_bounds import (
    asymptotic_tv,
    barbour_hall_lower_coefficient,
    barbour_hall_upper_coefficient,
    bound_ratio,
    corollary_k1_tilde,
    limit_ratio_infinity,
    limit_ratio_zero,
    limit_theta_infinity,
    reference_constants,
    theta_star,
)
from ...distributions import ProbVector, exact_tv_poisson_approx
from ...math_utils import get_lambda_grid, get_relative_error
from ...reports import build_bound_report
from ...stein_core import (
    SteinParams,
    analytic_quotient_bound,
    chen_stein_quotient,
    stein_identity_residual,
    stein_transfer_both_sides,
)
from ...sweep import run_sweep


def _random_instance(rng: np.random.Generator, max_n: int) -> ProbVector:
    n = int(rng.integers(1, max_n + 1))
    return ProbVector.from_iterable(rng.uniform(0.0, 1.0, size=n).tolist())


class BaseSuite(metaclass=abc.ABCMeta):
    """
    Базовый класс для проверочных наборов.
    """
    name: str

    @abc.abstractmethod
    def run(self, seed: int) -> list[CheckResult]:
        """
        Прогоняет все проверки набора. Результат детерминирован при фиксированном seed.
        """


class SteinSuite(BaseSuite):
    """
    Тождество Стейна для Пуассона, тождество переноса для W,
    неравенство d_TV ≥ (числитель)/(2·sup) и согласованность с замкнутой оценкой.
    """
    name = 'stein'

    def __init__(
            self,
            *,
            identity_draws: int = 50,
            transfer_draws: int = 50,
            quotient_draws: int = 100,
            max_n: int = 10,
    ):
        self._identity_draws = identity_draws
        self._transfer_draws = transfer_draws
        self._quotient_draws = quotient_draws
        self._max_n = max_n

    @staticmethod
    def _random_params(rng: np.random.Generator, lam: float, theta_range: tuple[float, float]) -> SteinParams:
        spread = 2.0 * math.sqrt(lam) + 1.0
        return SteinParams(
            alpha1=lam + rng.uniform(-spread, spread),
            alpha2=lam + rng.uniform(-spread, 1.5),
            theta=math.exp(rng.uniform(*np.log(theta_range))),
            lam=lam,
        )

    def run(self, seed: int) -> list[CheckResult]:
        rng = np.random.default_rng(seed)

        identity = CheckAccumulator(self.name, 'poisson_identity')
        for _ in range(self._identity_draws):
            params = self._random_params(rng, rng.uniform(0.1, 20.0), (1.0, 50.0))
            identity.add_le(stein_identity_residual(params), 0.0, 1e-10, case=params)

        transfer = CheckAccumulator(self.name, 'transfer_identity')
        for _ in range(self._transfer_draws):
            p = _random_instance(rng, self._max_n)
            params = self._random_params(rng, p.lam, (1.0, 50.0))
            lhs, rhs = stein_transfer_both_sides(p, params, max_n=self._max_n)
            transfer.add_close(lhs, rhs, 1e-10, case=(p.probs, params))

        quotient = CheckAccumulator(self.name, 'quotient_below_exact_tv')
        analytic = CheckAccumulator(self.name, 'analytic_below_quotient')
        for _ in range(self._quotient_draws):
            p = _random_instance(rng, self._max_n)
            params = self._random_params(rng, p.lam, (5.0, 200.0))
            value = chen_stein_quotient(p, params, max_n=self._max_n)
            quotient.add_le(value, exact_tv_poisson_approx(p), 1e-12, case=(p.probs, params))

            bound = analytic_quotient_bound(params)
            # при отрицательном числителе сравнение не следует из двух односторонних оценок
            if bound >= 0.0:
                analytic.add_le(bound, value / p.sum_p2, 1e-9, case=(p.probs, params))

        return [identity.result(), transfer.result(), quotient.result(), analytic.result()]


class SandwichSuite(BaseSuite):
    """
    K̃₁·Σp² ≤ K₁·Σp² ≤ d_TV ≤ оценка Барбура-Холла ≤ оценка Ле Кама
    на случайных наборах с точным d_TV.
    """
    name = 'sandwich'

    def __init__(self, *, search: BaseK1Search, instances: int = 200, max_n: int = 12):
        self._search = search
        self._instances = instances
        self._max_n = max_n

    def run(self, seed: int) -> list[CheckResult]:
        rng = np.random.default_rng(seed)
        checks = {
            name: CheckAccumulator(self.name, name)
            for name in ('corollary_below_k1', 'k1_below_exact', 'exact_below_bh_upper', 'bh_upper_below_le_cam')
        }

        for i in range(self._instances):
            p = _random_instance(rng, self._max_n)
            report = build_bound_report(p, three_param=self._search)
            logger.debug(f"Набор {i + 1}/{self._instances}: {report}")

            checks['corollary_below_k1'].add_le(report.corollary_lower, report.k1_lower, 1e-12, case=p.probs)
            checks['k1_below_exact'].add_le(report.k1_lower, report.exact_tv, 1e-12, case=p.probs)
            checks['exact_below_bh_upper'].add_le(report.exact_tv, report.bh_upper, 1e-12, case=p.probs)
            checks['bh_upper_below_le_cam'].add_le(report.bh_upper, report.le_cam, 1e-12, case=p.probs)

        return [check.result() for check in checks.values()]


class OrderingSuite(BaseSuite):
    """
    Порядок K₁ ≥ K₁(α₁ = α₂) ≥ K̃₁ ≥ 1/32·min{1, 1/λ} на логарифмической сетке
    и слияние кривых отношений при больших λ.
    Если передан вариант theta_only, дополнительно сверяет его с K̃₁(λ).
    """
    name = 'ordering'

    def __init__(
            self,
            *,
            searches: Mapping[K1Variant, BaseK1Search],
            lambda_min: float = 0.01,
            lambda_max: float = 100.0,
            points: int = 30,
            merge_from: float = 25.0,
            threads_count: Optional[int] = None,
    ):
        self._searches = {K1Variant(variant): search for variant, search in searches.items()}
        self._grid = get_lambda_grid(lambda_min, lambda_max, points)
        self._merge_from = merge_from
        self._threads_count = threads_count

    def run(self, seed: int) -> list[CheckResult]:
        rows = run_sweep(self._grid, self._searches, threads_count=self._threads_count)

        coefficients = CheckAccumulator(self.name, 'coefficient_chain')
        ratios = CheckAccumulator(self.name, 'ratio_chain')
        merge = CheckAccumulator(self.name, 'large_lambda_merge')
        for row in rows:
            chain = (row.k1_three, row.k1_common, row.k1_closed, row.bh_lower_coeff)
            for stronger, weaker in zip(chain, chain[1:]):
                coefficients.add_le(weaker, stronger, 1e-9, case=row.lam)

            for smaller, larger in zip((row.ratio_three, row.ratio_common), (row.ratio_common, row.ratio_closed)):
                ratios.add_le(smaller, larger, 1e-6, case=row.lam)

            if row.lam >= self._merge_from:
                gap = (row.ratio_closed - row.ratio_three) / row.ratio_closed
                merge.add_le(gap, 0.01, case=row.lam)

        results = [coefficients.result(), ratios.result(), merge.result()]

        theta_only = self._searches.get(K1Variant.THETA_ONLY)
        if theta_only is not None:
            # численный максимум по одной θ при α₁ = α₂ = λ совпадает с K̃₁(λ), то есть достигается в θ*
            closed = CheckAccumulator(self.name, 'theta_star_is_optimal')
            for row in rows:
                found = theta_only.search(row.lam).k1
                closed.add_le(get_relative_error(found, corollary_k1_tilde(row.lam)), 1e-6, case=row.lam)
            results.append(closed.result())

        return results


class LimitsSuite(BaseSuite):
    """
    Предельные значения отношений, θ* и сравнение с асимптотикой Девёльса-Пфайфера.
    """
    name = 'limits'

    def __init__(self, *, spot_lambda: float = 50.0, spot_n: int = 5000):
        self._spot_lambda = spot_lambda
        self._spot_n = spot_n

    def _check_one(self, name: str, actual: float, expected: float, tol: float) -> CheckResult:
        check = CheckAccumulator(self.name, name)
        check.add_close(actual, expected, tol, case=(actual, expected))
        return check.result()

    def run(self, seed: int) -> list[CheckResult]:
        constants = reference_constants()
        results = [
            self._check_one('ratio_at_infinity', bound_ratio(1e6), constants['ratio_inf'], 0.01),
            self._check_one('ratio_at_zero', bound_ratio(1e-6), constants['ratio_zero'], 0.01),
            self._check_one('ratio_limit_formula', limit_ratio_infinity(), constants['ratio_inf'], 0.001),
            self._check_one('ratio_zero_formula', limit_ratio_zero(), constants['ratio_zero'], 0.001),
            self._check_one('improvement_at_infinity', 32.0 / bound_ratio(1e6), constants['improvement_inf'], 0.01),
            self._check_one('improvement_at_zero', 32.0 / bound_ratio(1e-6), constants['improvement_zero'], 0.01),
        ]

        for name, lam, actual, expected in (
                ('lambda_theta_at_zero', 1e-8, 1e-8 * theta_star(1e-8), constants['lambda_theta_zero']),
                ('theta_at_infinity', 1e8, theta_star(1e8), limit_theta_infinity()),
        ):
            check = CheckAccumulator(self.name, name)
            check.add_le(get_relative_error(actual, expected), 1e-4, case=lam)
            results.append(check.result())

        restricted = CheckAccumulator(self.name, 'restricted_objective')
        for lam in (0.1, 1.0, 10.0):
            restricted.add_close(k1_objective(lam, lam, lam, theta_star(lam)), corollary_k1_tilde(lam), 1e-12,
                                 case=lam)
        results.append(restricted.result())

        above_bh = CheckAccumulator(self.name, 'corollary_above_bh_lower')
        theta_above = CheckAccumulator(self.name, 'theta_star_above_3')
        for power in range(-6, 7):
            lam = 10.0 ** power
            above_bh.add_le(barbour_hall_lower_coefficient(lam), corollary_k1_tilde(lam), case=lam)
            theta_above.add_le(3.0, theta_star(lam), case=lam)
        results += [above_bh.result(), theta_above.result()]

        dp_ratio = barbour_hall_upper_coefficient(1e6) / asymptotic_tv(1e6, 1.0)
        results.append(self._check_one('dp_ratio', dp_ratio, math.sqrt(2.0 * math.pi * math.e), 0.001))

        p = ProbVector.from_lambda(self._spot_lambda, self._spot_n)
        spot = exact_tv_poisson_approx(p, max_n=self._spot_n) / asymptotic_tv(p.lam, p.sum_p2)
        results.append(self._check_one('asymptotic_spot_check', spot, 1.0, 0.1))
        return results


def run_suites(suites: Iterable[BaseSuite], seed: int) -> list[CheckResult]:
    """
    Прогоняет наборы по очереди и собирает результаты всех проверок.
    """
    results = []
    for suite in suites:
        logger.info(f"Запуск проверочного набора '{suite.name}' (seed={seed})")
        suite_results = suite.run(seed)
        failed = [r.name for r in suite_results if not r.ok]
        if failed:
            logger.error(f"Набор '{suite.name}': провалены проверки {failed}")
        else:
            logger.info(f"Набор '{suite.name}': все {len(suite_results)} проверок пройдены")
        results += suite_results
    return results
