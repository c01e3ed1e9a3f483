"""
Контейнеры для инъекции зависимостей в программу.
Позволяют удобно посредством конфигов менять используемые компоненты программы.

Например: вы можете поменять формат вывода или бюджет оптимизации K₁,
никак при этом не редактируя исходный код.
"""
from dependency_injector import containers, providers

from .components import (
    optimizers,
    renderers,
    verifiers,
)


class Optimizers(containers.DeclarativeContainer):
    """
    Контейнер со стратегиями вычисления K₁(λ).
    Все численные стратегии используют одну и ту же область и бюджет поиска.
    """
    config = providers.Configuration()

    SearchConfig = providers.Singleton(
        optimizers.OptimizerConfig,
        grid_size=config.grid_size,
        refine_starts=config.refine_starts,
        max_iterations=config.max_iterations,
        xatol=config.xatol,
        fatol=config.fatol,
        box_scale=config.box_scale,
        box_offset=config.box_offset,
        theta_min=config.theta_min,
        theta_scale=config.theta_scale,
        theta_offset=config.theta_offset,
    )

    ClosedForm = providers.Singleton(
        optimizers.ClosedFormSearch,
    )

    ThetaOnly = providers.Singleton(
        optimizers.ThetaOnlySearch,
        config=SearchConfig,
    )

    CommonAlpha = providers.Singleton(
        optimizers.CommonAlphaSearch,
        config=SearchConfig,
    )

    ThreeParam = providers.Singleton(
        optimizers.ThreeParamSearch,
        config=SearchConfig,
        common_alpha=CommonAlpha,
    )

    Searches = providers.Dict(
        three_param=ThreeParam,
        common_alpha=CommonAlpha,
        theta_only=ThetaOnly,
        closed_form=ClosedForm,
    )


class Renderers(containers.DeclarativeContainer):
    """
    Контейнер с форматами вывода.
    """
    config = providers.Configuration()

    _CsvRenderer = providers.Singleton(
        renderers.CsvRenderer,
    )

    _JsonRenderer = providers.Singleton(
        renderers.JsonRenderer,
        indent=config.json.indent,
    )

    _TableRenderer = providers.Singleton(
        renderers.TableRenderer,
    )

    Renderer = providers.Selector(
        config.using,
        csv=_CsvRenderer,
        json=_JsonRenderer,
        table=_TableRenderer,
    )


class Verifiers(containers.DeclarativeContainer):
    """
    Контейнер с проверочными наборами команды verify.
    """
    config = providers.Configuration()

    optimization = providers.DependenciesContainer()

    _SteinSuite = providers.Singleton(
        verifiers.SteinSuite,
        identity_draws=config.stein.identity_draws,
        transfer_draws=config.stein.transfer_draws,
        quotient_draws=config.stein.quotient_draws,
        max_n=config.stein.max_n,
    )

    _SandwichSuite = providers.Singleton(
        verifiers.SandwichSuite,
        search=optimization.ThreeParam,
        instances=config.sandwich.instances,
        max_n=config.sandwich.max_n,
    )

    _OrderingSuite = providers.Singleton(
        verifiers.OrderingSuite,
        searches=optimization.Searches,
        lambda_min=config.ordering.lambda_min,
        lambda_max=config.ordering.lambda_max,
        points=config.ordering.points,
        merge_from=config.ordering.merge_from,
        threads_count=config.ordering.threads_count,
    )

    _LimitsSuite = providers.Singleton(
        verifiers.LimitsSuite,
        spot_lambda=config.limits.spot_lambda,
        spot_n=config.limits.spot_n,
    )

    Suites = providers.Dict(
        stein=_SteinSuite,
        sandwich=_SandwichSuite,
        ordering=_OrderingSuite,
        limits=_LimitsSuite,
    )


class Application(containers.DeclarativeContainer):
    """
    DataInjection-контейнер.
    Отвечает за инъекцию определённых объектов и классов из конфига.
    """
    config = providers.Configuration()

    optimization = providers.Container(
        Optimizers,
        config=config.optimizer,
    )

    rendering = providers.Container(
        Renderers,
        config=config.output,
    )

    verification = providers.Container(
        Verifiers,
        config=config.verify,
        optimization=optimization,
    )

    get_log_path = config.log_file
    get_log_level = config.log_level
    get_log_format = config.log_format

    get_exact_max_n = config.exact.max_n

    get_sweep_threads = config.sweep.threads_count
    get_sweep_variants = config.sweep.variants

    get_verify_seed = config.verify.seed
