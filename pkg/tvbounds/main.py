"""
Файл с кодом для запуска из командной строки: команды bounds, sweep и verify.

Конфиг собирается из нескольких слоёв (каждый следующий перекрывает предыдущий):
sample_config.yaml → файл из $TVBOUNDS_CONFIG → ./config.yaml → --config → флаги.
"""
import argparse
import os
import sys
from datetime import datetime
from pathlib import Path
from typing import Callable, Optional, Sequence

from loguru import logger

from .components.instances import BaseInstanceSource, EqualSource, FileSource, ListSource
from .components.verifiers import run_suites
from .di_containers import Application
from .errors import (
    InstanceFileError,
    InstanceTooLargeError,
    InvalidInstanceError,
    InvalidParameterError,
)
from .math_utils import get_lambda_grid
from .reports import build_bound_report
from .sweep import parse_sweep_variants, run_sweep

SAMPLE_CONFIG_PATH = Path(__file__).parent.parent / 'sample_config.yaml'
LOCAL_CONFIG_PATH = Path('config.yaml')
CONFIG_ENV_VAR = 'TVBOUNDS_CONFIG'

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_FILE = 3
EXIT_INTERRUPTED = 130

SUITE_ORDER = ('limits', 'stein', 'ordering', 'sandwich')


def get_complete_di_container(config_path: Optional[str] = None) -> Application:
    """
    Инициализирует DataInjection-контейнер из слоёв конфига.
    Возвращает инициализированный контейнер.

    Returns:
        Application
    """
    container = Application()
    container.config.from_yaml(SAMPLE_CONFIG_PATH, required=True)

    env_path = os.environ.get(CONFIG_ENV_VAR)
    layers = [Path(env_path)] if env_path else []
    if LOCAL_CONFIG_PATH.is_file():
        layers.append(LOCAL_CONFIG_PATH)
    if config_path is not None:
        layers.append(Path(config_path))

    for path in layers:
        if not path.is_file():
            raise InstanceFileError(f"Не найден файл конфига '{path}'")
        container.config.from_yaml(path, required=True)
    return container


def apply_cli_overrides(container: Application, args: argparse.Namespace) -> None:
    """
    Переносит явно указанные флаги в конфиг контейнера (поверх всех файлов).
    """
    optimizer = {
        key: getattr(args, key)
        for key in ('grid_size', 'refine_starts', 'max_iterations')
        if getattr(args, key, None) is not None
    }
    overrides = {'optimizer': optimizer}
    if args.format is not None:
        overrides['output'] = {'using': args.format}
    elif args.command == 'verify':
        overrides['output'] = {'using': 'table'}
    if getattr(args, 'threads', None) is not None:
        overrides['sweep'] = {'threads_count': args.threads}
    if getattr(args, 'exact_max_n', None) is not None:
        overrides['exact'] = {'max_n': args.exact_max_n}
    container.config.from_dict(overrides)


def setup_logger(file: Optional[str], log_format: str, level: str = 'INFO') -> None:
    """
    Настраивает логгирование в stderr (stdout занят данными)
    и, если задан файл, в файл с ротацией и автоматическим сжатием в zip.

    Returns:
        None
    """
    logger.remove()
    logger.add(sink=sys.stderr, format=log_format, level=level)
    if file:
        logger.add(sink=file, format=log_format, level=level, rotation='1 day', compression='zip')


def write_output(text: str, out: Optional[str]) -> None:
    """
    Пишет результат в файл или (если файл не указан) в stdout.
    """
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        Path(out).write_text(text, encoding='utf-8')
    except OSError as e:
        raise InstanceFileError(f"Не удалось записать результат в '{out}': {e}") from e
    logger.info(f"Результат записан в '{out}'")


def get_instance_source(args: argparse.Namespace) -> BaseInstanceSource:
    """
    Выбирает источник набора вероятностей по флагам команды bounds.
    """
    if args.probs is not None:
        return ListSource(args.probs)
    if args.probs_file is not None:
        return FileSource(args.probs_file)
    if args.n is None:
        raise InvalidInstanceError("Вместе с --lambda нужно указать --n")
    return EqualSource(lam=args.lam, n=args.n)


def cmd_bounds(args: argparse.Namespace, container: Application) -> int:
    """
    Все оценки для одного набора вероятностей.
    """
    p = get_instance_source(args).get_instance()

    if args.no_k1:
        three_param = common_alpha = None
    else:
        three_param = container.optimization.ThreeParam()
        common_alpha = container.optimization.CommonAlpha()

    report = build_bound_report(
        p,
        three_param=three_param,
        common_alpha=common_alpha,
        exact_max_n=container.get_exact_max_n(),
    )
    write_output(container.rendering.Renderer().render_report(report), args.out)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, container: Application) -> int:
    """
    Кривые отношений верхней и нижних оценок по сетке λ.
    """
    grid = get_lambda_grid(args.lambda_min, args.lambda_max, args.points, scale=args.scale)
    variants = parse_sweep_variants(args.variants or container.get_sweep_variants())

    all_searches = container.optimization.Searches()
    searches = {variant: all_searches[variant.value] for variant in variants}

    rows = run_sweep(grid, searches, threads_count=container.get_sweep_threads())
    write_output(container.rendering.Renderer().render_rows(rows), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, container: Application) -> int:
    """
    Проверочные наборы. Код возврата 0 - только если прошли все проверки.
    """
    names = SUITE_ORDER if args.suite == 'all' else (args.suite,)
    seed = args.seed if args.seed is not None else container.get_verify_seed()

    suites = container.verification.Suites()
    results = run_suites([suites[name] for name in names], seed)

    write_output(container.rendering.Renderer().render_checks(results), args.out)
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAILED


COMMANDS: dict[str, Callable[[argparse.Namespace, Application], int]] = {
    'bounds': cmd_bounds,
    'sweep': cmd_sweep,
    'verify': cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    """
    Парсер аргументов командной строки.
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', default=None, help="YAML-конфиг поверх стандартного")
    common.add_argument('--format', choices=('csv', 'json', 'table'), default=None,
                        help="формат вывода (по умолчанию из конфига)")
    common.add_argument('--out', default=None, help="файл для результата (по умолчанию stdout)")
    common.add_argument('--grid-size', type=int, default=None, help="точек стартовой сетки по координате")
    common.add_argument('--refine-starts', type=int, default=None, help="сколько точек сетки уточнять")
    common.add_argument('--max-iterations', type=int, default=None, help="лимит итераций уточнения")

    parser = argparse.ArgumentParser(
        prog='tvbounds',
        description="Оценки расстояния полной вариации между суммой бернуллиевских величин и Po(λ)",
    )
    sub = parser.add_subparsers(dest='command', required=True)

    pb = sub.add_parser('bounds', parents=[common], help="оценки для одного набора вероятностей")
    source = pb.add_mutually_exclusive_group(required=True)
    source.add_argument('--probs', default=None, help="вероятности через запятую")
    source.add_argument('--probs-file', default=None, help="CSV-файл с вероятностями")
    source.add_argument('--lambda', dest='lam', type=float, default=None, help="λ для n одинаковых вероятностей λ/n")
    pb.add_argument('--n', type=int, default=None, help="число слагаемых (вместе с --lambda)")
    pb.add_argument('--no-k1', action='store_true', help="не искать K₁ численно")
    pb.add_argument('--exact-max-n', type=int, default=None, help="лимит n для точного d_TV")

    ps = sub.add_parser('sweep', parents=[common], help="кривые отношений по сетке λ")
    ps.add_argument('--lambda-min', type=float, required=True)
    ps.add_argument('--lambda-max', type=float, required=True)
    ps.add_argument('--points', type=int, default=50)
    ps.add_argument('--scale', choices=('log', 'linear'), default='log')
    ps.add_argument('--variants', default=None,
                    help="варианты через запятую: three_param,common_alpha,closed_form (или three,common,closed)")
    ps.add_argument('--threads', type=int, default=None, help="кол-во потоков расчёта")

    pv = sub.add_parser('verify', parents=[common], help="проверочные наборы")
    pv.add_argument('--suite', choices=SUITE_ORDER + ('all',), default='all')
    pv.add_argument('--seed', type=int, default=None)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Разбирает аргументы, собирает конфиг и запускает выбранную команду.
    Возвращает код возврата.
    """
    args = build_parser().parse_args(argv)

    try:
        container = get_complete_di_container(args.config)
        apply_cli_overrides(container, args)
        setup_logger(
            file=container.get_log_path(),
            log_format=container.get_log_format(),
            level=container.get_log_level(),
        )
        logger.debug(f"local time is {datetime.now()!s}")

        return COMMANDS[args.command](args, container)
    except (InvalidInstanceError, InvalidParameterError, InstanceTooLargeError) as e:
        logger.error(f"Некорректные входные данные: {e}")
        return EXIT_INVALID
    except InstanceFileError as e:
        logger.error(f"Ошибка работы с файлом: {e}")
        return EXIT_FILE
    except KeyboardInterrupt:
        logger.info("Программа была остановлена пользователем (Ctrl+C)")
        return EXIT_INTERRUPTED
    except BaseException as e:
        logger.opt(exception=e).critical("Программа была неожиданно завершена из-за ошибки")
        return EXIT_FAILED


if __name__ == '__main__':
    sys.exit(main())
