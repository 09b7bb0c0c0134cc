"""
@file: main.py
@description: Точка входа CLI движка неньютоновского исчисления и модели Белла
@dependencies: argparse, pydantic, config, utils, handlers, services
@created: 2024-01-15
"""

import argparse
import sys
from typing import List, Optional

from pydantic import ValidationError

from config import config
from handlers import (
    chsh_router,
    generator_router,
    linearity_router,
    mc_router,
    probability_router,
    verify_router,
)
from services.generator import generator_registry
from utils.command_router import CommandContext, Dispatcher
from utils.constants import ExitCodes
from utils.errors import EngineError, UnknownGeneratorError, UsageError
from utils.logger import engine_logger, setup_logging
from utils.output_writer import output_writer
from utils.validators import CliValidators

PROG = "nonnewton"
DESCRIPTION = (
    "Недиофантова арифметика, неньютоновское исчисление и модель "
    "скрытых параметров синглетного состояния (CHSH)"
)


def build_dispatcher() -> Dispatcher:
    """Регистрация роутеров в порядке вывода справки"""
    dispatcher = Dispatcher()
    dispatcher.include_router(probability_router)
    dispatcher.include_router(chsh_router)
    dispatcher.include_router(linearity_router)
    dispatcher.include_router(generator_router)
    dispatcher.include_router(mc_router)
    dispatcher.include_router(verify_router)
    return dispatcher


def common_arguments() -> argparse.ArgumentParser:
    """Флаги, общие для всех команд"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--generator", default=None,
                        help="Имя генератора (paper-sin2, identity или псевдоним)")
    common.add_argument("--tolerance", type=float, default=None,
                        help="Абсолютный допуск квадратуры в r-области (1e-10)")
    common.add_argument("--format", default=None, help="csv или json (по умолчанию csv)")
    common.add_argument("--out", default=None, help="Файл результата (по умолчанию stdout)")
    common.add_argument("--seed", type=int, default=None, help="Зерно Монте-Карло (42)")
    common.add_argument("--config", default=None, help="Файл настроек ключ=значение")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING или ERROR")
    return common


def _checked(result, error_type=UsageError):
    if not result.is_valid:
        raise error_type(result.error_message)
    return result.cleaned_value


def build_context(args: argparse.Namespace) -> CommandContext:
    """
    Собрать контекст команды из флагов и файла настроек

    Raises:
        UsageError: Некорректные флаги или файл настроек
        UnknownGeneratorError: Неизвестное имя генератора
    """
    if config.errors:
        raise UsageError("; ".join(config.errors))
    config.apply_aliases(generator_registry)

    fmt = _checked(CliValidators.validate_format(args.format or config.output.format))
    output_writer.digits = config.output.significant_digits
    tolerance = None
    if args.tolerance is not None:
        tolerance = _checked(CliValidators.validate_tolerance(args.tolerance))
    seed = config.monte_carlo.seed if args.seed is None else args.seed
    seed = _checked(CliValidators.validate_seed(seed))

    generator = generator_registry.get(args.generator or config.default_generator)
    return CommandContext(
        command=args.command,
        args=args,
        generator=generator,
        quadrature=config.quadrature.to_config(tolerance),
        fmt=fmt,
        out=args.out,
        seed=seed,
    )


def run(argv: Optional[List[str]] = None) -> int:
    """
    Выполнить команду CLI

    Args:
        argv: Аргументы без имени программы (по умолчанию sys.argv[1:])

    Returns:
        int: 0 - успех, 1 - проверка не пройдена, 2 - ошибка использования
    """
    dispatcher = build_dispatcher()
    parser = dispatcher.build_parser(PROG, DESCRIPTION, common_arguments())
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return int(exit_request.code or 0)

    config.load(args.config)
    setup_logging(log_file=config.logging.file, log_level=args.log_level or config.logging.level)
    config.report()

    try:
        ctx = build_context(args)
        engine_logger.log_command(ctx.command, ctx.generator.name)
        return dispatcher.dispatch(ctx)
    except (UsageError, UnknownGeneratorError) as error:
        engine_logger.log_error(error, f"в аргументах команды {args.command}")
        return ExitCodes.USAGE_ERROR
    except ValidationError as error:
        engine_logger.log_error(error, f"в параметрах команды {args.command}")
        return ExitCodes.USAGE_ERROR
    except EngineError as error:
        engine_logger.log_error(error, f"при выполнении команды {args.command}")
        return ExitCodes.VERIFICATION_FAILED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
