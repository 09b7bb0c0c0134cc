"""
@file: handlers/generator_handlers.py
@description: Команда generator-dump: таблица (x, f(x), f⁻¹(x)) для графика генератора
@dependencies: numpy, utils.command_router
@created: 2025-02-13
"""

import argparse

import numpy as np

from utils.command_router import CommandContext, Router
from utils.constants import CommandNames, ExitCodes
from utils.errors import UsageError
from utils.validators import CliValidators, angle_argument

router = Router(name="generator")

COLUMNS = ["x", "f", "f_inv"]


def _arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lo", type=angle_argument, default=-2.0, help="Левый край (по умолчанию −2)")
    parser.add_argument("--hi", type=angle_argument, default=2.0, help="Правый край (по умолчанию 2)")
    parser.add_argument("--points", type=int, default=401, help="Число точек (≥ 2)")


@router.command(CommandNames.GENERATOR_DUMP, help="Значения f и f⁻¹ на равномерной сетке",
                arguments=_arguments)
def generator_dump_handler(ctx: CommandContext) -> int:
    args = ctx.args
    for check in (CliValidators.validate_min_int(args.points, 2, "--points"),
                  CliValidators.validate_interval(args.lo, args.hi, "--lo/--hi")):
        if not check.is_valid:
            raise UsageError(check.error_message)

    xs = np.linspace(args.lo, args.hi, args.points)
    forward = np.atleast_1d(ctx.generator.forward(xs))
    inverse = np.atleast_1d(ctx.generator.inverse(xs))
    rows = [
        {"x": float(x), "f": float(fx), "f_inv": float(gx)}
        for x, fx, gx in zip(xs, forward, inverse)
    ]
    manifest = ctx.manifest({"lo": args.lo, "hi": args.hi, "points": args.points}, quadrature=False)
    ctx.emit(COLUMNS, rows, manifest)
    return ExitCodes.SUCCESS
