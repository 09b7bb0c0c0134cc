"""
@file: handlers/linearity_handlers.py
@description: Команда linearity-demo: нарушение обычной линейности интеграла
@dependencies: services.bell_model, services.calculus, utils.command_router
@created: 2025-02-13
"""

import argparse
import math

from services.bell_model import density
from services.calculus import linearity_gap, nn_integral
from utils.command_router import CommandContext, Router
from utils.constants import CommandNames, ExitCodes
from utils.errors import UsageError
from utils.logger import engine_logger
from utils.validators import CliValidators, angle_argument

router = Router(name="linearity")

COLUMNS = ["quantity", "value"]


def _arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--x1", type=angle_argument, default=0.0,
                        help="Нижний предел в r-области (по умолчанию 0)")
    parser.add_argument("--x2", type=angle_argument, default=math.pi / 2,
                        help="Верхний предел в r-области (по умолчанию π/2)")


@router.command(CommandNames.LINEARITY_DEMO,
                help="Зазоры обычной и деформированной линейности для a = b = ρ",
                arguments=_arguments)
def linearity_demo_handler(ctx: CommandContext) -> int:
    """a = b = ρ на [f⁻¹(x1), f⁻¹(x2)]"""
    x1, x2 = ctx.args.x1, ctx.args.x2
    check = CliValidators.validate_interval(x1, x2, "--x1/--x2")
    if not check.is_valid:
        raise UsageError(check.error_message)

    gen = ctx.generator
    rho = density(gen)
    lo, hi = gen.inverse(x1), gen.inverse(x2)
    gaps = linearity_gap(gen, rho, rho, lo, hi, ctx.quadrature)
    single = nn_integral(gen, rho, lo, hi, ctx.quadrature)

    rows = [
        {"quantity": "integral_rho", "value": single},
        {"quantity": "gap_ordinary", "value": gaps.gap_ordinary},
        {"quantity": "gap_deformed", "value": gaps.gap_deformed},
    ]
    ctx.emit(COLUMNS, rows, ctx.manifest({"x1": x1, "x2": x2}))
    engine_logger.logger.info(
        f"Линейность: обычный зазор {gaps.gap_ordinary:.3e}, деформированный {gaps.gap_deformed:.3e}"
    )
    return ExitCodes.SUCCESS
