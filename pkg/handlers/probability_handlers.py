"""
@file: handlers/probability_handlers.py
@description: Команда probabilities: таблица совместных вероятностей интеграл/замкнутая форма
@dependencies: numpy, services.bell_model, utils.command_router
@created: 2025-02-13
"""

import argparse
import math

import numpy as np

from services.bell_model import Outcome, joint_probabilities, joint_probability_closed
from utils.command_router import CommandContext, Router
from utils.constants import CommandNames, ExitCodes, PROBABILITY_CHECK_TOLERANCE
from utils.errors import UsageError
from utils.logger import engine_logger
from utils.validators import CliValidators, angle_argument

router = Router(name="probabilities")

COLUMN_KEYS = {
    Outcome.PP: "p_pp",
    Outcome.PM: "p_pm",
    Outcome.MP: "p_mp",
    Outcome.MM: "p_mm",
}

COLUMNS = ["delta"] + [
    f"{key}_{kind}" for key in COLUMN_KEYS.values() for kind in ("integral", "closed")
] + ["max_abs_delta"]


def _arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--grid-points", type=int, default=37,
                        help="Число точек сетки β−α на [0, π] (≥ 2)")
    parser.add_argument("--alpha", type=angle_argument, default=0.0,
                        help="Угол первого детектора α (по умолчанию 0)")


@router.command(CommandNames.PROBABILITIES,
                help="Таблица P₊₊, P₊₋, P₋₊, P₋₋ по сетке β−α ∈ [0, π]",
                arguments=_arguments)
def probabilities_handler(ctx: CommandContext) -> int:
    """
    Табулирование вероятностей

    Каждая строка: интегральное значение и замкнутая форма для четырех
    исходов и max|Δ| между ними. Это таблица, а не проверка: код выхода 0.
    """
    check = CliValidators.validate_min_int(ctx.args.grid_points, 2, "--grid-points")
    if not check.is_valid:
        raise UsageError(check.error_message)

    alpha = ctx.args.alpha
    rows = []
    worst = 0.0
    for delta in np.linspace(0.0, math.pi, ctx.args.grid_points):
        delta = float(delta)
        probs = joint_probabilities(ctx.generator, alpha, alpha + delta, ctx.quadrature)
        row = {"delta": delta}
        deviations = []
        for outcome, key in COLUMN_KEYS.items():
            integral = probs.get(outcome)
            closed = joint_probability_closed(outcome, alpha, alpha + delta)
            row[f"{key}_integral"] = integral
            row[f"{key}_closed"] = closed
            deviations.append(abs(integral - closed))
        row["max_abs_delta"] = max(deviations)
        worst = max(worst, row["max_abs_delta"])
        rows.append(row)

    manifest = ctx.manifest({"grid_points": ctx.args.grid_points, "alpha": alpha})
    ctx.emit(COLUMNS, rows, manifest)
    engine_logger.log_result(ctx.command, worst <= PROBABILITY_CHECK_TOLERANCE,
                             f"max|Δ|={worst:.3e}")
    return ExitCodes.SUCCESS
