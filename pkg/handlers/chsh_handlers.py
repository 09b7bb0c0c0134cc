"""
@file: handlers/chsh_handlers.py
@description: Команды chsh и clauser-horne
@dependencies: services.bell_model, utils.command_router
@created: 2025-02-13
"""

import argparse

from services.bell_model import chsh, clauser_horne
from utils.command_router import CommandContext, Router
from utils.constants import CANONICAL_CHSH_ANGLES, CommandNames, ExitCodes
from utils.logger import engine_logger
from utils.validators import angle_argument

router = Router(name="chsh")

COLUMNS = ["quantity", "value"]


def _angle_arguments(parser: argparse.ArgumentParser) -> None:
    a, a_prime, b, b_prime = CANONICAL_CHSH_ANGLES
    parser.add_argument("--a", type=angle_argument, default=a, help="Угол a (по умолчанию 0)")
    parser.add_argument("--a-prime", type=angle_argument, default=a_prime, help="Угол a′ (π/2)")
    parser.add_argument("--b", type=angle_argument, default=b, help="Угол b (π/4)")
    parser.add_argument("--b-prime", type=angle_argument, default=b_prime, help="Угол b′ (3π/4)")


def _settings(ctx: CommandContext):
    args = ctx.args
    return args.a, args.a_prime, args.b, args.b_prime


def _parameters(settings) -> dict:
    return dict(zip(("a", "a_prime", "b", "b_prime"), settings))


@router.command(CommandNames.CHSH, help="Корреляторы и S = |E₁ − E₂ + E₃ + E₄|",
                arguments=_angle_arguments)
def chsh_handler(ctx: CommandContext) -> int:
    settings = _settings(ctx)
    result = chsh(ctx.generator, *settings, cfg=ctx.quadrature)
    labels = ("E(a,b)", "E(a,b')", "E(a',b)", "E(a',b')")
    rows = [{"quantity": label, "value": value} for label, value in zip(labels, result.correlators)]
    rows.append({"quantity": "S", "value": result.s_value})

    ctx.emit(COLUMNS, rows, ctx.manifest(_parameters(settings)))
    engine_logger.logger.info(f"CHSH: S={result.s_value:.12g}")
    return ExitCodes.SUCCESS


@router.command(CommandNames.CLAUSER_HORNE,
                help="Комбинация Клаузера–Хорна по P₊₊ и маргиналам",
                arguments=_angle_arguments)
def clauser_horne_handler(ctx: CommandContext) -> int:
    settings = _settings(ctx)
    result = clauser_horne(ctx.generator, *settings, cfg=ctx.quadrature)
    labels = ("P++(a,b)", "P++(a,b')", "P++(a',b)", "P++(a',b')")
    rows = [{"quantity": label, "value": value} for label, value in zip(labels, result.joint_plus)]
    rows.extend([
        {"quantity": "P1+(a')", "value": result.marginal_first},
        {"quantity": "P2+(b)", "value": result.marginal_second},
        {"quantity": "CH", "value": result.ch_value},
    ])

    ctx.emit(COLUMNS, rows, ctx.manifest(_parameters(settings)))
    if result.violates_bounds:
        engine_logger.log_warning(f"CH={result.ch_value:.12g} вне [−1, 0]")
    return ExitCodes.SUCCESS
