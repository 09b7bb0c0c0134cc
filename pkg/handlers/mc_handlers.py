"""
@file: handlers/mc_handlers.py
@description: Команда mc-verify: частоты Монте-Карло против замкнутой формы с границей kσ
@dependencies: math, config, services.bell_model, services.monte_carlo, utils.command_router
@created: 2025-02-13
"""

import argparse
import math

from config import config
from services.bell_model import Outcome, mc_counts, mc_sigma_bound, reference_probability
from services.monte_carlo import McConfig
from utils.command_router import CommandContext, Router
from utils.constants import CommandNames, ExitCodes, MC_SIGMA_MULTIPLIER
from utils.errors import UsageError
from utils.logger import engine_logger
from utils.validators import CliValidators, angle_list_argument

router = Router(name="monte_carlo")

COLUMNS = ["outcome", "delta", "mc", "closed", "abs_delta", "sigma_bound", "passed"]

DEFAULT_ANGLES = "0,pi/4,pi/2,3pi/4,pi"


def _arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--samples", type=int, default=None,
                        help="Число испытаний на угол (по умолчанию из настроек, 10^6)")
    parser.add_argument("--angles", type=angle_list_argument, default=angle_list_argument(DEFAULT_ANGLES),
                        help=f"Значения β−α через запятую (по умолчанию {DEFAULT_ANGLES})")
    parser.add_argument("--outcomes", default="++,+-,-+,--",
                        help="Исходы через запятую (по умолчанию все четыре)")
    parser.add_argument("--partitions", type=int, default=None,
                        help="Число независимых потоков (влияет на выборку)")
    parser.add_argument("--workers", type=int, default=None,
                        help="Число рабочих потоков (на результат не влияет, по умолчанию 1)")


@router.command(CommandNames.MC_VERIFY, help="Проверка Монте-Карло: |Δ| ≤ 5σ для каждого исхода",
                arguments=_arguments)
def mc_verify_handler(ctx: CommandContext) -> int:
    """
    Строки (исход, β−α, mc, closed, |Δ|, граница σ)

    closed = f⁻¹(доли пересечения окон), для paper-sin2 это
    тригонометрическая замкнутая форма. Код выхода 1, если хотя бы
    одно |Δ| превышает границу.
    """
    args = ctx.args
    samples = config.monte_carlo.samples if args.samples is None else args.samples
    partitions = config.monte_carlo.partitions if args.partitions is None else args.partitions
    workers = config.monte_carlo.workers if args.workers is None else args.workers
    for check in (CliValidators.validate_min_int(samples, 1, "--samples"),
                  CliValidators.validate_min_int(partitions, 1, "--partitions"),
                  CliValidators.validate_min_int(workers, 1, "--workers")):
        if not check.is_valid:
            raise UsageError(check.error_message)

    try:
        outcomes = [Outcome.parse(item) for item in args.outcomes.split(",")]
    except ValueError as error:
        raise UsageError(str(error)) from error

    mc = McConfig(samples=samples, seed=ctx.seed, partitions=partitions, workers=workers)
    gen = ctx.generator

    rows = []
    all_passed = True
    for delta in args.angles:
        counts = mc_counts(gen, 0.0, delta, mc)
        for outcome in outcomes:
            estimate = gen.inverse(counts[outcome] / samples)
            closed = reference_probability(gen, outcome, 0.0, delta)
            bound = mc_sigma_bound(gen, outcome, 0.0, delta, samples, MC_SIGMA_MULTIPLIER)
            abs_delta = abs(estimate - closed)
            passed = abs_delta <= bound or math.isclose(abs_delta, bound, abs_tol=1e-15)
            all_passed &= passed
            rows.append({
                "outcome": outcome.value,
                "delta": delta,
                "mc": estimate,
                "closed": closed,
                "abs_delta": abs_delta,
                "sigma_bound": bound,
                "passed": passed,
            })

    manifest = ctx.manifest(
        {"samples": samples, "partitions": partitions, "angles": list(args.angles),
         "outcomes": [o.value for o in outcomes]},
        sampling=True, quadrature=False,
    )
    ctx.emit(COLUMNS, rows, manifest)
    engine_logger.log_result(ctx.command, all_passed, f"seed={ctx.seed}, N={samples}")
    return ExitCodes.SUCCESS if all_passed else ExitCodes.VERIFICATION_FAILED
