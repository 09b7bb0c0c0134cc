"""
@file: handlers/verify_handlers.py
@description: Команда verify: основные проверки модели одной таблицей
@dependencies: math, numpy, services.*, utils.command_router
@created: 2025-02-14
"""

import math
from typing import Callable, List, NamedTuple

import numpy as np

from services.bell_model import (
    Outcome,
    arc_probability,
    chsh,
    density,
    density_value,
    joint_probabilities,
    reference_probability,
)
from services.calculus import linearity_gap, nn_integral, nn_integral_oracle
from services.generator import Generator
from utils.command_router import CommandContext, Router
from utils.constants import (
    CANONICAL_CHSH_ANGLES,
    CommandNames,
    ExitCodes,
    GeneratorNames,
    PROBABILITY_CHECK_TOLERANCE,
    TWO_PI,
)
from utils.logger import engine_logger

router = Router(name="verify")

COLUMNS = ["check", "value", "expected", "abs_delta", "tolerance", "passed"]

# Число точек сетки β−α на [0, π]
GRID_POINTS = 37

# Значение ρ, приведенное для sin²/arcsin генератора
PAPER_DENSITY = 0.114924


class Check(NamedTuple):
    name: str
    value: float
    expected: float
    tolerance: float

    @property
    def abs_delta(self) -> float:
        return abs(self.value - self.expected)

    @property
    def passed(self) -> bool:
        return self.abs_delta <= self.tolerance


def _grid() -> List[float]:
    return [float(d) for d in np.linspace(0.0, math.pi, GRID_POINTS)]


def _reference_correlator(gen: Generator, alpha: float, beta: float) -> float:
    p = {o: reference_probability(gen, o, alpha, beta) for o in Outcome}
    return p[Outcome.PP] + p[Outcome.MM] - p[Outcome.PM] - p[Outcome.MP]


def _max_over_grid(func: Callable[[float], float]) -> float:
    return max(func(d) for d in _grid())


def collect_checks(ctx: CommandContext) -> List[Check]:
    """
    Основные проверки для выбранного генератора

    Ожидаемые значения берутся из маршрута f⁻¹(доли окружности), который
    для paper-sin2 совпадает с тригонометрическими замкнутыми формами.
    """
    gen, cfg = ctx.generator, ctx.quadrature
    checks: List[Check] = []

    expected_rho = PAPER_DENSITY if gen.name == GeneratorNames.PAPER_SIN2 else gen.inverse(1.0 / TWO_PI)
    checks.append(Check("density_value", density_value(gen), expected_rho, 1e-6))

    quarters = np.arange(-40, 41) / 4.0
    fixed = float(np.max(np.abs(np.concatenate([gen.forward(quarters) - quarters,
                                                 gen.inverse(quarters) - quarters]))))
    checks.append(Check("quarter_integer_fixed_points", fixed, 0.0, 1e-13))

    rho = density(gen)
    upper = gen.inverse(TWO_PI)
    normalization = nn_integral(gen, rho, 0.0, upper, cfg)
    checks.append(Check("normalization", normalization, gen.inverse(1.0), 1e-9))

    arc_error = _max_over_grid(
        lambda d: abs(arc_probability(gen, 0.0, d, cfg) - gen.inverse(d / TWO_PI))
    )
    checks.append(Check("arc_probability_grid", arc_error, 0.0, PROBABILITY_CHECK_TOLERANCE))

    def joint_error(d: float) -> float:
        probs = joint_probabilities(gen, 0.0, d, cfg)
        return max(abs(probs.get(o) - reference_probability(gen, o, 0.0, d)) for o in Outcome)

    checks.append(Check("joint_probability_grid", _max_over_grid(joint_error), 0.0,
                        PROBABILITY_CHECK_TOLERANCE))

    total_error = _max_over_grid(lambda d: abs(joint_probabilities(gen, 0.0, d, cfg).total - 1.0))
    checks.append(Check("normalization_grid", total_error, 0.0, 1e-9))

    a, a_prime, b, b_prime = CANONICAL_CHSH_ANGLES
    s_value = chsh(gen, a, a_prime, b, b_prime, cfg).s_value
    e = [_reference_correlator(gen, *pair) for pair in ((a, b), (a, b_prime), (a_prime, b), (a_prime, b_prime))]
    checks.append(Check("chsh_canonical", s_value, abs(e[0] - e[1] + e[2] + e[3]), 1e-7))

    gaps = linearity_gap(gen, rho, rho, 0.0, gen.inverse(math.pi / 2), cfg)
    checks.append(Check("linearity_gap_deformed", gaps.gap_deformed, 0.0, 1e-9))

    oracle = nn_integral_oracle(gen, rho, 0.0, upper, cfg)
    checks.append(Check("oracle_normalization", oracle, normalization, 1e-5))
    return checks


@router.command(CommandNames.VERIFY, help="Сводная проверка модели (код выхода 1 при провале)")
def verify_handler(ctx: CommandContext) -> int:
    checks = collect_checks(ctx)
    rows = [
        {"check": c.name, "value": c.value, "expected": c.expected,
         "abs_delta": c.abs_delta, "tolerance": c.tolerance, "passed": c.passed}
        for c in checks
    ]
    ctx.emit(COLUMNS, rows, ctx.manifest({"grid_points": GRID_POINTS}))

    failed = [c.name for c in checks if not c.passed]
    engine_logger.log_result(ctx.command, not failed, ", ".join(failed))
    return ExitCodes.VERIFICATION_FAILED if failed else ExitCodes.SUCCESS
