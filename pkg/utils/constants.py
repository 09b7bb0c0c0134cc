"""
@file: utils/constants.py
@description: Константы движка: имена команд, генераторов, форматов и коды выхода
@dependencies: math
@created: 2025-02-10
"""

import math

TOOL_VERSION = "1.0.0"


class GeneratorNames:
    """Имена встроенных генераторов"""

    PAPER_SIN2 = "paper-sin2"   # кусочный sin²/arcsin генератор
    IDENTITY = "identity"       # тождественный, вырожденный случай

    BUILTINS = (PAPER_SIN2, IDENTITY)


class CommandNames:
    """Имена команд CLI"""

    PROBABILITIES = "probabilities"
    CHSH = "chsh"
    CLAUSER_HORNE = "clauser-horne"
    LINEARITY_DEMO = "linearity-demo"
    GENERATOR_DUMP = "generator-dump"
    MC_VERIFY = "mc-verify"
    VERIFY = "verify"


class OutputFormats:
    """Форматы вывода таблиц"""

    CSV = "csv"
    JSON = "json"

    ALL = (CSV, JSON)


class ExitCodes:
    """Коды выхода CLI"""

    SUCCESS = 0
    VERIFICATION_FAILED = 1
    USAGE_ERROR = 2


# === ЧИСЛЕННЫЕ КОНСТАНТЫ ===

TWO_PI = 2.0 * math.pi

# Порог |f(y)| для деформированного деления
DIVISION_ZERO_THRESHOLD = 1e-300

# Допуск подкоренного выражения при выборе куска генератора
RADICAND_SLACK = 1e-12

# Допуск обратимости f∘f⁻¹ (arcsin усиливает ошибку возле подкоренного 1)
ROUND_TRIP_TOLERANCE = 1e-10

# Число значащих цифр в CSV/JSON
SIGNIFICANT_DIGITS = 12

# Порог расхождения интеграл/замкнутая форма для таблиц вероятностей
PROBABILITY_CHECK_TOLERANCE = 1e-8

# Множитель σ в проверке Монте-Карло
MC_SIGMA_MULTIPLIER = 5.0

# Описание генератора псевдослучайных чисел для манифеста
MC_RNG_ALGORITHM = "numpy PCG64, SeedSequence(seed).spawn(partitions)"

# Канонические углы CHSH (a, a', b, b')
CANONICAL_CHSH_ANGLES = (0.0, math.pi / 2, math.pi / 4, 3 * math.pi / 4)
