"""
@file: tests/arithmetic_test.py
@description: Тесты недиофантовой арифметики ⊕ ⊖ ⊙ ⊘ и порядка
@dependencies: pytest, hypothesis, numpy, services.arithmetic
@created: 2025-02-14
"""

import math

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from services.arithmetic import (
    ArithmeticContext,
    Ordering,
    add,
    compare,
    deformed_sum,
    div,
    mul,
    neg,
    sub,
)
from services.generator import identity_generator, paper_generator
from utils.errors import ArithmeticOverflowError, DeformedZeroDivisionError

PAPER_CTX = ArithmeticContext(paper_generator())

values = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)


def _far_from_half_integers(*images: float, margin: float = 1e-4) -> bool:
    """Промежуточные образы не лежат в окрестности полуцелых, где f⁻¹ плоская"""
    return all(abs(2.0 * v - round(2.0 * v)) / 2.0 > margin for v in images)


class TestArithmeticExamples:
    """Опорные значения операций"""

    def test_deformed_constants(self, ctx):
        """Деформированные 0 и 1 совпадают с обычными"""
        assert ctx.zero == 0.0, f"f⁻¹(0) должно быть 0, получено {ctx.zero}"
        assert ctx.one == 1.0, f"f⁻¹(1) должно быть 1, получено {ctx.one}"

    def test_add_examples(self, ctx, identity_ctx):
        assert add(ctx, 0.25, 0.25) == pytest.approx(0.5, abs=1e-12), "0.25 ⊕ 0.25 должно быть 0.5"
        assert add(ctx, 0.3, ctx.zero) == pytest.approx(0.3, abs=1e-12), "x ⊕ 0 должно быть x"
        assert add(identity_ctx, 2.0, 3.0) == 5.0, "При f = id сложение обычное"

    def test_sub_mul_examples(self, ctx):
        assert sub(ctx, 0.5, 0.25) == pytest.approx(0.25, abs=1e-12), "0.5 ⊖ 0.25 должно быть 0.25"
        assert mul(ctx, ctx.one, 0.114924) == pytest.approx(0.114924, abs=1e-12), "1 ⊙ x должно быть x"
        assert mul(ctx, ctx.zero, 0.7) == ctx.zero, "0 ⊙ x должно быть 0"

    def test_context_methods_delegate(self, ctx):
        assert ctx.add(0.25, 0.25) == add(ctx, 0.25, 0.25)
        assert ctx.sub(0.5, 0.25) == sub(ctx, 0.5, 0.25)
        assert ctx.mul(0.3, 0.6) == mul(ctx, 0.3, 0.6)
        assert ctx.div(0.3, 0.6) == div(ctx, 0.3, 0.6)
        assert ctx.compare(0.1, 0.2) is Ordering.LESS

    def test_division_by_deformed_zero(self, ctx, identity_ctx):
        with pytest.raises(DeformedZeroDivisionError):
            div(ctx, 0.3, ctx.zero)
        with pytest.raises(DeformedZeroDivisionError):
            div(identity_ctx, 1.0, 0.0)
        with pytest.raises(ZeroDivisionError):
            div(ctx, 0.3, 0.0)

    def test_overflow(self, identity_ctx):
        with pytest.raises(ArithmeticOverflowError):
            add(identity_ctx, 1e308, 1e308)

    def test_compare_examples(self, ctx, identity_ctx):
        assert compare(ctx, 0.1, 0.2) is Ordering.LESS
        assert compare(ctx, 0.37, 0.37) is Ordering.EQUAL
        assert compare(identity_ctx, 5.0, 3.0) is Ordering.GREATER

    def test_neg_and_deformed_sum(self, ctx):
        """zero ⊖ x и ⊕-свертка"""
        assert add(ctx, 0.3, neg(ctx, 0.3)) == pytest.approx(0.0, abs=1e-12), "x ⊕ (⊖x) должно быть 0"
        assert deformed_sum(ctx, [0.25, 0.25, 0.5]) == pytest.approx(1.0, abs=1e-12)
        forward = deformed_sum(ctx, [0.1, 0.7, 1.3])
        backward = deformed_sum(ctx, [1.3, 0.7, 0.1])
        assert forward == backward, "⊕-свертка не должна зависеть от порядка"

    def test_vectorized_operations(self, ctx):
        xs = np.array([0.1, 0.25, 0.6])
        ys = np.array([0.2, 0.25, 0.3])
        result = add(ctx, xs, ys)
        assert result.shape == xs.shape
        for x, y, r in zip(xs, ys, result):
            assert r == pytest.approx(add(ctx, float(x), float(y)), abs=1e-15), "Векторный ⊕ должен совпадать со скалярным"


class TestArithmeticLaws:
    """Перенесенные законы поля (допуск 1e−9)"""

    def test_identity_laws_on_samples(self, ctx, rng):
        """x ⊕ 0 = x и x ⊙ 1 = x с допуском 1e−12"""
        xs = rng.uniform(-10.0, 10.0, size=1_000)
        assert np.max(np.abs(add(ctx, xs, ctx.zero) - xs)) <= 1e-12, "x ⊕ 0 ≠ x"
        assert np.max(np.abs(mul(ctx, xs, ctx.one) - xs)) <= 1e-12, "x ⊙ 1 ≠ x"

    def test_field_laws_on_random_triples(self, ctx, rng):
        """10³ случайных троек: коммутативность, ассоциативность, дистрибутивность"""
        f = ctx.gen.forward
        checked = 0
        for x, y, z in rng.uniform(-10.0, 10.0, size=(1_000, 3)):
            fx, fy, fz = f(x), f(y), f(z)
            if not _far_from_half_integers(fx + fy, fy + fz, fx * fy, fx * fz):
                continue
            checked += 1
            assert abs(add(ctx, x, y) - add(ctx, y, x)) <= 1e-9, f"⊕ некоммутативно на {x}, {y}"
            left = add(ctx, add(ctx, x, y), z)
            right = add(ctx, x, add(ctx, y, z))
            assert abs(left - right) <= 1e-9, f"⊕ неассоциативно на {x}, {y}, {z}"
            distributed = add(ctx, mul(ctx, x, y), mul(ctx, x, z))
            assert abs(mul(ctx, x, add(ctx, y, z)) - distributed) <= 1e-9, \
                f"⊙ не дистрибутивно относительно ⊕ на {x}, {y}, {z}"
        assert checked > 990, "Почти все тройки должны пройти фильтр"

    @settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
    @given(values, values)
    def test_inverse_laws(self, x, y):
        """(x ⊕ y) ⊖ y = x и (x ⊙ y) ⊘ y = x"""
        f = PAPER_CTX.gen.forward
        fx, fy = f(x), f(y)
        assume(_far_from_half_integers(fx + fy, fx * fy))
        assert abs(sub(PAPER_CTX, add(PAPER_CTX, x, y), y) - x) <= 1e-9, "(x ⊕ y) ⊖ y ≠ x"
        assume(abs(fy) >= 0.1)
        assert abs(div(PAPER_CTX, mul(PAPER_CTX, x, y), y) - x) <= 1e-9, "(x ⊙ y) ⊘ y ≠ x"

    @settings(max_examples=200, deadline=None)
    @given(values, values)
    def test_commutativity_property(self, x, y):
        assert add(PAPER_CTX, x, y) == add(PAPER_CTX, y, x), "⊕ должно быть коммутативно"
        assert mul(PAPER_CTX, x, y) == mul(PAPER_CTX, y, x), "⊙ должно быть коммутативно"

    @settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
    @given(values, values)
    def test_order_transport(self, x, y):
        """Для возрастающего f деформированный порядок совпадает с обычным"""
        expected = Ordering.LESS if x < y else Ordering.GREATER if x > y else Ordering.EQUAL
        assume(x == y or abs(x - y) > 1e-12)
        assert compare(PAPER_CTX, x, y) is expected, f"Порядок {x} и {y} не совпадает с обычным"


class TestArithmeticDegeneracy:
    """При f = id операции становятся обычными"""

    def test_identity_generator_matches_classical(self, rng):
        ctx = ArithmeticContext(identity_generator())
        xs = rng.uniform(-10.0, 10.0, size=1_000)
        ys = rng.uniform(-10.0, 10.0, size=1_000)
        ys = np.where(np.abs(ys) < 1e-3, 1.0, ys)
        assert np.max(np.abs(add(ctx, xs, ys) - (xs + ys))) <= 1e-15
        assert np.max(np.abs(sub(ctx, xs, ys) - (xs - ys))) <= 1e-15
        assert np.max(np.abs(mul(ctx, xs, ys) - (xs * ys))) <= 1e-15
        assert np.max(np.abs(div(ctx, xs, ys) - (xs / ys))) <= 1e-15
        assert math.isclose(ctx.zero, 0.0) and math.isclose(ctx.one, 1.0)
