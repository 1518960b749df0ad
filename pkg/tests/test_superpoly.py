from fractions import Fraction

import pytest
from hypothesis import given

from superjacobi.errors import ChartError, ParityError
from superjacobi.superpoly import MIXED, Chart, Parity, SuperPolynomial, grade_info, left_partial, linear_combine, mul

from conftest import draw, draw_many, seeds


def test_parity_addition_is_mod_two():
    assert Parity.ODD + Parity.ODD == Parity.EVEN
    assert Parity.of("odd") == Parity.ODD
    assert Parity.of(3) == Parity.ODD
    assert Parity.ODD.sign() == -1


def test_chart_rejects_duplicate_names():
    with pytest.raises(ChartError):
        Chart([("x", 0), ("x", 1)])


def test_chart_indexing(grass):
    assert grass.index("theta2") == 3
    assert grass["theta2"].index == 3
    assert grass.odd_indices == (2, 3, 4)
    with pytest.raises(ChartError):
        grass.index("nope")


def test_linear_combine_examples(grass):
    x, t1, t2 = grass.var("x"), grass.var("theta1"), grass.var("theta2")
    f = x * x + t1 * t2
    assert linear_combine((1, -1), (f, f)).is_zero()
    assert linear_combine((2,), (x,)) == x.scale(2)
    assert linear_combine((1, 1), (t1 * t2, t2 * t1)).is_zero()


def test_linear_combine_chart_mismatch(grass):
    other = Chart([("x", 0)])
    with pytest.raises(ChartError):
        linear_combine((1, 1), (grass.var("x"), other.var("x")))


def test_mul_examples(grass):
    x, t1, t2 = grass.var("x"), grass.var("theta1"), grass.var("theta2")
    assert (t1 * t1).is_zero()
    assert t2 * t1 == -(t1 * t2)
    assert (x + t1 * t2) * x == x * x + x * t1 * t2


def test_mul_chart_mismatch(grass):
    with pytest.raises(ChartError):
        mul(grass.var("x"), Chart([("x", 0)]).var("x"))


def test_left_partial_examples(grass):
    x, t1, t2 = grass.var("x"), grass.var("theta1"), grass.var("theta2")
    assert left_partial(t1 * t2, "theta1") == t2
    assert left_partial(t1 * t2, "theta2") == -t1
    assert left_partial(x * x * t1, "x") == (x * t1).scale(2)
    with pytest.raises(ChartError):
        left_partial(x, "z")


def test_grade_info_examples(grass):
    x, t1 = grass.var("x"), grass.var("theta1")
    assert grade_info(x * t1) == (Parity.ODD, 3)
    assert grade_info(x + t1) == (MIXED, MIXED)
    assert grade_info(grass.zero()) == (Parity.EVEN, 0)
    with pytest.raises(ParityError):
        (x + t1).parity


def test_odd_square_dropped_in_from_terms(grass):
    p = SuperPolynomial.from_terms(grass, [((0, 0, 2, 0, 0), 1), ((1, 0, 0, 0, 0), Fraction(1, 2))])
    assert p == grass.var("x").scale(Fraction(1, 2))


def test_power_and_constants(grass):
    x = grass.var("x")
    assert x ** 0 == 1
    assert (x + 1) ** 2 == x * x + x.scale(2) + 1
    assert (x - x) == 0
    assert (x * 0).is_zero()


def test_extend_and_restrict(grass):
    small = Chart([("x", 0, 1), ("y", 0, 0)])
    f = small.var("x") * small.var("y")
    big = f.extend(grass)
    assert big == grass.var("x") * grass.var("y")
    assert big.restrict(small) == f
    with pytest.raises(ChartError):
        grass.var("theta1").restrict(small)


@given(seeds)
def test_mul_associative(grass, seed):
    f, g, h = draw_many(grass, seed, 3)
    assert (f * g) * h == f * (g * h)


@given(seeds)
def test_supercommutative(grass, seed):
    f, g = draw_many(grass, seed, 2)
    sign = -1 if int(f.parity) * int(g.parity) else 1
    assert f * g - (g * f).scale(sign) == 0


@given(seeds)
def test_left_partial_leibniz(grass, seed):
    f, g = draw_many(grass, seed, 2)
    for c in grass:
        sign = -1 if int(c.parity) * int(f.parity) else 1
        lhs = left_partial(f * g, c.name)
        rhs = left_partial(f, c.name) * g + (f * left_partial(g, c.name)).scale(sign)
        assert lhs == rhs


@given(seeds)
def test_grading_additive(grass, seed):
    f, g = draw_many(grass, seed, 2)
    for p in (f, g):
        assert grade_info(p)[0] is not MIXED
    fg = f * g
    if fg:
        assert grade_info(fg)[0] == f.parity + g.parity
        for wf, pf in f.weight_parts().items():
            for wg, pg in g.weight_parts().items():
                prod = pf * pg
                if prod:
                    assert grade_info(prod)[1] == wf + wg


@given(seeds)
def test_odd_second_derivatives_anticommute(grass, seed):
    f = draw(grass, seed)
    for i in grass.odd_indices:
        for j in grass.odd_indices:
            assert left_partial(left_partial(f, j), i) == -left_partial(left_partial(f, i), j)
