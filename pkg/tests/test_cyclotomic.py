import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from models.cyclotomic import (I_UNIT, OMEGA, ONE, ZERO, CycloMatrix, CycloNumber,
                               multiplicative_order)
from models.numcore import W

fractions_ = st.fractions(min_value=-5, max_value=5, max_denominator=12)
cyclo = st.lists(fractions_, min_size=8, max_size=8).map(CycloNumber)


def test_named_units():
    assert complex(I_UNIT) == pytest.approx(1j)
    assert complex(OMEGA) == pytest.approx(complex(-0.5, math.sqrt(3) / 2))
    assert OMEGA ** 3 == ONE
    assert I_UNIT ** 2 == -ONE
    assert OMEGA ** 2 + OMEGA + 1 == ZERO


@pytest.mark.parametrize('r', [Fraction(1, 12), Fraction(-5, 6), Fraction(7, 24), Fraction(3, 2)])
def test_exp2pi_matches_complex(r):
    assert complex(CycloNumber.exp2pi(r)) == pytest.approx(cmath.exp(2j * math.pi * float(r)))


def test_exp2pi_rejects_foreign_roots():
    with pytest.raises(ValueError):
        CycloNumber.exp2pi(Fraction(1, 5))


@settings(max_examples=40, deadline=None)
@given(cyclo, cyclo)
def test_field_operations_agree_with_complex(x, y):
    assert complex(x + y) == pytest.approx(complex(x) + complex(y), abs=1e-9)
    assert complex(x * y) == pytest.approx(complex(x) * complex(y), abs=1e-8)


@settings(max_examples=25, deadline=None)
@given(cyclo.filter(lambda x: not x.is_zero()))
def test_inverse(x):
    assert x * x.inverse() == ONE
    assert x.norm() != 0


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_multiplicative_order():
    assert multiplicative_order(8) == 3
    assert multiplicative_order(6) == 4
    assert multiplicative_order(0) == 1
    assert multiplicative_order(1) == 24


def test_matrix_inverse_and_det():
    m = CycloMatrix(OMEGA, 2, I_UNIT, ONE - OMEGA)
    assert m @ m.inverse() == CycloMatrix.identity()
    assert complex(m.det()) == pytest.approx(complex(OMEGA) * (1 - complex(OMEGA)) - 2j)


def test_split_scalar_prefers_small_order():
    m = CycloMatrix.from_int(W) * OMEGA ** 2
    k, g = m.split_scalar()
    assert k == 16
    assert (g == W).all()


def test_split_scalar_none_for_non_integral():
    assert CycloMatrix(Fraction(1, 2), 0, 0, 2).split_scalar() is None
