import cmath
import math

import pytest

from mpvrel.lincomb import LinComb
from mpvrel.numeric import (
    check_relation,
    dch_numeric,
    eval_composition,
    eval_lincomb,
    eval_word,
)
from mpvrel.words import E1, ZERO

ZETA3 = 1.2020569031595942


def test_zeta_values():
    assert abs(eval_composition(((2, 0),), 1).value - math.pi**2 / 6) < 1e-13
    assert abs(eval_composition(((2, 0), (1, 0)), 1).value - ZETA3) < 1e-13


def test_log2():
    assert abs(eval_composition(((1, 1),), 2).value + math.log(2)) < 1e-13


def test_li2_of_i():
    # Li_2(i) = -pi^2/48 + i G
    G = 0.915965594177219015
    v = eval_composition(((2, 1),), 4).value
    assert abs(v - complex(-math.pi**2 / 48, G)) < 1e-12


@pytest.mark.parametrize("c,N", [(((2, 1),), 4), (((1, 2), (2, 3)), 4), (((3, 1),), 3)])
def test_series_method_agrees(c, N):
    a = eval_composition(c, N).value
    b = eval_composition(c, N, method="series").value
    assert abs(a - b) < 1e-8


def test_divergent_rejected():
    with pytest.raises(ValueError):
        eval_word((E1,), 2)
    with pytest.raises(ValueError):
        eval_composition(((1, 0),), 1)


def test_regularized_values():
    # T = 0: Z(e_1) = Z(e_0) = 0 and Z(e_1 e_0) = -Z(e_0 e_1)
    assert eval_lincomb(LinComb.term((E1,)), 2) == 0
    v = eval_lincomb(LinComb.term((E1, ZERO)), 1)
    assert abs(v - math.pi**2 / 6) < 1e-12


def test_check_relation_and_dch():
    # zeta(3) = zeta(2,1); depth signs make this a sum of words
    ok, res = check_relation(LinComb({(ZERO, ZERO, E1): 1, (ZERO, E1, E1): 1}), 1)
    assert ok and res < 1e-12
    d = dch_numeric(2, 2)
    assert d[()] == 1 and abs(d[(E1,)]) == 0
