"""Formal-algebra tests for the umbral interpreter."""

import random
from fractions import Fraction

import pytest

from lmpoly import families, umbral
from lmpoly.errors import DegreeCapExceeded
from lmpoly.umbral import (JHAT, M_STATE, QHAT, UmbralExpr, X, apply_derivative_x,
                           apply_multiplicative, evaluate, umul, upow)


def rand_expr(rng, max_terms=4, max_exp=2):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        key = (rng.randint(0, max_exp), rng.randint(0, max_exp), rng.randint(0, max_exp))
        terms[key] = terms.get(key, 0) + Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return UmbralExpr(terms)


def test_exponent_law():
    for p in range(0, 31, 3):
        for q in range(0, 31, 4):
            prod = umul(upow(JHAT, p), upow(JHAT, q))
            assert prod.terms == {(0, 0, p + q): 1}


def test_distributivity_example():
    left = X + QHAT
    right = X - JHAT
    got = umul(left, right)
    assert got.terms == {(2, 0, 0): 1, (1, 0, 1): -1, (1, 1, 0): 1, (0, 1, 1): -1}


def test_trinomial_square():
    got = upow(M_STATE, 2)
    want = {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1,
            (1, 1, 0): 2, (1, 0, 1): -2, (0, 1, 1): -2}
    assert got.terms == want


def test_pow_zero_and_one():
    assert upow(M_STATE, 0).terms == {(0, 0, 0): 1}
    assert upow(M_STATE, 1).terms == {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): -1}


def test_term_count_bound():
    for n in (3, 7, 12):
        assert len(upow(M_STATE, n).terms) <= (n + 1) * (n + 2) // 2


def test_degree_cap():
    with pytest.raises(DegreeCapExceeded):
        upow(M_STATE, 65)
    with pytest.raises(DegreeCapExceeded):
        apply_multiplicative(upow(M_STATE, 64))


def test_ring_laws_random():
    rng = random.Random(42)
    for _ in range(40):
        a, b, c = (rand_expr(rng) for _ in range(3))
        assert umul(a, b) == umul(b, a)
        assert umul(umul(a, b), c) == umul(a, umul(b, c))
        assert umul(a, b + c) == umul(a, b) + umul(a, c)


def test_zero_terms_pruned():
    e = UmbralExpr({(1, 0, 0): 1}) - UmbralExpr({(1, 0, 0): 1})
    assert e.terms == {}
    assert not e


def test_dump_golden():
    got = upow(M_STATE, 2).dump()
    assert got == "\n".join([
        "1 x^0 q^0 J^2",
        "-2 x^0 q^1 J^1",
        "1 x^0 q^2 J^0",
        "-2 x^1 q^0 J^1",
        "2 x^1 q^1 J^0",
        "1 x^2 q^0 J^0",
    ])


def test_derivative_rules():
    assert apply_derivative_x(UmbralExpr({(2, 0, 0): 1})).terms == {(1, 0, 0): 2}
    assert apply_derivative_x(UmbralExpr({(0, 1, 1): 1})).terms == {}
    for n in range(1, 9):
        got = apply_derivative_x(upow(M_STATE, n))
        assert got == n * upow(M_STATE, n - 1)


def test_raising_is_power_step():
    for n in range(0, 9):
        assert apply_multiplicative(upow(M_STATE, n)) == upow(M_STATE, n + 1)


class TestEvaluate:
    def test_j_vacuum_alone(self):
        assert evaluate(UmbralExpr({(0, 0, 0): 1}), 1, families.truncated_exp(),
                        Fraction(0), Fraction(0)) == Fraction(1, 2)

    def test_q_vacuum_alone(self):
        # phi_2(3) = 2! * 9 = 18 for the truncated-exponential law; the
        # J-vacuum prefix contributes C_0(1) = 1/2 on every term, J-free ones
        # included (otherwise evaluation would not match the series route)
        got = evaluate(UmbralExpr({(0, 2, 0): 1}), 1, families.truncated_exp(),
                       Fraction(0), Fraction(3))
        assert got == 18 * Fraction(1, 2)

    def test_power_state_n1(self):
        got = evaluate(upow(M_STATE, 1), 1, families.truncated_exp(), Fraction(1), Fraction(1))
        assert got == Fraction(11, 12)

    def test_linearity(self):
        rng = random.Random(3)
        fam = families.hermite()
        for _ in range(20):
            a, b = rand_expr(rng), rand_expr(rng)
            x = Fraction(rng.randint(-4, 4), rng.randint(1, 4))
            y = Fraction(rng.randint(-4, 4), rng.randint(1, 4))
            va = evaluate(a, 2, fam, x, y)
            vb = evaluate(b, 2, fam, x, y)
            assert evaluate(a + b, 2, fam, x, y) == va + vb

    def test_monomiality_exact(self):
        fams = [families.gould_hopper(4), families.hermite(), families.laguerre(),
                families.generalized_laguerre(2), families.truncated_exp()]
        x, y = Fraction(2, 3), Fraction(-1, 2)
        for fam in fams:
            for r in (1, 2, 3):
                for n in range(0, 13):
                    sn = upow(M_STATE, n)
                    assert evaluate(apply_multiplicative(sn), r, fam, x, y) == \
                        evaluate(upow(M_STATE, n + 1), r, fam, x, y)
                    if n >= 1:
                        assert evaluate(apply_derivative_x(sn), r, fam, x, y) == \
                            n * evaluate(upow(M_STATE, n - 1), r, fam, x, y)
                    assert evaluate(apply_multiplicative(apply_derivative_x(sn)), r, fam, x, y) == \
                        n * evaluate(sn, r, fam, x, y)
