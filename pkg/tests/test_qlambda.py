"""q-deformed arithmetic and q-Hermite lambda polynomial tests.

The independent oracle for the hand value is direct Fraction arithmetic on
the q-bracket products, kept free of the library's q-gamma code path.
"""

import math
import random
from fractions import Fraction

import pytest

from lmpoly import families, modes, polynomials, qlambda
from lmpoly.errors import NonpositiveArgument
from lmpoly.matfun import CMatrix
from lmpoly.qlambda import (QContext, nwa_expand, q_binomial, q_bracket, q_factorial, q_gamma,
                            q_gamma_weight, q_hermite, q_hermite_lambda,
                            q_hermite_lambda_coeffs)

HALF = QContext(Fraction(1, 2))


def brackets(q, n):
    """Oracle: [1]_q ... [n]_q as exact Fractions, written out directly."""
    return [Fraction(1 - q ** k, 1 - q) for k in range(1, n + 1)]


class TestBracket:
    def test_one(self):
        for q in (Fraction(1, 2), Fraction(3, 4), 0.37, 1):
            assert q_bracket(1, QContext(q)) == 1

    def test_half_value(self):
        assert q_bracket(3, HALF) == Fraction(7, 4)

    def test_classical_continuity(self):
        ctx = QContext(1 - 1e-8)
        assert abs(q_bracket(5, ctx) - 5) < 1e-6

    def test_q_one_returns_x(self):
        assert q_bracket(Fraction(7, 3), QContext(1)) == Fraction(7, 3)


class TestQGamma:
    def test_base(self):
        assert q_gamma(1, HALF) == 1

    def test_recursion_value(self):
        assert q_gamma(3, HALF) == Fraction(3, 2)

    def test_factorial_identity(self):
        # Gamma_q(n+1) = [n]_q! exactly, n <= 30
        for q in (Fraction(1, 2), Fraction(2, 3)):
            ctx = QContext(q)
            for n in range(31):
                want = math.prod(brackets(q, n)) if n else Fraction(1)
                assert q_gamma(n + 1, ctx) == want
                assert q_factorial(n, ctx) == want

    def test_product_formula_recursion(self):
        ctx = QContext(0.5)
        x = 2.5
        lhs = q_gamma(x + 1, ctx) / q_gamma(x, ctx)
        assert lhs == pytest.approx(float(q_bracket(x, ctx)), rel=1e-12)

    def test_nonpositive(self):
        with pytest.raises(NonpositiveArgument):
            q_gamma(0, HALF)
        with pytest.raises(NonpositiveArgument):
            q_gamma(-2.5, HALF)


class TestQBinomial:
    def test_edges(self):
        for n in range(8):
            assert q_binomial(n, 0, HALF) == 1
            assert q_binomial(n, n, HALF) == 1

    def test_hand_value(self):
        # (1 + q^2)(1 + q + q^2) at q = 1/2
        assert q_binomial(4, 2, HALF) == Fraction(35, 16)
        assert q_binomial(4, 2, HALF) == (1 + Fraction(1, 4)) * (1 + Fraction(1, 2) + Fraction(1, 4))

    def test_classical_limit(self):
        assert q_binomial(4, 2, QContext(1)) == 6

    def test_symmetry_and_pascal(self):
        for q in (Fraction(1, 2), Fraction(5, 7)):
            ctx = QContext(q)
            for n in range(1, 21):
                for k in range(n + 1):
                    assert q_binomial(n, k, ctx) == q_binomial(n, n - k, ctx)
                    if 1 <= k <= n - 1:
                        assert q_binomial(n, k, ctx) == \
                            q_binomial(n - 1, k - 1, ctx) + q ** k * q_binomial(n - 1, k, ctx)

    def test_bad_index(self):
        with pytest.raises(IndexError):
            q_binomial(3, 4, HALF)
        with pytest.raises(IndexError):
            q_binomial(3, -1, HALF)


class TestNwa:
    def test_two_symbols_square(self):
        got = nwa_expand(("a", "b"), 2, HALF)
        assert got == {(2, 0): 1, (1, 1): q_bracket(2, HALF), (0, 2): 1}

    def test_power_zero(self):
        assert nwa_expand(("a", "b"), 0, HALF) == {(0, 0): 1}

    def test_classical_is_multinomial(self):
        ctx = QContext(1)
        got = nwa_expand(("a", "b", "c"), 4, ctx)
        for (i, j, k), c in got.items():
            assert c == math.factorial(4) // (math.factorial(i) * math.factorial(j) * math.factorial(k))

    def test_symbol_count(self):
        with pytest.raises(ValueError):
            nwa_expand(("a",), 2, HALF)


class TestQHermite:
    def test_low_degrees(self):
        x, y = Fraction(3, 2), Fraction(5, 4)
        assert q_hermite(0, x, y, HALF) == 1
        assert q_hermite(1, x, y, HALF) == x

    def test_h2_symbolic(self):
        # H_{2,q} = x^2 + (1+q) y for every q
        for q in (Fraction(1, 2), Fraction(3, 5)):
            ctx = QContext(q)
            x, y = Fraction(2), Fraction(3)
            assert q_hermite(2, x, y, ctx) == x ** 2 + (1 + q) * y

    def test_classical_limit(self):
        ctx = QContext(1 - 1e-6)
        fam = families.hermite()
        got = q_hermite(4, 1.2, 0.8, ctx)
        want = families.general_poly(fam, 4, 1.2, 0.8)
        assert abs(got - want) / abs(want) < 1e-4

    def test_matches_nwa_route(self):
        # (h (+) x)^n with the even/odd vacuum, via nwa_expand directly
        ctx = HALF
        x, y = Fraction(1, 3), Fraction(2)
        for n in range(9):
            acc = 0
            for (r, s), c in nwa_expand(("h", "x"), n, ctx).items():
                acc += c * qlambda._hermite_vacuum(r, ctx, y) * x ** s
            assert acc == q_hermite(n, x, y, ctx)


class TestQHermiteLambda:
    def test_n0(self):
        assert q_hermite_lambda(0, Fraction(1), Fraction(1), 1, HALF) == Fraction(2, 3)

    def test_hand_value_38_105(self):
        got = q_hermite_lambda(1, Fraction(1), Fraction(9), 1, HALF)
        assert got == Fraction(38, 105)

    def test_hand_value_oracle(self):
        # independent q-factorial oracle: 2/3 - Gq(3)/Gq(5) with brackets written out
        q = Fraction(1, 2)
        b = brackets(q, 4)
        g3 = b[0] * b[1]
        g5 = b[0] * b[1] * b[2] * b[3]
        assert g3 / g5 == Fraction(32, 105)
        assert Fraction(2, 3) - g3 / g5 == Fraction(38, 105)

    def test_weight_ratio(self):
        assert q_gamma_weight(1, 0, HALF) == Fraction(2, 3)
        assert q_gamma_weight(1, 1, HALF) == Fraction(32, 105)

    def test_nwa_three_symbol_route(self):
        # series definition vs the grouped ((-J) (+) (x (+) h))^n expansion
        ctx = HALF
        x, y = Fraction(2, 5), Fraction(3, 7)
        for n in range(8):
            acc = 0
            for (j, r, s), c in nwa_expand(("-J", "x", "h"), n, ctx).items():
                acc += (c * (-1) ** j * q_gamma_weight(1, j, ctx)
                        * x ** r * qlambda._hermite_vacuum(s, ctx, y))
            assert acc == q_hermite_lambda(n, x, y, 1, ctx)

    def test_classical_limit_matches_hermite_family(self):
        ctx = QContext(1 - 1e-6)
        fam = families.hermite()
        for r in (1, 2, 15):
            for n in range(9):
                got = q_hermite_lambda(n, 1.1, 0.6, r, ctx)
                want = polynomials.lambda2v_series(n, 1.1, 0.6, r, fam, modes.F64)
                assert abs(got - want) / max(abs(want), 1.0) < 1e-4

    def test_matrix_parameter(self):
        m = CMatrix([[2, 1], [1, 3]])
        got = q_hermite_lambda(2, 0.5, 0.5, m, QContext(0.5))
        assert got.dim == 2
        # q = 1 matrix path agrees with the classical hermite-family value
        got1 = q_hermite_lambda(2, 0.5, 0.5, m, QContext(1))
        want = polynomials.lambda2v_series(2, 0.5, 0.5, m, families.hermite(), modes.F64)
        assert (got1 - want).fro_norm() < 1e-10

    def test_coeffs_match_values(self):
        rng = random.Random(31)
        ctx = HALF
        for n in (0, 1, 5, 9):
            y = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
            cs = q_hermite_lambda_coeffs(n, y, 3, ctx)
            for _ in range(5):
                x = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
                val = sum(c * x ** k for k, c in enumerate(cs))
                assert val == q_hermite_lambda(n, x, y, 3, ctx)
