"""Root finder and dataset pipeline tests."""

import math
import random
from fractions import Fraction

import pytest

from lmpoly import families, modes, polynomials, qlambda, zeros
from lmpoly.errors import DegenerateLeadingCoefficient, LmpError
from lmpoly.zeros import (ZeroSet, real_zeros_table, roots, surface_grid, zero_stacks,
                          zeros_of_lambda, zeros_of_q_hermite_lambda)

TE = families.truncated_exp()


class TestRoots:
    def test_quadratic(self):
        zs = roots([-1, 0, 1])
        assert [round(z.real) for z in zs.roots] == [-1, 1]
        assert max(zs.residuals) <= 1e-8

    def test_pure_power_multiple_root(self):
        zs = roots([0, 0, 0, 1])
        assert zs.roots == (0j, 0j, 0j)

    def test_degenerate_leading(self):
        with pytest.raises(DegenerateLeadingCoefficient):
            roots([1, 2, 0])

    def test_vieta_random(self):
        rng = random.Random(41)
        for _ in range(8):
            n = rng.randint(2, 12)
            cs = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)] + [Fraction(1)]
            if cs[0] == 0:
                cs[0] = Fraction(1, 3)
            zs = roots(cs, 128)
            total = sum(zs.roots)
            prod = 1
            for z in zs.roots:
                prod *= z
            assert abs(total - float(-cs[-2])) <= 1e-6 * max(1, abs(float(cs[-2])))
            want_prod = (-1) ** len(zs.roots) * float(cs[0])
            assert abs(prod - want_prod) <= 1e-6 * max(1, abs(want_prod))

    def test_cluster_reports_multiplicity(self):
        # (x - 1)^3 = -1 + 3x - 3x^2 + x^3
        zs = roots([-1, 3, -3, 1], 192)
        assert len(zs.roots) == 3
        assert all(abs(z - 1) < 1e-5 for z in zs.roots)


class TestZerosOfLambda:
    def test_linear_instance(self):
        zs = zeros_of_lambda(TE, 1, 1, Fraction(1))
        assert len(zs.roots) == 1
        assert zs.roots[0].real == pytest.approx(-5 / 6, abs=1e-12)
        assert zs.roots[0].imag == 0

    def test_n0_empty(self):
        zs = zeros_of_lambda(TE, 0, 1, Fraction(1))
        assert zs.roots == () and zs.residuals == ()

    def test_counts_and_residuals(self):
        zs = zeros_of_lambda(families.gould_hopper(4), 20, 5, Fraction(2))
        assert len(zs.roots) == 20
        assert max(zs.residuals) < 1e-8

    def test_conjugate_closure(self):
        zs = zeros_of_lambda(families.hermite(), 14, 3, Fraction(1))
        rts = sorted(zs.roots, key=lambda z: (z.real, z.imag))
        conj = sorted((z.conjugate() for z in zs.roots), key=lambda z: (z.real, z.imag))
        scale = max(1.0, max(abs(z) for z in rts))
        assert max(abs(a - b) for a, b in zip(rts, conj)) <= 1e-8 * scale

    def test_deterministic_ordering(self):
        a = zeros_of_lambda(TE, 9, 2, Fraction(1, 2))
        b = zeros_of_lambda(TE, 9, 2, Fraction(1, 2))
        assert a.roots == b.roots and a.residuals == b.residuals

    def test_matrix_parameter_rejected(self):
        from lmpoly.matfun import CMatrix
        with pytest.raises(LmpError):
            zeros_of_lambda(TE, 3, CMatrix([[1, 0], [0, 2]]), Fraction(1))

    def test_precision_escalation_monotone(self):
        # doubling the working precision never increases the max residual
        rng = random.Random(43)
        configs = []
        fams = [TE, families.hermite(), families.gould_hopper(4),
                families.generalized_laguerre(2), families.laguerre()]
        for i in range(10):
            configs.append((fams[i % 5], rng.randint(4, 14), rng.randint(1, 6),
                            Fraction(rng.randint(1, 5), rng.randint(1, 3))))
        for fam, n, r, y in configs:
            lo = zeros_of_lambda(fam, n, r, y, 128)
            hi = zeros_of_lambda(fam, n, r, y, 256)
            lo_res = max(lo.residuals, default=0.0)
            hi_res = max(hi.residuals, default=0.0)
            assert hi_res <= lo_res + 1e-30


class TestRealZerosAndStacks:
    def test_degree_one_always_real(self):
        rows = real_zeros_table(TE, 3, Fraction(1), range(1, 2))
        assert len(rows) == 1
        n, x = rows[0]
        assert n == 1
        xp = polynomials.to_xpoly(1, Fraction(1), 3, TE)
        c = xp.scalar_coeffs()
        assert x == pytest.approx(float(-c[0] / c[1]), abs=1e-12)

    def test_real_count_parity(self):
        # real-coefficient instances have real-zero count congruent to n mod 2
        for n in range(1, 10):
            zs = zeros_of_lambda(TE, n, 2, Fraction(1))
            assert (len(zs.real_roots()) - n) % 2 == 0

    def test_stack_rows(self):
        nr = range(1, 7)
        rows = zero_stacks(TE, 1, Fraction(1, 2), nr)
        assert len(rows) == sum(nr)
        slice4 = [r for r in rows if r[0] == 4]
        zs = zeros_of_lambda(TE, 4, 1, Fraction(1, 2))
        assert [(z.real, z.imag) for z in zs.roots] == [(re, im) for _, re, im in slice4]


class TestSurface:
    def test_constant_grid_for_n0(self):
        rows = surface_grid(TE, 0, 2, (-1, 1), (-1, 1), 3)
        vals = {v for _, _, v in rows}
        assert vals == {float(polynomials.matfun.gamma_weight_exact(2, 0))}

    def test_values_match_series(self):
        rows = surface_grid(families.hermite(), 5, 3, (-2, 2), (0, 1), 4)
        for x, y, v in rows[:6]:
            want = polynomials.lambda2v_series(5, x, y, 3, families.hermite(), modes.F64)
            assert v == pytest.approx(want, rel=1e-12)

    def test_q_grid_converges_to_classical(self):
        fam = families.hermite()
        pts = [(-1.0, 0.5), (0.5, 1.0), (2.0, -0.5)]
        for q in (1 - 1e-4, 1 - 1e-6):
            ctx = qlambda.QContext(q)
            for x, y in pts:
                qv = qlambda.q_hermite_lambda(6, x, y, 15, ctx)
                cv = polynomials.lambda2v_series(6, x, y, 15, fam, modes.F64)
                assert abs(qv - cv) / max(abs(cv), 1.0) < 200 * (1 - q)

    def test_q_surface_rows(self):
        rows = zeros.q_surface_grid(3, 2, qlambda.QContext(Fraction(1, 2)), (-1, 1), (-1, 1), 3)
        assert len(rows) == 9


class TestQZeros:
    def test_figure_14_small(self):
        ctx = qlambda.QContext(Fraction(1, 2))
        zs = zeros_of_q_hermite_lambda(12, 4, Fraction(2), ctx)
        assert len(zs.roots) == 12
        assert max(zs.residuals) < 1e-8
