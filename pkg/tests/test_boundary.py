import random
from fractions import Fraction

import numpy as np
import pytest

import bnpick as b
from bnpick.boundary import LimitKind

from conftest import rf, unique_solution

F = Fraction


class TestNtLimit:
    def test_value_at_regular_point(self):
        est = b.nt_limit(unique_solution(), -0.5, LimitKind.VALUE)
        assert est.is_finite and abs(est.value) < 1e-9

    def test_derivative(self):
        est = b.nt_limit(unique_solution(), -0.5, LimitKind.DERIVATIVE)
        assert est.is_finite and abs(est.value - (-1.0)) < 1e-9

    def test_residual_at_pole(self):
        est = b.nt_limit(unique_solution(), 0.5, LimitKind.RESIDUAL)
        assert est.is_finite and abs(est.value - 1.0) < 1e-9

    def test_kernel_diagonal_of_identity(self):
        est = b.nt_limit(rf((0, 1)), 3.0, LimitKind.KERNEL_DIAGONAL)
        assert est.is_finite and abs(est.value - 1.0) < 1e-9

    def test_value_blowup_is_infinite(self):
        est = b.nt_limit(rf((1,), (0, 1)), 0.0, LimitKind.VALUE)
        assert est.is_infinite

    def test_double_pole_kernel_diagonal_infinite(self):
        est = b.nt_limit(rf((-1,), (0, 1)), 0.0, LimitKind.KERNEL_DIAGONAL)
        assert est.is_infinite

    def test_richardson_matches_exact_evaluation(self):
        rng = random.Random(43)
        done = 0
        while done < 20:
            num = b.Polynomial([F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4)])
            den = b.Polynomial([F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)])
            if num.is_zero or den.is_zero:
                continue
            f = b.RationalFunction(num, den)
            x0 = F(rng.randint(-6, 6), 2)
            try:
                expected = complex(f.eval(x0))
            except b.PoleError:
                continue
            est = b.nt_limit(f, x0, LimitKind.VALUE)
            assert est.is_finite
            assert abs(est.value - expected) <= 1e-9 * max(1.0, abs(expected))
            done += 1


class TestCaratheodoryJulia:
    def test_identity_function(self):
        rep = b.caratheodory_julia_check(rf((0, 1)), 0.0)
        assert rep.theorem == "bounded" and rep.consistent
        for est in rep.estimates.values():
            assert abs(est.value - 1.0) < 1e-7

    def test_unique_solution_at_regular_node(self):
        rep = b.caratheodory_julia_check(unique_solution(), -0.5)
        assert rep.theorem == "bounded" and rep.consistent
        assert rep.max_discrepancy < 1e-7
        for est in rep.estimates.values():
            assert abs(est.value - (-1.0)) < 1e-7

    def test_negative_reciprocal_unbounded_route(self):
        rep = b.caratheodory_julia_check(rf((-1,), (0, 1)), 0.0)
        assert rep.theorem == "unbounded" and rep.consistent
        assert rep.max_discrepancy < 1e-7
        for est in rep.estimates.values():
            assert abs(est.value - (-1.0)) < 1e-7

    def test_kernel_diagonal_nonnegative_for_nevanlinna(self):
        # kernel diagonals of Nevanlinna functions have nonnegative limits
        samples = (rf((0, 1)), rf((2, 1)), rf((-1,), (0, 1)), rf((-1, 2), (0, 1)))
        for f in samples:
            for x0 in (-1.5, 0.25, 2.0):
                est = b.nt_limit(f, x0, LimitKind.KERNEL_DIAGONAL)
                assert est.is_infinite or est.value.real >= -1e-9

    def test_residual_nonpositive_for_nevanlinna(self):
        samples = (rf((0, 1)), rf((-1,), (0, 1)), rf((-1, 2), (0, 1)), rf((2, 1)))
        for f in samples:
            for x0 in (-1.0, 0.0, 0.5):
                est = b.nt_limit(f, x0, LimitKind.RESIDUAL)
                assert est.is_finite
                assert est.value.real <= 1e-9


class TestKernelNegativeSquares:
    def test_identity_is_positive(self):
        assert b.kernel_negative_squares(rf((0, 1))) == 0

    def test_unique_solution_has_one(self):
        assert b.kernel_negative_squares(unique_solution()) == 1

    def test_negative_reciprocal_is_positive(self):
        assert b.kernel_negative_squares(rf((-1,), (0, 1))) == 0


class TestFmiCheck:
    def test_degenerate_solution_reaches_kappa(self, sys3):
        assert b.fmi_check(sys3, unique_solution()) == 1

    def test_transform_of_infinity(self, sys1):
        assert b.fmi_check(sys1, rf((0, 1))) == 1

    def test_one_point_section_matches_hand_computation(self, sys1):
        # bordering P with the single point z: section [[-1,1,1],[1,1,1],[1,1,1]]
        z = 1j
        w = rf((0, 1))
        full = np.array([[-1, 1, 1], [1, 1, 1], [1, 1, 1]], dtype=complex)
        col = (complex(w.eval(z)) * np.array([1.0, 1.0]) - np.array([0.0, 1.0])) / (
            z - np.array([0.0, 1.0])
        )
        assert np.allclose(col, [1.0, 1.0])
        kernel_diag = (complex(w.eval(z)) - complex(w.eval(z)).conjugate()) / (z - z.conjugate())
        assert abs(kernel_diag - 1.0) < 1e-15
        eigs = np.linalg.eigvalsh(full)
        assert (eigs < -1e-9).sum() == 1 and (np.abs(eigs) <= 1e-9).sum() == 1

    def test_non_solution_exceeds_kappa(self, sys1):
        assert b.fmi_check(sys1, rf((0, -1))) >= 2


class TestCayleyTransform:
    def test_constant_zero(self):
        assert b.cayley_transform(rf((0,), (1,))) == b.RationalFunction.constant(-1)

    def test_identity_maps_to_identity(self):
        assert b.cayley_transform(rf((0, 1))) == rf((0, 1))

    def test_infinite_parameter_maps_to_one(self):
        assert b.cayley_transform(b.Parameter.infinity()) == rf((1,))

    def test_minus_i_rejected(self):
        from bnpick.algebra import GaussianRational

        minus_i = b.RationalFunction.constant(GaussianRational(0, -1))
        with pytest.raises(b.NotNevanlinnaError):
            b.cayley_transform(minus_i)

    def test_conjugation_identity_at_samples(self):
        # S(beta(z)) == beta(w(z)) pointwise off the poles
        rng = random.Random(29)
        for f in (unique_solution(), rf((-1,), (0, 1)), rf((1, 0, 1), (0, 2))):
            s = b.cayley_transform(f)
            for _ in range(10):
                z = complex(rng.uniform(-2, 2), rng.uniform(0.3, 1.5))
                try:
                    wv = complex(f.eval(z))
                    sv = complex(s.eval((z - 1j) / (z + 1j)))
                except b.PoleError:
                    continue
                assert abs(sv - (wv - 1j) / (wv + 1j)) < 1e-9


class TestBlaschkeBoundaryValue:
    def test_single_zero_at_origin(self):
        assert abs(b.blaschke_boundary_value([0], 1) - 1.0) < 1e-10

    def test_single_zero_half(self):
        assert abs(b.blaschke_boundary_value([0.5], 1) - 3.0) < 1e-8

    def test_double_zero_at_origin(self):
        assert abs(b.blaschke_boundary_value([0, 0], 1j) - 2.0) < 1e-8

    def test_two_distinct_zeros_match_sum_formula(self):
        zeros = [0.5, -1 / 3]
        t0 = 1.0
        expected = sum(
            (1 - abs(c) ** 2) / abs(1 - t0 * complex(c).conjugate()) ** 2 for c in zeros
        )
        assert abs(b.blaschke_boundary_value(zeros, t0) - expected) < 1e-8

    def test_zero_outside_disk_rejected(self):
        with pytest.raises(b.InvalidDataError):
            b.blaschke_boundary_value([1.5], 1)

    def test_off_circle_point_rejected(self):
        with pytest.raises(b.InvalidDataError):
            b.blaschke_boundary_value([0], 0.5)
