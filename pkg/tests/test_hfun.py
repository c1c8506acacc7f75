"""H-function machinery: integrand, contours, evaluation, Mellin transform."""

import cmath
import math

import numpy as np
import pytest
import scipy.integrate
from hypothesis import assume, given, settings, strategies as st
from scipy.special import gamma as gamma_fn, gammaincc, hyperu, loggamma

from shiftedgamma.errors import (BranchCutError, NoContourError, PoleError,
                                 StripError)
from shiftedgamma.hfun import (ContourSpec, HParams, eval_h, h_integrand,
                               h_log_integrand, left_pole_max, log_gamma,
                               mellin_h, right_pole_min, select_contour,
                               three_gamma_batch, three_gamma_kernel)

EXP_H = HParams.make(1, 0, [], [(0.0, 1.0)])

# catalogue shapes from the reduction identities
GAMMA_H = lambda zeta: HParams.make(
    2, 1, [(0.0, 0.0), (1.0, 1.0), (1.0, 0.0)], [(0.0, 1.0), (zeta, 0.0)])
UPPER_H = lambda a: HParams.make(
    2, 1, [(0.0, 0.0), (1.0, 1.0), (1.0, 0.0)], [(0.0, 1.0), (a, 1.0)])
U_H = lambda a, b: HParams.make(
    2, 1, [(1.0 - a, 1.0), (a, 0.0), (a - b + 1.0, 0.0)],
    [(0.0, 1.0), (1.0 - b, 1.0)])


class TestLogGamma:
    def test_gamma_one_is_zero(self):
        assert log_gamma(1.0) == 0.0

    def test_factorial_identity(self):
        assert abs(log_gamma(5.0) - math.log(24.0)) < 1e-14

    def test_half_integer_reference(self):
        # log Gamma(1/2) = log sqrt(pi), frozen from a high-precision value
        assert abs(log_gamma(0.5 + 0j) - 0.5723649429247001) < 5e-15

    def test_pole_raises(self):
        for z in (0.0, -1.0, -2.0 + 1e-13j):
            with pytest.raises(PoleError):
                log_gamma(z)

    def test_relative_accuracy_against_scipy(self):
        for z in (3.7 + 2j, 0.2 - 5j, 100.0, 1e6 + 1e4j):
            assert abs(log_gamma(z) - loggamma(z)) <= 1e-13 * abs(loggamma(z))


class TestIntegrand:
    def test_single_gamma_values(self):
        assert abs(h_integrand(EXP_H, 1.0) - 1.0) < 1e-14
        assert abs(h_integrand(EXP_H, 4.0) - 6.0) < 1e-13

    def test_matches_term_by_term_product(self):
        # the transform kernel of the shifted distribution at a fixed point
        alpha, gam, s = 2.0, 1.0, 1.5 + 0.3j
        params = HParams.make(
            2, 1,
            [(1.0 - alpha, gam), (alpha / gam, 0.0), (1.0 - s, 0.0)],
            [(0.0, 1.0), (1.0 - s - alpha, gam)])
        t = 0.4 + 0.2j
        direct = (cmath.exp(log_gamma(t)) * cmath.exp(log_gamma(1 - s - alpha + gam * t))
                  * cmath.exp(log_gamma(alpha - gam * t))
                  / (cmath.exp(log_gamma(alpha / gam)) * cmath.exp(log_gamma(1 - s))))
        assert abs(h_integrand(params, t) - direct) < 1e-13 * abs(direct)

    def test_numerator_pole_raises(self):
        with pytest.raises(PoleError):
            h_integrand(EXP_H, 0.0)

    def test_zero_coefficient_constant_pole_raises(self):
        bad = HParams.make(2, 0, [], [(0.0, 1.0), (-1.0, 0.0)])
        with pytest.raises(PoleError):
            h_integrand(bad, 1.0)

    def test_no_overflow_at_large_parameters_and_heights(self):
        params = HParams.make(1, 1, [(100.0, 2.0)], [(-50.0, 1.0)])
        for v in (0.0, 10.0, 1e4):
            val = h_log_integrand(params, np.array([2.1 + 1j * v]))[0]
            assert np.isfinite(val.real) or val.real == -np.inf
            assert np.isfinite(np.exp(min(val.real, 700.0)))

    @given(
        b=st.floats(-3, 3), B=st.floats(0.1, 2),
        a=st.floats(-3, 3), A=st.floats(0.1, 2),
        v=st.floats(0.01, 10),
    )
    @settings(max_examples=60, deadline=None)
    def test_conjugate_symmetry(self, b, B, a, A, v):
        params = HParams.make(1, 1, [(a, A)], [(b, B)])
        try:
            c = select_contour(params).abscissa
            up = h_integrand(params, c + 1j * v)
            dn = h_integrand(params, c - 1j * v)
        except (PoleError, NoContourError):
            assume(False)
        assert abs(dn - up.conjugate()) <= 1e-12 * max(abs(up), 1e-250)


class TestSelectContour:
    def test_left_only_unbounded_rule(self):
        assert select_contour(EXP_H).abscissa == 1.0

    def test_midpoint(self):
        params = HParams.make(1, 1, [(0.0, 1.0)], [(0.0, 1.0)])
        assert select_contour(params).abscissa == 0.5

    def test_interleaved_families_raise(self):
        # transform kernel with alpha=2, gamma=1 at s=1.5: brute-force pole
        # enumeration shows the left family reaches past the right family
        alpha, gam, s = 2.0, 1.0, 1.5
        params = HParams.make(
            2, 1,
            [(1.0 - alpha, gam), (alpha / gam, 0.0), (1.0 - s, 0.0)],
            [(0.0, 1.0), (1.0 - s - alpha, gam)])
        lefts = [-(0.0 + k) / 1.0 for k in range(51)]
        lefts += [-((1.0 - s - alpha) + k) / gam for k in range(51)]
        rights = [(1.0 - (1.0 - alpha) + k) / gam for k in range(51)]
        assert max(lefts) >= min(rights)  # the oracle agrees: no straight line
        assert left_pole_max(params) == pytest.approx(max(lefts))
        assert right_pole_min(params) == pytest.approx(min(rights))
        with pytest.raises(NoContourError):
            select_contour(params)


class TestEvalH:
    def test_exponential_identity(self):
        for z in (0.1, 0.5, 1.0, 2.0, 5.0):
            got = eval_h(EXP_H, z)
            assert abs(got.value - math.exp(-z)) < 1e-10

    def test_gamma_representation_at_one(self):
        got = eval_h(GAMMA_H(2.0), 1.0)
        assert abs(got.value - 1.0) < 1e-13
        got = eval_h(GAMMA_H(3.5), 1.0)
        assert abs(got.value - gamma_fn(3.5)) < 1e-12 * gamma_fn(3.5)

    def test_upper_incomplete_gamma_by_quadrature(self):
        # Gamma(2, 1) = 2/e, independently: numerical integral of t e^-t
        ref, _ = scipy.integrate.quad(lambda t: t * math.exp(-t), 1.0, np.inf)
        got = eval_h(UPPER_H(2.0), 1.0)
        assert abs(got.value - ref) < 1e-10
        assert abs(ref - 2.0 * math.exp(-1.0)) < 1e-12

    def test_tricomi_representation(self):
        for a, b, z in [(1.0, 1.0, 1.0), (0.5, 0.3, 2.0), (2.0, 3.0, 4.0)]:
            got = eval_h(U_H(a, b), z)
            ref = hyperu(a, b, z)
            assert abs(got.value - ref) < 1e-10 * max(1.0, abs(ref))

    def test_beta_type_closed_form(self):
        # core Gamma(s)Gamma(1-a-s) inverts to Gamma(1-a) (1+z)^(a-1)
        a = 0.3
        params = HParams.make(1, 1, [(a, 1.0)], [(0.0, 1.0)])
        for z in (0.5, 1.0, 3.0):
            ref = gamma_fn(1 - a) * (1 + z) ** (a - 1)
            assert abs(eval_h(params, z).value - ref) < 1e-11

    def test_negative_axis_raises(self):
        with pytest.raises(BranchCutError):
            eval_h(EXP_H, -1.0)

    def test_zero_raises(self):
        with pytest.raises(BranchCutError):
            eval_h(EXP_H, 0.0)

    def test_error_estimate_honesty(self):
        # estimate must bound the true error in >= 95% of the identity suite
        cases = []
        for z in (0.1, 0.5, 1.0, 2.0, 5.0):
            got = eval_h(EXP_H, z)
            cases.append((got.err_est, abs(got.value - math.exp(-z))))
        a = 0.3
        beta_params = HParams.make(1, 1, [(a, 1.0)], [(0.0, 1.0)])
        for z in (0.3, 0.7, 1.0, 1.8, 3.0, 6.0):
            got = eval_h(beta_params, z)
            ref = gamma_fn(1 - a) * (1 + z) ** (a - 1)
            cases.append((got.err_est, abs(got.value - ref)))
        for av in (1.5, 2.0, 3.3):
            got = eval_h(UPPER_H(av), 1.0)
            ref = gammaincc(av, 1.0) * gamma_fn(av)
            cases.append((got.err_est, abs(got.value - ref)))
        for a, b, z in [(1.0, 1.0, 1.0), (0.5, 0.3, 2.0), (1.5, 0.5, 1.0),
                        (2.0, 1.2, 3.0), (0.7, 0.1, 0.5), (2.5, 2.0, 2.0)]:
            got = eval_h(U_H(a, b), z)
            cases.append((got.err_est, abs(got.value - hyperu(a, b, z))))
        honest = sum(1 for est, actual in cases if est >= actual)
        assert honest / len(cases) >= 0.95

    def test_imaginary_part_within_estimate_for_real_input(self):
        for z in (0.4, 1.0, 2.5):
            got = eval_h(U_H(1.5, 0.5), z)
            assert abs(got.value.imag) <= max(got.err_est, 1e-15)


class TestThreeGammaKernel:
    @pytest.mark.parametrize("a,b,z", [
        (1.0, 1.0, 1.0), (2.0, 3.0, 4.0), (0.5, 0.3, 2.0),
        (0.7, 3.3, 1.5), (1.0, 4.0, 1.0), (2.2, 7.9, 0.8),
    ])
    def test_tricomi_values_including_continuation(self, a, b, z):
        val, err = three_gamma_kernel(1 - a, a, a - b + 1, 1 - b, 1.0, z)
        ref = hyperu(a, b, z)
        assert abs(val - ref) < 1e-11 * max(1.0, abs(ref))

    def test_closed_form_when_pochhammer_terminates(self):
        # U(a, a+1, z) = z^-a through a pure residue evaluation
        val, _ = three_gamma_kernel(-1.0, 2.0, 0.0, -2.0, 1.0, 4.0)
        assert val == pytest.approx(0.0625, abs=1e-15)

    def test_batch_agrees_with_scalar_across_heights(self):
        s = 0.75 + 1j * np.concatenate([np.linspace(0, 120, 25),
                                        np.linspace(130, 700, 25)])
        p3, p4 = 1 - s, 1 - s - 2.0
        got = three_gamma_batch(-1.0, 1.0, p3, p4, 2.0, 0.25)
        ref = np.array([three_gamma_kernel(-1.0, 1.0, p3[i], p4[i], 2.0,
                                           0.25)[0] for i in range(s.size)])
        assert np.max(np.abs(got - ref) / np.abs(ref)) < 1e-8


class TestMellinH:
    def test_single_gamma_values(self):
        assert abs(mellin_h(EXP_H, 1.0, 1.0) - 1.0) < 1e-14
        assert abs(mellin_h(EXP_H, 2.0, 2.0) - 0.25) < 1e-15

    def test_strip_error(self):
        with pytest.raises(StripError):
            mellin_h(EXP_H, 1.0, -0.5)

    def test_matches_numeric_mellin_of_eval_h(self):
        # unit-coefficient family, 5-point s grid inside the strip
        a = 0.3
        params = HParams.make(1, 1, [(a, 1.0)], [(0.0, 1.0)])
        for scale in (1.0, 2.0):
            for s in np.linspace(0.15, 0.55, 5):
                ref, _ = scipy.integrate.quad(
                    lambda x: x ** (s - 1) * eval_h(params, scale * x).value.real,
                    0, np.inf, limit=200)
                got = mellin_h(params, scale, s)
                assert abs(got - ref) <= 1e-5 * abs(ref)
