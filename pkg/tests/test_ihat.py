"""Generalized transform functions: Mellin products, inversion, constructors."""

import dataclasses
import math

import numpy as np
import pytest
import scipy.integrate
from scipy.special import gamma as gamma_fn, gammaincc, hyperu, loggamma

from shiftedgamma.errors import NoContourError, ParameterError
from shiftedgamma.ihat import (IhatFactor, IhatSpec, eval_ihat, ihat_from_I,
                               ihat_from_Y, ihat_from_gamma_product,
                               ihat_from_upper_incomplete, select_ihat_contour,
                               tricomi_u, upsilon, upsilon_general)

GAMMA_S = ihat_from_gamma_product([(0.0, 1.0, 1.0)])      # Gamma(s)


class TestUpsilon:
    def test_single_gamma_embedding(self):
        assert abs(upsilon(GAMMA_S, 3.0) - 2.0) < 1e-13
        assert abs(upsilon(GAMMA_S, 4.0) - 6.0) < 1e-13

    def test_squared_gamma_through_outer_power(self):
        spec = ihat_from_gamma_product([(0.0, 1.0, 2.0)])
        assert abs(upsilon(spec, 3.0) - 4.0) < 1e-12

    def test_empty_power_factor_is_one(self):
        f = IhatFactor(power_const=0.0,
                       inner_upper=((0, 0, 0), (1, 0, 1), (1, 0, 0)),
                       inner_lower=((0, 0, 1), (0.5, 0, 0)))
        for s in (0.3, 1.0, 2.7):
            assert upsilon(IhatSpec((f,)), s) == 1.0

    def test_requires_fixed_inner_shape(self):
        f = IhatFactor(inner_upper=(), inner_lower=((0.0, 0.0, 1.0),),
                       inner_indices=(1, 0, 0, 1))
        with pytest.raises(ParameterError):
            upsilon(IhatSpec((f,)), 1.0)


class TestUpsilonGeneral:
    def test_reduces_to_fixed_shape(self):
        spec = ihat_from_Y(1, 0, [], [(0.4, 0.8, 2.0, 1.2)])
        for s in np.linspace(0.2, 3.0, 10):
            assert upsilon_general(spec, s) == upsilon(spec, s)

    def test_exponential_inner_shape(self):
        f = IhatFactor(arg_base=0.0, arg_slope=1.0,
                       inner_upper=(), inner_lower=((0.0, 0.0, 1.0),),
                       inner_indices=(1, 0, 0, 1))
        got = upsilon_general(IhatSpec((f,)), 1.0)
        assert abs(got - math.exp(-1.0)) < 1e-14

    def test_bit_identical_on_identical_inputs(self):
        spec = ihat_from_upper_incomplete(1, 0, [], [(0.3, 1.1, 2.0)])
        s = np.linspace(0.5, 2.5, 7) + 0.1j
        a = upsilon(spec, s)
        b = upsilon_general(spec, s)
        assert np.array_equal(a, b)


class TestEvalIhat:
    def test_gamma_spec_inverts_to_exponential(self):
        got = eval_ihat(GAMMA_S, 1.0, tol=1e-10)
        assert abs(got.value.real - math.exp(-1.0)) < 1e-9
        got2 = eval_ihat(GAMMA_S, 2.0, tol=1e-10)
        assert abs(got2.value.real - math.exp(-2.0)) < 1e-9

    def test_constant_factor_scales_linearly(self):
        base = eval_ihat(GAMMA_S, 1.3, tol=1e-10).value.real
        f3 = dataclasses.replace(GAMMA_S.factors[0], lin_b=math.log(3.0))
        tripled = eval_ihat(IhatSpec((f3,)), 1.3, tol=1e-10).value.real
        assert abs(tripled - 3.0 * base) < 1e-8

    def test_contour_selection_rejects_generic_factor(self):
        f = IhatFactor(inner_upper=((0.2, 0.3, 1.0), (1.0, 0.0, 0.5),
                                    (0.4, 0.0, 0.0)),
                       inner_lower=((0.0, 0.0, 1.0), (0.1, 0.2, 0.7)))
        with pytest.raises(NoContourError):
            select_ihat_contour(IhatSpec((f,)))

    def test_mellin_round_trip(self):
        # transform of the inverse transform returns the original values
        from shiftedgamma.gengamma import GenGammaParams, mellin_ihat_factor
        p = GenGammaParams(1.0, 1.0, 1.0, 1.0)
        spec = IhatSpec((mellin_ihat_factor(p),))
        for s in (1.0, 1.5, 2.0):
            ref = upsilon(spec, s)
            got, _ = scipy.integrate.quad(
                lambda x: x ** (s - 1) * eval_ihat(spec, x, tol=1e-9).value.real,
                1.0, 40.0, limit=80)
            assert abs(got - ref) <= 1e-5 * abs(ref)


class TestConstructors:
    def test_gamma_product_requires_terms(self):
        with pytest.raises(ParameterError):
            ihat_from_gamma_product([])

    def test_I_unit_exponents_collapse_to_gamma_ratio(self):
        spec = ihat_from_I(1, 1, [(0.3, 0.7, 1.0)], [(0.2, 1.1, 1.0)])
        rng = np.random.default_rng(7)
        for s in 0.2 + 0.6 * rng.random(10):
            ref = np.exp(loggamma(0.2 + 1.1 * s) + loggamma(0.7 - 0.7 * s))
            assert abs(upsilon(spec, s) - ref) < 1e-12 * abs(ref)

    def test_I_with_real_powers(self):
        spec = ihat_from_I(1, 0, [], [(0.0, 1.0, 2.5)])
        got = upsilon(spec, 1.3)
        assert abs(got - gamma_fn(1.3) ** 2.5) < 1e-12

    def test_I_rejects_nonpositive_exponents(self):
        with pytest.raises(ParameterError):
            ihat_from_I(1, 0, [], [(0.0, 1.0, -1.0)])

    def test_upper_incomplete_numerator(self):
        # Gamma(s + 1, 2) at s = 1, against the numerical tail integral
        spec = ihat_from_upper_incomplete(1, 0, [], [(1.0, 1.0, 2.0)])
        ref, _ = scipy.integrate.quad(lambda t: t * math.exp(-t), 2.0, np.inf)
        got = upsilon(spec, 1.0)
        assert abs(got - ref) < 1e-10
        assert abs(ref - 3.0 * math.exp(-2.0)) < 1e-13

    def test_upper_incomplete_full_ratio(self):
        spec = ihat_from_upper_incomplete(
            1, 1, [(0.2, 0.5, 1.5)], [(0.3, 1.0, 2.0), (0.6, 0.4, 1.1)])
        s = 0.8
        num = gammaincc(0.3 + s, 2.0) * gamma_fn(0.3 + s) \
            * gammaincc(1 - 0.2 - 0.5 * s, 1.5) * gamma_fn(1 - 0.2 - 0.5 * s)
        den = gammaincc(1 - 0.6 - 0.4 * s, 1.1) * gamma_fn(1 - 0.6 - 0.4 * s)
        got = upsilon(spec, s)
        assert abs(got - num / den) < 1e-10 * abs(num / den)

    def test_Y_single_numerator_term(self):
        phi, b0, beta, B = 1.2, 0.4, 0.8, 2.0
        spec = ihat_from_Y(1, 0, [], [(b0, beta, B, phi)])
        for s in np.linspace(0.3, 3.0, 10):
            arg = phi + b0 + beta * s
            ref = B ** (arg - 1.0) * hyperu(phi, arg, B)
            got = upsilon(spec, s)
            assert abs(got - ref) < 1e-8 * abs(ref)

    def test_Y_denominator_term(self):
        phi, b0, beta, B = 1.2, 0.4, 0.8, 2.0
        spec = ihat_from_Y(0, 0, [], [(b0, beta, B, phi)])
        s = 1.5
        arg = phi - b0 - beta * s + 1
        ref = 1.0 / (B ** (phi - b0 - beta * s) * hyperu(phi, arg, B))
        assert abs(upsilon(spec, s) - ref) < 1e-8 * abs(ref)

    def test_Y_rejects_nonpositive_scale(self):
        with pytest.raises(ParameterError):
            ihat_from_Y(1, 0, [], [(0.4, 0.8, -2.0, 1.2)])


class TestTricomiU:
    def test_u_1_1_1(self):
        # U(1,1,1) = e Gamma(0,1), oracle by direct numerical integration
        ref, _ = scipy.integrate.quad(lambda t: math.exp(-t) / t, 1.0, np.inf)
        assert abs(tricomi_u(1.0, 1.0, 1.0) - math.e * ref) < 1e-9
        assert abs(math.e * ref - 0.5963473623231942) < 1e-12

    def test_power_closed_form(self):
        # U(a, a+1, z) = z^-a
        assert tricomi_u(2.0, 3.0, 4.0) == pytest.approx(0.0625, abs=1e-12)

    def test_against_defining_integral(self):
        a, b, z = 0.5, 0.3, 2.0
        ref, _ = scipy.integrate.quad(
            lambda t: math.exp(-z * t) * t ** (a - 1) * (1 + t) ** (b - a - 1),
            0, np.inf, limit=200)
        ref /= gamma_fn(a)
        assert abs(tricomi_u(a, b, z) - ref) < 1e-9

    def test_domain_checks(self):
        with pytest.raises(ValueError):
            tricomi_u(-1.0, 0.5, 1.0)
        with pytest.raises(ValueError):
            tricomi_u(1.0, 0.5, -1.0)
