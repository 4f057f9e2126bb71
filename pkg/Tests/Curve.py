import unittest
from cmath import exp as cexp
from math import pi, sqrt

from scipy.special import ellipj, ellipk

from Curve.Curve import Curve, Genus0, Genus1
from Curve.Elliptic import curve_for_modulus, dn_addition, jacobi_cn, \
    jacobi_cs, jacobi_dn, jacobi_sn, kprime_of, modulus_of, \
    nome_from_kprime, quarter_period
from Curve.Theta import JacobiTheta
from Utils.Errors import ConfigError, ModelError


class TestMethods(unittest.TestCase):
    @classmethod
    def test_null_values(cls):
        for tau_im in (0.5, 1.0, sqrt(3.0), 3.0):
            thetas = JacobiTheta(tau_im)
            theta2, theta3, theta4 = thetas.constants()

            assert abs(theta3 ** 4 - theta2 ** 4 - theta4 ** 4) < 1e-12
            assert abs(thetas.theta1_prime0() - theta2 * theta3 * theta4) \
                < 1e-12

    @classmethod
    def test_quasi_periodicity(cls):
        thetas = JacobiTheta(1.0)
        tau = 1j * thetas.tau_im

        for z in (0.3, 0.1 + 0.2j, -0.7):
            assert abs(thetas.theta3(z + pi) - thetas.theta3(z)) < 1e-13
            assert abs(thetas.theta1(z + pi) + thetas.theta1(z)) < 1e-13

            shifted = thetas.theta3(z + pi * tau)
            expected = cexp(-2j * z) * thetas.theta3(z) / thetas.q
            assert abs(shifted - expected) < 1e-10 * abs(expected)

    @classmethod
    def test_derivatives(cls):
        thetas = JacobiTheta(0.8)
        h = 1e-5

        for kind in (1, 2, 3, 4):
            for z in (0.2, 0.4 + 0.1j):
                first = (thetas.theta(kind, z + h) -
                         thetas.theta(kind, z - h)) / (2 * h)
                second = (thetas.theta(kind, z + h, 1) -
                          thetas.theta(kind, z - h, 1)) / (2 * h)

                assert abs(thetas.theta(kind, z, 1) - first) < 1e-7
                assert abs(thetas.theta(kind, z, 2) - second) < 1e-7

    @classmethod
    def test_theta_errors(cls):
        try:
            JacobiTheta(0.1)
            assert False
        except ModelError:
            pass

        thetas = JacobiTheta(1.0)
        for kind, derivative in ((5, 0), (3, 3)):
            try:
                thetas.theta(kind, 0.0, derivative)
                assert False
            except ConfigError:
                pass

    @classmethod
    def test_moduli(cls):
        assert abs(kprime_of(1.0) - 1 / sqrt(2.0)) < 1e-12
        assert abs(modulus_of(1.0) - 1 / sqrt(2.0)) < 1e-12

        for tau_im in (0.5, 1.0, 2.5):
            k = modulus_of(tau_im)
            kp = kprime_of(tau_im)
            assert abs(k * k + kp * kp - 1.0) < 1e-12
            assert abs(nome_from_kprime(kp).tau_im - tau_im) < 1e-9

        for kp in (0.0, 1.0, -0.5):
            try:
                nome_from_kprime(kp)
                assert False
            except ConfigError:
                pass

        try:
            curve_for_modulus(1.0)
            assert False
        except ConfigError:
            pass

    @classmethod
    def test_jacobi_functions(cls):
        for k in (0.3, 0.6, 0.9):
            assert abs(quarter_period(k) - ellipk(k * k)) < 1e-10

            for u in (0.1, 0.7, 1.3):
                sn, cn, dn, _ = ellipj(u, k * k)

                assert abs(jacobi_sn(u, k) - sn) < 1e-10
                assert abs(jacobi_cn(u, k) - cn) < 1e-10
                assert abs(jacobi_dn(u, k) - dn) < 1e-10
                assert abs(jacobi_cs(u, k) - cn / sn) < 1e-9

    @classmethod
    def test_dn_addition(cls):
        for k in (0.4, 0.8):
            for u, v in ((0.2, 0.5), (1.1, -0.3)):
                assert abs(dn_addition(u, v, k) - jacobi_dn(u + v, k)) < 1e-10

    @classmethod
    def test_genus0(cls):
        curve = Genus0()

        assert abs(curve.point(0.0) - 1.0) < 1e-15
        assert abs(curve.point(pi / 2) + 1.0) < 1e-15
        assert abs(curve.prime_form(curve.point(0.0), curve.point(pi / 4)) -
                   (-1 + 1j)) < 1e-15
        assert curve.theta(0.7) == 1.0
        assert curve.to_json() == {'genus': 0}

    @classmethod
    def test_genus1(cls):
        curve = Genus1(1.0)

        assert curve.point(0.25) == 0.25
        assert abs(curve.theta(0.3 + 1.0) - curve.theta(0.3)) < 1e-13

        # the prime form is odd with unit derivative at the diagonal
        u, v = 0.1, 0.35
        assert abs(curve.prime_form(u, v) + curve.prime_form(v, u)) < 1e-15
        h = 1e-6
        assert abs(curve.prime_form(0.0, h) / h - 1.0) < 1e-9

    @classmethod
    def test_from_config(cls):
        assert isinstance(Curve.from_config({'genus': 0}), Genus0)
        curve = Curve.from_config({'genus': 1, 'tau_im': 2.0})
        assert isinstance(curve, Genus1) and curve.tau_im == 2.0

        for config in ({'genus': 0, 'tau_im': 1.0}, {'genus': 1},
                       {'genus': 1, 'tau_im': '1'}, {'genus': 0, 'q': 1},
                       [0]):
            try:
                Curve.from_config(config)
                assert False
            except ConfigError:
                pass

        try:
            Curve.from_config({'genus': 2})
            assert False
        except ModelError:
            pass
