"""
Jacobi elliptic functions expressed through theta quotients.

The modulus k and the torus are tied by k = theta_2(0)^2 / theta_3(0)^2,
k' = theta_4(0)^2 / theta_3(0)^2 and K = (pi / 2) theta_3(0)^2; the argument
of the theta functions is zeta = z / theta_3(0)^2.
"""
from functools import lru_cache
from math import pi, sqrt
from typing import Tuple

from scipy.optimize import bisect

from Curve.Curve import Genus1
from Curve.Theta import JacobiTheta, MIN_TAU_IM
from Utils.Errors import ConfigError, ConvergenceError
from Utils.Logging.Logging import Logging

MAX_TAU_IM = 40.0

logger = Logging(__name__).logger


def kprime_of(tau_im: float) -> float:
    """
    Complementary modulus of the torus with modulus i * tau_im

    :param tau_im: Imaginary part of tau

    :return: k'
    """
    theta2, theta3, theta4 = JacobiTheta(tau_im).constants()
    return (theta4 / theta3) ** 2


def modulus_of(tau_im: float) -> float:
    theta2, theta3, theta4 = JacobiTheta(tau_im).constants()
    return (theta2 / theta3) ** 2


@lru_cache(maxsize=128)
def nome_from_kprime(kp: float, xtol: float = 1e-14,
                     tolerance: float = 1e-12) -> Genus1:
    """
    Find the rectangular torus whose complementary modulus is ``kp``.
    k' increases monotonically with tau_im, so bisection on
    [1/8, 40] always brackets the root when one exists.

    :param kp: Complementary modulus in (0, 1)
    :param xtol: Bisection tolerance on tau_im
    :param tolerance: Accepted residual on k'

    :return: Genus 1 curve
    """
    if not 0.0 < kp < 1.0:
        raise ConfigError('k\' must lie in (0, 1), got {}'.format(kp))

    def residual(tau_im: float) -> float:
        return kprime_of(tau_im) - kp

    try:
        tau_im = bisect(residual, MIN_TAU_IM, MAX_TAU_IM, xtol=xtol,
                        maxiter=400)
    except (ValueError, RuntimeError) as error:
        raise ConvergenceError(
            'No modulus in [{}, {}] reaches k\'={}'.format(
                MIN_TAU_IM, MAX_TAU_IM, kp
            ),
            estimate=min(abs(residual(MIN_TAU_IM)),
                         abs(residual(MAX_TAU_IM)))
        ) from error

    defect = abs(residual(tau_im))
    if defect >= tolerance:
        raise ConvergenceError(
            'Modulus inversion stalled at k\' defect {:.3e}'.format(defect),
            estimate=defect
        )

    logger.debug('k\'=%r solved by tau_im=%r', kp, tau_im)

    return Genus1(tau_im)


def curve_for_modulus(k: float) -> Genus1:
    """
    Torus for an elliptic modulus k in (0, 1)

    :param k: Modulus

    :return: Genus 1 curve
    """
    if not 0.0 < k < 1.0:
        raise ConfigError('Elliptic modulus must lie in (0, 1), got {}'.format(
            k
        ))
    return nome_from_kprime(sqrt((1.0 - k) * (1.0 + k)))


def _null_values(k: float) -> Tuple[JacobiTheta, float, float, float]:
    thetas = curve_for_modulus(k).thetas
    theta2, theta3, theta4 = thetas.constants()
    return thetas, theta2, theta3, theta4


def quarter_period(k: float) -> float:
    """
    Complete elliptic integral K(k) = (pi / 2) theta_3(0)^2

    :param k: Modulus

    :return: K
    """
    _, _, theta3, _ = _null_values(k)
    return 0.5 * pi * theta3 ** 2


def jacobi_sn(z: float, k: float) -> float:
    thetas, theta2, theta3, theta4 = _null_values(k)
    zeta = z / theta3 ** 2
    return (theta3 / theta2 * thetas.theta1(zeta) / thetas.theta4(zeta)).real


def jacobi_cn(z: float, k: float) -> float:
    thetas, theta2, theta3, theta4 = _null_values(k)
    zeta = z / theta3 ** 2
    return (theta4 / theta2 * thetas.theta2(zeta) / thetas.theta4(zeta)).real


def jacobi_dn(z: float, k: float) -> float:
    thetas, theta2, theta3, theta4 = _null_values(k)
    zeta = z / theta3 ** 2
    return (theta4 / theta3 * thetas.theta3(zeta) / thetas.theta4(zeta)).real


def jacobi_cs(z: float, k: float) -> float:
    """
    cn / sn, singular at the multiples of 2K

    :param z: Argument
    :param k: Modulus

    :return: cs(z | k)
    """
    thetas, theta2, theta3, theta4 = _null_values(k)
    zeta = z / theta3 ** 2
    return (theta4 / theta3 * thetas.theta2(zeta) / thetas.theta1(zeta)).real


def dn_addition(u: float, v: float, k: float) -> float:
    """
    Right hand side of the addition law for dn(u + v)

    :param u: First argument
    :param v: Second argument
    :param k: Modulus

    :return: dn(u + v) assembled from the values at u and v
    """
    sn_u, cn_u, dn_u = jacobi_sn(u, k), jacobi_cn(u, k), jacobi_dn(u, k)
    sn_v, cn_v, dn_v = jacobi_sn(v, k), jacobi_cn(v, k), jacobi_dn(v, k)

    return (dn_u * dn_v - k * k * sn_u * cn_u * sn_v * cn_v) / \
        (1.0 - k * k * sn_u ** 2 * sn_v ** 2)
