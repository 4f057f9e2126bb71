from math import ceil, exp, pi, sqrt
from typing import Union

import numpy as np

from Utils.Errors import ConfigError, ModelError

ArrayLike = Union[complex, float, np.ndarray]

MIN_TAU_IM = 0.125


class JacobiTheta:
    """
    The four Jacobi theta functions of a purely imaginary modulus
    tau = i * tau_im, in the convention where theta_3(z) = 1 + 2 sum q^(m^2)
    cos(2 m z) with nome q = exp(-pi * tau_im).

    Every method is vectorised over ``z``; the number of series terms is
    chosen from the largest imaginary part in the batch so that the dropped
    tail is below double precision.
    """

    def __init__(self, tau_im: float, terms_cap: int = 64) -> None:
        if not tau_im >= MIN_TAU_IM:
            raise ModelError(
                'tau_im must be at least {}, got {}'.format(MIN_TAU_IM, tau_im)
            )

        self.tau_im = float(tau_im)
        self.q = exp(-pi * self.tau_im)
        self.terms_cap = terms_cap

    def terms(self, z: np.ndarray) -> int:
        """
        Number of series terms needed for the batch ``z``

        :param z: Arguments

        :return: Term count, capped
        """
        y = float(np.max(np.abs(np.imag(z)))) if np.size(z) else 0.0
        a = pi * self.tau_im

        # q^(m^2) e^(2 m y) < 1e-17 once pi tau m^2 - 2 m y > 39
        count = (y + sqrt(y * y + 39.0 * a)) / a

        return max(2, min(self.terms_cap, int(ceil(count)) + 2))

    def theta(self, kind: int, z: ArrayLike, derivative: int = 0) \
            -> ArrayLike:
        """
        Evaluate theta_kind or one of its first two derivatives

        :param kind: 1, 2, 3 or 4
        :param z: Argument(s), may be complex
        :param derivative: 0, 1 or 2

        :return: Values with the shape of ``z``
        """
        if kind not in (1, 2, 3, 4):
            raise ConfigError('Unknown theta function {}'.format(kind))
        if derivative not in (0, 1, 2):
            raise ConfigError('Only derivatives up to order 2 are supported')

        scalar = np.ndim(z) == 0
        z = np.asarray(z, dtype=complex)
        count = self.terms(z)

        if kind in (1, 2):
            m = np.arange(count)
            frequency = 2.0 * m + 1.0
            coefficient = 2.0 * self.q ** ((m + 0.5) ** 2)
        else:
            m = np.arange(1, count + 1)
            frequency = 2.0 * m
            coefficient = 2.0 * self.q ** (m ** 2.0)

        if kind in (1, 4):
            coefficient = coefficient * (-1.0) ** m

        phase = z[..., None] * frequency
        odd = kind == 1

        if derivative == 0:
            series = np.sin(phase) if odd else np.cos(phase)
        elif derivative == 1:
            series = frequency * (np.cos(phase) if odd else -np.sin(phase))
        else:
            series = -frequency ** 2 * (np.sin(phase) if odd
                                        else np.cos(phase))

        value = series @ coefficient

        if kind in (3, 4) and derivative == 0:
            value = value + 1.0

        return complex(value) if scalar else value

    def theta1(self, z: ArrayLike, derivative: int = 0) -> ArrayLike:
        return self.theta(1, z, derivative)

    def theta2(self, z: ArrayLike, derivative: int = 0) -> ArrayLike:
        return self.theta(2, z, derivative)

    def theta3(self, z: ArrayLike, derivative: int = 0) -> ArrayLike:
        return self.theta(3, z, derivative)

    def theta4(self, z: ArrayLike, derivative: int = 0) -> ArrayLike:
        return self.theta(4, z, derivative)

    def theta1_prime0(self) -> float:
        """
        theta_1'(0), positive for every admissible modulus

        :return: Derivative at the origin
        """
        return self.theta(1, 0.0, 1).real

    def constants(self) -> np.ndarray:
        """
        theta_2(0), theta_3(0), theta_4(0)

        :return: Array of the three null values
        """
        return np.array([self.theta(kind, 0.0).real for kind in (2, 3, 4)])
