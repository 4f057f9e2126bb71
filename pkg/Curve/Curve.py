from abc import ABC, abstractmethod
from cmath import exp as cexp
from math import pi
from typing import Any, Callable, Dict, Union

import numpy as np

from Curve.Theta import ArrayLike, JacobiTheta
from Lattice.Divisor import FormalDivisor, Track
from Utils.Errors import ConfigError, ModelError


class Curve(ABC):
    """
    M-curve carrying the angles of the train-tracks. Only the sphere and
    the rectangular torus are implemented.
    """

    genus: int = 0

    #: length of the real component A0 in angle units
    period: float = pi

    def canonical(self, angle: float) -> float:
        """
        Canonical representative of an angle in [0, period)

        :param angle: Angle

        :return: Reduced angle
        """
        value = float(angle) % self.period
        return 0.0 if value == self.period else value

    @abstractmethod
    def point(self, angle: ArrayLike) -> ArrayLike:
        """
        Coordinate of the point of A0 with the given angle

        :param angle: Angle(s)

        :return: Coordinate(s) on the curve
        """
        raise NotImplementedError()

    @abstractmethod
    def theta(self, z: ArrayLike) -> ArrayLike:
        raise NotImplementedError()

    @abstractmethod
    def prime_form(self, u: ArrayLike, v: ArrayLike) -> ArrayLike:
        raise NotImplementedError()

    @abstractmethod
    def prime_log_derivative(self, a: ArrayLike, u: ArrayLike) -> ArrayLike:
        """
        d/du log E(a, u)

        :param a: Fixed point
        :param u: Variable point

        :return: Logarithmic derivative
        """
        raise NotImplementedError()

    @abstractmethod
    def abel_jacobi(self, divisor: FormalDivisor,
                    angle_of: Callable[[Track], float],
                    d_value: float) -> float:
        raise NotImplementedError()

    @abstractmethod
    def to_json(self) -> Dict[str, Any]:
        raise NotImplementedError()

    def theta1(self, z: ArrayLike) -> ArrayLike:
        raise ModelError('theta_1 is only defined on the torus')

    def theta1_prime0(self) -> float:
        raise ModelError('theta_1 is only defined on the torus')

    @staticmethod
    def from_config(config: Dict[str, Any], terms_cap: int = 64) -> 'Curve':
        """
        Build a curve from the ``curve`` section of a model config

        :param config: {"genus": 0} or {"genus": 1, "tau_im": float}
        :param terms_cap: Maximal number of theta series terms

        :return: Curve
        """
        if not isinstance(config, dict):
            raise ConfigError('curve must be an object')

        unknown = set(config) - {'genus', 'tau_im'}
        if unknown:
            raise ConfigError(
                'Unknown curve keys: {}'.format(', '.join(sorted(unknown)))
            )

        genus = config.get('genus')

        if genus == 0:
            if 'tau_im' in config:
                raise ConfigError('tau_im is meaningless in genus 0')
            return Genus0()
        if genus == 1:
            if not isinstance(config.get('tau_im'), (int, float)):
                raise ConfigError('genus 1 requires a numeric tau_im')
            return Genus1(float(config['tau_im']), terms_cap)

        raise ModelError('Only genus 0 and 1 are supported, got {}'.format(
            genus
        ))


class Genus0(Curve):
    """
    Riemann sphere with A0 the unit circle; angles live in R / pi Z and the
    point of an angle a is exp(2 i a).
    """

    genus = 0
    period = pi

    def point(self, angle: ArrayLike) -> ArrayLike:
        if np.ndim(angle) == 0:
            return cexp(2j * float(angle))
        return np.exp(2j * np.asarray(angle, dtype=float))

    def theta(self, z: ArrayLike) -> ArrayLike:
        if np.ndim(z) == 0:
            return 1.0 + 0j
        return np.ones(np.shape(z), dtype=complex)

    def prime_form(self, u: ArrayLike, v: ArrayLike) -> ArrayLike:
        return v - u

    def prime_log_derivative(self, a: ArrayLike, u: ArrayLike) -> ArrayLike:
        return 1.0 / (u - a)

    def abel_jacobi(self, divisor: FormalDivisor,
                    angle_of: Callable[[Track], float],
                    d_value: float) -> float:
        # the Jacobian of the sphere is a point
        return 0.0

    def to_json(self) -> Dict[str, Any]:
        return {'genus': 0}

    def __repr__(self) -> str:
        return 'Genus0()'


class Genus1(Curve):
    """
    Rectangular torus C / (Z + i tau_im Z); A0 is the real axis and A1 the
    horizontal line at height tau_im / 2.
    """

    genus = 1
    period = 1.0

    def __init__(self, tau_im: float, terms_cap: int = 64) -> None:
        self.thetas = JacobiTheta(tau_im, terms_cap)
        self.tau_im = self.thetas.tau_im
        self.q = self.thetas.q
        self._theta1_prime0 = self.thetas.theta1_prime0()

    def point(self, angle: ArrayLike) -> ArrayLike:
        if np.ndim(angle) == 0:
            return complex(float(angle))
        return np.asarray(angle, dtype=float).astype(complex)

    def theta(self, z: ArrayLike) -> ArrayLike:
        return self.thetas.theta3(pi * z)

    def theta1(self, z: ArrayLike) -> ArrayLike:
        return self.thetas.theta1(z)

    def theta1_prime0(self) -> float:
        return self._theta1_prime0

    def prime_form(self, u: ArrayLike, v: ArrayLike) -> ArrayLike:
        return self.thetas.theta1(pi * (v - u)) / (pi * self._theta1_prime0)

    def prime_log_derivative(self, a: ArrayLike, u: ArrayLike) -> ArrayLike:
        z = pi * (u - a)
        return pi * self.thetas.theta1(z, 1) / self.thetas.theta1(z)

    def abel_jacobi(self, divisor: FormalDivisor,
                    angle_of: Callable[[Track], float],
                    d_value: float) -> float:
        return divisor.evaluate(angle_of, d_value) % 1.0

    def to_json(self) -> Dict[str, Any]:
        return {'genus': 1, 'tau_im': self.tau_im}

    def __repr__(self) -> str:
        return 'Genus1(tau_im={!r})'.format(self.tau_im)


CurveLike = Union[Genus0, Genus1]
