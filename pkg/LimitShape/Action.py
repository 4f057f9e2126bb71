"""
Action function of the saddle point analysis.

For periodic angles the single edge probability behaves like
exp(n (F(u) - F(v))) with

    F(u; x, y) = 1/l sum_j [y log E(alpha_j, u) + (1 - y) log E(beta_j, u)]
               - 1/k sum_j [x log E(gamma_j, u) + (1 - x) log E(delta_j, u)]

where E(a, u) is u - a on the sphere and theta_1(pi (u - a)) on the torus.
F is affine in (x, y), so every quantity below is stored as three
coefficient vectors over the poles: constant, x and y parts.
"""
from dataclasses import dataclass
from math import pi
from typing import Dict, List, Sequence, Tuple

import numpy as np

from Curve.Curve import CurveLike
from Curve.Theta import ArrayLike
from Kasteleyn.Model import FockModel
from Lattice.Divisor import TrainTrack, track_name
from Utils.Errors import ConfigError, ModelError, SingularityError

A0 = 'a0'
A1 = 'a1'
COMPONENTS = (A0, A1)

#: distance to a pole below which evaluation is refused
POLE_GUARD = 1e-14


def minimal_period(values: Sequence[Tuple[float, float]]) -> int:
    """
    Smallest p with values[j] == values[j + p] for every j

    :param values: Sequence of paired angles

    :return: Period
    """
    size = len(values)
    for p in range(1, size + 1):
        if all(values[j] == values[j + p] for j in range(size - p)):
            return p
    return size


@dataclass(frozen=True)
class Pole:
    track: TrainTrack
    angle: float
    point: complex
    constant: float
    x: float
    y: float

    @property
    def name(self) -> str:
        return track_name(self.track)


class Action:
    """
    F(u; x, y) and its first two derivatives for periodic angles, in either
    genus. u is the sphere coordinate in genus 0 and the torus coordinate
    in genus 1.
    """

    def __init__(self, curve: CurveLike, alpha: Sequence[float],
                 beta: Sequence[float], gamma: Sequence[float],
                 delta: Sequence[float], start: float = 0.0) -> None:
        if not alpha or len(alpha) != len(beta):
            raise ConfigError('alpha and beta need the same period l')
        if not gamma or len(gamma) != len(delta):
            raise ConfigError('gamma and delta need the same period k')

        self.curve = curve
        self.genus = curve.genus
        self.start = float(start)
        self.l = len(alpha)
        self.k = len(gamma)

        poles = []
        for j, value in enumerate(alpha):
            poles.append((TrainTrack('A', j + 1), value, 0.0, 0.0,
                          1.0 / self.l))
        for j, value in enumerate(beta):
            poles.append((TrainTrack('B', j + 1), value, 1.0 / self.l, 0.0,
                          -1.0 / self.l))
        for j, value in enumerate(gamma):
            poles.append((TrainTrack('C', j + 1), value, 0.0, -1.0 / self.k,
                          0.0))
        for j, value in enumerate(delta):
            poles.append((TrainTrack('D', j + 1), value, -1.0 / self.k,
                          1.0 / self.k, 0.0))

        self.poles: List[Pole] = [
            Pole(track, float(angle), complex(curve.point(angle)), c, cx, cy)
            for track, angle, c, cx, cy in sorted(
                poles, key=lambda item: self.lift(item[1])
            )
        ]

        self.points = np.array([p.point for p in self.poles])
        self.coefficients = np.array([[p.constant, p.x, p.y]
                                      for p in self.poles])

    @classmethod
    def from_model(cls, m: FockModel) -> 'Action':
        """
        Action of a model, reduced to one period of each pair of families

        :param m: Model

        :return: Action
        """
        angles = m.angles
        l = minimal_period(list(zip(angles.alpha, angles.beta)))
        k = minimal_period(list(zip(angles.gamma, angles.delta)))

        return cls(m.curve, angles.alpha[:l], angles.beta[:l],
                   angles.gamma[:k], angles.delta[:k], m.start)

    def lift(self, angle: float) -> float:
        return self.start + (float(angle) - self.start) % self.curve.period

    def family(self, name: str) -> List[Pole]:
        return [p for p in self.poles if p.track.family == name]

    def distinct_poles(self, tolerance: float = 1e-12) -> List[Pole]:
        """
        Poles with coinciding angles merged, in lifted order; a merged
        pole keeps the track of its first member and the summed weights

        :param tolerance: Angles closer than this coincide

        :return: Poles with lifted angles
        """
        merged: List[Pole] = []
        for p in self.poles:
            angle = self.lift(p.angle)
            if merged and abs(angle - merged[-1].angle) <= tolerance:
                last = merged[-1]
                merged[-1] = Pole(last.track, last.angle, last.point,
                                  last.constant + p.constant, last.x + p.x,
                                  last.y + p.y)
            else:
                merged.append(Pole(p.track, angle, p.point, p.constant,
                                   p.x, p.y))
        return merged

    def _guard(self, u: np.ndarray) -> None:
        offsets = u[..., None] - self.points
        if self.genus == 1:
            offsets = offsets - np.round(offsets.real)
            period = self.curve.tau_im
            offsets = offsets.real + 1j * (
                (offsets.imag + period / 2) % period - period / 2
            )
        if np.any(np.abs(offsets) < POLE_GUARD):
            raise SingularityError('Action evaluated at an angle')

    def _log_terms(self, u: np.ndarray) -> np.ndarray:
        z = u[..., None] - self.points
        if self.genus == 0:
            return np.log(z)
        return np.log(self.curve.theta1(pi * z))

    def _first_terms(self, u: np.ndarray) -> np.ndarray:
        return self.curve.prime_log_derivative(self.points, u[..., None])

    def _second_terms(self, u: np.ndarray) -> np.ndarray:
        z = u[..., None] - self.points
        if self.genus == 0:
            return -1.0 / z ** 2

        thetas = self.curve.thetas
        value = thetas.theta1(pi * z)
        first = thetas.theta1(pi * z, 1) / value
        return pi ** 2 * (thetas.theta1(pi * z, 2) / value - first ** 2)

    def basis(self, u: ArrayLike, order: int = 1, guard: bool = True) \
            -> np.ndarray:
        """
        Constant, x and y parts of a derivative of F

        :param u: Point(s)
        :param order: 0 for F, 1 for dF/du, 2 for d2F/du2
        :param guard: Refuse points at an angle; iterative searches turn
                      this off and drop non finite values themselves

        :return: Array with a trailing axis of size 3
        """
        u = np.asarray(u, dtype=complex)
        if guard:
            self._guard(u)

        if order == 0:
            terms = self._log_terms(u)
        elif order == 1:
            terms = self._first_terms(u)
        elif order == 2:
            terms = self._second_terms(u)
        else:
            raise ConfigError('Only F, dF and d2F are available')

        return terms @ self.coefficients

    def F(self, u: ArrayLike, x: float, y: float) -> ArrayLike:
        """
        Action with principal branches of the logarithms, for diagnostics

        :param u: Point(s)
        :param x: Horizontal macroscopic coordinate
        :param y: Vertical macroscopic coordinate

        :return: Value(s)
        """
        return self._combine(self.basis(u, 0), x, y)

    def dF(self, u: ArrayLike, x: float, y: float) -> ArrayLike:
        return self._combine(self.basis(u, 1), x, y)

    def d2F(self, u: ArrayLike, x: float, y: float) -> ArrayLike:
        return self._combine(self.basis(u, 2), x, y)

    @staticmethod
    def _combine(basis: np.ndarray, x: float, y: float) -> ArrayLike:
        value = basis @ np.array([1.0, x, y])
        return complex(value) if np.ndim(value) == 0 else value

    def component_point(self, component: str, s: ArrayLike) -> ArrayLike:
        """
        Point of a real component at the real parameter s: A0 is the image
        of the angles, A1 the horizontal line at half the period of the
        torus

        :param component: 'a0' or 'a1'
        :param s: Parameter(s)

        :return: Point(s) of the curve
        """
        if component not in COMPONENTS:
            raise ConfigError('Unknown component {!r}'.format(component))
        if component == A1:
            if self.genus == 0:
                raise ModelError('The sphere has a single real component')
            return np.asarray(s, dtype=float) + 0.5j * self.curve.tau_im
        return self.curve.point(s)

    def real_basis(self, component: str, s: ArrayLike) \
            -> Tuple[np.ndarray, np.ndarray]:
        """
        Constant, x and y parts of G(s) = dF/ds and of G'(s) along a real
        component, both real there

        :param component: 'a0' or 'a1'
        :param s: Parameter(s)

        :return: (G parts, G' parts)
        """
        u = np.asarray(self.component_point(component, s), dtype=complex)
        first = self.basis(u, 1)
        second = self.basis(u, 2)

        if self.genus == 0:
            # u = exp(2 i s)
            jacobian = (2j * u)[..., None]
            g = jacobian * first
            h = (2j) * jacobian * first + jacobian ** 2 * second
        else:
            g, h = first, second

        return g.real, h.real

    def real_derivative(self, component: str, s: ArrayLike, x: float,
                        y: float) -> ArrayLike:
        return self._combine(self.real_basis(component, s)[0], x, y)

    def imaginary_defect(self, component: str, s: ArrayLike, x: float,
                         y: float) -> float:
        """
        Largest imaginary part of G along a real component, relative to
        its size

        :return: Defect
        """
        u = np.asarray(self.component_point(component, s), dtype=complex)
        value = self._combine(self.basis(u, 1), x, y)
        if self.genus == 0:
            value = 2j * u * value
        scale = max(1.0, float(np.max(np.abs(value))))
        return float(np.max(np.abs(np.imag(value)))) / scale

    def to_json(self) -> Dict[str, object]:
        return {
            'curve': self.curve.to_json(),
            'l': self.l,
            'k': self.k,
            'poles': [{'track': p.name, 'angle': p.angle}
                      for p in self.poles]
        }
