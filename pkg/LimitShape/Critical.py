"""
Zeros of dF for a fixed macroscopic point.

On the sphere dF is a rational function whose residues sum to zero, so
clearing the denominators leaves a polynomial of degree P - 2 for P
distinct poles; its roots are the eigenvalues of the companion matrix.

On the torus dF is an elliptic function with P simple poles on A0 and as
many zeros. Real zeros are bracketed by sign changes of the real form
G(s) along A0 and A1 and refined by bisection; the other ones come from a
Newton search seeded on a grid of the upper half of the fundamental
domain. The argument principle on the strip between the two copies of
A0 certifies the number of zeros off A0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import pi
from typing import Dict, List, Tuple

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.optimize import brentq, minimize_scalar

from LimitShape.Action import A0, A1, Action
from Utils.Errors import ConfigError, VerificationError
from Utils.Logging.Logging import Logging

logger = Logging(__name__).logger

BISECTION_SAMPLES = 1024
BISECTION_XTOL = 1e-13
NEWTON_GRID = 64
NEWTON_STEPS = 60
NEWTON_RESIDUAL = 1e-9
DEDUPLICATE = 1e-8
OFF_REAL = 1e-7
ON_CIRCLE = 1e-9
STRIP_NODES = 1024
DOUBLE_ROOT = 1e-9


@dataclass
class CriticalSet:
    """
    Zeros of dF, as points of the curve, split into the ones on each real
    component (by their real parameter) and the non-real ones
    """
    x: float
    y: float
    genus: int
    degree: int
    real: Dict[str, List[float]] = field(default_factory=dict)
    complex: List[complex] = field(default_factory=list)
    points: List[complex] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.points)

    def to_json(self) -> Dict[str, object]:
        return {
            'x': self.x,
            'y': self.y,
            'degree': self.degree,
            'real': {k: list(v) for k, v in self.real.items()},
            'complex': [[z.real, z.imag] for z in self.complex]
        }


def _check_point(x: float, y: float) -> None:
    if not (0.0 < x < 1.0 and 0.0 < y < 1.0):
        raise ConfigError('({}, {}) is not inside the unit square'
                          .format(x, y))


def critical_polynomial(a: Action, x: float, y: float) -> np.ndarray:
    """
    Numerator of dF on the sphere after clearing the denominators

    :param a: Genus 0 action
    :param x: Horizontal coordinate
    :param y: Vertical coordinate

    :return: Coefficients in increasing degree, degree P - 2
    """
    poles = a.distinct_poles()
    points = np.array([p.point for p in poles])
    weights = [p.constant + p.x * x + p.y * y for p in poles]

    numerator = np.zeros(len(poles), dtype=complex)
    for i, weight in enumerate(weights):
        numerator = numerator + weight * P.polyfromroots(
            np.delete(points, i)
        )

    scale = float(np.max(np.abs(numerator)))
    if abs(numerator[-1]) > 1e-10 * scale:
        raise VerificationError('Residues of dF do not sum to zero',
                                defect=abs(numerator[-1]))

    coefficients = numerator[:-1]
    if abs(coefficients[-1]) <= 1e-13 * scale:
        raise VerificationError(
            'Critical polynomial has degree below {}'.format(len(poles) - 2)
        )

    return coefficients


def quadratic_roots(c: np.ndarray) -> List[complex]:
    """
    Roots of c0 + c1 u + c2 u^2 without cancellation

    :param c: Coefficients in increasing degree

    :return: Both roots
    """
    c0, c1, c2 = (complex(v) for v in c)
    root = np.sqrt(c1 * c1 - 4.0 * c2 * c0)
    if (c1.conjugate() * root).real < 0:
        root = -root

    q = -0.5 * (c1 + root)
    if q == 0:
        return [0j, 0j]
    return [q / c2, c0 / q]


def _genus0(a: Action, x: float, y: float) -> CriticalSet:
    coefficients = critical_polynomial(a, x, y)
    degree = len(coefficients) - 1

    if degree == 2:
        roots = quadratic_roots(coefficients)
    else:
        roots = [complex(z) for z in P.polyroots(coefficients)]

    if len(roots) != degree:
        raise VerificationError('Found {} critical points, expected {}'
                                .format(len(roots), degree))

    result = CriticalSet(x, y, 0, degree, {A0: []}, [], roots)
    for u in roots:
        if abs(abs(u) - 1.0) <= ON_CIRCLE:
            result.real[A0].append(a.lift(np.angle(u) / 2.0))
        else:
            result.complex.append(u)

    result.real[A0].sort()
    return result


def _component_samples(a: Action, component: str,
                       samples: int) -> List[np.ndarray]:
    """
    Parameters along a real component, one array per arc between
    consecutive poles, clustered towards the poles

    :return: Arrays of parameters
    """
    period = a.curve.period

    if component == A1:
        return [a.start + (np.arange(samples + 1) + 0.5) / samples * period]

    angles = [p.angle for p in a.distinct_poles()]
    ends = list(zip(angles, angles[1:] + [angles[0] + period]))
    arcs = []

    for lo, hi in ends:
        count = max(16, int(round(samples * (hi - lo) / period)))
        t = (1.0 - np.cos(pi * (np.arange(count) + 0.5) / count)) / 2.0
        arcs.append(lo + (hi - lo) * t)

    return arcs


def _arc_zeros(a: Action, component: str, s: np.ndarray, x: float,
               y: float, xtol: float) -> List[float]:
    def g(value: float) -> float:
        return float(a.real_derivative(component, value, x, y))

    values = np.asarray(a.real_derivative(component, s, x, y), dtype=float)
    zeros: List[float] = []
    threshold = DOUBLE_ROOT * max(1.0, float(np.median(np.abs(values))))

    for i in range(len(s) - 1):
        if values[i] == 0.0:
            zeros.append(float(s[i]))
        elif values[i] * values[i + 1] < 0.0:
            zeros.append(brentq(g, s[i], s[i + 1], xtol=xtol))

    # touching pairs between two samples
    for i in range(1, len(s) - 1):
        left, middle, right = values[i - 1], values[i], values[i + 1]
        if left * middle <= 0.0 or middle * right <= 0.0:
            continue
        if abs(middle) >= min(abs(left), abs(right)):
            continue

        sign = np.sign(middle)
        best = minimize_scalar(lambda v: sign * g(v), method='bounded',
                               bounds=(s[i - 1], s[i + 1]),
                               options={'xatol': xtol})
        lowest = best.fun

        if lowest < 0.0:
            zeros.append(brentq(g, s[i - 1], best.x, xtol=xtol))
            zeros.append(brentq(g, best.x, s[i + 1], xtol=xtol))
        elif abs(lowest) <= threshold:
            zeros.extend([float(best.x)] * 2)

    return sorted(zeros)


def real_zeros(a: Action, component: str, x: float, y: float,
               samples: int = BISECTION_SAMPLES,
               xtol: float = BISECTION_XTOL) -> List[float]:
    """
    Zeros of G along a real component of the torus, with multiplicity

    :param a: Genus 1 action
    :param component: 'a0' or 'a1'
    :param x: Horizontal coordinate
    :param y: Vertical coordinate
    :param samples: Sign change samples per component
    :param xtol: Bisection tolerance

    :return: Sorted parameters
    """
    zeros: List[float] = []
    for arc in _component_samples(a, component, samples):
        zeros.extend(_arc_zeros(a, component, arc, x, y, xtol))

    period = a.curve.period
    return sorted(a.start + (z - a.start) % period for z in zeros)


def torus_distance(a: Action, u: complex, v: complex) -> float:
    """
    Distance between two points of the torus

    :return: Smallest distance between their lifts
    """
    tau = a.curve.tau_im
    dx = (u.real - v.real + 0.5) % 1.0 - 0.5
    dy = (u.imag - v.imag + tau / 2.0) % tau - tau / 2.0
    return abs(complex(dx, dy))


def _reduce(a: Action, u: np.ndarray) -> np.ndarray:
    tau = a.curve.tau_im
    return a.start + (u.real - a.start) % 1.0 + 1j * (u.imag % tau)


def complex_zeros(a: Action, x: float, y: float,
                  grid: int = NEWTON_GRID) -> List[complex]:
    """
    Non-real zeros of dF on the torus, as a list closed under the
    anti-involution u -> conj(u)

    :param a: Genus 1 action
    :param x: Horizontal coordinate
    :param y: Vertical coordinate
    :param grid: Seeds per side of the half fundamental domain

    :return: Points with imaginary part in (0, tau_im)
    """
    tau = a.curve.tau_im
    s = a.start + (np.arange(grid) + 0.5) / grid
    b = (np.arange(grid) + 0.5) / grid * (tau / 2.0)
    u = (s[None, :] + 1j * b[:, None]).ravel()

    alive = np.ones(u.shape, dtype=bool)

    with np.errstate(all='ignore'):
        for _ in range(NEWTON_STEPS):
            step = a._combine(a.basis(u, 1, guard=False), x, y) / \
                a._combine(a.basis(u, 2, guard=False), x, y)
            alive &= np.isfinite(step)
            u = _reduce(a, np.where(alive, u - step, u))

        residual = np.abs(a._combine(a.basis(u, 1, guard=False), x, y))

    found: List[complex] = []
    for z, r, ok in zip(u, residual, alive):
        if not ok or not np.isfinite(r) or r > NEWTON_RESIDUAL:
            continue

        height = z.imag if z.imag <= tau / 2.0 else tau - z.imag
        if min(height, tau / 2.0 - height) <= OFF_REAL:
            continue

        z = complex(z.real, height)
        if all(torus_distance(a, z, w) > DEDUPLICATE for w in found):
            found.append(z)

    pairs = []
    for z in sorted(found, key=lambda w: (w.real, w.imag)):
        pairs.extend([z, complex(z.real, tau - z.imag)])
    return pairs


def strip_count(a: Action, x: float, y: float, margin: float,
                nodes: int = STRIP_NODES) -> float:
    """
    Argument principle count of the zeros of dF with imaginary part in
    (margin, tau_im - margin); dF has no poles there and is periodic in
    the real direction, so only the two horizontal sides contribute

    :return: Count, close to an integer
    """
    tau = a.curve.tau_im
    s = a.start + np.arange(nodes) / nodes

    def mean_ratio(height: float) -> complex:
        u = s + 1j * height
        return np.mean(a._combine(a.basis(u, 2), x, y) /
                       a._combine(a.basis(u, 1), x, y))

    value = (mean_ratio(margin) - mean_ratio(tau - margin)) / (2j * pi)
    return float(value.real)


def _genus1(a: Action, x: float, y: float, samples: int,
            xtol: float) -> CriticalSet:
    tau = a.curve.tau_im
    expected = len(a.distinct_poles())

    probe = a.start + (np.arange(64) + 0.5) / 64
    defect = a.imaginary_defect(A1, probe, x, y)
    if defect > 1e-8:
        raise VerificationError('dF is not real on A1', defect=defect)

    result = CriticalSet(x, y, 1, expected)
    result.real[A0] = real_zeros(a, A0, x, y, samples, xtol)
    result.real[A1] = real_zeros(a, A1, x, y, samples, xtol)
    result.complex = complex_zeros(a, x, y)

    result.points = [complex(s) for s in result.real[A0]] + \
        [complex(s, tau / 2.0) for s in result.real[A1]] + result.complex

    margin = tau / 16.0
    inside = len(result.real[A1]) + sum(
        1 for z in result.complex if margin < z.imag < tau - margin
    )
    counted = strip_count(a, x, y, margin)

    if abs(counted - inside) > 0.25 or result.count != expected:
        raise VerificationError(
            'Zero count of dF: {} found, {} expected, {:.3f} off A0 by the '
            'argument principle against {}'.format(result.count, expected,
                                                   counted, inside),
            defect=abs(counted - inside)
        )

    return result


def critical_set(a: Action, x: float, y: float,
                 samples: int = BISECTION_SAMPLES,
                 xtol: float = BISECTION_XTOL) -> CriticalSet:
    """
    Every zero of dF at a macroscopic point, with the root count certified

    :param a: Action
    :param x: Horizontal coordinate in (0, 1)
    :param y: Vertical coordinate in (0, 1)
    :param samples: Sign change samples per torus component
    :param xtol: Bisection tolerance

    :return: Critical set
    """
    _check_point(x, y)

    if a.genus == 0:
        result = _genus0(a, x, y)
    else:
        result = _genus1(a, x, y, samples, xtol)

    logger.debug('Critical points at (%.6f, %.6f): %d real, %d complex', x,
                 y, result.count - len(result.complex), len(result.complex))
    return result


def critical_points(a: Action, x: float, y: float,
                    samples: int = BISECTION_SAMPLES,
                    xtol: float = BISECTION_XTOL) -> List[complex]:
    return critical_set(a, x, y, samples, xtol).points


def real_root_bound(a: Action) -> int:
    """
    Lower bound 2k + 2l - 4 on the number of real critical points of a
    genus 0 action, one per arc between two angles of the same family

    :param a: Action

    :return: Bound
    """
    poles = a.distinct_poles()
    families = [p.track.family for p in poles]
    return sum(1 for f, g in zip(families, families[1:] + families[:1])
               if f == g)


def pair_separation(a: Action, points: List[complex]) -> float:
    """
    Smallest distance between two critical points

    :return: Distance, infinite for fewer than two points
    """
    best = float('inf')
    for i, u in enumerate(points):
        for v in points[i + 1:]:
            if a.genus == 0:
                distance = abs(u - v)
            else:
                distance = torus_distance(a, u, v)
            best = min(best, distance)
    return best


def certified_degree(a: Action, x: float, y: float) -> Tuple[int, int]:
    """
    Degree of the cleared critical polynomial against 2 (#poles) - 2
    counted from the periods

    :return: (degree, expected)
    """
    return len(critical_polynomial(a, x, y)) - 1, 2 * a.k + 2 * a.l - 2
