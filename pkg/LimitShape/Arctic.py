from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from LimitShape.Action import A0, A1, COMPONENTS, Action
from LimitShape.Critical import BISECTION_SAMPLES, BISECTION_XTOL, \
    CriticalSet, critical_set, pair_separation
from Utils.Errors import ConfigError, VerificationError
from Utils.Logging.Logging import Logging
from Utils.Pool import parallel_map, worker_count

logger = Logging(__name__).logger

LIQUID = 'liquid'
FROZEN = 'frozen'
GAS = 'gas'
BOUNDARY = 'boundary'
UNRESOLVED = 'unresolved'

#: two critical points closer than this count as a double point
BOUNDARY_DISTANCE = 1e-6
CONJUGATE_TOLERANCE = 1e-7
DEFAULT_SAMPLES = 2048
TANGENCY_OFFSET = 1e-5

#: side of the unit square touched when u0 reaches an angle of the family
SIDES = {'A': 'bottom', 'B': 'top', 'C': 'left', 'D': 'right'}


@dataclass
class PhasePoint:
    x: float
    y: float
    phase: str
    component: Optional[str] = None
    witnesses: List[complex] = field(default_factory=list)

    def to_row(self) -> List[object]:
        return [self.x, self.y, self.phase, self.component or '']


@dataclass
class ArcticCurve:
    component: str
    samples: List[Tuple[float, float, float]] = field(default_factory=list)
    skipped: int = 0

    @property
    def points(self) -> List[Tuple[float, float]]:
        return [(x, y) for _, x, y in self.samples]

    def to_rows(self) -> List[List[object]]:
        return [[self.component, s, x, y] for s, x, y in self.samples]


def _arc_name(a: Action, s: float) -> str:
    """
    Name of the arc of A0 minus the angles that contains a parameter

    :param a: Action
    :param s: Lifted parameter on A0

    :return: e.g. 'alpha_1..gamma_1'
    """
    poles = a.distinct_poles()
    for left, right in zip(poles, poles[1:] + poles[:1]):
        hi = right.angle if right.angle > left.angle else \
            right.angle + a.curve.period
        if left.angle < s < hi or left.angle < s + a.curve.period < hi:
            return '{}..{}'.format(left.name, right.name)
    return poles[-1].name


def _excess(a: Action, values: List[float]) -> Dict[str, List[float]]:
    """
    Real critical points of A0 beyond the one forced on each arc between
    two angles of the same family, grouped by arc

    :return: Arc name -> the points of arcs with an excess
    """
    poles = a.distinct_poles()
    groups: Dict[str, List[float]] = {}
    forced: Dict[str, int] = {}

    for left, right in zip(poles, poles[1:] + poles[:1]):
        name = '{}..{}'.format(left.name, right.name)
        groups[name] = []
        forced[name] = int(left.track.family == right.track.family)

    for s in values:
        groups[_arc_name(a, s)].append(s)

    return {name: points for name, points in groups.items()
            if len(points) > forced[name]}


def _check_conjugate(a: Action, pair: List[complex]) -> None:
    u, v = pair
    if a.genus == 0:
        defect = abs(u * np.conj(v) - 1.0)
    else:
        defect = abs(u.real - v.real) + abs(u.imag + v.imag -
                                            a.curve.tau_im)
    if defect > CONJUGATE_TOLERANCE:
        raise VerificationError('Non-real critical points are not '
                                'conjugate', defect=defect)


def phase_of(a: Action, critical: CriticalSet) -> PhasePoint:
    """
    Phase of a point from its critical set

    :param a: Action
    :param critical: Zeros of dF at the point

    :return: Phase point
    """
    x, y = critical.x, critical.y

    if pair_separation(a, critical.points) < BOUNDARY_DISTANCE:
        return PhasePoint(x, y, BOUNDARY)

    if len(critical.complex) == 2:
        _check_conjugate(a, critical.complex)
        return PhasePoint(x, y, LIQUID, None, list(critical.complex))
    if critical.complex:
        raise VerificationError('{} non-real critical points at ({}, {})'
                                .format(len(critical.complex), x, y))

    if a.genus == 1 and len(critical.real[A1]) > 2:
        return PhasePoint(x, y, GAS, A1,
                          [complex(s, a.curve.tau_im / 2.0)
                           for s in critical.real[A1]])

    excess = _excess(a, critical.real[A0])
    if not excess:
        raise VerificationError('No free pair of critical points at ({}, {})'
                                .format(x, y))
    if len(excess) > 1:
        logger.warning('Free critical points at (%.6f, %.6f) lie on %d arcs',
                       x, y, len(excess))

    name, points = next(iter(excess.items()))
    return PhasePoint(x, y, FROZEN, name,
                      [complex(a.curve.point(s)) for s in points])


def classify_phase(a: Action, x: float, y: float,
                   samples: int = BISECTION_SAMPLES,
                   xtol: float = BISECTION_XTOL) -> PhasePoint:
    """
    Liquid when the free pair of critical points is non-real, frozen when
    it lies on A0 (in the corner attached to its arc), gaseous when it
    lies on A1 and boundary when two critical points merge

    :param a: Action
    :param x: Horizontal coordinate in (0, 1)
    :param y: Vertical coordinate in (0, 1)
    :param samples: Sign change samples on the torus
    :param xtol: Bisection tolerance

    :return: Phase point
    """
    return phase_of(a, critical_set(a, x, y, samples, xtol))


def _phase_row(a: Action, points: Sequence[Tuple[float, float]]) \
        -> List[PhasePoint]:
    result = []
    for x, y in points:
        try:
            result.append(classify_phase(a, x, y))
        except VerificationError as error:
            logger.warning('Phase at (%.6f, %.6f) unresolved: %s', x, y,
                           error)
            result.append(PhasePoint(x, y, UNRESOLVED))
    return result


def phase_grid(a: Action, grid: int, workers: Optional[int] = None) \
        -> List[PhasePoint]:
    """
    Phases at the cell centres of a grid x grid partition of the square

    :param a: Action
    :param grid: Cells per side
    :param workers: Worker processes, one row of cells per task

    :return: Phase points, row by row from the bottom
    """
    if grid < 1:
        raise ConfigError('grid must be positive')

    centres = (np.arange(grid) + 0.5) / grid
    rows = [[(float(x), float(y)) for x in centres] for y in centres]

    parts = parallel_map(_phase_row, [(a, row) for row in rows],
                         worker_count(workers))
    return [point for part in parts for point in part]


def solve_double_point(a: Action, component: str, s: np.ndarray) \
        -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Solve G(s; x, y) = G'(s; x, y) = 0 for (x, y), one 2 x 2 linear
    system per parameter

    :param a: Action
    :param component: 'a0' or 'a1'
    :param s: Parameters

    :return: (x, y, singular mask)
    """
    g, h = a.real_basis(component, s)

    det = g[:, 1] * h[:, 2] - g[:, 2] * h[:, 1]
    scale = np.abs(g[:, 1] * h[:, 2]) + np.abs(g[:, 2] * h[:, 1])
    singular = ~(np.abs(det) > 1e-13 * scale)

    with np.errstate(all='ignore'):
        x = (-g[:, 0] * h[:, 2] + g[:, 2] * h[:, 0]) / det
        y = (-g[:, 1] * h[:, 0] + h[:, 1] * g[:, 0]) / det

    return x, y, singular


def arctic_curve(a: Action, component: str = A0,
                 n_samples: int = DEFAULT_SAMPLES) -> ArcticCurve:
    """
    Points (x, y) at which a point of a real component is a double
    critical point of F

    :param a: Action
    :param component: 'a0' (outer curve) or 'a1' (boundary of the gas
                      bubble, torus only)
    :param n_samples: Parameters on the component

    :return: Curve samples inside the unit square, in parameter order
    """
    if component not in COMPONENTS:
        raise ConfigError('Unknown component {!r}'.format(component))
    if component == A1 and a.genus == 0:
        raise ConfigError('The sphere has no component a1')
    if n_samples < 1:
        raise ConfigError('n_samples must be positive')

    period = a.curve.period
    s = a.start + (np.arange(n_samples) + 0.5) / n_samples * period

    if component == A0:
        angles = np.array([p.angle for p in a.distinct_poles()])
        offset = np.abs((s[:, None] - angles + period / 2) % period -
                        period / 2)
        s = s[np.min(offset, axis=1) > 1e-9]

    x, y, singular = solve_double_point(a, component, s)
    inside = ~singular & (x >= -1e-12) & (x <= 1 + 1e-12) & \
        (y >= -1e-12) & (y <= 1 + 1e-12)

    if np.any(singular):
        logger.debug('Skipped %d singular parameters on %s',
                     int(np.sum(singular)), component)

    curve = ArcticCurve(component, [
        (float(p), float(np.clip(u, 0.0, 1.0)), float(np.clip(v, 0.0, 1.0)))
        for p, u, v, keep in zip(s, x, y, inside) if keep
    ], n_samples - int(np.sum(inside)))

    logger.info('Arctic curve on %s: %d of %d samples kept', component,
                len(curve.samples), n_samples)
    return curve


def cross_ratio(alpha: complex, beta: complex, gamma: complex,
                delta: complex) -> float:
    """
    (beta - alpha)(delta - gamma) / ((beta - gamma)(delta - alpha)) of four
    points of the unit circle in the cyclic order alpha, gamma, beta, delta

    :return: Cross ratio, larger than 1
    """
    points = [complex(alpha), complex(beta), complex(gamma), complex(delta)]
    for i, p in enumerate(points):
        for q in points[i + 1:]:
            if abs(p - q) < 1e-14:
                raise ConfigError('Cross ratio of repeated points')

    value = (points[1] - points[0]) * (points[3] - points[2]) / \
        ((points[1] - points[2]) * (points[3] - points[0]))

    if abs(value.imag) > 1e-9 * max(1.0, abs(value)):
        raise ConfigError('Points are not concyclic')
    return float(value.real)


def action_cross_ratio(a: Action) -> float:
    """
    Cross ratio of a constant angle action on the sphere

    :param a: Action with k = l = 1
    :return: r
    """
    if a.genus != 0 or a.k != 1 or a.l != 1:
        raise ConfigError('The cross ratio needs constant angles on the '
                          'sphere')
    point = {p.track.family: p.point for p in a.poles}
    return cross_ratio(point['A'], point['B'], point['C'], point['D'])


def ellipse_residual(r: float, x: float, y: float) -> float:
    """
    Implicit equation of the arctic curve of constant angles with cross
    ratio r, in the orientation where alpha touches the bottom side and
    gamma the left side:

        r^2 X^2 + r^2 Y^2 - 2 r (2 - r) X Y - (r - 1),  X = x - 1/2,
                                                        Y = y - 1/2

    :return: Residual, zero on the curve
    """
    u, v = x - 0.5, y - 0.5
    return r * r * u * u + r * r * v * v - 2.0 * r * (2.0 - r) * u * v - \
        (r - 1.0)


def tangency_points(a: Action, offset: float = TANGENCY_OFFSET) \
        -> List[Dict[str, object]]:
    """
    Contact points of the outer arctic curve with the sides of the square,
    as the limits of the curve when the parameter reaches an angle

    :param a: Action
    :param offset: Distance of the two parameters averaged around an angle

    :return: [{'track', 'side', 'x', 'y'}] in the order of the angles
    """
    result = []

    for pole in a.distinct_poles():
        s = np.array([pole.angle - offset, pole.angle + offset])
        x, y, singular = solve_double_point(a, A0, s)
        if np.any(singular):
            logger.debug('Singular system next to %s', pole.name)
            continue

        result.append({
            'track': pole.name,
            'side': SIDES[pole.track.family],
            'x': float(np.mean(x)),
            'y': float(np.mean(y))
        })

    return result


def tangency_clusters(points: Sequence[Dict[str, object]],
                      tolerance: float = 1e-6) -> Dict[str, int]:
    """
    Number of distinct contact points on each side

    :param points: Output of tangency_points
    :param tolerance: Contacts closer than this are the same

    :return: Side -> count
    """
    clusters: Dict[str, List[Tuple[float, float]]] = {
        side: [] for side in SIDES.values()
    }
    for point in points:
        here = (point['x'], point['y'])
        found = clusters[point['side']]
        if all(abs(here[0] - p[0]) + abs(here[1] - p[1]) > tolerance
               for p in found):
            found.append(here)

    return {side: len(found) for side, found in clusters.items()}
