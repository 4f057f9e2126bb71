from dataclasses import dataclass, field
from math import pi
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from Curve.Theta import ArrayLike
from Kasteleyn.Model import FockModel
from Lattice.Aztec import BLACK, FaceId, Point, VertexId, WHITE, step_track
from Lattice.Divisor import FormalDivisor, TrainTrack
from Utils.Errors import ConfigError, SingularityError
from Utils.Logging.Logging import Logging

logger = Logging(__name__).logger

DiamondVertex = Union[VertexId, FaceId, Point]

#: (exponent sign, orientation sigma, divisor): theta(sigma (t + AJ(D)) + u)
ThetaFactor = Tuple[int, int, FormalDivisor]


@dataclass(frozen=True)
class MeromorphicProduct:
    """
    Product of powers of prime forms E(a_T, u) and of shifted theta
    functions, kept unevaluated so that pole orders stay exact
    """
    prime_exponents: Dict[TrainTrack, int] = field(default_factory=dict)
    theta_factors: Tuple[ThetaFactor, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not any(self.prime_exponents.values()) and \
            not self.theta_factors

    def __mul__(self, other: 'MeromorphicProduct') -> 'MeromorphicProduct':
        exponents = dict(self.prime_exponents)
        for track, value in other.prime_exponents.items():
            exponents[track] = exponents.get(track, 0) + value

        return MeromorphicProduct(
            {t: e for t, e in exponents.items() if e},
            _cancel(self.theta_factors + other.theta_factors)
        )

    def inverse(self) -> 'MeromorphicProduct':
        return MeromorphicProduct(
            {t: -e for t, e in self.prime_exponents.items()},
            tuple((-s, sigma, d) for s, sigma, d in self.theta_factors)
        )

    def grouped(self, m: FockModel) -> List[Tuple[float, int]]:
        """
        Prime form exponents collected by angle value, so that repeated
        angles give higher order poles and zeros

        :param m: Model providing the angles

        :return: Sorted [(angle, total exponent)] without zero exponents
        """
        totals: Dict[float, int] = {}
        for track, exponent in self.prime_exponents.items():
            angle = m.angle(track)
            totals[angle] = totals.get(angle, 0) + exponent
        return sorted((a, e) for a, e in totals.items() if e)


def _cancel(factors: Sequence[ThetaFactor]) -> Tuple[ThetaFactor, ...]:
    counts: Dict[Tuple[int, FormalDivisor], int] = {}
    for sign, sigma, divisor in factors:
        counts[(sigma, divisor)] = counts.get((sigma, divisor), 0) + sign

    result = []
    for (sigma, divisor), total in counts.items():
        step = 1 if total > 0 else -1
        result.extend((step, sigma, divisor) for _ in range(abs(total)))
    return tuple(result)


def _kind(x: DiamondVertex) -> str:
    if isinstance(x, VertexId):
        return x.color
    if isinstance(x, FaceId):
        return 'face'

    px, py = x
    if px % 2 == py % 2:
        return 'face'
    return WHITE if px % 2 == 0 else BLACK


def _point(x: DiamondVertex) -> Point:
    return tuple(x) if isinstance(x, tuple) else x.point


def divisor_of(m: FockModel, x: DiamondVertex, ext=None) -> FormalDivisor:
    """
    Abel map of a vertex or face of the diamond graph, looked up in the
    extended window when one is given

    :param m: Model
    :param x: Vertex or face
    :param ext: Optional extended graph

    :return: Divisor
    """
    if ext is not None and isinstance(x, VertexId) and x in ext.divisors:
        return ext.divisors[x]
    return m.graph.divisor(_point(x))


def endpoint_factor(kind: str, divisor: FormalDivisor, source: bool) \
        -> Tuple[ThetaFactor, ...]:
    """
    Theta factor attached to an endpoint: theta(-t + u - D(b)) for a source
    black, theta(t + u + D(w))^-1 for a source white, inverted at a target

    :param kind: 'black', 'white' or 'face'
    :param divisor: Abel map of the endpoint
    :param source: Whether the endpoint is the source

    :return: Zero or one factor
    """
    if kind == 'face':
        return ()

    sign = 1 if kind == BLACK else -1
    if not source:
        sign = -sign
    sigma = -1 if kind == BLACK else 1

    return (sign, sigma, divisor),


def g_form(m: FockModel, x: DiamondVertex, y: DiamondVertex,
           ext=None) -> MeromorphicProduct:
    """
    Kernel form g_(x,y): the prime forms E(a_T, u)^(c_T(y) - c_T(x)) read
    off the Abel map along the staircase from x to y, and the theta factors
    of both endpoints

    :param m: Model
    :param x: Source
    :param y: Target
    :param ext: Extended graph when x or y lies outside the diamond

    :return: Product
    """
    source = divisor_of(m, x, ext)
    target = divisor_of(m, y, ext)

    if _point(x) == _point(y) and _kind(x) == _kind(y):
        return MeromorphicProduct()

    difference = target - source
    factors = endpoint_factor(_kind(x), source, True) + \
        endpoint_factor(_kind(y), target, False)

    return MeromorphicProduct(difference.coefficients, _cancel(factors))


def staircase(start: Point, end: Point) -> List[Point]:
    """
    Monotone lattice path going east (or west) first, then north (or south)

    :param start: Start point
    :param end: End point

    :return: Points including both ends
    """
    (x0, y0), (x1, y1) = start, end
    path = [start]

    step = 1 if x1 > x0 else -1
    for x in range(x0 + step, x1 + step, step) if x1 != x0 else ():
        path.append((x, y0))

    step = 1 if y1 > y0 else -1
    for y in range(y0 + step, y1 + step, step) if y1 != y0 else ():
        path.append((x1, y))

    return path


def path_product(m: FockModel, path: Sequence[Point], u: ArrayLike) \
        -> ArrayLike:
    """
    Product of the elementary factors along an explicit diamond graph path:
    each unit step crossing the track T with sign s contributes E(a_T, u)^s,
    and the endpoints contribute their theta factors

    :param m: Model
    :param path: Lattice points, consecutive ones at distance one
    :param u: Evaluation point(s)

    :return: Value
    """
    if len(path) < 2:
        return np.ones_like(np.asarray(u, dtype=complex)) \
            if np.ndim(u) else 1.0 + 0j

    exponents: Dict[TrainTrack, int] = {}
    for start, end in zip(path, path[1:]):
        track, sign = step_track(tuple(start), tuple(end))
        exponents[track] = exponents.get(track, 0) + sign

    first, last = tuple(path[0]), tuple(path[-1])
    factors = endpoint_factor(_kind(first), m.graph.divisor(first), True) + \
        endpoint_factor(_kind(last), m.graph.divisor(last), False)

    product = MeromorphicProduct({t: e for t, e in exponents.items() if e},
                                 _cancel(factors))
    return evaluate(m, product, u)


def evaluate(m: FockModel, p: MeromorphicProduct, u: ArrayLike) \
        -> ArrayLike:
    """
    Value of a product at u (a point of the sphere in genus 0, a complex
    number modulo the lattice in genus 1)

    :param m: Model
    :param p: Product
    :param u: Evaluation point(s)

    :return: Value(s)
    """
    scalar = np.ndim(u) == 0
    u = np.asarray(u, dtype=complex)
    value = np.ones(u.shape, dtype=complex)

    for angle, exponent in p.grouped(m):
        base = m.curve.prime_form(m.curve.point(angle), u)
        if exponent < 0 and np.any(base == 0):
            raise SingularityError('Pole of order {} hit at angle {}'.format(
                -exponent, angle
            ))
        value = value * base ** exponent

    if m.curve.genus == 1:
        for sign, sigma, divisor in p.theta_factors:
            theta = m.curve.theta(sigma * (m.t + m.aj(divisor)) + u)
            if sign < 0 and np.any(theta == 0):
                raise SingularityError('Theta factor vanishes')
            value = value * theta ** sign

    return complex(value) if scalar else value


def pole_zero_profile(m: FockModel, p: MeromorphicProduct) \
        -> Dict[str, List[Tuple[float, int]]]:
    """
    Poles and zeros of the prime form part of a product on A0

    :param m: Model
    :param p: Product

    :return: {'poles': [(angle, order)], 'zeros': [(angle, order)]}
    """
    grouped = p.grouped(m)
    return {
        'poles': [(a, -e) for a, e in grouped if e < 0],
        'zeros': [(a, e) for a, e in grouped if e > 0]
    }


def kernel_check(m: FockModel, w: VertexId, x: DiamondVertex,
                 u: ArrayLike) -> float:
    """
    |sum_b K_(w,b) g_(b,x)(u)| over the four black neighbours of w

    :param m: Model
    :param w: White vertex with four neighbours
    :param x: Any vertex or face of the diamond graph
    :param u: Evaluation point(s)

    :return: Largest residual over the evaluation points
    """
    edges = m.graph.adjacency.get(w, [])
    if w.color != WHITE or len(edges) != 4:
        raise ConfigError('{} is not an interior white vertex'.format(w))

    total = 0.0
    for edge in edges:
        total = total + m.fock_weight(edge) * \
            evaluate(m, g_form(m, edge.black, x), u)

    return float(np.max(np.abs(total)))


def p_point(m: FockModel) -> float:
    """
    p = sum_j (delta_j - beta_j) - t - d, reduced modulo 1 in genus 1

    :param m: Model

    :return: p (0 on the sphere)
    """
    if m.curve.genus == 0:
        return 0.0

    value = sum(m.angles.delta) - sum(m.angles.beta) - m.t - m.d
    return value % 1.0


def fay_residue_check(m: FockModel, w: VertexId, nodes: int = 256,
                      tolerance: float = 1e-9) -> Dict[str, object]:
    """
    Residues of sum_b K_(w,b) g_(b,w) over the two right neighbours of w:
    +1 at beta, -1 at alpha and none at gamma

    :param m: Model
    :param w: White vertex with two right neighbours
    :param nodes: Trapezoid nodes per circle
    :param tolerance: Accepted defect

    :return: {'residues': {...}, 'defect': float, 'passed': bool}
    """
    right = [e for e in m.graph.adjacency.get(w, []) if e.black.x > w.x]
    if w.color != WHITE or len(right) != 2:
        raise ConfigError('{} needs two right neighbours'.format(w))

    j = (w.y + 1) // 2
    tracks = {
        'beta': TrainTrack('B', j),
        'alpha': TrainTrack('A', j),
        'gamma': TrainTrack('C', w.x // 2 + 1)
    }
    expected = {'beta': 1.0, 'alpha': -1.0, 'gamma': 0.0}

    angles = sorted({m.angle(t) for t, _ in m.angles.items()})
    phi = 2.0 * pi * np.arange(nodes) / nodes

    residues = {}
    for name, track in tracks.items():
        centre = m.angle(track)
        gaps = [abs(a - centre) for a in angles if a != centre] + \
            [m.curve.period - abs(a - centre) for a in angles]
        radius = 0.25 * min(g for g in gaps if g > 0)
        if m.curve.genus == 1:
            radius = min(radius, 0.25 * m.curve.tau_im)

        z = centre + radius * np.exp(1j * phi)
        dz = 1j * radius * np.exp(1j * phi) * (2.0 * pi / nodes)
        u = m.curve.point(z)
        du = 2j * u * dz if m.curve.genus == 0 else dz

        total = sum(m.fock_weight(e) * evaluate(m, g_form(m, e.black, w), u)
                    for e in right)
        residues[name] = complex(np.sum(total * du) / (2j * pi))

    defect = max(abs(residues[k] - expected[k]) for k in expected)
    logger.debug('Residue check at %s: %r', w, residues)

    return {
        'residues': residues,
        'defect': defect,
        'passed': defect <= tolerance
    }
