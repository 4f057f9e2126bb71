"""
Partition functions of the Aztec diamond in product form.

The recurrence removes one layer of the diamond at a time: spider moves at
every odd face followed by contractions of the degree two vertices leave an
Aztec diamond of size n - 1 whose angle lists are shifted.
"""
from math import pi, sin
from typing import Sequence

import numpy as np

from Kasteleyn.Model import AngleAssignment, FockModel
from Lattice.Aztec import BLACK, FaceId, ODD, VertexId, build_aztec
from Lattice.Divisor import FormalDivisor, TrainTrack
from Utils.Errors import ConfigError, ModelError, SingularityError, \
    VerificationError
from Utils.Logging.Logging import Logging

logger = Logging(__name__).logger


def _theta_at(m: FockModel, divisor: FormalDivisor) -> float:
    value = abs(m.face_theta(divisor))
    if value == 0.0:
        raise SingularityError('theta vanishes at {!r}'.format(divisor))
    return value


def _face_theta(m: FockModel, x: int, y: int) -> float:
    return _theta_at(m, m.graph.divisor((x, y)))


def _prime_modulus(m: FockModel, a: TrainTrack, b: TrainTrack) -> float:
    return abs(m.curve.prime_form(m.point(a), m.point(b)))


def _odd_face_tracks(f: FaceId):
    i, j = (f.x + 1) // 2, (f.y + 1) // 2
    return (TrainTrack('A', j), TrainTrack('B', j), TrainTrack('C', i),
            TrainTrack('D', i))


def _spider_shift(m: FockModel, f: FaceId) -> float:
    alpha, beta, gamma, delta = _odd_face_tracks(f)
    moved = m.graph.divisor(f) + FormalDivisor.from_tracks(
        [alpha, beta], [gamma, delta]
    )
    return _theta_at(m, moved) / _face_theta(m, f.x, f.y)


def spider_factor(m: FockModel, f: FaceId) -> float:
    """
    Factor picked up by the partition function under the spider move at an
    odd face

    :param m: Model
    :param f: Odd face

    :return: Positive factor
    """
    if f.kind != ODD:
        raise ConfigError('Spider moves act on odd faces only')

    alpha, beta, gamma, delta = _odd_face_tracks(f)
    around = np.prod([_face_theta(m, f.x + dx, f.y + dy)
                      for dx in (-1, 1) for dy in (-1, 1)])

    return around / (_prime_modulus(m, alpha, beta) *
                     _prime_modulus(m, gamma, delta)) * _spider_shift(m, f)


def contraction_factor(m: FockModel, v: VertexId) -> float:
    """
    Factor of the contraction of a degree two vertex: after the spider
    moves every vertex of the diamond sits between two faces crossed by one
    pair of parallel tracks

    :param m: Model
    :param v: Vertex of the diamond

    :return: Positive factor
    """
    if v.color == BLACK:
        i = (v.x + 1) // 2
        pair = _prime_modulus(m, TrainTrack('C', i), TrainTrack('D', i))
        faces = (v.x - 1, v.y), (v.x + 1, v.y)
    else:
        j = (v.y + 1) // 2
        pair = _prime_modulus(m, TrainTrack('A', j), TrainTrack('B', j))
        faces = (v.x, v.y - 1), (v.x, v.y + 1)

    return pair / (_face_theta(m, *faces[0]) * _face_theta(m, *faces[1]))


def sweep_factor(m: FockModel) -> float:
    """
    Product of all spider factors and all contraction factors of one layer

    :param m: Model

    :return: Factor
    """
    graph = m.graph
    value = 1.0

    for face in graph.face_classes()[ODD]:
        value *= spider_factor(m, face)
    for vertex in graph.whites + graph.blacks:
        value *= contraction_factor(m, vertex)

    return value


def recurrence_multiplier(m: FockModel) -> float:
    """
    Ratio Z_n / Z_(n-1) of the layer recurrence

    :param m: Model

    :return: Multiplier
    """
    classes = m.graph.face_classes()
    value = 1.0

    for j in range(1, m.n + 1):
        value *= _prime_modulus(m, TrainTrack('A', j), TrainTrack('B', j))
        value *= _prime_modulus(m, TrainTrack('C', j), TrainTrack('D', j))

    for face in classes[ODD]:
        value *= _spider_shift(m, face)
    for face in classes['boundary']:
        value /= _face_theta(m, face.x, face.y)

    return value


def reduced_model(m: FockModel) -> FockModel:
    """
    Model of size n - 1 left after one layer of moves

    :param m: Model of size n >= 2

    :return: (alpha_1..n-1, beta_2..n, gamma_1..n-1, delta_2..n; d + beta_1 -
             delta_1)
    """
    if m.n < 2:
        raise ModelError('Cannot reduce the diamond of size 1')

    angles = AngleAssignment.from_lists(m.angles.alpha[:-1],
                                        m.angles.beta[1:],
                                        m.angles.gamma[:-1],
                                        m.angles.delta[1:])
    d = m.d + m.angles.beta[0] - m.angles.delta[0]

    return m.with_graph(build_aztec(m.n - 1), angles, d)


def partition_product(m: FockModel) -> float:
    """
    Partition function from the layer recurrence with Z_0 = 1

    :param m: Model

    :return: Z_n
    """
    value = 1.0
    current = m

    while True:
        value *= recurrence_multiplier(current)
        logger.debug('Recurrence level %d: partial product %.17g',
                     current.n, value)
        if current.n == 1:
            return value
        current = reduced_model(current)


def _check_genus0(angles: AngleAssignment) -> int:
    n = angles.n
    if len({len(angles.family(f)) for f in 'ABCD'}) != 1 or n == 0:
        raise ModelError('All four angle families need n >= 1 entries')
    return n


def genus0_closed_form(angles: AngleAssignment, tolerance: float = 1e-10) \
        -> float:
    """
    Closed product of the genus 0 partition function, evaluated in the
    sine form and in the sum-of-products form, which must agree

    :param angles: Angles in R / pi Z
    :param tolerance: Relative agreement between both forms

    :return: Z_n
    """
    n = _check_genus0(angles)
    alpha, beta, gamma, delta = angles.alpha, angles.beta, angles.gamma, \
        angles.delta

    sines = 1.0
    sums = 1.0

    for shift in range(n):
        for j in range(n - shift):
            a, b = alpha[j], beta[j + shift]
            c, d = gamma[j], delta[j + shift]

            sines *= abs(sin(b - a) * sin(d - c))
            sums *= abs(sin(d - b) * sin(c - a) + sin(b - c) * sin(d - a))

    scale = 2.0 ** (n * (n + 1))
    first, second = scale * sines, scale * sums

    defect = abs(first - second) / max(first, 1e-300)
    if defect > tolerance:
        raise VerificationError('Genus 0 closed forms disagree',
                                defect=defect)

    return first


def half_turn_angles(n: int, rho: float = pi / 4, alpha: float = 0.0) \
        -> AngleAssignment:
    """
    Homogeneous angles with beta - alpha = delta - gamma = pi / 2, for
    which Z_n = 2^(n(n+1))

    :param n: Size
    :param rho: gamma - alpha, in (0, pi / 2)
    :param alpha: alpha

    :return: Angles
    """
    if not 0.0 < rho < pi / 2:
        raise ConfigError('rho must lie in (0, pi/2)')
    return AngleAssignment.homogeneous(n, alpha, alpha + pi / 2,
                                       alpha + rho, alpha + rho + pi / 2)


def stanley_partition(x: Sequence[float], y: Sequence[float],
                      z: Sequence[float], w: Sequence[float]) -> float:
    """
    Stanley's product formula prod_l prod_j (x_j w_(j+l) + y_j z_(j+l))

    :param x: South-west weights per row
    :param y: South-east weights per row
    :param z: North-west weights per row
    :param w: North-east weights per row

    :return: Partition function
    """
    x, y, z, w = (np.asarray(v, dtype=float) for v in (x, y, z, w))

    if len({len(x), len(y), len(z), len(w)}) != 1 or len(x) == 0:
        raise ConfigError('Stanley weights need four lists of length n')
    if min(v.min() for v in (x, y, z, w)) <= 0.0:
        raise ConfigError('Stanley weights must be positive')

    n = len(x)
    value = 1.0

    for shift in range(n):
        for j in range(n - shift):
            value *= x[j] * w[j + shift] + y[j] * z[j + shift]

    return float(value)
