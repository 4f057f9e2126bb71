"""
Known dimer models written in Fock's form: Stanley's row weights on the
sphere and the biased 2x2 periodic weights on the torus.
"""
from math import atan2, pi, sin, sqrt
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect

from Curve.Curve import Genus0
from Curve.Elliptic import jacobi_cs, nome_from_kprime, quarter_period
from Kasteleyn.Matrix import EdgeKey, KasteleynMatrix
from Kasteleyn.Model import AngleAssignment, FockModel
from Lattice.Aztec import AztecGraph, Edge, build_aztec
from Utils.Errors import ConfigError, ConvergenceError
from Utils.Logging.Logging import Logging

logger = Logging(__name__).logger

STANLEY_KEYS = {'x', 'y', 'z', 'w', 'alpha1', 'gamma', 'delta'}
BIASED_KEYS = {'a', 'b'}

#: biased 2x2 edge weights by (row mod 4, column mod 4)
BIASED_PATTERN = (
    ('1/b', 'a', 'b', 'a'),
    ('a/b', '1', 'ab', '1'),
    ('b', 'a', '1/b', 'a'),
    ('ab', '1', 'a/b', '1')
)


def _solve(function, lo: float, hi: float, xtol: float, what: str) -> float:
    span = hi - lo
    lo, hi = lo + 1e-14 * span, hi - 1e-14 * span

    try:
        return bisect(function, lo, hi, xtol=xtol, maxiter=500)
    except (ValueError, RuntimeError) as error:
        raise ConvergenceError('Could not bracket {}'.format(what)) \
            from error


def _positive(values: Sequence[float], name: str) -> np.ndarray:
    array = np.asarray(values, dtype=float)
    if array.ndim != 1 or len(array) == 0:
        raise ConfigError('{} must be a nonempty list'.format(name))
    if np.any(array <= 0.0):
        raise ConfigError('{} must be positive'.format(name))
    return array


def stanley_to_fock(x: Sequence[float], y: Sequence[float],
                    z: Sequence[float], w: Sequence[float],
                    alpha1: float = 0.0, gamma: float = pi / 4,
                    delta: float = 3 * pi / 4,
                    xtol: float = 1e-13) -> AngleAssignment:
    """
    Genus 0 angles with gamma and delta constant whose face weights equal
    those of Stanley's row weights. beta_j and alpha_(j+1) are found in
    turn, each by a monotone one dimensional solve.

    :param x: South-west weights
    :param y: South-east weights
    :param z: North-west weights
    :param w: North-east weights
    :param alpha1: First alpha angle
    :param gamma: Common gamma angle
    :param delta: Common delta angle
    :param xtol: Bisection tolerance

    :return: Angles in R / pi Z
    """
    x, y, z, w = (_positive(v, k) for v, k in ((x, 'x'), (y, 'y'),
                                                 (z, 'z'), (w, 'w')))
    if len({len(x), len(y), len(z), len(w)}) != 1:
        raise ConfigError('Stanley weights need four lists of length n')

    gamma = alpha1 + (gamma - alpha1) % pi
    delta = alpha1 + (delta - alpha1) % pi
    if not alpha1 < gamma < delta:
        raise ConfigError('alpha1 < gamma < delta must hold cyclically')

    n = len(x)
    alphas = [alpha1]
    betas = []

    for j in range(n):
        alpha = alphas[-1]
        odd = x[j] * w[j] / (y[j] * z[j])
        ratio = odd * sin(delta - alpha) / sin(gamma - alpha)

        beta = _solve(lambda b: sin(delta - b) / sin(b - gamma) - ratio,
                      gamma, delta, xtol, 'beta_{}'.format(j + 1))
        betas.append(beta)

        if j == n - 1:
            break

        even = y[j + 1] * z[j] / (x[j + 1] * w[j])
        ratio = even * sin(delta - beta) / sin(beta - gamma)

        following = _solve(
            lambda a: abs(sin(delta - a) / sin(gamma - a)) - ratio,
            delta, gamma + pi, xtol, 'alpha_{}'.format(j + 2)
        )
        alphas.append(following - pi)

    logger.debug('Stanley weights mapped to alpha=%r beta=%r', alphas, betas)

    return AngleAssignment.from_lists(alphas, betas, (gamma,) * n,
                                      (delta,) * n)


def stanley_weights(g: AztecGraph, x: Sequence[float], y: Sequence[float],
                    z: Sequence[float], w: Sequence[float]) \
        -> Dict[EdgeKey, float]:
    """
    Edge weights of Stanley's model: around the odd face of row j the
    south-west, south-east, north-west and north-east edges carry x_j, y_j,
    z_j and w_j

    :param g: Graph
    :param x: South-west weights
    :param y: South-east weights
    :param z: North-west weights
    :param w: North-east weights

    :return: Weight per edge
    """
    weights = {}

    for face in g.face_classes()['odd']:
        j = (face.y + 1) // 2 - 1
        corner = g.face_corners(face)
        west, east = corner['W'], corner['E']
        south, north = corner['S'], corner['N']

        weights[(west, south)] = float(x[j])
        weights[(east, south)] = float(y[j])
        weights[(west, north)] = float(z[j])
        weights[(east, north)] = float(w[j])

    return weights


def reference_matching(g: AztecGraph) -> List[Edge]:
    """
    Matching where the first j whites of row j take their north-west edge
    and the others their south-east edge

    :param g: Graph

    :return: Edges of the matching
    """
    edges = []

    for white in g.whites:
        j = (white.y + 1) // 2
        if white.x <= 2 * j - 2:
            black = g.black(white.x + 1, white.y + 1)
        else:
            black = g.black(white.x - 1, white.y - 1)
        edges.append(g.edge(white, black))

    return edges


def weighted_kasteleyn(K: KasteleynMatrix,
                       weights: Dict[EdgeKey, float]) -> KasteleynMatrix:
    """
    Kasteleyn matrix for positive edge weights, borrowing the phases of a
    Kasteleyn matrix on the same graph

    :param K: Matrix providing the phases
    :param weights: Positive weights

    :return: Matrix with |K'_e| = weights[e]
    """
    values = np.zeros_like(K.values)

    for (i, j), edge in K.provenance.items():
        phase = K.values[i, j] / abs(K.values[i, j])
        values[i, j] = weights[edge.key] * phase

    return K.replace(values)


def biased_value(name: str, a: float, b: float) -> float:
    return {
        '1': 1.0,
        'a': a,
        'b': b,
        '1/b': 1.0 / b,
        'a/b': a / b,
        'ab': a * b
    }[name]


def biased2x2_weights(g: AztecGraph, a: float, b: float) \
        -> Dict[EdgeKey, float]:
    """
    Biased 2x2 periodic edge weights, the four row pattern repeated

    :param g: Graph
    :param a: First parameter
    :param b: Second parameter

    :return: Weight per edge
    """
    weights = {}

    for edge in g.edges:
        row = min(edge.white.y, edge.black.y) % 4
        column = ((edge.white.x + edge.black.x - 1) // 2) % 4
        weights[edge.key] = biased_value(BIASED_PATTERN[row][column], a, b)

    return weights


def b_of_kprime(a: float, kp: float) -> float:
    """
    b as a function of k' at fixed a, in the form free of cancellation at
    a = 1 where it reduces to sqrt(k')

    :param a: Parameter a
    :param kp: Complementary modulus

    :return: b
    """
    return (sqrt(kp + a * a) + sqrt(kp + 1.0 / (a * a))) / \
        (sqrt(1.0 / kp + a * a) + sqrt(1.0 / kp + 1.0 / (a * a)))


def _biased_sphere(a: float) -> Dict[str, Any]:
    rho = atan2(1.0, a) / pi
    logger.info('Biased 2x2 (a=%r, b=1) on the sphere: rho=%r', a, rho)

    return {
        'rho': rho,
        'kprime': 1.0,
        'curve': Genus0(),
        't': 0.0,
        'angles': (0.0, pi / 2, pi * rho, pi / 2 + pi * rho)
    }


def biased2x2_to_fock(a: float, b: float, xtol: float = 1e-13) \
        -> Dict[str, Any]:
    """
    Genus 1 parameters reproducing the biased 2x2 face weights: k' solves
    b = b(k'), then rho solves a = sqrt(k') cs(2 K rho). At b = 1 the torus
    degenerates (k' = 1) and the weights come from the sphere with
    a = cot(pi rho).

    :param a: Positive parameter
    :param b: Parameter in (0, 1]
    :param xtol: Bisection tolerance

    :return: {'rho', 'kprime', 'curve', 't', 'angles'}
    """
    if not a > 0.0:
        raise ConfigError('a must be positive, got {}'.format(a))
    if not 0.0 < b <= 1.0:
        raise ConfigError('b must lie in (0, 1], got {}'.format(b))

    if b == 1.0:
        return _biased_sphere(a)

    if a == 1.0:
        kp = b * b
    else:
        kp = _solve(lambda k: b_of_kprime(a, k) - b, 0.0, 1.0, xtol, 'k\'')

    curve = nome_from_kprime(kp)
    k = sqrt((1.0 - kp) * (1.0 + kp))
    quarter = quarter_period(k)
    target = a * sqrt(kp)

    if a == 1.0:
        rho = 0.25
    else:
        rho = _solve(lambda r: jacobi_cs(2.0 * quarter * r, k) - target,
                     0.0, 0.5, xtol, 'rho')

    logger.info('Biased 2x2 (a=%r, b=%r): k\'=%r rho=%r tau_im=%r', a, b, kp,
                rho, curve.tau_im)

    return {
        'rho': rho,
        'kprime': kp,
        'curve': curve,
        't': 0.25,
        'angles': (0.0, 0.5, rho, 0.5 + rho)
    }


def edge_periodicity_check(angles: AngleAssignment,
                           tolerance: float = 1e-12) -> Tuple[bool, float]:
    """
    Homogeneous genus 1 angles give 2x2 periodic edge weights when
    alpha - beta + gamma - delta and alpha - beta - gamma + delta vanish
    modulo 1

    :param angles: Homogeneous angles
    :param tolerance: Accepted defect

    :return: (periodic, worst defect)
    """
    if not angles.is_homogeneous():
        raise ConfigError('Periodicity check needs homogeneous angles')

    a, b, c, d = angles.alpha[0], angles.beta[0], angles.gamma[0], \
        angles.delta[0]

    defects = []
    for value in (a - b + c - d, a - b - c + d):
        residue = value % 1.0
        defects.append(min(residue, 1.0 - residue))

    worst = max(defects)
    return worst <= tolerance, worst


def stanley_model(config: Dict[str, Any]) -> FockModel:
    unknown = set(config) - STANLEY_KEYS
    if unknown:
        raise ConfigError('Unknown stanley keys: {}'.format(
            ', '.join(sorted(unknown))
        ))
    if not {'x', 'y', 'z', 'w'} <= set(config):
        raise ConfigError('stanley needs x, y, z and w')

    angles = stanley_to_fock(config['x'], config['y'], config['z'],
                             config['w'], config.get('alpha1', 0.0),
                             config.get('gamma', pi / 4),
                             config.get('delta', 3 * pi / 4))

    return FockModel(build_aztec(angles.n), Genus0(), angles)


def biased_model(n: int, config: Dict[str, Any]) -> FockModel:
    unknown = set(config) - BIASED_KEYS
    if unknown or set(config) != BIASED_KEYS:
        raise ConfigError('biased needs exactly a and b')

    gauge = biased2x2_to_fock(float(config['a']), float(config['b']))
    alpha, beta, gamma, delta = gauge['angles']
    return FockModel(build_aztec(n), gauge['curve'],
                     AngleAssignment.homogeneous(n, alpha, beta, gamma,
                                                 delta),
                     gauge['t'], 0.0)


def model_from_config(config: Dict[str, Any], terms_cap: int = 64,
                      extended: Optional[Dict[str, float]] = None) \
        -> FockModel:
    """
    Model from any of the three accepted forms: explicit angles, Stanley's
    weights or the biased 2x2 parameters

    :param config: Model section
    :param terms_cap: Theta series cap
    :param extended: Extended angle overrides

    :return: Model
    """
    if not isinstance(config, dict):
        raise ConfigError('model must be an object')

    if 'stanley' in config:
        if set(config) - {'stanley', 'n'}:
            raise ConfigError('stanley models only take n and stanley')
        model = stanley_model(config['stanley'])
        if config.get('n', model.n) != model.n:
            raise ConfigError('n does not match the Stanley weight lists')
        return model

    if 'biased' in config:
        if set(config) != {'biased', 'n'}:
            raise ConfigError('biased models need exactly n and biased')
        n = config['n']
        if not isinstance(n, int) or isinstance(n, bool):
            raise ConfigError('n must be an integer')
        return biased_model(n, config['biased'])

    return FockModel.from_config(config, terms_cap, extended)
