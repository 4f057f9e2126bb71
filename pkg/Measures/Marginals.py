from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from Inverse.Extended import ExtendedInverse
from Inverse.Inverse import kinv_batch
from Kasteleyn.Model import FockModel
from Lattice.Aztec import Edge, Point
from Lattice.Extended import AZTEC, ExtendedGraph
from Utils.Errors import ConfigError, VerificationError
from Utils.Logging.Logging import Logging

logger = Logging(__name__).logger

DEFAULT_CLAMP = 1e-11
DEFAULT_IMAGINARY = 1e-9

#: order of the regions that makes the window inverse block triangular
BLOCK_RANK = {'W': 0, 'E': 1, AZTEC: 2, 'N': 3, 'S': 4}

EdgeLike = Union[Edge, Tuple[Point, Point]]


def clamp_probability(value: complex, clamp: float = DEFAULT_CLAMP,
                      imaginary: float = DEFAULT_IMAGINARY) -> float:
    """
    Real probability from a complex determinant value

    :param value: Raw value
    :param clamp: Accepted excursion outside [0, 1]
    :param imaginary: Accepted imaginary part

    :return: Probability in [0, 1]
    """
    value = complex(value)

    if abs(value.imag) > imaginary:
        raise VerificationError('Probability has imaginary part {:.3e}'.format(
            value.imag
        ), defect=abs(value.imag))

    real = value.real
    if real < -clamp or real > 1.0 + clamp:
        raise VerificationError('Probability {:.17g} outside [0, 1]'.format(
            real
        ), defect=max(-real, real - 1.0))

    return min(max(real, 0.0), 1.0)


def _edges(m: FockModel, edges: Sequence[EdgeLike]) -> List[Edge]:
    result = []
    for edge in edges:
        key = edge.key if isinstance(edge, Edge) else \
            (tuple(edge[0]), tuple(edge[1]))
        if key not in m.graph.edge_index:
            raise ConfigError('Unknown edge {}'.format(key))
        result.append(m.graph.edge_index[key])

    if len({e.key for e in result}) != len(result):
        raise ConfigError('Edges must be distinct')
    return result


def marginal(m: FockModel, edges: Sequence[EdgeLike],
             inverse: Optional[np.ndarray] = None,
             clamp: float = DEFAULT_CLAMP) -> float:
    """
    Probability that all given edges belong to the random matching:
    prod_i K_(w_i,b_i) det(K^-1_(b_i,w_j))

    :param m: Model
    :param edges: Distinct edges of the diamond
    :param inverse: Precomputed inverse, rows indexed by the blacks
    :param clamp: Clamp tolerance

    :return: Probability
    """
    edges = _edges(m, edges)
    if not edges:
        return 1.0

    if inverse is None:
        inverse = kinv_batch(m, 'direct')

    rows = [m.graph.black_index[e.black] for e in edges]
    columns = [m.graph.white_index[e.white] for e in edges]

    weights = np.prod([m.fock_weight(e) for e in edges])
    value = weights * np.linalg.det(inverse[np.ix_(rows, columns)])

    return clamp_probability(value, clamp)


def marginal_table(m: FockModel, inverse: Optional[np.ndarray] = None) \
        -> Dict[Tuple[Point, Point], float]:
    """
    Single edge probabilities K_(w,b) K^-1_(b,w) of every edge

    :param m: Model
    :param inverse: Precomputed inverse

    :return: Edge key -> probability
    """
    if inverse is None:
        inverse = kinv_batch(m, 'direct')
    return {edge.key: marginal(m, [edge], inverse) for edge in m.graph.edges}


def extended_measure_check(m: FockModel, ext: ExtendedGraph,
                           edges: Sequence[Edge],
                           inverse: Optional[ExtendedInverse] = None,
                           tolerance: float = 1e-9) -> Tuple[float, float]:
    """
    Compare prod K~ det A on a mixed set of window edges with the diamond
    probability of its inner edges times the icy indicators of the outer
    ones. Ordering the edges by the region of their white end makes A
    block triangular, so only the diagonal blocks enter the determinant.

    :param m: Model
    :param ext: Window
    :param edges: Distinct window edges
    :param inverse: Cached window inverse
    :param tolerance: Accepted difference

    :return: (left side, right side)
    """
    inverse = inverse or ExtendedInverse(m, ext)

    window = []
    for edge in edges:
        found = ext.edge(edge.white, edge.black)
        if found is None:
            raise ConfigError('{}-{} is not a window edge'.format(
                edge.white, edge.black
            ))
        window.append(found)

    ordered = sorted(window, key=lambda e: (BLOCK_RANK[ext.region[e.white]],
                                           e.white.sort_key))

    left = 1.0 + 0j
    upper = 0.0

    for rank in sorted(set(BLOCK_RANK.values())):
        block = [e for e in ordered if BLOCK_RANK[ext.region[e.white]] == rank]
        if not block:
            continue

        matrix = np.array([[inverse.entry(bi.black, wj.white) for wj in block]
                           for bi in block])
        weights = np.prod([inverse.weight(e) for e in block])
        left *= weights * np.linalg.det(matrix)

        later = [e for e in ordered
                 if BLOCK_RANK[ext.region[e.white]] > rank]
        for bi in block:
            for wj in later:
                upper = max(upper, abs(inverse.entry(bi.black, wj.white)))

    inside = [e for e in ordered
              if ext.region[e.white] == ext.region[e.black] == AZTEC]
    outside = [e for e in ordered if e not in inside]

    right = marginal(m, [e.key for e in inside]) if inside else 1.0
    right *= float(all(e.icy for e in outside))

    defect = max(abs(left - right), upper)
    logger.info('Window measure check on %d edges: %.17g vs %.17g', len(edges),
                left.real, right)

    if defect > tolerance:
        raise VerificationError('Window determinant and diamond measure '
                                'disagree', defect=defect)

    return float(left.real), right
