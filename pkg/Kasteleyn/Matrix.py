from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np
from scipy.linalg import lu_factor

from Kasteleyn.Model import FockModel
from Lattice.Aztec import AztecGraph, Edge, FaceId, Point, VertexId
from Utils.Errors import ConfigError
from Utils.Logging.Logging import Logging

logger = Logging(__name__).logger

EdgeKey = Tuple[Point, Point]


@dataclass
class KasteleynMatrix:
    """
    Complex matrix with rows indexed by the white vertices and columns by
    the black vertices, both in (y, x) order; ``provenance`` maps a nonzero
    position back to its edge
    """
    graph: AztecGraph
    values: np.ndarray
    provenance: Dict[Tuple[int, int], Edge] = field(default_factory=dict)

    @property
    def whites(self) -> List[VertexId]:
        return self.graph.whites

    @property
    def blacks(self) -> List[VertexId]:
        return self.graph.blacks

    def position(self, edge: Edge) -> Tuple[int, int]:
        return self.graph.white_index[edge.white], \
            self.graph.black_index[edge.black]

    def entry(self, white: VertexId, black: VertexId) -> complex:
        return complex(self.values[self.graph.white_index[white],
                                   self.graph.black_index[black]])

    def weight(self, edge: Edge) -> complex:
        return complex(self.values[self.position(edge)])

    def weights(self) -> Dict[EdgeKey, float]:
        """
        Positive edge weights |K_{w,b}| keyed by (white point, black point)

        :return: Weight map
        """
        return {edge.key: abs(self.weight(edge)) for edge in self.graph.edges}

    def replace(self, values: np.ndarray) -> 'KasteleynMatrix':
        return KasteleynMatrix(self.graph, values, dict(self.provenance))


def build_matrix(m: FockModel) -> KasteleynMatrix:
    """
    Assemble Fock's Kasteleyn matrix of a model

    :param m: Model

    :return: Matrix with edge provenance
    """
    graph = m.graph
    values = np.zeros((len(graph.whites), len(graph.blacks)), dtype=complex)
    provenance = {}

    for edge in graph.edges:
        i, j = graph.white_index[edge.white], graph.black_index[edge.black]
        values[i, j] = m.fock_weight(edge)
        provenance[(i, j)] = edge

    logger.debug('Kasteleyn matrix of size %d with %d nonzeros', graph.n,
                 len(provenance))

    return KasteleynMatrix(graph, values, provenance)


def face_weight(weights: Dict[EdgeKey, float], f: FaceId,
                graph: AztecGraph) -> float:
    """
    Alternating product of the edge weights around an inner face

    :param weights: Positive weights keyed by edge
    :param f: Inner face
    :param graph: Graph the face belongs to

    :return: Face weight
    """
    if f.is_boundary:
        raise ConfigError('Face ({}, {}) has no face weight'.format(f.x, f.y))

    value = 1.0
    for edge, exponent in graph.face_edges(f):
        value *= weights[edge.key] ** exponent
    return value


def face_weights(weights: Dict[EdgeKey, float], graph: AztecGraph) \
        -> Dict[Point, float]:
    return {face.point: face_weight(weights, face, graph)
            for face in graph.inner_faces()}


def kasteleyn_condition_check(K: KasteleynMatrix, tolerance: float = 1e-10) \
        -> Tuple[bool, float]:
    """
    Check that the alternating product of the phases around every inner
    face of degree 2k equals (-1)^(k+1)

    :param K: Matrix
    :param tolerance: Accepted deviation

    :return: (passed, worst deviation)
    """
    worst = 0.0

    for face in K.graph.inner_faces():
        phase = 1.0 + 0j
        sides = K.graph.face_edges(face)

        for edge, exponent in sides:
            value = K.weight(edge)
            phase *= (value / abs(value)) ** exponent

        expected = (-1.0) ** (len(sides) // 2 + 1)
        worst = max(worst, abs(phase - expected))

    if worst > tolerance:
        logger.warning('Kasteleyn condition violated, defect %.3e', worst)

    return worst <= tolerance, worst


def partition_det(K: KasteleynMatrix) -> float:
    """
    |det K| from a complex LU factorisation with partial pivoting

    :param K: Matrix

    :return: Partition function
    """
    values = K.values if isinstance(K, KasteleynMatrix) else np.asarray(K)

    if values.shape[0] != values.shape[1]:
        raise ConfigError('Kasteleyn matrix must be square')

    lu, _ = lu_factor(values, check_finite=True)
    return float(np.prod(np.abs(np.diag(lu))))
