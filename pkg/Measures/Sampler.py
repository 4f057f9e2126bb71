"""
Exact sampling of the Boltzmann measure by sequential conditioning.

White vertices are matched one at a time. The conditional law of the edge
at the current white is read off the conditioned inverse kernel, and after
each draw the kernel is updated by the rank one Schur complement
L'_(b,w) = L_(b,w) - L_(b,w1) L_(b1,w) / L_(b1,w1).
"""
from typing import Dict, List, Optional, Sequence

import numpy as np
from numpy.random import Generator, PCG64, SeedSequence

from Inverse.Inverse import kinv_batch
from Kasteleyn.Model import FockModel
from Lattice.Aztec import Edge, VertexId
from Measures.Enumeration import Matching, is_perfect_matching
from Measures.Marginals import DEFAULT_CLAMP, clamp_probability
from Utils.Errors import SingularityError, VerificationError
from Utils.Logging.Logging import Logging
from Utils.Pool import parallel_map, worker_count
from Utils.SvgWriter import SvgWriter

logger = Logging(__name__).logger

PIVOT_FLOOR = 1e-12
ATTEMPTS = 3
DEFAULT_IDENTITY = 1e-9

#: fill colour of a domino by the direction from its white to its black
DOMINO_COLOURS = {
    (1, 1): '#d95f02',
    (-1, -1): '#1b9e77',
    (1, -1): '#7570b3',
    (-1, 1): '#e7298a'
}


def edge_weights(m: FockModel) -> Dict[Edge, complex]:
    return {edge: m.fock_weight(edge) for edge in m.graph.edges}


class ConditionedKernel:
    """
    Inverse kernel restricted to the unmatched vertices, conditioned on the
    edges drawn so far
    """

    def __init__(self, m: FockModel, inverse: np.ndarray,
                 clamp: float = DEFAULT_CLAMP,
                 weights: Optional[Dict[Edge, complex]] = None) -> None:
        self.m = m
        self.values = np.array(inverse, dtype=complex)
        self.weights = edge_weights(m) if weights is None else weights
        self.clamp = clamp
        self.present: List[Edge] = []
        self.free_blacks = set(m.graph.blacks)

    def probabilities(self, white: VertexId) -> List[tuple]:
        """
        Conditional law of the edge covering a white vertex; values may
        leave [0, 1] by at most the clamp tolerance

        :param white: Unmatched white vertex

        :return: [(edge, probability)] over its unmatched neighbours
        """
        graph = self.m.graph
        column = graph.white_index[white]
        law = []

        for edge in graph.adjacency[white]:
            if edge.black not in self.free_blacks:
                continue
            row = graph.black_index[edge.black]
            value = self.weights[edge] * self.values[row, column]
            law.append((edge, clamp_probability(value, self.clamp)))

        return law

    def condition(self, edge: Edge) -> None:
        """
        Condition on an edge being present

        :param edge: Drawn edge

        :return: None
        """
        graph = self.m.graph
        row = graph.black_index[edge.black]
        column = graph.white_index[edge.white]
        pivot = self.values[row, column]

        if abs(pivot) < PIVOT_FLOOR:
            raise SingularityError('Pivot {:.3e} at {}'.format(abs(pivot),
                                                               edge.white))

        self.values = self.values - np.outer(self.values[:, column],
                                             self.values[row, :]) / pivot
        self.present.append(edge)
        self.free_blacks.discard(edge.black)


def _draw(m: FockModel, inverse: np.ndarray, rng: Generator,
          order: Sequence[VertexId], clamp: float = DEFAULT_CLAMP,
          identity: float = DEFAULT_IDENTITY,
          weights: Optional[Dict[Edge, complex]] = None) -> Matching:
    kernel = ConditionedKernel(m, inverse, clamp, weights)

    for white in order:
        law = kernel.probabilities(white)
        total = sum(p for _, p in law)

        if abs(total - 1.0) > identity:
            raise VerificationError(
                'Conditional law at {} sums to {:.17g}'.format(white, total),
                defect=abs(total - 1.0)
            )

        probabilities = np.array([p for _, p in law]) / total
        choice = rng.choice(len(law), p=probabilities)
        kernel.condition(law[choice][0])

    return frozenset(kernel.present)


def sample(m: FockModel, seed=None, inverse: Optional[np.ndarray] = None,
           rng: Optional[Generator] = None, clamp: float = DEFAULT_CLAMP,
           identity: float = DEFAULT_IDENTITY,
           weights: Optional[Dict[Edge, complex]] = None) -> Matching:
    """
    Draw one perfect matching from the Boltzmann measure. Tiny pivots
    restart the draw in a new order; a conditional law outside the
    tolerances is a VerificationError

    :param m: Model
    :param seed: Seed or SeedSequence for a PCG64 generator
    :param inverse: Precomputed inverse, rows indexed by the blacks
    :param rng: Generator to use instead of the seed
    :param clamp: Accepted excursion of a probability outside [0, 1]
    :param identity: Accepted deviation of a conditional law total from 1
    :param weights: Precomputed edge weights

    :return: Matching
    """
    if inverse is None:
        inverse = kinv_batch(m, 'direct')
    if rng is None:
        rng = Generator(PCG64(seed))
    if weights is None:
        weights = edge_weights(m)

    order = list(m.graph.whites)

    for attempt in range(1, ATTEMPTS + 1):
        try:
            matching = _draw(m, inverse, rng, order, clamp, identity,
                             weights)
        except SingularityError as error:
            logger.warning('Sampling attempt %d failed: %s', attempt, error)
            order = [order[i] for i in rng.permutation(len(order))]
            continue

        if not is_perfect_matching(m.graph, matching):
            raise VerificationError('Sampler returned a partial matching')
        return matching

    raise SingularityError('Sampling failed after {} attempts'.format(
        ATTEMPTS
    ))


def _sample_chunk(m: FockModel, inverse: np.ndarray,
                  seeds: Sequence[SeedSequence], clamp: float,
                  identity: float) -> List[Matching]:
    weights = edge_weights(m)
    return [sample(m, seed, inverse, clamp=clamp, identity=identity,
                   weights=weights) for seed in seeds]


def sample_many(m: FockModel, seed, count: int,
                workers: Optional[int] = None,
                inverse: Optional[np.ndarray] = None,
                clamp: float = DEFAULT_CLAMP,
                identity: float = DEFAULT_IDENTITY) -> List[Matching]:
    """
    Independent samples from spawned seed streams; the result does not
    depend on the number of workers

    :param m: Model
    :param seed: Root seed
    :param count: Number of samples
    :param workers: Worker processes
    :param inverse: Precomputed inverse
    :param clamp: Accepted excursion of a probability outside [0, 1]
    :param identity: Accepted deviation of a conditional law total from 1

    :return: Matchings in stream order
    """
    if inverse is None:
        inverse = kinv_batch(m, 'direct')

    streams = SeedSequence(seed).spawn(count)
    workers = worker_count(workers)
    size = max(1, -(-count // workers))
    chunks = [streams[i:i + size] for i in range(0, count, size)]

    parts = parallel_map(_sample_chunk,
                         [(m, inverse, chunk, clamp, identity)
                          for chunk in chunks], workers)
    return [matching for part in parts for matching in part]


def domino(edge: Edge) -> List[tuple]:
    """
    Corners of the domino of an edge: the union of the two unit squares,
    tilted by 45 degrees, centred at its white and black ends

    :param edge: Matched edge

    :return: Four corners
    """
    wx, wy = edge.white.point
    dx, dy = edge.black.x - wx, edge.black.y - wy

    return [(wx - dx, wy), (wx, wy - dy), (wx + 2 * dx, wy + dy),
            (wx + dx, wy + 2 * dy)]


def render_tiling(matching: Matching, path: str) -> str:
    """
    Write a matching as an SVG domino tiling

    :param matching: Perfect matching
    :param path: Output file

    :return: Path written
    """
    polygons = []
    for edge in sorted(matching, key=lambda e: e.white.sort_key):
        direction = (edge.black.x - edge.white.x, edge.black.y - edge.white.y)
        polygons.append((domino(edge), DOMINO_COLOURS[direction]))

    writer = SvgWriter(path)
    writer.polygons(polygons)
    return writer.save()
