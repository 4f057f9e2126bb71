from typing import Dict, FrozenSet, List, Set

import numpy as np

from Kasteleyn.Model import FockModel
from Lattice.Aztec import AztecGraph, Edge, VertexId
from Utils.Errors import ConfigError
from Utils.Logging.Logging import Logging

logger = Logging(__name__).logger

Matching = FrozenSet[Edge]

DEFAULT_N_CAP = 4


def enumerate_matchings(g: AztecGraph, n_cap: int = DEFAULT_N_CAP) \
        -> List[Matching]:
    """
    Every perfect matching of the diamond, by backtracking over the white
    vertices in lexicographic order

    :param g: Graph
    :param n_cap: Largest size accepted

    :return: Matchings, in the order the search finds them
    """
    if g.n > n_cap:
        raise ConfigError('Enumeration is capped at n = {}, got {}'.format(
            n_cap, g.n
        ))

    whites = g.whites
    found: List[Matching] = []
    chosen: List[Edge] = []
    used: Set[VertexId] = set()

    def extend(index: int) -> None:
        if index == len(whites):
            found.append(frozenset(chosen))
            return

        for edge in g.adjacency[whites[index]]:
            if edge.black in used:
                continue
            used.add(edge.black)
            chosen.append(edge)
            extend(index + 1)
            chosen.pop()
            used.remove(edge.black)

    extend(0)
    logger.debug('Enumerated %d matchings of the diamond of size %d',
                 len(found), g.n)

    return found


def is_perfect_matching(g: AztecGraph, matching: Matching) -> bool:
    """
    Structural check: every vertex is covered by exactly one edge of the
    graph

    :param g: Graph
    :param matching: Edges

    :return: Whether the edges form a perfect matching
    """
    whites = [edge.white for edge in matching]
    blacks = [edge.black for edge in matching]

    return all(edge.key in g.edge_index for edge in matching) and \
        len(set(whites)) == len(whites) == len(g.whites) and \
        len(set(blacks)) == len(blacks) == len(g.blacks)


def matching_weight(m: FockModel, matching: Matching) -> float:
    """
    Boltzmann weight prod |K_(w,b)| of a matching

    :param m: Model
    :param matching: Edges

    :return: Weight
    """
    return float(np.prod([abs(m.fock_weight(edge)) for edge in matching]))


def enumeration_marginals(m: FockModel, n_cap: int = DEFAULT_N_CAP) \
        -> Dict[str, object]:
    """
    Exact Boltzmann statistics by summing over all matchings

    :param m: Model
    :param n_cap: Largest size accepted

    :return: {'partition', 'edges': {edge key: probability},
             'matchings': [(matching, probability)]}
    """
    matchings = enumerate_matchings(m.graph, n_cap)
    weights = [matching_weight(m, matching) for matching in matchings]
    partition = float(sum(weights))

    edges = {edge.key: 0.0 for edge in m.graph.edges}
    for matching, weight in zip(matchings, weights):
        for edge in matching:
            edges[edge.key] += weight / partition

    return {
        'partition': partition,
        'edges': edges,
        'matchings': [(matching, weight / partition)
                      for matching, weight in zip(matchings, weights)]
    }
