from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import LinAlgError, lu_factor, lu_solve

from Inverse.Inverse import kinv_entry_residue
from Kasteleyn.Matrix import build_matrix
from Kasteleyn.Model import FockModel
from Lattice.Aztec import Edge
from LimitShape.Action import Action
from LimitShape.Arctic import FROZEN, PhasePoint, UNRESOLVED, \
    classify_phase
from Utils.Errors import ConfigError, SingularityError, VerificationError
from Utils.Logging.Logging import Logging

logger = Logging(__name__).logger

PROBE_N_CAP = 64
CROSS_CHECK_N_CAP = 12
CROSS_CHECK_TOLERANCE = 1e-9

#: a frozen point has a marginal within this distance of 0 or 1
FROZEN_MARGIN = 0.01


def south_west_edge(m: FockModel, x: float, y: float) -> Tuple[int, int, Edge]:
    """
    Edge b = (2i - 1, 2j), w = (2i, 2j + 1) nearest to the macroscopic
    point (x, y)

    :param m: Model
    :param x: Horizontal coordinate
    :param y: Vertical coordinate

    :return: (i, j, edge)
    """
    i = min(max(int(round(x * m.n)), 1), m.n)
    j = min(max(int(round(y * m.n)), 0), m.n - 1)

    graph = m.graph
    edge = graph.edge(graph.white(2 * i, 2 * j + 1),
                      graph.black(2 * i - 1, 2 * j))
    return i, j, edge


def lu_entries(m: FockModel, edges: Sequence[Edge]) -> List[complex]:
    """
    K^-1 entries at a few edges from one LU factorisation

    :param m: Model
    :param edges: Edges whose (black, white) entries are wanted

    :return: One entry per edge
    """
    K = build_matrix(m)
    graph = m.graph
    columns = [graph.white_index[edge.white] for edge in edges]

    try:
        factors = lu_factor(K.values)
    except (LinAlgError, ValueError) as error:
        raise SingularityError('LU factorisation failed') from error

    rhs = np.zeros((len(graph.whites), len(columns)), dtype=complex)
    rhs[columns, np.arange(len(columns))] = 1.0
    solution = lu_solve(factors, rhs)

    return [solution[graph.black_index[edge.black], k]
            for k, edge in enumerate(edges)]


def finite_n_convergence_probe(m: FockModel,
                               points: Sequence[Tuple[float, float]],
                               action: Optional[Action] = None,
                               n_cap: int = PROBE_N_CAP,
                               cross_check_cap: int = CROSS_CHECK_N_CAP) \
        -> List[Dict[str, object]]:
    """
    Exact probability of the south-west edge nearest to each macroscopic
    point, from the residue engine, next to the phase predicted by the
    action. Diamonds up to cross_check_cap are cross-checked against one
    LU factorisation of the Kasteleyn matrix.

    :param m: Genus 0 model
    :param points: Macroscopic points in (0, 1)^2
    :param action: Action, built from the model when omitted
    :param n_cap: Largest size accepted
    :param cross_check_cap: Largest size cross-checked by LU

    :return: One row per point
    """
    if m.curve.genus != 0:
        raise ConfigError('The probe runs on genus 0 models')
    if m.n > n_cap:
        raise ConfigError('The probe is capped at n = {}, got {}'.format(
            n_cap, m.n
        ))

    action = action or Action.from_model(m)

    located = [south_west_edge(m, x, y) for x, y in points]
    values = [kinv_entry_residue(m, edge.black, edge.white)
              for _, _, edge in located]

    if m.n <= cross_check_cap:
        references = lu_entries(m, [edge for _, _, edge in located])
        for (_, _, edge), value, reference in zip(located, values,
                                                  references):
            if abs(reference - value) > CROSS_CHECK_TOLERANCE:
                raise VerificationError('Residue and LU entries disagree at '
                                        '{}'.format(edge.key),
                                        defect=abs(reference - value))

    rows = []
    for (x, y), (i, j, edge), value in zip(points, located, values):
        probability = (m.fock_weight(edge) * value).real

        try:
            phase = classify_phase(action, x, y)
        except VerificationError as error:
            logger.warning('Phase at (%.6f, %.6f) unresolved: %s', x, y,
                           error)
            phase = PhasePoint(x, y, UNRESOLVED)

        consistent = None
        if phase.phase == FROZEN:
            consistent = min(probability, 1.0 - probability) < FROZEN_MARGIN

        rows.append({
            'x': x,
            'y': y,
            'n': m.n,
            'i': i,
            'j': j,
            'marginal': probability,
            'phase': phase.phase,
            'component': phase.component,
            'consistent': consistent
        })

    logger.info('Probed %d points at n = %d', len(rows), m.n)
    return rows
