"""
Inverse of the Kasteleyn operator of the infinite extension, restricted to
a finite window.

Rows are blacks and columns are whites, grouped by the region of the
window. Entries between the diamond and the north or south quadrants (and
between the west or east quadrants and the diamond) come from the explicit
formula with the Abel map continued into the window. Entries inside one
quadrant are propagated from the known zeros outside it, one layer at a
time. The remaining cross-quadrant blocks vanish, except the three blocks
this module does not compute.
"""
from typing import Dict, List, Optional, Tuple

import numpy as np

from Inverse.Inverse import DEFAULT_MAX_NODES, DEFAULT_TOLERANCE, \
    entry_forms, quadrature_values, residue_value
from Kasteleyn.Model import FockModel
from Lattice.Aztec import Edge, VertexId, WHITE
from Lattice.Extended import AZTEC, ExtendedGraph
from Utils.Errors import ConfigError, SingularityError, \
    UnsupportedBlockError
from Utils.Logging.Logging import Logging

FORMULA = 'formula'
PROPAGATION = 'propagation'
ZERO = 'zero'

#: unsupported blocks by (row region kind, column region kind)
UNSUPPORTED = {
    (AZTEC, 'WE'): 'diamond-to-side',
    ('NS', AZTEC): 'top-bottom-to-diamond',
    ('NS', 'WE'): 'top-bottom-to-side'
}


def _kind(region: str) -> str:
    if region == AZTEC:
        return AZTEC
    return 'NS' if region in ('N', 'S') else 'WE'


def block_of(ext: ExtendedGraph, b: VertexId, w: VertexId) -> str:
    """
    How the entry of a pair is obtained

    :param ext: Window
    :param b: Black vertex of the window
    :param w: White vertex of the window

    :return: 'formula', 'propagation' or 'zero'
    """
    if b not in ext.region or w not in ext.region:
        raise ConfigError('{} or {} is not in the window'.format(b, w))

    rb, rw = ext.region[b], ext.region[w]
    kb, kw = _kind(rb), _kind(rw)

    if (kb, kw) in UNSUPPORTED:
        raise UnsupportedBlockError('Block {} x {} ({}) is not computed'
                                    .format(rb, rw, UNSUPPORTED[(kb, kw)]))

    if kb == AZTEC or kw == AZTEC:
        return FORMULA
    if rb == rw:
        return PROPAGATION
    return ZERO


class ExtendedInverse:
    """
    Lazily filled inverse on a window, caching formula entries and the
    propagated rows and columns
    """

    def __init__(self, m: FockModel, ext: ExtendedGraph,
                 tolerance: float = DEFAULT_TOLERANCE,
                 max_nodes: int = DEFAULT_MAX_NODES) -> None:
        self.logger = Logging(self.__class__.__name__).logger

        if ext.n != m.n:
            raise ConfigError('Window of size {} for a model of size {}'
                              .format(ext.n, m.n))

        self.m = m
        self.ext = ext
        self.tolerance = tolerance
        self.max_nodes = max_nodes
        self._formula: Dict[Tuple[VertexId, VertexId], complex] = {}
        self._propagated: Dict[VertexId, Dict[VertexId, complex]] = {}

    def weight(self, edge: Edge) -> complex:
        """
        Fock weight of a window edge, from the continued Abel map

        :param edge: Edge of the window

        :return: K~_(w,b)
        """
        return self.m.edge_weight(self.ext.divisor(edge.white), edge.left,
                                  edge.right)

    def formula(self, b: VertexId, w: VertexId) -> complex:
        key = (b, w)
        if key not in self._formula:
            forms = entry_forms(self.m, b, w, self.ext)
            if self.m.curve.genus == 0:
                value = residue_value(self.m, forms)
            else:
                values, _ = quadrature_values(
                    self.m, [forms.left], [forms.right],
                    np.array([[forms.right_of]]), self.tolerance,
                    self.max_nodes
                )
                value = complex(values[0, 0])
            self._formula[key] = value
        return self._formula[key]

    def _propagate(self, fixed: VertexId) -> Dict[VertexId, complex]:
        """
        Solve K~ A = Id (fixed white, north and south quadrants) or A K~ =
        Id (fixed black, west and east quadrants) inside the quadrant of
        the fixed vertex. Each vertex of the driving colour meets exactly
        one unknown value, the one across its icy edge.

        :param fixed: Fixed quadrant vertex

        :return: Values keyed by the vertices of the other colour
        """
        if fixed in self._propagated:
            return self._propagated[fixed]

        ext = self.ext
        quadrant = ext.region[fixed]
        column = fixed.color == WHITE

        drivers = sorted((v for v in ext.quadrant_vertices(quadrant)
                          if v.color == fixed.color),
                         key=lambda v: (ext.layer[v], v.sort_key))

        values: Dict[VertexId, complex] = {}

        for driver in drivers:
            partner = ext.icy_partner(driver)
            total = 1.0 + 0j if driver == fixed else 0j
            icy = None

            for edge in ext.adjacency[driver]:
                other = edge.black if column else edge.white
                if other == partner:
                    icy = edge
                    continue

                if ext.region.get(other) == quadrant:
                    value = values[other]
                elif column:
                    value = self.entry(other, fixed)
                else:
                    value = self.entry(fixed, other)

                total -= self.weight(edge) * value

            weight = self.weight(icy)
            if weight == 0:
                raise SingularityError('Icy edge at {} has weight 0'.format(
                    driver
                ))
            values[partner] = total / weight

        self._propagated[fixed] = values
        return values

    def entry(self, b: VertexId, w: VertexId) -> complex:
        """
        Entry of the window inverse

        :param b: Black vertex
        :param w: White vertex

        :return: A_(b,w)
        """
        block = block_of(self.ext, b, w)

        if block == ZERO:
            return 0j
        if block == FORMULA:
            return self.formula(b, w)
        if self.ext.region[w] in ('N', 'S'):
            return self._propagate(w)[b]
        return self._propagate(b)[w]


def extended_kinv_entry(m: FockModel, ext: ExtendedGraph, b: VertexId,
                        w: VertexId,
                        tolerance: float = DEFAULT_TOLERANCE,
                        max_nodes: int = DEFAULT_MAX_NODES) -> complex:
    """
    One entry of the window inverse

    :param m: Model
    :param ext: Window
    :param b: Black vertex of the window
    :param w: White vertex of the window
    :param tolerance: Quadrature tolerance (torus only)
    :param max_nodes: Quadrature node cap (torus only)

    :return: Entry
    """
    return ExtendedInverse(m, ext, tolerance, max_nodes).entry(b, w)


def window_identity(m: FockModel, ext: ExtendedGraph,
                    inverse: Optional[ExtendedInverse] = None,
                    tolerance: float = 1e-9) -> Dict[str, object]:
    """
    Check sum_b K~_(w',b) A_(b,w) = delta_(w',w) for every white w' whose
    neighbours all lie in the window, over the columns w where every term
    is computed

    :param m: Model
    :param ext: Window
    :param inverse: Cached inverse to reuse
    :param tolerance: Accepted defect

    :return: {'defect', 'checked', 'skipped', 'passed'}
    """
    inverse = inverse or ExtendedInverse(m, ext)

    rows = [w for w in ext.whites if not ext.is_incomplete(w)]
    worst = 0.0
    checked = 0
    skipped: List[Tuple[List[int], List[int]]] = []

    for row in rows:
        for column in ext.whites:
            try:
                total = sum(inverse.weight(edge) *
                            inverse.entry(edge.black, column)
                            for edge in ext.adjacency[row])
            except UnsupportedBlockError:
                skipped.append((list(row.point), list(column.point)))
                continue

            expected = 1.0 if row == column else 0.0
            worst = max(worst, abs(total - expected))
            checked += 1

    inverse.logger.info('Window identity: %d pairs checked, %d skipped, '
                        'defect %.3e', checked, len(skipped), worst)

    return {
        'defect': worst,
        'checked': checked,
        'skipped': len(skipped),
        'skipped_pairs': skipped,
        'passed': worst <= tolerance
    }
