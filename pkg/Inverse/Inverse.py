"""
Inverse of Fock's Kasteleyn matrix.

K^-1_(b,w) = f1 - [b right of w] f2 with

    f1 = (2 pi i)^-2 theta(p)^-1 int_C2 int_C1 theta(p + v - u) / E(u, v)
         A_b(u) B_w(v) du dv
    f2 = (2 pi i)^-1 int_C2 A_b(v) B_w(v) dv

where A_b = g_(b,0) prod_j E(beta_j, .) / E(delta_j, .) and
B_w = g_(0,w) prod_j E(delta_j, .) / E(beta_j, .), so that A_b B_w = g_(b,w).
C1 surrounds the gamma angles and C2 the alpha angles. The sphere is
handled by exact residues, the torus by adaptive quadrature.
"""
from dataclasses import dataclass
from math import pi
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import LinAlgError, lu_factor, lu_solve

from Inverse.Contours import build_contours, family_angles
from Inverse.Residues import RationalFunction, inner_principal_parts, \
    outer_residue, residue
from Kasteleyn.Matrix import KasteleynMatrix, build_matrix
from Kasteleyn.Model import FockModel
from KernelForms.Forms import MeromorphicProduct, evaluate, g_form, p_point
from Lattice.Aztec import VertexId
from Lattice.Divisor import FormalDivisor, TrainTrack
from Utils.Errors import ConfigError, ConvergenceError, ModelError, \
    SingularityError
from Utils.Logging.Logging import Logging
from Utils.Pool import parallel_map, worker_count

logger = Logging(__name__).logger

#: the face at the origin, base point of g_(b,0) and g_(0,w)
ORIGIN = (0, 0)

METHODS = ('residue', 'quadrature', 'direct', 'homogeneous')

DEFAULT_TOLERANCE = 1e-10
DEFAULT_MAX_NODES = 2 ** 16

KERNEL_BLOCK = 128


@dataclass(frozen=True)
class InverseEntry:
    b: VertexId
    w: VertexId
    value: complex
    method: str
    estimate: float = 0.0

    def to_json(self) -> Dict[str, object]:
        return {
            'b': list(self.b.point),
            'w': list(self.w.point),
            're': self.value.real,
            'im': self.value.imag,
            'method': self.method,
            'estimate': self.estimate
        }


@dataclass(frozen=True)
class EntryForms:
    """
    The two single variable factors of an entry and the side indicator
    """
    left: MeromorphicProduct
    right: MeromorphicProduct
    right_of: bool


def _normaliser(m: FockModel, sign: int) -> MeromorphicProduct:
    exponents = {}
    for j in range(1, m.n + 1):
        exponents[TrainTrack('B', j)] = sign
        exponents[TrainTrack('D', j)] = -sign
    return MeromorphicProduct(exponents)


def entry_forms(m: FockModel, b: VertexId, w: VertexId, ext=None) \
        -> EntryForms:
    """
    Factors A_b and B_w read off the discrete Abel map

    :param m: Model
    :param b: Black vertex
    :param w: White vertex
    :param ext: Extended graph for vertices outside the diamond

    :return: Forms
    """
    return EntryForms(
        g_form(m, b, ORIGIN, ext) * _normaliser(m, 1),
        g_form(m, ORIGIN, w, ext) * _normaliser(m, -1),
        b.x > w.x
    )


def _homogeneous_divisor(exponents: Dict[str, float]) -> FormalDivisor:
    return FormalDivisor({TrainTrack(f, 1): int(round(e))
                          for f, e in exponents.items()}, base=1)


def homogeneous_forms(m: FockModel, b: VertexId, w: VertexId) -> EntryForms:
    """
    Factors of the constant angle display, with every exponent written
    from the coordinates of b and w

    :param m: Homogeneous model
    :param b: Black vertex (odd, even)
    :param w: White vertex (even, odd)

    :return: Forms
    """
    if not m.is_homogeneous():
        raise ModelError('The homogeneous display needs constant families')

    n = m.n
    bx, by, wx, wy = b.x, b.y, w.x, w.y

    left = {
        'A': by // 2,
        'B': n - by // 2,
        'C': -(bx + 1) // 2,
        'D': (bx - 1) // 2 - n
    }
    right = {
        'C': wx // 2,
        'D': n - wx // 2,
        'A': -(wy + 1) // 2,
        'B': (wy - 1) // 2 - n
    }

    black_shift = _homogeneous_divisor({
        'A': -by // 2, 'B': by // 2, 'C': (bx + 1) // 2, 'D': -(bx - 1) // 2
    })
    white_shift = _homogeneous_divisor({
        'A': -(wy + 1) // 2, 'B': (wy - 1) // 2, 'C': wx // 2, 'D': -wx // 2
    })

    return EntryForms(
        MeromorphicProduct({TrainTrack(f, 1): e for f, e in left.items()},
                           ((1, -1, black_shift),)),
        MeromorphicProduct({TrainTrack(f, 1): e for f, e in right.items()},
                           ((1, 1, white_shift),)),
        bx > wx
    )


def south_west_forms(m: FockModel, i: int, j: int) -> EntryForms:
    """
    Factors of the display for b = (2i - 1, 2j) south-west of w = (2i,
    2j + 1)

    :param m: Homogeneous model
    :param i: 1 <= i <= n
    :param j: 0 <= j <= n - 1

    :return: Forms
    """
    if not m.is_homogeneous():
        raise ModelError('The homogeneous display needs constant families')
    n = m.n
    if not (1 <= i <= n and 0 <= j <= n - 1):
        raise ConfigError('({}, {}) does not index a south-west edge'.format(
            i, j
        ))

    # D(b) = j (beta - alpha) + i (gamma - delta) + delta, D(w) = D(b) -
    # alpha - delta, both plus d
    black_shift = FormalDivisor({
        TrainTrack('A', 1): -j, TrainTrack('B', 1): j,
        TrainTrack('C', 1): i, TrainTrack('D', 1): 1 - i
    }, base=1)
    white_shift = FormalDivisor({
        TrainTrack('A', 1): -j - 1, TrainTrack('B', 1): j,
        TrainTrack('C', 1): i, TrainTrack('D', 1): -i
    }, base=1)

    return EntryForms(
        MeromorphicProduct({TrainTrack('A', 1): j, TrainTrack('B', 1): n - j,
                            TrainTrack('C', 1): -i,
                            TrainTrack('D', 1): -(n - i + 1)},
                           ((1, -1, black_shift),)),
        MeromorphicProduct({TrainTrack('C', 1): i, TrainTrack('D', 1): n - i,
                            TrainTrack('B', 1): -(n - j),
                            TrainTrack('A', 1): -(j + 1)},
                           ((1, 1, white_shift),)),
        False
    )


def _arc(m: FockModel, families: str) -> Tuple[float, float]:
    values = [a for f in families for a in family_angles(m, f)]
    return min(values), max(values)


def residue_value(m: FockModel, forms: EntryForms,
                  deformed: bool = False) -> complex:
    """
    Exact value of an entry on the sphere

    :param m: Genus 0 model
    :param forms: Entry factors
    :param deformed: Sum the residues at the gamma and beta angles instead
                     of those at the alpha angles, as after moving C2 across
                     the rest of the sphere

    :return: Entry
    """
    left = RationalFunction.from_product(m, forms.left)
    right = RationalFunction.from_product(m, forms.right)
    single = left * right

    parts = inner_principal_parts(left, *_arc(m, 'C'))

    if deformed:
        lo, hi = _arc(m, 'CB')
        sign = -1.0
    else:
        lo, hi = _arc(m, 'A')
        sign = 1.0

    angles = {a for a, _, _ in right.factors + single.factors
              if lo <= a <= hi}
    if deformed:
        angles.update(part.angle for part in parts)

    f1 = 0j
    f2 = 0j
    for angle in sorted(angles):
        point = m.curve.point(angle)
        f1 += outer_residue(parts, right, angle, point)
        f2 += residue(single, angle)

    f1, f2 = sign * f1, sign * f2

    return f1 - f2 if forms.right_of else f1


def _evaluate_rows(m: FockModel, products: Sequence[MeromorphicProduct],
                   u: np.ndarray) -> np.ndarray:
    return np.array([evaluate(m, p, u) for p in products])


def _double_integral(m: FockModel, p: float, u: np.ndarray,
                     a_u: np.ndarray, v: np.ndarray,
                     b_v: np.ndarray) -> np.ndarray:
    # kernel assembled in row blocks to bound the theta series buffers
    total = np.zeros((a_u.shape[0], b_v.shape[0]), dtype=complex)

    for start in range(0, len(u), KERNEL_BLOCK):
        block = slice(start, start + KERNEL_BLOCK)
        kernel = m.curve.theta(p + v[None, :] - u[block, None]) / \
            m.curve.prime_form(u[block, None], v[None, :])
        total += a_u[:, block] @ kernel @ b_v.T

    return total


def quadrature_values(m: FockModel, lefts: Sequence[MeromorphicProduct],
                      rights: Sequence[MeromorphicProduct],
                      right_of: np.ndarray,
                      tolerance: float = DEFAULT_TOLERANCE,
                      max_nodes: int = DEFAULT_MAX_NODES) \
        -> Tuple[np.ndarray, float]:
    """
    Entries for every pair of left and right factors by composite
    Gauss-Legendre quadrature on both contours, doubling the panels until
    successive values agree

    :param m: Model
    :param lefts: A_b per row
    :param rights: B_w per column
    :param right_of: Boolean matrix of the side indicators
    :param tolerance: Relative agreement between two refinements
    :param max_nodes: Largest node count per contour

    :return: (values, last change)
    """
    c1, c2 = build_contours(m)
    p = p_point(m)
    theta_p = m.curve.theta(p)

    if abs(theta_p) == 0.0:
        raise SingularityError('theta(p) vanishes')

    scale = 1.0 / ((2j * pi) ** 2 * theta_p)
    previous = None
    change = float('inf')
    panels = 1

    while max(c1.node_count(panels), c2.node_count(panels)) <= max_nodes:
        u, du = c1.points(panels)
        v, dv = c2.points(panels)

        a_u = _evaluate_rows(m, lefts, u) * du
        a_v = _evaluate_rows(m, lefts, v)
        b_v = _evaluate_rows(m, rights, v) * dv

        f1 = scale * _double_integral(m, p, u, a_u, v, b_v)
        f2 = (a_v @ b_v.T) / (2j * pi)
        values = f1 - np.where(right_of, f2, 0.0)

        if previous is not None:
            delta = np.abs(values - previous)
            change = float(np.max(delta))
            logger.debug('Quadrature with %d panels: change %.3e', panels,
                         change)
            if np.all(delta <= tolerance * (1.0 + np.abs(values))):
                return values, change

        previous = values
        panels *= 2

    raise ConvergenceError(
        'Quadrature did not settle within {} nodes'.format(max_nodes),
        estimate=change
    )


def _quadrature_entry(m: FockModel, forms: EntryForms, tolerance: float,
                      max_nodes: int) -> Tuple[complex, float]:
    values, change = quadrature_values(m, [forms.left], [forms.right],
                                       np.array([[forms.right_of]]),
                                       tolerance, max_nodes)
    return complex(values[0, 0]), change


def kinv_entry(m: FockModel, b: VertexId, w: VertexId,
               tolerance: float = DEFAULT_TOLERANCE,
               max_nodes: int = DEFAULT_MAX_NODES, ext=None) -> complex:
    """
    Entry of the inverse by contour quadrature, in either genus

    :param m: Model
    :param b: Black vertex
    :param w: White vertex
    :param tolerance: Relative quadrature tolerance
    :param max_nodes: Node cap per contour
    :param ext: Extended graph for vertices outside the diamond

    :return: K^-1_(b,w)
    """
    return _quadrature_entry(m, entry_forms(m, b, w, ext), tolerance,
                             max_nodes)[0]


def kinv_entry_residue(m: FockModel, b: VertexId, w: VertexId,
                       ext=None) -> complex:
    """
    Entry of the inverse by exact residues, sphere only

    :param m: Genus 0 model
    :param b: Black vertex
    :param w: White vertex
    :param ext: Extended graph for vertices outside the diamond

    :return: K^-1_(b,w)
    """
    if m.curve.genus != 0:
        raise ModelError('The residue engine needs a genus 0 model')
    return residue_value(m, entry_forms(m, b, w, ext))


def deformed_entry(m: FockModel, b: VertexId, w: VertexId) -> complex:
    """
    Entry after moving C1 over the beta angles and C2 around the gamma and
    beta angles, clockwise: the residues at the alpha angles are traded
    for minus those at the gamma and beta angles

    :param m: Genus 0 model
    :param b: Black vertex
    :param w: White vertex

    :return: K^-1_(b,w)
    """
    if m.curve.genus != 0:
        raise ModelError('The deformed contours are evaluated on the sphere')
    return residue_value(m, entry_forms(m, b, w), deformed=True)


def kinv_homogeneous(m: FockModel, b: VertexId, w: VertexId,
                     tolerance: float = DEFAULT_TOLERANCE,
                     max_nodes: int = DEFAULT_MAX_NODES) -> complex:
    """
    Entry from the constant angle display

    :param m: Homogeneous model
    :param b: Black vertex
    :param w: White vertex
    :param tolerance: Quadrature tolerance (torus only)
    :param max_nodes: Node cap per contour (torus only)

    :return: K^-1_(b,w)
    """
    forms = homogeneous_forms(m, b, w)
    if m.curve.genus == 0:
        return residue_value(m, forms)
    return _quadrature_entry(m, forms, tolerance, max_nodes)[0]


def kinv_homogeneous_sw(m: FockModel, i: int, j: int,
                        tolerance: float = DEFAULT_TOLERANCE,
                        max_nodes: int = DEFAULT_MAX_NODES) -> complex:
    """
    K^-1_(b,w) for b = (2i - 1, 2j) and w = (2i, 2j + 1)

    :param m: Homogeneous model
    :param i: Column of the edge
    :param j: Row of the edge

    :return: Entry
    """
    forms = south_west_forms(m, i, j)
    if m.curve.genus == 0:
        return residue_value(m, forms)
    return _quadrature_entry(m, forms, tolerance, max_nodes)[0]


def kinv_direct(K: KasteleynMatrix) -> Tuple[np.ndarray, float]:
    """
    Inverse by LU factorisation and its residual

    :param K: Kasteleyn matrix (whites x blacks)

    :return: (inverse with rows indexed by blacks, max |K K^-1 - Id|)
    """
    values = K.values if isinstance(K, KasteleynMatrix) else np.asarray(K)
    size = values.shape[0]

    if values.shape != (size, size):
        raise ConfigError('Kasteleyn matrix must be square')

    try:
        lu, pivots = lu_factor(values, check_finite=True)
    except (LinAlgError, ValueError) as error:
        raise SingularityError('LU factorisation failed') from error

    if np.min(np.abs(np.diag(lu))) == 0.0:
        raise SingularityError('Kasteleyn matrix is singular')

    inverse = lu_solve((lu, pivots), np.eye(size, dtype=complex))
    residual = float(np.max(np.abs(values @ inverse - np.eye(size))))

    logger.debug('Direct inverse of size %d, residual %.3e', size, residual)

    return inverse, residual


def _residue_rows(m: FockModel, blacks: Sequence[VertexId],
                  whites: Sequence[VertexId]) -> List[List[complex]]:
    return [[residue_value(m, entry_forms(m, b, w)) for w in whites]
            for b in blacks]


def _quadrature_rows(m: FockModel, blacks: Sequence[VertexId],
                     whites: Sequence[VertexId], tolerance: float,
                     max_nodes: int) -> np.ndarray:
    forms = [[entry_forms(m, b, w) for w in whites] for b in blacks]
    lefts = [row[0].left for row in forms]
    rights = [f.right for f in forms[0]]
    right_of = np.array([[f.right_of for f in row] for row in forms])
    return quadrature_values(m, lefts, rights, right_of, tolerance,
                             max_nodes)[0]


def kinv_batch(m: FockModel, method: str = 'residue',
               workers: Optional[int] = None,
               tolerance: float = DEFAULT_TOLERANCE,
               max_nodes: int = DEFAULT_MAX_NODES) -> np.ndarray:
    """
    The whole inverse, rows indexed by the blacks and columns by the
    whites of the model graph

    :param m: Model
    :param method: 'residue', 'quadrature', 'direct' or 'homogeneous'
    :param workers: Worker processes for the row blocks
    :param tolerance: Quadrature tolerance
    :param max_nodes: Quadrature node cap

    :return: Matrix
    """
    if method not in METHODS:
        raise ConfigError('Unknown inverse method {!r}'.format(method))

    blacks, whites = m.graph.blacks, m.graph.whites

    if method == 'direct':
        return kinv_direct(build_matrix(m))[0]

    if method == 'homogeneous':
        return np.array([[kinv_homogeneous(m, b, w, tolerance, max_nodes)
                          for w in whites] for b in blacks])

    if method == 'residue' and m.curve.genus != 0:
        raise ModelError('The residue engine needs a genus 0 model')

    count = worker_count(workers)
    chunks = [blacks[i::count] for i in range(count) if blacks[i::count]]

    if method == 'residue':
        parts = parallel_map(_residue_rows,
                             [(m, chunk, whites) for chunk in chunks],
                             count)
    else:
        parts = parallel_map(_quadrature_rows,
                             [(m, chunk, whites, tolerance, max_nodes)
                              for chunk in chunks], count)

    result = np.zeros((len(blacks), len(whites)), dtype=complex)
    for i, rows in enumerate(parts):
        result[i::count] = np.asarray(rows, dtype=complex)
    return result


def inverse_entry(m: FockModel, b: VertexId, w: VertexId,
                  method: str = 'residue',
                  tolerance: float = DEFAULT_TOLERANCE,
                  max_nodes: int = DEFAULT_MAX_NODES) -> InverseEntry:
    """
    One entry tagged with the engine that produced it

    :param m: Model
    :param b: Black vertex
    :param w: White vertex
    :param method: Engine name
    :param tolerance: Quadrature tolerance
    :param max_nodes: Quadrature node cap

    :return: Entry
    """
    estimate = 0.0

    if method == 'residue':
        value = kinv_entry_residue(m, b, w)
    elif method == 'quadrature':
        value, estimate = _quadrature_entry(m, entry_forms(m, b, w),
                                            tolerance, max_nodes)
    elif method == 'homogeneous':
        value = kinv_homogeneous(m, b, w, tolerance, max_nodes)
    elif method == 'direct':
        K = build_matrix(m)
        inverse, estimate = kinv_direct(K)
        value = complex(inverse[m.graph.black_index[b],
                                m.graph.white_index[w]])
    else:
        raise ConfigError('Unknown inverse method {!r}'.format(method))

    return InverseEntry(b, w, value, method, estimate)


def identity_defect(K: KasteleynMatrix, inverse: np.ndarray) -> float:
    """
    max |sum_b K_(w,b) K^-1_(b,w') - delta_(w,w')|

    :param K: Kasteleyn matrix
    :param inverse: Candidate inverse, rows indexed by the blacks

    :return: Defect
    """
    size = K.values.shape[0]
    return float(np.max(np.abs(K.values @ inverse - np.eye(size))))
