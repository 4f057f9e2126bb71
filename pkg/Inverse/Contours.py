from dataclasses import dataclass
from math import pi
from typing import List, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from Kasteleyn.Model import FockModel
from Utils.Errors import ConfigError, ModelError
from Utils.Logging.Logging import Logging

logger = Logging(__name__).logger

#: Gauss-Legendre nodes per panel
PANEL_NODES = 16

#: stadium pieces: bottom segment, right cap, top segment, left cap
PIECES = 4

_NODES, _WEIGHTS = leggauss(PANEL_NODES)


def family_angles(m: FockModel, family: str) -> List[float]:
    """
    Lifted angles of a family, together with the configured overrides of
    its tracks outside 1..n

    :param m: Model
    :param family: 'A', 'B', 'C' or 'D'

    :return: Sorted distinct angles
    """
    values = set(m.angles.family(family))
    values.update(v for track, v in m.extended.items() if track[0] == family)
    return sorted(values)


def _distance(value: float, lo: float, hi: float, period: float) -> float:
    best = float('inf')
    for shift in (-period, 0.0, period):
        a = value + shift
        best = min(best, max(lo - a, a - hi, 0.0))
    return best


@dataclass(frozen=True)
class Contour:
    """
    Counterclockwise stadium around the arc [lo, hi] of A0: the boundary of
    the set of points at distance ``radius`` from the arc, drawn in the
    angle plane and mapped to the sphere by u = exp(2 i z) in genus 0
    """
    family: str
    lo: float
    hi: float
    radius: float
    genus: int

    def angle_nodes(self, panels: int = 1) -> Tuple[np.ndarray, np.ndarray]:
        """
        Composite Gauss-Legendre nodes in the angle plane

        :param panels: Panels per stadium piece

        :return: (z, dz) with dz the weighted tangent
        """
        if panels < 1:
            raise ConfigError('At least one panel per piece is needed')

        r, lo, hi = self.radius, self.lo, self.hi

        # nodes of [0, 1] split into equal panels
        edges = np.linspace(0.0, 1.0, panels + 1)
        half = 0.5 * (edges[1:] - edges[:-1])
        mid = 0.5 * (edges[1:] + edges[:-1])
        s = (mid[:, None] + half[:, None] * _NODES[None, :]).ravel()
        ws = (half[:, None] * _WEIGHTS[None, :]).ravel()

        z_parts, dz_parts = [], []

        if hi > lo:
            z_parts.append(lo + (hi - lo) * s - 1j * r)
            dz_parts.append((hi - lo) * ws + 0j)

        phi = -0.5 * pi + pi * s
        z_parts.append(hi + r * np.exp(1j * phi))
        dz_parts.append(1j * r * pi * np.exp(1j * phi) * ws)

        if hi > lo:
            z_parts.append(hi - (hi - lo) * s + 1j * r)
            dz_parts.append(-(hi - lo) * ws + 0j)

        phi = 0.5 * pi + pi * s
        z_parts.append(lo + r * np.exp(1j * phi))
        dz_parts.append(1j * r * pi * np.exp(1j * phi) * ws)

        return np.concatenate(z_parts), np.concatenate(dz_parts)

    def points(self, panels: int = 1) -> Tuple[np.ndarray, np.ndarray]:
        """
        Quadrature nodes on the curve

        :param panels: Panels per stadium piece

        :return: (u, du)
        """
        z, dz = self.angle_nodes(panels)
        if self.genus == 0:
            u = np.exp(2j * z)
            return u, 2j * u * dz
        return z, dz

    def node_count(self, panels: int) -> int:
        pieces = PIECES if self.hi > self.lo else PIECES // 2
        return pieces * PANEL_NODES * panels

    def encloses(self, angle: float) -> bool:
        return self.lo <= angle <= self.hi

    def to_json(self):
        return {
            'family': self.family,
            'lo': self.lo,
            'hi': self.hi,
            'radius': self.radius,
            'genus': self.genus
        }


def family_contour(m: FockModel, family: str) -> Contour:
    """
    Stadium enclosing every angle of one family and no other angle

    :param m: Model
    :param family: Family to enclose

    :return: Contour
    """
    inside = family_angles(m, family)
    lo, hi = inside[0], inside[-1]
    period = m.curve.period

    others = [a for f in 'ABCD' if f != family for a in family_angles(m, f)]
    gap = min(_distance(a, lo, hi, period) for a in others)

    if gap <= 0.0:
        raise ModelError('No room for a contour around the {} angles'.format(
            family
        ))

    radius = 0.25 * gap
    if m.curve.genus == 1:
        radius = min(radius, 0.25 * m.curve.tau_im)

    logger.debug('Contour around %s: [%.6g, %.6g] radius %.3g', family, lo,
                 hi, radius)

    return Contour(family, lo, hi, radius, m.curve.genus)


def build_contours(m: FockModel) -> Tuple[Contour, Contour]:
    """
    The two contours of the inverse formula

    :param m: Model

    :return: (C1 around the gamma angles, C2 around the alpha angles)
    """
    return family_contour(m, 'C'), family_contour(m, 'A')


def winding_number(m: FockModel, contour: Contour, angle: float,
                   panels: int = 8) -> float:
    """
    (1 / 2 pi i) times the integral of d log E(a, u) along the contour,
    which counts how often the contour turns around the point of angle a

    :param m: Model providing the curve
    :param contour: Contour
    :param angle: Angle of the point
    :param panels: Panels per piece

    :return: Winding number (real part of the quadrature)
    """
    u, du = contour.points(panels)
    point = m.curve.point(angle)
    total = np.sum(m.curve.prime_log_derivative(point, u) * du)
    return float((total / (2j * pi)).real)

