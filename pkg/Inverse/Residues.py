"""
Exact residues of rational functions on the sphere.

A rational function is kept as a product of powers of (u - c). Its Laurent
series at a point a comes from the series of the logarithm of the regular
part, so poles of any order are handled without numerical differentiation.
"""
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Tuple

import numpy as np

from KernelForms.Forms import MeromorphicProduct
from Kasteleyn.Model import FockModel
from Utils.Errors import ModelError


@dataclass(frozen=True)
class LaurentSeries:
    """
    sum_k coefficients[k] (u - centre)^(order + k), truncated
    """
    centre: complex
    order: int
    coefficients: np.ndarray

    def coefficient(self, exponent: int) -> complex:
        k = exponent - self.order
        if 0 <= k < len(self.coefficients):
            return complex(self.coefficients[k])
        return 0j

    def residue(self) -> complex:
        return self.coefficient(-1)

    def __mul__(self, other: 'LaurentSeries') -> 'LaurentSeries':
        size = min(len(self.coefficients), len(other.coefficients))
        product = np.convolve(self.coefficients[:size],
                              other.coefficients[:size])[:size]
        return LaurentSeries(self.centre, self.order + other.order, product)


@dataclass(frozen=True)
class RationalFunction:
    """
    Product of (u - point)^exponent, each factor stored as (angle, point,
    exponent) so that poles can be sorted by family
    """
    factors: Tuple[Tuple[float, complex, int], ...]

    @classmethod
    def from_product(cls, m: FockModel, p: MeromorphicProduct) \
            -> 'RationalFunction':
        if m.curve.genus != 0:
            raise ModelError('Residues are only computed on the sphere')
        return cls(tuple((angle, m.curve.point(angle), exponent)
                         for angle, exponent in p.grouped(m)))

    def __mul__(self, other: 'RationalFunction') -> 'RationalFunction':
        totals: Dict[float, Tuple[complex, int]] = {}
        for angle, point, exponent in self.factors + other.factors:
            _, current = totals.get(angle, (point, 0))
            totals[angle] = point, current + exponent
        return RationalFunction(tuple(sorted(
            (a, p, e) for a, (p, e) in totals.items() if e
        )))

    def poles(self) -> List[Tuple[float, complex, int]]:
        return [(a, p, -e) for a, p, e in self.factors if e < 0]

    def order_at(self, angle: float) -> int:
        return sum(e for a, _, e in self.factors if a == angle)

    def laurent(self, angle: float, size: int,
                centre: Optional[complex] = None) -> LaurentSeries:
        """
        Laurent series at the point of an angle, from the logarithmic
        series of the regular part

        :param angle: Angle of the expansion point
        :param size: Number of coefficients
        :param centre: Point of the angle, needed when it is not a factor

        :return: Series starting at the order of the function there
        """
        order = 0
        others = []

        for a, point, exponent in self.factors:
            if a == angle:
                centre, order = point, order + exponent
            else:
                others.append((point, exponent))

        if centre is None:
            raise ModelError('{} is not a factor angle'.format(angle))

        leading = 1.0 + 0j
        logs = np.zeros(size, dtype=complex)

        for point, exponent in others:
            gap = centre - point
            leading *= gap ** exponent
            for k in range(1, size):
                logs[k] += exponent * (-1) ** (k - 1) / (k * gap ** k)

        series = np.zeros(size, dtype=complex)
        series[0] = 1.0
        for k in range(1, size):
            series[k] = sum(i * logs[i] * series[k - i]
                            for i in range(1, k + 1)) / k

        return LaurentSeries(centre, order, leading * series)


@dataclass(frozen=True)
class PrincipalPart:
    """
    sum_s terms[s] (v - centre)^(-s) for s >= 1, centre the point of angle
    """
    angle: float
    centre: complex
    terms: Tuple[Tuple[int, complex], ...]

    def value(self, v: complex) -> complex:
        return sum(c * (v - self.centre) ** (-s) for s, c in self.terms)

    def taylor(self, centre: complex, size: int) -> LaurentSeries:
        """
        Taylor series at a point away from the pole, from the binomial
        series of (x + gap)^(-s)

        :param centre: Expansion point
        :param size: Number of coefficients

        :return: Series of order 0
        """
        gap = centre - self.centre
        series = np.zeros(size, dtype=complex)

        for s, c in self.terms:
            for r in range(size):
                series[r] += c * (-1) ** r * comb(s + r - 1, r) * \
                    gap ** (-s - r)

        return LaurentSeries(centre, 0, series)

    def residue_against(self, other: LaurentSeries) -> complex:
        """
        Residue at the centre of the product with a series there

        :param other: Series centred at the pole

        :return: Residue
        """
        return sum(c * other.coefficient(s - 1) for s, c in self.terms)


def residue(f: RationalFunction, angle: float) -> complex:
    """
    Residue of a rational function at the point of an angle

    :param f: Function
    :param angle: Angle of the point

    :return: Residue, zero where the function is regular
    """
    order = f.order_at(angle)
    if order >= 0:
        return 0j
    return f.laurent(angle, -order).residue()


def inner_principal_parts(f: RationalFunction, lo: float, hi: float) \
        -> List[PrincipalPart]:
    """
    (1 / 2 pi i) times the integral of f(u) / (v - u) over a contour around
    the poles of f with angles in [lo, hi], as a sum of principal parts in
    the outer variable v lying outside the contour

    :param f: Integrand without the Cauchy kernel
    :param lo: Start of the enclosed arc
    :param hi: End of the enclosed arc

    :return: One principal part per enclosed pole
    """
    parts = []

    for angle, point, order in f.poles():
        if not lo <= angle <= hi:
            continue
        series = f.laurent(angle, order)
        parts.append(PrincipalPart(angle, point, tuple(
            (order - k, complex(series.coefficients[k])) for k in range(order)
        )))

    return parts


def outer_residue(parts: List[PrincipalPart], g: RationalFunction,
                  angle: float, point: complex) -> complex:
    """
    Residue of g(v) * sum(parts)(v) at the point of an angle

    :param parts: Principal parts of the inner integral
    :param g: Outer rational factor
    :param angle: Angle of the point
    :param point: The point itself

    :return: Residue
    """
    order = max(-g.order_at(angle), 0)
    total = 0j

    for part in parts:
        if part.angle == angle:
            reach = max(s for s, _ in part.terms)
            total += part.residue_against(
                g.laurent(angle, order + reach, point)
            )
        elif order > 0:
            series = g.laurent(angle, order) * part.taylor(point, order)
            total += series.residue()

    return total
