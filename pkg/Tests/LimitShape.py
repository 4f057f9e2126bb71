import unittest
from math import acos, pi, sqrt

from Commands.SelfTest import elliptic, skewed, uniform
from Curve.Curve import Genus0, Genus1
from Kasteleyn.Model import AngleAssignment, FockModel
from Lattice.Aztec import build_aztec
from LimitShape.Action import A0, A1, Action, minimal_period
from LimitShape.Arctic import FROZEN, GAS, LIQUID, action_cross_ratio, \
    arctic_curve, classify_phase, cross_ratio, ellipse_residual, \
    phase_grid, tangency_clusters, tangency_points
from LimitShape.Critical import certified_degree, critical_points, \
    real_root_bound
from LimitShape.Probe import finite_n_convergence_probe, lu_entries, \
    south_west_edge
from Utils.Errors import ConfigError


def constant(r):
    """
    Constant angles on the sphere whose cross ratio is r
    """
    phi = acos(sqrt(1.0 / r))
    return Action(Genus0(), [0.0], [pi / 2], [phi], [phi + pi / 2])


def periodic(k):
    return Action(Genus0(), [0.0, 0.1], [1.0, 1.1],
                  [0.4 + 0.1 * i for i in range(k)],
                  [2.0 + 0.1 * i for i in range(k)])


class TestMethods(unittest.TestCase):
    @classmethod
    def test_cross_ratio(cls):
        assert abs(cross_ratio(1, -1, 1j, -1j) - 2.0) < 1e-15
        assert abs(action_cross_ratio(Action.from_model(uniform(2))) - 2.0) \
            < 1e-12

        for r in (1.2, 2.0, 4.0):
            assert abs(action_cross_ratio(constant(r)) - r) < 1e-12

        for points in ((1, 1, 1j, -1j), (1, -1, 1j, 2)):
            try:
                cross_ratio(*points)
                assert False
            except ConfigError:
                pass

        try:
            action_cross_ratio(periodic(2))
            assert False
        except ConfigError:
            pass

    @classmethod
    def test_minimal_period(cls):
        assert minimal_period([(0, 1), (0, 1), (0, 1)]) == 1
        assert minimal_period([(0, 1), (2, 3), (0, 1), (2, 3)]) == 2
        assert minimal_period([(0, 1), (2, 3), (4, 5)]) == 3

        a = Action.from_model(uniform(3))
        assert a.k == 1 and a.l == 1

    @classmethod
    def test_ellipse(cls):
        for r in (1.2, 2.0, 4.0):
            curve = arctic_curve(constant(r), A0, 512)
            assert curve.points
            assert max(abs(ellipse_residual(r, x, y))
                       for x, y in curve.points) < 1e-10

    @classmethod
    def test_arctic_errors(cls):
        a = constant(2.0)
        for component, samples in ((A1, 16), ('a2', 16), (A0, 0)):
            try:
                arctic_curve(a, component, samples)
                assert False
            except ConfigError:
                pass

    @classmethod
    def test_tangency(cls):
        a = constant(2.0)
        points = tangency_points(a)

        assert len(points) == 4
        assert tangency_clusters(points) == {'bottom': 1, 'top': 1,
                                             'left': 1, 'right': 1}

        bottom = next(p for p in points if p['side'] == 'bottom')
        assert abs(bottom['x'] - 0.5) < 1e-4 and abs(bottom['y']) < 1e-4

    @classmethod
    def test_phases(cls):
        a = constant(2.0)

        assert classify_phase(a, 0.5, 0.5).phase == LIQUID
        corner = classify_phase(a, 0.05, 0.05)
        assert corner.phase == FROZEN and corner.component

        grid = phase_grid(a, 4, workers=1)
        assert len(grid) == 16
        assert sum(p.phase == FROZEN for p in grid) == 4
        assert sum(p.phase == LIQUID for p in grid) == 12

        for x, y in ((0.0, 0.5), (0.5, 1.2)):
            try:
                classify_phase(a, x, y)
                assert False
            except ConfigError:
                pass

    @classmethod
    def test_gas(cls):
        a = Action(Genus1(sqrt(3.0)), [0.0], [0.5], [1.0 / 6.0],
                   [5.0 / 6.0])

        assert classify_phase(a, 0.5, 0.5).phase == GAS
        assert arctic_curve(a, A0, 512).points
        assert arctic_curve(a, A1, 512).points

    @classmethod
    def test_degree(cls):
        for k in (2, 3):
            a = periodic(k)
            degree, expected = certified_degree(a, 0.3, 0.6)

            assert degree == expected == 2 * k + 2
            assert len(critical_points(a, 0.3, 0.6)) == expected
            assert real_root_bound(a) == 2 * k

        try:
            Action(Genus0(), [0.0], [1.0, 2.0], [0.5], [2.5])
            assert False
        except ConfigError:
            pass

    @classmethod
    def test_probe(cls):
        m = FockModel(build_aztec(48), Genus0(),
                      AngleAssignment.homogeneous(48, 0.0, pi / 2, pi / 4,
                                                  3 * pi / 4))
        corner, centre = finite_n_convergence_probe(
            m, [(0.08, 0.08), (0.5, 0.5)]
        )

        assert corner['phase'] == FROZEN and corner['consistent']
        assert min(corner['marginal'], 1.0 - corner['marginal']) < 0.01
        assert centre['phase'] == LIQUID
        assert 0.1 < centre['marginal'] < 0.9

        rows = finite_n_convergence_probe(skewed(3), [(0.5, 0.5)])
        assert rows[0]['n'] == 3

        for m, cap in ((elliptic(2), 64), (skewed(3), 2)):
            try:
                finite_n_convergence_probe(m, [(0.5, 0.5)], n_cap=cap)
                assert False
            except ConfigError:
                pass

    @classmethod
    def test_probe_engines(cls):
        m = skewed(10)
        points = [(0.1, 0.1), (0.5, 0.5), (0.3, 0.7), (0.9, 0.2)]
        rows = finite_n_convergence_probe(m, points, cross_check_cap=0)

        edges = [south_west_edge(m, x, y)[2] for x, y in points]
        for row, edge, value in zip(rows, edges, lu_entries(m, edges)):
            assert abs(row['marginal'] - (m.fock_weight(edge) * value).real) \
                < 1e-9

        checked = finite_n_convergence_probe(m, points)
        assert [row['marginal'] for row in checked] == \
            [row['marginal'] for row in rows]

        try:
            finite_n_convergence_probe(elliptic(2), points)
            assert False
        except ConfigError:
            pass
