import unittest
from math import pi, sqrt, tan

import numpy as np

from Commands.SelfTest import elliptic, skewed
from Curve.Curve import Genus0, Genus1
from Kasteleyn.Gauge import b_of_kprime, biased2x2_to_fock, \
    biased2x2_weights, edge_periodicity_check, model_from_config, \
    reference_matching, stanley_model, stanley_to_fock, stanley_weights, \
    weighted_kasteleyn
from Kasteleyn.Matrix import build_matrix, face_weight, face_weights, \
    kasteleyn_condition_check, partition_det
from Kasteleyn.Model import AngleAssignment, FockModel, cyclic_lift, \
    parse_track
from Kasteleyn.Partition import genus0_closed_form, half_turn_angles, \
    partition_product, recurrence_multiplier, reduced_model, \
    spider_factor, stanley_partition, sweep_factor
from Lattice.Aztec import build_aztec
from Lattice.Divisor import TrainTrack
from Measures.Enumeration import is_perfect_matching
from Utils.Errors import ConfigError, ModelError

STANLEY = {'x': [1.0, 2.0, 0.5], 'y': [1.5, 1.0, 1.0],
           'z': [0.5, 1.0, 2.0], 'w': [1.0, 3.0, 1.0]}


def relative(a, b):
    return abs(a - b) / abs(b)


class TestMethods(unittest.TestCase):
    @classmethod
    def test_cyclic_order(cls):
        lift = cyclic_lift(AngleAssignment.homogeneous(1, 3.0, 1.3, 0.2,
                                                       2.0), pi)
        assert lift['start'] == 3.0

        bad = (
            AngleAssignment.homogeneous(2, 0.0, pi / 4, pi / 2, 3 * pi / 4),
            AngleAssignment.homogeneous(2, 0.0, 0.0, pi / 4, 3 * pi / 4),
            AngleAssignment.from_lists([0.0, 0.5], [1.6, 1.7], [0.3, 0.31],
                                       [2.3, 2.4]),
            AngleAssignment.from_lists([0.0], [1.0], [0.5], [])
        )
        for angles in bad:
            try:
                cyclic_lift(angles, pi)
                assert False
            except ModelError:
                pass

    @classmethod
    def test_model_errors(cls):
        angles = AngleAssignment.homogeneous(2, 0.0, 0.5, 0.25, 0.75)

        for build in (
            lambda: FockModel(build_aztec(3), Genus1(1.0), angles, 0.25),
            lambda: FockModel(build_aztec(2), Genus1(1.0), angles, 1.0),
            lambda: FockModel(build_aztec(2), Genus1(1.0), angles, -0.1)
        ):
            try:
                build()
                assert False
            except ModelError:
                pass

        for config in (
            {'n': 2, 'curve': {'genus': 0}, 'angles': {}},
            {'n': 2, 'curve': {'genus': 0}, 'angles': angles.to_json(),
             'colour': 1},
            {'n': 2, 'angles': angles.to_json()},
            {'n': '2', 'curve': {'genus': 0}, 'angles': angles.to_json()},
            {'n': 2, 'stanley': STANLEY},
            {'n': 2, 'biased': {'a': 1.0, 'b': 1.0}},
            {'n': 2, 'biased': {'a': 1.0}},
            [1, 2]
        ):
            try:
                model_from_config(config)
                assert False
            except ConfigError:
                pass

    @classmethod
    def test_lifted_angles(cls):
        m = FockModel(build_aztec(1), Genus0(),
                      AngleAssignment.homogeneous(1, 3.0, 1.3, 0.2, 2.0))

        expected = {'A': 3.0, 'C': 0.2 + pi, 'B': 1.3 + pi, 'D': 2.0 + pi}
        for family, value in expected.items():
            assert abs(m.angle(TrainTrack(family, 1)) - value) < 1e-14
        assert m.angle(TrainTrack('A', 7)) == m.angle(TrainTrack('A', 1))
        assert parse_track('gamma_2') == TrainTrack('C', 2)
        assert parse_track('D-1') == TrainTrack('D', -1)

    @classmethod
    def test_window_angles(cls):
        base = skewed(3)
        m = FockModel(base.graph, base.curve, base.raw_angles,
                      extended={'A0': 0.05, 'delta_5': 2.5})

        assert m.angle(TrainTrack('A', 0)) == m.lift(0.05)
        assert m.angle(TrainTrack('D', 5)) == m.lift(2.5)
        assert m.angle(TrainTrack('A', -2)) == m.angle(TrainTrack('A', 1))
        assert m.angle(TrainTrack('B', 4)) == m.angle(TrainTrack('B', 3))
        assert m.angle(TrainTrack('C', 9)) == base.angle(TrainTrack('C', 3))

    @classmethod
    def test_kasteleyn_condition(cls):
        for m in (skewed(3), elliptic(3), stanley_model(STANLEY),
                  model_from_config({'n': 4,
                                     'biased': {'a': 1.5, 'b': 0.4}})):
            passed, defect = kasteleyn_condition_check(build_matrix(m))
            assert passed and defect < 1e-10

    @classmethod
    def test_partition_genus0(cls):
        for n in range(1, 5):
            m = skewed(n)
            det = partition_det(build_matrix(m))

            assert relative(partition_product(m), det) < 1e-8
            assert relative(genus0_closed_form(m.raw_angles), det) < 1e-8

    @classmethod
    def test_partition_half_turn(cls):
        for n in range(1, 5):
            for rho in (pi / 4, pi / 3):
                m = FockModel(build_aztec(n), Genus0(),
                              half_turn_angles(n, rho))
                det = partition_det(build_matrix(m))
                assert relative(det, 2.0 ** (n * (n + 1))) < 1e-10

        try:
            half_turn_angles(2, pi / 2)
            assert False
        except ConfigError:
            pass

    @classmethod
    def test_partition_genus1(cls):
        for n in (1, 2, 3):
            m = elliptic(n)
            det = partition_det(build_matrix(m))
            assert relative(partition_product(m), det) < 1e-8

    @classmethod
    def test_layer_factors(cls):
        m = skewed(3)
        assert relative(sweep_factor(m), recurrence_multiplier(m)) < 1e-10

        reduced = reduced_model(m)
        assert reduced.n == 2
        assert reduced.d == m.angles.beta[0] - m.angles.delta[0]

        try:
            spider_factor(m, m.graph.face_classes()['boundary'][0])
            assert False
        except ConfigError:
            pass

        try:
            reduced_model(skewed(1))
            assert False
        except ModelError:
            pass

    @classmethod
    def test_stanley(cls):
        m = stanley_model(STANLEY)
        K = build_matrix(m)
        weights = stanley_weights(m.graph, *(STANLEY[k] for k in 'xyzw'))
        expected = stanley_partition(*(STANLEY[k] for k in 'xyzw'))

        ours = face_weights(K.weights(), m.graph)
        theirs = face_weights(weights, m.graph)
        assert max(relative(ours[f], theirs[f]) for f in theirs) < 1e-10

        assert relative(partition_det(weighted_kasteleyn(K, weights)),
                        expected) < 1e-9

        matching = reference_matching(m.graph)
        assert is_perfect_matching(m.graph, frozenset(matching))
        ratio = np.prod([weights[e.key] / abs(K.weight(e)) for e in matching])
        assert relative(ratio * partition_det(K), expected) < 1e-9

    @classmethod
    def test_stanley_uniform(cls):
        ones = [1.0] * 3
        assert stanley_partition(ones, ones, ones, ones) == 2.0 ** 6

        try:
            stanley_partition([1.0], [1.0, 2.0], [1.0], [1.0])
            assert False
        except ConfigError:
            pass

    @classmethod
    def test_biased(cls):
        gauge = biased2x2_to_fock(1.0, 0.5)
        assert abs(gauge['rho'] - 0.25) < 1e-10
        assert abs(sqrt(gauge['kprime']) - 0.5) < 1e-10
        assert abs(b_of_kprime(1.0, gauge['kprime']) - 0.5) < 1e-12
        assert gauge['t'] == 0.25

        periodic, defect = edge_periodicity_check(
            AngleAssignment.homogeneous(4, *gauge['angles'])
        )
        assert periodic and defect < 1e-12

        degenerate = biased2x2_to_fock(2.0, 0.999)
        assert abs(2.0 - 1.0 / tan(pi * degenerate['rho'])) < 1e-2

        for a, b in ((0.0, 0.5), (1.0, 1.5), (1.0, 0.0)):
            try:
                biased2x2_to_fock(a, b)
                assert False
            except ConfigError:
                pass

    @classmethod
    def test_biased_faces(cls):
        m = model_from_config({'n': 4, 'biased': {'a': 1.0, 'b': 0.5}})
        weights = biased2x2_weights(m.graph, 1.0, 0.5)
        fock = build_matrix(m).weights()

        for face in m.graph.inner_faces():
            assert relative(face_weight(fock, face, m.graph),
                            face_weight(weights, face, m.graph)) < 1e-9

    @classmethod
    def test_biased_sphere_limit(cls):
        a = 1.5
        gauge = biased2x2_to_fock(a, 1.0)
        rho = gauge['rho']

        assert isinstance(gauge['curve'], Genus0)
        assert gauge['kprime'] == 1.0
        assert 0.0 < rho < 0.5
        assert abs(a - 1.0 / tan(pi * rho)) < 1e-12

        # at b = 1 the pattern is Stanley's with x = w = 1 and y = z = a
        ones, column = [1.0] * 3, [a] * 3
        g = build_aztec(3)
        biased = biased2x2_weights(g, a, 1.0)
        assert biased == stanley_weights(g, ones, column, column, ones)

        angles = stanley_to_fock(ones, column, column, ones, 0.0, pi * rho,
                                 pi / 2 + pi * rho)
        assert max(abs(v - pi / 2) for v in angles.beta) < 1e-10
        assert max(abs(v) for v in angles.alpha) < 1e-10

        m = model_from_config({'n': 3, 'biased': {'a': a, 'b': 1.0}})
        assert m.curve.genus == 0
        fock = build_matrix(m).weights()
        for face in m.graph.inner_faces():
            assert relative(face_weight(fock, face, m.graph),
                            face_weight(biased, face, m.graph)) < 1e-9

        uniform = biased2x2_to_fock(1.0, 1.0)
        assert abs(uniform['rho'] - 0.25) < 1e-15
