import unittest

from Lattice.Aztec import BOUNDARY, CORNER, INTERIOR_EVEN, ODD, \
    build_aztec, step_track
from Lattice.Divisor import FormalDivisor, TrainTrack
from Lattice.Extended import AZTEC, QUADRANTS, build_extended, \
    rotate_point
from Utils.Errors import ConfigError, ModelError


class TestMethods(unittest.TestCase):
    @classmethod
    def test_sizes(cls):
        for n in range(1, 5):
            g = build_aztec(n)
            assert len(g.whites) == n * (n + 1)
            assert len(g.blacks) == n * (n + 1)
            assert len(g.edges) == 4 * n * n

            classes = g.face_classes()
            assert len(classes[ODD]) == n * n
            assert len(classes[INTERIOR_EVEN]) == (n - 1) ** 2
            assert len(classes[BOUNDARY]) == 4 * n
            assert len(classes[CORNER]) == 4
            assert len(g.inner_faces()) == n * n + (n - 1) ** 2

    @classmethod
    def test_bad_size(cls):
        for n in (0, -1, 2.5, True):
            try:
                build_aztec(n)
                assert False
            except ModelError:
                pass

    @classmethod
    def test_lexicographic_order(cls):
        g = build_aztec(3)
        keys = [(v.y, v.x) for v in g.whites]
        assert keys == sorted(keys)
        keys = [(v.y, v.x) for v in g.blacks]
        assert keys == sorted(keys)

    @classmethod
    def test_base_divisors(cls):
        g = build_aztec(2)

        assert g.divisor((0, 0)) == FormalDivisor(base=1)
        assert g.divisor(g.white(0, 1)) == \
            FormalDivisor({TrainTrack('A', 1): -1}, base=1)
        assert g.divisor(g.black(1, 0)) == \
            FormalDivisor({TrainTrack('C', 1): 1}, base=1)

        try:
            g.divisor((5, 0))
            assert False
        except ConfigError:
            pass

    @classmethod
    def test_quadrilateral_convention(cls):
        g = build_aztec(3)

        for edge in g.edges:
            white = g.divisor(edge.white)
            assert g.divisor(edge.face_left) - white == \
                FormalDivisor({edge.left: 1})
            assert g.divisor(edge.face_right) - white == \
                FormalDivisor({edge.right: 1})

    @classmethod
    def test_odd_faces_see_four_families(cls):
        g = build_aztec(3)

        for face in g.face_classes()[ODD]:
            i, j = (face.x + 1) // 2, (face.y + 1) // 2
            tracks = {track for edge, _ in g.face_edges(face)
                      for track in (edge.left, edge.right)}
            assert tracks == {TrainTrack('A', j), TrainTrack('B', j),
                              TrainTrack('C', i), TrainTrack('D', i)}

    @classmethod
    def test_face_edges_alternate(cls):
        g = build_aztec(2)

        for face in g.inner_faces():
            exponents = [e for _, e in g.face_edges(face)]
            assert sorted(exponents) == [-1, -1, 1, 1]

        try:
            g.face_edges(g.face(0, 0))
            assert False
        except ConfigError:
            pass

    @classmethod
    def test_step_track(cls):
        assert step_track((0, 0), (1, 0)) == (TrainTrack('C', 1), 1)
        assert step_track((1, 0), (0, 0)) == (TrainTrack('C', 1), -1)
        assert step_track((0, 0), (0, 1)) == (TrainTrack('A', 1), -1)
        assert step_track((0, 1), (0, 2)) == (TrainTrack('B', 1), 1)

        try:
            step_track((0, 0), (1, 1))
            assert False
        except ConfigError:
            pass

    @classmethod
    def test_divisor_arithmetic(cls):
        a = FormalDivisor.from_tracks([TrainTrack('A', 1)],
                                      [TrainTrack('C', 2)], base=1)
        b = FormalDivisor.from_tracks([TrainTrack('C', 2)])

        assert (a + b).coefficients == {TrainTrack('A', 1): 1}
        assert (a - a) == FormalDivisor()
        assert a.degree == 0
        assert a.evaluate(lambda t: {'A': 0.5, 'C': 0.25}[t.family],
                          2.0) == 2.25

    @classmethod
    def test_rotation(cls):
        assert rotate_point(2, (1, 0)) == (4, 1)
        assert rotate_point(2, (1, 0), 4) == (1, 0)
        assert rotate_point(2, rotate_point(2, (3, 2), 3), 1) == (3, 2)

    @classmethod
    def test_extended_window(cls):
        n, depth = 2, 1
        ext = build_extended(n, depth)

        assert len(ext.region) == 2 * n * (n + 1) + 8 * (n + 1)
        assert len(ext.icy_edges()) == 4 * (n + 1)

        for quadrant in QUADRANTS:
            vertices = ext.quadrant_vertices(quadrant)
            assert len(vertices) == 2 * (n + 1)
            for vertex in vertices:
                assert ext.icy_partner(ext.icy_partner(vertex)) == vertex

        for vertex in ext.base.whites:
            assert ext.region[vertex] == AZTEC
            assert ext.divisor(vertex) == ext.base.divisor(vertex)

    @classmethod
    def test_extended_depth_limits(cls):
        assert build_extended(2, 0).edges == build_aztec(2).edges

        for depth in (-1, 9):
            try:
                build_extended(2, depth)
                assert False
            except ConfigError:
                pass
