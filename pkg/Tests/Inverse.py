import unittest
from math import pi

import numpy as np

from Commands.SelfTest import elliptic, skewed, uniform
from Inverse.Contours import build_contours, winding_number
from Inverse.Extended import FORMULA, PROPAGATION, ZERO, ExtendedInverse, \
    block_of, window_identity
from Inverse.Inverse import DEFAULT_MAX_NODES, deformed_entry, \
    identity_defect, inverse_entry, kinv_batch, kinv_direct, kinv_entry, \
    kinv_entry_residue, kinv_homogeneous_sw
from Inverse.Residues import RationalFunction, residue
from Kasteleyn.Matrix import build_matrix
from KernelForms.Forms import MeromorphicProduct
from Lattice.Aztec import BLACK, WHITE
from Lattice.Extended import AZTEC, QUADRANTS, build_extended
from Measures.Marginals import extended_measure_check
from Utils.Errors import ConfigError, ConvergenceError, ModelError, \
    UnsupportedBlockError
from Utils.Store.Config import ConfigStore


class TestMethods(unittest.TestCase):
    @classmethod
    def test_residues(cls):
        f = RationalFunction(((0.0, 1.0 + 0j, -2), (pi / 4, 1j, -1)))

        assert abs(residue(f, 0.0) + 0.5j) < 1e-15
        assert abs(residue(f, pi / 4) - 0.5j) < 1e-15
        assert residue(f, pi / 2) == 0j
        assert [order for _, _, order in f.poles()] == [2, 1]

        try:
            f.laurent(pi / 2, 3)
            assert False
        except ModelError:
            pass

        try:
            RationalFunction.from_product(elliptic(1), MeromorphicProduct())
            assert False
        except ModelError:
            pass

    @classmethod
    def test_contours(cls):
        for m in (skewed(2), elliptic(2)):
            around_gamma, around_alpha = build_contours(m)

            for track, angle in m.angles.items():
                inside_gamma = track.family == 'C'
                inside_alpha = track.family == 'A'
                assert around_gamma.encloses(angle) == inside_gamma
                assert around_alpha.encloses(angle) == inside_alpha
                assert abs(winding_number(m, around_gamma, angle) -
                           inside_gamma) < 1e-9
                assert abs(winding_number(m, around_alpha, angle) -
                           inside_alpha) < 1e-9

    @classmethod
    def test_direct(cls):
        m = skewed(3)
        K = build_matrix(m)
        inverse, residual = kinv_direct(K)

        assert residual < 1e-12
        assert identity_defect(K, inverse) == residual

        try:
            kinv_direct(np.zeros((2, 3)))
            assert False
        except ConfigError:
            pass

    @classmethod
    def test_residue_engine(cls):
        for n in (1, 2, 3):
            m = skewed(n)
            K = build_matrix(m)
            direct, _ = kinv_direct(K)
            batch = kinv_batch(m, 'residue', workers=1)

            assert identity_defect(K, batch) < 1e-9
            assert np.max(np.abs(batch - direct)) < 1e-9

    @classmethod
    def test_quadrature_engine(cls):
        m = elliptic(2)
        K = build_matrix(m)
        batch = kinv_batch(m, 'quadrature', workers=1)

        assert identity_defect(K, batch) < 1e-9
        assert np.max(np.abs(batch - kinv_direct(K)[0])) < 1e-9

        b, w = m.graph.blacks[2], m.graph.whites[3]
        assert abs(kinv_entry(m, b, w) -
                   batch[m.graph.black_index[b], m.graph.white_index[w]]) \
            < 1e-9

    @classmethod
    def test_quadrature_node_cap(cls):
        assert DEFAULT_MAX_NODES == 65536

        ConfigStore.reset()
        assert ConfigStore().section('limits')['quadrature_max_nodes'] == \
            65536

        m = elliptic(2)
        b, w = m.graph.blacks[2], m.graph.whites[3]
        try:
            kinv_entry(m, b, w, tolerance=1e-300, max_nodes=256)
            assert False
        except ConvergenceError as error:
            assert error.estimate is not None
            assert np.isfinite(error.estimate)

    @classmethod
    def test_homogeneous(cls):
        m = uniform(3)
        direct, _ = kinv_direct(build_matrix(m))

        assert np.max(np.abs(kinv_batch(m, 'homogeneous') - direct)) < 1e-9

        for i in range(1, 4):
            for j in range(3):
                b = m.graph.black(2 * i - 1, 2 * j)
                w = m.graph.white(2 * i, 2 * j + 1)
                value = direct[m.graph.black_index[b], m.graph.white_index[w]]
                assert abs(kinv_homogeneous_sw(m, i, j) - value) < 1e-9

    @classmethod
    def test_deformed(cls):
        m = skewed(2)
        for b in m.graph.blacks:
            for w in m.graph.whites[::2]:
                assert abs(deformed_entry(m, b, w) -
                           kinv_entry_residue(m, b, w)) < 1e-9

        try:
            deformed_entry(elliptic(1), elliptic(1).graph.blacks[0],
                           elliptic(1).graph.whites[0])
            assert False
        except ModelError:
            pass

    @classmethod
    def test_entries(cls):
        m = skewed(2)
        b, w = m.graph.blacks[1], m.graph.whites[4]

        residue_entry = inverse_entry(m, b, w, 'residue')
        direct_entry = inverse_entry(m, b, w, 'direct')

        assert residue_entry.method == 'residue'
        assert residue_entry.estimate == 0.0
        assert direct_entry.estimate < 1e-12
        assert abs(residue_entry.value - direct_entry.value) < 1e-9
        assert residue_entry.to_json()['b'] == list(b.point)

        try:
            inverse_entry(m, b, w, 'guess')
            assert False
        except ConfigError:
            pass

        try:
            kinv_batch(elliptic(2), 'residue')
            assert False
        except ModelError:
            pass

    @classmethod
    def test_window(cls):
        m = uniform(2)
        ext = build_extended(2, 1)
        inverse = ExtendedInverse(m, ext)

        identity = window_identity(m, ext, inverse)
        assert identity['passed'] and identity['checked'] > 0

        for edge in ext.icy_edges():
            value = inverse.weight(edge) * inverse.entry(edge.black,
                                                         edge.white)
            assert abs(value - 1.0) < 1e-9

        edges = [m.graph.edges[0]]
        for quadrant in QUADRANTS:
            edges.extend([e for e in ext.icy_edges()
                          if ext.region[e.white] == quadrant][:1])
        left, right = extended_measure_check(m, ext, edges, inverse)
        assert abs(left - right) < 1e-9

        try:
            ExtendedInverse(uniform(3), ext)
            assert False
        except ConfigError:
            pass

    @classmethod
    def test_blocks(cls):
        ext = build_extended(2, 1)

        def first(color, region):
            return next(v for v in ext.region
                        if v.color == color and ext.region[v] == region)

        assert block_of(ext, first(BLACK, AZTEC), first(WHITE, 'N')) == \
            FORMULA
        assert block_of(ext, first(BLACK, 'N'), first(WHITE, 'N')) == \
            PROPAGATION
        assert block_of(ext, first(BLACK, 'N'), first(WHITE, 'S')) == ZERO

        try:
            block_of(ext, first(BLACK, AZTEC), first(WHITE, 'W'))
            assert False
        except UnsupportedBlockError:
            pass
