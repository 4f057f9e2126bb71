import unittest

import numpy as np

from Commands.SelfTest import elliptic, skewed
from KernelForms.Forms import MeromorphicProduct, evaluate, \
    fay_residue_check, g_form, kernel_check, p_point, path_product, \
    pole_zero_profile, staircase
from Utils.Errors import ConfigError

U = np.array([0.3 + 0.7j, 1.5 - 0.2j, -0.8 + 0.4j])


def interior_whites(m):
    return [w for w in m.graph.whites if len(m.graph.adjacency[w]) == 4]


class TestMethods(unittest.TestCase):
    @classmethod
    def test_kernel(cls):
        m = skewed(3)
        whites = interior_whites(m)
        assert whites

        for x in (m.graph.blacks[0], m.graph.blacks[-1], (0, 0), (3, 3)):
            for w in whites:
                assert kernel_check(m, w, x, U) < 1e-9

        try:
            kernel_check(m, m.graph.white(0, 1), (0, 0), U)
            assert False
        except ConfigError:
            pass

    @classmethod
    def test_multiplicative(cls):
        m = skewed(2)
        b, w = m.graph.black(1, 2), m.graph.white(4, 3)

        assert g_form(m, b, b).is_empty
        joined = g_form(m, b, (0, 0)) * g_form(m, (0, 0), w)
        assert np.max(np.abs(evaluate(m, joined, U) -
                             evaluate(m, g_form(m, b, w), U))) < 1e-12

        inverse = g_form(m, b, w) * g_form(m, b, w).inverse()
        assert inverse.is_empty

    @classmethod
    def test_path_independence(cls):
        m = skewed(2)
        b, w = m.graph.black(1, 0), m.graph.white(4, 3)

        direct = evaluate(m, g_form(m, b, w), U)
        east_first = path_product(m, staircase(b.point, w.point), U)
        north_first = path_product(
            m, list(reversed(staircase(w.point, b.point))), U
        )

        assert np.max(np.abs(direct - east_first)) < 1e-12
        assert np.max(np.abs(direct - north_first)) < 1e-12

    @classmethod
    def test_staircase(cls):
        assert staircase((0, 0), (2, 1)) == [(0, 0), (1, 0), (2, 0), (2, 1)]
        assert staircase((2, 2), (2, 0)) == [(2, 2), (2, 1), (2, 0)]
        assert staircase((1, 1), (1, 1)) == [(1, 1)]

    @classmethod
    def test_pole_zero_profile(cls):
        m = skewed(2)
        profile = pole_zero_profile(m, MeromorphicProduct())
        assert profile == {'poles': [], 'zeros': []}

        forms = g_form(m, m.graph.black(1, 0), m.graph.white(2, 1))
        profile = pole_zero_profile(m, forms)
        orders = sum(o for _, o in profile['zeros']) - \
            sum(o for _, o in profile['poles'])
        assert orders == sum(forms.prime_exponents.values())

    @classmethod
    def test_fay_residues(cls):
        m = skewed(3)
        result = fay_residue_check(m, m.graph.white(2, 3))
        assert result['passed']

        try:
            fay_residue_check(m, m.graph.white(6, 1))
            assert False
        except ConfigError:
            pass

    @classmethod
    def test_p_point(cls):
        assert p_point(skewed(2)) == 0.0
        assert abs(p_point(elliptic(2)) - 0.25) < 1e-15
