import unittest
from pathlib import Path
from tempfile import TemporaryDirectory

import numpy as np
from scipy.stats import chi2

from Commands.SelfTest import elliptic, skewed, uniform
from Inverse.Inverse import kinv_batch
from Kasteleyn.Gauge import reference_matching
from Kasteleyn.Matrix import build_matrix, partition_det
from Lattice.Aztec import build_aztec
from Measures.Enumeration import enumerate_matchings, \
    enumeration_marginals, is_perfect_matching
from Measures.Marginals import clamp_probability, marginal, marginal_table
from Measures.Sampler import ConditionedKernel, domino, render_tiling, \
    sample, sample_many
from Utils.Errors import ConfigError, VerificationError


class TestMethods(unittest.TestCase):
    @classmethod
    def test_enumeration_counts(cls):
        for n, count in ((1, 2), (2, 8), (3, 64), (4, 1024)):
            g = build_aztec(n)
            matchings = enumerate_matchings(g)

            assert len(matchings) == count
            assert len(set(matchings)) == count
            assert all(is_perfect_matching(g, m) for m in matchings)

        try:
            enumerate_matchings(build_aztec(5))
            assert False
        except ConfigError:
            pass

    @classmethod
    def test_partial_matching(cls):
        g = build_aztec(2)
        matching = frozenset(reference_matching(g))

        assert is_perfect_matching(g, matching)
        assert not is_perfect_matching(g, frozenset(list(matching)[1:]))

    @classmethod
    def test_enumeration_partition(cls):
        for m in (skewed(3), elliptic(2)):
            exact = enumeration_marginals(m)['partition']
            det = partition_det(build_matrix(m))
            assert abs(exact - det) / det < 1e-10

    @classmethod
    def test_marginals(cls):
        for m in (skewed(3), elliptic(2)):
            exact = enumeration_marginals(m)['edges']
            table = marginal_table(m)

            assert max(abs(exact[k] - p) for k, p in table.items()) < 1e-9

            for white in m.graph.whites:
                total = sum(table[e.key] for e in m.graph.adjacency[white])
                assert abs(total - 1.0) < 1e-10

    @classmethod
    def test_joint_marginal(cls):
        m = skewed(3)
        first, second = reference_matching(m.graph)[:2]
        exact = sum(p for matching, p in
                    enumeration_marginals(m)['matchings']
                    if first in matching and second in matching)

        assert abs(marginal(m, [first, second]) - exact) < 1e-9
        assert abs(marginal(m, [first.key, second.key]) - exact) < 1e-9
        assert marginal(m, []) == 1.0

        for edges in ([first, first], [((0, 1), (3, 0))]):
            try:
                marginal(m, edges)
                assert False
            except ConfigError:
                pass

    @classmethod
    def test_clamp(cls):
        assert clamp_probability(0.5 + 1e-12j) == 0.5
        assert clamp_probability(-1e-12) == 0.0
        assert clamp_probability(1.0 + 1e-12) == 1.0

        for value in (1.5, -0.1, 0.5 + 1e-6j):
            try:
                clamp_probability(value)
                assert False
            except VerificationError:
                pass

    @classmethod
    def test_sampler(cls):
        m = skewed(3)
        inverse = kinv_batch(m, 'direct')

        first = sample(m, 7, inverse)
        assert is_perfect_matching(m.graph, first)
        assert sample(m, 7, inverse) == first

        serial = sample_many(m, 11, 6, workers=1, inverse=inverse)
        assert len(serial) == 6
        assert sample_many(m, 11, 6, workers=2, inverse=inverse) == serial

    @classmethod
    def test_sampler_law(cls):
        count = 20000

        for m in (uniform(2), elliptic(2)):
            exact = enumeration_marginals(m)
            samples = sample_many(m, 5, count, workers=1)

            observed = {}
            for matching in samples:
                key = frozenset(e.key for e in matching)
                observed[key] = observed.get(key, 0) + 1

            # chi-square over matchings, rare ones pooled into one bin
            expected, counts = [], []
            rare_expected, rare_count = 0.0, 0
            for matching, probability in exact['matchings']:
                key = frozenset(e.key for e in matching)
                if probability * count < 5.0:
                    rare_expected += probability * count
                    rare_count += observed.pop(key, 0)
                else:
                    expected.append(probability * count)
                    counts.append(observed.pop(key, 0))
            if rare_expected > 0.0:
                expected.append(rare_expected)
                counts.append(rare_count)

            assert not observed
            expected, counts = np.array(expected), np.array(counts)
            statistic = float(np.sum((counts - expected) ** 2 / expected))
            assert statistic < chi2.ppf(0.999, len(expected) - 1)

            for key, probability in exact['edges'].items():
                frequency = sum(any(e.key == key for e in s)
                                for s in samples) / count
                sigma = np.sqrt(probability * (1.0 - probability) / count)
                assert abs(frequency - probability) <= 5.0 * sigma + 1e-12

    @classmethod
    def test_sampler_rejects_bad_law(cls):
        m = uniform(3)
        inverse = kinv_batch(m, 'direct')
        bad = inverse.copy()
        bad[0, :] *= -5.0

        white = m.graph.whites[0]
        try:
            ConditionedKernel(m, bad).probabilities(white)
            assert False
        except VerificationError:
            pass

        try:
            sample(m, 1, bad)
            assert False
        except VerificationError:
            pass

        # every probability clamps, but the law no longer sums to one
        scaled = inverse * 0.5
        try:
            sample(m, 1, scaled)
            assert False
        except VerificationError as error:
            assert error.defect > 0.1

        law = ConditionedKernel(m, inverse).probabilities(white)
        assert abs(sum(p for _, p in law) - 1.0) < 1e-12

    @classmethod
    def test_render(cls):
        m = uniform(2)
        matching = sample(m, 3)
        edge = next(iter(matching))

        corners = domino(edge)
        assert len(corners) == 4
        assert len(set(corners)) == 4

        with TemporaryDirectory() as directory:
            path = render_tiling(matching, str(Path(directory, 'tiling.svg')))
            assert Path(path).read_text().startswith('<?xml')
