from argparse import ArgumentParser
from math import pi
from typing import Callable, List, Tuple

import numpy as np

from Curve.Curve import Genus0, Genus1
from Interfaces.CommandInterface import CommandInterface
from Inverse.Extended import window_identity
from Inverse.Inverse import identity_defect, kinv_batch, kinv_direct, \
    kinv_homogeneous_sw
from Kasteleyn.Gauge import stanley_model, stanley_weights
from Kasteleyn.Matrix import build_matrix, face_weights, \
    kasteleyn_condition_check, partition_det
from Kasteleyn.Model import AngleAssignment, FockModel
from Kasteleyn.Partition import genus0_closed_form, partition_product
from KernelForms.Forms import kernel_check
from Lattice.Aztec import build_aztec
from Lattice.Extended import build_extended
from LimitShape.Action import Action
from LimitShape.Arctic import FROZEN, LIQUID, action_cross_ratio, \
    arctic_curve, classify_phase, ellipse_residual
from Measures.Enumeration import enumerate_matchings, enumeration_marginals
from Measures.Marginals import marginal_table
from Utils.Errors import AztecFockError

#: number of matchings of the diamonds of size 1, 2 and 3
MATCHINGS = {1: 2, 2: 8, 3: 64}


def uniform(n: int) -> FockModel:
    return FockModel(build_aztec(n), Genus0(),
                     AngleAssignment.homogeneous(n, 0.0, pi / 2, pi / 4,
                                                 3 * pi / 4))


def elliptic(n: int) -> FockModel:
    return FockModel(build_aztec(n), Genus1(1.0),
                     AngleAssignment.homogeneous(n, 0.0, 0.5, 0.25, 0.75),
                     0.25, 0.0)


def skewed(n: int) -> FockModel:
    alpha = [0.1 * j for j in range(n)]
    return FockModel(build_aztec(n), Genus0(), AngleAssignment.from_lists(
        alpha, [pi / 2 + 0.05 * j for j in range(n)],
        [pi / 4 + 0.03 * j for j in range(n)],
        [3 * pi / 4 + 0.02 * j for j in range(n)]
    ))


class SelfTest(CommandInterface):
    name = 'selftest'
    help = 'Run the acceptance checks on small built in models'

    @staticmethod
    def add_arguments(parser: ArgumentParser) -> None:
        parser.add_argument('--n', type=int, default=3, choices=(1, 2, 3),
                            help='Largest diamond used')

    def checks(self, n: int) -> List[Tuple[str, Callable[[], float], float]]:
        identity = self.tolerance('identity')
        cap = self.limit('enumeration_n_cap')

        def matchings() -> float:
            return float(sum(abs(len(enumerate_matchings(build_aztec(k), cap))
                                 - MATCHINGS[k]) for k in range(1, n + 1)))

        def kasteleyn() -> float:
            return max(kasteleyn_condition_check(build_matrix(m))[1]
                       for m in (uniform(n), skewed(n), elliptic(n)))

        def partition() -> float:
            worst = 0.0
            for m in (uniform(n), skewed(n)):
                det = partition_det(build_matrix(m))
                worst = max(worst,
                            abs(det - partition_product(m)) / det,
                            abs(det - genus0_closed_form(m.raw_angles)) / det)
            return worst

        def half_turn() -> float:
            det = partition_det(build_matrix(uniform(n)))
            return abs(det - 2.0 ** (n * (n + 1))) / det

        def torus_partition() -> float:
            m = elliptic(n)
            det = partition_det(build_matrix(m))
            return abs(det - partition_product(m)) / det

        def residue_inverse() -> float:
            m = skewed(n)
            K = build_matrix(m)
            return identity_defect(K, kinv_batch(m, 'residue'))

        def quadrature_inverse() -> float:
            m = elliptic(min(n, 2))
            K = build_matrix(m)
            return identity_defect(K, kinv_batch(
                m, 'quadrature', tolerance=self.tolerance('quadrature_rel'),
                max_nodes=self.limit('quadrature_max_nodes')
            ))

        def south_west() -> float:
            m = uniform(n)
            direct, _ = kinv_direct(build_matrix(m))
            graph = m.graph
            worst = 0.0
            for i in range(1, n + 1):
                for j in range(n):
                    b = graph.black(2 * i - 1, 2 * j)
                    w = graph.white(2 * i, 2 * j + 1)
                    value = direct[graph.black_index[b],
                                   graph.white_index[w]]
                    worst = max(worst,
                                abs(kinv_homogeneous_sw(m, i, j) - value))
            return worst

        def marginals() -> float:
            m = skewed(min(n, cap))
            exact = enumeration_marginals(m, cap)['edges']
            table = marginal_table(m)
            return max(abs(exact[k] - p) for k, p in table.items())

        def kernel() -> float:
            m = skewed(n)
            interior = [w for w in m.graph.whites
                        if len(m.graph.adjacency[w]) == 4]
            u = np.array([0.3 + 0.7j, 1.5 - 0.2j, -0.8 + 0.4j])
            return max((kernel_check(m, w, m.graph.blacks[0], u)
                        for w in interior), default=0.0)

        def circle() -> float:
            action = Action.from_model(uniform(1))
            r = action_cross_ratio(action)
            curve = arctic_curve(action, n_samples=256)
            return abs(r - 2.0) + max(abs(ellipse_residual(r, x, y))
                                      for x, y in curve.points)

        def phases() -> float:
            action = Action.from_model(uniform(1))
            centre = classify_phase(action, 0.5, 0.5).phase == LIQUID
            corner = classify_phase(action, 0.05, 0.05).phase == FROZEN
            return float(not (centre and corner))

        def window() -> float:
            m = uniform(min(n, 2))
            return window_identity(m, build_extended(m.n, 1))['defect']

        def gauge() -> float:
            weights = {'x': [1.0, 2.0], 'y': [1.5, 1.0], 'z': [0.5, 1.0],
                       'w': [1.0, 3.0]}
            m = stanley_model(weights)
            ours = face_weights(build_matrix(m).weights(), m.graph)
            theirs = face_weights(
                stanley_weights(m.graph, *(weights[k] for k in 'xyzw')),
                m.graph
            )
            return max(abs(ours[f] - theirs[f]) / theirs[f] for f in ours)

        return [
            ('matching_counts', matchings, 0.0),
            ('kasteleyn_condition', kasteleyn, 1e-10),
            ('partition_genus0', partition, 1e-8),
            ('partition_half_turn', half_turn, 1e-10),
            ('partition_genus1', torus_partition, 1e-8),
            ('inverse_residue', residue_inverse, identity),
            ('inverse_quadrature', quadrature_inverse, identity),
            ('inverse_south_west', south_west, identity),
            ('marginals', marginals, identity),
            ('kernel', kernel, identity),
            ('arctic_circle', circle, 1e-10),
            ('phases', phases, 0.0),
            ('window_identity', window, identity),
            ('stanley_faces', gauge, 1e-10)
        ]

    def run(self) -> None:
        n = self.arguments.n

        for name, check, tolerance in self.checks(n):
            try:
                defect = check()
            except AztecFockError as error:
                self.logger.error('%s raised %s', name, error)
                defect = float('inf')
            self.check(name, defect, tolerance)

        checks = self.output.get('checks', {})
        self.output['n'] = n
        self.output['failed'] = sorted(k for k, v in checks.items()
                                       if not v['passed'])
