from argparse import ArgumentParser
from math import sqrt
from typing import Dict

import numpy as np

from Interfaces.CommandInterface import CommandInterface
from Inverse.Inverse import kinv_direct
from Kasteleyn.Gauge import biased2x2_to_fock, biased2x2_weights, \
    reference_matching, stanley_weights, weighted_kasteleyn
from Kasteleyn.Matrix import EdgeKey, KasteleynMatrix, build_matrix, \
    face_weights, partition_det
from Kasteleyn.Partition import stanley_partition
from Utils.Errors import ConfigError

FACE_TOLERANCE = 1e-10
PARTITION_TOLERANCE = 1e-9
BIASED_TOLERANCE = 1e-10

HEADERS = ['x', 'y', 'gauge', 'fock', 'rel_err']


def edge_probabilities(K: KasteleynMatrix) -> np.ndarray:
    inverse, _ = kinv_direct(K)
    graph = K.graph
    return np.array([
        (K.weight(e) * inverse[graph.black_index[e.black],
                               graph.white_index[e.white]]).real
        for e in graph.edges
    ])


class Gauge(CommandInterface):
    name = 'gauge'
    help = 'Fock angles of Stanley or biased 2x2 weights, and their checks'

    @staticmethod
    def add_arguments(parser: ArgumentParser) -> None:
        parser.add_argument('--out', default='faces.csv',
                            help='Face weights of both weightings')

    def compare(self, K: KasteleynMatrix,
                weights: Dict[EdgeKey, float]) -> None:
        graph = K.graph
        gauge = face_weights(weights, graph)
        fock = face_weights(K.weights(), graph)

        rows = []
        for (x, y) in sorted(gauge, key=lambda p: p[::-1]):
            error = abs(gauge[(x, y)] - fock[(x, y)]) / abs(gauge[(x, y)])
            rows.append([x, y, gauge[(x, y)], fock[(x, y)], error])

        self.table('faces', HEADERS, rows, self.arguments.out)
        self.check('face_weights', max(r[-1] for r in rows), FACE_TOLERANCE,
                   'Kasteleyn/Gauge.py')

        difference = edge_probabilities(weighted_kasteleyn(K, weights)) - \
            edge_probabilities(K)
        self.check('edge_probabilities', float(np.max(np.abs(difference))),
                   self.tolerance('identity'), 'Kasteleyn/Gauge.py')

    def stanley(self, config: Dict) -> None:
        m = self.model()
        K = build_matrix(m)
        x, y, z, w = (config[k] for k in 'xyzw')
        weights = stanley_weights(m.graph, x, y, z, w)

        self.output['angles'] = m.raw_angles.to_json()
        self.compare(K, weights)

        matching = reference_matching(m.graph)
        ratio = np.prod([weights[e.key] / abs(K.weight(e)) for e in matching])
        fock = partition_det(K)
        expected = stanley_partition(x, y, z, w)
        transferred = ratio * fock

        self.output.update({'partition_stanley': expected,
                            'partition_fock': fock,
                            'reference_ratio': float(ratio)})
        self.check('partition_transfer',
                   abs(transferred - expected) / expected,
                   PARTITION_TOLERANCE, 'Kasteleyn/Partition.py')

    def biased(self, config: Dict) -> None:
        m = self.model()
        a, b = float(config['a']), float(config['b'])
        gauge = biased2x2_to_fock(a, b, self.tolerance('bisection_xtol'))

        self.output.update({
            'rho': gauge['rho'],
            'kprime': gauge['kprime'],
            'tau_im': getattr(gauge['curve'], 'tau_im', None),
            't': gauge['t'],
            'angles': list(gauge['angles'])
        })

        if a == 1.0:
            self.check('rho_quarter', abs(gauge['rho'] - 0.25),
                       BIASED_TOLERANCE, 'Kasteleyn/Gauge.py')
            self.check('b_sqrt_kprime', abs(b - sqrt(gauge['kprime'])),
                       BIASED_TOLERANCE, 'Kasteleyn/Gauge.py')

        self.compare(build_matrix(m), biased2x2_weights(m.graph, a, b))

    def run(self) -> None:
        model = self.config.section('model') or {}

        if 'stanley' in model:
            self.output['gauge'] = 'stanley'
            self.stanley(model['stanley'])
        elif 'biased' in model:
            self.output['gauge'] = 'biased'
            self.biased(model['biased'])
        else:
            raise ConfigError('gauge needs a stanley or biased model')
