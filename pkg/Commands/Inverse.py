from argparse import ArgumentParser
from typing import List, Tuple

from Interfaces.CommandInterface import CommandInterface
from Inverse.Inverse import METHODS, InverseEntry, deformed_entry, \
    identity_defect, inverse_entry, kinv_batch, kinv_direct
from Kasteleyn.Matrix import build_matrix
from Lattice.Aztec import VertexId
from Utils.Errors import ConfigError
from Utils.Output import read_csv

HEADERS = ['b_x', 'b_y', 'w_x', 'w_y', 're', 'im', 'method', 'err_estimate']


class Inverse(CommandInterface):
    name = 'inverse'
    help = 'Entries of the inverse Kasteleyn matrix'

    @staticmethod
    def add_arguments(parser: ArgumentParser) -> None:
        parser.add_argument('--pairs', metavar='FILE',
                            help='CSV with b_x,b_y,w_x,w_y; every pair by '
                                 'default')
        parser.add_argument('--method', choices=METHODS, default='residue')
        parser.add_argument('--out', default='entries.csv')
        parser.add_argument('--deformed', action='store_true',
                            help='Compare with the deformed contour formula '
                                 '(genus 0)')

    def pairs(self) -> List[Tuple[VertexId, VertexId]]:
        graph = self.model().graph
        result = []

        for row in read_csv(self.path(self.arguments.pairs),
                            ['b_x', 'b_y', 'w_x', 'w_y']):
            try:
                b = graph.black(int(row['b_x']), int(row['b_y']))
                w = graph.white(int(row['w_x']), int(row['w_y']))
            except ValueError as error:
                raise ConfigError('Bad pair {}: {}'.format(
                    dict(row), error
                )) from error
            result.append((b, w))

        return result

    def run(self) -> None:
        m = self.model()
        method = self.arguments.method
        tolerance = self.tolerance('quadrature_rel')
        max_nodes = self.limit('quadrature_max_nodes')

        K = build_matrix(m)
        direct, residual = kinv_direct(K)
        graph = m.graph

        if self.arguments.pairs:
            entries = [inverse_entry(m, b, w, method, tolerance, max_nodes)
                       for b, w in self.pairs()]
        else:
            values = kinv_batch(m, method, self.workers(), tolerance,
                                max_nodes)
            self.check('identity', identity_defect(K, values),
                       self.tolerance('identity'), 'Inverse/Inverse.py')
            estimate = residual if method == 'direct' else 0.0
            entries = [
                InverseEntry(b, w, complex(values[i, j]), method, estimate)
                for i, b in enumerate(graph.blacks)
                for j, w in enumerate(graph.whites)
            ]

        rows = []
        worst = 0.0
        for entry in entries:
            reference = direct[graph.black_index[entry.b],
                               graph.white_index[entry.w]]
            worst = max(worst, abs(entry.value - reference))
            rows.append([entry.b.x, entry.b.y, entry.w.x, entry.w.y,
                         entry.value.real, entry.value.imag, entry.method,
                         entry.estimate])

        self.table('entries', HEADERS, rows, self.arguments.out)
        self.output.update({'entries': len(rows), 'method': method,
                            'direct_residual': residual})
        self.check('entries_vs_direct', worst, self.tolerance('identity'),
                   'Inverse/Inverse.py')

        if self.arguments.deformed:
            defect = max(
                (abs(deformed_entry(m, e.b, e.w) - e.value) for e in entries),
                default=0.0
            )
            self.check('deformed_contours', defect,
                       self.tolerance('identity'), 'Inverse/Inverse.py')

        self.log('Inverse', 'Inverse Kasteleyn entries', method,
                 '{} entries, max deviation {:.3e}'.format(len(rows), worst),
                 'Inverse/Inverse.py')
