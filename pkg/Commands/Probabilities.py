from argparse import ArgumentParser
from typing import List

from Interfaces.CommandInterface import CommandInterface
from Inverse.Inverse import kinv_batch
from Lattice.Aztec import Edge
from Measures.Enumeration import enumeration_marginals
from Measures.Marginals import marginal
from Utils.Errors import ConfigError
from Utils.Output import read_csv

HEADERS = ['w_x', 'w_y', 'b_x', 'b_y', 'probability']
COLUMNS = ['w_x', 'w_y', 'b_x', 'b_y']


class Probabilities(CommandInterface):
    name = 'probabilities'
    help = 'Edge probabilities of the Boltzmann measure'

    @staticmethod
    def add_arguments(parser: ArgumentParser) -> None:
        parser.add_argument('--edges', metavar='FILE',
                            help='CSV with w_x,w_y,b_x,b_y; every edge by '
                                 'default')
        parser.add_argument('--out', default='probs.csv')
        parser.add_argument('--joint', action='store_true',
                            help='Also report the probability that all '
                                 'listed edges are present together')

    def edges(self) -> List[Edge]:
        graph = self.model().graph
        if not self.arguments.edges:
            return list(graph.edges)

        result = []
        for row in read_csv(self.path(self.arguments.edges), COLUMNS):
            try:
                x, y, u, v = (int(row[c]) for c in COLUMNS)
            except ValueError as error:
                raise ConfigError('Bad edge {}'.format(dict(row))) from error
            result.append(graph.edge(graph.white(x, y), graph.black(u, v)))

        return result

    def run(self) -> None:
        m = self.model()
        clamp = self.tolerance('probability_clamp')
        inverse = kinv_batch(m, 'direct')
        edges = self.edges()

        probabilities = [marginal(m, [edge], inverse, clamp)
                         for edge in edges]
        rows = [[e.white.x, e.white.y, e.black.x, e.black.y, p]
                for e, p in zip(edges, probabilities)]
        self.table('probabilities', HEADERS, rows, self.arguments.out)
        self.output['edges'] = len(rows)

        if self.arguments.joint:
            self.output['joint'] = marginal(m, edges, inverse, clamp)

        # every white is matched exactly once
        defect = 0.0
        for white in m.graph.whites:
            total = sum(marginal(m, [e], inverse, clamp)
                        for e in m.graph.adjacency[white])
            defect = max(defect, abs(total - 1.0))
        self.check('white_sums', defect, self.tolerance('identity'),
                   'Measures/Marginals.py')

        if m.n <= self.limit('enumeration_n_cap'):
            exact = enumeration_marginals(m, self.limit('enumeration_n_cap'))
            worst = max(abs(exact['edges'][e.key] - p)
                        for e, p in zip(edges, probabilities))
            self.output['enumeration_deviation'] = worst
            self.check('marginals_vs_enumeration', worst,
                       self.tolerance('identity'), 'Measures/Enumeration.py')
