from argparse import ArgumentParser
from collections import Counter

from Interfaces.CommandInterface import CommandInterface
from Inverse.Extended import ExtendedInverse, block_of, window_identity
from Lattice.Extended import QUADRANTS, build_extended
from Measures.Marginals import extended_measure_check
from Utils.Errors import UnsupportedBlockError, VerificationError
from Utils.Output import write_json


class ExtendedCheck(CommandInterface):
    name = 'extended-check'
    help = 'Inverse of the infinite extension on a finite window'

    @staticmethod
    def add_arguments(parser: ArgumentParser) -> None:
        parser.add_argument('--depth', type=int, default=2,
                            help='Hexagon layers per quadrant')
        parser.add_argument('--dump-window', metavar='FILE',
                            help='Write the window graph as JSON')

    def run(self) -> None:
        m = self.model()
        tolerance = self.tolerance('identity')

        ext = build_extended(m.n, self.arguments.depth,
                             self.limit('extended_depth_cap'))
        inverse = ExtendedInverse(m, ext, self.tolerance('quadrature_rel'),
                                  self.limit('quadrature_max_nodes'))

        blocks = Counter()
        for b in ext.blacks:
            for w in ext.whites:
                try:
                    blocks[block_of(ext, b, w)] += 1
                except UnsupportedBlockError:
                    blocks['unsupported'] += 1

        self.output.update({
            'depth': ext.depth,
            'vertices': len(ext.region),
            'edges': len(ext.edges),
            'icy_edges': len(ext.icy_edges()),
            'blocks': dict(blocks)
        })

        identity = window_identity(m, ext, inverse, tolerance)
        self.output['identity'] = {k: v for k, v in identity.items()
                                   if k != 'skipped_pairs'}
        self.check('window_identity', identity['defect'], tolerance,
                   'Inverse/Extended.py')

        icy = max((abs(inverse.weight(e) * inverse.entry(e.black, e.white) -
                       1.0) for e in ext.icy_edges()), default=0.0)
        self.check('icy_edges', icy, tolerance, 'Inverse/Extended.py')

        # one diamond edge and one icy edge per quadrant
        edges = [m.graph.edges[0]]
        for quadrant in QUADRANTS:
            edges.extend([e for e in ext.icy_edges()
                          if ext.region[e.white] == quadrant][:1])

        try:
            left, right = extended_measure_check(m, ext, edges, inverse,
                                                 tolerance)
            defect = abs(left - right)
        except VerificationError as error:
            left, right = None, None
            defect = error.defect if error.defect is not None else \
                float('inf')
        self.output['measure'] = {'edges': len(edges), 'window': left,
                                  'diamond': right}
        self.check('window_measure', defect, tolerance,
                   'Measures/Marginals.py')

        if self.arguments.dump_window:
            path = write_json(self.path(self.arguments.dump_window),
                              ext.to_json())
            self.output.setdefault('files', []).append(str(path))

        self.log('Extended window', 'Extended inverse',
                 'formula and propagation',
                 '{} pairs checked, {} skipped'.format(identity['checked'],
                                                       identity['skipped']),
                 'Inverse/Extended.py')
