from argparse import ArgumentParser

from Interfaces.CommandInterface import CommandInterface
from Kasteleyn.Matrix import build_matrix, partition_det
from Kasteleyn.Partition import genus0_closed_form, partition_product
from Measures.Enumeration import enumeration_marginals

RELATIVE_TOLERANCE = 1e-8


class Partition(CommandInterface):
    name = 'partition'
    help = 'Partition function by determinant, recurrence and closed forms'

    @staticmethod
    def add_arguments(parser: ArgumentParser) -> None:
        parser.add_argument('--enumerate', action='store_true',
                            help='Also sum over all matchings (small n)')

    def run(self) -> None:
        m = self.model()

        det = partition_det(build_matrix(m))
        product = partition_product(m)
        rel_err = abs(det - product) / max(abs(det), 1e-300)

        self.output.update({'det': det, 'product': product,
                            'rel_err': rel_err})
        self.check('det_vs_product', rel_err, RELATIVE_TOLERANCE,
                   'Kasteleyn/Partition.py')

        if m.curve.genus == 0:
            closed = genus0_closed_form(m.raw_angles)
            self.output['closed_form'] = closed
            self.check('det_vs_closed_form',
                       abs(det - closed) / max(closed, 1e-300),
                       RELATIVE_TOLERANCE, 'Kasteleyn/Partition.py')

        if self.arguments.enumerate:
            total = enumeration_marginals(
                m, self.limit('enumeration_n_cap')
            )['partition']
            self.output['enumeration'] = total
            self.check('det_vs_enumeration',
                       abs(det - total) / max(total, 1e-300),
                       RELATIVE_TOLERANCE, 'Measures/Enumeration.py')
