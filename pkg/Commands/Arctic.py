from argparse import ArgumentParser

from Interfaces.CommandInterface import CommandInterface
from LimitShape.Action import A0, COMPONENTS, Action
from LimitShape.Arctic import DEFAULT_SAMPLES, action_cross_ratio, \
    arctic_curve, ellipse_residual, tangency_clusters, tangency_points
from Utils.SvgWriter import SvgWriter

HEADERS = ['component', 's', 'x', 'y']

ELLIPSE_TOLERANCE = 1e-10


class Arctic(CommandInterface):
    name = 'arctic'
    help = 'Sample the frozen boundary (a0) or the gas bubble boundary (a1)'

    @staticmethod
    def add_arguments(parser: ArgumentParser) -> None:
        parser.add_argument('--component', choices=COMPONENTS, default=A0)
        parser.add_argument('--samples', type=int, default=DEFAULT_SAMPLES)
        parser.add_argument('--out', default='curve.csv')
        parser.add_argument('--svg', metavar='FILE')

    def run(self) -> None:
        m = self.model()
        action = Action.from_model(m)
        component = self.arguments.component

        curve = arctic_curve(action, component, self.arguments.samples)
        self.table('curve', HEADERS, curve.to_rows(), self.arguments.out)
        self.output.update({
            'component': component,
            'samples': self.arguments.samples,
            'points': len(curve.samples),
            'skipped': curve.skipped
        })
        self.log('Arctic curve', 'Limit shape', 'G = dG/ds = 0 per sample',
                 '{} points on {}'.format(len(curve.samples), component),
                 'LimitShape/Arctic.py')

        if not curve.samples:
            self.logger.warning('No arctic curve point inside the square')
            self.passed = False

        if component == A0:
            contacts = tangency_points(action)
            self.output['tangency'] = contacts
            self.output['tangency_clusters'] = tangency_clusters(contacts)

        if m.curve.genus == 0 and action.k == 1 and action.l == 1:
            r = action_cross_ratio(action)
            worst = max((abs(ellipse_residual(r, x, y))
                         for x, y in curve.points), default=0.0)
            self.output['cross_ratio'] = r
            self.check('ellipse', worst, ELLIPSE_TOLERANCE,
                       'LimitShape/Arctic.py')

        if self.arguments.svg:
            writer = SvgWriter(str(self.path(self.arguments.svg)),
                               'Arctic curve ({})'.format(component))
            writer.frame()
            writer.curve(curve.points, label=component)
            self.output.setdefault('files', []).append(writer.save())
