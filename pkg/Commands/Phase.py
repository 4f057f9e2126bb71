from argparse import ArgumentParser, ArgumentTypeError
from collections import Counter
from typing import Tuple

from Interfaces.CommandInterface import CommandInterface
from LimitShape.Action import Action
from LimitShape.Arctic import BOUNDARY, FROZEN, GAS, LIQUID, UNRESOLVED, \
    phase_grid, phase_of
from LimitShape.Critical import critical_set
from LimitShape.Probe import finite_n_convergence_probe
from Utils.SvgWriter import SvgWriter

HEADERS = ['x', 'y', 'phase', 'component']

PROBE_HEADERS = ['x', 'y', 'n', 'i', 'j', 'marginal', 'phase', 'component',
                 'consistent']

COLOURS = {
    LIQUID: '#fdd49e',
    FROZEN: '#6baed6',
    GAS: '#74c476',
    BOUNDARY: '#000000',
    UNRESOLVED: '#ff00ff'
}


def point(text: str) -> Tuple[float, float]:
    try:
        x, y = (float(v) for v in text.split(','))
    except ValueError:
        raise ArgumentTypeError('expected X,Y, got {!r}'.format(text))
    return x, y


class Phase(CommandInterface):
    name = 'phase'
    help = 'Classify points of the square into liquid, frozen and gas'

    @staticmethod
    def add_arguments(parser: ArgumentParser) -> None:
        parser.add_argument('--grid', type=int, default=200)
        parser.add_argument('--out', default='phases.csv')
        parser.add_argument('--svg', metavar='FILE',
                            help='Phase coloured grid')
        parser.add_argument('--point', type=point, action='append',
                            default=[], metavar='X,Y',
                            help='Report the critical points at X,Y')
        parser.add_argument('--probe', type=point, action='append',
                            default=[], metavar='X,Y',
                            help='Exact edge probability of the model at '
                                 'X,Y next to the predicted phase')

    def run(self) -> None:
        m = self.model()
        action = Action.from_model(m)
        grid = self.arguments.grid

        phases = phase_grid(action, grid, self.workers())
        self.table('phases', HEADERS, [p.to_row() for p in phases],
                   self.arguments.out)

        counts = Counter(p.phase for p in phases)
        self.output.update({'grid': grid, 'counts': dict(counts)})
        self.log('Phase grid', 'Limit shape', 'critical point count',
                 ', '.join('{} {}'.format(v, k) for k, v in
                           sorted(counts.items())), 'LimitShape/Arctic.py')

        if counts[UNRESOLVED]:
            self.passed = False

        points = []
        for x, y in self.arguments.point:
            critical = critical_set(action, x, y)
            phase = phase_of(action, critical)
            points.append({'phase': phase.phase,
                           'component': phase.component,
                           'critical': critical.to_json()})
        if points:
            self.output['points'] = points

        if self.arguments.probe:
            rows = finite_n_convergence_probe(m, self.arguments.probe, action,
                                              self.limit('probe_n_cap'))
            self.table('probe', PROBE_HEADERS,
                       [[row[k] for k in PROBE_HEADERS] for row in rows])
            self.output['probe'] = rows
            if any(row['consistent'] is False for row in rows):
                self.logger.warning('Probe disagrees with the frozen phase')
                self.passed = False

        if self.arguments.svg:
            half = 0.5 / grid
            writer = SvgWriter(str(self.path(self.arguments.svg)),
                               'Phases')
            writer.polygons([
                ([(p.x - half, p.y - half), (p.x + half, p.y - half),
                  (p.x + half, p.y + half), (p.x - half, p.y + half)],
                 COLOURS[p.phase]) for p in phases
            ], outline=False)
            writer.frame()
            self.output.setdefault('files', []).append(writer.save())
