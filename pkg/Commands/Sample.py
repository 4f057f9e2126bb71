from argparse import ArgumentParser

from Interfaces.CommandInterface import CommandInterface
from Inverse.Inverse import kinv_batch
from Measures.Enumeration import is_perfect_matching
from Measures.Marginals import marginal_table
from Measures.Sampler import render_tiling, sample_many
from Utils.Output import write_jsonl


class Sample(CommandInterface):
    name = 'sample'
    help = 'Draw perfect matchings from the Boltzmann measure'

    @staticmethod
    def add_arguments(parser: ArgumentParser) -> None:
        parser.add_argument('--seed', type=int,
                            help='Root seed, run.seed of the config by '
                                 'default')
        parser.add_argument('--count', type=int, default=1)
        parser.add_argument('--out', default='samples.jsonl')
        parser.add_argument('--render', metavar='SVG',
                            help='Draw the first sample as dominoes')

    def run(self) -> None:
        m = self.model()
        seed = self.arguments.seed
        if seed is None:
            seed = self.config.section('run').get('seed') or 0
        count = self.arguments.count

        inverse = kinv_batch(m, 'direct')
        matchings = sample_many(m, seed, count, self.workers(), inverse,
                                self.tolerance('probability_clamp'),
                                self.tolerance('identity'))

        perfect = all(is_perfect_matching(m.graph, x) for x in matchings)
        self.check('perfect_matchings', 0.0 if perfect else 1.0, 0.0,
                   'Measures/Sampler.py')

        lines = [
            [[list(e.white.point), list(e.black.point)]
             for e in sorted(matching, key=lambda e: e.white.sort_key)]
            for matching in matchings
        ]
        path = write_jsonl(self.path(self.arguments.out), lines)
        self.output.setdefault('files', []).append(str(path))

        # empirical frequencies next to the exact marginals
        exact = marginal_table(m, inverse)
        counts = {key: 0 for key in exact}
        for matching in matchings:
            for edge in matching:
                counts[edge.key] += 1

        self.tables['frequencies'] = (
            ['w_x', 'w_y', 'b_x', 'b_y', 'frequency', 'probability'],
            [[w[0], w[1], b[0], b[1], counts[(w, b)] / max(count, 1),
              exact[(w, b)]] for w, b in sorted(exact)]
        )

        self.output.update({
            'seed': seed,
            'count': count,
            'max_frequency_deviation': max(
                abs(counts[k] / max(count, 1) - p) for k, p in exact.items()
            ) if count else None
        })

        if self.arguments.render and matchings:
            svg = render_tiling(matchings[0], str(self.path(
                self.arguments.render
            )))
            self.output['files'].append(svg)

        self.log('Samples', 'Boltzmann sampling', 'sequential conditioning',
                 '{} matchings, seed {}'.format(count, seed),
                 'Measures/Sampler.py')
