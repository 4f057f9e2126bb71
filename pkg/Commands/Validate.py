from argparse import ArgumentParser

from Interfaces.CommandInterface import CommandInterface
from Kasteleyn.Gauge import edge_periodicity_check
from Kasteleyn.Matrix import build_matrix, kasteleyn_condition_check
from Utils.Output import write_json


class Validate(CommandInterface):
    name = 'validate'
    help = 'Check the model: cyclic order, faces and the Kasteleyn condition'

    @staticmethod
    def add_arguments(parser: ArgumentParser) -> None:
        parser.add_argument('--dump-graph', metavar='FILE',
                            help='Write vertices, edges, tracks and faces '
                                 'as JSON')

    def run(self) -> None:
        m = self.model()
        graph = m.graph

        K = build_matrix(m)
        _, defect = kasteleyn_condition_check(K, self.tolerance('identity'))
        self.check('kasteleyn_condition', defect, self.tolerance('identity'),
                   'Kasteleyn/Matrix.py')

        self.output.update({
            'n': m.n,
            'genus': m.curve.genus,
            'homogeneous': m.is_homogeneous(),
            'whites': len(graph.whites),
            'blacks': len(graph.blacks),
            'edges': len(graph.edges),
            'faces': {kind: len(faces)
                      for kind, faces in graph.face_classes().items()},
            'model': m.to_json()
        })

        if m.curve.genus == 1 and m.is_homogeneous():
            periodic, worst = edge_periodicity_check(m.raw_angles)
            self.output['two_periodic'] = {'periodic': periodic,
                                           'defect': worst}

        if self.arguments.dump_graph:
            path = write_json(self.path(self.arguments.dump_graph),
                              graph.to_json())
            self.output.setdefault('files', []).append(str(path))
            self.log('Graph', 'Debug dump', 'AztecGraph.to_json', str(path),
                     'Lattice/Aztec.py')
