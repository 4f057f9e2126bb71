from argparse import ArgumentParser

from Interfaces.CommandInterface import CommandInterface
from Kasteleyn.Matrix import build_matrix, face_weights, \
    kasteleyn_condition_check
from Lattice.Divisor import track_name

HEADERS = ['w_x', 'w_y', 'b_x', 'b_y', 'left', 'right', 're', 'im', 'abs']


class Weights(CommandInterface):
    name = 'weights'
    help = 'Write the Kasteleyn entry of every edge'

    @staticmethod
    def add_arguments(parser: ArgumentParser) -> None:
        parser.add_argument('--out', default='weights.csv',
                            help='Edge weights CSV')
        parser.add_argument('--faces', metavar='FILE',
                            help='Also write the inner face weights')

    def run(self) -> None:
        m = self.model()
        K = build_matrix(m)

        rows = []
        for edge in m.graph.edges:
            value = K.weight(edge)
            rows.append([edge.white.x, edge.white.y, edge.black.x,
                         edge.black.y, track_name(edge.left),
                         track_name(edge.right), value.real, value.imag,
                         abs(value)])

        self.table('weights', HEADERS, rows, self.arguments.out)
        self.output['edges'] = len(rows)

        _, defect = kasteleyn_condition_check(K, self.tolerance('identity'))
        self.check('kasteleyn_condition', defect, self.tolerance('identity'),
                   'Kasteleyn/Matrix.py')

        if self.arguments.faces:
            faces = face_weights(K.weights(), m.graph)
            self.table('faces', ['x', 'y', 'weight'],
                       [[x, y, value] for (x, y), value in
                        sorted(faces.items(), key=lambda i: i[0][::-1])],
                       self.arguments.faces)
            self.output['faces'] = len(faces)
