from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from Curve.Curve import Curve, CurveLike
from Lattice.Aztec import AztecGraph, Edge, build_aztec
from Lattice.Divisor import FAMILIES, FAMILY_NAMES, FormalDivisor, \
    TrainTrack, track_name
from Utils.Errors import ConfigError, ModelError, SingularityError
from Utils.Logging.Logging import Logging

#: cyclic order of the families along the real component A0
CYCLIC_ORDER = ('A', 'C', 'B', 'D')

MODEL_KEYS = {'n', 'curve', 't', 'd', 'angles'}
ANGLE_KEYS = {'alpha', 'beta', 'gamma', 'delta'}


@dataclass(frozen=True)
class AngleAssignment:
    alpha: Tuple[float, ...]
    beta: Tuple[float, ...]
    gamma: Tuple[float, ...]
    delta: Tuple[float, ...]

    @classmethod
    def from_lists(cls, alpha: Sequence[float], beta: Sequence[float],
                   gamma: Sequence[float], delta: Sequence[float]) \
            -> 'AngleAssignment':
        return cls(tuple(float(a) for a in alpha),
                   tuple(float(b) for b in beta),
                   tuple(float(c) for c in gamma),
                   tuple(float(d) for d in delta))

    @classmethod
    def homogeneous(cls, n: int, alpha: float, beta: float, gamma: float,
                    delta: float) -> 'AngleAssignment':
        return cls((alpha,) * n, (beta,) * n, (gamma,) * n, (delta,) * n)

    @property
    def n(self) -> int:
        return len(self.alpha)

    def family(self, name: str) -> Tuple[float, ...]:
        return {
            'A': self.alpha,
            'B': self.beta,
            'C': self.gamma,
            'D': self.delta
        }[name]

    def items(self) -> List[Tuple[TrainTrack, float]]:
        return [(TrainTrack(family, j + 1), value)
                for family in FAMILIES
                for j, value in enumerate(self.family(family))]

    def is_homogeneous(self, tolerance: float = 1e-15) -> bool:
        return all(np.ptp(self.family(family)) <= tolerance
                   for family in FAMILIES)

    def to_json(self) -> Dict[str, List[float]]:
        return {
            'alpha': list(self.alpha),
            'beta': list(self.beta),
            'gamma': list(self.gamma),
            'delta': list(self.delta)
        }


def cyclic_lift(angles: AngleAssignment, period: float) -> Dict[str, float]:
    """
    Check the cyclic order alpha < gamma < beta < delta on A0 and return the
    start of the alpha arc, from which every angle is lifted into one
    window of length ``period``

    :param angles: Angle assignment
    :param period: Length of A0

    :return: {'start': lift origin}
    """
    if len({len(angles.family(f)) for f in FAMILIES}) != 1:
        raise ModelError('All four angle families need n entries')
    if angles.n == 0:
        raise ModelError('Angle families are empty')

    points = sorted(((value % period, track.family)
                     for track, value in angles.items()))

    for (a, fa), (b, fb) in zip(points, points[1:] + points[:1]):
        if fa != fb and abs(a - b) % period == 0.0:
            raise ModelError('{} and {} share the angle {}'.format(
                FAMILY_NAMES[fa], FAMILY_NAMES[fb], a
            ))

    starts = [i for i in range(len(points))
              if points[i][1] != points[i - 1][1]]
    blocks = [points[i][1] for i in starts]

    if len(blocks) != 4:
        raise ModelError('Angle families interleave on A0')

    first = blocks.index('A')
    if tuple(blocks[first:] + blocks[:first]) != CYCLIC_ORDER:
        raise ModelError('Cyclic order alpha < gamma < beta < delta violated')

    return {'start': points[starts[first]][0]}


class FockModel:
    """
    Dimer model on the Aztec diamond with Fock's weights: a graph, a curve,
    the train-track angles, and the real parameters t and d. Angles are
    stored lifted into the window starting at the alpha arc, where the
    families appear in the order alpha, gamma, beta, delta.
    """

    def __init__(self, graph: AztecGraph, curve: CurveLike,
                 angles: AngleAssignment, t: float = 0.0, d: float = 0.0,
                 extended: Optional[Dict[str, float]] = None) -> None:
        self.logger = Logging(self.__class__.__name__).logger

        if angles.n != graph.n:
            raise ModelError('Expected {} angles per family, got {}'.format(
                graph.n, angles.n
            ))

        self.graph = graph
        self.curve = curve
        self.n = graph.n
        self.t = float(t) if curve.genus == 1 else 0.0
        self.d = float(d)

        self.start = cyclic_lift(angles, curve.period)['start']
        self.angles = AngleAssignment.from_lists(
            *(tuple(self.lift(v) for v in angles.family(family))
              for family in ('A', 'B', 'C', 'D'))
        )
        self.raw_angles = angles

        self.extended = {}
        for name, value in (extended or {}).items():
            self.extended[parse_track(name)] = self.lift(float(value))

        if curve.genus == 1 and not 0.0 <= self.t < 1.0:
            raise ModelError('t must lie in [0, 1), got {}'.format(t))

        self._check_faces()

    def lift(self, value: float) -> float:
        return self.start + (value - self.start) % self.curve.period

    def angle(self, track: TrainTrack) -> float:
        """
        Angle of a train-track; indices outside 1..n replicate the nearest
        in-range angle unless an override was configured

        :param track: Track

        :return: Lifted angle
        """
        family, index = track
        if (family, index) in self.extended:
            return self.extended[(family, index)]

        values = self.angles.family(family)
        return values[min(max(index, 1), self.n) - 1]

    def point(self, track: TrainTrack) -> complex:
        return self.curve.point(self.angle(track))

    def aj(self, divisor: FormalDivisor) -> float:
        return self.curve.abel_jacobi(divisor, self.angle, self.d)

    def divisor_value(self, divisor: FormalDivisor) -> float:
        """
        Unreduced real value of a divisor, used where the lift matters

        :param divisor: Divisor

        :return: Signed sum
        """
        return divisor.evaluate(self.angle, self.d)

    def face_theta(self, divisor: FormalDivisor) -> complex:
        return self.curve.theta(self.t + self.aj(divisor))

    def edge_weight(self, white_divisor: FormalDivisor, left: TrainTrack,
                    right: TrainTrack) -> complex:
        """
        Kasteleyn entry of an edge from the divisor of its white end and
        its two crossing tracks

        :param white_divisor: D(w)
        :param left: T_left
        :param right: T_right

        :return: E(T_right, T_left) / (theta(t + D(f)) theta(t + D(f')))
        """
        left_face = white_divisor + FormalDivisor({left: 1})
        right_face = white_divisor + FormalDivisor({right: 1})

        denominator = self.face_theta(left_face) * \
            self.face_theta(right_face)
        if abs(denominator) == 0.0:
            raise SingularityError('Theta vanishes on a face')

        return self.curve.prime_form(self.point(right), self.point(left)) / \
            denominator

    def fock_weight(self, edge: Edge) -> complex:
        return self.edge_weight(self.graph.divisor(edge.white), edge.left,
                                edge.right)

    def is_homogeneous(self) -> bool:
        return self.angles.is_homogeneous()

    def _check_faces(self) -> None:
        if self.curve.genus == 0:
            return

        values = [abs(self.face_theta(self.graph.divisor(face)))
                  for face in self.graph.faces.values()]
        if min(values) < 1e-300:
            raise ModelError('theta(t + D(f)) vanishes on a face')

    def with_graph(self, graph: AztecGraph, angles: AngleAssignment,
                   d: float) -> 'FockModel':
        """
        Same curve and t on another graph, used by the recurrence

        :param graph: Smaller diamond
        :param angles: Its angles
        :param d: Its base value

        :return: Model
        """
        extended = {track_name(t): v for t, v in self.extended.items()}
        return FockModel(graph, self.curve, angles, self.t, d, extended)

    def to_json(self) -> Dict[str, Any]:
        return {
            'n': self.n,
            'curve': self.curve.to_json(),
            't': self.t,
            'd': self.d,
            'angles': self.raw_angles.to_json()
        }

    @staticmethod
    def from_config(config: Dict[str, Any], terms_cap: int = 64,
                    extended: Optional[Dict[str, float]] = None) \
            -> 'FockModel':
        """
        Build a model from its JSON description

        :param config: {"n", "curve", "t", "d", "angles"}
        :param terms_cap: Theta series cap
        :param extended: Angle overrides for tracks outside 1..n

        :return: Model
        """
        if not isinstance(config, dict):
            raise ConfigError('model must be an object')

        unknown = set(config) - MODEL_KEYS
        if unknown:
            raise ConfigError('Unknown model keys: {}'.format(
                ', '.join(sorted(unknown))
            ))

        missing = {'n', 'curve', 'angles'} - set(config)
        if missing:
            raise ConfigError('Missing model keys: {}'.format(
                ', '.join(sorted(missing))
            ))

        n = config['n']
        if not isinstance(n, int) or isinstance(n, bool):
            raise ConfigError('n must be an integer')

        angles = config['angles']
        if not isinstance(angles, dict) or set(angles) != ANGLE_KEYS:
            raise ConfigError('angles needs exactly alpha, beta, gamma, delta')

        for key, values in angles.items():
            if not isinstance(values, list) or \
                    not all(isinstance(v, (int, float)) for v in values):
                raise ConfigError('{} must be a list of numbers'.format(key))

        for key in ('t', 'd'):
            if not isinstance(config.get(key, 0.0), (int, float)):
                raise ConfigError('{} must be a number'.format(key))

        return FockModel(
            build_aztec(n),
            Curve.from_config(config['curve'], terms_cap),
            AngleAssignment.from_lists(angles['alpha'], angles['beta'],
                                       angles['gamma'], angles['delta']),
            config.get('t', 0.0),
            config.get('d', 0.0),
            extended
        )


def parse_track(name: str) -> TrainTrack:
    """
    Parse ``alpha_3``, ``delta_-1`` or the short ``A3`` form

    :param name: Track name

    :return: Track
    """
    lookup = {v: k for k, v in FAMILY_NAMES.items()}

    try:
        if '_' in name:
            family, index = name.split('_', 1)
            return TrainTrack(lookup[family], int(index))
        if name[0] not in FAMILIES:
            raise KeyError(name[0])
        return TrainTrack(name[0], int(name[1:]))
    except (KeyError, ValueError, IndexError) as error:
        raise ConfigError('Unknown train-track {!r}'.format(name)) from error
