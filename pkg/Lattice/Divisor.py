from typing import Callable, Dict, Iterable, NamedTuple

FAMILIES = ('A', 'B', 'C', 'D')

FAMILY_NAMES = {
    'A': 'alpha',
    'B': 'beta',
    'C': 'gamma',
    'D': 'delta'
}

ORIENTATIONS = {
    'A': 'left-to-right',
    'B': 'right-to-left',
    'C': 'bottom-to-top',
    'D': 'top-to-bottom'
}


class TrainTrack(NamedTuple):
    family: str
    index: int

    @property
    def orientation(self) -> str:
        return ORIENTATIONS[self.family]

    @property
    def horizontal(self) -> bool:
        return self.family in ('A', 'B')

    def __str__(self) -> str:
        return track_name(self)


Track = TrainTrack


def track_name(track: Track) -> str:
    """
    Human readable name of a train-track, e.g. ``alpha_3``

    :param track: (family, index)

    :return: Name
    """
    return '{}_{}'.format(FAMILY_NAMES[track[0]], track[1])


class FormalDivisor:
    """
    Integer combination of train-track angles plus a multiple of the base
    value d of the discrete Abel map. Instances are immutable; arithmetic
    returns new divisors.
    """

    __slots__ = ('_coefficients', '_base')

    def __init__(self, coefficients: Dict[Track, int] = None,
                 base: int = 0) -> None:
        self._coefficients = {
            track: int(value)
            for track, value in (coefficients or {}).items()
            if value != 0
        }
        self._base = int(base)

    @classmethod
    def from_tracks(cls, plus: Iterable[Track] = (),
                    minus: Iterable[Track] = (), base: int = 0) \
            -> 'FormalDivisor':
        """
        Build a divisor from lists of tracks with coefficient +1 and -1

        :param plus: Tracks counted positively
        :param minus: Tracks counted negatively
        :param base: Coefficient of the base marker d

        :return: Divisor
        """
        coefficients = {}

        for track in plus:
            coefficients[track] = coefficients.get(track, 0) + 1
        for track in minus:
            coefficients[track] = coefficients.get(track, 0) - 1

        return cls(coefficients, base)

    @property
    def coefficients(self) -> Dict[Track, int]:
        return dict(self._coefficients)

    @property
    def base(self) -> int:
        return self._base

    @property
    def degree(self) -> int:
        return sum(self._coefficients.values())

    def coefficient(self, track: Track) -> int:
        return self._coefficients.get(track, 0)

    def evaluate(self, angle_of: Callable[[Track], float],
                 d_value: float) -> float:
        """
        Real value of the divisor once angles and d are substituted

        :param angle_of: Angle lookup per track
        :param d_value: Value of the base marker

        :return: Signed sum, not reduced
        """
        total = self._base * d_value

        for track in sorted(self._coefficients):
            total += self._coefficients[track] * angle_of(track)

        return total

    def __add__(self, other: 'FormalDivisor') -> 'FormalDivisor':
        coefficients = dict(self._coefficients)

        for track, value in other._coefficients.items():
            coefficients[track] = coefficients.get(track, 0) + value

        return FormalDivisor(coefficients, self._base + other._base)

    def __neg__(self) -> 'FormalDivisor':
        return FormalDivisor(
            {track: -value for track, value in self._coefficients.items()},
            -self._base
        )

    def __sub__(self, other: 'FormalDivisor') -> 'FormalDivisor':
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalDivisor):
            return NotImplemented
        return self._coefficients == other._coefficients and \
            self._base == other._base

    def __hash__(self) -> int:
        return hash((frozenset(self._coefficients.items()), self._base))

    def __repr__(self) -> str:
        parts = ['{:+d}*{}'.format(value, track_name(track))
                 for track, value in sorted(self._coefficients.items())]
        if self._base:
            parts.append('{:+d}*d'.format(self._base))
        return 'FormalDivisor({})'.format(' '.join(parts) or '0')

    def to_json(self) -> Dict[str, int]:
        """
        JSON friendly rendering used by the graph dump

        :return: Mapping from track names (and ``d``) to coefficients
        """
        result = {track_name(track): value
                  for track, value in sorted(self._coefficients.items())}
        if self._base:
            result['d'] = self._base
        return result
