from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from Lattice.Divisor import FormalDivisor, TrainTrack, track_name
from Utils.Errors import ConfigError, ModelError

WHITE = 'white'
BLACK = 'black'

ODD = 'odd'
INTERIOR_EVEN = 'interior-even'
BOUNDARY = 'boundary'
CORNER = 'corner'

Point = Tuple[int, int]


@dataclass(frozen=True)
class VertexId:
    color: str
    x: int
    y: int

    @property
    def point(self) -> Point:
        return self.x, self.y

    @property
    def sort_key(self) -> Tuple[int, int, str]:
        return self.y, self.x, self.color

    def __str__(self) -> str:
        return '{}({},{})'.format(self.color[0], self.x, self.y)


@dataclass(frozen=True)
class FaceId:
    x: int
    y: int
    kind: str

    @property
    def point(self) -> Point:
        return self.x, self.y

    @property
    def is_boundary(self) -> bool:
        return self.kind in (BOUNDARY, CORNER)

    @property
    def is_inner(self) -> bool:
        return not self.is_boundary


@dataclass(frozen=True)
class Edge:
    """
    White-black edge with the two train-tracks crossing it. ``left`` and
    ``right`` follow the quadrilateral convention: D(face_left) =
    D(white) + left and D(face_right) = D(white) + right.
    """
    white: VertexId
    black: VertexId
    left: TrainTrack
    right: TrainTrack
    face_left: Optional[Point] = None
    face_right: Optional[Point] = None
    icy: bool = False

    @property
    def key(self) -> Tuple[Point, Point]:
        return self.white.point, self.black.point

    @property
    def tracks(self) -> Tuple[TrainTrack, TrainTrack]:
        """
        (horizontal-family, vertical-family) crossing tracks

        :return: Track pair
        """
        if self.left.horizontal:
            return self.left, self.right
        return self.right, self.left

    def to_json(self) -> Dict[str, object]:
        return {
            'white': list(self.white.point),
            'black': list(self.black.point),
            'left': track_name(self.left),
            'right': track_name(self.right),
            'icy': self.icy
        }


def horizontal_track(y: int) -> TrainTrack:
    """
    Track crossed by a step between heights y and y + 1

    :param y: Lower height

    :return: alpha for even y, beta for odd y
    """
    if y % 2 == 0:
        return TrainTrack('A', y // 2 + 1)
    return TrainTrack('B', (y + 1) // 2)


def vertical_track(x: int) -> TrainTrack:
    """
    Track crossed by a step between abscissae x and x + 1

    :param x: Lower abscissa

    :return: gamma for even x, delta for odd x
    """
    if x % 2 == 0:
        return TrainTrack('C', x // 2 + 1)
    return TrainTrack('D', (x + 1) // 2)


def lattice_divisor(x: int, y: int) -> FormalDivisor:
    """
    Discrete Abel map at a lattice point of the first quadrant, integrated
    from the face (0, 0) along the east-then-north staircase

    :param x: Abscissa
    :param y: Ordinate

    :return: Divisor including the base marker d
    """
    if x < 0 or y < 0:
        raise ConfigError('({}, {}) lies outside the Aztec diamond'.format(
            x, y
        ))

    plus = []
    minus = []

    for k in range(x):
        (plus if k % 2 == 0 else minus).append(vertical_track(k))
    for m in range(y):
        (minus if m % 2 == 0 else plus).append(horizontal_track(m))

    return FormalDivisor.from_tracks(plus, minus, base=1)


def step_track(start: Point, end: Point) -> Tuple[TrainTrack, int]:
    """
    Track crossed by a unit lattice step and the sign of the Abel map
    increment along it

    :param start: Start point
    :param end: End point, at distance one

    :return: (track, +1 or -1)
    """
    (x0, y0), (x1, y1) = start, end

    if abs(x1 - x0) + abs(y1 - y0) != 1:
        raise ConfigError('{} -> {} is not a unit step'.format(start, end))

    if y0 == y1:
        low = min(x0, x1)
        track = vertical_track(low)
        sign = 1 if low % 2 == 0 else -1
        return track, sign if x1 > x0 else -sign

    low = min(y0, y1)
    track = horizontal_track(low)
    sign = -1 if low % 2 == 0 else 1
    return track, sign if y1 > y0 else -sign


@dataclass
class AztecGraph:
    n: int
    whites: List[VertexId] = field(default_factory=list)
    blacks: List[VertexId] = field(default_factory=list)
    edges: List[Edge] = field(default_factory=list)
    faces: Dict[Point, FaceId] = field(default_factory=dict)
    adjacency: Dict[VertexId, List[Edge]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.white_index = {w: i for i, w in enumerate(self.whites)}
        self.black_index = {b: i for i, b in enumerate(self.blacks)}
        self.edge_index = {edge.key: edge for edge in self.edges}
        self._divisors: Dict[Point, FormalDivisor] = {}

    def white(self, x: int, y: int) -> VertexId:
        vertex = VertexId(WHITE, x, y)
        if vertex not in self.white_index:
            raise ConfigError('No white vertex at ({}, {})'.format(x, y))
        return vertex

    def black(self, x: int, y: int) -> VertexId:
        vertex = VertexId(BLACK, x, y)
        if vertex not in self.black_index:
            raise ConfigError('No black vertex at ({}, {})'.format(x, y))
        return vertex

    def vertex_at(self, x: int, y: int) -> VertexId:
        """
        Vertex of either colour at a lattice point

        :param x: Abscissa
        :param y: Ordinate

        :return: Vertex
        """
        if x % 2 == 0:
            return self.white(x, y)
        return self.black(x, y)

    def contains(self, point: Point) -> bool:
        x, y = point
        return 0 <= x <= 2 * self.n and 0 <= y <= 2 * self.n

    def edge(self, white: VertexId, black: VertexId) -> Edge:
        """
        Look an edge up by its endpoints

        :param white: White endpoint
        :param black: Black endpoint

        :return: Edge
        """
        edge = self.edge_index.get((white.point, black.point))
        if edge is None:
            raise ConfigError('{} and {} are not adjacent'.format(
                white, black
            ))
        return edge

    def neighbours(self, vertex: VertexId) -> List[VertexId]:
        return [edge.black if vertex.color == WHITE else edge.white
                for edge in self.adjacency.get(vertex, [])]

    def divisor(self, item: Union[VertexId, FaceId, Point]) -> FormalDivisor:
        """
        Discrete Abel map of a vertex or face

        :param item: Vertex, face or lattice point of the diamond graph

        :return: Divisor
        """
        point = item if isinstance(item, tuple) else item.point

        if not self.contains(point):
            raise ConfigError('{} is not in the diamond graph'.format(point))

        if point not in self._divisors:
            self._divisors[point] = lattice_divisor(*point)
        return self._divisors[point]

    def face(self, x: int, y: int) -> FaceId:
        face = self.faces.get((x, y))
        if face is None:
            raise ConfigError('No face at ({}, {})'.format(x, y))
        return face

    def face_corners(self, face: FaceId) -> Dict[str, Point]:
        """
        The four lattice neighbours of a face, keyed by compass direction

        :param face: Face

        :return: {'E', 'N', 'W', 'S'} -> point
        """
        x, y = face.point
        return {
            'E': (x + 1, y),
            'N': (x, y + 1),
            'W': (x - 1, y),
            'S': (x, y - 1)
        }

    def inner_faces(self) -> List[FaceId]:
        return [face for face in self.faces.values() if face.is_inner]

    def face_edges(self, face: FaceId) -> List[Tuple[Edge, int]]:
        """
        Edges around an inner face with the exponent they carry in the
        alternating face product

        :param face: Inner face

        :return: [(edge, +1 or -1)]
        """
        if not face.is_inner:
            raise ConfigError('Face ({}, {}) is a boundary face'.format(
                face.x, face.y
            ))

        corner = {key: self.vertex_at(*point)
                  for key, point in self.face_corners(face).items()}

        if face.kind == ODD:
            plus = [('E', 'N'), ('W', 'S')]
            minus = [('E', 'S'), ('W', 'N')]
        else:
            plus = [('S', 'E'), ('N', 'W')]
            minus = [('S', 'W'), ('N', 'E')]

        return [(self.edge(corner[w], corner[b]), 1) for w, b in plus] + \
            [(self.edge(corner[w], corner[b]), -1) for w, b in minus]

    def face_classes(self) -> Dict[str, List[FaceId]]:
        """
        Partition of the faces into odd, interior-even and boundary faces;
        ``corner`` lists the subset of boundary faces at the four corners

        :return: Class name -> sorted faces
        """
        classes = {ODD: [], INTERIOR_EVEN: [], BOUNDARY: [], CORNER: []}

        for point in sorted(self.faces, key=lambda p: (p[1], p[0])):
            face = self.faces[point]
            if face.kind == ODD:
                classes[ODD].append(face)
            elif face.kind == INTERIOR_EVEN:
                classes[INTERIOR_EVEN].append(face)
            else:
                classes[BOUNDARY].append(face)
                if face.kind == CORNER:
                    classes[CORNER].append(face)

        return classes

    def to_json(self) -> Dict[str, object]:
        return {
            'n': self.n,
            'vertices': [
                {'color': v.color, 'x': v.x, 'y': v.y,
                 'divisor': self.divisor(v).to_json()}
                for v in sorted(self.whites + self.blacks,
                                key=lambda v: v.sort_key)
            ],
            'edges': [edge.to_json() for edge in self.edges],
            'faces': [
                {'x': f.x, 'y': f.y, 'kind': f.kind,
                 'divisor': self.divisor(f).to_json()}
                for f in sorted(self.faces.values(),
                                key=lambda f: (f.y, f.x))
            ]
        }


def _face_kind(n: int, x: int, y: int) -> str:
    if x % 2 == 1:
        return ODD

    on_x = x in (0, 2 * n)
    on_y = y in (0, 2 * n)

    if on_x and on_y:
        return CORNER
    if on_x or on_y:
        return BOUNDARY
    return INTERIOR_EVEN


def make_edge(white: VertexId, black: VertexId) -> Edge:
    """
    Edge of the square lattice between a white and a diagonal black vertex

    :param white: White vertex
    :param black: Black vertex at (x +- 1, y +- 1)

    :return: Edge with tracks and adjacent faces
    """
    dx, dy = black.x - white.x, black.y - white.y
    horizontal = horizontal_track(min(white.y, black.y))
    vertical = vertical_track(min(white.x, black.x))

    vertical_face = (white.x + dx, white.y)
    horizontal_face = (white.x, white.y + dy)

    if dx * dy > 0:
        return Edge(white, black, horizontal, vertical,
                    horizontal_face, vertical_face)
    return Edge(white, black, vertical, horizontal,
                vertical_face, horizontal_face)


def build_aztec(n: int) -> AztecGraph:
    """
    Aztec diamond of size n in its natural coordinates: whites at
    (even, odd), blacks at (odd, even), faces at points with coordinates of
    equal parity, all inside [0, 2n]^2

    :param n: Size, at least 1

    :return: Graph with vertices ordered lexicographically by (y, x)
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ModelError('The Aztec diamond needs n >= 1, got {!r}'.format(n))

    size = 2 * n

    whites = [VertexId(WHITE, x, y)
              for y in range(1, size, 2) for x in range(0, size + 1, 2)]
    blacks = [VertexId(BLACK, x, y)
              for y in range(0, size + 1, 2) for x in range(1, size, 2)]
    black_set = set(blacks)

    edges = []
    adjacency = {vertex: [] for vertex in whites + blacks}

    for white in whites:
        for dy in (-1, 1):
            for dx in (-1, 1):
                black = VertexId(BLACK, white.x + dx, white.y + dy)
                if black not in black_set:
                    continue

                edge = make_edge(white, black)
                edges.append(edge)
                adjacency[white].append(edge)
                adjacency[black].append(edge)

    faces = {
        (x, y): FaceId(x, y, _face_kind(n, x, y))
        for y in range(size + 1) for x in range(size + 1)
        if x % 2 == y % 2
    }

    return AztecGraph(n, whites, blacks, edges, faces, adjacency)


def edge_tracks(g: AztecGraph, e: Union[Edge, Tuple[Point, Point]]) \
        -> Tuple[TrainTrack, TrainTrack]:
    """
    Horizontal-family and vertical-family tracks crossing an edge

    :param g: Graph
    :param e: Edge or (white point, black point)

    :return: (horizontal, vertical)
    """
    key = e.key if isinstance(e, Edge) else (tuple(e[0]), tuple(e[1]))

    if key not in g.edge_index:
        raise ConfigError('Unknown edge {}'.format(key))

    return g.edge_index[key].tracks


def abel_divisor(g: AztecGraph, x: Union[VertexId, FaceId, Point]) \
        -> FormalDivisor:
    return g.divisor(x)


def face_classes(g: AztecGraph) -> Dict[str, List[FaceId]]:
    return g.face_classes()
