from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from Lattice.Aztec import AztecGraph, BLACK, Edge, Point, VertexId, WHITE, \
    build_aztec
from Lattice.Divisor import FormalDivisor, TrainTrack
from Utils.Errors import ConfigError
from Utils.Logging.Logging import Logging

AZTEC = 'Az'
QUADRANTS = ('N', 'W', 'S', 'E')

#: number of quarter turns taking Q_N onto a quadrant
TURNS = {'N': 0, 'W': 1, 'S': 2, 'E': 3}

DEFAULT_DEPTH_CAP = 8

logger = Logging(__name__).logger


def rotate_point(n: int, point: Point, turns: int = 1) -> Point:
    """
    Quarter turn (x, y) -> (2n - y, x) about the centre of the diamond

    :param n: Size of the diamond
    :param point: Point
    :param turns: Number of quarter turns, may be negative

    :return: Rotated point
    """
    x, y = point
    for _ in range(turns % 4):
        x, y = 2 * n - y, x
    return x, y


def rotate_track(n: int, track: TrainTrack, turns: int = 1) -> TrainTrack:
    family, index = track
    for _ in range(turns % 4):
        family, index = {
            'A': ('D', n + 1 - index),
            'B': ('C', n + 1 - index),
            'C': ('A', index),
            'D': ('B', index)
        }[family]
    return TrainTrack(family, index)


def rotate_vertex(n: int, vertex: VertexId, turns: int = 1) -> VertexId:
    color = vertex.color
    if turns % 2:
        color = BLACK if color == WHITE else WHITE
    return VertexId(color, *rotate_point(n, vertex.point, turns))


def rotate_edge(n: int, edge: Edge, turns: int = 1) -> Edge:
    """
    Image of an edge under quarter turns; odd turns swap the colours, so the
    image of the black end becomes the white end

    :param n: Size of the diamond
    :param edge: Edge in the source quadrant
    :param turns: Number of quarter turns

    :return: Rotated edge
    """
    if turns % 2:
        white = rotate_vertex(n, edge.black, turns)
        black = rotate_vertex(n, edge.white, turns)
    else:
        white = rotate_vertex(n, edge.white, turns)
        black = rotate_vertex(n, edge.black, turns)

    return Edge(white, black,
                rotate_track(n, edge.left, turns),
                rotate_track(n, edge.right, turns),
                icy=edge.icy)


def _north_quadrant(n: int, depth: int) -> List[Edge]:
    edges = []

    for k in range(1, depth + 1):
        y = 2 * n + 2 * k - 1
        abscissae = list(range(1 - k, 2 * n + k, 2))
        high = TrainTrack('A', n + k)

        for x in abscissae:
            white = VertexId(WHITE, x, y)
            gamma = TrainTrack('C', (x + k + 1) // 2)
            delta = TrainTrack('D', (x - k + 1) // 2)

            edges.append(Edge(white, VertexId(BLACK, x, y + 1), delta, gamma,
                              icy=True))

            if x != abscissae[-1]:
                edges.append(Edge(white, VertexId(BLACK, x + 1, y - 1),
                                  gamma, high))
            if x != abscissae[0]:
                edges.append(Edge(white, VertexId(BLACK, x - 1, y - 1),
                                  high, delta))
            else:
                edges.append(Edge(white,
                                  VertexId(BLACK, 1 - 2 * k, 2 * n + k - 1),
                                  high, TrainTrack('D', 1 - k)))

    return edges


@dataclass
class ExtendedGraph:
    base: AztecGraph
    depth: int
    edges: List[Edge] = field(default_factory=list)
    region: Dict[VertexId, str] = field(default_factory=dict)
    layer: Dict[VertexId, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.logger = Logging(self.__class__.__name__).logger
        self.n = self.base.n
        self.adjacency: Dict[VertexId, List[Edge]] = {}
        self.edge_index: Dict[Tuple[Point, Point], Edge] = {}

        for edge in self.edges:
            self.adjacency.setdefault(edge.white, []).append(edge)
            self.adjacency.setdefault(edge.black, []).append(edge)
            self.edge_index[edge.key] = edge

        self.divisors = self._propagate_divisors()

    @property
    def whites(self) -> List[VertexId]:
        return sorted((v for v in self.region if v.color == WHITE),
                      key=lambda v: v.sort_key)

    @property
    def blacks(self) -> List[VertexId]:
        return sorted((v for v in self.region if v.color == BLACK),
                      key=lambda v: v.sort_key)

    def quadrant_vertices(self, quadrant: str) -> List[VertexId]:
        return sorted((v for v, r in self.region.items() if r == quadrant),
                      key=lambda v: v.sort_key)

    def icy_edges(self) -> List[Edge]:
        return [edge for edge in self.edges if edge.icy]

    def icy_partner(self, vertex: VertexId) -> VertexId:
        """
        Other end of the unique icy edge at a quadrant vertex

        :param vertex: Quadrant vertex

        :return: Partner vertex
        """
        icy = [edge for edge in self.adjacency.get(vertex, []) if edge.icy]
        if len(icy) != 1:
            raise ConfigError('{} is not covered by one icy edge'.format(
                vertex
            ))
        edge = icy[0]
        return edge.black if vertex.color == WHITE else edge.white

    def expected_degree(self, vertex: VertexId) -> int:
        return 4 if self.region[vertex] == AZTEC else 3

    def is_incomplete(self, vertex: VertexId) -> bool:
        """
        True when some neighbours of the vertex lie outside the window

        :param vertex: Vertex of the window

        :return: Boundary incompleteness flag
        """
        degree = len(self.adjacency.get(vertex, []))
        return degree < self.expected_degree(vertex)

    def neighbours(self, vertex: VertexId) -> List[VertexId]:
        return [edge.black if vertex.color == WHITE else edge.white
                for edge in self.adjacency.get(vertex, [])]

    def edge(self, white: VertexId, black: VertexId) -> Optional[Edge]:
        return self.edge_index.get((white.point, black.point))

    def divisor(self, vertex: VertexId) -> FormalDivisor:
        if vertex not in self.divisors:
            raise ConfigError('{} is not in the window'.format(vertex))
        return self.divisors[vertex]

    def north_frame(self, vertex: VertexId) -> VertexId:
        """
        Pull a quadrant vertex back into the Q_N frame

        :param vertex: Quadrant vertex

        :return: Corresponding vertex of Q_N
        """
        return rotate_vertex(self.n, vertex, -TURNS[self.region[vertex]])

    def in_light_cone(self, apex: VertexId, vertex: VertexId) -> bool:
        """
        Light cone test in the Q_N frame: the apex is a white vertex of
        Q_N (a black one in Q_W and Q_E) and the cone holds the vertices of
        opposite colour in the same quadrant, at least as far out, within
        the 45 degree wedge

        :param apex: Apex of the cone
        :param vertex: Candidate vertex

        :return: Membership
        """
        quadrant = self.region.get(apex)
        if quadrant in (None, AZTEC) or self.region.get(vertex) != quadrant:
            return False

        top = self.north_frame(apex)
        other = self.north_frame(vertex)

        if top.color != WHITE or other.color != BLACK:
            return False

        k_top = self.layer[apex]
        k_other = self.layer[vertex]

        return k_other >= k_top and abs(other.x - top.x) <= k_other - k_top

    def _propagate_divisors(self) -> Dict[VertexId, FormalDivisor]:
        divisors = {v: self.base.divisor(v) for v in self.base.whites}
        divisors.update({v: self.base.divisor(v) for v in self.base.blacks})

        queue = deque(divisors)

        while queue:
            vertex = queue.popleft()
            for edge in self.adjacency.get(vertex, []):
                step = FormalDivisor.from_tracks([edge.left, edge.right])

                if vertex.color == WHITE:
                    other, value = edge.black, divisors[vertex] + step
                else:
                    other, value = edge.white, divisors[vertex] - step

                if other not in divisors:
                    divisors[other] = value
                    queue.append(other)
                elif divisors[other] != value:
                    raise ConfigError(
                        'Abel map is not single valued at {}'.format(other)
                    )

        return divisors

    def to_json(self) -> Dict[str, Any]:
        return {
            'n': self.n,
            'depth': self.depth,
            'vertices': [
                {'color': v.color, 'x': v.x, 'y': v.y,
                 'region': self.region[v],
                 'incomplete': self.is_incomplete(v)}
                for v in sorted(self.region, key=lambda v: v.sort_key)
            ],
            'edges': [edge.to_json() for edge in self.edges]
        }


def build_extended(n: int, depth: int,
                   depth_cap: int = DEFAULT_DEPTH_CAP) -> ExtendedGraph:
    """
    Window of radius ``depth`` of the infinite extension of the Aztec
    diamond, obtained by gluing four quadrants of hexagons along the sides

    :param n: Size of the diamond
    :param depth: Number of hexagon layers per quadrant
    :param depth_cap: Largest accepted depth

    :return: Extended graph
    """
    if not isinstance(depth, int) or depth < 0:
        raise ConfigError('depth must be a nonnegative integer')
    if depth > depth_cap:
        raise ConfigError('depth {} exceeds the cap {}'.format(
            depth, depth_cap
        ))

    base = build_aztec(n)
    region: Dict[VertexId, str] = {}
    layer: Dict[VertexId, int] = {}

    for vertex in base.whites + base.blacks:
        region[vertex] = AZTEC
        layer[vertex] = 0

    north = _north_quadrant(n, depth)
    edges = list(base.edges)

    for quadrant in QUADRANTS:
        turns = TURNS[quadrant]

        for k in range(1, depth + 1):
            y = 2 * n + 2 * k - 1
            for x in range(1 - k, 2 * n + k, 2):
                white = rotate_vertex(n, VertexId(WHITE, x, y), turns)
                black = rotate_vertex(n, VertexId(BLACK, x, y + 1), turns)
                for vertex in (white, black):
                    region[vertex] = quadrant
                    layer[vertex] = k

        edges.extend(rotate_edge(n, edge, turns) for edge in north)

    logger.debug('Extended window n=%d depth=%d: %d vertices, %d edges',
                 n, depth, len(region), len(edges))

    return ExtendedGraph(base, depth, edges, region, layer)
