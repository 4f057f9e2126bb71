from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use('svg')

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Polygon  # noqa: E402

matplotlib.rcParams['svg.hashsalt'] = 'AztecFock'
matplotlib.rcParams['svg.fonttype'] = 'none'

DIGITS = 12

Point = Tuple[float, float]


def _round(points: Sequence[Point]) -> List[Point]:
    return [(float('{:.{}g}'.format(x, DIGITS)),
             float('{:.{}g}'.format(y, DIGITS))) for x, y in points]


class SvgWriter:
    def __init__(self, path: str, title: Optional[str] = None) -> None:
        self.path = path
        self.figure, self.axes = plt.subplots(figsize=(6, 6))
        self.axes.set_aspect('equal')
        self.axes.set_axis_off()

        if title is not None:
            self.axes.set_title(title)

    def polygons(self, polygons: Sequence[Tuple[Sequence[Point], str]],
                 outline: bool = True) -> None:
        """
        Draw filled polygons, with a thin black outline unless disabled

        :param polygons: [(corners, fill colour)]
        :param outline: Draw the outline

        :return: None
        """
        edge = 'black' if outline else 'none'

        for corners, colour in polygons:
            self.axes.add_patch(Polygon(_round(corners), closed=True,
                                        facecolor=colour, edgecolor=edge,
                                        linewidth=0.3))
        self.axes.autoscale_view()

    def curve(self, points: Sequence[Point], colour: str = 'black',
              label: Optional[str] = None) -> None:
        """
        Draw a sampled curve as a scatter of small dots, since branches are
        not ordered

        :param points: Samples
        :param colour: Colour
        :param label: Legend label

        :return: None
        """
        if not points:
            return
        x, y = zip(*_round(points))
        self.axes.plot(x, y, linestyle='none', marker='.', markersize=1.5,
                       color=colour, label=label)

    def frame(self, lo: float = 0.0, hi: float = 1.0) -> None:
        self.axes.plot([lo, hi, hi, lo, lo], [lo, lo, hi, hi, lo],
                       color='grey', linewidth=0.5)

    def save(self) -> str:
        """
        Write the figure with fixed metadata so that reruns give identical
        files

        :return: Path written
        """
        Path(self.path).parent.mkdir(parents=True, exist_ok=True)

        if self.axes.get_legend_handles_labels()[0]:
            self.axes.legend(loc='upper right', fontsize='small')

        self.figure.savefig(self.path, format='svg',
                            metadata={'Date': None, 'Creator': None})
        plt.close(self.figure)

        return self.path
