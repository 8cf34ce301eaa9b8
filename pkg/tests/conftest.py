import math

import pytest

from kmcds.graph import Graph, from_edges
from kmcds.instances import MICRO, UnitDiskInstance
from fractions import Fraction


@pytest.fixture
def c4() -> Graph:
    return from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def c6() -> Graph:
    return from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])


@pytest.fixture
def k5() -> Graph:
    return from_edges(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])


@pytest.fixture
def c4_plus_apex() -> Graph:
    # 4-cycle 0-1-2-3 with an extra node 4 adjacent to 0 and 2
    return from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 2)],
                      is_unit_disk=True)


def _polar(cx: float, cy: float, radius: float, angle_deg: float) -> tuple[int, int]:
    a = math.radians(angle_deg)
    x = round((cx + radius * math.cos(a)) * MICRO)
    y = round((cy + radius * math.sin(a)) * MICRO)
    return (x, y)


def pendant_triangle_instance() -> UnitDiskInstance:
    """Hub with four triangle petals plus four outer relay nodes.

    The backbone pipeline yields a star on the hub and the four petal
    anchors: four blocks, one cut node, and exactly three covering
    iterations to reach 2-connectivity.
    """
    coords = [(50 * MICRO, 50 * MICRO)]
    for theta in (0, 90, 180, 270):
        coords.append(_polar(50, 50, 9.8, theta - 10))  # anchor a_i
        coords.append(_polar(50, 50, 9.8, theta + 10))  # mate b_i
        coords.append(_polar(50, 50, 9.8, theta + 45))  # relay d_i
    weights = tuple(Fraction(1) for _ in coords)
    return UnitDiskInstance(
        n=len(coords),
        coords=tuple(coords),
        radius=10 * MICRO,
        region=(100 * MICRO, 100 * MICRO),
        weights=weights,
        seed=None,
    )
