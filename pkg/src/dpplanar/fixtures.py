"""Hand-built plane graphs used by the tests, the CLI and the docs.

Every fixture is built from a straight-line drawing: the clockwise order of
neighbours is read off the coordinates and the unbounded face is the one
whose boundary walk has negative signed area.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Callable, Iterable, Mapping

from .plane_graph import PlaneGraph, write_pg

__all__ = [
    "BAD_CYCLE_SHAPES",
    "CORPUS",
    "biclaw_5558",
    "bad_cycle_fixture",
    "c8_with_path",
    "claw",
    "cycle",
    "dodecahedron",
    "from_drawing",
    "good_path_fixture",
    "h_graph",
    "k3",
    "k4",
    "light_five_face",
    "light_five_face_reduced",
    "string_face",
    "wheel",
    "write_corpus",
]

Point = tuple[float, float]


def _polar(r: float, deg: float) -> Point:
    a = math.radians(deg)
    return (r * math.cos(a), r * math.sin(a))


def from_drawing(points: Mapping[int, Point], edges: Iterable[tuple[int, int]]) -> PlaneGraph:
    """Plane graph of a straight-line drawing (y axis pointing up)."""
    nbrs: dict[int, list[int]] = {v: [] for v in points}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)

    def angle(v: int, w: int) -> float:
        (x0, y0), (x1, y1) = points[v], points[w]
        return math.atan2(y1 - y0, x1 - x0)

    # clockwise means decreasing angle
    rot = {v: sorted(ws, key=lambda w: -angle(v, w)) for v, ws in nbrs.items()}
    first = next((v, ws[0]) for v, ws in rot.items() if ws)
    g = PlaneGraph(rot, first)
    for f in range(g.n_faces):
        vs = g.face_vertices(f)
        area = sum(
            points[a][0] * points[b][1] - points[b][0] * points[a][1]
            for a, b in zip(vs, vs[1:] + vs[:1])
        )
        if area < 0:
            d = g.darts[g.faces[f][0]]
            return g.with_outer(d.tail, d.head)
    return g  # a tree: the only face is unbounded


def cycle(n: int) -> PlaneGraph:
    pts = {i: _polar(1, 90 + 360 * (i - 1) / n) for i in range(1, n + 1)}
    return from_drawing(pts, [(i, i % n + 1) for i in range(1, n + 1)])


def k3() -> PlaneGraph:
    return cycle(3)


def k4() -> PlaneGraph:
    pts = {1: (0, 0), 2: _polar(2, 90), 3: _polar(2, 210), 4: _polar(2, 330)}
    return from_drawing(pts, [(1, 2), (1, 3), (1, 4), (2, 3), (3, 4), (4, 2)])


def wheel(n: int = 5) -> PlaneGraph:
    """Hub ``n + 1`` joined to every vertex of the rim ``1..n``."""
    pts = {i: _polar(2, 90 + 360 * (i - 1) / n) for i in range(1, n + 1)}
    pts[n + 1] = (0, 0)
    edges = [(i, i % n + 1) for i in range(1, n + 1)] + [(n + 1, i) for i in range(1, n + 1)]
    return from_drawing(pts, edges)


def h_graph() -> PlaneGraph:
    """A 3-face ``[1 2 6]`` and a 5-face ``[2 3 4 5 6]`` sharing the edge 26."""
    pts = {1: (0, 2), 2: (-1, 1), 6: (1, 1), 3: (-1, -1), 4: (0, -2), 5: (1, -1)}
    edges = [(1, 2), (1, 6), (2, 6), (2, 3), (3, 4), (4, 5), (5, 6)]
    return from_drawing(pts, edges)


def c8_with_path() -> PlaneGraph:
    """The 8-cycle ``1..8`` with an internal 2-vertex 9 joined to 1 and 5."""
    pts = {i: _polar(2, 90 - 45 * (i - 1)) for i in range(1, 9)}
    pts[9] = (0, 0)
    edges = [(i, i % 8 + 1) for i in range(1, 9)] + [(9, 1), (9, 5)]
    return from_drawing(pts, edges)


def dodecahedron() -> PlaneGraph:
    """Outer pentagon 1..5, middle 10-cycle 6..15, inner pentagon 16..20."""
    pts = {}
    for i in range(5):
        pts[1 + i] = _polar(3, 90 + 72 * i)
        pts[16 + i] = _polar(1, 90 + 72 * i + 36)
    for j in range(10):
        pts[6 + j] = _polar(2, 90 + 36 * j)
    edges = []
    for i in range(5):
        edges.append((1 + i, 1 + (i + 1) % 5))
        edges.append((16 + i, 16 + (i + 1) % 5))
        edges.append((1 + i, 6 + 2 * i))
        edges.append((16 + i, 6 + 2 * i + 1))
    for j in range(10):
        edges.append((6 + j, 6 + (j + 1) % 10))
    return from_drawing(pts, edges)


# --------------------------------------------------------------------------
# claws and biclaws


def claw(arcs: tuple[int, int, int]) -> PlaneGraph:
    """A cycle ``1..n`` (``n = sum(arcs)``) and a centre ``n + 1`` joined to
    three cycle vertices splitting it into arcs of the given lengths.

    The cells have sizes ``arc + 2``.
    """
    n = sum(arcs)
    pts = {i: _polar(3, 90 - 360 * (i - 1) / n) for i in range(1, n + 1)}
    pts[n + 1] = (0, 0)
    edges = [(i, i % n + 1) for i in range(1, n + 1)]
    pos = 1
    for a in arcs:
        edges.append((n + 1, pos))
        pos += a
    return from_drawing(pts, edges)


def biclaw_5558() -> PlaneGraph:
    """A 13-cycle with adjacent centres 14, 15 cutting cells 5, 5, 5, 8."""
    n = 13
    pts = {i: _polar(4, 90 - 360 * (i - 1) / n) for i in range(1, n + 1)}
    # attachments: 14 -> 1, 4 (arc 3); 15 -> 6, 9 (arc 3); arcs 4..6 = 2, 9..1 = 5
    pts[14] = _polar(1.2, 90 - 360 * 1.5 / n)
    pts[15] = _polar(1.2, 90 - 360 * 6.5 / n)
    edges = [(i, i % n + 1) for i in range(1, n + 1)]
    edges += [(14, 1), (14, 4), (15, 6), (15, 9), (14, 15)]
    return from_drawing(pts, edges)


BAD_CYCLE_SHAPES: dict[str, tuple[Callable[[], PlaneGraph], tuple[int, ...]]] = {
    "claw_3_5_10": (lambda: claw((1, 3, 8)), (3, 5, 10)),
    "claw_5_5_8": (lambda: claw((3, 3, 6)), (5, 5, 8)),
    "claw_6_6_6": (lambda: claw((4, 4, 4)), (6, 6, 6)),
    "claw_3_5_11": (lambda: claw((1, 3, 9)), (3, 5, 11)),
    "biclaw_5_5_5_8": (biclaw_5558, (5, 5, 5, 8)),
}


def bad_cycle_fixture(name: str) -> PlaneGraph:
    return BAD_CYCLE_SHAPES[name][0]()


# --------------------------------------------------------------------------
# reducible configurations on a large outer ring


def _ring(points: dict, edges: list, first: int, n: int, radius: float) -> None:
    for i in range(n):
        points[first + i] = _polar(radius, 90 - 360 * i / n)
        edges.append((first + i, first + (i + 1) % n))


def _ring_at(first: int, n: int, deg: float) -> int:
    """Ring vertex closest to the given angle (ring runs clockwise from 90)."""
    return first + round(((90 - deg) % 360) / 360 * n) % n


LIGHT_RING = 25


def _light_five_face(with_face: bool) -> PlaneGraph:
    pts: dict[int, Point] = {}
    edges: list[tuple[int, int]] = []
    angles = [90 + 72 * i for i in range(5)]
    for i, a in enumerate(angles):
        if with_face:
            pts[1 + i] = _polar(1, a)
            edges.append((1 + i, 1 + (i + 1) % 5))
            edges.append((1 + i, 6 + i))
        pts[6 + i] = _polar(2, a)
    _ring(pts, edges, 11, LIGHT_RING, 4)
    for i, a in enumerate(angles):
        edges.append((6 + i, _ring_at(11, LIGHT_RING, a)))
    if not with_face:
        edges.append((7, 10))
    return from_drawing(pts, edges)


def light_five_face() -> PlaneGraph:
    """A light 5-face ``[1 2 3 4 5]``; vertex ``i`` has outer neighbour ``i + 5``
    hanging from the 25-cycle ``11..35`` that bounds the unbounded face."""
    return _light_five_face(True)


def light_five_face_reduced() -> PlaneGraph:
    """:func:`light_five_face` with the 5-face removed and the edge 7-10 added."""
    return _light_five_face(False)


GOOD_PATH_RING = 24
# vertex ids of the good-path fixture
GP = dict(u=1, v=2, w=3, x=4, y=5, z=6, u1=7, w1=8, x1=9, y1=10, z1=11, z2=12)
_GP_LEAVES = {"x1": 83, "y1": 107, "z1": 149, "z2": 173, "u1": 211, "w1": 303}


def good_path_fixture() -> PlaneGraph:
    """A bad 3-face ``[u v w]`` with a path ``v x y z`` of 3-vertices.

    ``u``, ``w``, ``x``, ``y`` have outer neighbours ``u1``, ``w1``, ``x1``,
    ``y1`` and ``z`` has two, ``z1`` and ``z2``.  Each of these six leaves is
    joined to one vertex of the 24-cycle ``13..36`` bounding the unbounded
    face, far enough apart that identifying ``x1`` with ``u1`` after deleting
    ``u v x y z`` closes no short cycle.
    """
    ids = GP
    pts: dict[int, Point] = {
        ids["u"]: (-1, -0.6),
        ids["w"]: (1, -0.6),
        ids["v"]: (0, 0.8),
        ids["x"]: (0, 1.8),
        ids["y"]: _polar(2.6, 110),
        ids["z"]: _polar(3.6, 140),
    }
    for name, deg in _GP_LEAVES.items():
        pts[ids[name]] = _polar(5.5, deg)
    edges = [
        (ids["u"], ids["v"]),
        (ids["v"], ids["w"]),
        (ids["w"], ids["u"]),
        (ids["v"], ids["x"]),
        (ids["x"], ids["y"]),
        (ids["y"], ids["z"]),
        (ids["u"], ids["u1"]),
        (ids["w"], ids["w1"]),
        (ids["x"], ids["x1"]),
        (ids["y"], ids["y1"]),
        (ids["z"], ids["z1"]),
        (ids["z"], ids["z2"]),
    ]
    _ring(pts, edges, 13, GOOD_PATH_RING, 7)
    for name, deg in _GP_LEAVES.items():
        edges.append((ids[name], _ring_at(13, GOOD_PATH_RING, deg)))
    return from_drawing(pts, edges)


# --------------------------------------------------------------------------
# faces carrying strings


# spoke gaps that keep the graph free of 4-, 7- and 9-cycles (found by search)
STRING_GAPS: dict[tuple[int, int], tuple[int, ...]] = {
    (5, 1): (2, 5, 2, 6),
    (6, 1): (5, 5, 5, 5, 2),
    (8, 1): (5, 5, 5, 2, 2, 5, 2),
    (8, 2): (5, 5, 5, 2, 2, 5),
    (10, 1): (3, 5, 2, 2, 5, 3, 5, 3, 2),
    (10, 2): (5, 3, 3, 3, 3, 5, 5, 3),
    (10, 3): (5, 2, 5, 3, 5, 5, 5),
    (11, 1): (3, 5, 2, 5, 3, 5, 5, 5, 5, 2),
    (11, 2): (5, 3, 3, 3, 5, 5, 3, 5, 3),
    (11, 3): (5, 3, 5, 2, 5, 3, 5, 5),
    (11, 4): (3, 5, 2, 2, 2, 2, 5),
    (12, 1): (3, 5, 5, 3, 5, 5, 2, 5, 2, 5, 2),
    (12, 2): (2, 5, 3, 5, 5, 3, 5, 2, 5, 3),
    (12, 3): (5, 2, 5, 2, 5, 3, 5, 5, 5),
    (12, 4): (3, 5, 2, 2, 5, 3, 3, 5),
}


def string_face(k: int, t: int = 1, gaps: tuple[int, ...] | None = None) -> PlaneGraph:
    """A bounded ``k``-face ``[1 .. k]`` whose vertices ``1..t`` form a ``t``-string.

    Every other vertex of the face has a spoke to an outer ring; consecutive
    spokes land ``gaps[i]`` ring steps apart.  The tabulated defaults keep
    the graph free of 4-, 7- and 9-cycles; a 7- or 9-face can never be, and
    gets gaps of 3.
    """
    if not 1 <= t <= k - 2:
        raise ValueError("need 1 <= t <= k - 2")
    anchored = list(range(t + 1, k + 1))
    if gaps is None:
        gaps = STRING_GAPS.get((k, t), (3,) * len(anchored))
    if len(gaps) != len(anchored):
        raise ValueError(f"need {len(anchored)} gaps")
    m = sum(gaps)
    pts = {i: _polar(1, 90 - 360 * (i - 1) / k) for i in range(1, k + 1)}
    edges = [(i, i % k + 1) for i in range(1, k + 1)]
    first = k + 1
    # the ring starts level with the first spoke so spokes stay short
    offset = 90 - 360 * (anchored[0] - 1) / k
    for i in range(m):
        pts[first + i] = _polar(3, offset - 360 * i / m)
        edges.append((first + i, first + (i + 1) % m))
    pos = 0
    for v, gap in zip(anchored, gaps):
        edges.append((v, first + pos))
        pos += gap
    return from_drawing(pts, edges)


# --------------------------------------------------------------------------
# corpus


def _corpus() -> dict[str, Callable[[], PlaneGraph]]:
    out: dict[str, Callable[[], PlaneGraph]] = {
        "h": h_graph,
        "k3": k3,
        "k4": k4,
        "c4": lambda: cycle(4),
        "c5": lambda: cycle(5),
        "c6": lambda: cycle(6),
        "w5": wheel,
        "c8_path": c8_with_path,
        "dodecahedron": dodecahedron,
        "light_five_face": light_five_face,
        "light_five_face_reduced": light_five_face_reduced,
        "good_path": good_path_fixture,
    }
    for name, (build, _) in BAD_CYCLE_SHAPES.items():
        out[name] = build
    for k in range(5, 13):
        out[f"string_{k}"] = (lambda k=k: string_face(k, 1))
    return out


CORPUS = _corpus()


def write_corpus(directory: str | Path) -> list[Path]:
    """Write every corpus graph as ``<name>.pg`` into ``directory``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, build in CORPUS.items():
        path = directory / f"{name}.pg"
        write_pg(build(), path, comment=name)
        paths.append(path)
    return paths
