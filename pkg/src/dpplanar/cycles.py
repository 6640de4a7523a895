"""Bounded-length cycle enumeration and the geometry of a cycle in a plane graph."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .errors import NotACycle
from .plane_graph import PlaneGraph

__all__ = [
    "Cycle",
    "CycleSides",
    "SplitReport",
    "SplittingLemmaReport",
    "as_cycle",
    "canonical",
    "chords",
    "check_splitting_lemma",
    "cycle_sides",
    "enumerate_cycles",
    "exterior",
    "interior",
    "is_separating",
    "splitting_paths",
]


def canonical(seq: Sequence[int]) -> tuple[int, ...]:
    """Least rotation of the lexicographically smaller orientation."""
    seq = tuple(seq)
    i = seq.index(min(seq))
    fwd = seq[i:] + seq[:i]
    rev = (fwd[0],) + tuple(reversed(fwd[1:]))
    return min(fwd, rev)


@dataclass(frozen=True, order=True)
class Cycle:
    vertices: tuple[int, ...]

    @classmethod
    def of(cls, seq: Iterable[int]) -> "Cycle":
        return cls(canonical(list(seq)))

    @property
    def length(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.vertices

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [tuple(sorted((vs[i], vs[(i + 1) % len(vs)]))) for i in range(len(vs))]

    def arcs(self) -> list[tuple[int, int]]:
        """Consecutive pairs in the stored orientation."""
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def __str__(self) -> str:
        return "[" + " ".join(map(str, self.vertices)) + "]"


CycleLike = Union[Cycle, Sequence[int]]


def as_cycle(g: PlaneGraph, c: CycleLike) -> Cycle:
    """Validate ``c`` as a cycle of ``g`` and return it in canonical form."""
    vs = tuple(c.vertices if isinstance(c, Cycle) else c)
    if len(vs) < 3 or len(set(vs)) != len(vs):
        raise NotACycle(f"{vs} is not a cycle")
    for i, v in enumerate(vs):
        w = vs[(i + 1) % len(vs)]
        if not g.has_edge(v, w):
            raise NotACycle(f"{v}{w} is not an edge of the graph")
    return c if isinstance(c, Cycle) else Cycle.of(vs)


def enumerate_cycles(g: PlaneGraph, max_len: int, *, min_len: int = 3) -> list[Cycle]:
    """All simple cycles with ``min_len <= length <= max_len``, each once.

    Depth-first search from every start vertex ``s`` through vertices larger
    than ``s``, pruned by the distance back to ``s``.
    """
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    rot = g.rotation
    out: list[Cycle] = []
    for s in rot:
        # distances back to s inside the vertices >= s
        dist = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            if dist[v] >= max_len:
                continue
            for w in rot[v]:
                if w > s and w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        path = [s]
        on_path = {s}

        def extend(v: int) -> None:
            for w in rot[v]:
                if w == s:
                    if len(path) >= max(3, min_len) and path[1] < path[-1]:
                        out.append(Cycle(tuple(path)))
                    continue
                if w < s or w in on_path or w not in dist:
                    continue
                # path grows to len(path)+1 vertices; closing needs dist[w] more edges
                if len(path) + dist[w] > max_len:
                    continue
                path.append(w)
                on_path.add(w)
                extend(w)
                path.pop()
                on_path.discard(w)

        extend(s)
    out.sort(key=lambda c: (c.length, c.vertices))
    return out


# --------------------------------------------------------------------------
# sides of a cycle


@dataclass(frozen=True)
class CycleSides:
    """Faces and vertices on either side of a cycle; exterior holds ``f0``."""

    cycle: Cycle
    interior_faces: frozenset[int]
    exterior_faces: frozenset[int]
    interior: frozenset[int]
    exterior: frozenset[int]

    @property
    def separating(self) -> bool:
        return bool(self.interior) and bool(self.exterior)


def cycle_sides(g: PlaneGraph, c: CycleLike) -> CycleSides:
    cyc = as_cycle(g, c)
    cedges = set(cyc.edges())
    arcs = cyc.arcs()
    darts = g.darts

    def flood(seed: set[int]) -> set[int]:
        seen = set(seed)
        stack = list(seed)
        while stack:
            f = stack.pop()
            for d in g.faces[f]:
                dd = darts[d]
                if (min(dd.tail, dd.head), max(dd.tail, dd.head)) in cedges:
                    continue
                nf = g.face_of_dart(dd.twin)
                if nf not in seen:
                    seen.add(nf)
                    stack.append(nf)
        return seen

    left = flood({g.face_of_arc(u, v) for u, v in arcs})
    right = flood({g.face_of_arc(v, u) for u, v in arcs})
    if left & right:  # pragma: no cover - impossible for a plane embedding
        raise NotACycle(f"{cyc} does not separate the faces of the embedding")
    if g.outer_face in left:
        left, right = right, left
    on_c = set(cyc.vertices)

    def verts(faces: set[int]) -> frozenset[int]:
        return frozenset(v for f in faces for v in g.face_vertices(f) if v not in on_c)

    return CycleSides(cyc, frozenset(left), frozenset(right), verts(left), verts(right))


def interior(g: PlaneGraph, c: CycleLike) -> frozenset[int]:
    """Vertices strictly inside ``c`` (on the side away from ``f0``)."""
    return cycle_sides(g, c).interior


def exterior(g: PlaneGraph, c: CycleLike) -> frozenset[int]:
    return cycle_sides(g, c).exterior


def is_separating(g: PlaneGraph, c: CycleLike) -> bool:
    return cycle_sides(g, c).separating


# --------------------------------------------------------------------------
# chords and splitting paths


def chords(g: PlaneGraph, c: CycleLike) -> list[tuple[int, int]]:
    cyc = as_cycle(g, c)
    on_c = set(cyc.vertices)
    cedges = set(cyc.edges())
    return [e for e in g.edges if e[0] in on_c and e[1] in on_c and e not in cedges]


@dataclass(frozen=True)
class SplitReport:
    """A splitting path and the two cycles it cuts the reference cycle into.

    ``cycles`` and ``lengths`` are ordered by increasing length.
    """

    path: tuple[int, ...]
    cycles: tuple[Cycle, Cycle]
    lengths: tuple[int, int]

    @property
    def path_length(self) -> int:
        return len(self.path) - 1


def _split(cyc: Cycle, path: tuple[int, ...]) -> SplitReport:
    vs = cyc.vertices
    n = len(vs)
    i, j = vs.index(path[0]), vs.index(path[-1])
    # from the far end back to the start, one way round and the other
    fwd = [vs[(j + s) % n] for s in range(1, (i - j) % n)]
    bwd = [vs[(j - s) % n] for s in range(1, (j - i) % n)]
    a = Cycle.of(list(path) + fwd)
    b = Cycle.of(list(path) + bwd)
    a, b = sorted((a, b), key=lambda x: (x.length, x.vertices))
    return SplitReport(path, (a, b), (a.length, b.length))


def splitting_paths(
    g: PlaneGraph, c: CycleLike, max_len: int, *, min_len: int = 1
) -> list[SplitReport]:
    """Paths meeting ``c`` exactly in their two ends, of length ``min_len..max_len``.

    Length-1 splitting paths are the chords.  Each path is reported once,
    oriented from its smaller end vertex.
    """
    cyc = as_cycle(g, c)
    on_c = set(cyc.vertices)
    rot = g.rotation
    out = []
    for u in cyc.vertices:
        path = [u]
        used = {u}

        def extend(v: int) -> None:
            for w in rot[v]:
                if w in used:
                    continue
                if w in on_c:
                    length = len(path)
                    if min_len <= length <= max_len and u < w:
                        if length > 1 or not _consecutive(cyc, u, w):
                            out.append(_split(cyc, tuple(path) + (w,)))
                    continue
                if len(path) < max_len:
                    path.append(w)
                    used.add(w)
                    extend(w)
                    path.pop()
                    used.discard(w)

        extend(u)
    out.sort(key=lambda r: (r.path_length, r.path))
    return out


def _consecutive(cyc: Cycle, u: int, w: int) -> bool:
    vs = cyc.vertices
    i, j = vs.index(u), vs.index(w)
    return (i - j) % len(vs) in (1, len(vs) - 1)


@dataclass
class SplittingLemmaReport:
    cycle: Cycle
    checked: list[SplitReport] = field(default_factory=list)
    violations: list[SplitReport] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations


def check_splitting_lemma(g: PlaneGraph, u: CycleLike) -> SplittingLemmaReport:
    """Every splitting path of length 2..5 must leave a side of length
    between ``|P|+1`` and ``2|P|-1``; collects the paths where none does."""
    cyc = as_cycle(g, u)
    report = SplittingLemmaReport(cyc)
    for sp in splitting_paths(g, cyc, 5, min_len=2):
        p = sp.path_length
        report.checked.append(sp)
        if not any(p + 1 <= L <= 2 * p - 1 for L in sp.lengths):
            report.violations.append(sp)
    return report
