"""Plane graphs stored as rotation systems.

A plane graph is given by, for every vertex, the clockwise cyclic order of its
neighbours.  Every undirected edge ``uv`` becomes a pair of twin darts
``u->v`` and ``v->u``.  Faces are the orbits of the face-walk map: from a dart
``u->v`` the walk continues with the dart leaving ``v`` that follows ``v->u``
clockwise around ``v``.  One face, designated by a dart lying on it, plays the
role of the unbounded face ``f0``.

The graph is immutable; operations that change it build a new instance.
"""

from __future__ import annotations

import re
from collections import Counter, deque
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Sequence

import networkx as nx

from .errors import (
    DisconnectedWhenRequired,
    FormatError,
    InconsistentRotation,
    LoopOrMultiEdge,
    NonPlanarEmbedding,
    UnknownVertex,
)

__all__ = [
    "Dart",
    "GraphClassReport",
    "PlaneGraph",
    "FORBIDDEN_LENGTHS",
    "classify",
    "parse_pg",
    "read_pg",
    "write_pg",
]

FORBIDDEN_LENGTHS = frozenset({4, 7, 9})


class Dart(NamedTuple):
    id: int
    tail: int
    head: int
    twin: int


class PlaneGraph:
    """Connected (usually) simple plane graph given by a rotation system.

    Args:
        rotation: mapping ``vertex -> clockwise sequence of neighbours``.
        outer: the dart ``(tail, head)`` whose face walk is the unbounded
            face ``f0``.
        require_connected: raise :class:`DisconnectedWhenRequired` when the
            graph is not connected.

    Example:
        >>> g = PlaneGraph({1: [2, 3], 2: [3, 1], 3: [1, 2]}, outer=(1, 2))
        >>> g.n_faces, g.face_size(g.outer_face)
        (2, 3)
    """

    __slots__ = (
        "_rotation",
        "_darts",
        "_dart_index",
        "_faces",
        "_face_of",
        "_outer_dart",
        "_outer_face",
        "_external",
        "_hash",
    )

    def __init__(
        self,
        rotation: Mapping[int, Sequence[int]],
        outer: tuple[int, int],
        *,
        require_connected: bool = False,
    ):
        rot: dict[int, tuple[int, ...]] = {}
        for v in sorted(rotation):
            nbrs = tuple(int(w) for w in rotation[v])
            if int(v) in nbrs:
                raise LoopOrMultiEdge(f"vertex {v} lists itself as a neighbour")
            if len(set(nbrs)) != len(nbrs):
                dup = [w for w, c in Counter(nbrs).items() if c > 1]
                raise InconsistentRotation(f"dart {v}->{dup[0]} listed more than once")
            rot[int(v)] = nbrs
        for v, nbrs in rot.items():
            for w in nbrs:
                if w not in rot:
                    raise InconsistentRotation(f"dart {v}->{w} points to unknown vertex {w}")
                if v not in rot[w]:
                    raise InconsistentRotation(f"dart {v}->{w} has no twin {w}->{v}")
        self._rotation = rot

        index: dict[tuple[int, int], int] = {}
        pairs = []
        for v, nbrs in rot.items():
            for w in nbrs:
                index[(v, w)] = len(pairs)
                pairs.append((v, w))
        self._darts = tuple(Dart(i, t, h, index[(h, t)]) for i, (t, h) in enumerate(pairs))
        self._dart_index = index
        if not self._darts:
            raise InconsistentRotation("a plane graph needs at least one edge")

        # successor of each neighbour in the clockwise order around a vertex
        pos = {v: {w: i for i, w in enumerate(nbrs)} for v, nbrs in rot.items()}
        face_of = [-1] * len(self._darts)
        faces = []
        for d in self._darts:
            if face_of[d.id] >= 0:
                continue
            walk = []
            cur = d.id
            while face_of[cur] < 0:
                face_of[cur] = len(faces)
                walk.append(cur)
                t, h = pairs[cur]
                nbrs = rot[h]
                nxt = nbrs[(pos[h][t] + 1) % len(nbrs)]
                cur = index[(h, nxt)]
            if cur != d.id:  # pragma: no cover - permutation orbits always close
                raise InconsistentRotation("face walk did not close")
            faces.append(tuple(walk))
        self._faces = tuple(faces)
        self._face_of = tuple(face_of)

        outer = (int(outer[0]), int(outer[1]))
        if outer not in index:
            raise InconsistentRotation(f"outer dart {outer[0]}->{outer[1]} is not an edge")
        self._outer_dart = index[outer]
        self._outer_face = face_of[self._outer_dart]
        self._external = frozenset(self._darts[d].tail for d in self._faces[self._outer_face])
        self._hash = None

        n_components = self._count_components()
        if require_connected and n_components > 1:
            raise DisconnectedWhenRequired(f"graph has {n_components} components")
        isolated = sum(1 for nbrs in rot.values() if not nbrs)
        v_, e_, f_ = len(rot) - isolated, self.n_edges, len(faces)
        if v_ - e_ + f_ != 2 * (n_components - isolated):
            raise NonPlanarEmbedding(
                f"V - E + F = {v_ - e_ + f_}; rotation system is not a plane embedding"
            )

    # ------------------------------------------------------------------ basics
    @property
    def rotation(self) -> Mapping[int, tuple[int, ...]]:
        """Read-only view ``vertex -> clockwise neighbours``."""
        return MappingProxyType(self._rotation)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._rotation)

    @property
    def n_vertices(self) -> int:
        return len(self._rotation)

    @property
    def darts(self) -> tuple[Dart, ...]:
        return self._darts

    @property
    def n_edges(self) -> int:
        return len(self._darts) // 2

    @property
    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges as ``(min, max)`` pairs, sorted."""
        return sorted((d.tail, d.head) for d in self._darts if d.tail < d.head)

    @property
    def outer_dart(self) -> tuple[int, int]:
        d = self._darts[self._outer_dart]
        return d.tail, d.head

    @property
    def outer_face(self) -> int:
        return self._outer_face

    @property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Faces as tuples of dart ids in walk order."""
        return self._faces

    @property
    def n_faces(self) -> int:
        return len(self._faces)

    def dart(self, tail: int, head: int) -> int:
        try:
            return self._dart_index[(tail, head)]
        except KeyError:
            raise UnknownVertex(f"no dart {tail}->{head}") from None

    def face_of_dart(self, dart: int) -> int:
        return self._face_of[dart]

    def face_of_arc(self, tail: int, head: int) -> int:
        """Face lying to the left of the walk step ``tail -> head``."""
        return self._face_of[self.dart(tail, head)]

    def face_size(self, f: int) -> int:
        return len(self._faces[f])

    def face_vertices(self, f: int) -> tuple[int, ...]:
        """Vertices met along the walk of face ``f`` (with repetitions)."""
        return tuple(self._darts[d].tail for d in self._faces[f])

    def face_edges(self, f: int) -> list[tuple[int, int]]:
        return [tuple(sorted((self._darts[d].tail, self._darts[d].head))) for d in self._faces[f]]

    def face_is_cycle(self, f: int) -> bool:
        vs = self.face_vertices(f)
        return len(vs) >= 3 and len(set(vs)) == len(vs)

    def _check(self, v: int) -> None:
        if v not in self._rotation:
            raise UnknownVertex(f"unknown vertex {v}")

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbours of ``v`` in clockwise order."""
        self._check(v)
        return self._rotation[v]

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self._rotation[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._dart_index

    def is_external(self, v: int) -> bool:
        self._check(v)
        return v in self._external

    @property
    def external_vertices(self) -> frozenset[int]:
        return self._external

    def faces_at(self, v: int) -> list[int]:
        """Face ids at the corners of ``v``, one per outgoing dart (clockwise)."""
        self._check(v)
        # the corner between a neighbour and its clockwise successor w lies on the
        # face of the dart v->w
        return [self._face_of[self._dart_index[(v, w)]] for w in self._rotation[v]]

    def face_sizes_at(self, v: int) -> tuple[int, ...]:
        """Sorted multiset of sizes of the faces at the corners of ``v``."""
        return tuple(sorted(len(self._faces[f]) for f in self.faces_at(v)))

    def boundary(self) -> tuple[int, ...]:
        """Vertex sequence of the walk of ``f0``."""
        return self.face_vertices(self._outer_face)

    def boundary_is_cycle(self) -> bool:
        return self.face_is_cycle(self._outer_face)

    # ------------------------------------------------------------ connectivity
    def _count_components(self) -> int:
        seen: set[int] = set()
        count = 0
        for s in self._rotation:
            if s in seen:
                continue
            count += 1
            seen.add(s)
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w in self._rotation[v]:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
        return count

    def is_connected(self) -> bool:
        return self._count_components() == 1

    def is_two_connected(self) -> bool:
        return self.n_vertices >= 3 and nx.is_biconnected(self.to_networkx())

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(self._rotation)
        G.add_edges_from(self.edges)
        return G

    def cycle_space_dimension(self) -> int:
        return self.n_edges - self.n_vertices + self._count_components()

    # ---------------------------------------------------------------- helpers
    def subgraph(self, vertices: Iterable[int]) -> "PlaneGraph":
        """Induced subgraph with the inherited (restricted) rotation system.

        The unbounded face is kept when its designating dart survives;
        otherwise the first remaining dart designates it.
        """
        keep = set(vertices)
        rot = {v: [w for w in self._rotation[v] if w in keep] for v in self._rotation if v in keep}
        outer = self.outer_dart
        if not (outer[0] in keep and outer[1] in keep):
            outer = next(((v, nbrs[0]) for v, nbrs in rot.items() if nbrs), None)
            if outer is None:
                raise InconsistentRotation("subgraph has no edges")
        return PlaneGraph(rot, outer)

    def with_outer(self, tail: int, head: int) -> "PlaneGraph":
        """Same embedding with a different unbounded face."""
        return PlaneGraph(self._rotation, (tail, head))

    def relabel(self, mapping: Mapping[int, int]) -> "PlaneGraph":
        rot = {mapping[v]: [mapping[w] for w in nbrs] for v, nbrs in self._rotation.items()}
        t, h = self.outer_dart
        return PlaneGraph(rot, (mapping[t], mapping[h]))

    def compact(self) -> tuple["PlaneGraph", dict[int, int]]:
        """Relabel vertices to ``1..n`` preserving their order."""
        mapping = {v: i for i, v in enumerate(self._rotation, start=1)}
        return self.relabel(mapping), mapping

    def canonical_code(self, *, keep_outer: bool = True) -> tuple:
        """Orientation-preserving isomorphism invariant of the embedding.

        Two plane graphs have equal codes iff some bijection of vertices maps
        one rotation system onto the other (and, with ``keep_outer``, the
        unbounded face onto the unbounded face).
        """
        if keep_outer:
            starts = self._faces[self._outer_face]
        else:
            starts = range(len(self._darts))
        best = None
        for d0 in starts:
            code = self._code_from(d0)
            if best is None or code < best:
                best = code
        return best

    def _code_from(self, d0: int) -> tuple:
        rot = self._rotation
        start = self._darts[d0]
        number = {start.tail: 1}
        order = [(start.tail, start.head)]
        code = []
        i = 0
        while i < len(order):
            v, first = order[i]
            i += 1
            nbrs = rot[v]
            k = nbrs.index(first)
            row = []
            for j in range(len(nbrs)):
                w = nbrs[(k + j) % len(nbrs)]
                if w not in number:
                    number[w] = len(number) + 1
                    order.append((w, v))
                row.append(number[w])
            code.append(tuple(row))
        return (len(rot), tuple(code))

    # ----------------------------------------------------------- comparisons
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return self._rotation == other._rotation and self.outer_dart == other.outer_dart

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((tuple(self._rotation.items()), self.outer_dart))
        return self._hash

    def __repr__(self) -> str:
        return (
            f"PlaneGraph(n={self.n_vertices}, m={self.n_edges}, "
            f"faces={self.n_faces}, outer={self.outer_dart})"
        )

    # ------------------------------------------------------------- file format
    def to_pg(self, comment: str | None = None) -> str:
        lines = []
        if comment:
            lines.extend(f"# {c}" for c in comment.splitlines())
        lines.append(f"vertices: {self.n_vertices}")
        for v, nbrs in self._rotation.items():
            lines.append(f"{v}: " + " ".join(map(str, nbrs)))
        t, h = self.outer_dart
        lines.append(f"outer: {t} {h}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_pg(cls, text: str, **kwargs) -> "PlaneGraph":
        return parse_pg(text, **kwargs)


_LINE = re.compile(r"^\s*(\w+)\s*:\s*(.*)$")


def parse_pg(text: str, **kwargs) -> PlaneGraph:
    """Parse the line-oriented ``.pg`` format.

    ``vertices: n``, then ``i: j k l ...`` (clockwise neighbours) for each
    vertex, then ``outer: i j``.  ``#`` starts a comment.
    """
    n = None
    outer = None
    rotation: dict[int, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            raise FormatError(f"line {lineno}: cannot parse {raw!r}")
        key, rest = m.group(1), m.group(2).split()
        try:
            if key == "vertices":
                n = int(rest[0])
            elif key == "outer":
                outer = (int(rest[0]), int(rest[1]))
            else:
                v = int(key)
                if v < 1:
                    raise FormatError(f"line {lineno}: vertex ids are 1-based")
                if v in rotation:
                    raise InconsistentRotation(f"line {lineno}: vertex {v} listed twice")
                rotation[v] = [int(w) for w in rest]
        except (IndexError, ValueError) as exc:
            if isinstance(exc, (FormatError, InconsistentRotation)):
                raise
            raise FormatError(f"line {lineno}: cannot parse {raw!r}") from None
    if n is None:
        raise FormatError("missing 'vertices:' line")
    if outer is None:
        raise FormatError("missing 'outer:' line")
    if len(rotation) != n:
        raise FormatError(f"'vertices: {n}' but {len(rotation)} rotation lines")
    return PlaneGraph(rotation, outer, **kwargs)


def read_pg(path: str | Path, **kwargs) -> PlaneGraph:
    return parse_pg(Path(path).read_text(encoding="utf-8"), **kwargs)


def write_pg(g: PlaneGraph, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(g.to_pg(comment), encoding="utf-8")


@dataclass(frozen=True)
class GraphClassReport:
    is_simple: bool
    is_connected: bool
    is_two_connected: bool
    forbidden_cycles_found: list
    in_class_G: bool


def classify(g: PlaneGraph, forbidden: Iterable[int] = FORBIDDEN_LENGTHS) -> GraphClassReport:
    """Membership report for the class of connected plane graphs without
    cycles of the forbidden lengths (4, 7 and 9 by default)."""
    from .cycles import enumerate_cycles

    forbidden = frozenset(forbidden)
    found = [c for c in enumerate_cycles(g, max(forbidden)) if c.length in forbidden]
    # loops and parallel edges are rejected at construction time
    simple = True
    connected = g.is_connected()
    return GraphClassReport(
        is_simple=simple,
        is_connected=connected,
        is_two_connected=g.is_two_connected(),
        forbidden_cycles_found=found,
        in_class_G=simple and connected and not found,
    )
