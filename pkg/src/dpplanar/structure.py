"""Detectors for claws, biclaws, good cycles, special subgraphs, strings and
the structural properties a minimal counterexample must have."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Literal, Mapping

from .cycles import (
    Cycle,
    CycleLike,
    as_cycle,
    check_splitting_lemma,
    chords,
    cycle_sides,
    enumerate_cycles,
)
from .errors import BadPrecoloring, BoundaryNotCycle, BoundaryNotGood, CycleTooLong
from .labelling import LabelledGraph, is_positive
from .plane_graph import PlaneGraph

__all__ = [
    "BiclawFinding",
    "ClawFinding",
    "LemmaPredicates",
    "PREDICATE_NAMES",
    "SpecialSubgraph",
    "StringFinding",
    "StringLemmaReport",
    "bad_3_faces",
    "bad_vertices",
    "check_string_lemma",
    "classify_bad_cycle",
    "find_biclaws",
    "find_claws",
    "h",
    "is_good_cycle",
    "lemma_predicates",
    "light_faces",
    "special_subgraphs",
    "strings",
]

Side = Literal["interior", "exterior", "both"]
MAX_GOOD_LENGTH = 13


@dataclass(frozen=True)
class ClawFinding:
    center: int
    attachments: tuple[int, int, int]
    cells: tuple[int, int, int]
    side: str


@dataclass(frozen=True)
class BiclawFinding:
    centers: tuple[int, int]
    attachments: tuple[tuple[int, int], tuple[int, int]]
    cells: tuple[int, int, int, int]
    side: str


def _candidates(g: PlaneGraph, cyc: Cycle, side: Side) -> dict[int, str]:
    sides = cycle_sides(g, cyc)
    out = {}
    if side in ("interior", "both"):
        out.update((v, "interior") for v in sides.interior)
    if side in ("exterior", "both"):
        out.update((v, "exterior") for v in sides.exterior)
    if side not in ("interior", "exterior", "both"):
        raise ValueError(f"side must be interior, exterior or both, not {side!r}")
    return out


def _cells(g: PlaneGraph, cyc: Cycle, spokes: Iterable[tuple[int, int]], centers) -> tuple[int, ...]:
    """Sizes of the faces of the sub-embedding ``C + spokes`` that meet a centre."""
    keep = set(cyc.edges()) | {tuple(sorted(e)) for e in spokes}
    verts = set(cyc.vertices) | set(centers)
    rot = g.rotation
    sub = {
        v: [w for w in rot[v] if (min(v, w), max(v, w)) in keep]
        for v in verts
    }
    a, b = cyc.vertices[0], cyc.vertices[1]
    h_ = PlaneGraph(sub, (a, b))
    sizes = [
        h_.face_size(f)
        for f in range(h_.n_faces)
        if any(c in h_.face_vertices(f) for c in centers)
    ]
    return tuple(sorted(sizes))


def _order_on(cyc: Cycle, vs) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(cyc.vertices)}
    return tuple(sorted(vs, key=pos.__getitem__))


def find_claws(g: PlaneGraph, c: CycleLike, side: Side = "interior") -> list[ClawFinding]:
    cyc = as_cycle(g, c)
    on_c = set(cyc.vertices)
    out = []
    for v, where in sorted(_candidates(g, cyc, side).items()):
        hits = _order_on(cyc, [w for w in g.neighbors(v) if w in on_c])
        for triple in combinations(hits, 3):
            cells = _cells(g, cyc, [(v, w) for w in triple], [v])
            out.append(ClawFinding(v, triple, cells, where))
    return out


def find_biclaws(g: PlaneGraph, c: CycleLike, side: Side = "interior") -> list[BiclawFinding]:
    cyc = as_cycle(g, c)
    on_c = set(cyc.vertices)
    cand = _candidates(g, cyc, side)
    out = []
    for u1 in sorted(cand):
        for u2 in sorted(g.neighbors(u1)):
            if u2 <= u1 or u2 not in cand:
                continue
            hits1 = _order_on(cyc, [w for w in g.neighbors(u1) if w in on_c])
            hits2 = _order_on(cyc, [w for w in g.neighbors(u2) if w in on_c])
            for p1 in combinations(hits1, 2):
                for p2 in combinations(hits2, 2):
                    spokes = [(u1, u2)] + [(u1, w) for w in p1] + [(u2, w) for w in p2]
                    cells = _cells(g, cyc, spokes, [u1, u2])
                    out.append(BiclawFinding((u1, u2), (p1, p2), cells, cand[u1]))
    return out


def _has_claw_or_biclaw(g: PlaneGraph, cyc: Cycle, side: Side) -> bool:
    on_c = set(cyc.vertices)
    cand = _candidates(g, cyc, side)
    hits = {v: sum(1 for w in g.neighbors(v) if w in on_c) for v in cand}
    if any(n >= 3 for n in hits.values()):
        return True
    return any(
        hits[u] >= 2 and w in cand and hits[w] >= 2
        for u in cand
        for w in g.neighbors(u)
    )


def is_good_cycle(g: PlaneGraph, c: CycleLike, side: Side = "interior") -> bool:
    """A cycle of length at most 13 with neither a claw nor a biclaw.

    Only centres on ``side`` are considered; the default looks at the side
    away from the unbounded face.
    """
    cyc = as_cycle(g, c)
    if cyc.length > MAX_GOOD_LENGTH:
        raise CycleTooLong(f"{cyc} has length {cyc.length} > {MAX_GOOD_LENGTH}")
    return not _has_claw_or_biclaw(g, cyc, side)


def classify_bad_cycle(g: PlaneGraph, c: CycleLike, side: Side = "interior") -> frozenset:
    """Cell tuples of every claw and biclaw of ``c`` (empty when ``c`` is good)."""
    cyc = as_cycle(g, c)
    if cyc.length > MAX_GOOD_LENGTH:
        raise CycleTooLong(f"{cyc} has length {cyc.length} > {MAX_GOOD_LENGTH}")
    shapes = {f.cells for f in find_claws(g, cyc, side)}
    shapes |= {f.cells for f in find_biclaws(g, cyc, side)}
    return frozenset(shapes)


# --------------------------------------------------------------------------
# special subgraphs, light faces, bad 3-faces


@dataclass(frozen=True)
class SpecialSubgraph:
    """A 3-face and a 5-face sharing the edge ``v2 v6``.

    ``vertices`` is ``(v1, ..., v6)``: ``v1`` is the apex of the triangle and
    ``v2 .. v6`` run around the 5-face.
    """

    triangle_face: int
    five_face: int
    vertices: tuple[int, int, int, int, int, int]
    shared_edge: tuple[int, int]

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        v1, v2, v3, v4, v5, v6 = self.vertices
        pairs = [(v2, v1), (v1, v6), (v2, v3), (v3, v4), (v4, v5), (v5, v6), (v6, v2)]
        return frozenset(tuple(sorted(p)) for p in pairs)


def special_subgraphs(g: PlaneGraph) -> list[SpecialSubgraph]:
    """All adjacent (3-face, 5-face) pairs, neither of them the unbounded face."""
    out = []
    darts = g.darts
    for f3 in range(g.n_faces):
        if f3 == g.outer_face or g.face_size(f3) != 3 or not g.face_is_cycle(f3):
            continue
        for d in g.faces[f3]:
            twin = darts[darts[d].twin]
            f5 = g.face_of_dart(twin.id)
            if f5 in (f3, g.outer_face) or g.face_size(f5) != 5 or not g.face_is_cycle(f5):
                continue
            walk = g.faces[f5]
            i = walk.index(twin.id)
            # the 5-face walk read from the head of the shared dart
            ring = [darts[walk[(i + 1 + s) % 5]].tail for s in range(5)]
            apex = next(v for v in g.face_vertices(f3) if v not in (twin.tail, twin.head))
            if apex in ring:
                continue
            v2, v3, v4, v5, v6 = reversed(ring)
            out.append(
                SpecialSubgraph(f3, f5, (apex, v2, v3, v4, v5, v6), tuple(sorted((v2, v6))))
            )
    return out


def h(g: PlaneGraph, v: int, specials: list[SpecialSubgraph] | None = None) -> int:
    """Number of special subgraphs containing ``v``."""
    if specials is None:
        specials = special_subgraphs(g)
    return sum(1 for s in specials if v in s.vertex_set)


def _internal_3(g: PlaneGraph, v: int) -> bool:
    return g.degree(v) == 3 and not g.is_external(v)


def light_faces(g: PlaneGraph) -> frozenset[int]:
    """Faces all of whose incident vertices are internal 3-vertices."""
    return frozenset(
        f
        for f in range(g.n_faces)
        if f != g.outer_face and all(_internal_3(g, v) for v in g.face_vertices(f))
    )


def _special_faces(specials: list[SpecialSubgraph]) -> set[int]:
    out = set()
    for s in specials:
        out.update((s.triangle_face, s.five_face))
    return out


def bad_3_faces(lg: LabelledGraph, specials: list[SpecialSubgraph] | None = None) -> frozenset[int]:
    """Positive, light, non-special 3-faces."""
    g = lg.graph
    if specials is None:
        specials = special_subgraphs(g)
    special = _special_faces(specials)
    return frozenset(
        f
        for f in light_faces(g)
        if g.face_size(f) == 3 and f not in special and is_positive(lg, g.face_vertices(f))
    )


def bad_vertices(lg: LabelledGraph, specials: list[SpecialSubgraph] | None = None) -> frozenset[int]:
    g = lg.graph
    return frozenset(v for f in bad_3_faces(lg, specials) for v in g.face_vertices(f))


# --------------------------------------------------------------------------
# strings


@dataclass(frozen=True)
class StringFinding:
    face: int
    path: tuple[int, ...]
    anchors: tuple[int, int]

    @property
    def k(self) -> int:
        return len(self.path)


def strings(g: PlaneGraph, f: int) -> list[StringFinding]:
    """Maximal runs of 2-vertices along the walk of face ``f``.

    A face made only of 2-vertices (a cycle component) has no anchors and so
    carries no strings.
    """
    vs = g.face_vertices(f)
    n = len(vs)
    two = [g.degree(v) == 2 for v in vs]
    if all(two) or not any(two):
        return []
    start = two.index(False)
    out = []
    i = 0
    while i < n:
        p = (start + i) % n
        if not two[p]:
            i += 1
            continue
        run = []
        while two[(start + i) % n]:
            run.append(vs[(start + i) % n])
            i += 1
        first = (start + i - len(run) - 1) % n
        last = (start + i) % n
        out.append(StringFinding(f, tuple(run), (vs[first], vs[last])))
    return out


@dataclass
class StringLemmaReport:
    flags: list[StringFinding] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.flags


def check_string_lemma(g: PlaneGraph) -> StringLemmaReport:
    """Flag every t-string on a bounded k-face (3 <= k <= 12) with
    ``t >= (k - 1) // 2``."""
    report = StringLemmaReport()
    for f in range(g.n_faces):
        k = g.face_size(f)
        if f == g.outer_face or not 3 <= k <= 12:
            continue
        report.flags.extend(s for s in strings(g, f) if s.k >= (k - 1) // 2)
    return report


# --------------------------------------------------------------------------
# properties of a minimal counterexample

PREDICATE_NAMES = (
    "boundary_chordless",
    "no_separating_good_cycle",
    "two_connected",
    "internal_min_degree",
    "splitting_paths",
    "no_long_strings",
    "no_negative_light_3face",
    "no_light_5face",
    "bad_outer_neighbor_not_bad",
    "good_path",
)


@dataclass
class LemmaPredicates:
    """One boolean per structural property, with the offending witnesses."""

    values: dict[str, bool]
    details: dict[str, list]

    @property
    def failed(self) -> frozenset[str]:
        return frozenset(k for k, v in self.values.items() if not v)

    @property
    def all_hold(self) -> bool:
        return all(self.values.values())

    def __getitem__(self, name: str) -> bool:
        return self.values[name]


def boundary_cycle(g: PlaneGraph) -> Cycle:
    if not g.boundary_is_cycle():
        raise BoundaryNotCycle("the boundary of the unbounded face is not a cycle")
    return Cycle.of(g.boundary())


def check_precoloring(lg: LabelledGraph, phi: Mapping[int, int], vertices) -> None:
    """Raise :class:`BadPrecoloring` unless ``phi`` properly colours exactly ``vertices``."""
    vertices = set(vertices)
    if set(phi) != vertices:
        raise BadPrecoloring("precoloring must colour exactly the boundary vertices")
    for v, c in phi.items():
        if not 1 <= c <= lg.k:
            raise BadPrecoloring(f"colour {c} of vertex {v} is outside 1..{lg.k}")
    for (a, b), p in lg.sigma.items():
        if a in vertices and b in vertices and p(phi[a]) == phi[b]:
            raise BadPrecoloring(f"arc {a}->{b} is violated by the precoloring")


def lemma_predicates(
    lg: LabelledGraph,
    U: CycleLike | None = None,
    phi0: Mapping[int, int] | None = None,
) -> LemmaPredicates:
    """Evaluate every structural property of a minimal counterexample on ``lg``.

    ``U`` defaults to the boundary of the unbounded face and must be a good
    cycle.  ``phi0``, when given, must be a proper colouring of ``U``.
    """
    g = lg.graph
    if U is None:
        U = boundary_cycle(g)
    U = as_cycle(g, U)
    if U.length > MAX_GOOD_LENGTH or not is_good_cycle(g, U):
        raise BoundaryNotGood(f"{U} is not a good cycle")
    if phi0 is not None:
        check_precoloring(lg, phi0, U.vertices)

    specials = special_subgraphs(g)
    special = _special_faces(specials)
    light = light_faces(g)
    bad_faces = bad_3_faces(lg, specials)
    bad = {v for f in bad_faces for v in g.face_vertices(f)}
    values: dict[str, bool] = {}
    details: dict[str, list] = {}

    def record(name, witnesses):
        details[name] = list(witnesses)
        values[name] = not details[name]

    record("boundary_chordless", chords(g, U))

    sep_good = []
    for c in enumerate_cycles(g, MAX_GOOD_LENGTH):
        if cycle_sides(g, c).separating and is_good_cycle(g, c):
            sep_good.append(c)
    record("no_separating_good_cycle", sep_good)

    record("two_connected", [] if g.is_two_connected() else [g.n_vertices])
    record(
        "internal_min_degree",
        [v for v in g.vertices if not g.is_external(v) and g.degree(v) < 3],
    )
    record("splitting_paths", check_splitting_lemma(g, U).violations)
    record("no_long_strings", check_string_lemma(g).flags)
    record(
        "no_negative_light_3face",
        [
            f
            for f in sorted(light)
            if g.face_size(f) == 3 and not is_positive(lg, g.face_vertices(f))
        ],
    )
    record("no_light_5face", [f for f in sorted(light) if g.face_size(f) == 5])

    outer_bad = []
    for f in sorted(bad_faces):
        tri = set(g.face_vertices(f))
        for v in g.face_vertices(f):
            for w in g.neighbors(v):
                if w not in tri and w in bad:
                    outer_bad.append((v, w))
    record("bad_outer_neighbor_not_bad", outer_bad)

    record("good_path", _good_path_violations(lg, bad_faces, special))
    return LemmaPredicates(values, details)


def _good_path_violations(lg: LabelledGraph, bad_faces, special_faces) -> list:
    """Paths ``u v x y z`` with ``uv`` on a bad 3-face, ``x``, ``y`` internal
    3-vertices off that face, and ``z`` an internal 3-vertex or a neighbour of
    ``x`` closing a non-special triangle ``xyz``."""
    g = lg.graph
    triangle_faces = {}
    for f in range(g.n_faces):
        if f != g.outer_face and g.face_size(f) == 3:
            triangle_faces[frozenset(g.face_vertices(f))] = f
    out = []
    for f in sorted(bad_faces):
        tri = g.face_vertices(f)
        for u, v in combinations(tri, 2):
            for a, b in ((u, v), (v, u)):
                for x in g.neighbors(b):
                    if x in tri or not _internal_3(g, x):
                        continue
                    for y in g.neighbors(x):
                        if y in (a, b) or not _internal_3(g, y):
                            continue
                        for z in g.neighbors(y):
                            if z in (a, b, x):
                                continue
                            if _internal_3(g, z):
                                out.append((a, b, x, y, z))
                            elif g.has_edge(z, x):
                                face = triangle_faces.get(frozenset((x, y, z)))
                                if face is None or face not in special_faces:
                                    out.append((a, b, x, y, z))
    return out
