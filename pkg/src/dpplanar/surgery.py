"""Reductions on labelled plane graphs: delete internal vertices, then
identify two vertices across a face or insert a new arc inside a face.

:func:`check_safety` tests the two conditions a reduction must meet to be
usable against a minimal counterexample with outer cycle ``U``: it may not
identify two vertices of ``U`` nor join two of them by a new edge, and it may
not create a cycle of length at most 9.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from .cycles import Cycle, CycleLike, as_cycle, enumerate_cycles
from .errors import (
    BadPlan,
    BadSlot,
    FormatError,
    NotInternal,
    WouldCreateLoop,
    WouldMergeEdges,
)
from .labelling import LabelledGraph, Perm
from .plane_graph import PlaneGraph, classify

__all__ = [
    "Identify",
    "InsertArc",
    "SafetyReport",
    "SurgeryPlan",
    "apply",
    "check_safety",
    "parse_plan",
    "read_plan",
]

SHORT_CYCLE = 9


@dataclass(frozen=True)
class Identify:
    """Merge ``w`` into ``u`` (the merged vertex keeps the id ``u``)."""

    u: int
    w: int


@dataclass(frozen=True)
class InsertArc:
    """New arc ``u -> w`` labelled ``perm`` (identity when ``None``).

    ``after_u`` / ``after_w`` pick the corners: the new edge is placed just
    clockwise after that neighbour.  When omitted the corners are inferred
    from the unique face containing both ends.
    """

    u: int
    w: int
    perm: Perm | None = None
    after_u: int | None = None
    after_w: int | None = None


Action = Union[Identify, InsertArc, None]


@dataclass(frozen=True)
class SurgeryPlan:
    deletions: frozenset[int] = frozenset()
    action: Action = None

    def __post_init__(self):
        object.__setattr__(self, "deletions", frozenset(self.deletions))


# --------------------------------------------------------------------------
# embedding helpers


def _corners(g: PlaneGraph, v: int) -> list[tuple[int, int, int]]:
    """``(face, a, b)`` for every corner of ``v``: between neighbour ``a``
    and its clockwise successor ``b``."""
    nbrs = g.neighbors(v)
    return [
        (g.face_of_arc(v, b), nbrs[i - 1], b) for i, b in enumerate(nbrs)
    ]


def _shared_corner(g: PlaneGraph, u: int, w: int):
    """The corners of ``u`` and ``w`` on their unique common face."""
    cu, cw = _corners(g, u), _corners(g, w)
    common = {f for f, _, _ in cu} & {f for f, _, _ in cw}
    if not common:
        raise BadSlot(f"{u} and {w} share no face")
    if len(common) > 1:
        raise BadSlot(f"{u} and {w} share {len(common)} faces; the slot is ambiguous")
    f = common.pop()
    at_u = [c for c in cu if c[0] == f]
    at_w = [c for c in cw if c[0] == f]
    if len(at_u) > 1 or len(at_w) > 1:
        raise BadSlot(f"face {f} meets {u} or {w} more than once; the slot is ambiguous")
    return at_u[0], at_w[0]


def _fan(nbrs: tuple[int, ...], start: int) -> list[int]:
    i = nbrs.index(start)
    return list(nbrs[i:] + nbrs[:i])


def _delete(lg: LabelledGraph, gone: frozenset[int]):
    g = lg.graph
    for v in sorted(gone):
        if g.is_external(v):
            raise NotInternal(f"vertex {v} lies on the unbounded face")
    rot = {v: [w for w in nbrs if w not in gone] for v, nbrs in g.rotation.items() if v not in gone}
    sigma = {a: p for a, p in lg.sigma.items() if a[0] not in gone and a[1] not in gone}
    return rot, sigma


def apply(lg: LabelledGraph, plan: SurgeryPlan) -> LabelledGraph:
    """Carry out ``plan`` and return the new labelled plane graph.

    Signs of untouched edges are kept; edges moved onto an identified vertex
    keep theirs too.

    Raises:
        NotInternal: a deleted vertex lies on the unbounded face.
        WouldCreateLoop: identifying a vertex with itself or a neighbour, or
            inserting an arc from a vertex to itself.
        WouldMergeEdges: identifying two vertices with a common neighbour or
            inserting an arc parallel to an existing edge.
        BadSlot: the two vertices do not share exactly one face corner.
        BadPlan: an action names a deleted or unknown vertex.
    """
    g = lg.graph
    for v in plan.deletions:
        g.degree(v)  # raises UnknownVertex
    action = plan.action
    if action is not None:
        for v in (action.u, action.w):
            if v in plan.deletions:
                raise BadPlan(f"vertex {v} is both deleted and used by the action")
            g.degree(v)
    rot, sigma = _delete(lg, plan.deletions)
    outer = g.outer_dart
    k = lg.k

    if isinstance(action, Identify):
        u, w = action.u, action.w
        if u == w or w in rot[u]:
            raise WouldCreateLoop(f"identifying {u} and {w} would create a loop")
        if set(rot[u]) & set(rot[w]):
            raise WouldMergeEdges(f"{u} and {w} have a common neighbour")
        h = PlaneGraph(rot, outer)
        if rot[w] and rot[u]:
            (_, _, b), (_, _, d) = _shared_corner(h, u, w)
            merged = _fan(h.neighbors(u), b) + _fan(h.neighbors(w), d)
        else:
            merged = list(rot[u]) + list(rot[w])
        new_rot = {}
        for v, nbrs in rot.items():
            if v == w:
                continue
            new_rot[v] = merged if v == u else [u if x == w else x for x in nbrs]
        new_sigma = {}
        for (a, b_), p in sigma.items():
            new_sigma[(u if a == w else a, u if b_ == w else b_)] = p
        outer = tuple(u if x == w else x for x in outer)
        return LabelledGraph(PlaneGraph(new_rot, outer), new_sigma, k)

    if isinstance(action, InsertArc):
        u, w = action.u, action.w
        if u == w:
            raise WouldCreateLoop(f"an arc from {u} to itself is a loop")
        if w in rot[u]:
            raise WouldMergeEdges(f"{u}{w} is already an edge")
        h = PlaneGraph(rot, outer)
        if action.after_u is None and action.after_w is None:
            if rot[u] and rot[w]:
                (_, a, _), (_, c, _) = _shared_corner(h, u, w)
            else:
                a = rot[u][-1] if rot[u] else None
                c = rot[w][-1] if rot[w] else None
        else:
            a, c = action.after_u, action.after_w
            if a not in rot[u] or c not in rot[w]:
                raise BadSlot("slot corners must be neighbours of the arc's ends")
            fu = h.face_of_arc(u, _succ(rot[u], a))
            fw = h.face_of_arc(w, _succ(rot[w], c))
            if fu != fw:
                raise BadSlot(f"corners after {a} at {u} and after {c} at {w} lie on different faces")
        rot[u] = _insert_after(rot[u], a, w)
        rot[w] = _insert_after(rot[w], c, u)
        sigma[(u, w)] = action.perm if action.perm is not None else Perm.identity(k)
        return LabelledGraph(PlaneGraph(rot, outer), sigma, k)

    return LabelledGraph(PlaneGraph(rot, outer), sigma, k)


def _succ(nbrs: list[int], a: int) -> int:
    return nbrs[(nbrs.index(a) + 1) % len(nbrs)]


def _insert_after(nbrs: list[int], a: int | None, x: int) -> list[int]:
    if a is None:
        return [x]
    i = nbrs.index(a)
    return nbrs[: i + 1] + [x] + nbrs[i + 1 :]


# --------------------------------------------------------------------------
# safety


@dataclass
class SafetyReport:
    """Outcome of the two reduction conditions on the result of a plan.

    ``condition_a``: no two vertices of ``U`` identified and no new edge
    between two of them.  ``condition_b``: no new cycle of length at most 9.
    """

    result: LabelledGraph
    condition_a: bool
    condition_b: bool
    u_violations: list = field(default_factory=list)
    new_short_cycles: list[Cycle] = field(default_factory=list)
    in_class_G: bool = False
    boundary_preserved: bool = False

    @property
    def safe(self) -> bool:
        return self.condition_a and self.condition_b


def check_safety(lg: LabelledGraph, U: CycleLike | None, plan: SurgeryPlan) -> SafetyReport:
    """Apply ``plan`` and evaluate both reduction conditions.

    A cycle of the result is new when it uses an inserted arc, or passes
    through an identified vertex using one edge from each of the two
    original vertices.  Every cycle of length at most 9 is scanned.
    """
    g = lg.graph
    if U is None:
        U = g.boundary()
    on_u = set(as_cycle(g, U).vertices)
    result = apply(lg, plan)
    r = result.graph
    action = plan.action

    bad_a = []
    if isinstance(action, Identify) and action.u in on_u and action.w in on_u:
        bad_a.append(("identify", action.u, action.w))
    old_edges = set(g.edges)
    for a, b in r.edges:
        if (a, b) in old_edges:
            continue
        if a in on_u and b in on_u:
            bad_a.append(("edge", a, b))

    def is_new(c: Cycle) -> bool:
        es = set(c.edges())
        if isinstance(action, InsertArc):
            return tuple(sorted((action.u, action.w))) in es
        if isinstance(action, Identify):
            u, w = action.u, action.w
            if u not in c.vertices:
                return False
            vs = c.vertices
            i = vs.index(u)
            ends = (vs[i - 1], vs[(i + 1) % len(vs)])
            from_w = [x for x in ends if lg.graph.has_edge(w, x)]
            return len(from_w) == 1
        return False

    short = [c for c in enumerate_cycles(r, SHORT_CYCLE) if is_new(c)]
    new_u = {u if not (isinstance(action, Identify) and u == action.w) else action.u for u in on_u}
    preserved = r.boundary_is_cycle() and set(r.boundary()) == new_u
    return SafetyReport(
        result=result,
        condition_a=not bad_a,
        condition_b=not short,
        u_violations=bad_a,
        new_short_cycles=short,
        in_class_G=classify(r).in_class_G,
        boundary_preserved=preserved,
    )


# --------------------------------------------------------------------------
# plan files


def parse_plan(text: str, k: int = 3) -> SurgeryPlan:
    """Parse a plan file.

    Lines ``delete: v ...``, ``identify: u w`` and
    ``insert: u w [WORD [after_u after_w]]``; ``#`` starts a comment.  At most
    one action line is allowed.
    """
    deletions: set[int] = set()
    action: Action = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        parts = rest.split()
        key = key.strip()
        try:
            if key == "delete":
                deletions.update(int(x) for x in parts)
            elif key in ("identify", "insert"):
                if action is not None:
                    raise FormatError(f"line {lineno}: a plan has at most one action")
                if key == "identify":
                    if len(parts) != 2:
                        raise FormatError(f"line {lineno}: identify needs two vertices")
                    action = Identify(int(parts[0]), int(parts[1]))
                else:
                    if len(parts) not in (2, 3, 5):
                        raise FormatError(f"line {lineno}: insert: u w [WORD [after_u after_w]]")
                    perm = Perm.from_word(parts[2]) if len(parts) >= 3 else None
                    if perm is not None and perm.k != k:
                        raise FormatError(f"line {lineno}: {parts[2]} is not a permutation of 1..{k}")
                    after = (int(parts[3]), int(parts[4])) if len(parts) == 5 else (None, None)
                    action = InsertArc(int(parts[0]), int(parts[1]), perm, *after)
            else:
                raise FormatError(f"line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"line {lineno}: {exc}") from None
    return SurgeryPlan(frozenset(deletions), action)


def read_plan(path: str | Path, k: int = 3) -> SurgeryPlan:
    return parse_plan(Path(path).read_text(encoding="utf-8"), k)

