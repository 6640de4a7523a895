"""Colouring solvers for labelled plane graphs.

A colouring ``f`` of a labelled graph satisfies ``sigma(u, v)(f(u)) != f(v)``
on every arc.  :func:`solve` extends a partial colouring by backtracking
with forward checking; :func:`is_dp_k_colorable` runs it over every
signature class.
"""

from __future__ import annotations

import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import (
    BadK,
    BoundaryNotGood,
    CycleTooLong,
    Disconnected,
    FormatError,
    NotInClassG,
    PrecoloringConflict,
)
from .labelling import LabelledGraph, SignatureClassIterator, all_perms
from .plane_graph import PlaneGraph, classify

__all__ = [
    "DPCheckResult",
    "SolveResult",
    "TheoremReport",
    "degeneracy_core",
    "extend_boundary",
    "is_dp_k_colorable",
    "is_proper",
    "parse_precoloring",
    "solve",
    "verify_theorem",
]


@dataclass(frozen=True)
class SolveResult:
    status: str  # "found" or "exhausted"
    witness: dict[int, int] | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == "found"


def is_proper(lg: LabelledGraph, coloring: Mapping[int, int]) -> bool:
    """True when every arc with both ends coloured is satisfied."""
    for (u, v), p in lg.sigma.items():
        if u in coloring and v in coloring and p(coloring[u]) == coloring[v]:
            return False
    return True


class _Problem:
    """The constraint structure of a graph, independent of its signature.

    Vertices are renumbered in search order (degree descending, then id) and
    colours are bits ``1 << (c - 1)``.  A signature is passed to
    :meth:`search` as one permutation index per edge of ``graph.edges``.
    """

    def __init__(self, g: PlaneGraph, k: int):
        self.k = k
        self.verts = sorted(g.vertices, key=lambda v: (-g.degree(v), v))
        self.index = {v: i for i, v in enumerate(self.verts)}
        self.edges = g.edges
        self.adj: list[list[tuple[int, int, bool]]] = [[] for _ in self.verts]
        for e, (a, b) in enumerate(self.edges):
            ia, ib = self.index[a], self.index[b]
            self.adj[ia].append((ib, e, True))
            self.adj[ib].append((ia, e, False))
        self.perms = all_perms(k)
        self.perm_index = {p: i for i, p in enumerate(self.perms)}
        self.fwd = [(0,) + tuple(1 << (p(c) - 1) for c in range(1, k + 1)) for p in self.perms]
        self.bwd = [
            (0,) + tuple(1 << (p.inverse()(c) - 1) for c in range(1, k + 1)) for p in self.perms
        ]

    def signature_of(self, lg: LabelledGraph) -> list[int]:
        return [self.perm_index[lg.sign(a, b)] for a, b in self.edges]

    def search(self, pidx: Sequence[int], pre: Mapping[int, int] | None = None):
        """Return ``(colours by search position or None, nodes)``."""
        n = len(self.verts)
        full = (1 << self.k) - 1
        dom = [full] * n
        col = [0] * n
        adj, fwd, bwd = self.adj, self.fwd, self.bwd
        for v, c in (pre or {}).items():
            i = self.index[v]
            if not dom[i] >> (c - 1) & 1:
                raise PrecoloringConflict(f"colour {c} at {v} violates a precoloured neighbour")
            col[i] = c
            dom[i] = 1 << (c - 1)
            for j, e, forward in adj[i]:
                bit = (fwd if forward else bwd)[pidx[e]][c]
                if col[j] and bit == dom[j]:
                    raise PrecoloringConflict(f"precoloured vertices {v} and {self.verts[j]} clash")
                if not col[j]:
                    dom[j] &= ~bit
        if any(d == 0 for d in dom):
            return None, 0

        trail: list[tuple[int, int]] = []
        nodes = 0

        def rec(pos: int) -> bool:
            nonlocal nodes
            while pos < n and col[pos]:
                pos += 1
            if pos == n:
                return True
            d = dom[pos]
            while d:
                low = d & -d
                d ^= low
                c = low.bit_length()
                nodes += 1
                col[pos] = c
                mark = len(trail)
                ok = True
                for j, e, forward in adj[pos]:
                    if col[j]:
                        continue
                    bit = (fwd if forward else bwd)[pidx[e]][c]
                    if dom[j] & bit:
                        trail.append((j, dom[j]))
                        dom[j] &= ~bit
                        if not dom[j]:
                            ok = False
                            break
                if ok and rec(pos + 1):
                    return True
                while len(trail) > mark:
                    j, dj = trail.pop()
                    dom[j] = dj
                col[pos] = 0
            return False

        if rec(0):
            return col, nodes
        return None, nodes


def _check_k(lg: LabelledGraph, k: int | None) -> int:
    if k is None:
        return lg.k
    if k != lg.k:
        raise BadK(f"labelling is over S_{lg.k}, not S_{k}")
    if k < 1:
        raise BadK("k must be positive")
    return k


def solve(
    lg: LabelledGraph, k: int | None = None, precoloring: Mapping[int, int] | None = None
) -> SolveResult:
    """Extend ``precoloring`` to a colouring of ``lg`` (complete search).

    Raises:
        BadK: ``k`` differs from the labelling's degree or a colour is out of range.
        PrecoloringConflict: two precoloured vertices violate their arc.
    """
    k = _check_k(lg, k)
    pre = dict(precoloring or {})
    for v, c in pre.items():
        lg.graph.degree(v)  # raises UnknownVertex
        if not 1 <= c <= k:
            raise BadK(f"colour {c} of vertex {v} is outside 1..{k}")
    prob = _Problem(lg.graph, k)
    cols, nodes = prob.search(prob.signature_of(lg), pre)
    if cols is None:
        return SolveResult("exhausted", None, nodes)
    witness = {prob.verts[i]: c for i, c in enumerate(cols)}
    return SolveResult("found", dict(sorted(witness.items())), nodes)


# --------------------------------------------------------------------------
# all signatures


def degeneracy_core(g: PlaneGraph, k: int) -> frozenset[int]:
    """Vertices left after repeatedly deleting vertices of degree below ``k``.

    A vertex of degree below ``k`` keeps a free colour whatever its
    neighbours receive, so deleting it changes neither colourability under a
    given signature nor colourability under all of them.
    """
    deg = {v: g.degree(v) for v in g.vertices}
    alive = set(g.vertices)
    stack = [v for v in g.vertices if deg[v] < k]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
                if deg[w] < k:
                    stack.append(w)
    return frozenset(alive)


def _components(g: PlaneGraph, vertices) -> list[list[int]]:
    left = set(vertices)
    out = []
    while left:
        s = min(left)
        comp, stack = {s}, [s]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if w in left and w not in comp:
                    comp.add(w)
                    stack.append(w)
        left -= comp
        out.append(sorted(comp))
    return out


def _sweep(rotation, outer, k: int, start: int, stop: int) -> tuple[int | None, int, int]:
    """Scan classes ``start..stop``; return (first failing index, classes, nodes)."""
    g = PlaneGraph(rotation, outer)
    it = SignatureClassIterator(g, k)
    prob = _Problem(g, k)
    slot = {e: i for i, e in enumerate(prob.edges)}
    free = [slot[e] for e in it.free_edges]
    pidx = [0] * len(prob.edges)
    nodes = 0
    done = 0
    for offset, digits in enumerate(it.iter_digits(start, stop)):
        for e, d in zip(free, digits):
            pidx[e] = d
        cols, n = prob.search(pidx)
        nodes += n
        done += 1
        if cols is None:
            return start + offset, done, nodes
    return None, done, nodes


@dataclass
class DPCheckResult:
    colorable: bool
    k: int
    classes: int
    checked: int
    nodes: int
    core: frozenset[int]
    witness: LabelledGraph | None = None
    elapsed: float = 0.0


def _sweep_component(sub: PlaneGraph, k: int, jobs: int):
    total = len(SignatureClassIterator(sub, k))
    rot = {v: list(n) for v, n in sub.rotation.items()}
    if jobs <= 1 or total < 64:
        return (*_sweep(rot, sub.outer_dart, k, 0, total), total)
    blocks = SignatureClassIterator(sub, k).blocks(jobs * 4)
    first_fail = None
    fail_block = len(blocks)
    checked = nodes = 0
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = {
            pool.submit(_sweep, rot, sub.outer_dart, k, a, b): i for i, (a, b) in enumerate(blocks)
        }
        pending = set(futures)
        while pending:
            finished, pending = wait(pending, return_when=FIRST_COMPLETED)
            for fut in finished:
                i = futures[fut]
                bad, done, n = fut.result()
                checked += done
                nodes += n
                if bad is not None and i < fail_block:
                    fail_block, first_fail = i, bad
            # blocks after a known failure cannot change the verdict or the witness
            for fut in list(pending):
                if futures[fut] > fail_block and fut.cancel():
                    pending.discard(fut)
    return first_fail, checked, nodes, total


def is_dp_k_colorable(
    g: PlaneGraph, k: int, *, jobs: int = 1, reduce: bool = True
) -> DPCheckResult:
    """Decide whether ``lg`` is colourable for every signature over ``S_k``.

    Args:
        g: connected plane graph.
        k: number of colours (2, 3 or 4).
        jobs: worker processes for the class sweep.
        reduce: first delete vertices of degree below ``k`` (see
            :func:`degeneracy_core`) and sweep each core component separately.

    Returns:
        A :class:`DPCheckResult`; when not colourable ``witness`` is a
        labelling of ``g`` that admits no colouring.  The witness is the first
        failing class in iteration order, so it does not depend on ``jobs``.
    """
    if not g.is_connected():
        raise Disconnected("is_dp_k_colorable needs a connected graph")
    if k < 1:
        raise BadK("k must be positive")
    t0 = time.perf_counter()
    core = degeneracy_core(g, k) if reduce else frozenset(g.vertices)
    parts = [g.subgraph(c) for c in _components(g, core)] if core != set(g.vertices) else [g]
    classes = checked = nodes = 0
    for sub in parts:
        bad, done, n, total = _sweep_component(sub, k, jobs)
        classes += total
        checked += done
        nodes += n
        if bad is not None:
            it = SignatureClassIterator(sub, k)
            witness = LabelledGraph(g, dict(it[bad].sigma), k)
            return DPCheckResult(
                False, k, classes, checked, nodes, core, witness, time.perf_counter() - t0
            )
    return DPCheckResult(True, k, classes, checked, nodes, core, None, time.perf_counter() - t0)


@dataclass
class TheoremReport:
    """Outcome of checking DP-3-colourability of one graph without 4-, 7-, 9-cycles."""

    graph: PlaneGraph
    colorable: bool
    classes: int
    failures: list[LabelledGraph] = field(default_factory=list)
    runtime: float = 0.0


def verify_theorem(g: PlaneGraph, *, jobs: int = 1, reduce: bool = True) -> TheoremReport:
    """Run the signature sweep with three colours on a graph of the class.

    Raises:
        NotInClassG: ``g`` has a 4-, 7- or 9-cycle (listed on the exception)
            or is disconnected.
    """
    report = classify(g)
    if not report.in_class_G:
        raise NotInClassG(
            "graph is not a connected plane graph free of 4-, 7- and 9-cycles",
            report.forbidden_cycles_found,
        )
    res = is_dp_k_colorable(g, 3, jobs=jobs, reduce=reduce)
    failures = [] if res.witness is None else [res.witness]
    return TheoremReport(g, res.colorable, res.classes, failures, res.elapsed)


def extend_boundary(lg: LabelledGraph, phi0: Mapping[int, int]) -> SolveResult:
    """Extend a 3-colouring of the outer boundary to the whole graph.

    For a graph of the class whose outer boundary is a good cycle such an
    extension always exists, so an ``exhausted`` result is an anomaly.

    Raises:
        BoundaryNotCycle: the outer face is not bounded by a cycle.
        BoundaryNotGood: the boundary has a claw or biclaw or is too long.
        BadPrecoloring: ``phi0`` is not a proper colouring of the boundary.
        NotInClassG: the graph has a 4-, 7- or 9-cycle.
        BadK: the labelling is not over three colours.
    """
    from .structure import boundary_cycle, check_precoloring, is_good_cycle

    if lg.k != 3:
        raise BadK("boundary extension is defined for three colours")
    g = lg.graph
    U = boundary_cycle(g)
    report = classify(g)
    if not report.in_class_G:
        raise NotInClassG("graph has a forbidden cycle", report.forbidden_cycles_found)
    try:
        good = is_good_cycle(g, U)
    except CycleTooLong:
        good = False
    if not good:
        raise BoundaryNotGood(f"outer boundary {U} is not a good cycle")
    check_precoloring(lg, phi0, U.vertices)
    return solve(lg, 3, phi0)


def parse_precoloring(text: str) -> dict[int, int]:
    """Parse lines ``v c``; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'vertex colour'")
        try:
            v, c = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
        if v in out:
            raise FormatError(f"line {lineno}: vertex {v} coloured twice")
        out[v] = c
    return out

