"""Random plane graphs avoiding cycles of given lengths, grown by face splitting.

Start from a short cycle of allowed length and repeatedly insert a path of
new vertices between two corners of one face.  A split is rejected when one
of the cycles it closes has a forbidden length.  The distribution is not
uniform; it only needs to cover many shapes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import AttemptsExhausted
from .plane_graph import FORBIDDEN_LENGTHS, PlaneGraph

__all__ = ["GenConfig", "generate"]


@dataclass(frozen=True)
class GenConfig:
    """Generator settings.

    Attributes:
        target_vertices: number of vertices of the output (at least 2).
        forbidden_lengths: cycle lengths to avoid, a subset of 3..13.
        seed: seed of the private random stream.
        max_attempts: rejected splits tolerated in a row.
        max_path: longest inserted path, in edges.
        pendant_rate: probability of growing by a pendant vertex instead of
            a split; pendants create no cycle.
        pendant_fallback: after ``max_attempts`` rejected splits in a row,
            grow by a pendant vertex instead of giving up.
    """

    target_vertices: int
    forbidden_lengths: frozenset[int] = field(default=FORBIDDEN_LENGTHS)
    seed: int = 0
    max_attempts: int = 500
    max_path: int = 6
    pendant_rate: float = 0.0
    pendant_fallback: bool = True

    def __post_init__(self):
        object.__setattr__(self, "forbidden_lengths", frozenset(self.forbidden_lengths))
        if self.target_vertices < 2:
            raise ValueError("target_vertices must be at least 2")
        if not self.forbidden_lengths <= set(range(3, 14)):
            raise ValueError("forbidden lengths must lie in 3..13")
        if self.max_path < 1 or self.max_attempts < 1:
            raise ValueError("max_path and max_attempts must be positive")
        if not 0.0 <= self.pendant_rate <= 1.0:
            raise ValueError("pendant_rate must lie in [0, 1]")


class _Builder:
    def __init__(self, rot: dict[int, list[int]], outer: tuple[int, int]):
        self.rot = rot
        self.outer = outer

    @property
    def n(self) -> int:
        return len(self.rot)

    def graph(self) -> PlaneGraph:
        return PlaneGraph(self.rot, self.outer)

    def insert_path(self, g: PlaneGraph, corner_u, corner_w, length: int) -> None:
        """Join the corners ``(a, u)`` and ``(c, w)`` by a path of ``length`` edges."""
        (a, u), (c, w) = corner_u, corner_w
        nxt = max(self.rot) + 1
        inner = list(range(nxt, nxt + length - 1))
        chain = [u] + inner + [w]
        for i, x in enumerate(inner, start=1):
            self.rot[x] = [chain[i - 1], chain[i + 1]]
        self._after(u, a, chain[1])
        self._after(w, c, chain[-2])

    def add_pendant(self, corner) -> None:
        a, v = corner
        x = max(self.rot) + 1
        self.rot[x] = [v]
        self._after(v, a, x)

    def _after(self, v: int, a: int, x: int) -> None:
        nbrs = self.rot[v]
        i = nbrs.index(a)
        self.rot[v] = nbrs[: i + 1] + [x] + nbrs[i + 1 :]


def _corners(g: PlaneGraph, f: int) -> list[tuple[int, int]]:
    """``(a, v)`` for each step ``a -> v`` of the walk of ``f``: the corner at
    ``v`` between ``a`` and the next walk vertex."""
    darts = g.darts
    return [(darts[d].tail, darts[d].head) for d in g.faces[f]]


def _path_lengths(g: PlaneGraph, u: int, w: int, limit: int) -> set[int]:
    """Lengths of simple ``u``-``w`` paths with at most ``limit`` edges."""
    out: set[int] = set()
    rot = g.rotation
    seen = {u}

    def dfs(v: int, depth: int) -> None:
        for x in rot[v]:
            if x == w:
                out.add(depth + 1)
            elif x not in seen and depth + 1 < limit:
                seen.add(x)
                dfs(x, depth + 1)
                seen.discard(x)

    if limit >= 1:
        dfs(u, 0)
    return out


def generate(cfg: GenConfig) -> PlaneGraph:
    """A connected simple plane graph with ``cfg.target_vertices`` vertices and
    no cycle whose length is forbidden.  Identical configs give identical graphs.

    Raises:
        AttemptsExhausted: ``cfg.max_attempts`` consecutive splits were
            rejected and ``cfg.pendant_fallback`` is off.
    """
    rng = random.Random(cfg.seed)
    n = cfg.target_vertices
    forbidden = cfg.forbidden_lengths
    allowed = [L for L in range(3, min(n, 12) + 1) if L not in forbidden]
    if allowed:
        L0 = rng.choice(allowed[:3])
        b = _Builder({i: [i % L0 + 1, (i - 2) % L0 + 1] for i in range(1, L0 + 1)}, (1, 2))
    else:
        b = _Builder({1: [2], 2: [1]}, (1, 2))
    longest = max(forbidden, default=0)
    failures = 0
    g = b.graph()
    while b.n < n:
        room = n - b.n
        f = rng.randrange(g.n_faces)
        corners = _corners(g, f)
        if not allowed or rng.random() < cfg.pendant_rate:
            b.add_pendant(rng.choice(corners))
            g = b.graph()
            failures = 0
            continue
        length = rng.randint(1, min(cfg.max_path, room + 1))
        i, j = rng.sample(range(len(corners)), 2) if len(corners) > 1 else (0, 0)
        (a, u), (c, w) = corners[i], corners[j]
        ok = u != w and not (length == 1 and g.has_edge(u, w))
        if ok and longest >= length:
            closes = {length + p for p in _path_lengths(g, u, w, longest - length)}
            ok = not (closes & forbidden)
        if ok and length - 1 > room:
            ok = False
        if not ok:
            failures += 1
            if failures >= cfg.max_attempts and cfg.pendant_fallback:
                b.add_pendant(rng.choice(corners))
                g = b.graph()
                failures = 0
            elif failures >= cfg.max_attempts:
                raise AttemptsExhausted(
                    f"{failures} consecutive rejected splits at {b.n} of {n} vertices"
                )
            continue
        b.insert_path(g, (a, u), (c, w), length)
        g = b.graph()
        failures = 0
    return g
