"""Permutation signatures on oriented edges, switching and signature classes.

Permutations act on the colour set ``1..k`` and are stored as image words:
``Perm((2, 3, 1))`` sends 1->2, 2->3, 3->1.  Composition is right-to-left,
``(p * q)(x) == p(q(x))``.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from types import MappingProxyType
from typing import Iterator, Mapping, Sequence

from .cycles import Cycle, CycleLike, as_cycle
from .errors import BasepointNotOnCycle, Disconnected, FormatError, WrongArity
from .plane_graph import PlaneGraph

__all__ = [
    "LabelledGraph",
    "Perm",
    "SignatureClassIterator",
    "all_perms",
    "is_positive",
    "monodromy",
    "normalize",
    "normalizing_switches",
    "parse_sig",
    "random_labelling",
    "read_sig",
    "signature_classes",
    "spanning_tree",
    "switch",
    "switch_many",
    "to_sig",
    "write_sig",
]


@dataclass(frozen=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, k: int) -> "Perm":
        return cls(tuple(range(1, k + 1)))

    @classmethod
    def from_word(cls, word: str) -> "Perm":
        return cls(tuple(int(ch) for ch in word))

    @classmethod
    def transposition(cls, k: int, a: int, b: int) -> "Perm":
        images = list(range(1, k + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(tuple(images))

    @property
    def k(self) -> int:
        return len(self.images)

    @property
    def word(self) -> str:
        return "".join(map(str, self.images))

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        if other.k != self.k:
            raise WrongArity(f"cannot compose S_{self.k} with S_{other.k}")
        return Perm(tuple(self.images[x - 1] for x in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.k
        for i, x in enumerate(self.images, start=1):
            inv[x - 1] = i
        return Perm(tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.k + 1):
            if start in seen or self(start) == start:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "id"
        return "".join("(" + "".join(map(str, c)) + ")" for c in cyc)


@lru_cache(maxsize=None)
def all_perms(k: int) -> tuple[Perm, ...]:
    """All of ``S_k`` in lexicographic order of image words (identity first)."""
    return tuple(Perm(p) for p in itertools.permutations(range(1, k + 1)))


class LabelledGraph:
    """A plane graph with an orientation and a permutation on every arc.

    Args:
        graph: the underlying plane graph.
        sigma: mapping ``(tail, head) -> Perm``; exactly one orientation per
            edge.  Edges that are missing get the identity, oriented from the
            smaller to the larger vertex.
        k: colour count; inferred from ``sigma`` when omitted.
    """

    __slots__ = ("graph", "_sigma", "k")

    def __init__(self, graph: PlaneGraph, sigma: Mapping[tuple[int, int], Perm] | None = None, k: int | None = None):
        sigma = dict(sigma or {})
        ks = {p.k for p in sigma.values()}
        if k is None:
            if not ks:
                raise WrongArity("cannot infer k from an empty signature")
            k = ks.pop() if len(ks) == 1 else None
            if k is None:
                raise WrongArity("signature mixes permutations of different degree")
        elif ks - {k}:
            raise WrongArity(f"signature holds permutations outside S_{k}")
        arcs: dict[tuple[int, int], Perm] = {}
        for (u, v), p in sigma.items():
            if not graph.has_edge(u, v):
                raise FormatError(f"{u}{v} is not an edge")
            if (v, u) in arcs:
                raise FormatError(f"edge {u}{v} labelled in both directions")
            arcs[(u, v)] = p
        ident = Perm.identity(k)
        for u, v in graph.edges:
            if (u, v) not in arcs and (v, u) not in arcs:
                arcs[(u, v)] = ident
        self.graph = graph
        self.k = k
        self._sigma = dict(sorted(arcs.items()))

    @classmethod
    def identity(cls, graph: PlaneGraph, k: int = 3) -> "LabelledGraph":
        return cls(graph, {}, k)

    @property
    def sigma(self) -> Mapping[tuple[int, int], Perm]:
        return MappingProxyType(self._sigma)

    @property
    def arcs(self) -> list[tuple[int, int]]:
        return list(self._sigma)

    def sign(self, u: int, v: int) -> Perm:
        """Permutation met when traversing the edge from ``u`` to ``v``."""
        p = self._sigma.get((u, v))
        if p is not None:
            return p
        return self._sigma[(v, u)].inverse()

    def replace(self, updates: Mapping[tuple[int, int], Perm]) -> "LabelledGraph":
        sigma = dict(self._sigma)
        for (u, v), p in updates.items():
            sigma.pop((v, u), None)
            sigma[(u, v)] = p
        return LabelledGraph(self.graph, sigma, self.k)

    def reversed_arc(self, u: int, v: int) -> "LabelledGraph":
        """Equivalent labelling with arc ``uv`` reversed (sign inverted)."""
        p = self._sigma[(u, v)]
        sigma = dict(self._sigma)
        del sigma[(u, v)]
        sigma[(v, u)] = p.inverse()
        return LabelledGraph(self.graph, sigma, self.k)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabelledGraph):
            return NotImplemented
        return self.graph == other.graph and self.k == other.k and self._sigma == other._sigma

    def __hash__(self) -> int:
        return hash((self.graph, tuple(self._sigma.items())))

    def same_signature(self, other: "LabelledGraph") -> bool:
        """Equal up to arc orientations (``sign`` agrees on every edge)."""
        return self.graph == other.graph and all(
            self.sign(u, v) == other.sign(u, v) for u, v in self.graph.edges
        )

    def __repr__(self) -> str:
        neg = sum(1 for p in self._sigma.values() if not p.is_identity)
        return f"LabelledGraph({self.graph!r}, k={self.k}, non-identity arcs={neg})"


# --------------------------------------------------------------------------
# switching


def switch(lg: LabelledGraph, u: int, s: Perm) -> LabelledGraph:
    """Switch vertex ``u`` by ``s``: arcs leaving ``u`` get ``sigma * s^-1``,
    arcs entering ``u`` get ``s * sigma``.

    A colouring ``f`` of ``lg`` becomes a colouring of the result once the
    colour of ``u`` is replaced by ``s(f(u))``, and every cycle keeps its
    monodromy up to conjugation.
    """
    if s.k != lg.k:
        raise WrongArity(f"switch by an element of S_{s.k} on an S_{lg.k}-labelling")
    lg.graph.degree(u)
    s_inv = s.inverse()
    sigma = {}
    for (a, b), p in lg.sigma.items():
        if a == u:
            p = p * s_inv
        elif b == u:
            p = s * p
        sigma[(a, b)] = p
    return LabelledGraph(lg.graph, sigma, lg.k)


def switch_many(lg: LabelledGraph, switches: Sequence[tuple[int, Perm]]) -> LabelledGraph:
    for u, s in switches:
        lg = switch(lg, u, s)
    return lg


def monodromy(lg: LabelledGraph, c: CycleLike, basepoint: int | None = None) -> Perm:
    """Composition of the signs met walking once around ``c`` from ``basepoint``.

    The walk follows the order in which ``c`` lists its vertices; the first
    sign met is applied first.
    """
    cyc = as_cycle(lg.graph, c)
    vs = list(c.vertices if isinstance(c, Cycle) else c)
    if basepoint is None:
        basepoint = vs[0]
    if basepoint not in vs:
        raise BasepointNotOnCycle(f"{basepoint} is not on {cyc}")
    i = vs.index(basepoint)
    vs = vs[i:] + vs[:i]
    m = Perm.identity(lg.k)
    for a, b in zip(vs, vs[1:] + vs[:1]):
        m = lg.sign(a, b) * m
    return m


def is_positive(lg: LabelledGraph, c: CycleLike) -> bool:
    return monodromy(lg, c).is_identity


# --------------------------------------------------------------------------
# normal form and signature classes


def spanning_tree(g: PlaneGraph) -> list[tuple[int, int]]:
    """BFS tree from the smallest vertex as ``(parent, child)`` pairs in BFS order."""
    root = g.vertices[0]
    seen = {root}
    queue = deque([root])
    tree = []
    while queue:
        v = queue.popleft()
        for w in sorted(g.neighbors(v)):
            if w not in seen:
                seen.add(w)
                tree.append((v, w))
                queue.append(w)
    if len(seen) != g.n_vertices:
        raise Disconnected("graph is not connected")
    return tree


def normalizing_switches(lg: LabelledGraph) -> list[tuple[int, Perm]]:
    """Switches that make every spanning-tree edge carry the identity."""
    out = []
    for parent, child in spanning_tree(lg.graph):
        p = _current_sign(lg, out, parent, child)
        if not p.is_identity:
            # traversal parent->child carries p; switching child by p^-1 fixes it
            out.append((child, p.inverse()))
    return out


def _current_sign(lg, switches, u, v):
    # switching the tail by s gives p * s^-1, switching the head gives s * p
    p = lg.sign(u, v)
    for x, s in switches:
        if x == u:
            p = p * s.inverse()
        elif x == v:
            p = s * p
    return p


def normalize(lg: LabelledGraph) -> LabelledGraph:
    """Switch-equivalent labelling with identity on the BFS spanning tree."""
    return switch_many(lg, normalizing_switches(lg))


class SignatureClassIterator:
    """All labellings that are the identity on a fixed spanning tree.

    Every labelling of a connected graph is switch-equivalent to one of
    these, so a colourability statement that holds for all of them holds for
    every labelling.  Index ``i`` decodes as a mixed-radix number with the
    last free edge varying fastest.
    """

    def __init__(self, g: PlaneGraph, k: int):
        if k not in (2, 3, 4):
            raise WrongArity("signature classes are supported for k in {2, 3, 4}")
        self.graph = g
        self.k = k
        self.spanning_tree = frozenset(tuple(sorted(e)) for e in spanning_tree(g))
        self.free_edges = tuple(e for e in g.edges if e not in self.spanning_tree)
        self.perms = all_perms(k)

    def __len__(self) -> int:
        return len(self.perms) ** len(self.free_edges)

    @property
    def cycle_space_dimension(self) -> int:
        return len(self.free_edges)

    def digits(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < len(self):
            raise IndexError(index)
        base = len(self.perms)
        out = []
        for _ in self.free_edges:
            index, r = divmod(index, base)
            out.append(r)
        return tuple(reversed(out))

    def __getitem__(self, index: int) -> LabelledGraph:
        return self.from_digits(self.digits(index))

    def from_digits(self, digits: Sequence[int]) -> LabelledGraph:
        sigma = {e: self.perms[d] for e, d in zip(self.free_edges, digits)}
        return LabelledGraph(self.graph, sigma, self.k)

    def iter_digits(self, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, ...]]:
        stop = len(self) if stop is None else min(stop, len(self))
        if start >= stop:
            return
        it = itertools.product(range(len(self.perms)), repeat=len(self.free_edges))
        yield from itertools.islice(it, start, stop)

    def __iter__(self) -> Iterator[LabelledGraph]:
        for digits in self.iter_digits():
            yield self.from_digits(digits)

    def blocks(self, n_blocks: int) -> list[tuple[int, int]]:
        """Split the index range into ``n_blocks`` contiguous ranges."""
        total = len(self)
        step = max(1, math.ceil(total / max(1, n_blocks)))
        return [(a, min(a + step, total)) for a in range(0, total, step)]


def signature_classes(g: PlaneGraph, k: int) -> SignatureClassIterator:
    return SignatureClassIterator(g, k)


def random_labelling(g: PlaneGraph, k: int, rng: random.Random) -> LabelledGraph:
    """Uniform permutation and random orientation on every edge."""
    perms = all_perms(k)
    sigma = {}
    for u, v in g.edges:
        arc = (u, v) if rng.random() < 0.5 else (v, u)
        sigma[arc] = perms[rng.randrange(len(perms))]
    return LabelledGraph(g, sigma, k)


# --------------------------------------------------------------------------
# .sig files


def parse_sig(text: str, g: PlaneGraph, k: int | None = None) -> LabelledGraph:
    """Lines ``u v WORD``: the image word of the arc ``u -> v``."""
    sigma = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise FormatError(f"line {lineno}: expected 'u v WORD', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            p = Perm.from_word(parts[2])
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
        if (u, v) in sigma or (v, u) in sigma:
            raise FormatError(f"line {lineno}: edge {u}{v} listed twice")
        sigma[(u, v)] = p
    if k is None and not sigma:
        k = 3
    return LabelledGraph(g, sigma, k)


def read_sig(path: str | Path, g: PlaneGraph, k: int | None = None) -> LabelledGraph:
    return parse_sig(Path(path).read_text(encoding="utf-8"), g, k)


def to_sig(lg: LabelledGraph) -> str:
    return "".join(f"{u} {v} {p.word}\n" for (u, v), p in lg.sigma.items())


def write_sig(lg: LabelledGraph, path: str | Path) -> None:
    Path(path).write_text(to_sig(lg), encoding="utf-8")
