"""Brute-force oracles shared by the tests.

None of these call into the code under test beyond reading a graph's
rotation or a labelling's arcs, so they can serve as independent references.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from pathlib import Path

import networkx as nx
import pytest

from dpplanar.fixtures import CORPUS
from dpplanar.generate import GenConfig, generate
from dpplanar.labelling import LabelledGraph, Perm, all_perms
from dpplanar.plane_graph import PlaneGraph, classify

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


def nx_graph(g: PlaneGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(g.rotation)
    for v, nbrs in g.rotation.items():
        G.add_edges_from((v, w) for w in nbrs)
    return G


def canon(seq) -> tuple[int, ...]:
    seq = tuple(seq)
    best = None
    for s in (seq, tuple(reversed(seq))):
        for i in range(len(s)):
            r = s[i:] + s[:i]
            if best is None or r < best:
                best = r
    return best


def oracle_cycles(g: PlaneGraph, max_len: int) -> set[tuple[int, ...]]:
    """Cycles of length 3..max_len via networkx, canonicalised."""
    G = nx_graph(g)
    return {canon(c) for c in nx.simple_cycles(G, length_bound=max_len) if len(c) >= 3}


def oracle_in_class(g: PlaneGraph, forbidden=(4, 7, 9)) -> bool:
    G = nx_graph(g)
    if not nx.is_connected(G):
        return False
    return not any(len(c) in forbidden for c in nx.simple_cycles(G, length_bound=max(forbidden)))


def oracle_faces(g: PlaneGraph) -> list[int]:
    """Face sizes from a networkx planar embedding built off the rotation."""
    emb = nx.PlanarEmbedding()
    emb.set_data({v: list(n) for v, n in g.rotation.items()})
    emb.check_structure()
    seen: set[tuple[int, int]] = set()
    sizes = []
    for u, v in emb.edges():
        if (u, v) in seen:
            continue
        face = emb.traverse_face(u, v, mark_half_edges=seen)
        sizes.append(len(face))
    return sorted(sizes)


def arc_ok(lg: LabelledGraph, colouring) -> bool:
    for (u, v), p in lg.sigma.items():
        if p.images[colouring[u] - 1] == colouring[v]:
            return False
    return True


def oracle_colourable(lg: LabelledGraph, k: int | None = None, pre=None) -> bool:
    """Exhaustive k^|V| enumeration."""
    k = k or lg.k
    pre = pre or {}
    vs = [v for v in lg.graph.vertices if v not in pre]
    for combo in itertools.product(range(1, k + 1), repeat=len(vs)):
        col = dict(pre)
        col.update(zip(vs, combo))
        if arc_ok(lg, col):
            return True
    return False


def oracle_dp_colourable(g: PlaneGraph, k: int) -> bool:
    """Every assignment of S_k to the edges, no switching shortcuts."""
    edges = g.edges
    perms = all_perms(k)
    for choice in itertools.product(perms, repeat=len(edges)):
        lg = LabelledGraph(g, dict(zip(edges, choice)), k)
        if not oracle_colourable(lg, k):
            return False
    return True


def oracle_positive(lg: LabelledGraph, cycle) -> bool:
    """Trace every colour once around the cycle, reading arcs directly."""
    vs = list(cycle)
    for x in range(1, lg.k + 1):
        y = x
        for i, a in enumerate(vs):
            b = vs[(i + 1) % len(vs)]
            if (a, b) in lg.sigma:
                y = lg.sigma[(a, b)].images[y - 1]
            else:
                y = lg.sigma[(b, a)].images.index(y) + 1
        if y != x:
            return False
    return True


def random_perm(rng: random.Random, k: int) -> Perm:
    images = list(range(1, k + 1))
    rng.shuffle(images)
    return Perm(tuple(images))


@lru_cache(maxsize=None)
def generated(seed: int, n: int) -> PlaneGraph:
    return generate(GenConfig(n, seed=seed))


def generated_sweep(seeds=range(1, 201)) -> list[PlaneGraph]:
    """The standard sweep: seed s gets 8 + s % 33 vertices (8..40)."""
    return [generated(s, 8 + s % 33) for s in seeds]


@lru_cache(maxsize=None)
def corpus_graph(name: str) -> PlaneGraph:
    return CORPUS[name]()


def corpus_in_class() -> list[str]:
    return [name for name in CORPUS if classify(corpus_graph(name)).in_class_G]


@pytest.fixture
def rng():
    return random.Random(20261018)
