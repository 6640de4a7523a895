from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import corpus_graph, generated, nx_graph, oracle_faces, oracle_in_class
from dpplanar.errors import (
    DisconnectedWhenRequired,
    FormatError,
    InconsistentRotation,
    LoopOrMultiEdge,
    NonPlanarEmbedding,
    UnknownVertex,
)
from dpplanar.fixtures import CORPUS, cycle, dodecahedron, h_graph, k4, wheel
from dpplanar.plane_graph import PlaneGraph, classify, parse_pg, read_pg, write_pg


@pytest.mark.parametrize("name", list(CORPUS))
def test_faces_match_networkx_embedding(name):
    g = corpus_graph(name)
    assert sorted(g.face_size(f) for f in range(g.n_faces)) == oracle_faces(g)


@pytest.mark.parametrize("name", list(CORPUS))
def test_euler_and_dart_partition(name):
    g = corpus_graph(name)
    assert g.n_vertices - g.n_edges + g.n_faces == 2
    darts = [d for walk in g.faces for d in walk]
    assert len(darts) == len(set(darts)) == 2 * g.n_edges


@pytest.mark.parametrize("name", list(CORPUS))
def test_membership_matches_bruteforce(name):
    g = corpus_graph(name)
    assert classify(g).in_class_G == oracle_in_class(g)


def test_h_graph_faces():
    g = h_graph()
    # a triangle and a pentagon sharing the edge 2-6, inside a hexagon
    assert sorted(g.face_size(f) for f in range(g.n_faces)) == [3, 5, 6]
    assert g.face_size(g.outer_face) == 6
    assert g.boundary_is_cycle()
    assert classify(g).in_class_G


def test_outer_face_is_face_of_outer_dart():
    g = k4()
    for f in range(g.n_faces):
        d = g.faces[f][0]
        t, h = g.darts[d].tail, g.darts[d].head
        assert g.with_outer(t, h).outer_face == g.face_of_arc(t, h)


def test_cycle_faces():
    g = cycle(7)
    assert g.n_faces == 2 and g.face_size(0) == g.face_size(1) == 7
    assert not classify(g).in_class_G


def test_k4_is_outside_class():
    rep = classify(k4())
    assert not rep.in_class_G
    assert all(c.length == 4 for c in rep.forbidden_cycles_found)
    assert len(rep.forbidden_cycles_found) == 3


@pytest.mark.parametrize("seed", range(1, 16))
def test_generated_graph_against_networkx(seed):
    g = generated(seed, 8 + seed)
    G = nx_graph(g)
    ok, _ = nx.check_planarity(G)
    assert ok
    assert g.is_two_connected() == (nx.is_biconnected(G) if g.n_vertices > 2 else True)
    assert g.cycle_space_dimension() == G.number_of_edges() - G.number_of_nodes() + 1
    assert sorted(g.face_size(f) for f in range(g.n_faces)) == oracle_faces(g)


def test_pg_round_trip(tmp_path):
    g = h_graph()
    path = tmp_path / "h.pg"
    write_pg(g, path, comment="hexagon")
    back = read_pg(path)
    assert back == g
    assert parse_pg(g.to_pg()) == g


@given(st.integers(1, 500), st.integers(6, 20))
@settings(max_examples=40, deadline=None)
def test_canonical_code_is_relabelling_invariant(seed, n):
    g = generated(seed, n)
    perm = list(g.vertices)
    random.Random(seed).shuffle(perm)
    h = g.relabel(dict(zip(g.vertices, perm)))
    assert h.canonical_code() == g.canonical_code()
    assert nx.is_isomorphic(nx_graph(g), nx_graph(h))


def test_mirror_image_keeps_face_sizes():
    g = generated(5, 14)
    mirrored = PlaneGraph({v: list(reversed(n)) for v, n in g.rotation.items()}, tuple(reversed(g.outer_dart)))
    assert sorted(mirrored.face_size(f) for f in range(mirrored.n_faces)) == sorted(
        g.face_size(f) for f in range(g.n_faces)
    )


@pytest.mark.parametrize(
    "text, exc",
    [
        ("vertices: 2\n1: 2\n2: 1\n", FormatError),
        ("1: 2\n2: 1\nouter: 1 2\n", FormatError),
        ("vertices: 3\n1: 2\n2: 1\nouter: 1 2\n", FormatError),
        ("vertices: 2\n1: 2\n2: x\nouter: 1 2\n", FormatError),
        ("vertices: 2\n0: 2\n2: 0\nouter: 2 0\n", FormatError),
        ("vertices: 2\n1: 2 2\n2: 1\nouter: 1 2\n", InconsistentRotation),
        ("vertices: 2\n1: 2\n2: \nouter: 1 2\n", InconsistentRotation),
        ("vertices: 2\n1: 1 2\n2: 1\nouter: 1 2\n", LoopOrMultiEdge),
        ("vertices: 2\n1: 2\n2: 1\nouter: 1 3\n", InconsistentRotation),
    ],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_pg(text)


def test_non_planar_rotation_rejected():
    # K4 with one rotation reversed has a toroidal face structure
    rot = {1: [2, 3, 4], 2: [1, 3, 4], 3: [1, 2, 4], 4: [1, 2, 3]}
    with pytest.raises(NonPlanarEmbedding):
        PlaneGraph(rot, (1, 2))


def test_disconnected_when_required():
    rot = {1: [2], 2: [1], 3: [4], 4: [3]}
    PlaneGraph(rot, (1, 2))
    with pytest.raises(DisconnectedWhenRequired):
        PlaneGraph(rot, (1, 2), require_connected=True)


def test_unknown_vertex():
    g = h_graph()
    with pytest.raises(UnknownVertex):
        g.degree(99)
    with pytest.raises(UnknownVertex):
        g.face_of_arc(1, 3)


def test_wheel_and_dodecahedron_are_outside_class():
    # the hub closes 4-cycles with any two consecutive rim edges
    assert {c.length for c in classify(wheel(5)).forbidden_cycles_found} == {4}
    # girth 5 rules out 4-cycles but not 9-cycles
    rep = classify(dodecahedron())
    assert not rep.in_class_G
    assert {c.length for c in rep.forbidden_cycles_found} == {9}
