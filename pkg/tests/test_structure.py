from __future__ import annotations

from itertools import combinations

import pytest

from conftest import corpus_graph, generated, generated_sweep
from dpplanar.cycles import cycle_sides, enumerate_cycles
from dpplanar.errors import BadPrecoloring, BoundaryNotCycle, BoundaryNotGood, CycleTooLong
from dpplanar.fixtures import (
    BAD_CYCLE_SHAPES,
    GP,
    c8_with_path,
    cycle,
    good_path_fixture,
    h_graph,
    k3,
    light_five_face,
    string_face,
)
from dpplanar.labelling import LabelledGraph, Perm
from dpplanar.plane_graph import PlaneGraph
from dpplanar.structure import (
    PREDICATE_NAMES,
    _good_path_violations,
    bad_3_faces,
    bad_vertices,
    check_string_lemma,
    classify_bad_cycle,
    find_biclaws,
    find_claws,
    h,
    is_good_cycle,
    lemma_predicates,
    light_faces,
    special_subgraphs,
    strings,
)


def oracle_cells(g: PlaneGraph, c) -> set[tuple[int, ...]]:
    """Claw and biclaw cell sizes straight from the definition: interior
    vertices with three cycle neighbours, adjacent interior pairs with two each."""
    vs = list(c)
    n = len(vs)
    pos = {v: i for i, v in enumerate(vs)}
    inside = cycle_sides(g, vs).interior
    on = {v: [w for w in g.neighbors(v) if w in pos] for v in inside}
    out = set()
    for v in inside:
        for trio in combinations(on[v], 3):
            ps = sorted(pos[w] for w in trio)
            arcs = [ps[1] - ps[0], ps[2] - ps[1], ps[0] + n - ps[2]]
            out.add(tuple(sorted(a + 2 for a in arcs)))
    for u1 in inside:
        for u2 in g.neighbors(u1):
            if u2 not in inside or u2 < u1:
                continue
            for p1 in combinations(on[u1], 2):
                for p2 in combinations(on[u2], 2):
                    marks = sorted([(pos[w], 1) for w in p1] + [(pos[w], 2) for w in p2])
                    cells = []
                    for i in range(4):
                        (a, ca), (b, cb) = marks[i], marks[(i + 1) % 4]
                        arc = (b - a) % n
                        if arc == 0 and ca == cb:
                            break
                        cells.append(arc + (2 if ca == cb else 3))
                    else:
                        out.add(tuple(sorted(cells)))
    return out


@pytest.mark.parametrize("name", list(BAD_CYCLE_SHAPES))
def test_shape_detected_with_exact_cells(name):
    build, cells = BAD_CYCLE_SHAPES[name]
    g = build()
    U = g.boundary()
    assert not is_good_cycle(g, U)
    assert classify_bad_cycle(g, U) == {tuple(sorted(cells))}
    assert oracle_cells(g, U) == {tuple(sorted(cells))}
    extra = 6 if len(cells) == 3 else 10
    assert sum(cells) == len(U) + extra


def test_claw_and_biclaw_findings():
    g = BAD_CYCLE_SHAPES["claw_6_6_6"][0]()
    (f,) = find_claws(g, g.boundary())
    assert sorted(f.cells) == [6, 6, 6] and f.side == "interior"
    assert not find_biclaws(g, g.boundary())
    g = BAD_CYCLE_SHAPES["biclaw_5_5_5_8"][0]()
    (b,) = find_biclaws(g, g.boundary())
    assert sorted(b.cells) == [5, 5, 5, 8]
    # nothing hangs outside the outer boundary
    assert is_good_cycle(g, g.boundary(), "exterior")


def test_good_cycle_length_limit():
    g = cycle(14)
    with pytest.raises(CycleTooLong):
        is_good_cycle(g, g.boundary())
    assert is_good_cycle(cycle(13), cycle(13).boundary())


def test_bad_cycles_in_class_are_the_five_shapes():
    """Every bad cycle found in the generated sweep has length 12 or 13 and
    one of the five cell patterns; cells match the definition-based oracle."""
    allowed = {tuple(sorted(c)) for _, c in BAD_CYCLE_SHAPES.values()}
    seen = 0
    for g in generated_sweep(range(1, 121)):
        for c in enumerate_cycles(g, 13):
            found = classify_bad_cycle(g, c)
            assert found == oracle_cells(g, c.vertices)
            assert is_good_cycle(g, c) == (not found)
            if found:
                seen += 1
                assert c.length in (12, 13)
                assert found <= allowed
                for cells in found:
                    assert sum(cells) == c.length + (6 if len(cells) == 3 else 10)
    assert seen > 0


def test_special_subgraph_of_h():
    g = h_graph()
    (s,) = special_subgraphs(g)
    assert s.vertices[0] == 1 and set(s.shared_edge) == {2, 6}
    assert s.vertex_set == frozenset(range(1, 7))
    assert len(s.edges) == 7
    assert all(h(g, v) == 1 for v in g.vertices)


def test_special_subgraphs_oracle_on_generated():
    for g in generated_sweep(range(1, 60)):
        expected = 0
        faces = [f for f in range(g.n_faces) if f != g.outer_face]
        for f3 in faces:
            if g.face_size(f3) != 3:
                continue
            for f5 in faces:
                if g.face_size(f5) == 5:
                    shared = set(g.face_edges(f3)) & set(g.face_edges(f5))
                    expected += len(shared) == 1
        assert len(special_subgraphs(g)) == expected


def test_light_five_face():
    g = light_five_face()
    (f,) = [f for f in light_faces(g) if g.face_size(f) == 5]
    assert set(g.face_vertices(f)) == {1, 2, 3, 4, 5}


def test_light_faces_oracle():
    for g in generated_sweep(range(1, 40)):
        expected = {
            f
            for f in range(g.n_faces)
            if all(g.degree(v) == 3 and not g.is_external(v) for v in g.face_vertices(f))
        }
        assert light_faces(g) == expected


def test_bad_triangle_needs_positive_sign():
    g = good_path_fixture()
    lg = LabelledGraph.identity(g, 3)
    tri = bad_3_faces(lg)
    assert len(tri) == 1
    (f,) = tri
    assert set(g.face_vertices(f)) == {GP["u"], GP["v"], GP["w"]}
    assert bad_vertices(lg) >= {GP["u"], GP["v"], GP["w"]}
    neg = LabelledGraph(g, {(GP["u"], GP["v"]): Perm.from_word("213")}, 3)
    assert not bad_3_faces(neg)


def test_good_path_fixture_violates_good_path():
    g = good_path_fixture()
    lg = LabelledGraph.identity(g, 3)
    found = _good_path_violations(lg, bad_3_faces(lg), set())
    assert any(p[2:] == (GP["x"], GP["y"], GP["z"]) for p in found)


@pytest.mark.parametrize("k, t", [(5, 1), (6, 1), (8, 1), (8, 2), (10, 2), (11, 3), (12, 4)])
def test_string_fixture(k, t):
    g = string_face(k, t)
    inner = [f for f in range(g.n_faces) if set(g.face_vertices(f)) == set(range(1, k + 1))]
    (f,) = inner
    (s,) = strings(g, f)
    assert set(s.path) == set(range(1, t + 1)) and s.k == t
    assert set(s.anchors) == {k, t + 1}
    flagged = [x for x in check_string_lemma(g).flags if x.face == f]
    assert bool(flagged) == (t >= (k - 1) // 2)


def test_cycle_face_has_no_strings():
    g = cycle(6)
    assert strings(g, 0) == strings(g, 1) == []


def test_predicates_on_h():
    lg = LabelledGraph.identity(h_graph(), 3)
    pr = lemma_predicates(lg)
    assert set(pr.values) == set(PREDICATE_NAMES)
    # the chord 2-6 and the 3-string 3-4-5 on the 5-face break two properties
    assert pr.failed == {"boundary_chordless", "no_long_strings"}
    assert pr.details["boundary_chordless"] == [(2, 6)]


def test_predicates_on_c8_with_path():
    lg = LabelledGraph.identity(c8_with_path(), 3)
    pr = lemma_predicates(lg)
    assert "splitting_paths" in pr.failed
    assert not pr.all_hold


def test_predicates_preconditions():
    with pytest.raises(BoundaryNotGood):
        lemma_predicates(LabelledGraph.identity(light_five_face(), 3))
    with pytest.raises(BoundaryNotGood):
        g = BAD_CYCLE_SHAPES["claw_5_5_8"][0]()
        lemma_predicates(LabelledGraph.identity(g, 3))
    lollipop = PlaneGraph({1: [2, 3], 2: [3, 1], 3: [1, 4, 2], 4: [3]}, (3, 4))
    with pytest.raises(BoundaryNotCycle):
        lemma_predicates(LabelledGraph.identity(lollipop, 3))
    with pytest.raises(BadPrecoloring):
        lemma_predicates(LabelledGraph.identity(k3(), 3), phi0={1: 1, 2: 1, 3: 2})


def test_predicates_all_hold_on_triangle():
    assert lemma_predicates(LabelledGraph.identity(k3(), 3), phi0={1: 1, 2: 2, 3: 3}).all_hold
