from __future__ import annotations

import random

import pytest

from conftest import FIXTURES, canon, generated, nx_graph, oracle_cycles, oracle_in_class
from dpplanar.cycles import enumerate_cycles
from dpplanar.errors import (
    BadPlan,
    BadSlot,
    FormatError,
    NotInternal,
    UnknownVertex,
    WouldCreateLoop,
    WouldMergeEdges,
)
from dpplanar.fixtures import GP, good_path_fixture, h_graph, light_five_face, light_five_face_reduced, wheel
from dpplanar.labelling import LabelledGraph, Perm, random_labelling
from dpplanar.surgery import (
    Identify,
    InsertArc,
    SurgeryPlan,
    apply,
    check_safety,
    parse_plan,
    read_plan,
)


def lab(g, seed=0):
    return random_labelling(g, 3, random.Random(seed))


def test_light_five_face_reduction_is_safe():
    lg = LabelledGraph.identity(light_five_face(), 3)
    plan = SurgeryPlan(frozenset(range(1, 6)), InsertArc(7, 10))
    rep = check_safety(lg, None, plan)
    assert rep.condition_a and rep.condition_b and rep.safe
    assert rep.in_class_G and rep.boundary_preserved
    r = rep.result.graph
    assert r.canonical_code() == light_five_face_reduced().canonical_code()
    assert r.n_vertices - r.n_edges + r.n_faces == 2


def test_good_path_identification_is_safe():
    g = good_path_fixture()
    lg = lab(g, 3)
    gone = frozenset(GP[x] for x in ("u", "v", "x", "y", "z"))
    plan = SurgeryPlan(gone, Identify(GP["x1"], GP["u1"]))
    rep = check_safety(lg, None, plan)
    assert rep.safe and rep.in_class_G and rep.boundary_preserved
    r = rep.result
    assert GP["u1"] not in r.graph.vertices
    # signs of surviving edges are kept, moved edges keep theirs too
    for (a, b), p in lg.sigma.items():
        if a in gone or b in gone:
            continue
        a2 = GP["x1"] if a == GP["u1"] else a
        b2 = GP["x1"] if b == GP["u1"] else b
        assert r.sign(a2, b2) == p


def test_plan_files_match_fixtures():
    assert read_plan(FIXTURES / "plans" / "light_five_face.plan") == SurgeryPlan(
        frozenset(range(1, 6)), InsertArc(7, 10)
    )
    assert read_plan(FIXTURES / "plans" / "good_path.plan").action == Identify(GP["x1"], GP["u1"])


def test_identification_merging_edges_raises():
    lg = LabelledGraph.identity(h_graph(), 3)
    with pytest.raises(WouldMergeEdges):
        apply(lg, SurgeryPlan(action=Identify(2, 5)))


def test_identification_loops():
    lg = LabelledGraph.identity(h_graph(), 3)
    with pytest.raises(WouldCreateLoop):
        apply(lg, SurgeryPlan(action=Identify(3, 3)))
    with pytest.raises(WouldCreateLoop):
        apply(lg, SurgeryPlan(action=Identify(3, 4)))


def test_insertion_errors():
    lg = LabelledGraph.identity(h_graph(), 3)
    with pytest.raises(WouldMergeEdges):
        apply(lg, SurgeryPlan(action=InsertArc(2, 6)))
    with pytest.raises(WouldCreateLoop):
        apply(lg, SurgeryPlan(action=InsertArc(2, 2)))
    # 3 and 5 lie on both the 5-face and the outer face
    with pytest.raises(BadSlot):
        apply(lg, SurgeryPlan(action=InsertArc(3, 5)))
    t = Perm.from_word("213")
    ok = []
    for c in (4, 6):
        try:
            ok.append(apply(lg, SurgeryPlan(action=InsertArc(3, 5, t, 2, c))))
        except BadSlot:
            pass
    (r,) = ok
    assert r.sign(3, 5) == t
    assert sorted(r.graph.face_size(f) for f in range(r.graph.n_faces)) == [3, 3, 4, 6]
    # rim vertices 1 and 3 of the wheel meet only on the outer face
    r = apply(LabelledGraph.identity(wheel(5), 3), SurgeryPlan(action=InsertArc(1, 3)))
    assert r.graph.face_size(r.graph.outer_face) == 4
    # a pentagon vertex and a far ring vertex share no face
    with pytest.raises(BadSlot):
        apply(LabelledGraph.identity(light_five_face(), 3), SurgeryPlan(action=InsertArc(1, 18)))


def test_explicit_slot():
    lg = LabelledGraph.identity(wheel(5), 3)
    # the corner at 1 after the hub and at 3 after 2 lie on different faces
    with pytest.raises(BadSlot):
        apply(lg, SurgeryPlan(action=InsertArc(1, 3, None, 6, 4)))
    with pytest.raises(BadSlot):
        apply(lg, SurgeryPlan(action=InsertArc(1, 3, None, 9, 4)))


def test_deletion_errors():
    lg = LabelledGraph.identity(wheel(5), 3)
    with pytest.raises(NotInternal):
        apply(lg, SurgeryPlan(frozenset({1})))
    with pytest.raises(UnknownVertex):
        apply(lg, SurgeryPlan(frozenset({42})))
    with pytest.raises(BadPlan):
        apply(lg, SurgeryPlan(frozenset({6}), Identify(6, 1)))
    r = apply(lg, SurgeryPlan(frozenset({6})))
    assert r.graph.n_vertices == 5 and r.graph.n_faces == 2


def test_new_cycles_oracle_on_insertions():
    """New short cycles are exactly the cycles of the result that are not cycles of the input."""
    rng = random.Random(7)
    checked = 0
    for seed in range(1, 80):
        g = generated(seed, 12)
        f = rng.randrange(g.n_faces)
        vs = list(dict.fromkeys(g.face_vertices(f)))
        pairs = [(a, b) for a in vs for b in vs if a < b and not g.has_edge(a, b)]
        rng.shuffle(pairs)
        for a, b in pairs[:3]:
            if not g.boundary_is_cycle():
                continue
            try:
                rep = check_safety(LabelledGraph.identity(g, 3), None, SurgeryPlan(action=InsertArc(a, b)))
            except BadSlot:
                continue
            before = oracle_cycles(g, 9)
            after = oracle_cycles(rep.result.graph, 9)
            assert {c.vertices for c in rep.new_short_cycles} == after - before
            assert rep.in_class_G == oracle_in_class(rep.result.graph)
            checked += 1
    assert checked > 20


def test_new_cycles_oracle_on_identifications():
    checked = 0
    for seed in range(1, 120):
        g = generated(seed, 12)
        if not g.boundary_is_cycle():
            continue
        for f in range(g.n_faces):
            vs = list(dict.fromkeys(g.face_vertices(f)))
            for a in vs:
                for b in vs:
                    if a >= b or g.has_edge(a, b) or set(g.neighbors(a)) & set(g.neighbors(b)):
                        continue
                    try:
                        rep = check_safety(LabelledGraph.identity(g, 3), None, SurgeryPlan(action=Identify(a, b)))
                    except BadSlot:
                        continue
                    # a cycle of the result through a is old iff it maps back to a cycle of g
                    old = oracle_cycles(g, 9)
                    mapped_old = set()
                    for c in old:
                        mapped_old.add(canon(tuple(a if x == b else x for x in c)))
                    after = oracle_cycles(rep.result.graph, 9)
                    assert {c.vertices for c in rep.new_short_cycles} == after - mapped_old
                    U = set(g.boundary())
                    old_edges = {frozenset(e) for e in g.edges}
                    joins = [
                        e for e in rep.result.graph.edges
                        if set(e) <= U and frozenset(e) not in old_edges
                    ]
                    assert rep.condition_a == (not ({a, b} <= U or joins))
                    checked += 1
                    break
    assert checked > 20


def test_parse_plan():
    plan = parse_plan("delete: 1 2\ndelete: 3  # more\ninsert: 4 5 213 6 7\n")
    assert plan.deletions == {1, 2, 3}
    assert plan.action == InsertArc(4, 5, Perm.from_word("213"), 6, 7)
    assert parse_plan("identify: 1 2").action == Identify(1, 2)
    assert parse_plan("").action is None
    for bad in (
        "identify: 1\n",
        "identify: 1 2\ninsert: 3 4\n",
        "insert: 1 2 3 4\n",
        "insert: 1 2 2134\n",
        "delete: x\n",
        "remove: 1\n",
    ):
        with pytest.raises(FormatError):
            parse_plan(bad)
