"""Exact discharging on labelled plane graphs without 4-, 7- and 9-cycles.

Every vertex and face starts with charge ``d - 4`` (``d + 4`` for the
unbounded face ``f0``), so the total is zero by Euler's formula.  Eight
local rules then move charge around:

R1  ``f0`` sends 17/13 to each incident vertex.
R2  each non-special 3-face receives 1/3 from each incident vertex.
R3  on a non-special 3-face ``[uvw]`` where ``u`` is an internal 3-vertex
    and ``v`` is not, ``v`` sends 2/15 to ``u``.
R4  each special 5-face sends 1 to each adjacent 3-face.
R5  each non-special 5-face sends 1/4 to each incident internal 3-vertex
    and 1/2 to each incident 2-vertex.
R6  each face ``f != f0`` of size ``d >= 6`` sends ``(d - 4)/d`` to each
    incident vertex.
R7  each vertex that is not bad sends 2/15 to each adjacent bad vertex.
R8  a vertex next to a string on a face ``f != f0`` sends each string
    vertex 5/52 when ``f`` is a non-special 5-face and ``2/d - 2/13`` when
    ``6 <= d <= 12``.

All arithmetic uses :class:`fractions.Fraction`.  ``f0`` takes part in R1
only; incidences are counted once per occurrence on a face walk.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import (
    BoundaryNotGood,
    LedgerMissing,
    NotInClassG,
    OutOfDomain,
    PreconditionFailed,
)
from .labelling import LabelledGraph
from .plane_graph import PlaneGraph, classify
from .structure import (
    LemmaPredicates,
    SpecialSubgraph,
    bad_vertices,
    is_good_cycle,
    lemma_predicates,
    special_subgraphs,
    strings,
)

__all__ = [
    "CLAIM_DEPENDENCIES",
    "ChargeLedger",
    "ClaimCheck",
    "ClaimReport",
    "MetaVerdict",
    "SpecialCharge",
    "Transfer",
    "VertexCounters",
    "audit_claims",
    "discharge",
    "format_charge",
    "g_bound",
    "initial_charges",
    "meta_audit",
]

F = Fraction
Element = tuple[str, int]  # ("v", vertex) or ("f", face id)

R1_AMOUNT = F(17, 13)
R2_AMOUNT = F(1, 3)
R3_AMOUNT = F(2, 15)
R4_AMOUNT = F(1)
R5_THREE = F(1, 4)
R5_TWO = F(1, 2)
R7_AMOUNT = F(2, 15)
R8_FIVE = F(5, 52)
STRING_CAP = F(7, 26)


def format_charge(x: Fraction) -> str:
    """Always ``p/q`` so golden files never depend on ``Fraction.__str__``."""
    return f"{x.numerator}/{x.denominator}"


def _name(x: Element) -> str:
    return f"{x[0]}{x[1]}"


@dataclass(frozen=True)
class Transfer:
    rule: str
    source: Element
    target: Element
    amount: Fraction


@dataclass(frozen=True)
class VertexCounters:
    """Counts used by the vertex bounds.

    ``r1``, ``r2``, ``r3``: non-special 3-faces, 8-faces and 10+-faces at the
    vertex (``f0`` excluded); ``b``: adjacent bad vertices; ``h``: special
    subgraphs containing it; ``t``: non-special 5-faces and 6+-faces at it
    sharing an edge with ``f0``.
    """

    r1: int
    r2: int
    r3: int
    b: int
    h: int
    t: int


@dataclass(frozen=True)
class SpecialCharge:
    subgraph: SpecialSubgraph
    ch_H: Fraction
    ch_star_H: Fraction


@dataclass
class ChargeLedger:
    """Initial charges, every transfer and the final charges.

    ``final`` equals ``initial`` plus incoming minus outgoing transfers.
    """

    graph: PlaneGraph
    initial: dict[Element, Fraction]
    transfers: list[Transfer] = field(default_factory=list)
    final: dict[Element, Fraction] = field(default_factory=dict)
    labelled: LabelledGraph | None = None
    counters: dict[int, VertexCounters] = field(default_factory=dict)
    specials: list[SpecialSubgraph] = field(default_factory=list)
    special_charges: list[SpecialCharge] = field(default_factory=list)
    bad: frozenset[int] = frozenset()
    special_faces: frozenset[int] = frozenset()

    @property
    def total_initial(self) -> Fraction:
        return sum(self.initial.values(), F(0))

    @property
    def total_final(self) -> Fraction:
        return sum(self.final.values(), F(0))

    def replay(self) -> dict[Element, Fraction]:
        """Final charges recomputed from the initial charges and the transfers."""
        out = dict(self.initial)
        for t in self.transfers:
            out[t.source] -= t.amount
            out[t.target] += t.amount
        return out

    def sent(self, source: Element, target: Element, rule: str | None = None) -> Fraction:
        return sum(
            (
                t.amount
                for t in self.transfers
                if t.source == source and t.target == target and (rule is None or t.rule == rule)
            ),
            F(0),
        )

    def incoming(self, x: Element) -> list[Transfer]:
        return [t for t in self.transfers if t.target == x]

    def outgoing(self, x: Element) -> list[Transfer]:
        return [t for t in self.transfers if t.source == x]

    def h(self, v: int) -> int:
        return sum(1 for s in self.specials if v in s.vertex_set)

    def to_text(self) -> str:
        """Ordered text rendering: one block per element, then the totals."""
        g = self.graph
        lines = []
        by_elem: dict[Element, list[str]] = defaultdict(list)
        for t in self.transfers:
            by_elem[t.source].append(f"  {t.rule} -> {_name(t.target)} -{format_charge(t.amount)}")
            by_elem[t.target].append(f"  {t.rule} <- {_name(t.source)} +{format_charge(t.amount)}")
        elements = [("v", v) for v in g.vertices] + [("f", f) for f in range(g.n_faces)]
        for x in elements:
            label = _name(x)
            if x[0] == "f":
                tag = " (outer)" if x[1] == g.outer_face else ""
                label += f" [{' '.join(map(str, g.face_vertices(x[1])))}]{tag}"
            lines.append(f"{label}: initial {format_charge(self.initial[x])}")
            lines.extend(by_elem[x])
            lines.append(f"  final {format_charge(self.final[x])}")
        lines.append(
            f"total: initial {format_charge(self.total_initial)} "
            f"final {format_charge(self.total_final)}"
        )
        return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# charges


def initial_charges(g: PlaneGraph) -> ChargeLedger:
    """``d - 4`` on every vertex and face, ``d + 4`` on ``f0``."""
    initial: dict[Element, Fraction] = {}
    for v in g.vertices:
        initial[("v", v)] = F(g.degree(v) - 4)
    for f in range(g.n_faces):
        d = g.face_size(f)
        initial[("f", f)] = F(d + 4 if f == g.outer_face else d - 4)
    return ChargeLedger(g, initial, final=dict(initial))


def g_bound(k: int) -> Fraction:
    """Guaranteed net charge a ``k``-face passes to a vertex next to a string.

    Defined for ``k`` in {6, 8, 10, 11, 12} and ``k >= 13``.

    Raises:
        OutOfDomain: for any other ``k``.
    """
    if k in (6, 8, 10, 12):
        return F(k - 4, 13)
    if k == 11:
        return F(k - 4, 13) - (F(1, k) - F(1, 13))
    if isinstance(k, int) and k >= 13:
        return F(k - 4, k)
    raise OutOfDomain(f"g(k) is defined for k in {{6, 8, 10, 11, 12}} or k >= 13, not {k}")


def _string_rate(d: int, special: bool) -> Fraction:
    if d == 5:
        return F(0) if special else R8_FIVE
    if 6 <= d <= 12:
        return F(2, d) - F(2, 13)
    return F(0)


def _internal_3(g: PlaneGraph, v: int) -> bool:
    return g.degree(v) == 3 and not g.is_external(v)


def discharge(lg: LabelledGraph) -> ChargeLedger:
    """Apply R1..R8 simultaneously to the initial charges.

    Raises:
        NotInClassG: the graph is disconnected or has a 4-, 7- or 9-cycle.
    """
    g = lg.graph
    report = classify(g)
    if not report.in_class_G:
        raise NotInClassG(
            "discharging needs a connected plane graph without 4-, 7- and 9-cycles",
            report.forbidden_cycles_found,
        )
    ledger = initial_charges(g)
    ledger.labelled = lg
    f0 = g.outer_face
    specials = special_subgraphs(g)
    special_faces = frozenset(f for s in specials for f in (s.triangle_face, s.five_face))
    bad = bad_vertices(lg, specials)
    ledger.specials = specials
    ledger.special_faces = special_faces
    ledger.bad = bad
    out = ledger.transfers

    def send(rule, src, tgt, amount):
        if amount:
            out.append(Transfer(rule, src, tgt, amount))

    bounded = [f for f in range(g.n_faces) if f != f0]

    # R1
    for v in g.face_vertices(f0):
        send("R1", ("f", f0), ("v", v), R1_AMOUNT)
    # R2
    for f in bounded:
        if g.face_size(f) == 3 and f not in special_faces:
            for v in g.face_vertices(f):
                send("R2", ("v", v), ("f", f), R2_AMOUNT)
    # R3
    for f in bounded:
        if g.face_size(f) == 3 and f not in special_faces:
            vs = g.face_vertices(f)
            for u in vs:
                if not _internal_3(g, u):
                    continue
                for v in vs:
                    if v != u and not _internal_3(g, v):
                        send("R3", ("v", v), ("v", u), R3_AMOUNT)
    # R4
    seen_pairs = set()
    for s in specials:
        pair = (s.five_face, s.triangle_face)
        if pair not in seen_pairs:
            seen_pairs.add(pair)
            send("R4", ("f", s.five_face), ("f", s.triangle_face), R4_AMOUNT)
    # R5
    for f in bounded:
        if g.face_size(f) == 5 and f not in special_faces:
            for v in g.face_vertices(f):
                if g.degree(v) == 2:
                    send("R5", ("f", f), ("v", v), R5_TWO)
                elif _internal_3(g, v):
                    send("R5", ("f", f), ("v", v), R5_THREE)
    # R6
    for f in bounded:
        d = g.face_size(f)
        if d >= 6:
            for v in g.face_vertices(f):
                send("R6", ("f", f), ("v", v), F(d - 4, d))
    # R7
    for v in sorted(bad):
        for u in g.neighbors(v):
            if u not in bad:
                send("R7", ("v", u), ("v", v), R7_AMOUNT)
    # R8
    for f in bounded:
        rate = _string_rate(g.face_size(f), f in special_faces)
        if not rate:
            continue
        for s in strings(g, f):
            for anchor in s.anchors:
                for x in s.path:
                    send("R8", ("v", anchor), ("v", x), rate)

    ledger.final = ledger.replay()
    ledger.counters = {v: _counters(g, v, specials, special_faces, bad) for v in g.vertices}
    ledger.special_charges = _special_charges(ledger)
    return ledger


def _counters(g: PlaneGraph, u: int, specials, special_faces, bad) -> VertexCounters:
    f0 = g.outer_face
    r1 = r2 = r3 = t = 0
    f0_edges = set(g.face_edges(f0))
    for f in g.faces_at(u):
        if f == f0:
            continue
        d = g.face_size(f)
        if d == 3 and f not in special_faces:
            r1 += 1
        elif d == 8:
            r2 += 1
        elif d >= 10:
            r3 += 1
        if (d == 5 and f not in special_faces) or d >= 6:
            if f0_edges & set(g.face_edges(f)):
                t += 1
    b = sum(1 for w in g.neighbors(u) if w in bad)
    h = sum(1 for s in specials if u in s.vertex_set)
    return VertexCounters(r1, r2, r3, b, h, t)


def _special_charges(ledger: ChargeLedger) -> list[SpecialCharge]:
    hs = {v: c.h for v, c in ledger.counters.items()}
    out = []
    for s in ledger.specials:
        ch = sum((ledger.initial[("v", v)] / hs[v] for v in s.vertex_set), F(0))
        chs = sum((ledger.final[("v", v)] / hs[v] for v in s.vertex_set), F(0))
        out.append(SpecialCharge(s, ch, chs))
    return out


# --------------------------------------------------------------------------
# claims


# structural properties each claim's argument relies on
CLAIM_DEPENDENCIES: dict[str, tuple[str, ...]] = {
    "claim1": ("no_long_strings",),
    "claim2": ("internal_min_degree", "no_long_strings"),
    "claim3": (
        "internal_min_degree",
        "splitting_paths",
        "no_long_strings",
        "no_light_5face",
        "good_path",
        "bad_outer_neighbor_not_bad",
    ),
    "claim4": (
        "internal_min_degree",
        "no_long_strings",
        "no_negative_light_3face",
        "good_path",
        "bad_outer_neighbor_not_bad",
    ),
    "claim5": ("internal_min_degree", "no_long_strings"),
    "claim6": ("internal_min_degree", "no_long_strings", "no_light_5face"),
}


@dataclass(frozen=True)
class ClaimCheck:
    """One inequality ``lhs <op> rhs`` evaluated on the ledger."""

    claim: str
    check: str
    element: str
    lhs: Fraction
    op: str
    rhs: Fraction

    @property
    def holds(self) -> bool:
        if self.op == ">=":
            return self.lhs >= self.rhs
        if self.op == ">":
            return self.lhs > self.rhs
        if self.op == "<=":
            return self.lhs <= self.rhs
        if self.op == "==":
            return self.lhs == self.rhs
        raise ValueError(self.op)

    def __str__(self) -> str:
        mark = "ok" if self.holds else "VIOLATED"
        return (
            f"{self.claim}.{self.check} {self.element}: "
            f"{format_charge(self.lhs)} {self.op} {format_charge(self.rhs)} {mark}"
        )


@dataclass
class ClaimReport:
    checks: list[ClaimCheck]
    predicates: LemmaPredicates | None

    @property
    def violations(self) -> list[ClaimCheck]:
        return [c for c in self.checks if not c.holds]

    def failed_dependencies(self, claim: str) -> frozenset[str]:
        if self.predicates is None:
            return frozenset()
        return self.predicates.failed & set(CLAIM_DEPENDENCIES.get(claim, ()))

    def explained(self, check: ClaimCheck) -> bool:
        """A violation is explained when a property its claim relies on fails."""
        return bool(self.failed_dependencies(check.claim))

    @property
    def unexplained(self) -> list[ClaimCheck]:
        return [c for c in self.violations if not self.explained(c)]

    def holds(self, claim: str) -> bool:
        return all(c.holds for c in self.checks if c.claim == claim)

    def summary(self) -> dict[str, tuple[int, int]]:
        """``claim -> (checks, violations)``."""
        out: dict[str, list[int]] = {}
        for c in self.checks:
            row = out.setdefault(c.claim, [0, 0])
            row[0] += 1
            row[1] += 0 if c.holds else 1
        return {k: (a, b) for k, (a, b) in out.items()}


def audit_claims(
    ledger: ChargeLedger | None, predicates: LemmaPredicates | None = None
) -> ClaimReport:
    """Evaluate every claim inequality on a discharged ledger.

    Args:
        ledger: result of :func:`discharge`.
        predicates: the structural property vector; computed from the
            ledger's labelled graph when omitted (left ``None`` when the outer
            boundary is not a good cycle).

    Raises:
        LedgerMissing: ``ledger`` is not a discharged ledger.
    """
    if not isinstance(ledger, ChargeLedger) or ledger.labelled is None:
        raise LedgerMissing("run discharge() first")
    if predicates is None:
        try:
            predicates = lemma_predicates(ledger.labelled)
        except BoundaryNotGood:
            predicates = None
    checks: list[ClaimCheck] = []
    checks += _claim1(ledger)
    checks += _claim2(ledger)
    checks += _claim3(ledger)
    checks += _claim4(ledger)
    checks += _claim5(ledger)
    checks += _claim6(ledger)
    return ClaimReport(checks, predicates)


def _string_lemma_holds_at(g: PlaneGraph, f: int) -> bool:
    k = g.face_size(f)
    return all(s.k < (k - 1) // 2 for s in strings(g, f))


def _claim1(L: ChargeLedger) -> list[ClaimCheck]:
    g = L.graph
    out = []
    for f in range(g.n_faces):
        k = g.face_size(f)
        if f == g.outer_face or k < 5:
            continue
        rate = _string_rate(k, f in L.special_faces)
        lemma_ok = _string_lemma_holds_at(g, f)
        for s in strings(g, f):
            for u in s.anchors:
                sent = rate * s.k
                where = f"v{u} on f{f} string {'-'.join(map(str, s.path))}"
                out.append(ClaimCheck("claim1", "cap", where, sent, "<=", STRING_CAP))
                if lemma_ok and (k in (6, 8, 10, 11, 12) or k >= 13):
                    net = F(k - 4, k) - sent
                    out.append(ClaimCheck("claim1", "net", where, net, ">=", g_bound(k)))
    return out


def _claim2(L: ChargeLedger) -> list[ClaimCheck]:
    g = L.graph
    out = []
    for u in g.vertices:
        d = g.degree(u)
        if d < 4:
            continue
        c = L.counters[u]
        ch, chs = L.initial[("v", u)], L.final[("v", u)]
        e = f"v{u}"
        if not g.is_external(u):
            out.append(ClaimCheck("claim2", "internal", e, chs, ">=", F(c.h, 2)))
            out.append(ClaimCheck("claim2", "faces_r1_b", e, F(c.r1 + c.b), "<=", F(c.r3)))
            out.append(
                ClaimCheck("claim2", "faces_r1_b_h", e, F(c.r1 + c.b + c.h), "<=", F(c.r2 + c.r3))
            )
            bound = ch - F(3, 5) * c.r1 - F(2, 15) * c.b + F(1, 2) * c.r2 + F(3, 5) * c.r3
            out.append(ClaimCheck("claim2", "flow_internal", e, chs, ">=", bound))
        else:
            out.append(ClaimCheck("claim2", "external", e, chs, ">", F(11, 15) * c.h))
            out.append(
                ClaimCheck(
                    "claim2", "faces_external", e, F(c.r1 + c.h + c.b), "<=", F(c.r2 + c.r3 + 1 - c.t)
                )
            )
            out.append(ClaimCheck("claim2", "edge_disjoint", e, F(2 * c.r1 + 2 * c.h), "<=", F(d)))
            bound = (
                ch
                - F(3, 5) * c.r1
                - F(2, 15) * c.b
                + F(1, 2) * (c.r2 + c.r3)
                - STRING_CAP * c.t
                + R1_AMOUNT
            )
            out.append(ClaimCheck("claim2", "flow_external", e, chs, ">=", bound))
    return out


def _claim3(L: ChargeLedger) -> list[ClaimCheck]:
    g = L.graph
    out = []
    for sc in L.special_charges:
        s = sc.subgraph
        e = "H[" + " ".join(map(str, s.vertices)) + "]"
        if any(g.is_external(v) for v in s.vertices):
            out.append(ClaimCheck("claim3", "external", e, sc.ch_star_H, ">", F(0)))
        else:
            out.append(ClaimCheck("claim3", "internal", e, sc.ch_star_H, ">=", F(0)))
    return out


def _in_specials(L: ChargeLedger) -> set[int]:
    return {v for s in L.specials for v in s.vertex_set}


def _claim4(L: ChargeLedger) -> list[ClaimCheck]:
    g = L.graph
    covered = _in_specials(L)
    out = []
    for v in g.vertices:
        if v in covered or g.degree(v) < 3:
            continue
        chs = L.final[("v", v)]
        if g.is_external(v):
            out.append(ClaimCheck("claim4", "external", f"v{v}", chs, ">", F(0)))
        else:
            out.append(ClaimCheck("claim4", "internal", f"v{v}", chs, ">=", F(0)))
    return out


def _claim5(L: ChargeLedger) -> list[ClaimCheck]:
    g = L.graph
    covered = _in_specials(L)
    return [
        ClaimCheck("claim5", "two_vertex", f"v{v}", L.final[("v", v)], ">=", F(0))
        for v in g.vertices
        if g.degree(v) == 2 and v not in covered
    ]


def _claim6(L: ChargeLedger) -> list[ClaimCheck]:
    g = L.graph
    return [
        ClaimCheck("claim6", "face", f"f{f}", L.final[("f", f)], ">=", F(0))
        for f in range(g.n_faces)
    ]


# --------------------------------------------------------------------------
# the contradiction


@dataclass
class MetaVerdict:
    """Structural properties that fail on a graph meeting the preconditions.

    If every property held, the claims would make the total final charge
    positive while it is exactly zero; so ``failed`` must be nonempty.
    """

    failed: frozenset[str]
    predicates: LemmaPredicates
    claims: ClaimReport
    total_final: Fraction

    @property
    def consistent(self) -> bool:
        return bool(self.failed) and self.total_final == 0


def meta_audit(lg: LabelledGraph, phi0=None) -> MetaVerdict:
    """Run predicates, discharging and claims on one graph.

    Raises:
        PreconditionFailed: the graph is outside the class, its outer
            boundary is not a good cycle, or it has no external vertex of
            degree at least 3.
    """
    g = lg.graph
    report = classify(g)
    if not report.in_class_G:
        raise PreconditionFailed("graph has a 4-, 7- or 9-cycle or is disconnected")
    if not g.boundary_is_cycle():
        raise PreconditionFailed("outer boundary is not a cycle")
    U = g.boundary()
    if len(U) > 13 or not is_good_cycle(g, U):
        raise PreconditionFailed("outer boundary is not a good cycle")
    if not any(g.degree(v) >= 3 for v in g.external_vertices):
        raise PreconditionFailed("no external vertex of degree at least 3")
    predicates = lemma_predicates(lg, U, phi0)
    ledger = discharge(lg)
    claims = audit_claims(ledger, predicates)
    return MetaVerdict(predicates.failed, predicates, claims, ledger.total_final)


def corpus_meta(labelled: Iterable[LabelledGraph]) -> list[MetaVerdict]:
    """:func:`meta_audit` over every graph that meets its preconditions."""
    out = []
    for lg in labelled:
        try:
            out.append(meta_audit(lg))
        except PreconditionFailed:
            continue
    return out
