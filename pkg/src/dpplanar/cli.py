"""Command-line front end.

Every subcommand prints a human-readable report, or JSON lines with
``--json``; the last line is always the run record (command, input digest,
verdicts, timings).  Exit status: 0 when the verdict is true or a colouring
was found, 1 when it is false or the search was exhausted, 2 on bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

from . import coloring, discharging, structure, surgery
from .cycles import check_splitting_lemma, enumerate_cycles
from .errors import DPPlanarError, PreconditionFailed
from .generate import GenConfig, generate
from .labelling import LabelledGraph, random_labelling, read_sig, to_sig
from .plane_graph import FORBIDDEN_LENGTHS, PlaneGraph, classify, read_pg

__all__ = ["RunReport", "main", "run"]

EXIT_TRUE, EXIT_FALSE, EXIT_INPUT = 0, 1, 2


@dataclass
class RunReport:
    """What one invocation did.

    Attributes:
        command: subcommand name.
        input_digest: sha256 over the bytes of every input file, in order.
        verdicts: named outcomes; these do not depend on ``--jobs``.
        timings: wall-clock seconds per phase.
        exit_code: 0, 1 or 2.
    """

    command: str
    input_digest: str = ""
    verdicts: dict[str, Any] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    exit_code: int = EXIT_TRUE

    def record(self) -> dict[str, Any]:
        return {
            "record": "run",
            "command": self.command,
            "input_digest": self.input_digest,
            "verdicts": self.verdicts,
            "timings": {k: round(v, 6) for k, v in self.timings.items()},
            "exit_code": self.exit_code,
        }


class _Out:
    """Collects output lines; text mode prints them as given, JSON mode one object per line."""

    def __init__(self, as_json: bool, stream):
        self.as_json = as_json
        self.stream = stream

    def text(self, line: str = "") -> None:
        if not self.as_json:
            print(line, file=self.stream)

    def rec(self, kind: str, **fields) -> None:
        if self.as_json:
            print(json.dumps({"record": kind, **fields}, default=str), file=self.stream)


class _Ctx:
    def __init__(self, args, out: _Out, report: RunReport):
        self.args = args
        self.out = out
        self.report = report
        self._hash = hashlib.sha256()
        self._t0 = time.perf_counter()

    def read(self, path: str | Path) -> bytes:
        data = Path(path).read_bytes()
        self._hash.update(data)
        self.report.input_digest = self._hash.hexdigest()
        return data

    def graph(self) -> PlaneGraph:
        self.read(self.args.graph)
        return read_pg(self.args.graph)

    def labelled(self, g: PlaneGraph, k: int = 3) -> LabelledGraph:
        sig = getattr(self.args, "sig", None)
        if sig:
            self.read(sig)
            return read_sig(sig, g, k)
        return LabelledGraph.identity(g, k)

    def lap(self, name: str) -> None:
        now = time.perf_counter()
        self.report.timings[name] = now - self._t0
        self._t0 = now


def _verdict(ctx: _Ctx, name: str, value: bool) -> int:
    ctx.report.verdicts[name] = value
    return EXIT_TRUE if value else EXIT_FALSE


def _cycle_text(c) -> str:
    return ",".join(map(str, c.vertices))


# --------------------------------------------------------------------------
# subcommands


def cmd_info(ctx: _Ctx) -> int:
    g = ctx.graph()
    rep = classify(g)
    ctx.lap("classify")
    sizes = sorted(len(w) for w in g.faces)
    fields = dict(
        vertices=g.n_vertices,
        edges=g.n_edges,
        faces=g.n_faces,
        outer_face_size=len(g.faces[g.outer_face]),
        face_sizes=sizes,
        connected=rep.is_connected,
        two_connected=rep.is_two_connected,
        cycle_space_dimension=g.cycle_space_dimension(),
        boundary=list(g.boundary()),
        boundary_is_cycle=g.boundary_is_cycle(),
        in_class_G=rep.in_class_G,
    )
    for key, val in fields.items():
        ctx.out.text(f"{key}: {val}")
    ctx.out.rec("info", **fields)
    ctx.report.verdicts["in_class_G"] = rep.in_class_G
    return EXIT_TRUE


def cmd_member(ctx: _Ctx) -> int:
    g = ctx.graph()
    rep = classify(g)
    ctx.lap("classify")
    ctx.out.text(f"in_class_G: {rep.in_class_G}")
    ctx.out.text(f"connected: {rep.is_connected}")
    for c in rep.forbidden_cycles_found[: ctx.args.show]:
        ctx.out.text(f"forbidden {c.length}-cycle: {_cycle_text(c)}")
    ctx.out.rec(
        "member",
        in_class_G=rep.in_class_G,
        connected=rep.is_connected,
        forbidden_cycles=[list(c.vertices) for c in rep.forbidden_cycles_found],
    )
    return _verdict(ctx, "in_class_G", rep.in_class_G)


def cmd_cycles(ctx: _Ctx) -> int:
    g = ctx.graph()
    found = enumerate_cycles(g, ctx.args.max)
    ctx.lap("enumerate")
    for c in found:
        ctx.out.text(f"{c.length}: {_cycle_text(c)}")
        ctx.out.rec("cycle", length=c.length, vertices=list(c.vertices))
    ctx.out.text(f"total: {len(found)}")
    ctx.report.verdicts["cycles"] = len(found)
    return EXIT_TRUE


def _parse_cycle(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad cycle {text!r}: expected v1,v2,...") from None


def cmd_goodcycle(ctx: _Ctx) -> int:
    g = ctx.graph()
    c = ctx.args.cycle if ctx.args.cycle is not None else list(g.boundary())
    side = ctx.args.side
    good = structure.is_good_cycle(g, c, side)
    claws = structure.find_claws(g, c, side)
    biclaws = structure.find_biclaws(g, c, side)
    ctx.lap("search")
    ctx.out.text(f"good: {good}")
    for f in claws:
        ctx.out.text(f"claw center {f.center} attachments {list(f.attachments)} cells {list(f.cells)}")
    for f in biclaws:
        ctx.out.text(f"biclaw centers {list(f.centers)} attachments {list(f.attachments)} cells {list(f.cells)}")
    ctx.out.rec(
        "goodcycle",
        cycle=list(c),
        good=good,
        claws=[dict(center=f.center, attachments=list(f.attachments), cells=list(f.cells)) for f in claws],
        biclaws=[dict(centers=list(f.centers), attachments=list(f.attachments), cells=list(f.cells)) for f in biclaws],
    )
    return _verdict(ctx, "good", good)


def cmd_report(ctx: _Ctx) -> int:
    g = ctx.graph()
    lg = ctx.labelled(g)
    rep = classify(g)
    specials = structure.special_subgraphs(g)
    data: dict[str, Any] = {
        "in_class_G": rep.in_class_G,
        "forbidden_cycles": [list(c.vertices) for c in rep.forbidden_cycles_found],
        "special_subgraphs": [list(s.vertices) for s in specials],
        "light_faces": sorted(structure.light_faces(g)),
        "bad_3_faces": sorted(structure.bad_3_faces(lg, specials)),
        "bad_vertices": sorted(structure.bad_vertices(lg, specials)),
        "strings": [
            dict(face=s.face, path=list(s.path), anchors=list(s.anchors))
            for f in range(g.n_faces)
            for s in structure.strings(g, f)
        ],
    }
    if g.boundary_is_cycle():
        U = g.boundary()
        data["boundary"] = list(U)
        if len(U) <= 13:
            data["boundary_good"] = structure.is_good_cycle(g, U)
            data["boundary_bad_cells"] = sorted(structure.classify_bad_cycle(g, U))
        sl = check_splitting_lemma(g, U)
        data["splitting_lemma_holds"] = sl.holds
        try:
            pr = structure.lemma_predicates(lg, U)
            data["predicates"] = pr.values
        except DPPlanarError as exc:
            data["predicates"] = f"not evaluated: {exc}"
    ctx.lap("report")
    for key, val in data.items():
        ctx.out.text(f"{key}: {val}")
    ctx.out.rec("report", **data)
    ctx.report.verdicts["in_class_G"] = rep.in_class_G
    return EXIT_TRUE


def _precoloring(ctx: _Ctx) -> dict[int, int] | None:
    path = getattr(ctx.args, "precolor", None)
    if not path:
        return None
    return coloring.parse_precoloring(ctx.read(path).decode("utf-8"))


def _print_coloring(ctx: _Ctx, res: coloring.SolveResult) -> None:
    ctx.out.text(f"status: {res.status}")
    ctx.out.text(f"nodes: {res.nodes}")
    if res.witness:
        for v in sorted(res.witness):
            ctx.out.text(f"{v} {res.witness[v]}")
    ctx.out.rec(
        "solve",
        status=res.status,
        nodes=res.nodes,
        coloring={str(v): c for v, c in sorted((res.witness or {}).items())},
    )


def cmd_solve(ctx: _Ctx) -> int:
    g = ctx.graph()
    lg = ctx.labelled(g, ctx.args.k)
    res = coloring.solve(lg, ctx.args.k, _precoloring(ctx))
    ctx.lap("solve")
    _print_coloring(ctx, res)
    return _verdict(ctx, "found", res.found)


def cmd_dpcheck(ctx: _Ctx) -> int:
    g = ctx.graph()
    args = ctx.args
    if args.verify:
        if args.k != 3:
            raise argparse.ArgumentTypeError("--verify checks three colours; drop --k or use --k 3")
        rep = coloring.verify_theorem(g, jobs=args.jobs, reduce=not args.no_reduce)
        ctx.lap("sweep")
        ok, classes = rep.colorable, rep.classes
        witness = rep.failures[0] if rep.failures else None
    else:
        res = coloring.is_dp_k_colorable(g, args.k, jobs=args.jobs, reduce=not args.no_reduce)
        ctx.lap("sweep")
        ok, classes, witness = res.colorable, res.classes, res.witness
    ctx.out.text(f"dp_{args.k}_colorable: {ok}")
    ctx.out.text(f"signature_classes: {classes}")
    if witness is not None:
        ctx.out.text("uncolourable signature:")
        for line in to_sig(witness).splitlines():
            ctx.out.text(f"  {line}")
    ctx.out.rec(
        "dpcheck",
        k=args.k,
        colorable=ok,
        classes=classes,
        witness=to_sig(witness).splitlines() if witness is not None else None,
    )
    ctx.report.verdicts["classes"] = classes
    return _verdict(ctx, "colorable", ok)


def cmd_extend(ctx: _Ctx) -> int:
    g = ctx.graph()
    lg = ctx.labelled(g)
    res = coloring.extend_boundary(lg, _precoloring(ctx) or {})
    ctx.lap("extend")
    _print_coloring(ctx, res)
    return _verdict(ctx, "found", res.found)


def cmd_discharge(ctx: _Ctx) -> int:
    g = ctx.graph()
    lg = ctx.labelled(g)
    ledger = discharging.discharge(lg)
    ctx.lap("discharge")
    ctx.out.text(ledger.to_text().rstrip("\n"))
    if ctx.out.as_json:
        for x, q in ledger.initial.items():
            ctx.out.rec(
                "charge",
                element=discharging._name(x),
                initial=discharging.format_charge(q),
                final=discharging.format_charge(ledger.final[x]),
            )
        for t in ledger.transfers:
            ctx.out.rec(
                "transfer",
                rule=t.rule,
                source=discharging._name(t.source),
                target=discharging._name(t.target),
                amount=discharging.format_charge(t.amount),
            )
    conserved = ledger.total_initial == ledger.total_final == 0
    ctx.out.rec(
        "totals",
        initial=discharging.format_charge(ledger.total_initial),
        final=discharging.format_charge(ledger.total_final),
    )
    return _verdict(ctx, "conserved", conserved)


def cmd_audit(ctx: _Ctx) -> int:
    g = ctx.graph()
    lg = ctx.labelled(g)
    ledger = discharging.discharge(lg)
    claims = discharging.audit_claims(ledger)
    ctx.lap("claims")
    for claim, (n, bad) in sorted(claims.summary().items()):
        ctx.out.text(f"{claim}: {n} checks, {bad} violations")
        ctx.out.rec("claim", claim=claim, checks=n, violations=bad)
    for c in claims.violations:
        ctx.out.text(f"violation {c.claim}/{c.check} at {c.element}: {c.lhs} {c.op} {c.rhs}")
    unexplained = claims.unexplained
    ctx.out.text(f"unexplained_violations: {len(unexplained)}")
    if claims.predicates is not None:
        ctx.out.text(f"failed_predicates: {sorted(claims.predicates.failed)}")
    try:
        meta = discharging.meta_audit(lg)
    except PreconditionFailed as exc:
        ctx.out.text(f"meta: not applicable ({exc})")
        ctx.out.rec("meta", applicable=False, reason=str(exc))
        meta = None
    else:
        ctx.lap("meta")
        ctx.out.text(f"meta_failed: {sorted(meta.failed)}")
        ctx.out.text(f"meta_consistent: {meta.consistent}")
        ctx.out.rec("meta", applicable=True, failed=sorted(meta.failed), consistent=meta.consistent)
    ctx.out.rec("audit", violations=len(claims.violations), unexplained=len(unexplained))
    # claims are only promised on instances meeting the meta preconditions
    ok = meta is None or (meta.consistent and not meta.claims.unexplained)
    ctx.report.verdicts["applicable"] = meta is not None
    return _verdict(ctx, "sound", ok)


def cmd_surgery(ctx: _Ctx) -> int:
    g = ctx.graph()
    lg = ctx.labelled(g)
    plan = surgery.parse_plan(ctx.read(ctx.args.plan).decode("utf-8"), lg.k)
    rep = surgery.check_safety(lg, None, plan)
    ctx.lap("surgery")
    ctx.out.text(f"condition_a: {rep.condition_a}")
    ctx.out.text(f"condition_b: {rep.condition_b}")
    for v in rep.u_violations:
        ctx.out.text(f"boundary violation: {v}")
    for c in rep.new_short_cycles:
        ctx.out.text(f"new {c.length}-cycle: {_cycle_text(c)}")
    ctx.out.text(f"in_class_G: {rep.in_class_G}")
    ctx.out.text(f"boundary_preserved: {rep.boundary_preserved}")
    ctx.out.rec(
        "surgery",
        condition_a=rep.condition_a,
        condition_b=rep.condition_b,
        u_violations=[list(v) for v in rep.u_violations],
        new_short_cycles=[list(c.vertices) for c in rep.new_short_cycles],
        in_class_G=rep.in_class_G,
        boundary_preserved=rep.boundary_preserved,
    )
    if ctx.args.output:
        Path(ctx.args.output).write_text(rep.result.graph.to_pg(), encoding="utf-8")
    return _verdict(ctx, "safe", rep.safe)


def cmd_gen(ctx: _Ctx) -> int:
    args = ctx.args
    cfg = GenConfig(
        args.n,
        forbidden_lengths=args.forbid,
        seed=args.seed,
        max_attempts=args.max_attempts,
        pendant_fallback=not args.strict,
    )
    g = generate(cfg)
    ctx.lap("generate")
    forbid = ",".join(map(str, sorted(cfg.forbidden_lengths)))
    text = g.to_pg(f"generated n={cfg.target_vertices} seed={cfg.seed} forbid={forbid}")
    ctx.report.input_digest = hashlib.sha256(text.encode()).hexdigest()
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        ctx.out.text(text.rstrip("\n"))
    if args.sig_output:
        rng = random.Random(args.seed)
        Path(args.sig_output).write_text(to_sig(random_labelling(g, args.k, rng)), encoding="utf-8")
    ctx.out.rec("graph", pg=text, vertices=g.n_vertices, edges=g.n_edges)
    ctx.report.verdicts["vertices"] = g.n_vertices
    return EXIT_TRUE


# --------------------------------------------------------------------------
# argument parsing


def _lengths(text: str) -> frozenset[int]:
    try:
        return frozenset(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad length list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dpplanar",
        description="DP-colouring tools for plane graphs without 4-, 7- and 9-cycles.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object per line")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, func: Callable[[_Ctx], int], help: str, graph=True, sig=False):
        sp = sub.add_parser(name, parents=[common], help=help, description=help)
        if graph:
            sp.add_argument("graph", help=".pg file")
        if sig:
            sp.add_argument("--sig", help=".sig file (identity signature when omitted)")
        sp.set_defaults(func=func)
        return sp

    add("info", cmd_info, "summary of a plane graph")
    sp = add("member", cmd_member, "test membership in the class; exit 0 when inside")
    sp.add_argument("--show", type=int, default=5, help="forbidden cycles to list")
    sp = add("cycles", cmd_cycles, "list cycles up to a length")
    sp.add_argument("--max", type=int, default=13, help="longest cycle length")
    sp = add("goodcycle", cmd_goodcycle, "test whether a cycle is good; exit 0 when good")
    sp.add_argument("--cycle", type=_parse_cycle, help="v1,v2,... (outer boundary when omitted)")
    sp.add_argument("--side", choices=("interior", "exterior"), default="interior")
    add("report", cmd_report, "full structural report", sig=True)
    sp = add("solve", cmd_solve, "find a DP-colouring for one signature", sig=True)
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--precolor", help="file of 'v c' lines")
    sp = add("dpcheck", cmd_dpcheck, "test DP-k-colourability over all signatures")
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--verify", action="store_true", help="require the graph to lie in the class")
    sp.add_argument("--no-reduce", action="store_true", help="skip peeling low-degree vertices")
    sp = add("extend", cmd_extend, "extend a boundary 3-colouring", sig=True)
    sp.add_argument("--precolor", required=True, help="file of 'v c' lines")
    add("discharge", cmd_discharge, "print the discharging ledger", sig=True)
    add("audit", cmd_audit, "check the claims and run the meta audit", sig=True)
    sp = add("surgery", cmd_surgery, "apply a reduction plan and check its safety", sig=True)
    sp.add_argument("--plan", required=True, help="plan file")
    sp.add_argument("-o", "--output", help="write the reduced graph here")
    sp = add("gen", cmd_gen, "generate a random plane graph", graph=False)
    sp.add_argument("--n", type=int, required=True, help="number of vertices")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--forbid", type=_lengths, default=FORBIDDEN_LENGTHS, help="comma-separated lengths")
    sp.add_argument("--max-attempts", type=int, default=500)
    sp.add_argument("--strict", action="store_true", help="fail instead of adding a pendant vertex")
    sp.add_argument("--k", type=int, default=3, help="colours for --sig-output")
    sp.add_argument("--sig-output", help="also write a random signature here")
    sp.add_argument("-o", "--output", help="write the .pg here instead of standard output")
    return p


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> RunReport:
    """Parse ``argv``, execute, print, and return the run record."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_INPUT
        return RunReport(command="", exit_code=code)
    report = RunReport(command=args.command)
    out = _Out(args.json, stdout)
    ctx = _Ctx(args, out, report)
    try:
        report.exit_code = args.func(ctx)
    except (DPPlanarError, OSError, ValueError, argparse.ArgumentTypeError) as exc:
        print(f"dpplanar {args.command}: error: {type(exc).__name__}: {exc}", file=stderr)
        report.exit_code = EXIT_INPUT
        report.verdicts["error"] = type(exc).__name__
    if args.json:
        print(json.dumps(report.record(), default=str), file=stdout)
    return report


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv).exit_code


if __name__ == "__main__":
    sys.exit(main())
