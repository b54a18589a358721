"""Command-line entry point: ``relhom <command> [options]``.

Exit codes: 0 pass, 2 counterexample found, 3 unsupported instance,
4 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import acceptance
from .complexes import Complex, PreconditionError
from .cotorsion import (UnsupportedInstance, completeness_construct, hereditary_check, perfect_check,
                        star_sequences, verify_cotorsion_pair, wakamatsu_check)
from .derived import HypothesisViolation, gorenstein_report, lift_to_x, lift_to_y, singularity_verdict
from .relative import (AdmissibilityError, DepthError, coresolution_dimension, ext_table,
                       proper_coresolution, proper_resolution, resolution_dimension,
                       verify_balanced_pair)
from .workspace import Workspace, WorkspaceError, open_workspace, save

EXIT_PASS, EXIT_COUNTEREXAMPLE, EXIT_UNSUPPORTED, EXIT_INPUT = 0, 2, 3, 4

COMMANDS = ("check-balanced", "ext-table", "resdim", "cotorsion-check", "hereditary", "complete",
            "wakamatsu", "lift", "gorenstein", "singularity", "selftest")


class InputError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    settings: dict
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    exit_code: int = EXIT_PASS
    lines: list = field(default_factory=list)

    def to_json(self) -> str:
        body = {k: getattr(self, k) for k in
                ("command", "settings", "verdicts", "witnesses", "counterexamples", "timings",
                 "exit_code")}
        return json.dumps(body, indent=2, sort_keys=True, default=str) + "\n"

    def say(self, text: str) -> None:
        self.lines.append(text)

    def fail(self, code: int = EXIT_COUNTEREXAMPLE) -> None:
        self.exit_code = max(self.exit_code, code)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="relhom", description="Relative homological algebra workbench.")
    parser.add_argument("command", help="one of: " + ", ".join(COMMANDS))
    parser.add_argument("args", nargs="*", help="module or complex names")
    parser.add_argument("--workspace", "-w", help="workspace JSON file or builtin algebra name")
    parser.add_argument("--pair", help="balanced pair name (default: classical)")
    parser.add_argument("--sub", help="subcategory name")
    parser.add_argument("--spec", help="cotorsion pair name (default: all registered)")
    parser.add_argument("--side", choices=("right", "left", "auto"), default="auto",
                        help="resolution (right) or coresolution (left)")
    parser.add_argument("--direction", choices=("x", "y"), default="x",
                        help="lift into add(X) (x) or add(Y) (y)")
    parser.add_argument("--depth", type=int, help="resolution depth / highest Ext degree")
    parser.add_argument("--cap", type=int, help="dimension cap")
    parser.add_argument("--samples", type=int, help="random samples per check")
    parser.add_argument("--seed", type=int, help="random seed")
    parser.add_argument("--json", metavar="OUT", help="write the run report as JSON")
    parser.add_argument("--save", metavar="OUT", help="write the (extended) workspace")
    return parser


# ---------------------------------------------------------------------------
# Commands


def _pair(ws: Workspace, args):
    return ws.pair(args.pair or "classical")


def _modules(ws: Workspace, names: Sequence[str]):
    return [ws.module(n) for n in names] if names else list(ws.corpus)


def cmd_check_balanced(ws, args, rep: RunReport) -> None:
    pair = _pair(ws, args)
    r = verify_balanced_pair(pair.x, pair.y, ws.corpus, rep.settings["depth"],
                             rep.settings["samples"], ws.rng(rep.settings["seed"]), pair.name)
    rep.verdicts["balanced_pair"] = r.summary()
    rep.counterexamples.extend(r.failures)
    rep.counterexamples.extend(repr(c) for c in r.mismatches)
    rep.say(f"pair {pair.name}: {'balanced on corpus' if r.passed else 'FAILS'} "
            f"({r.samples} sampled complexes, {len(r.mismatches)} mismatches)")
    for f in r.failures:
        rep.say(f"  {f}")
    if not r.passed:
        rep.fail()


def cmd_ext_table(ws, args, rep: RunReport) -> None:
    pair = _pair(ws, args)
    maxdeg = args.depth or ws.settings.maxdeg
    if len(args.args) == 2:
        pairs = [(ws.module(args.args[0]), ws.module(args.args[1]))]
    elif not args.args:
        pairs = [(m, n) for m in ws.corpus for n in ws.corpus]
    else:
        raise InputError("ext-table takes two module names or none")
    rep.say(f"Ext^i over pair {pair.name}, i = 1..{maxdeg}")
    for m, n in pairs:
        t = ext_table(m, n, pair, maxdeg)
        key = f"{m.name},{n.name}"
        rep.verdicts[key] = {"via_x": t.via_x, "via_y": t.via_y, "balanced": t.balanced}
        rep.say(f"  Ext({m.name}, {n.name}) = {t.via_x}" + ("" if t.balanced else f"  via Y {t.via_y}  UNBALANCED"))
        if not t.balanced:
            rep.counterexamples.append(key)
            rep.fail()


def cmd_resdim(ws, args, rep: RunReport) -> None:
    sub = ws.sub(args.sub or "proj")
    side = args.side
    if side == "auto":
        side = "left" if sub.contains_injectives and not sub.contains_projectives else "right"
    cap = rep.settings["cap"]
    for m in _modules(ws, args.args):
        if side == "right":
            r = resolution_dimension(m, sub, cap)
            res = proper_resolution(m, sub, cap + 1)
            kind = "syzygy"
        else:
            r = coresolution_dimension(m, sub, cap)
            res = proper_coresolution(m, sub, cap + 1)
            kind = "cosyzygy"
        before = len(ws.corpus)
        for k, s in enumerate(res.syzygies[1:], start=1):
            ws.extend_corpus(s, f"resdim: {kind} {k} of {m.name} over {sub.name}",
                             prefix="K" if side == "right" else "C")
        added = [c.name for c in ws.corpus[before:]]
        rep.verdicts[m.name] = {"value": r.label, "consistent": r.consistent, "period": r.period,
                                "ext_crosscheck": r.ext_crosscheck}
        if added:
            rep.witnesses.setdefault("corpus_added", {})[m.name] = added
        extra = f", syzygies periodic with period {r.period}" if r.period else ""
        rep.say(f"{sub.name}-{'resdim' if side == 'right' else 'coresdim'} {m.name} = {r.label}"
                f"{extra}{'' if r.consistent else '  (Ext cross-check DISAGREES)'}")
        if not r.consistent:
            rep.counterexamples.append(m.name)
            rep.fail()


def _specs(ws, args):
    if args.spec:
        return [ws.spec(args.spec)]
    if not ws.cotorsion:
        raise InputError("workspace registers no cotorsion pairs")
    return list(ws.cotorsion.values())


def cmd_cotorsion_check(ws, args, rep: RunReport) -> None:
    for spec in _specs(ws, args):
        v = verify_cotorsion_pair(spec, ws.corpus)
        rep.verdicts[spec.name] = v.summary()
        rep.say(f"{spec.name}: {'cotorsion pair on corpus' if v.verified else 'NOT a cotorsion pair'}")
        for c, d, e in v.offending:
            rep.say(f"  Ext^1({c.name}, {d.name}) = {e}")
            rep.counterexamples.append([spec.name, c.name, d.name, e])
        if v.unsaturated_c or v.unsaturated_d:
            rep.say(f"  unsaturated (informative): C {[m.name for m in v.unsaturated_c]}, "
                    f"D {[m.name for m in v.unsaturated_d]}")
        perf = perfect_check(spec, ws.corpus)
        rep.verdicts[spec.name]["perfect"] = perf.label
        rep.say(f"  {perf.label}")
        if not v.verified:
            rep.fail()


def cmd_hereditary(ws, args, rep: RunReport) -> None:
    for spec in _specs(ws, args):
        v = hereditary_check(spec, ws.corpus, ws.settings.maxdeg, rep.settings["samples"],
                             ws.rng(rep.settings["seed"]))
        rep.verdicts[spec.name] = v.summary()
        rep.say(f"{spec.name}: hereditary {'yes' if v.hereditary else 'no'}; criteria "
                f"(1)={v.via_c_resolving} (2)={v.via_d_coresolving} (3)={v.via_ext}"
                f"{'' if v.consistent else '  INCONSISTENT'}")
        if not v.consistent:
            rep.counterexamples.append(spec.name)
            rep.fail()


def cmd_complete(ws, args, rep: RunReport) -> None:
    spec = ws.spec(args.spec) if args.spec else _specs(ws, args)[0]
    for m in _modules(ws, args.args):
        r = completeness_construct(m, spec)
        rep.verdicts[m.name] = r.summary()
        d, e, _ = r.result.terms
        rep.say(f"{m.name}: 0 -> D{list(d.dims)} -> E{list(e.dims)} -> {m.name} -> 0, "
                f"*-acyclic {r.star_acyclic}, E in C {r.e_in_c}")
        if not r.star_acyclic:
            rep.counterexamples.append(m.name)
            rep.fail()


def cmd_wakamatsu(ws, args, rep: RunReport) -> None:
    pair = _pair(ws, args)
    sub = ws.sub(args.sub or pair.x.name)
    seqs = star_sequences(pair, ws.corpus, rep.settings["depth"])
    for m in _modules(ws, args.args):
        r = wakamatsu_check(sub, m, pair, rep.settings["depth"], seqs)
        rep.verdicts[m.name] = r.summary()
        rep.say(f"{m.name}: kernel {list(r.kernel.dims)}, Ext^1 against {sub.name} "
                f"{[e for _, e in r.ext_dims]}: {'pass' if r.passed else 'FAIL'}")
        if not r.passed:
            rep.counterexamples.append(m.name)
            rep.fail()


def cmd_lift(ws, args, rep: RunReport) -> None:
    if len(args.args) != 1:
        raise InputError("lift takes one complex or module name")
    name = args.args[0]
    c = ws.complexes[name] if name in ws.complexes else Complex.stalk(ws.module(name))
    cap = rep.settings["cap"]
    if args.direction == "x":
        r = lift_to_x(c, ws.sub(args.sub or "proj"), cap)
    else:
        r = lift_to_y(c, ws.sub(args.sub or "inj"), cap)
    rep.verdicts["lift"] = r.summary()
    rep.say(f"lift of {name}: degrees {r.summary()['output_degrees']}, dims "
            f"{r.summary()['output_dims']}, cone certified {r.certified}")
    if not r.certified:
        rep.counterexamples.append(name)
        rep.fail()


def cmd_gorenstein(ws, args, rep: RunReport) -> None:
    r = gorenstein_report(ws.algebra, rep.settings["cap"])
    rep.verdicts["gorenstein"] = r.summary()
    fmt = lambda v: "inf (> cap)" if v is None else str(v)
    rep.say(f"Gorenstein: {'yes' if r.gorenstein else 'undecided at cap'}, "
            f"pd D(A) = {fmt(r.pd_dual_regular)}, id A = {fmt(r.id_regular)}")
    rep.say(f"  injective stalks liftable {r.injective_stalks_liftable}, "
            f"homotopy equivalence {r.homotopy_equivalence}")
    if not r.iff_consistent or r.homotopy_equivalence is False:
        rep.counterexamples.append("iff cross-check")
        rep.fail()


def cmd_singularity(ws, args, rep: RunReport) -> None:
    pair = _pair(ws, args)
    v = singularity_verdict(pair, ws.corpus, rep.settings["cap"])
    rep.verdicts["singularity"] = v.summary()
    rep.witnesses.update({k: f"resdim {d}" for k, d in v.witnesses.items()})
    rep.say(f"pair {pair.name}: {v.verdict}")
    for k, d in v.witnesses.items():
        rep.say(f"  {k}: {pair.x.name}-resdim {d}")
    for k, per in v.unresolved.items():
        rep.say(f"  {k}: resdim > cap" + (f", syzygy {per[0]} repeats with period {per[1]}"
                                          if per else ", no period found"))


def cmd_selftest(ws, args, rep: RunReport) -> None:
    results = acceptance.run_all(rep.settings["seed"], echo=print)
    for r in results:
        rep.verdicts[r.cid] = {"passed": r.passed, "checks": r.checked}
        rep.timings[r.cid] = round(r.seconds, 3)
        if not r.passed:
            rep.counterexamples.append({r.cid: r.detail})
            rep.fail()


HANDLERS = {
    "check-balanced": cmd_check_balanced, "ext-table": cmd_ext_table, "resdim": cmd_resdim,
    "cotorsion-check": cmd_cotorsion_check, "hereditary": cmd_hereditary,
    "complete": cmd_complete, "wakamatsu": cmd_wakamatsu, "lift": cmd_lift,
    "gorenstein": cmd_gorenstein, "singularity": cmd_singularity, "selftest": cmd_selftest,
}


def run(command: str, ws: Optional[Workspace], args: argparse.Namespace) -> RunReport:
    if command not in HANDLERS:
        raise InputError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    s = ws.settings if ws is not None else None
    settings = {
        "workspace": ws.name if ws is not None else None,
        "seed": args.seed if args.seed is not None else (s.seed if s else 0),
        "depth": args.depth or (s.depth if s else 8),
        "cap": args.cap or (s.cap if s else 6),
        "samples": args.samples if args.samples is not None else (s.samples if s else 20),
        "pair": args.pair, "sub": args.sub, "spec": args.spec,
    }
    rep = RunReport(command, settings)
    t = time.perf_counter()
    HANDLERS[command](ws, args, rep)
    rep.timings["total"] = round(time.perf_counter() - t, 3)
    return rep


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command not in HANDLERS:
            raise InputError(f"unknown command {args.command!r}; expected one of {', '.join(COMMANDS)}")
        ws = None
        if args.command != "selftest":
            if not args.workspace:
                raise InputError("--workspace is required")
            ws = open_workspace(args.workspace, args.seed)
        rep = run(args.command, ws, args)
    except (InputError, WorkspaceError, KeyError) as exc:
        print(f"relhom: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (UnsupportedInstance, HypothesisViolation, PreconditionError, AdmissibilityError,
            DepthError) as exc:
        print(f"relhom: unsupported instance: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    for line in rep.lines:
        print(line)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(rep.to_json())
    if args.save and ws is not None:
        save(ws, args.save)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
