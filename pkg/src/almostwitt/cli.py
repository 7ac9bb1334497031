"""almostwitt command line."""
import argparse
import json
import sys

from . import acceptance
from .errors import ParseError
from .scenario import Check, Scenario, ScenarioError, format_report, run, run_file


def _window(text):
    lo, sep, hi = text.partition(":")
    try:
        return (int(lo), int(hi)) if sep else (0, int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"level window is N or LO:HI, not {text!r}")


def _global_flags(ap, default):
    ap.add_argument("--prime", type=int, default=default(None), help="the prime p (default 2)")
    ap.add_argument("--level-window", type=_window, default=default(None),
                    help="levels N or LO:HI of the monomial setup (default 0:8)")
    ap.add_argument("--depth", type=int, default=default(None), help="probe depth K for semi-decidable checks (default 6)")
    ap.add_argument("--seed", type=int, default=default(None), help="seed for sampled checks (default 0)")
    ap.add_argument("--format", choices=("table", "json"), default=default("table"))
    ap.add_argument("--certificates", metavar="PATH", default=default(None), help="also write the full JSON report here")


def build_parser():
    ap = argparse.ArgumentParser(prog="almostwitt", description="Exact almost ring theory and Witt vector workbench.")
    _global_flags(ap, lambda v: v)
    # the same flags are accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, lambda v: argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    w = add("witt", help="Witt vector arithmetic")
    w.add_argument("operation", choices=("add", "mul", "ghost", "F", "V", "pr", "alpha", "kernel", "perfect"))
    w.add_argument("vectors", nargs="*", help="bracketed coordinate lists such as [1, 0]")
    w.add_argument("--ring", required=True, help="base ring, or a witt{...} ring")
    w.add_argument("--length", type=int, default=2)

    li = add("lift", help="idempotent ideal lifting")
    li.add_argument("mode", choices=("nilpotent", "gluing", "witt"))
    li.add_argument("--source", help="nilpotent: source ring")
    li.add_argument("--target", help="nilpotent: target ring")
    li.add_argument("--ideal", action="append", default=[], help="generator of the ideal (repeatable)")
    for k in ("a0", "a1", "a2", "a3"):
        li.add_argument(f"--{k}", help=f"gluing: ring {k.upper()}")
    for k in ("f1", "f2", "g1", "g2"):
        li.add_argument(f"--{k}", help=f"gluing: {k} as kept factor indices, e.g. 0,1 (default: by expression)")
    li.add_argument("--m1", action="append", default=[], help="gluing: generator of m1")
    li.add_argument("--m2", action="append", default=[], help="gluing: generator of m2")
    li.add_argument("--ring", help="witt: base ring, or 'monomial' for F_p[t^(1/p^N)] with m = (t^(1/p^inf))")
    li.add_argument("--n", type=int, default=1)

    al = add("almost", help="almost mathematics over F_p[t^(1/p^N)]")
    al.add_argument("mode", choices=("zero", "iso", "elements", "flat", "entourage", "fg"))
    al.add_argument("--module", help="0, m, R/m, R^k, R/(a, ...), coker [[...]]")
    al.add_argument("--map", help="inclusion, identity: M, projection: R/(...), multiply: a")
    al.add_argument("--m0", action="append", default=[], help="entourage/fg: generator of m0")
    al.add_argument("--M0", action="append", default=[], help="entourage: generator of M0")
    al.add_argument("--M1", action="append", default=[], help="entourage: generator of M1")

    de = add("descent", help="descent along the truncated Milnor square")
    de.add_argument("scenario", nargs="?", help="scenario file; without one, the built-in table")
    de.add_argument("--module", action="append", default=[], help="A0-module such as A0/(x+y)")

    ti = add("tilt", help="tilts and perfections")
    ti.add_argument("--ring", required=True)
    ti.add_argument("--precision", type=int, default=4)
    ti.add_argument("--perfection", action="store_true", help="compute the perfection instead")

    ru = add("run", help="run scenario files")
    ru.add_argument("files", nargs="*")
    ru.add_argument("--acceptance", action="store_true", help="run every acceptance criterion")
    return ap


DEFAULT_DESCENT = ["A0", "A0^2", "A0/(x)", "A0/(x+y)", "A0/(x^2+y^2)", "A0/(x+y^2)", "A0/(x,y)"]


def _checks(args):
    cmd = args.command
    if cmd == "witt":
        ring = args.ring if args.ring.startswith("witt") else \
            f"witt{{{args.ring}, length={args.length}" + (f", p={args.prime}" if args.prime else "") + "}"
        if args.operation == "kernel":
            return [Check("alpha_kernel", {"ring": ring})]
        if args.operation == "perfect":
            extra = {"p": args.prime} if args.prime else {}
            return [Check("witt_perfect", {"ring": args.ring, "length": args.length, **extra})]
        need = 2 if args.operation in ("add", "mul") else 1
        if len(args.vectors) != need:
            raise SystemExit(f"witt {args.operation} takes {need} vector(s)")
        return [Check("witt", {"ring": ring, "op": args.operation, **dict(zip("ab", args.vectors))})]
    if cmd == "lift":
        if args.mode == "nilpotent":
            return [Check("nilpotent_lift", {"map": "f", "ideal": args.ideal})]
        if args.mode == "gluing":
            return [Check("gluing_lift", {"f1": "f1", "f2": "f2", "g1": "g1", "g2": "g2",
                                          "m1": args.m1, "m2": args.m2})]
        extra = {"p": args.prime} if args.prime else {}
        return [Check("witt_lift", {"ring": args.ring, "ideal": args.ideal, "n": args.n, **extra})]
    if cmd == "almost":
        op = {"zero": "almost_zero", "iso": "almost_iso", "elements": "almost_elements", "flat": "flatness",
              "entourage": "entourage", "fg": "almost_fg"}[args.mode]
        a = {"module": args.module} if args.mode != "iso" else {"map": args.map}
        if args.mode == "entourage":
            a.update({"m0": args.m0, "M0": args.M0, "M1": args.M1})
        if args.mode == "fg" and args.m0:
            a["m0"] = args.m0
        return [Check(op, a)]
    if cmd == "descent":
        p = args.prime or 2
        return [Check("descent_unit", {"p": p, "module": m}) for m in (args.module or DEFAULT_DESCENT)] + \
            [Check("descent_datum", {"p": p, "xi": [[p - 1]]})]
    if cmd == "tilt":
        if args.perfection:
            return [Check("perfection", {"ring": args.ring})]
        extra = {"p": args.prime} if args.prime else {}
        return [Check("tilt", {"ring": args.ring, "precision": args.precision, **extra})]
    raise AssertionError(cmd)


def _scenario_for(args):
    sc = Scenario(name=f"almostwitt {args.command}" + (f" {args.mode}" if hasattr(args, "mode") else ""))
    if args.command == "lift" and args.mode == "nilpotent":
        sc.rings = {"S": args.source, "R": args.target}
        sc.maps = {"f": {"source": "S", "target": "R"}}
    if args.command == "lift" and args.mode == "gluing":
        sc.rings = {"A0": args.a0, "A1": args.a1, "A2": args.a2, "A3": args.a3}
        ends = {"f1": ("A0", "A1"), "f2": ("A0", "A2"), "g1": ("A1", "A3"), "g2": ("A2", "A3")}
        for k, (s, t) in ends.items():
            sc.maps[k] = {"source": s, "target": t}
            if getattr(args, k):
                sc.maps[k]["coords"] = [int(i) for i in getattr(args, k).split(",")]
    sc.checks = _checks(args)
    return sc


def _emit(report, args, out):
    print(format_report(report, args.format), file=out)
    if args.certificates:
        with open(args.certificates, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")


def _acceptance(args, out):
    results = acceptance.run_all()
    if args.format == "json":
        print(json.dumps([{"number": r.number, "title": r.title, "ok": r.ok} for r in results], indent=2), file=out)
    else:
        for r in results:
            print(r.line(), file=out)
    return 0 if all(r.ok for r in results) else 1


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    kw = {"prime": args.prime, "window": args.level_window, "depth": args.depth, "seed": args.seed}
    try:
        if args.command == "run" or (args.command == "descent" and args.scenario):
            files = args.files if args.command == "run" else [args.scenario]
            if args.command == "run" and args.acceptance:
                code = _acceptance(args, out)
                if not files:
                    return code
            else:
                code = 0
            for path in files:
                try:
                    report = run_file(path, **kw)
                except ScenarioError as e:
                    print(f"{path}:{e.line}:{e.col}: error: {e.message}", file=out)
                    code = max(code, 2)
                    continue
                _emit(report, args, out)
                code = max(code, report.exit_code)
            return code
        report = run(_scenario_for(args), **kw)
    except ScenarioError as e:
        print(f"error: {e}", file=out)
        return 2
    except ParseError as e:
        print(f"error: {e}", file=out)
        return 2
    _emit(report, args, out)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
