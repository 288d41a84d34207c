"""Command line interface: ``mvbool SUBCOMMAND [options] [FILE | --example ID]``.

Exit status is 0 on success (and for PASS or VACUOUS verdicts), 1 when a
verdict is FAIL and 2 on usage, parse or input errors.
"""
from __future__ import annotations

import argparse
import sys

from . import checks, conversion, core, dynamics, interaction, mirror
from .conversion import BooleanConversion
from .dot import export_dot
from .errors import MvboolError
from .examples import example, example_ids
from .netfile import load_map, parse_state, render
from .verdicts import FAIL

_STEPS = {
    "stepwise": "multi",
    "asymptotic": "multi",
    "partial": "bool",
    "fb": "bool",
    "psi": "bool",
    "binarise": "bool",
}


class UsageError(Exception):
    pass


def _apply(obj, step):
    if step not in _STEPS:
        raise UsageError(f"unknown conversion step {step!r}; choose from {', '.join(_STEPS)}")
    if isinstance(obj, BooleanConversion):
        raise UsageError(f"step {step!r} needs a multivalued map, the pipeline is already Boolean")
    if step == "stepwise":
        return core.stepwise(obj)
    if step == "asymptotic":
        return core.asymptotic(obj)
    if step in ("partial", "fb"):
        return conversion.partial_conversion(obj)
    if step == "psi":
        return conversion.extend_via_psi(obj)
    return conversion.binarise(obj)


def _load(args):
    if args.example and args.file:
        raise UsageError("give either FILE or --example, not both")
    if args.example:
        f = example(args.example).map
    elif args.file:
        f = load_map(args.file)
    else:
        raise UsageError("an input FILE or --example ID is required")
    base = f
    for step in filter(None, (args.convert or "").split(",")):
        f = _apply(f, step.strip())
    return base, f


def _space(obj):
    return obj.space


def _state(obj, text):
    space = _space(obj)
    x = parse_state(text, space.n)
    return space.validate(x)


def _fmt(obj, x):
    return _space(obj).format_state(x)


def _print_verdict(v, out):
    for line in v.records():
        print(line, file=out)
    return 1 if v.status == FAIL else 0


# -- subcommands ---------------------------------------------------------------


def cmd_convert(args, out):
    _, f = _load(args)
    if isinstance(f, BooleanConversion):
        src = f.source
        names = [f"{n}_{j}" for n, m in zip(src.component_names, src.levels) for j in range(1, m + 1)]
        print("components: " + " ".join(f"{n}:1" for n in names), file=out)
        print("map:", file=out)
        if not f.is_total:
            print("# admissible states only", file=out)
        for y, z in f.items():
            print(" ".join(map(str, y)) + " -> " + " ".join(map(str, z)), file=out)
    else:
        out.write(render(f))
    return 0


def cmd_attractors(args, out):
    _, f = _load(args)
    atts = dynamics.attractors(f)
    print(f"count={len(atts)}", file=out)
    for k, a in enumerate(atts):
        kind = a.kind.value
        print(f"attractor.{k}.kind={kind}", file=out)
        print(f"attractor.{k}.size={len(a)}", file=out)
        print(f"attractor.{k}.states=" + " ".join(_fmt(f, x) for x in a.states), file=out)
    return 0


def cmd_fixed_points(args, out):
    _, f = _load(args)
    fp = dynamics.fixed_points(f)
    print(f"count={len(fp)}", file=out)
    print("states=" + " ".join(_fmt(f, x) for x in fp), file=out)
    return 0


def _print_graph(g, out):
    print(f"edges={len(g)}", file=out)
    for s, t, sg in g.edge_list():
        v = interaction.format_vertex
        print(f"{v(s)} -> {v(t)} {'+' if sg > 0 else '-'}", file=out)


def _graph(args, f):
    chosen = [bool(args.at), args.global_, bool(args.nonusual), bool(args.richard)]
    if sum(chosen) != 1:
        raise UsageError("choose exactly one of --at, --global, --nonusual, --richard")
    if args.at:
        return interaction.local_graph(f, _state(f, args.at))
    if args.global_:
        return interaction.global_graph(f)
    if args.nonusual:
        x, y = (_state(f, s) for s in args.nonusual)
        return interaction.nonusual_graph(f, x, y)
    return interaction.richard_graph(f, _state(f, args.richard))


def cmd_igraph(args, out):
    _, f = _load(args)
    _print_graph(_graph(args, f), out)
    return 0


def cmd_cycles(args, out):
    _, f = _load(args)
    if args.scan_local:
        found = interaction.scan_local_cycles(f, args.sign)
        print(f"count={len(found)}", file=out)
        for x, c in found:
            print(f"{_fmt(f, x)}: {c} sign={'+' if c.sign > 0 else '-'}", file=out)
        return 0
    g = interaction.local_graph(f, _state(f, args.at)) if args.at else interaction.global_graph(f)
    cyc = interaction.enumerate_cycles(g, args.sign)
    print(f"count={len(cyc)}", file=out)
    for c in cyc:
        print(f"{c} sign={'+' if c.sign > 0 else '-'}", file=out)
    return 0


def cmd_mirror(args, out):
    _, f = _load(args)
    pairs = mirror.find_mirror_pairs(f)
    print(f"pairs={len(pairs)}", file=out)
    for p in pairs:
        print(f"pair={_fmt(f, p.x)} {_fmt(f, p.y)}", file=out)
    if isinstance(f, BooleanConversion):
        return 0
    return _print_verdict(mirror.check_mirror_theorem(f, conjecture=args.conjecture), out)


def cmd_check(args, out):
    base, f = _load(args)
    if isinstance(f, BooleanConversion):
        if not f.is_total:
            raise UsageError("statement checks need a total conversion")
        conv = f
    else:
        base, conv = f, None
    ids = checks.STATEMENTS if args.statement == "all" else [args.statement]
    code = 0
    for k, sid in enumerate(ids):
        if k:
            print(file=out)
        code = max(code, _print_verdict(checks.verify_statement(sid, base, conv), out))
    return code


def cmd_example(args, out):
    if args.id == "list":
        for eid in example_ids():
            print(f"{eid}: {example(eid).description}", file=out)
        return 0
    ex = example(args.id)
    out.write(render(ex.map, comments=(ex.description,)))
    if args.facts:
        code = 0
        for res in checks.check_facts(ex):
            status = "ok" if res.ok else "MISMATCH"
            print(f"# fact {status}: {res.fact.anchor} [{res.fact.kind}]", file=out)
            code = code if res.ok else 1
        return code
    return 0


def cmd_dot(args, out):
    _, f = _load(args)
    if args.what == "async":
        g = dynamics.build_async(f) if not (isinstance(f, BooleanConversion) and not f.is_total) \
            else dynamics.build_async_admissible(f)
    elif args.what == "global":
        g = interaction.global_graph(f)
    else:
        if not args.at:
            raise UsageError("--what local needs --at STATE")
        g = interaction.local_graph(f, _state(f, args.at))
    out.write(export_dot(g))
    return 0


def cmd_report(args, out):
    rep = checks.counterexample_report()
    for line in rep.records():
        print(line, file=out)
    ok = (
        rep.fixed_points == 0
        and rep.attractor_matches_outer_cycle
        and rep.negative_local_cycles == 0
        and rep.binarised_attractor_sizes == [28]
        and not rep.binarised_attractor_is_cycle
    )
    return 0 if ok else 1


# -- parser ----------------------------------------------------------------------


def _input_args(p, convert=True):
    p.add_argument("file", nargs="?", help="network document")
    p.add_argument("--example", metavar="ID", help="use a registry example instead of FILE")
    if convert:
        p.add_argument(
            "--convert",
            metavar="STEPS",
            help="comma-separated pipeline of: " + ", ".join(_STEPS),
        )


def build_parser():
    parser = argparse.ArgumentParser(prog="mvbool", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="print the (converted) map as a table")
    _input_args(p)
    p.set_defaults(run=cmd_convert)

    p = sub.add_parser("attractors", help="attractors of the asynchronous dynamics")
    _input_args(p)
    p.set_defaults(run=cmd_attractors)

    p = sub.add_parser("fixed-points", help="fixed points")
    _input_args(p)
    p.set_defaults(run=cmd_fixed_points)

    p = sub.add_parser("igraph", help="interaction graphs")
    _input_args(p)
    p.add_argument("--at", metavar="STATE", help="local graph at STATE")
    p.add_argument("--global", dest="global_", action="store_true", help="global graph")
    p.add_argument("--nonusual", nargs=2, metavar=("X", "Y"), help="non-usual graph at X towards Y")
    p.add_argument("--richard", metavar="STATE", help="single-step interaction graph at STATE")
    p.set_defaults(run=cmd_igraph)

    p = sub.add_parser("cycles", help="elementary cycles of interaction graphs")
    _input_args(p)
    p.add_argument("--sign", choices=("any", "pos", "neg"), default="any")
    p.add_argument("--scan-local", action="store_true", help="scan every local graph")
    p.add_argument("--at", metavar="STATE", help="cycles of the local graph at STATE")
    p.set_defaults(run=cmd_cycles)

    p = sub.add_parser("mirror", help="mirror pairs and the two-cycle check")
    _input_args(p)
    p.add_argument("--conjecture", action="store_true", help="also look for a mirror pair of cycle states")
    p.set_defaults(run=cmd_mirror)

    p = sub.add_parser("check", help="verify a statement on an instance")
    p.add_argument("statement", help="statement id or 'all': " + ", ".join(checks.STATEMENTS))
    _input_args(p)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("example", help="dump a registry example ('list' for all ids)")
    p.add_argument("id")
    p.add_argument("--facts", action="store_true", help="re-derive and report the expected facts")
    p.set_defaults(run=cmd_example)

    p = sub.add_parser("dot", help="export a graph in DOT format")
    _input_args(p)
    p.add_argument("--what", choices=("async", "global", "local"), default="async")
    p.add_argument("--at", metavar="STATE")
    p.set_defaults(run=cmd_dot)

    p = sub.add_parser("report", help="summary of the six-variable counterexample")
    p.set_defaults(run=cmd_report)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if getattr(args, "statement", None) not in (None, "all") and args.statement not in checks.STATEMENTS:
        print(f"error: unknown statement {args.statement!r}", file=sys.stderr)
        return 2
    try:
        return args.run(args, out)
    except (UsageError, MvboolError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
