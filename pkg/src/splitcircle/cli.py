"""Command-line entry point."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import FAMILIES, PARAMETRIC, make_fsc
from .chord import format_model, parse_model
from .errors import NotSplit, SplitCircleError
from .graph import format_graph, parse_graph
from .oracle import OracleConfig
from .recognize import Verdict, recognize
from .render import render_svg

EXIT = {"Circle": 0, "NotCircle": 2, "NotSplit": 3}


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _verdict(path: str, want_model: bool = True) -> Verdict:
    g = parse_graph(_read(path))
    try:
        return recognize(g, want_model=want_model)
    except NotSplit:
        return Verdict("NotSplit")


def cmd_recognize(args) -> int:
    v = _verdict(args.file)
    print(v.to_json())
    return EXIT[v.status]


def cmd_witness(args) -> int:
    v = _verdict(args.file, want_model=False)
    print(json.dumps(v.to_dict().get("witness"), separators=(",", ":")))
    return EXIT[v.status]


def cmd_model(args) -> int:
    v = _verdict(args.file)
    if v.model is None:
        print(f"no model: graph is {v.status}", file=sys.stderr)
        return EXIT[v.status]
    sys.stdout.write(format_model(v.model))
    return 0


def cmd_render(args) -> int:
    if args.graph:
        v = _verdict(args.file)
        if v.model is None:
            print(f"no model: graph is {v.status}", file=sys.stderr)
            return EXIT[v.status]
        model = v.model
    else:
        model = parse_model(_read(args.file))
    svg = render_svg(model)
    if args.output:
        Path(args.output).write_text(svg)
    else:
        sys.stdout.write(svg)
    return 0


def cmd_catalog(args) -> int:
    k = None
    if args.family in PARAMETRIC:
        if args.k is None:
            print(f"{args.family} needs a parameter k", file=sys.stderr)
            return 1
        k = int(args.k)
    member = make_fsc(args.family, k)
    sidecar = {
        "family": member.family,
        "k": member.k,
        "K": list(member.K),
        "S": list(member.S),
        "matrix": member.matrix,
    }
    text = format_graph(member.graph)
    if args.output:
        Path(args.output).write_text(text)
        Path(args.output + ".json").write_text(json.dumps(sidecar, separators=(",", ":")) + "\n")
    else:
        sys.stdout.write(text)
        print(json.dumps(sidecar, separators=(",", ":")), file=sys.stderr)
    return 0


def cmd_selfcheck(args) -> int:
    from .selfcheck import run_all

    kw = {}
    if args.cap is not None:
        kw["circle_cap"] = args.cap
    cfg = OracleConfig.from_env(**kw)
    results = run_all(cfg, seed=args.seed)
    for r in results:
        print(r.line())
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    return 0 if passed == len(results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="splitcircle", description="Recognize circle split graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("recognize", help="print the verdict as JSON")
    s.add_argument("file", help="graph file, or - for stdin")
    s.set_defaults(func=cmd_recognize)

    s = sub.add_parser("witness", help="print a forbidden induced subgraph as JSON (null if circle)")
    s.add_argument("file")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("model", help="print a chord model")
    s.add_argument("file")
    s.set_defaults(func=cmd_model)

    s = sub.add_parser("render", help="draw a chord model as SVG")
    s.add_argument("file", help="model file (or graph file with --graph)")
    s.add_argument("--graph", action="store_true", help="input is a graph; render its model with arc labels")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("catalog", help="emit a forbidden graph and its JSON sidecar")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("k", nargs="?")
    s.add_argument("-o", "--output", help="write the graph here and the sidecar to OUTPUT.json")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("selfcheck", help="run the acceptance suite")
    s.add_argument("--cap", type=int, default=None, help="circle oracle vertex cap")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_selfcheck)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SplitCircleError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
