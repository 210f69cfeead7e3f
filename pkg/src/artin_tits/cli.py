"""Command-line interface.

Exit status: 0 on an answer (including NONTRIVIAL / NOT-MEMBER), 2 for
usage or parse errors, 3 for an unsupported base case, 4 when a resource
cap is hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from . import amalgam, structure
from .errors import (
    ArtinTitsError,
    DerivationError,
    GraphError,
    GraphParseError,
    ResourceLimitError,
    UnsupportedBaseCase,
    WordParseError,
)
from .graph import classify, load_graph
from .limits import Limits
from .words import format_word, parse_word

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3
EXIT_RESOURCE = 4

COMMANDS = ("classify", "wp", "member", "center", "torsion", "decompose")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="artin-tits", description="Computations in Artin-Tits groups given by Coxeter graphs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", required=True, help="graph file (vertices:/edge: format)")
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("--cap-elements", type=int, default=Limits.max_elements, metavar="N", help="max elements of a finite Coxeter group")
    common.add_argument("--cap-words", type=int, default=Limits.max_words, metavar="N", help="max words visited by one rewriting search")
    common.add_argument("--cap-length", type=int, default=Limits.max_word_length, metavar="N", help="max letters in the input word")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="print the classification flags")
    wp = sub.add_parser("wp", parents=[common], help="decide whether a word is trivial")
    wp.add_argument("--word", required=True, help='e.g. "s t s^-1"')
    wp.add_argument("--trace", action="store_true", help="print the syllabic reduction steps")
    member = sub.add_parser("member", parents=[common], help="standard parabolic membership with rewriting")
    member.add_argument("--word", required=True)
    member.add_argument("--subset", required=True, help='e.g. "s t"')
    member.add_argument("--trace", action="store_true")
    sub.add_parser("center", parents=[common], help="describe the center")
    sub.add_parser("torsion", parents=[common], help="torsion-freeness certificate")
    sub.add_parser("decompose", parents=[common], help="print the infinity-edge decomposition tree")
    return parser


def _emit_json(doc: dict, out: TextIO) -> None:
    json.dump(doc, out, indent=2)
    out.write("\n")


def _flag(b: bool) -> str:
    return "true" if b else "false"


def _cmd_classify(g, args, limits, out) -> None:
    report = classify(g)
    if args.json:
        _emit_json({"vertices": list(g.vertices), **report.to_json()}, out)
        return
    comps = " ".join("{" + " ".join(c) + "}" for c in report.components)
    types = ", ".join(t or "-" for t in report.component_types)
    print(f"vertices: {' '.join(g.vertices)}", file=out)
    print(f"components: {comps}", file=out)
    print(f"component types: {types}", file=out)
    for name in ("spherical", "free_of_infinity", "fc_type", "large", "extra_large", "two_dimensional", "connected"):
        print(f"{name}: {_flag(getattr(report, name))}", file=out)


def _tracer(args, steps: list, out):
    if not getattr(args, "trace", False):
        return None

    def record(step: dict) -> None:
        steps.append(step)
        if not args.json:
            sylls = " | ".join(f"{s['factor']}:{s['word']}" for s in step["syllables"]) or "(empty)"
            where = f"{step['at']}" + (f"->{step['into']}" if "into" in step else "")
            print(f"step {step['step']} @{where}: {sylls}", file=out)

    return record


def _cmd_wp(g, args, limits, out) -> None:
    word = parse_word(args.word, g.vertices, source="--word")
    limits.check_length(word)
    solver = amalgam.amalgam_solver(g, limits)
    solver.check_supported()
    steps: list[dict] = []
    trace = _tracer(args, steps, out)
    doc: dict = {"vertices": list(g.vertices), "word": format_word(word)}
    if isinstance(solver.tree, amalgam.Node):
        form = solver.reduced_form(word, trace=trace)
        trivial = form.length == 0
        doc["method"] = "amalgam"
        doc["tree"] = solver.tree.to_json()
        doc["reduced_form"] = form.to_json()
    else:
        trivial = solver.is_trivial(word)
        doc["method"] = "garside"
        doc["normal_form"] = str(amalgam.garside_structure(g, limits).normal_form(word))
    doc["trivial"] = trivial
    doc["answer"] = "TRIVIAL" if trivial else "NONTRIVIAL"
    if trace is not None:
        doc["trace"] = steps
    if args.json:
        _emit_json(doc, out)
    else:
        print(doc["answer"], file=out)


def _cmd_member(g, args, limits, out) -> None:
    word = parse_word(args.word, g.vertices, source="--word")
    subset = args.subset.split()
    unknown = [v for v in subset if v not in g]
    if unknown:
        raise GraphError(f"--subset: unknown vertex {unknown[0]!r}")
    limits.check_length(word)
    solver = amalgam.amalgam_solver(g, limits)
    solver.check_supported()
    steps: list[dict] = []
    trace = _tracer(args, steps, out)
    if trace is not None and isinstance(solver.tree, amalgam.Node):
        solver.reduced_form(word, trace=trace)
    result = solver.member_rewrite(word, subset)
    doc = {
        "vertices": list(g.vertices),
        "word": format_word(word),
        "subset": subset,
        "member": result is not None,
        "rewrite": None if result is None else format_word(result),
        "verified": result is not None,
    }
    if trace is not None:
        doc["trace"] = steps
    if args.json:
        _emit_json(doc, out)
    else:
        print("NOT-MEMBER" if result is None else format_word(result), file=out)


def _cmd_center(g, args, limits, out) -> None:
    desc = structure.center_description(g, limits)
    if args.json:
        _emit_json({"vertices": list(g.vertices), **desc.to_json()}, out)
        return
    print(desc.statement(), file=out)
    for c in desc.components:
        head = f"{{{' '.join(c.vertices)}}}: {c.kind}"
        if c.generator is not None:
            head += f", generated by {format_word(tuple((v, 1) for v in c.generator))}"
        if c.reference:
            head += f" [{c.reference}]"
        print(head, file=out)
        if c.derivation is not None:
            _print_derivation(c.derivation, "  ", out)
        for a in c.assumptions:
            print(f"  assumes: {a}", file=out)


def _print_derivation(d: structure.CenterDerivation, indent: str, out) -> None:
    def fmt(vs):
        return "{" + " ".join(vs) + "}"

    print(f"{indent}split {d.edge[0]}-{d.edge[1]}: X1={fmt(d.X1)} X2={fmt(d.X2)} Y1={fmt(d.Y1)} Y2={fmt(d.Y2)} Z1={fmt(d.Z1)}", file=out)
    print(f"{indent}X2 in Y1: {_flag(d.x2_in_y1)}, Y2 in X1: {_flag(d.y2_in_x1)}", file=out)
    for label, case in (("X1", d.x1_case), ("Y1", d.y1_case)):
        line = f"{indent}{label} {fmt(case.vertices)} vs {fmt(case.subset)}: {case.kind}"
        if case.reference:
            line += f" [{case.reference}]"
        if case.assumption:
            line += f" [assumes: {case.assumption}]"
        print(line, file=out)
        if case.derivation is not None:
            _print_derivation(case.derivation, indent + "  ", out)


def _cmd_torsion(g, args, limits, out) -> None:
    cert = structure.torsion_certificate(g)
    if args.json:
        _emit_json({"vertices": list(g.vertices), **cert.to_json()}, out)
        return
    print("torsion free" + ("" if cert.unconditional else " (conditional)"), file=out)
    _print_torsion(cert.root, "", out)
    for a in cert.assumptions:
        print(f"assumes: {a}", file=out)


def _print_torsion(node, indent: str, out) -> None:
    if isinstance(node, structure.TorsionLeaf):
        note = node.reference or node.assumption or ""
        print(f"{indent}leaf {{{' '.join(node.vertices)}}}: {node.status} [{note}]", file=out)
        return
    print(f"{indent}split {node.edge[0]}-{node.edge[1]}: {node.step}", file=out)
    _print_torsion(node.left, indent + "  ", out)
    _print_torsion(node.right, indent + "  ", out)


def _cmd_decompose(g, args, limits, out) -> None:
    tree = amalgam.decomposition_tree(g)
    if args.json:
        _emit_json(tree.to_json(), out)
    else:
        print(amalgam.format_tree(tree), file=out)


HANDLERS = {
    "classify": _cmd_classify,
    "wp": _cmd_wp,
    "member": _cmd_member,
    "center": _cmd_center,
    "torsion": _cmd_torsion,
    "decompose": _cmd_decompose,
}


def run(argv: Sequence[str], out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    def fail(code: int, msg: str) -> int:
        print(f"artin-tits: error: {msg}", file=err)
        return code

    try:
        limits = Limits(args.cap_elements, args.cap_words, args.cap_length)
        g = load_graph(args.graph)
        HANDLERS[args.command](g, args, limits, out)
    except OSError as exc:
        return fail(EXIT_USAGE, f"{args.graph}: {exc.strerror or exc}")
    except (GraphParseError, WordParseError, GraphError, DerivationError) as exc:
        return fail(EXIT_USAGE, str(exc))
    except UnsupportedBaseCase as exc:
        return fail(EXIT_UNSUPPORTED, f"unsupported base case: {exc}")
    except ResourceLimitError as exc:
        return fail(EXIT_RESOURCE, f"resource cap: {exc}")
    except ArtinTitsError as exc:
        return fail(EXIT_USAGE, str(exc))
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
