"""Command-line entry point.

Exit codes: 0 when every verdict holds or is tight, 1 on input/usage
errors, 2 on a certified violation (or a failed blowup/equality cross-check),
3 when a verdict stays inconclusive.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import __version__
from .blowup import BlowupSpec, blowup, check_blowup_equivalence
from .certified import check_schedule, format_fraction, precision_schedule
from .graph import GraphError, clique_count, encode_graph6
from .optimizer import maximize
from .oracle import read_corpus, summarize, survey, write_csv
from .structure import diagnose_equality
from .validation import check_weights, load_graph, parse_int_list, read_weights_file
from .weights import DomainError, PreconditionError, Verdict, rho, verify_chain, verify_localised, verify_zykov

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_ERROR, EXIT_VIOLATION, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def exit_code(verdicts: Sequence[Verdict]) -> int:
    if any(v is Verdict.VIOLATION for v in verdicts):
        return EXIT_VIOLATION
    if any(v is Verdict.INCONCLUSIVE for v in verdicts):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _schedule(args) -> tuple[int, ...]:
    if args.precision:
        return check_schedule(parse_int_list(args.precision))
    return precision_schedule()


def _graph(args):
    return load_graph(args.graph, args.input_format)


def _weights(args, G):
    if getattr(args, "weights", None):
        return check_weights(G, read_weights_file(args.weights))
    return check_weights(G, None)


def _envelope(command: str, inputs: dict, result) -> dict:
    return {"tool_version": __version__, "command": command, "inputs": inputs, "result": result}


def _emit(args, payload: dict, text_lines: Sequence[str] | None = None):
    if args.format == "text" and text_lines is not None:
        sys.stdout.write("\n".join(text_lines) + "\n")
    else:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=False) + "\n")


def _report_text(r) -> str:
    return (f"{r.kind} s={r.s} q={r.q}: lhs={float(r.lhs):.12g} rhs={float(r.rhs):.12g} "
            f"-> {r.verdict.value}")


def cmd_verify(args) -> int:
    G = _graph(args)
    x = _weights(args, G)
    report = verify_localised(G, args.s, args.q, x, _schedule(args), diagnose=args.diagnose)
    result = report.to_json(timing=args.timing)
    if clique_count(G, args.q) == 0:
        result["note"] = "no q-clique: f vanishes, inequality holds vacuously"
    inputs = {"graph": encode_graph6(G), "s": args.s, "q": args.q,
              "weights": [format_fraction(v) for v in x]}
    _emit(args, _envelope("verify", inputs, result), [_report_text(report)])
    return exit_code([report.verdict])


def cmd_chain(args) -> int:
    G = _graph(args)
    x = _weights(args, G)
    reports = verify_chain(G, args.r, x)
    if args.zykov:
        reports += [verify_zykov(G, args.r, q) for q in range(1, args.r + 1)]
    result = [r.to_json(timing=args.timing) for r in reports]
    inputs = {"graph": encode_graph6(G), "r": args.r, "weights": [format_fraction(v) for v in x]}
    _emit(args, _envelope("chain", inputs, result), [_report_text(r) for r in reports])
    return exit_code([r.verdict for r in reports])


def cmd_survey(args) -> int:
    if args.input == "-":
        lines = sys.stdin.read().splitlines()
    else:
        with open(args.input, encoding="ascii") as fh:
            lines = fh.read().splitlines()
    records = list(survey(read_corpus(lines), args.policy, args.jobs, _schedule(args)))
    out = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout
    try:
        if args.format == "csv":
            write_csv(records, out)
        elif args.format == "text":
            for r in records:
                out.write(f"{r.graph6} s={r.s} q={r.q} {r.verdict}"
                          f"{' predicted-tight' if r.predicted_tight else ''}"
                          f"{' DISCREPANCY' if r.discrepancy else ''}\n")
        else:
            for r in records:
                out.write(json.dumps(r.to_json(), sort_keys=True) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    summary = summarize(records)
    if args.summary:
        sys.stderr.write(json.dumps(summary, sort_keys=True) + "\n")
    for r in records:
        if r.error:
            sys.stderr.write(f"skipped {r.graph6!r}: {r.error}\n")
    if summary["verdicts"]["violation"] or summary["discrepancies"]:
        return EXIT_VIOLATION
    if summary["verdicts"]["inconclusive"]:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_maximize(args) -> int:
    G = _graph(args)
    result = maximize(G, args.s, args.q, args.max_iter, args.tol)
    inputs = {"graph": encode_graph6(G), "s": args.s, "q": args.q}
    support = [v for v in range(G.n) if result.support >> v & 1]
    text = [f"M ~ {float(result.best):.15g} on support {support}"]
    _emit(args, _envelope("maximize", inputs, result.to_json()), text)
    return EXIT_OK


def cmd_blowup(args) -> int:
    G = _graph(args)
    mult = parse_int_list(args.x)
    b = blowup(BlowupSpec(G, tuple(mult)))
    result = {"graph6": encode_graph6(b.graph), "n": b.graph.n, "provenance": list(b.provenance)}
    code = EXIT_OK
    if args.check:
        eq = check_blowup_equivalence(G, args.s, args.q, mult)
        result["equivalence"] = eq.to_json()
        code = EXIT_OK if eq.ok else EXIT_VIOLATION
    inputs = {"graph": encode_graph6(G), "x": mult, "s": args.s, "q": args.q}
    text = [f"blowup {result['graph6']} on {b.graph.n} vertices"]
    if args.check:
        text.append(f"equivalence ok={result['equivalence']['ok']}")
    _emit(args, _envelope("blowup", inputs, result), text)
    return code


def cmd_structure(args) -> int:
    G = _graph(args)
    x = _weights(args, G)
    diag = diagnose_equality(G, args.s, args.q, x)
    inputs = {"graph": encode_graph6(G), "s": args.s, "q": args.q,
              "weights": [format_fraction(v) for v in x]}
    _emit(args, _envelope("structure", inputs, diag.to_json()), [f"predict {diag.prediction.value}"])
    return EXIT_OK


def cmd_rho(args) -> int:
    bits = _schedule(args)[-1]
    ts = range(args.q, args.t + 1) if args.range else [args.t]
    values = {str(t): rho(args.s, args.q, t, bits).to_json() for t in ts}
    inputs = {"s": args.s, "q": args.q, "t": args.t, "bits": bits}
    text = [f"rho({args.s},{args.q},{t}) ~ {float(rho(args.s, args.q, t, bits)):.15g}" for t in ts]
    _emit(args, _envelope("rho", inputs, values), text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maclaurin", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph=True, sq=True):
        if graph:
            p.add_argument("-g", "--graph", required=True,
                           help="graph6 string, or path to a graph6 / edge-list file")
            p.add_argument("--input-format", choices=["auto", "graph6", "edgelist"], default="auto")
        if sq:
            p.add_argument("-s", type=int, default=1)
            p.add_argument("-q", type=int, default=2)
        p.add_argument("--format", choices=["json", "csv", "text"], default="json")
        p.add_argument("--precision", help="comma-separated increasing bit counts")
        p.add_argument("--timing", action="store_true", help="include elapsed_ns in reports")

    p = sub.add_parser("verify", help="check the localised inequality for one graph")
    common(p)
    p.add_argument("--weights", help="file with one rational weight per vertex")
    p.add_argument("--diagnose", action="store_true", help="attach the equality-structure analysis")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chain", help="check the Maclaurin chain for a K_{r+1}-free graph")
    common(p, sq=False)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--weights")
    p.add_argument("--zykov", action="store_true", help="also check the clique-count bounds")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("survey", help="verify every graph of a graph6 corpus")
    common(p, graph=False, sq=False)
    p.add_argument("input", nargs="?", default="-", help="graph6 file, or - for stdin")
    p.add_argument("--policy", default="all", help="all | strict | divisible | nondivisible | s:q")
    p.add_argument("-j", "--jobs", type=int, default=1)
    p.add_argument("-o", "--output")
    p.add_argument("--summary", action="store_true", help="print a summary line to stderr")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("maximize", help="maximise f on the surface h_s = 1")
    common(p)
    p.add_argument("--max-iter", type=int, default=10_000)
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_maximize)

    p = sub.add_parser("blowup", help="blow up a graph by integer multiplicities")
    common(p)
    p.add_argument("-x", required=True, help="comma-separated multiplicities")
    p.add_argument("--check", action="store_true", help="check the counting equivalence")
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("structure", help="predict equality from multipartite structure")
    common(p)
    p.add_argument("--weights")
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("rho", help="evaluate the clique weight rho_{s,q}(t)")
    common(p, graph=False)
    p.add_argument("-t", type=int, required=True)
    p.add_argument("--range", action="store_true", help="evaluate every t from q up to -t")
    p.set_defaults(func=cmd_rho)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        if getattr(args, "s", None) is not None and getattr(args, "q", None) is not None \
                and args.s > args.q:
            raise UsageError("s must not exceed q")
        return args.func(args)
    except (GraphError, DomainError, PreconditionError, UsageError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
