"""Command-line front end.

Exit codes: 0 ok, 2 input error, 3 numerical failure, 4 bound violation,
5 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import generators
from .bounds import DEFAULT_EXACT_LIMIT, bounds_report
from .cheeger import indicator, l1_quotient, q_constant
from .errors import ConnectivityRetryExhausted, DisconnectedInput, InputError, NumericalError
from .generators import GeneratorSpec, generate
from .hypergraph import components, validate
from .io import HypergraphDocument, default_names, load_document, write_document
from .report import bounds_section, checks_section, cheeger_section, input_summary, spectrum_section
from .spectra import spectrum
from .verify import CSV_COLUMNS, Check, run_ensemble

log = logging.getLogger("chemhyper")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_BOUND = 4
EXIT_VERIFY = 5

SIZE_CAP = 512


class BoundViolation(Exception):
    pass


class VerificationFailed(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """'2..8' -> 2..8 inclusive, '4,6' -> [4, 6], '5' -> [5]."""
    text = text.strip()
    m = re.fullmatch(r"(\d+)\.\.(\d+)", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        if lo > hi:
            raise argparse.ArgumentTypeError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N, N..M or N,M,... but got {text!r}") from None


def builtin(name: str) -> HypergraphDocument:
    if name == "figure1":
        g = generators.figure1()
        return HypergraphDocument(g, default_names(g.N), GeneratorSpec("figure1"))
    m = re.fullmatch(r"(complete|complete-minus-edge)-(\d+)", name)
    if m:
        family = m.group(1).replace("-", "_")
        family = "complete_graph" if family == "complete" else family
        spec = GeneratorSpec(family, {"n": int(m.group(2))})
        g = generate(spec)
        return HypergraphDocument(g, default_names(g.N), spec)
    raise InputError(f"unknown builtin {name!r} (figure1, complete-N, complete-minus-edge-N)")


def _load(args) -> HypergraphDocument:
    if args.builtin and args.input:
        raise InputError("give either an input file or --builtin, not both")
    if args.builtin:
        doc = builtin(args.builtin)
    elif args.input:
        doc = load_document(args.input)
    else:
        raise InputError("no input: pass a hypergraph document path or --builtin NAME")
    g = doc.hypergraph
    if g.N > SIZE_CAP or g.M > SIZE_CAP:
        raise InputError(f"input too large: N = {g.N}, M = {g.M} (limit {SIZE_CAP} each)")
    try:
        validate(g)
    except InputError as exc:
        raise InputError(_rename(str(exc), doc.names)) from None
    return doc


def _rename(message: str, names: Sequence[str]) -> str:
    return re.sub(r"vertex (\d+)", lambda m: f"vertex {names[int(m.group(1))]!r}" if int(m.group(1)) < len(names) else m.group(0), message)


def _require_connected(doc: HypergraphDocument) -> None:
    comps = components(doc.hypergraph)
    if len(comps) > 1:
        shown = "; ".join("{" + ", ".join(doc.names[v] for v in c) + "}" for c in comps[:4])
        raise DisconnectedInput(f"input hypergraph is disconnected ({len(comps)} components: {shown})")


def _emit(args, payload: dict, text_lines: list[str], csv_rows: list[list]) -> None:
    if args.output == "json":
        out = json.dumps(payload, indent=2) + "\n"
    elif args.output == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(csv_rows)
        out = buf.getvalue()
    else:
        out = "\n".join(text_lines) + "\n"
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


def cmd_spectrum(args) -> int:
    doc = _load(args)
    g = doc.hypergraph
    spec = spectrum(g)
    trace = abs(float(spec.eigenvalues.sum()) - g.N)
    checks = [
        Check("nonnegative", bool(spec.eigenvalues[0] >= -args.tolerance), max(0.0, -float(spec.eigenvalues[0]))),
        Check("trace", trace <= args.tolerance, trace),
    ]
    payload = {
        "input": input_summary(g, doc.names),
        "spectrum": spectrum_section(spec),
        "checks": checks_section(checks),
    }
    lines = [f"lambda_{i + 1} = {float(x)!r}" for i, x in enumerate(spec.eigenvalues)]
    lines.append(f"lambda_max = {spec.largest!r}")
    rows = [["index", "eigenvalue"]] + [[i + 1, repr(float(x))] for i, x in enumerate(spec.eigenvalues)]
    _emit(args, payload, lines, rows)
    return EXIT_OK


def cmd_bounds(args) -> int:
    doc = _load(args)
    _require_connected(doc)
    g = doc.hypergraph
    rep = bounds_report(g, n_limit=args.exact_limit, seed=args.seed, restarts=args.restarts, tol=args.bound_tolerance)
    checks = [
        Check("sandwich", rep.checks["sandwich"], max(rep.lower_eta - rep.lambda_max, rep.lambda_max - rep.upper, 0.0)),
        Check("equality_agrees", rep.checks["equality_agrees"], abs(rep.upper - rep.lambda_max)),
        Check("witness_bipartite", rep.checks["witness_bipartite"], 0.0),
    ]
    section = bounds_section(rep, doc.names)
    payload = {"input": input_summary(g, doc.names), "bounds": section, "checks": checks_section(checks)}
    eq = rep.upper_equality
    lines = [
        f"lambda_max = {rep.lambda_max!r}",
        f"upper bound max|h| = {rep.upper}  (equality: {eq.is_equality}; bipartite: {eq.bipartite}, constant |h|: {eq.constant_cardinality})",
        f"lower bound eta* = {rep.lower_eta!r} = {rep.lower_eta_witness.eta.exact}  ({'exact' if rep.lower_is_exact else 'greedy'})",
        f"witness vertices: {', '.join(section['witness']['vertices'])}; hyperedges: {section['witness']['hyperedges']}",
        f"gaps: upper - lambda = {rep.upper_gap!r}, lambda - eta* = {rep.lower_gap!r}",
    ]
    rows = [["key", "value"]] + [
        ["lambda_max", repr(rep.lambda_max)],
        ["upper", rep.upper],
        ["is_equality", eq.is_equality],
        ["bipartite", eq.bipartite],
        ["constant_cardinality", eq.constant_cardinality],
        ["eta_star", repr(rep.lower_eta)],
        ["eta_exact", rep.lower_is_exact],
        ["upper_gap", repr(rep.upper_gap)],
        ["lower_gap", repr(rep.lower_gap)],
    ]
    _emit(args, payload, lines, rows)
    if not rep.checks["sandwich"]:
        raise BoundViolation(
            f"sandwich violated: eta* = {rep.lower_eta!r}, lambda_max = {rep.lambda_max!r}, max|h| = {rep.upper}"
        )
    return EXIT_OK


def cmd_cheeger(args) -> int:
    doc = _load(args)
    g = doc.hypergraph
    q = q_constant(g)
    lam = spectrum(g).largest
    achieved = l1_quotient(g, indicator(g, q.argmax_hyperedge))
    checks = [
        Check("q_below_lambda", q.value <= lam + args.bound_tolerance, max(q.value - lam, 0.0)),
        Check("indicator_attains_q", abs(achieved - q.value) <= 1e-12, abs(achieved - q.value)),
    ]
    payload = {
        "input": input_summary(g, doc.names),
        "cheeger": cheeger_section(q, lam),
        "checks": checks_section(checks),
    }
    lines = [
        f"Q = {q.value!r} = {q.exact}  (hyperedge {q.argmax_hyperedge})",
        f"lambda_max = {lam!r}",
        f"Q <= lambda_max: {q.value <= lam + args.bound_tolerance}",
    ]
    rows = [["hyperedge", "sum_inverse_degree"]] + [[i, repr(float(x))] for i, x in enumerate(q.per_edge)]
    _emit(args, payload, lines, rows)
    return EXIT_OK


def _family_specs(args) -> list[GeneratorSpec]:
    family = args.family.replace("-", "_")
    family = {"complete": "complete_graph"}.get(family, family)
    seeds = range(args.seed, args.seed + args.seeds)
    specs = []
    if family in ("complete_graph", "complete_minus_edge"):
        for n in args.n or [4]:
            specs.append(GeneratorSpec(family, {"n": n}, 0))
    elif family == "figure1":
        specs.append(GeneratorSpec("figure1"))
    elif family == "bipartite_constant":
        p1, p2 = args.parts
        for c in args.c or [2]:
            for s in seeds:
                specs.append(GeneratorSpec(family, {"part1": p1, "part2": p2, "m": args.m, "c": c}, s))
    elif family in ("random_oriented", "random_chemical"):
        for n in args.n or [8]:
            for s in seeds:
                params = {"n": n, "m": args.m, "p_member": args.p_member, "p_input": args.p_input}
                if family == "random_chemical":
                    params["p_catalyst"] = args.p_catalyst
                specs.append(GeneratorSpec(family, params, s))
    elif family == "random_graph":
        for n in args.n or [8]:
            for s in seeds:
                specs.append(GeneratorSpec(family, {"n": n, "p_edge": args.p_edge}, s))
    else:
        raise InputError(f"unknown family {args.family!r}")
    return specs


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def cmd_verify(args) -> int:
    specs = _family_specs(args)
    results = []
    for res in run_ensemble(
        specs,
        samples=args.samples,
        flips=args.flips,
        n_limit=args.exact_limit,
        restarts=args.restarts,
        tol=args.tolerance,
        bound_tol=args.bound_tolerance,
    ):
        results.append(res)
        if not res.passed:
            for c in res.checks:
                if not c.passed:
                    print(
                        f"FAIL {res.family} seed={res.seed} N={res.n}: {c.name} residual={c.residual!r}",
                        file=sys.stderr,
                    )
    rows = [res.row() for res in results]
    if args.output == "json":
        payload = {
            "family": args.family,
            "instances": len(rows),
            "failures": sum(1 for r in results if not r.passed),
            "rows": rows,
            "checks": [c.to_dict() for res in results for c in res.checks],
        }
        _emit(args, payload, [], [])
    else:
        table = [list(CSV_COLUMNS)] + [[_fmt(row[c]) for c in CSV_COLUMNS] for row in rows]
        lines = [",".join(r) for r in table] if args.output == "text" else []
        _emit(args, {}, lines, table)
    failed = [r for r in results if not r.passed]
    if failed:
        raise VerificationFailed(f"{len(failed)} of {len(results)} instances failed")
    return EXIT_OK


def cmd_generate(args) -> int:
    specs = _family_specs(args)
    if len(specs) != 1:
        raise InputError("generate needs exactly one instance: pass a single --n / --c value")
    spec = specs[0]
    g = generate(spec)
    text = write_document(g, default_names(g.N), spec)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _common(output_default: str = "json") -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--output", choices=("json", "csv", "text"), default=output_default, help="report format")
    p.add_argument("--out", help="write the report to this path instead of stdout")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--tolerance", type=float, default=1e-9, help="tolerance for spectral identities")
    p.add_argument("--bound-tolerance", type=float, default=1e-8, help="tolerance for bound inequalities")
    p.add_argument("--exact-limit", type=int, default=DEFAULT_EXACT_LIMIT, help="largest N searched exhaustively")
    p.add_argument("--restarts", type=int, default=8, help="random restarts of the greedy search")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", help="hypergraph JSON document")
    p.add_argument("--builtin", help="use a built-in fixture: figure1, complete-N, complete-minus-edge-N")


def _family_args(p: argparse.ArgumentParser, default_seeds: int) -> None:
    p.add_argument("--family", required=True, help="complete, complete-minus-edge, bipartite-constant, "
                   "random-oriented, random-chemical, random-graph, figure1")
    p.add_argument("--n", type=parse_range, help="vertex count(s): 8, 2..8 or 4,6")
    p.add_argument("--m", type=int, default=10, help="hyperedge count")
    p.add_argument("--c", type=parse_range, help="cardinality (bipartite-constant)")
    p.add_argument("--parts", type=parse_range, default=[4, 4], help="part sizes P1,P2 (bipartite-constant)")
    p.add_argument("--p-member", type=float, default=0.3)
    p.add_argument("--p-input", type=float, default=0.5)
    p.add_argument("--p-catalyst", type=float, default=0.2)
    p.add_argument("--p-edge", type=float, default=0.5)
    p.add_argument("--seeds", type=int, default=default_seeds, help="number of consecutive seeds from --seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chemhyper",
        description="Largest-eigenvalue bounds for the normalized Laplacian of chemical hypergraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[_common()], help="eigenvalues of the normalized Laplacian")
    _input_args(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("bounds", parents=[_common()], help="upper bound, eta lower bound and equality test")
    _input_args(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("cheeger", parents=[_common()], help="the Cheeger-like constant Q")
    _input_args(p)
    p.set_defaults(func=cmd_cheeger)

    p = sub.add_parser(
        "verify",
        parents=[_common("csv")],
        help="run the property battery over a generated ensemble",
        description="CSV columns, in order: " + ", ".join(CSV_COLUMNS),
    )
    _family_args(p, default_seeds=1)
    p.add_argument("--samples", type=int, default=1000, help="random hyperedge functions per instance")
    p.add_argument("--flips", type=int, default=10, help="random orientation flips per instance")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", parents=[_common()], help="write a generated hypergraph document")
    _family_args(p, default_seeds=1)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, ConnectivityRetryExhausted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except BoundViolation as exc:
        print(f"bound violation: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    raise SystemExit(main())
