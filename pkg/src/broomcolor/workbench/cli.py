"""Command line interface.

Exit codes: 0 success or Colored, 1 forbidden subgraph found (or a rejected
certificate), 2 input or parse error, 3 internal contradiction.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from broomcolor.certify import COLORED, emit_cert, parse_cert, verify
from broomcolor.colorer import color
from broomcolor.decompose import decompose
from broomcolor.detect import find_induced_ktt, find_induced_tbroom
from broomcolor.errors import CapacityError, InputError, InternalContradiction
from broomcolor.oracle import chromatic_number, clique_number, independence_number
from broomcolor.workbench.corpus import run_corpus
from broomcolor.workbench.dimacs import emit_dimacs, read_dimacs
from broomcolor.workbench.generators import FAMILIES, GenSpec, generate

EXIT_OK, EXIT_WITNESS, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cmd_color(args) -> int:
    G = read_dimacs(args.input)
    res = color(G, args.t, args.mode)
    text = emit_cert(res, G.n)
    if args.cert:
        Path(args.cert).write_text(text + "\n")
    summary = {"verdict": res.verdict, "t": res.t, "mode": res.mode, "omega": res.omega,
               "bound": res.bound, "colors_used": res.colors_used,
               "witness": None if res.witness is None else res.witness.to_json()}
    print(_dump(summary))
    return EXIT_OK if res.verdict == COLORED else EXIT_WITNESS


def cmd_check_free(args) -> int:
    G = read_dimacs(args.input)
    w = find_induced_tbroom(G, args.t)
    if w is None and args.ktt:
        w = find_induced_ktt(G, args.t)
    print(_dump({"free": w is None, "witness": None if w is None else w.to_json()}))
    return EXIT_OK if w is None else EXIT_WITNESS


def cmd_decompose(args) -> int:
    G = read_dimacs(args.input)
    dec = decompose(G, args.t, args.mode)
    if dec is None:
        print(_dump({"Q": None}))
        return EXIT_OK
    print(_dump(dec.to_json()))
    return EXIT_WITNESS if any(v.witness for v in dec.violations) else EXIT_OK


def cmd_oracle(args) -> int:
    G = read_dimacs(args.input)
    if args.quantity == "omega":
        k, S = clique_number(G)
        out = {"omega": k, "clique": sorted(S)}
    elif args.quantity == "alpha":
        k, S = independence_number(G)
        out = {"alpha": k, "independent_set": sorted(S)}
    else:
        k, col = chromatic_number(G)
        out = {"chi": k, "colors": [col.assignment[v] for v in range(G.n)]}
    print(_dump(out))
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = GenSpec(args.family, args.n, p=args.p, seed=args.seed, t=args.t, ktt=args.ktt)
    text = emit_dimacs(generate(spec), comments=[spec.name])
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_corpus(args) -> int:
    folder = Path(args.directory)
    if not folder.is_dir():
        raise InputError(f"{folder} is not a directory")
    items = [(p.name, read_dimacs(p)) for p in sorted(folder.glob("*.col"))]
    report = run_corpus(items, mode=args.mode, t=args.t, timeout=args.timeout, workers=args.workers)
    text = report.to_csv(timing=args.timing)
    if args.report:
        Path(args.report).write_text(text)
    else:
        sys.stdout.write(text)
    print(_dump({"instances": len(report), "violations": report.violations, "rejected": report.rejected,
                 "max_ratio": round(report.max_ratio, 6), "ok": report.ok}), file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_INTERNAL


def cmd_verify(args) -> int:
    G = read_dimacs(args.input)
    cert = parse_cert(Path(args.cert).read_text())
    rep = verify(G, cert)
    print(_dump({"accepted": rep.accepted, "checks": rep.checks, "failures": rep.failures}))
    return EXIT_OK if rep.accepted else EXIT_WITNESS


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="broomcolor", description="Certified colouring of t-broom-free graphs.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("color", help="colour a DIMACS graph and emit a certificate")
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--mode", choices=("auto", "chair", "general", "ktt", "perfect"), default="auto")
    p.add_argument("--cert", help="write the certificate JSON here")
    p.add_argument("input")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("check-free", help="search for an induced t-broom")
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--ktt", action="store_true", help="also search for an induced K_{t,t}")
    p.add_argument("input")
    p.set_defaults(func=cmd_check_free)

    p = sub.add_parser("decompose", help="dump the top-level decomposition as JSON")
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--mode", choices=("general", "chair", "ktt"), default="general")
    p.add_argument("input")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("oracle", help="exact chi, omega or alpha")
    p.add_argument("quantity", choices=("chi", "omega", "alpha"))
    p.add_argument("input")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate a seeded instance as DIMACS")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-p", type=float, default=0.5)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--ktt", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("corpus", help="colour and verify every .col file in a directory")
    p.add_argument("directory")
    p.add_argument("--mode", choices=("auto", "chair", "general", "ktt", "perfect"), default="auto")
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--report", help="CSV output path")
    p.add_argument("--timeout", type=float, default=None, help="per-instance seconds")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="add a runtime column")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("verify", help="re-check a certificate against a graph")
    p.add_argument("input")
    p.add_argument("cert")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except InternalContradiction as exc:
        print(f"internal contradiction: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, CapacityError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
