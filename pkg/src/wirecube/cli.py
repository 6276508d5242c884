"""Command line front end.

Subcommands: formula (closed-form table), eval (wirelength of one
embedding), gray (emit the Gray embedding), search (brute force or
annealing), verify (per-host invariant suite). Exit codes: 0 success,
1 usage or input error, 2 verification failure or a search result below
the closed form. Diagnostics go to stderr, results to stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .host import HostSpecError, enumerate_hosts, parse_host
from .wirelength import (
    Embedding,
    formula_wl,
    gray_embedding,
    random_embedding,
    read_embedding,
    wl_cut,
    wl_direct,
    write_embedding,
)
from .cube import gray_rank


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage by default; this tool reserves 2
    # for verification failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(args, payload, header, rows) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\t".join(header))
        for row in rows:
            print("\t".join("" if c is None else str(c) for c in row))


def _parse_embedding_arg(spec, text):
    """Resolve --embedding gray | random:SEED | file:PATH against a host."""
    if text == "gray":
        return gray_embedding(spec)
    if text.startswith("random:"):
        seed_text = text[len("random:"):]
        try:
            seed = int(seed_text)
        except ValueError:
            raise ValueError(f"random embedding seed must be an integer, got {seed_text!r}")
        if seed < 0:
            raise ValueError("random embedding seed must be non-negative")
        return random_embedding(spec, seed)
    if text.startswith("file:"):
        emb = read_embedding(text[len("file:"):])
        if emb.spec != spec:
            raise ValueError(
                f"embedding file is for host {emb.spec}, but --host says {spec}"
            )
        return emb
    raise ValueError(
        f"--embedding must be 'gray', 'random:SEED', or 'file:PATH', got {text!r}"
    )


def _cmd_formula(args) -> int:
    rows = []
    for text in args.host:
        spec = parse_host(text)
        total, terms = formula_wl(spec)
        rows.append(
            {
                "host": str(spec),
                "n": spec.n,
                "total": total,
                "terms": [
                    {
                        "factor": t.factor,
                        "kind": spec.factors[t.factor - 1].kind,
                        "size": spec.factors[t.factor - 1].size,
                        "value": t.value,
                    }
                    for t in terms
                ],
            }
        )
    tsv = [
        (r["host"], r["n"], r["total"], ",".join(str(t["value"]) for t in r["terms"]))
        for r in rows
    ]
    _emit(args, rows, ("host", "n", "total", "terms"), tsv)
    return 0


def _cmd_eval(args) -> int:
    spec = parse_host(args.host)
    emb = _parse_embedding_arg(spec, args.embedding)
    reports = []
    if args.method in ("direct", "both"):
        reports.append(wl_direct(emb))
    if args.method in ("cut", "both"):
        reports.append(wl_cut(emb))
    payload = {
        "host": str(spec),
        "embedding": args.embedding,
        "reports": [r.as_dict() for r in reports],
    }
    agree = None
    if args.method == "both":
        agree = reports[0].total == reports[1].total
        payload["agree"] = agree
    tsv = [
        (str(spec), r.method, r.total, "" if agree is None else agree) for r in reports
    ]
    _emit(args, payload, ("host", "method", "total", "agree"), tsv)
    if agree is False:
        print("error: the direct and cut-sum engines disagree", file=sys.stderr)
        return 2
    return 0


def _cmd_gray(args) -> int:
    spec = parse_host(args.host)
    emb = gray_embedding(spec)
    total = wl_direct(emb).total
    vertices = []
    for text in args.vertex or []:
        if len(text) != spec.n or set(text) - {"0", "1"}:
            raise ValueError(
                f"--vertex must be a {spec.n}-character bit string for host {spec}, got {text!r}"
            )
        v = int(text, 2)
        blocks = []
        offset = 0
        for f in spec.factors:
            piece = text[offset : offset + f.exponent]
            blocks.append({"bits": piece, "rank": gray_rank(int(piece, 2), f.exponent)})
            offset += f.exponent
        vertices.append(
            {
                "vertex": text,
                "blocks": blocks,
                "coordinate": list(emb.coordinate(v)),
                "flat": int(emb.map[v]),
            }
        )
    if args.out:
        write_embedding(emb, args.out)
    payload = {
        "host": str(spec),
        "n": spec.n,
        "wirelength": total,
        "out": args.out,
        "vertices": vertices,
    }
    if vertices:
        tsv_header = ("vertex", "coordinate", "flat")
        tsv = [(d["vertex"], ",".join(str(c) for c in d["coordinate"]), d["flat"]) for d in vertices]
    else:
        tsv_header = ("host", "n", "wirelength", "out")
        tsv = [(str(spec), spec.n, total, args.out or "")]
    _emit(args, payload, tsv_header, tsv)
    return 0


def _cmd_search(args) -> int:
    from .search import SearchBudget, anneal_search, brute_force_min

    spec = parse_host(args.host)
    budget = SearchBudget(
        method=args.method,
        max_vertices=args.max_vertices,
        restarts=args.restarts,
        iterations_per_restart=args.iterations,
        initial_temperature=args.t0,
        cooling_rate=args.cooling,
        seed=args.seed,
    )
    if args.method == "brute":
        result = brute_force_min(spec, budget, fix_origin=args.prune)
    else:
        initial = gray_embedding(spec) if args.init == "gray" else None
        result = anneal_search(spec, budget, initial=initial)
    try:
        formula_total = formula_wl(spec)[0]
    except ValueError:
        formula_total = None
    if formula_total is None:
        status = "no_formula"
    elif result.best_wirelength == formula_total:
        status = "matched"
    elif result.best_wirelength > formula_total:
        status = "above"
    else:
        status = "below"
    payload = {"host": str(spec), "method": args.method, "status": status,
               "formula_total": formula_total}
    payload.update(result.as_dict())
    tsv = [
        (
            str(spec),
            args.method,
            result.best_wirelength,
            result.evaluations,
            result.matched_formula,
            status,
        )
    ]
    _emit(
        args,
        payload,
        ("host", "method", "best_wirelength", "evaluations", "matched_formula", "status"),
        tsv,
    )
    if status == "below":
        print(
            f"error: search found {result.best_wirelength}, below the closed form"
            f" {formula_total}",
            file=sys.stderr,
        )
        return 2
    return 0


def _cmd_verify(args) -> int:
    from .search import verify_spec

    if args.hosts:
        texts = [t for chunk in args.hosts for t in chunk.split(",") if t]
        specs = [parse_host(t) for t in texts]
    else:
        specs = enumerate_hosts(args.max_n, max_k=3, min_exponent=2)
    reports = [verify_spec(spec, depth=args.depth, seed=args.seed) for spec in specs]
    counter_files = []
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        for rep in reports:
            for check in rep.checks:
                if not check.passed and check.counterexample is not None:
                    path = os.path.join(args.out_dir, f"counterexample_{rep.host}_{check.name}.json")
                    with open(path, "w") as fh:
                        json.dump(check.counterexample, fh, indent=2)
                        fh.write("\n")
                    counter_files.append(path)
    passed = all(rep.passed for rep in reports)
    payload = {
        "depth": args.depth,
        "passed": passed,
        "hosts": [rep.as_dict() for rep in reports],
        "counterexample_files": counter_files,
    }
    tsv = [
        (rep.host, check.name, check.passed, check.detail)
        for rep in reports
        for check in rep.checks
    ]
    _emit(args, payload, ("host", "check", "passed", "detail"), tsv)
    if not passed:
        failed = sum(1 for rep in reports if not rep.passed)
        print(f"error: {failed} of {len(reports)} hosts failed verification", file=sys.stderr)
        return 2
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="wirecube", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=("json", "tsv"), default="json")
        return p

    p = add("formula", "closed-form minimum wirelength table")
    p.add_argument("--host", action="append", required=True, metavar="SPEC")
    p.set_defaults(func=_cmd_formula)

    p = add("eval", "wirelength of one embedding")
    p.add_argument("--host", required=True, metavar="SPEC")
    p.add_argument("--embedding", default="gray", metavar="gray|random:SEED|file:PATH")
    p.add_argument("--method", choices=("direct", "cut", "both"), default="both")
    p.set_defaults(func=_cmd_eval)

    p = add("gray", "emit the Gray embedding")
    p.add_argument("--host", required=True, metavar="SPEC")
    p.add_argument("--out", metavar="PATH", help="write the embedding as JSON")
    p.add_argument(
        "--vertex",
        action="append",
        metavar="BITS",
        help="also report the image of this vertex (repeatable)",
    )
    p.set_defaults(func=_cmd_gray)

    p = add("search", "search for a minimum-wirelength embedding")
    p.add_argument("--host", required=True, metavar="SPEC")
    p.add_argument("--method", choices=("brute", "anneal"), default="anneal")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--iterations", type=int, default=100_000)
    p.add_argument("--t0", type=float, default=None, help="initial temperature (default 2n)")
    p.add_argument("--cooling", type=float, default=0.999)
    p.add_argument("--init", choices=("random", "gray"), default="random")
    p.add_argument("--max-vertices", type=int, default=8, help="brute-force size cap")
    p.add_argument(
        "--prune",
        action="store_true",
        help="brute force only embeddings fixing vertex 0 (translation symmetry)",
    )
    p.set_defaults(func=_cmd_search)

    p = add("verify", "run the invariant suite against hosts")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--hosts", action="append", metavar="SPEC[,SPEC...]", help="hosts to verify"
    )
    group.add_argument(
        "--max-n",
        type=int,
        metavar="N",
        help="sweep all hosts with <= 3 factors, exponents >= 2, and dimension <= N",
    )
    p.add_argument("--depth", choices=("quick", "full"), default="quick")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", metavar="DIR", help="write counterexample files here")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    try:
        return args.func(args)
    except (HostSpecError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
