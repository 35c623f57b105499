"""Command line interface: construct, verify, solve, sizes.

Exit codes: 0 success, 1 verification/solve failure, 2 usage errors or
an inapplicable method.  Failures emit a machine-readable JSON object on
stderr.  ``DETREP_SEED`` provides the seed when ``--seed`` is absent.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys
from pathlib import Path

from .biaffine import SymbolicCapExceeded, rep_from_json, rep_to_json, verify
from .construct import InapplicableMethod, KNOWN_SIZES, METHODS, best_method, construct
from .oracle import PositiveDimensionalError, oracle_roots
from .poly import poly_from_json
from .roots import rootset_to_csv, rootset_to_json
from .twopareig import DEGREE_CAP, solve

OK, FAILURE, USAGE = 0, 1, 2


def _fail_json(message: str, **extra) -> None:
    payload = {"error": message}
    payload.update(extra)
    print(json.dumps(payload), file=sys.stderr)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("DETREP_SEED")
    return int(env) if env else 0


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")


def cmd_construct(args) -> int:
    try:
        rep = construct(args.n, args.d, args.method)
    except InapplicableMethod as exc:
        _fail_json(str(exc), n=args.n, d=args.d, method=args.method)
        return USAGE
    _write(args.out, json.dumps(rep_to_json(rep), indent=None if args.compact else 1, sort_keys=True))
    return OK


def cmd_verify(args) -> int:
    try:
        rep = rep_from_json(json.loads(Path(args.rep).read_text()))
    except (OSError, ValueError, KeyError) as exc:
        _fail_json(f"cannot load representation: {exc}", path=args.rep)
        return USAGE
    try:
        report = verify(rep, mode=args.mode, trials=args.trials, seed=_seed(args), box=args.box)
    except SymbolicCapExceeded as exc:
        _fail_json(f"{exc}", hint="use --mode random")
        return USAGE
    out = {
        "mode": report.mode,
        "verdict": "pass" if report.ok else "fail",
        "trials": report.trials,
        "failure_probability_bound": report.failure_bound,
    }
    if report.witness is not None:
        x_point, c_values = report.witness
        out["witness"] = {
            "x": list(x_point),
            "c": [{"exp": list(alpha), "value": value} for alpha, value in sorted(c_values.items())],
        }
    _write(args.out, json.dumps(out))
    if not report.ok:
        _fail_json("verification failed", witness=out.get("witness"))
        return FAILURE
    return OK


def _load_poly(path: str):
    return poly_from_json(json.loads(Path(path).read_text()))


def _solve_one(p_path: str, q_path: str, args):
    p = _load_poly(p_path)
    q = _load_poly(q_path)
    if args.oracle:
        tol = args.tol if args.tol is not None else 1e-8
        return oracle_roots(p, q, tol=tol, seed=_seed(args))
    return solve(
        p,
        q,
        method=args.method,
        seed=_seed(args),
        degree_cap=args.degree_cap,
    )


def cmd_solve(args) -> int:
    if args.batch:
        return _solve_batch(args)
    try:
        rs = _solve_one(args.p, args.q, args)
    except (ValueError, PositiveDimensionalError) as exc:
        _fail_json(str(exc))
        return USAGE
    text = rootset_to_csv(rs) if args.format == "csv" else json.dumps(rootset_to_json(rs))
    _write(args.out, text)
    if rs.status != "ok" or (args.tol is not None and rs.max_residual() > args.tol):
        _fail_json("solve incomplete", status=rs.status, roots=len(rs), failure=rs.failure)
        return FAILURE
    return OK


def _solve_batch(args) -> int:
    batch = Path(args.batch)
    pairs = sorted(batch.glob("*.p.json"))
    jobs = [(str(pp), str(pp).replace(".p.json", ".q.json")) for pp in pairs]
    if not jobs:
        _fail_json(f"no *.p.json / *.q.json pairs under {batch}")
        return USAGE
    worst = OK
    with concurrent.futures.ThreadPoolExecutor(max_workers=args.jobs) as pool:
        futures = {pool.submit(_solve_one, pp, qq, args): (pp, qq) for pp, qq in jobs}
        for fut in concurrent.futures.as_completed(futures):
            pp, _ = futures[fut]
            stem = Path(pp).name.replace(".p.json", "")
            try:
                rs = fut.result()
            except (ValueError, PositiveDimensionalError) as exc:
                _fail_json(str(exc), system=stem)
                worst = max(worst, FAILURE)
                continue
            suffix = ".roots.csv" if args.format == "csv" else ".roots.json"
            text = rootset_to_csv(rs) if args.format == "csv" else json.dumps(rootset_to_json(rs))
            (batch / (stem + suffix)).write_text(text)
            if rs.status != "ok":
                worst = max(worst, FAILURE)
    return worst


def _parse_range(spec: str) -> list[int]:
    if not spec:
        return []
    if ":" in spec:
        lo, hi = spec.split(":", 1)
        if lo == "" or hi == "" or int(hi) < int(lo):
            return []
        return list(range(int(lo), int(hi) + 1))
    return [int(spec)]


def cmd_sizes(args) -> int:
    methods = args.methods.split(",") if args.methods else None
    rows = []
    for n in _parse_range(args.n_range):
        for d in _parse_range(args.d_range):
            if methods is None:
                if (n, d) not in KNOWN_SIZES:
                    continue
                candidates = [best_method(n, d)]
            else:
                candidates = methods
            for method in candidates:
                try:
                    rep = construct(n, d, method)
                except InapplicableMethod:
                    continue
                rows.append((n, d, method, rep.size))
    lines = ["n,d,method,N"] + [f"{n},{d},{m},{s}" for n, d, m, s in rows]
    _write(args.out, "\n".join(lines))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="detrep", description="uniform determinantal representations and bivariate root finding")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a representation and emit its JSON")
    c.add_argument("-n", type=int, required=True)
    c.add_argument("-d", type=int, required=True)
    c.add_argument("--method", choices=METHODS, required=True)
    c.add_argument("--out", default=None)
    c.add_argument("--compact", action="store_true")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="verify a representation JSON file")
    v.add_argument("--rep", required=True)
    v.add_argument("--mode", choices=["symbolic", "random"], default="symbolic")
    v.add_argument("--trials", type=int, default=20)
    v.add_argument("--box", type=int, default=10)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--out", default=None)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("solve", help="roots of a bivariate system given as two polynomial JSON files")
    s.add_argument("--p", help="polynomial JSON for p")
    s.add_argument("--q", help="polynomial JSON for q")
    s.add_argument("--batch", help="directory of NAME.p.json / NAME.q.json pairs")
    s.add_argument("--jobs", type=int, default=4)
    s.add_argument("--method", default="minunif")
    s.add_argument("--oracle", action="store_true", help="use the resultant oracle instead of the eigensolver")
    s.add_argument("--tol", type=float, default=None)
    s.add_argument("--degree-cap", type=int, default=DEGREE_CAP)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_solve)

    z = sub.add_parser("sizes", help="table of representation sizes per method")
    z.add_argument("--n-range", default="")
    z.add_argument("--d-range", default="")
    z.add_argument("--methods", default=None, help="comma separated; default: best known per cell")
    z.add_argument("--out", default=None)
    z.set_defaults(func=cmd_sizes)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "solve" and not args.batch and (not args.p or not args.q):
        _fail_json("solve needs --p and --q (or --batch)")
        return USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
