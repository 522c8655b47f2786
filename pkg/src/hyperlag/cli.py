"""Command line front end.

Commands: lagrangian (solve one instance), colex (emit an initial
segment), compress (left-compression fixpoint), verify (closed-form and
composition checks), scan (left-compressed extremal scan).

Exit codes: 0 success, 1 input error, 2 non-convergence or a failed
check, 3 incomplete scan.
"""
from __future__ import annotations

import argparse
import json
import sys

from .conjecture import scan, verify_connection
from .hypergraph import (
    HypergraphFormatError,
    colex_first_m,
    format_hypergraph,
    left_compress_fixpoint,
    read_hypergraph,
)
from .lagrangian import SolverConfig, optimize
from .theorems import THEOREM_IDS, verify_theorem


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _CliError(message)


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def _parse_alpha(items: list[str] | None) -> dict[int, float]:
    out: dict[int, float] = {}
    for item in items or []:
        if "=" not in item:
            raise _CliError(f"bad --alpha {item!r}, expected r=value")
        left, right = item.split("=", 1)
        try:
            r = int(left)
            v = float(right)
        except ValueError:
            raise _CliError(f"bad --alpha {item!r}, expected r=value") from None
        if r in out:
            raise _CliError(f"duplicate --alpha for level {r}")
        out[r] = v
    return out


def _parse_types(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError:
        raise _CliError(f"bad type set {text!r}, expected comma-separated integers") from None
    if not parts:
        raise _CliError("empty type set")
    return parts


def _solver_cfg(args) -> SolverConfig:
    kwargs = {}
    if getattr(args, "tol", None) is not None:
        kwargs["tol"] = args.tol
    if getattr(args, "max_iters", None) is not None:
        kwargs["max_iters"] = args.max_iters
    if getattr(args, "starts", None) is not None:
        kwargs["starts"] = args.starts
    if getattr(args, "seed", None) is not None:
        kwargs["seed"] = args.seed
    return SolverConfig(**kwargs)


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, help="stationarity tolerance (default 1e-10)")
    p.add_argument("--max-iters", type=int, help="ascent iteration cap per start")
    p.add_argument("--starts", type=int, help="number of random starts")
    p.add_argument("--seed", type=int, help="random seed (default 0)")


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--threads", type=int, default=1)


def build_parser() -> _Parser:
    parser = _Parser(prog="hyperlag", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lagrangian", help="maximize the objective for one instance")
    p.add_argument("file", help="hypergraph file")
    p.add_argument("--alpha", action="append", metavar="r=v")
    _add_solver_flags(p)
    _add_common_flags(p)

    p = sub.add_parser("colex", help="emit the colex initial segment with m edges")
    p.add_argument("--type", required=True, dest="types", metavar="T", help="e.g. 1,3")
    p.add_argument("--m", required=True, type=int)
    _add_common_flags(p)

    p = sub.add_parser("compress", help="left-compression fixpoint of a hypergraph")
    p.add_argument("file", help="hypergraph file")
    _add_common_flags(p)

    p = sub.add_parser("verify", help="check a closed form against the solver")
    p.add_argument("--theorem", required=True, choices=THEOREM_IDS)
    p.add_argument("file", nargs="?", help="optional hypergraph file")
    p.add_argument("--alpha", action="append", metavar="r=v")
    p.add_argument("--t", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--type", dest="types", metavar="T")
    p.add_argument("--n", type=int, help="scan bound: connection only, switches to the scan-based check")
    p.add_argument("--check-tol", type=float, default=1e-7, help="pass/fail tolerance on abs_error")
    _add_solver_flags(p)
    _add_common_flags(p)

    p = sub.add_parser("scan", help="left-compressed extremal scan")
    p.add_argument("--type", required=True, dest="types", metavar="T")
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--alpha", action="append", metavar="r=v")
    p.add_argument("--limit", type=int, default=1_000_000)
    _add_solver_flags(p)
    _add_common_flags(p)

    return parser


def _cmd_lagrangian(args) -> int:
    H = read_hypergraph(args.file)
    opt = optimize(H, _parse_alpha(args.alpha), _solver_cfg(args))
    if args.format == "json":
        print(json.dumps(opt.to_json_dict(), sort_keys=True))
    else:
        print(f"value {_fmt(opt.value)}")
        print("weighting " + " ".join(_fmt(v) for v in opt.weighting))
        print("support " + " ".join(str(v) for v in opt.support))
        print(f"kkt_residual {_fmt(opt.kkt_residual)}")
        print(f"converged {'true' if opt.converged else 'false'}")
    return 0 if opt.converged else 2


def _cmd_colex(args) -> int:
    H = colex_first_m(_parse_types(args.types), args.m)
    if args.format == "json":
        payload = {
            "vertices": H.n,
            "edges": [list(e) for e in H.edges()],
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        sys.stdout.write(format_hypergraph(H))
    return 0


def _cmd_compress(args) -> int:
    H = read_hypergraph(args.file)
    C = left_compress_fixpoint(H)
    counts = {r: C.edge_count(r) for r in C.edge_types}
    if args.format == "json":
        payload = {
            "vertices": C.n,
            "edges": [list(e) for e in C.edges()],
            "level_counts": {str(r): c for r, c in counts.items()},
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        summary = " ".join(f"{r}={c}" for r, c in counts.items())
        print(f"# level-counts {summary}")
        sys.stdout.write(format_hypergraph(C))
    return 0


def _cmd_verify(args) -> int:
    alpha = _parse_alpha(args.alpha)
    types = _parse_types(args.types) if args.types else None
    cfg = _solver_cfg(args)
    H = read_hypergraph(args.file) if args.file else None
    if args.theorem == "connection" and args.n is not None:
        if types is None or args.m is None:
            raise _CliError("connection scan needs --type and --m")
        verdict = verify_connection(
            types, alpha, args.m, args.n, cfg, t=args.t, threads=args.threads
        )
    else:
        verdict = verify_theorem(
            args.theorem,
            hypergraph=H,
            alpha=alpha,
            t=args.t,
            r=args.r,
            m=args.m,
            types=types,
            cfg=cfg,
        )
    ok = verdict.passed(args.check_tol)
    if args.format == "json":
        payload = verdict.to_json_dict()
        payload["passed"] = ok
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"theorem {verdict.theorem_id}")
        print(f"hypothesis_ok {'true' if verdict.hypothesis_ok else 'false'}")
        print(f"predicted {_fmt(verdict.predicted)}")
        print(f"computed {_fmt(verdict.computed)}")
        print(f"abs_error {_fmt(verdict.abs_error)}")
        print(f"status {'pass' if ok else 'fail'}")
    return 0 if ok else 2


def _cmd_scan(args) -> int:
    report = scan(
        _parse_types(args.types),
        _parse_alpha(args.alpha),
        args.m,
        args.n,
        _solver_cfg(args),
        limit=args.limit,
        threads=args.threads,
    )
    if args.format == "json":
        print(json.dumps(report.to_json_dict(), sort_keys=True))
    else:
        print("types " + ",".join(str(r) for r in report.types))
        alpha_part = " ".join(f"{r}={_fmt(v)}" for r, v in report.alpha.items())
        print(f"alpha {alpha_part}" if alpha_part else "alpha default")
        print(f"m {report.m}")
        print(f"n {report.n}")
        print(f"enumerated {report.enumerated_count}")
        print(f"complete {'true' if report.complete else 'false'}")
        extremal = "none" if report.extremal_value is None else _fmt(report.extremal_value)
        print(f"extremal_value {extremal}")
        print(f"colex_value {_fmt(report.colex_value)}")
        print(f"conjecture_holds {'true' if report.conjecture_holds else 'false'}")
        for w in report.witnesses:
            print("witness")
            for line in format_hypergraph(w).splitlines():
                print(f"  {line}")
    if not report.complete:
        return 3
    return 0 if report.conjecture_holds else 2


_HANDLERS = {
    "lagrangian": _cmd_lagrangian,
    "colex": _cmd_colex,
    "compress": _cmd_compress,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except HypergraphFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
