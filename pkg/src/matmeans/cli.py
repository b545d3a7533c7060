"""Command-line front end.

Subcommands: ``check`` (run the property campaign), ``paper-example``
(evaluate the built-in 2x2 counterexample pair), ``scan-p`` (eigenvalue
scan of the power mean across a p grid, CSV output), ``means`` (print all
means of two matrices with their norms), ``gen`` (write a seeded random
positive definite matrix).

Exit codes: 0 success, 1 property failure, 2 usage or input error.  The
environment variable MEANS_SEED overrides --seed when set.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import means, spectra, suite
from .densela import format_matrix, random_pd, read_matrix, require_pd, write_matrix

_MEAN_ORDER = ("geometric", "power", "log-euclidean", "arithmetic", "sandwich", "cross-term")


def _parse_dims(text: str) -> tuple[int, ...]:
    if ":" in text:
        lo, hi = text.split(":", 1)
        lo_i, hi_i = int(lo), int(hi)
        if hi_i < lo_i:
            raise ValueError(f"bad dimension range {text!r}")
        return tuple(range(lo_i, hi_i + 1))
    return tuple(int(part) for part in text.split(",") if part.strip())


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(",") if part.strip())


def _parse_props(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def _env_seed(seed: int) -> int:
    env = os.environ.get("MEANS_SEED")
    return int(env) if env else seed


def _load_pd(path: str, name: str) -> np.ndarray:
    try:
        m = read_matrix(path)
    except OSError as exc:
        raise ValueError(f"cannot read {name} from {path!r}: {exc}") from exc
    return require_pd(m, f"{name} ({path})")


def cmd_check(args) -> int:
    config = suite.CampaignConfig(
        master_seed=_env_seed(args.seed),
        count=args.count,
        dims=_parse_dims(args.dims),
        cond_exponent=args.cond,
        t_values=_parse_floats(args.t),
        p_grid=_parse_floats(args.p_grid),
        properties=_parse_props(args.props) if args.props is not None else suite.PROPERTY_IDS,
        tolerance=args.tol,
    )
    jsonl_path = args.out if args.format == "jsonl" else None
    csv_path = args.out if args.format == "csv" else None
    report = suite.run_campaign(config, jsonl_path=jsonl_path, csv_path=csv_path)
    for pid in config.properties:
        c = report.counts[pid]
        print(
            f"{pid}: pass={c['pass']} fail={c['fail']} "
            f"marginal={c['marginal']} skipped={c['skipped']}"
        )
    print(
        f"instances={config.count} failures={report.total_failures} "
        f"duration={report.duration_seconds:.2f}s report={args.out}"
    )
    return 0 if report.total_failures == 0 else 1


def cmd_paper_example(args) -> int:
    l2_geo, l2_le = suite.paper_counterexample()
    a, b = suite.paper_pair()
    g = means.geometric_mean(a, b, 0.5)
    lam = spectra.eigenvalues_desc(g)
    det_geo = float(np.prod(lam))
    ok_geo = abs(l2_geo - 1.0) <= 1e-9
    ok_le = 0.9801 <= l2_le <= 0.9811
    ok_det = abs(det_geo - 3.0) <= 1e-8
    print(f"lambda2(geometric)   = {l2_geo:.9f}   (expected 1.0 within 1e-9)")
    print(f"lambda2(log-euclid)  = {l2_le:.9f}   (expected within [0.9801, 0.9811])")
    print(f"det(geometric)       = {det_geo:.9f}   (expected 3.0 within 1e-8)")
    print(f"lambda1(geometric)   = {float(lam[0]):.9f}   (det / lambda2)")
    verdict = ok_geo and ok_le and ok_det
    print("PASS" if verdict else "FAIL")
    return 0 if verdict else 1


def cmd_scan_p(args) -> int:
    a = _load_pd(args.a, "matrix a")
    b = _load_pd(args.b, "matrix b")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    grid = sorted(_parse_floats(args.p_grid))
    lines = ["p,j,lambda"]
    for p in grid:
        lam = means.power_mean_spectrum(a, b, args.t, p)
        for j, v in enumerate(lam, start=1):
            lines.append(f"{p:.17g},{j},{v:.17g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_means(args) -> int:
    a = _load_pd(args.a, "matrix a")
    b = _load_pd(args.b, "matrix b")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    t, p = args.t, args.p
    values = {
        "geometric": means.geometric_mean(a, b, t),
        "power": means.power_mean(a, b, t, p),
        "log-euclidean": means.log_euclidean(a, b, t),
        "arithmetic": means.arithmetic_path(a, b, t),
        "sandwich": means.sandwich_mean(a, b, t, p) if p > 0 else None,
        "cross-term": means.cross_term(a, b, t),
    }
    n = a.shape[0]
    for name in _MEAN_ORDER:
        m = values[name]
        print(f"# {name} (t={t:g}, p={p:g})")
        if m is None:
            print("undefined for p <= 0")
            continue
        sys.stdout.write(format_matrix(m))
        kf = " ".join(
            f"k={k}:{spectra.ky_fan_norm(m, k):.17g}" for k in range(1, n + 1)
        )
        sch = " ".join(
            f"p={label}:{spectra.schatten_norm(m, pv):.17g}"
            for label, pv in (("1", 1.0), ("2", 2.0), ("inf", math.inf))
        )
        print(f"ky-fan {kf}")
        print(f"schatten {sch}")
    return 0


def cmd_gen(args) -> int:
    m = random_pd(args.dim, args.cond, _env_seed(args.seed))
    if args.out:
        write_matrix(args.out, m)
        print(f"wrote {args.dim}x{args.dim} matrix to {args.out}")
    else:
        sys.stdout.write(format_matrix(m))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matmeans",
        description="Matrix means of positive definite matrices and a "
        "property-based verifier for their norm and majorization inequalities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    chk = sub.add_parser("check", help="run the property campaign")
    chk.add_argument("--seed", type=int, default=1, help="master seed")
    chk.add_argument("--dims", default="2:6", help="dimension range lo:hi or comma list")
    chk.add_argument("--count", type=int, default=100, help="number of instances")
    chk.add_argument("--cond", type=float, default=1.5,
                     help="max conditioning exponent (eigenvalues in [10^-c, 10^c])")
    chk.add_argument("--t", default="0,0.25,0.5,0.75,1", help="comma list of t values")
    chk.add_argument("--p-grid", default="-4,-2,-1,-0.5,-0.1,0,0.1,0.5,1,2,4",
                     help="comma list of p grid points")
    chk.add_argument("--props", default=None,
                     help="comma list of property ids (default: all)")
    chk.add_argument("--tol", type=float, default=suite.DEFAULT_TOLERANCE,
                     help="pass tolerance for normalized margins")
    chk.add_argument("--out", default="report.jsonl", help="report output path")
    chk.add_argument("--format", choices=("jsonl", "csv"), default="jsonl",
                     help="report format: full JSON lines or CSV summary")
    chk.set_defaults(fn=cmd_check)

    pe = sub.add_parser("paper-example",
                        help="evaluate the built-in 2x2 counterexample pair")
    pe.set_defaults(fn=cmd_paper_example)

    scan = sub.add_parser("scan-p", help="CSV scan of power-mean eigenvalues over p")
    scan.add_argument("--a", required=True, help="path to matrix A")
    scan.add_argument("--b", required=True, help="path to matrix B")
    scan.add_argument("--t", type=float, default=0.5)
    scan.add_argument("--p-grid", default="-4,-2,-1,-0.5,-0.1,0,0.1,0.5,1,2,4")
    scan.add_argument("--out", default=None, help="CSV output path (default stdout)")
    scan.set_defaults(fn=cmd_scan_p)

    mn = sub.add_parser("means", help="print all means of two matrices with norms")
    mn.add_argument("--a", required=True, help="path to matrix A")
    mn.add_argument("--b", required=True, help="path to matrix B")
    mn.add_argument("--t", type=float, default=0.5)
    mn.add_argument("--p", type=float, default=1.0)
    mn.set_defaults(fn=cmd_means)

    gen = sub.add_parser("gen", help="write a seeded random positive definite matrix")
    gen.add_argument("--dim", type=int, required=True)
    gen.add_argument("--cond", type=float, default=1.0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default=None, help="output path (default stdout)")
    gen.set_defaults(fn=cmd_gen)

    return parser


def _glue_dash_values(argv, flags=("--p-grid",)):
    """Rewrite `--p-grid -4,-2,...` as `--p-grid=-4,-2,...`.

    argparse otherwise mistakes a value starting with a minus sign for an
    option.
    """
    out = []
    it = iter(argv)
    for tok in it:
        if tok in flags:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_glue_dash_values(argv))
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
