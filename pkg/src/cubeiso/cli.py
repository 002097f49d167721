"""Command-line front end.

Subcommands:
  verify-all      run every registered claim plus the scalar-check suite
  verify          run one claim by id
  certify         run one claim and always emit its certificates
  check-cert      independently re-verify a certificate file
  oracle-profile  brute-force isoperimetric profile for small n
  envelope        envelope approximation on a dyadic grid, as CSV
  poincare        exhaustive Poincare comparison for small n
  plot-data       CSV data series behind the bound-comparison, failure and
                  envelope-family figures

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction

from . import claims as claims_mod
from . import funcs, oracle
from .claims import CERT_DIR_ENV
from .interval import Interval

F = Fraction


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 1


def _cmd_verify_all(args) -> int:
    reports = claims_mod.run_all(
        max_depth=args.max_depth, emit_dir=args.emit, threads=args.threads,
    )
    print(claims_mod.summary_table(reports))
    scal_ok, checks = funcs.run_scalar_checks()
    n_pass = sum(c.passed for c in checks)
    print(f"scalar checks: {n_pass}/{len(checks)} passed")
    for c in checks:
        if not c.passed:
            print(f"  FAIL {c.check_id}: {c.value!r} vs {c.threshold} ({c.direction})")
    ok = all(r.ok for r in reports) and scal_ok
    if args.summary_json:
        payload = {
            "claims": [
                {
                    "id": r.claim_id,
                    "ok": r.ok,
                    "margin": r.margin if math.isfinite(r.margin) else None,
                    "rects": r.rect_count,
                    "reference_margin_met": r.reference_margin_met,
                }
                for r in reports
            ],
            "scalar_checks": [{"id": c.check_id, "ok": c.passed} for c in checks],
            "ok": ok,
        }
        with open(args.summary_json, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if ok else 1


def _cmd_verify(args) -> int:
    try:
        report = claims_mod.run_claim(args.claim, max_depth=args.max_depth, emit_dir=args.emit)
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(claims_mod.summary_table([report]))
    for rr in report.runs:
        status = "ok" if rr.ok else "FAIL"
        print(f"  run {rr.run_tag}: {status} rects={rr.rect_count} margin={rr.margin:.3e}")
        if rr.failure_box is not None:
            print(f"    deepest unprovable box: {' '.join(rr.failure_box.tokens())}")
        if rr.certificate_path:
            print(f"    certificate: {rr.certificate_path}")
    return 0 if report.ok else 1


def _cmd_certify(args) -> int:
    out_dir = args.out_dir or os.environ.get(CERT_DIR_ENV) or "certificates"
    args.emit = out_dir
    return _cmd_verify(args)


def _cmd_check_cert(args) -> int:
    with open(args.file, "rb") as fh:
        data = fh.read()
    try:
        report = claims_mod.verify_certificate_bytes(data)
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if report.ok:
        print(f"ok: {args.file}: tiling exact, every rectangle provably positive "
              f"(min bound {report.min_bound:.3e})")
        return 0
    print(f"FAIL: tiling_ok={report.tiling_ok} positivity_ok={report.positivity_ok}")
    for line in report.failures[:50]:
        print(f"  {line}")
    if len(report.failures) > 50:
        print(f"  ... and {len(report.failures) - 50} more")
    return 1


def _cmd_oracle_profile(args) -> int:
    points = oracle.profile_bruteforce(args.n, args.beta)
    rows = [("k", "x", "value", "argmin_mask")]
    for k, p in enumerate(points):
        rows.append((k, str(p.x), repr(p.value), p.argmin.mask))
    _write_rows(args.out, rows)
    return 0


def _cmd_envelope(args) -> int:
    env = oracle.envelope_approx(args.beta, args.depth, refine=args.refine)
    rows = [("x", "value")]
    grid = env.grid()
    for x, v in zip(grid, env.values):
        rows.append((repr(float(x)), repr(float(v))))
    _write_rows(args.out, rows)
    print(f"envelope beta={args.beta} depth={args.depth}: "
          f"{env.iterations} scans, residual {env.residual:.2e}", file=sys.stderr)
    return 0


def _cmd_poincare(args) -> int:
    arr = oracle.poincare_exhaustive(args.n, args.p)
    pops = oracle._popcounts(args.n)
    nverts = 1 << args.n
    worst_ratio = math.inf
    worst_mask = None
    violations = 0
    for mask in range(arr.shape[0]):
        k = int(pops[mask])
        if k == 0 or k == nverts:
            continue
        lhs_p, rhs_p = arr[mask]
        ratio = (lhs_p / rhs_p) ** (1.0 / args.p)
        if ratio < worst_ratio:
            worst_ratio = ratio
            worst_mask = mask
        if lhs_p < rhs_p - 1e-15:
            violations += 1
    print(f"n={args.n} p={args.p}: min ||grad f||_p / ||f - Ef||_p = {worst_ratio:.12f} "
          f"at mask {worst_mask}; {violations} subsets below 1")
    return 0 if worst_ratio >= args.threshold else 1


def _grid(depth: int) -> list[float]:
    n = 1 << depth
    return [k / n for k in range(n + 1)]


def _cmd_plot_data(args) -> int:
    if args.figure == "bounds":
        bc_half = funcs.beta_consts(funcs.BetaParams(F(1, 2)))
        env = oracle.envelope_approx(0.5, 8)
        rows = [("x", "scaled_glued_bound", "talagrand", "bobkov_goetze", "bim", "envelope")]
        c0 = float(funcs.C0)
        for k, x in enumerate(_grid(8)):
            xi = Interval(x)
            bmid = funcs.b(xi, bc_half).mid * c0
            q = x * (1 - x)
            rows.append((
                repr(x), repr(bmid),
                repr(math.sqrt(2) * q),
                repr(math.sqrt(3) * q),
                repr(2 * math.sqrt(2 ** 1.5 - 2) * q),
                repr(float(env.values[k])),
            ))
    elif args.figure == "failure":
        good = funcs.beta_consts(funcs.BetaParams(F(1, 2) + F(37, 65536)))
        bad = funcs.beta_consts(funcs.BetaParams(F(1, 2) + F(36, 65536)))
        half = Interval(0.5)
        rows = [("y", "g_beta_37", "g_beta_36")]
        for y in _grid(8):
            if y < 0.5:
                continue
            yi = Interval(y)
            rows.append((
                repr(y),
                repr(funcs.G_of_b(half, yi, good).mid),
                repr(funcs.G_of_b(half, yi, bad).mid),
            ))
    elif args.figure == "envelopes":
        betas = [0.5 + 0.01 * i for i in range(51)]
        grids = [oracle.envelope_approx(b, 6, refine=args.refine) for b in betas]
        header = ["x"] + [f"beta_{b:.2f}" for b in betas]
        rows = [tuple(header)]
        for k, x in enumerate(_grid(6)):
            rows.append(tuple([repr(x)] + [repr(float(g.values[k])) for g in grids]))
    else:  # pragma: no cover - argparse restricts choices
        return 2
    _write_rows(args.out, rows)
    return 0


def _write_rows(path, rows) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            csv.writer(fh).writerows(rows)
    else:
        csv.writer(sys.stdout).writerows(rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubeiso", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-all", help="prove every claim and scalar check")
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--emit", default=None, help="directory for certificates")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--summary-json", default=None)
    p.set_defaults(func=_cmd_verify_all)

    p = sub.add_parser("verify", help="prove a single claim")
    p.add_argument("--claim", required=True)
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--emit", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("certify", help="prove a claim and emit certificates")
    p.add_argument("--claim", required=True)
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--out-dir", default=None,
                   help=f"certificate directory (default ${CERT_DIR_ENV} or ./certificates)")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("check-cert", help="re-verify a certificate file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_check_cert)

    p = sub.add_parser("oracle-profile", help="brute-force profile for small n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_oracle_profile)

    p = sub.add_parser("envelope", help="envelope approximation as CSV")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--refine", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_envelope)

    p = sub.add_parser("poincare", help="exhaustive Poincare comparison")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--threshold", type=float, default=1.0)
    p.set_defaults(func=_cmd_poincare)

    p = sub.add_parser("plot-data", help="CSV series behind the figures")
    p.add_argument("--figure", choices=["bounds", "failure", "envelopes"], required=True)
    p.add_argument("--refine", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_plot_data)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
