"""The authoritative registry of partitioned positivity claims, and a runner
that proves them by recursive dyadic partitioning.

Each claim names a bound function, a domain with dyadic corners, one or more
parameter sets, and the reference margin reported for it.  Acceptance only
requires strict positivity of every accepted box; whether the reference
margin was met is reported but not enforced (margins depend on the tightness
of the underlying enclosures).

Claims are independent and may run concurrently; reports are assembled in
registry order and certificate bytes depend only on the claim and its
parameters, never on thread count or timing.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bounds import BoundFn, eval_bound_fn, tail_side_conditions
from .funcs import BETA0_DYADIC, BETA1, C0, BetaParams
from .partition import (
    MAX_DEPTH_DEFAULT,
    Certificate,
    DyadicRect,
    PartitionStats,
    emit,
    partition,
    verify_certificate,
)

F = Fraction

CERT_DIR_ENV = "CUBEISO_CERT_DIR"


@dataclass(frozen=True)
class ClaimRun:
    run_tag: str
    fn: BoundFn
    domain: DyadicRect


@dataclass(frozen=True)
class Claim:
    claim_id: str
    kind: str  # "partition1" or "partition2"
    runs: tuple[ClaimRun, ...]
    reference_margin: Optional[Fraction]
    max_depth: int = MAX_DEPTH_DEFAULT


@dataclass
class RunReport:
    run_tag: str
    ok: bool
    margin: float
    rect_count: int
    max_depth_seen: int
    evaluations: int
    failure_box: Optional[DyadicRect] = None
    certificate_path: Optional[str] = None


@dataclass
class ClaimReport:
    claim_id: str
    ok: bool
    margin: float
    rect_count: int
    seconds: float
    reference_margin: Optional[Fraction]
    reference_margin_met: Optional[bool]
    runs: list[RunReport] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def _runs_for_params(fn_id: str, domain: DyadicRect, param_sets) -> tuple[ClaimRun, ...]:
    return tuple(
        ClaimRun(run_tag=p.tag(), fn=BoundFn(fn_id, p), domain=domain)
        for p in param_sets
    )


def _claim(claim_id, fn_id, sides, param_sets, margin) -> Claim:
    domain = DyadicRect.build(*sides)
    kind = "partition1" if len(sides) == 1 else "partition2"
    return Claim(
        claim_id=claim_id,
        kind=kind,
        runs=_runs_for_params(fn_id, domain, param_sets),
        reference_margin=margin,
    )


_BETA0 = BetaParams(BETA0_DYADIC)
_HALFP = BetaParams(F(1, 2))
_HALF_C0 = BetaParams(F(1, 2), C0)
_BETA1P = BetaParams(BETA1)


def registry() -> list[Claim]:
    """All thirteen partitioned claims, in canonical order."""
    tail_params = _BETA0
    tail = Claim(
        claim_id="g_tail",
        kind="partition1",
        runs=(
            ClaimRun(
                "low",
                BoundFn("g_tail", tail_params, variant="low"),
                DyadicRect.build((F(27, 32), F(25, 8))),
            ),
            ClaimRun(
                "high",
                BoundFn("g_tail", tail_params, variant="high"),
                DyadicRect.build((F(25, 8), F(381))),
            ),
        ),
        reference_margin=None,
    )
    return [
        _claim("g_JL", "g_JL", [(F(1, 2), F(2047, 2048))], [_BETA0], F(2, 25)),
        _claim("g_J_1", "g_J1", [(F(1, 2), F(5, 8)), (F(0), F(3, 16))],
               [_BETA0, _HALF_C0], F(1, 10**7)),
        _claim("g_J_2", "g_J2", [(F(1, 2), F(9, 16)), (F(11, 16), F(1))],
               [_HALFP], F(1, 10**8)),
        _claim("g_Q_1", "g_Q1", [(F(0), F(1, 4)), (F(1, 4), F(1, 2))],
               [_BETA0], F(1, 1000)),
        _claim("g_Q_2", "g_Q2", [(F(1, 4), F(1, 2)), (F(1, 4), F(1, 2))],
               [_HALFP, _BETA0], F(1, 100)),
        _claim("g_LJQ_1", "g_LJQ1", [(F(1, 16), F(1, 4)), (F(1, 2), F(3, 4))],
               [_BETA0, _HALFP], F(1, 10**7)),
        _claim("g_LJQ_2", "g_LJQ2", [(F(1, 2), F(3, 4)), (F(1, 2), F(1))],
               [_HALFP], F(1, 10**5)),
        _claim("g_QJQ", "g_QJQ", [(F(1, 4), F(1, 2)), (F(1, 2), F(3, 4))],
               [_HALFP, _BETA1P], F(1, 10**5)),
        _claim("g_QJ_1", "g_QJ1", [(F(1, 4), F(1, 2)), (F(1, 2), F(5, 8))],
               [_BETA0, _HALF_C0], F(1, 10**5)),
        _claim("g_QJ_2", "g_QJ2", [(F(1, 4), F(1, 2)), (F(5, 8), F(1))],
               [_HALFP], F(1, 10**7)),
        _claim("g_P_2", "g_P2", [(F(1, 64), F(1, 4))], [_BETA0], F(1, 10**4)),
        _claim("g_P_3", "g_P3", [(F(1, 4), F(1, 2))], [_BETA0], F(1, 1000)),
        tail,
    ]


def claim_by_id(claim_id: str) -> Claim:
    for c in registry():
        if c.claim_id == claim_id:
            return c
    raise KeyError(f"unknown claim {claim_id!r}")


# Deltas for the negative control (perturbing the bound downward must break
# the claim).  Claims whose verified quantity stays well above 0.05 over the
# whole domain need a correspondingly larger perturbation: g_JL has a minimum
# near 1.5, g_Q_2 near 0.11.
NEGATIVE_CONTROL_DELTAS = {"g_JL": 2.0, "g_Q_2": 0.2}
NEGATIVE_CONTROL_DEFAULT = 0.05


def run_claim(
    claim: Claim | str,
    max_depth: Optional[int] = None,
    emit_dir: Optional[str] = None,
    perturb: float = 0.0,
) -> ClaimReport:
    """Prove one claim (all parameter sets); optionally emit certificates.

    perturb subtracts a constant from every bound evaluation; it exists for
    the negative-control tests and must stay 0.0 for real verification.
    """
    if isinstance(claim, str):
        claim = claim_by_id(claim)
    depth = claim.max_depth if max_depth is None else max_depth
    t0 = time.perf_counter()
    report = ClaimReport(
        claim_id=claim.claim_id,
        ok=True,
        margin=math.inf,
        rect_count=0,
        seconds=0.0,
        reference_margin=claim.reference_margin,
        reference_margin_met=None,
    )
    if claim.claim_id == "g_tail":
        for name, passed in tail_side_conditions():
            if not passed:
                report.ok = False
                report.notes.append(f"side condition failed: {name}")
    for run in claim.runs:
        stats = PartitionStats()

        if perturb:
            def evaluate(box, _fn=run.fn, _d=perturb):
                return eval_bound_fn(_fn, box) - _d
        else:
            def evaluate(box, _fn=run.fn):
                return eval_bound_fn(_fn, box)

        rects, failure, margin = partition(evaluate, run.domain, depth, stats)
        rr = RunReport(
            run_tag=run.run_tag,
            ok=failure is None,
            margin=margin,
            rect_count=len(rects) if rects is not None else 0,
            max_depth_seen=stats.max_depth_seen,
            evaluations=stats.evaluations,
            failure_box=failure.deepest_box if failure else None,
        )
        if failure is None and emit_dir is not None:
            cert = Certificate(
                claim_id=claim.claim_id,
                beta=run.fn.params.beta,
                c=run.fn.params.c,
                domain=run.domain,
                rects=rects,
                margin=margin,
            )
            os.makedirs(emit_dir, exist_ok=True)
            path = os.path.join(emit_dir, f"{claim.claim_id}.{run.run_tag}.cert")
            with open(path, "wb") as fh:
                fh.write(emit(cert, "text"))
            with open(path + ".json", "wb") as fh:
                fh.write(emit(cert, "json"))
            rr.certificate_path = path
        report.runs.append(rr)
        report.ok = report.ok and rr.ok
        report.margin = min(report.margin, margin)
        report.rect_count += rr.rect_count
    report.seconds = time.perf_counter() - t0
    if claim.reference_margin is not None and report.ok:
        report.reference_margin_met = Fraction(report.margin) > claim.reference_margin
    return report


def run_all(
    max_depth: Optional[int] = None,
    emit_dir: Optional[str] = None,
    threads: Optional[int] = None,
) -> list[ClaimReport]:
    """Run the whole registry; reports come back in registry order."""
    claims = registry()
    workers = threads if threads else (os.cpu_count() or 1)
    if workers <= 1:
        return [run_claim(c, max_depth, emit_dir) for c in claims]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(run_claim, c, max_depth, emit_dir) for c in claims]
        return [f.result() for f in futures]


def _find_run(cert: Certificate) -> ClaimRun:
    claim = claim_by_id(cert.claim_id)
    for run in claim.runs:
        if (run.fn.params.beta == cert.beta and run.fn.params.c == cert.c
                and run.domain == cert.domain):
            return run
    raise KeyError(
        f"certificate for {cert.claim_id} matches no registered run "
        f"(beta={cert.beta}, c={cert.c})"
    )


def verify_certificate_bytes(data: bytes):
    """Independently re-verify a serialized certificate against the registry."""
    from .partition import load

    cert = load(data)
    run = _find_run(cert)

    def evaluate(box, _fn=run.fn):
        return eval_bound_fn(_fn, box)

    return verify_certificate(cert, evaluate)


def summary_table(reports: list[ClaimReport]) -> str:
    rows = ["claim       ok    margin        rects   ref.margin  met   seconds"]
    for r in reports:
        margin = f"{r.margin:.3e}" if math.isfinite(r.margin) else "-"
        ref = f"{float(r.reference_margin):.0e}" if r.reference_margin is not None else "-"
        met = {True: "yes", False: "no", None: "-"}[r.reference_margin_met]
        rows.append(
            f"{r.claim_id:<10s}  {'ok' if r.ok else 'FAIL':<4s}"
            f"  {margin:<12s}  {r.rect_count:<6d}  {ref:<10s}  {met:<4s}  {r.seconds:.2f}"
        )
    return "\n".join(rows)
