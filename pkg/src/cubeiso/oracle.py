"""Exhaustive Hamming-cube ground truth.

Everything here is independent of the interval machinery: plain integer and
floating-point arithmetic over explicitly enumerated subsets of {0,1}^n,
used to cross-validate the certified bounds at desk scale.

A subset A of {0,1}^n is a bitmask over the 2^n vertices.  h_A(x) counts the
edges from a member vertex x to the complement (0 off A), E f is the uniform
average 2^-n sum f(x), and the beta-moment is E h_A^beta with 0^beta := 0.

Exhaustive sweeps (all 2^(2^n) subsets, n <= 4) are vectorized with numpy;
single-subset operations accept n <= 5.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

F = Fraction

MAX_N_EXHAUSTIVE = 4
MAX_N = 5


@dataclass(frozen=True)
class CubeSubset:
    n: int
    mask: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"n={self.n} outside 1..{MAX_N}")
        if not 0 <= self.mask < (1 << (1 << self.n)):
            raise ValueError("mask has bits beyond 2^n vertices")

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def measure(self) -> Fraction:
        return F(self.size, 1 << self.n)

    def complement(self) -> "CubeSubset":
        full = (1 << (1 << self.n)) - 1
        return CubeSubset(self.n, self.mask ^ full)


def boundary_counts(a: CubeSubset) -> list[int]:
    """h_A(x) for every vertex x (0 for x outside A)."""
    nverts = 1 << a.n
    out = [0] * nverts
    m = a.mask
    for v in range(nverts):
        if (m >> v) & 1:
            h = 0
            for i in range(a.n):
                if not (m >> (v ^ (1 << i))) & 1:
                    h += 1
            out[v] = h
    return out


def beta_moment(a: CubeSubset, beta: float) -> float:
    """E h_A^beta with 0^beta = 0."""
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    total = 0.0
    for h in boundary_counts(a):
        if h:
            total += h ** beta
    return total / (1 << a.n)


def edge_boundary_sum(a: CubeSubset) -> int:
    """sum_x h_A(x), an exact integer (twice nothing: each cut edge once)."""
    return sum(boundary_counts(a))


# ---------------------------------------------------------------------------
# Hart's exact edge-isoperimetric profile
# ---------------------------------------------------------------------------

def binary_digit_sum(j: int) -> int:
    return j.bit_count()


def hart_profile(k: int, n: int) -> Fraction:
    """Exact minimum of E h_A over |A| = k 2^-n:

    x (n - (2/k) sum_{j=1}^{k-1} s(j)),  s(j) the binary digit sum of j.
    """
    if not 0 < k <= (1 << n):
        raise ValueError(f"k={k} outside 1..2^{n}")
    s = sum(binary_digit_sum(j) for j in range(1, k))
    return F(k * n - 2 * s, 1 << n)


# ---------------------------------------------------------------------------
# Exhaustive profiles
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _h_table(n: int) -> np.ndarray:
    """h vectors for every mask: shape (2^(2^n), 2^n), dtype uint8."""
    if n > MAX_N_EXHAUSTIVE:
        raise ValueError(f"exhaustive enumeration capped at n={MAX_N_EXHAUSTIVE}")
    nverts = 1 << n
    nmasks = 1 << nverts
    masks = np.arange(nmasks, dtype=np.uint32 if nverts <= 16 else np.uint64)
    h = np.zeros((nmasks, nverts), dtype=np.uint8)
    member = np.zeros((nmasks, nverts), dtype=bool)
    for v in range(nverts):
        member[:, v] = (masks >> v) & 1 == 1
    for v in range(nverts):
        mv = member[:, v]
        for i in range(n):
            h[:, v] += (mv & ~member[:, v ^ (1 << i)]).astype(np.uint8)
    return h


@lru_cache(maxsize=8)
def _popcounts(n: int) -> np.ndarray:
    if n > MAX_N_EXHAUSTIVE:
        raise ValueError(f"exhaustive enumeration capped at n={MAX_N_EXHAUSTIVE}")
    return np.array([m.bit_count() for m in range(1 << (1 << n))], dtype=np.int8)


def all_beta_moments(n: int, beta: float) -> np.ndarray:
    """E h_A^beta for every mask, as float64."""
    h = _h_table(n)
    powtab = np.array([0.0] + [float(k) ** beta for k in range(1, n + 1)])
    return powtab[h].sum(axis=1) / (1 << n)


def all_edge_sums(n: int) -> np.ndarray:
    """Integer sum_x h_A(x) for every mask."""
    return _h_table(n).sum(axis=1, dtype=np.int64)


@dataclass(frozen=True)
class ProfilePoint:
    x: Fraction
    value: float
    argmin: CubeSubset
    value_exact: Optional[Fraction] = None  # populated for beta = 1


def profile_bruteforce(n: int, beta: float) -> list[ProfilePoint]:
    """Minimum of E h_A^beta over all A with |A| = k 2^-n, for k = 0..2^n."""
    if n > MAX_N_EXHAUSTIVE:
        raise ValueError(f"exhaustive enumeration capped at n={MAX_N_EXHAUSTIVE}")
    pops = _popcounts(n)
    nverts = 1 << n
    points = []
    exact = beta == 1.0
    vals = all_edge_sums(n).astype(np.float64) if exact else all_beta_moments(n, beta)
    for k in range(nverts + 1):
        sel = np.nonzero(pops == k)[0]
        sub = vals[sel]
        arg = int(sel[int(np.argmin(sub))])
        best = float(sub.min())
        if exact:
            ve = F(int(best), 1 << n)
            value = float(ve)
        else:
            ve = None
            value = best
        points.append(ProfilePoint(
            x=F(k, nverts), value=value, argmin=CubeSubset(n, arg), value_exact=ve,
        ))
    return points


# ---------------------------------------------------------------------------
# Envelope approximation
# ---------------------------------------------------------------------------

@dataclass
class EnvelopeGrid:
    beta: float
    depth: int
    values: np.ndarray  # B at k 2^-depth, k = 0..2^depth
    iterations: int
    residual: float

    def grid(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, (1 << self.depth) + 1)


def _envelope_scan(b_vals: np.ndarray, beta: float,
                   dx_all: np.ndarray, dxp_all: np.ndarray):
    """For every interior grid index m, the smallest admissible cap

        min over r of (1/2) max( ((2rh)^(1/b) + B[m+r]^(1/b))^b + B[m-r],
                                 2rh + (2^b - 1) B[m+r] + B[m-r] )

    together with the binding offset r and which functional form binds."""
    size = b_vals.size
    inv_b = 1.0 / beta
    two_b_m1 = 2.0 ** beta - 1.0
    bp = b_vals ** inv_b
    caps = np.empty(size)
    caps[0] = caps[-1] = 0.0
    r_best = np.zeros(size, dtype=np.int64)
    form1 = np.zeros(size, dtype=bool)
    for m in range(1, size - 1):
        rmax = min(m, size - 1 - m)
        left = b_vals[m - rmax:m][::-1]
        right = bp[m + 1:m + rmax + 1]
        c1 = (dxp_all[:rmax] + right) ** beta + left
        c2 = dx_all[:rmax] + two_b_m1 * b_vals[m + 1:m + rmax + 1] + left
        both = np.maximum(c1, c2)
        k = int(np.argmin(both))
        caps[m] = 0.5 * both[k]
        r_best[m] = k + 1
        form1[m] = c1[k] >= c2[k]
    return caps, r_best, form1


def _envelope_policy_solve(beta: float, size: int, tol: float,
                           max_outer: int) -> tuple[np.ndarray, int, float]:
    """Greatest fixed point of the cap system by Howard policy iteration.

    Every cap is concave and nondecreasing in the neighboring values, so
    starting from the all-ones upper bound, alternating policy scans with
    direct Newton solves of the induced sparse system converges to the
    greatest fixed point; plain relaxation would need O(size^2) sweeps.
    """
    from scipy.sparse import csr_matrix
    from scipy.sparse.linalg import spsolve

    h = 1.0 / (size - 1)
    inv_b = 1.0 / beta
    two_b_m1 = 2.0 ** beta - 1.0
    dx_all = 2.0 * h * np.arange(1, size, dtype=np.float64)
    dxp_all = dx_all ** inv_b

    b_vals = np.ones(size)
    b_vals[0] = b_vals[-1] = 0.0
    iterations = 0
    residual = math.inf
    interior = np.arange(1, size - 1)
    for _ in range(max_outer):
        caps, r_best, form1 = _envelope_scan(b_vals, beta, dx_all, dxp_all)
        iterations += 1
        residual = float(np.max(np.abs(b_vals[interior] - caps[interior])))
        if residual < tol:
            break
        b_vals = np.minimum(b_vals, caps)
        # Newton on the fixed-policy system  B[m] = cap_{r,form}(B)
        xs = interior - r_best[interior]
        ys = interior + r_best[interior]
        dxp = dxp_all[r_best[interior] - 1]
        dxl = dx_all[r_best[interior] - 1]
        for _newton in range(40):
            bx = b_vals[xs]
            by = b_vals[ys]
            with np.errstate(divide="ignore", invalid="ignore"):
                inner = dxp + by ** inv_b
                cap_vals = np.where(
                    form1[interior],
                    0.5 * (inner ** beta + bx),
                    0.5 * (dxl + two_b_m1 * by + bx),
                )
                dcap_dy = np.where(
                    form1[interior],
                    0.5 * inner ** (beta - 1.0) * by ** (inv_b - 1.0),
                    0.5 * two_b_m1,
                )
            dcap_dy = np.nan_to_num(dcap_dy, nan=0.0, posinf=0.0)
            res = b_vals[interior] - cap_vals
            if float(np.max(np.abs(res))) < 0.1 * tol:
                break
            rows = np.concatenate([interior, interior, interior])
            cols = np.concatenate([interior, xs, ys])
            vals = np.concatenate([
                np.ones(interior.size),
                np.full(interior.size, -0.5),
                -dcap_dy,
            ])
            keep = (cols > 0) & (cols < size - 1)
            mat = csr_matrix(
                (vals[keep], (rows[keep], cols[keep])),
                shape=(size, size),
            )
            # pin the endpoints
            mat = mat + csr_matrix(([1.0, 1.0], ([0, size - 1], [0, size - 1])), shape=(size, size))
            full_res = np.zeros(size)
            full_res[interior] = res
            delta = spsolve(mat.tocsc(), full_res)
            step = 1.0
            for _damp in range(30):
                trial = b_vals - step * delta
                trial[0] = trial[-1] = 0.0
                tb = np.maximum(trial, 0.0)
                bx2 = tb[xs]
                by2 = tb[ys]
                with np.errstate(divide="ignore", invalid="ignore"):
                    inner2 = dxp + by2 ** inv_b
                    cap2 = np.where(
                        form1[interior],
                        0.5 * (inner2 ** beta + bx2),
                        0.5 * (dxl + two_b_m1 * by2 + bx2),
                    )
                new_res = tb[interior] - cap2
                if float(np.max(np.abs(new_res))) <= float(np.max(np.abs(res))):
                    b_vals = tb
                    break
                step *= 0.5
            else:
                break  # damping failed; rescan the policy
    return b_vals, iterations, residual


def envelope_approx(
    beta: float,
    depth: int,
    tol: float = 1e-10,
    refine: Optional[int] = None,
    max_outer: int = 80,
) -> EnvelopeGrid:
    """Approximate envelope on the dyadic grid {k 2^-depth} as the greatest
    fixed point of the two-point cap system

        B(m) <= (1/2) max( ((y-x)^(1/b) + B(y)^(1/b))^b + B(x),
                           (y-x) + (2^b - 1) B(y) + B(x) ),

    over all grid pairs x <= y with grid midpoint m, with B(0) = B(1) = 0
    pinned and a large upper start.  The plain on-grid fixed point carries an
    O(h)-sized boundary-layer excess near 0 and 1 (the caps touching the
    pinned endpoints are first-order accurate only), so the system is solved
    on an internally refined grid and restricted; refine=None picks the
    refinement bringing the internal grid to depth 13 (at most 5 levels).
    """
    if depth > 10:
        raise ValueError("envelope depth capped at 10")
    if refine is None:
        refine = max(0, min(13 - depth, 5))
    internal_depth = depth + refine
    size = (1 << internal_depth) + 1
    values, iterations, residual = _envelope_policy_solve(beta, size, tol, max_outer)
    step = 1 << refine
    return EnvelopeGrid(beta=beta, depth=depth, values=values[::step].copy(),
                        iterations=iterations, residual=residual)


# ---------------------------------------------------------------------------
# Poincare and Bobkov checks
# ---------------------------------------------------------------------------

def poincare_check(a: CubeSubset, p: float) -> tuple[float, float]:
    """(||grad f||_p, ||f - E f||_p) for f = 1_A.

    ||grad f||_p^p = 2^-p (E h_A^{p/2} + E h_{A^c}^{p/2}) and
    ||f - E f||_p^p = |A|^p (1-|A|) + |A| (1-|A|)^p.
    """
    lhs_p = 2.0 ** (-p) * (beta_moment(a, p / 2) + beta_moment(a.complement(), p / 2))
    meas = float(a.measure())
    rhs_p = meas ** p * (1 - meas) + meas * (1 - meas) ** p
    return lhs_p ** (1 / p), rhs_p ** (1 / p)


def poincare_exhaustive(n: int, p: float) -> np.ndarray:
    """Array over all masks of ||grad||_p^p - and ||f-Ef||_p^p, stacked.

    Returns shape (nmasks, 2): column 0 the gradient side, column 1 the
    deviation side, both raised to the p-th power (monotone comparison).
    """
    moments = all_beta_moments(n, p / 2)
    lhs_p = 2.0 ** (-p) * (moments + moments[::-1])
    meas = _popcounts(n).astype(np.float64) / (1 << n)
    rhs_p = meas ** p * (1 - meas) + meas * (1 - meas) ** p
    return np.stack([lhs_p, rhs_p], axis=1)


def sqrt_moment_lower_bound(meas: float) -> float:
    """|A| sqrt(log2(1/|A|) + 1) - |A|, the sharp small-set comparison."""
    if meas <= 0.0:
        return 0.0
    return meas * math.sqrt(math.log2(1.0 / meas) + 1.0) - meas


def mf_values(f: Sequence[float], n: int) -> list[float]:
    """M f(x) = sqrt(sum_i (f(x) - f(x xor e_i))_+^2)."""
    nverts = 1 << n
    if len(f) != nverts:
        raise ValueError("f must assign a value to every vertex")
    out = []
    for v in range(nverts):
        acc = 0.0
        for i in range(n):
            d = f[v] - f[v ^ (1 << i)]
            if d > 0:
                acc += d * d
        out.append(math.sqrt(acc))
    return out


def bobkov_check(f: Sequence[float], n: int) -> tuple[float, float]:
    """(B(E f), E sqrt(B(f)^2 + (Mf)^2)) for B = L_{1/2}; values in [0, 1/2].

    The inequality lhs <= rhs is the two-point induction conclusion; with
    f = (1/2) 1_A it specializes to E sqrt(h_A) >= |A| sqrt(log2(1/|A|)+1) - |A|.
    """
    if any(not 0.0 <= v <= 0.5 for v in f):
        raise ValueError("f must take values in [0, 1/2]")

    def ell(t: float) -> float:
        return 0.0 if t <= 0.0 else t * math.sqrt(math.log2(1.0 / t))

    nverts = 1 << n
    mean = sum(f) / nverts
    mf = mf_values(f, n)
    rhs = sum(math.sqrt(ell(v) ** 2 + m * m) for v, m in zip(f, mf)) / nverts
    return ell(mean), rhs
