"""Simultaneous root finding for section polynomials.

The primary path is Aberth-Ehrlich iteration with Newton-polygon initial
guesses, run in three stages of increasing precision:

1. plain float64 sweeps (fast; resolves roots whose condition number is
   below ~1e13),
2. double-double sweeps on whatever did not settle (picks up condition
   numbers to ~1e28),
3. adaptive-precision mpmath sweeps on the remainder.

Stage 3 exists because the inner-left zeros of section polynomials have
condition numbers growing like exp(0.56 n): at degree 160 they already
exceed what double-double can resolve, and at degree 400 they need more
than one hundred decimal digits.  A "parked" iterate (residual at the
noise floor of the current precision while its correction is still large)
is the signal that more digits are required.

The companion-matrix oracle uses the geometric-mean rescaling z = G w
before forming the balanced companion matrix; without it the eigenvalues
of section-polynomial companions are useless beyond degree ~30.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from . import _dd
from .sections import SectionPolynomial

_EPS = float(np.finfo(float).eps)
_GOLDEN = 0.5 * (math.sqrt(5.0) - 1.0)


@dataclass(frozen=True)
class RootSet:
    """All roots of one polynomial, with convergence diagnostics.

    residuals are backward-error style: |p(root)| divided by the
    evaluation scale sum_k |c_k| |root|^k, measured in double-double.
    """

    roots: np.ndarray
    residuals: np.ndarray
    iterations: int
    converged: bool

    def __len__(self):
        return len(self.roots)


# ---------------------------------------------------------------------------
# initial guesses
# ---------------------------------------------------------------------------

def _newton_polygon_radii(coeffs: np.ndarray) -> np.ndarray:
    """Root-modulus estimates from the upper convex hull of k -> log|c_k|."""
    n = len(coeffs) - 1
    logs = np.full(n + 1, -np.inf)
    nz = coeffs != 0
    logs[nz] = np.log(np.abs(coeffs[nz]))
    hull = [0]
    for k in range(1, n + 1):
        if not np.isfinite(logs[k]):
            continue
        while len(hull) >= 2:
            i, j = hull[-2], hull[-1]
            if (logs[j] - logs[i]) * (k - j) <= (logs[k] - logs[j]) * (j - i):
                hull.pop()
            else:
                break
        hull.append(k)
    radii = np.empty(n)
    for i, j in zip(hull[:-1], hull[1:]):
        radii[i:j] = math.exp((logs[i] - logs[j]) / (j - i))
    return radii


def _initial_guesses(coeffs: np.ndarray) -> np.ndarray:
    n = len(coeffs) - 1
    radii = _newton_polygon_radii(coeffs)
    ks = np.arange(n)
    # deterministic phase offset plus a mild radial jitter so that symmetric
    # coefficient patterns cannot trap the iteration in a symmetric cycle
    jitter = 1.0 + 0.05 * np.cos(1.7 * ks)
    angles = 2.0 * math.pi * _GOLDEN * ks + 0.4
    return radii * jitter * np.exp(1j * angles)


def _separate_collisions(z: np.ndarray) -> np.ndarray:
    d = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(d, np.inf)
    scale = 1.0 + np.abs(z)
    for j in range(len(z)):
        k = int(np.argmin(d[j]))
        if d[j, k] < 1e-12 * scale[j] and k > j:
            z[k] = z[k] + 2e-7 * scale[j] * np.exp(1j * (0.7 + 2.3 * j))
    return z


def _horner_d(hi2lo: np.ndarray, z: np.ndarray):
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    for c in hi2lo:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _eval_scale(abs_hi2lo: np.ndarray, az: np.ndarray) -> np.ndarray:
    s = np.zeros_like(az)
    for ac in abs_hi2lo:
        s = s * az + ac
    return s


def _repulsion(zc_active: np.ndarray, zc_all: np.ndarray, active_idx: np.ndarray):
    diff = zc_active[:, None] - zc_all[None, :]
    diff[np.arange(len(active_idx)), active_idx] = 1.0
    too_close = np.abs(diff) < 1e-15 * (1.0 + np.abs(zc_active))[:, None]
    if too_close.any():
        return None
    with np.errstate(divide="ignore", invalid="ignore"):
        return (1.0 / diff).sum(axis=1) - 1.0


def _aberth_correction(w, S):
    denom = 1.0 - w * S
    with np.errstate(divide="ignore", invalid="ignore"):
        corr = np.where(np.abs(denom) > 1e-290, w / denom, w)
    return np.where(np.isfinite(corr), corr, 0.0)


# ---------------------------------------------------------------------------
# the three stages
# ---------------------------------------------------------------------------

def _stage_double(hi: np.ndarray, maxiter: int, tol: float):
    n = len(hi) - 1
    hi2lo = hi[::-1]
    z = _initial_guesses(hi)
    rmax = min(4.0 * float(np.max(np.abs(z))) + 1.0, math.exp(680.0 / max(n, 1)))
    frozen = np.zeros(n, dtype=bool)
    sweeps = 0
    for sweeps in range(1, maxiter + 1):
        p, dp = _horner_d(hi2lo, z)
        bad = ~np.isfinite(p) | ~np.isfinite(dp)
        if bad.any():
            z[bad] *= 0.5
            continue
        with np.errstate(divide="ignore", invalid="ignore"):
            w = np.where(dp != 0, p / dp, 1e-3)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        if (np.abs(diff) < 1e-13 * (1.0 + np.abs(z))[:, None]).any():
            z = _separate_collisions(z)
            continue
        with np.errstate(divide="ignore", invalid="ignore"):
            S = (1.0 / diff).sum(axis=1) - 1.0
        corr = _aberth_correction(w, S)
        small = np.abs(corr) < tol * (1.0 + np.abs(z))
        corr[frozen] = 0.0
        z = z - corr
        frozen |= small
        far = np.abs(z) > rmax
        if far.any():
            z[far] = z[far] / np.abs(z[far]) * (rmax * 0.5)
            frozen[far] = False
        if frozen.all():
            break
    return _separate_collisions(z), sweeps


def _stage_dd(hi: np.ndarray, lo: np.ndarray, z: np.ndarray, maxiter: int, tol: float):
    n = len(hi) - 1
    hi2lo = hi[::-1]
    lo2 = lo[::-1]
    abs_hi2lo = np.abs(hi2lo)
    zdd = _dd.cdd_from_complex(z)
    frozen = np.zeros(n, dtype=bool)
    parked = np.zeros(n, dtype=bool)
    sweeps = 0
    for sweeps in range(1, maxiter + 1):
        act = ~(frozen | parked)
        if not act.any():
            break
        zc_all = _dd.cdd_to_complex(zdd)
        idx = np.nonzero(act)[0]
        zsub = (zdd[0][act], zdd[1][act], zdd[2][act], zdd[3][act])
        p, dp = _dd.horner_dd(hi2lo, lo2, zsub)
        pc = _dd.cdd_to_complex(p)
        dpc = _dd.cdd_to_complex(dp)
        zc = zc_all[act]
        s = _eval_scale(abs_hi2lo, np.abs(zc))
        floor = np.abs(pc) <= 4.0 * (n + 1) * _dd.DD_EPS * s
        with np.errstate(divide="ignore", invalid="ignore"):
            w = np.where(dpc != 0, pc / dpc, 0.0)
        S = _repulsion(zc, zc_all, idx)
        if S is None:
            zdd = _dd.cdd_from_complex(_separate_collisions(zc_all))
            continue
        corr = _aberth_correction(w, S)
        small = np.abs(corr) < tol * (1.0 + np.abs(zc))
        done = small | (floor & (np.abs(corr) < 1e-10 * (1.0 + np.abs(zc))))
        park = floor & ~done
        step = np.where(park, 0.0, corr)
        cfull = np.zeros(n, dtype=complex)
        cfull[idx] = step
        cc = _dd.cdd_from_complex(cfull)
        zdd = _dd.cdd_add(zdd, _dd.cdd_neg(cc))
        frozen[idx[done]] = True
        parked[idx] = park
    return _dd.cdd_to_complex(zdd), frozen, parked, sweeps


def _stage_mp(coeffs_scaled, dps_cap: int, z: np.ndarray, active: np.ndarray,
              maxiter: int, tol: float):
    """Adaptive-precision sweeps on the active subset.

    coeffs_scaled: mpmath coefficient list, low order first.  Returns the
    updated roots, a converged flag, and sweep count.
    """
    n = len(z)
    deg = len(coeffs_scaled) - 1
    hi2lo_abs = np.abs(np.array([complex(c) for c in coeffs_scaled][::-1]))
    active = active.copy()
    dps = 60
    sweeps = 0
    stuck_rounds = 0
    prev_corr = np.zeros(n, dtype=complex)
    while sweeps < maxiter and active.any():
        sweeps += 1
        idx = np.nonzero(active)[0]
        w = np.zeros(len(idx), dtype=complex)
        logp = np.zeros(len(idx))
        with mp.workdps(dps):
            cs_rev = [mp.mpc(c) for c in reversed(coeffs_scaled)]
            for i, j in enumerate(idx):
                x = mp.mpc(complex(z[j]))
                pv = mp.mpc(0)
                dv = mp.mpc(0)
                for c in cs_rev:
                    dv = dv * x + pv
                    pv = pv * x + c
                w[i] = complex(pv / dv) if dv != 0 else 0.0
                logp[i] = float(mp.log(abs(pv), 10)) if pv != 0 else -mp.inf
        zc = z[idx]
        S = _repulsion(zc, z, idx)
        if S is None:
            z = _separate_collisions(z.copy())
            continue
        corr = _aberth_correction(w, S)
        scale = _eval_scale(hi2lo_abs, np.abs(zc))
        # parked: residual at the precision floor but correction still large
        floor = logp <= np.log10(scale * (deg + 1.0)) - dps + 2.0
        small = np.abs(corr) < tol * (1.0 + np.abs(zc))
        park = floor & ~small & (np.abs(corr) > 1e-13 * (1.0 + np.abs(zc)))
        # straight-line acceleration through exponentially flat regions,
        # where the Newton flow advances only ~1/deg per sweep
        accel = np.ones(len(idx))
        pc = prev_corr[idx]
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(pc != 0, corr / pc, 0.0)
        steady = (np.abs(np.abs(ratio) - 1.0) < 0.15) & (np.abs(np.angle(ratio)) < 0.3)
        accel[steady & ~small] = 4.0
        step = np.where(park, 0.0, corr * accel)
        z = z.copy()
        z[idx] = z[idx] - step
        prev_corr[idx] = corr
        active[idx[small]] = False
        if park.any():
            stuck_rounds += 1
            if stuck_rounds >= 2:
                if dps >= dps_cap:
                    return z, False, sweeps
                dps = min(dps_cap, int(dps * 1.7) + 10)
                stuck_rounds = 0
        else:
            stuck_rounds = 0
    return z, not active.any(), sweeps


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def _strip(poly: SectionPolynomial):
    """Remove leading/trailing zero coefficients; count roots at the origin."""
    hi, lo = poly.coeffs, poly.coeffs_lo
    nz = np.nonzero((hi != 0) | (lo != 0))[0]
    if len(nz) == 0:
        raise ValueError("zero polynomial")
    t, head = int(nz[0]), int(nz[-1])
    mpc = None
    if poly.mp_coeffs is not None:
        mpc = list(poly.mp_coeffs[t:head + 1])
    return hi[t:head + 1].copy(), lo[t:head + 1].copy(), mpc, t


def _residuals_dd(hi: np.ndarray, lo: np.ndarray, roots: np.ndarray) -> np.ndarray:
    if len(roots) == 0:
        return np.zeros(0)
    zdd = _dd.cdd_from_complex(roots)
    p, _ = _dd.horner_dd(hi[::-1], lo[::-1], zdd, derivative=False)
    pc = np.abs(_dd.cdd_to_complex(p))
    s = _eval_scale(np.abs(hi[::-1]), np.abs(roots))
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(s > 0, pc / s, pc)


def _solve(hi, lo, mpc, mp_dps, maxiter_d, maxiter_dd, maxiter_mp, tol):
    deg = len(hi) - 1
    if deg == 0:
        return np.zeros(0, dtype=complex), 0, True
    if deg == 1:
        r = np.array([-(hi[0] + lo[0]) / (hi[1] + lo[1])])
        return r, 1, True
    # even polynomials: solve in w = z^2 and emit exact +- pairs
    if deg % 2 == 0 and not np.any(hi[1::2]) and not np.any(lo[1::2]):
        sub_mpc = mpc[0::2] if mpc is not None else None
        wroots, it, conv = _solve(hi[0::2], lo[0::2], sub_mpc, mp_dps,
                                  maxiter_d, maxiter_dd, maxiter_mp, tol)
        sq = np.sqrt(wroots.astype(complex))
        return np.concatenate([sq, -sq]), it, conv

    z, it_d = _stage_double(hi, maxiter_d, tol)
    z, frozen, parked, it_dd = _stage_dd(hi, lo, z, maxiter_dd, 1e-26)
    iterations = it_d + it_dd
    converged = True
    remaining = ~frozen
    if remaining.any():
        cs = mpc if mpc is not None else [mp.mpc(complex(h)) + mp.mpc(complex(l))
                                          for h, l in zip(hi, lo)]
        cap = mp_dps if (mpc is not None and mp_dps) else 340
        z, converged, it_mp = _stage_mp(cs, cap, z, remaining, maxiter_mp, 1e-15)
        iterations += it_mp
    return z, iterations, converged


def aberth_roots(poly: SectionPolynomial, maxiter: int = 150) -> RootSet:
    """All roots of a section polynomial by staged Aberth-Ehrlich iteration."""
    hi, lo, mpc, zeros_at_origin = _strip(poly)
    roots, iterations, converged = _solve(
        hi, lo, mpc, poly.mp_dps, maxiter_d=maxiter,
        maxiter_dd=80, maxiter_mp=420, tol=1e-13)
    if zeros_at_origin:
        roots = np.concatenate([roots, np.zeros(zeros_at_origin, dtype=complex)])
    res = _residuals_dd(poly.coeffs, poly.coeffs_lo, roots)
    return RootSet(roots, res, iterations, bool(converged))


def companion_roots(poly: SectionPolynomial) -> RootSet:
    """Oracle route: eigenvalues of the rescaled balanced companion matrix.

    Degree is capped at 60; beyond that the eigenvalue route loses the root
    structure of section polynomials outright.  Eigenvalues are polished by
    three double-double Newton steps, which refines positions but cannot
    repair a wrong multiset, so the cross-check against aberth_roots stays
    meaningful.
    """
    hi, lo, _, zeros_at_origin = _strip(poly)
    deg = len(hi) - 1
    if deg > 60:
        raise ValueError(f"companion oracle limited to degree <= 60, got {deg}")
    if deg == 0:
        roots = np.zeros(0, dtype=complex)
    else:
        G = (abs(hi[0] + lo[0]) / abs(hi[deg] + lo[deg])) ** (1.0 / deg)
        if not np.isfinite(G) or G == 0:
            G = 1.0
        q = (hi + lo) * G ** np.arange(deg + 1)
        q = q / q[deg]
        A = np.zeros((deg, deg), dtype=complex)
        if deg > 1:
            A[1:, :-1] = np.eye(deg - 1)
        A[:, -1] = -q[:deg]
        roots = np.linalg.eigvals(A) * G
        hi2lo, lo2 = hi[::-1], lo[::-1]
        for _ in range(3):
            zdd = _dd.cdd_from_complex(roots)
            p, dp = _dd.horner_dd(hi2lo, lo2, zdd)
            pc = _dd.cdd_to_complex(p)
            dpc = _dd.cdd_to_complex(dp)
            with np.errstate(divide="ignore", invalid="ignore"):
                step = np.where(dpc != 0, pc / dpc, 0.0)
            step = np.where(np.isfinite(step), step, 0.0)
            big = np.abs(step) > 0.1 * (1.0 + np.abs(roots))
            roots = roots - np.where(big, 0.0, step)
    if zeros_at_origin:
        roots = np.concatenate([roots, np.zeros(zeros_at_origin, dtype=complex)])
    res = _residuals_dd(poly.coeffs, poly.coeffs_lo, roots)
    tol = 256.0 * (len(poly.coeffs)) * _dd.DD_EPS
    return RootSet(roots, res, 1, bool(np.all(res < max(tol, 1e-20))))


def count_in_sector(rs: RootSet, theta1: float, theta2: float) -> int:
    """Number of roots with argument (taken in [0, 2pi)) in [theta1, theta2]."""
    width = theta2 - theta1
    if width < 0 or width > 2.0 * math.pi + 1e-12:
        raise ValueError("need 0 <= theta2 - theta1 <= 2*pi")
    args = np.mod(np.angle(rs.roots), 2.0 * math.pi)
    rel = np.mod(args - theta1, 2.0 * math.pi)
    return int(np.sum(rel <= width))
