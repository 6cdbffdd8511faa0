"""Quantitative zero statistics: index selection, curve deviations, rates.

The per-zero deviation is the side-appropriate implicit modulus minus one;
its predicted size is (xi - Re mu + 1/2) log N / N on the left and
(xi - Re nu + 1/2) log N / N on the right, with an O(1/N) remainder.  Zeros
near the excluded points +-1/c, near the imaginary axis, outside V_{a,b},
or far from the curve are flagged rather than silently dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import LimitCurve, distance_to_curve, in_region_E, in_region_V
from .integrand import IntegrandSpec
from .roots import RootSet
from .specfun import complex_gamma


class InsufficientDataError(ValueError):
    """Not enough distinct section degrees to fit a rate."""


def xi(spec: IntegrandSpec) -> float:
    """Endpoint-exponent selector: Re mu, Re nu, or their min when a = b."""
    return spec.xi


@dataclass(frozen=True)
class AdmissibleIndices:
    indices: tuple
    epsilon: float
    ncond_values: tuple


def admissible_indices(spec: IntegrandSpec, n_min: int, n_max: int,
                       epsilon: float = 0.25) -> AdmissibleIndices:
    """Degrees n in [n_min, n_max] whose endpoint terms cannot cancel.

    The cancellation condition only bites when a = b and Re mu = Re nu;
    otherwise one endpoint dominates outright and every index is usable.
    Selected indices satisfy |ncond(n)| >= epsilon |f1(0) Gamma(mu+1)|.
    """
    if n_min < 2:
        raise ValueError("need n_min >= 2")
    if n_max < n_min:
        raise ValueError("need n_max >= n_min")
    ns = range(n_min, n_max + 1)
    active = (spec.a == spec.b) and (spec.mu.real == spec.nu.real)
    values = tuple(spec.ncond_value(n) for n in ns)
    if not active:
        return AdmissibleIndices(tuple(ns), float(epsilon), values)
    floor = epsilon * abs(spec.f1_at_0 * complex_gamma(spec.mu + 1))
    picked = []
    vals = []
    for n, v in zip(ns, values):
        if abs(v) >= floor:
            picked.append(n)
            vals.append(v)
    return AdmissibleIndices(tuple(picked), float(epsilon), tuple(vals))


@dataclass(frozen=True)
class ZeroRecord:
    N: int
    z: complex
    side: str  # left | right | axis | excluded
    deviation: float
    predicted_deviation: float
    dist_to_curve: float
    excluded_reason: str = ""

    @property
    def excluded(self) -> bool:
        return self.side == "excluded"


def _deviation(spec: IntegrandSpec, z: complex) -> float:
    z = complex(z)
    if z == 0:
        return -1.0
    c = spec.c
    if z.real < 0:
        return math.exp(math.log(c * abs(z)) + 1.0 + spec.a * z.real) - 1.0
    return math.exp(math.log(c * abs(z)) + 1.0 - spec.b * z.real) - 1.0


def classify_zeros(rs, spec: IntegrandSpec, N: int, curve: LimitCurve,
                   delta: float = None) -> list[ZeroRecord]:
    """One ZeroRecord per root, with side, deviation, and exclusion flags.

    delta defaults to 0.1/c; it is the operational margin for "compact
    subset": zeros within delta of +-1/c or of the imaginary axis are
    excluded from rate statistics, as are zeros outside V_{a,b} and zeros
    further than 0.25 from the curve (the latter stay eligible for the
    stray-point scan).
    """
    if delta is None:
        delta = 0.1 / spec.c
    if delta <= 0:
        raise ValueError("need delta > 0")
    roots = rs.roots if isinstance(rs, RootSet) else np.asarray(rs, dtype=complex)
    logN = math.log(N)
    pred_left = (spec.xi - spec.mu.real + 0.5) * logN / N
    pred_right = (spec.xi - spec.nu.real + 0.5) * logN / N
    records = []
    for z in roots:
        z = complex(z)
        dev = _deviation(spec, z)
        pred = pred_left if z.real < 0 else pred_right
        dist = distance_to_curve(z, curve)
        reason = ""
        if abs(z - 1.0 / spec.c) < delta or abs(z + 1.0 / spec.c) < delta:
            reason = "near_pm_1c"
        elif abs(z.real) < delta:
            reason = "near_axis"
        elif not in_region_V(z, spec.a, spec.b):
            reason = "outside_V"
        elif dist > 0.25:
            reason = "far_from_curve"
        if reason:
            side = "excluded"
        elif z.real == 0.0:
            side = "axis"
        else:
            side = "left" if z.real < 0 else "right"
        records.append(ZeroRecord(N, z, side, dev, pred, dist, reason))
    return records


def maxdist(points, curve: LimitCurve, exclude_center: complex = None,
            exclude_radius: float = 0.0) -> float:
    """sup over the set of the distance to the curve.

    points may be complex numbers, ZeroRecords, or a RootSet; an optional
    exclusion ball removes a neighborhood (e.g. around z = 1) first.
    """
    if isinstance(points, RootSet):
        points = points.roots
    vals = []
    for p in points:
        if isinstance(p, ZeroRecord):
            z, d = p.z, p.dist_to_curve
        else:
            z, d = complex(p), None
        if exclude_center is not None and abs(z - exclude_center) < exclude_radius:
            continue
        vals.append(d if d is not None else distance_to_curve(z, curve))
    if not vals:
        raise ValueError("maxdist of an empty set")
    return max(vals)


@dataclass(frozen=True)
class RateFit:
    slope: float
    intercept: float
    theoretical_slope: float
    residual_rms: float
    sample_count: int
    remainder_coeff: float = 0.0


def rate_fit(records, spec: IntegrandSpec, side: str) -> RateFit:
    """Least-squares fit of per-degree mean deviation against log N / N.

    Averaging per degree first suppresses the position-dependent scatter.
    The predicted error form carries an O(1/N) remainder whose coefficient
    is of order one; log N / N and 1/N are nearly collinear over accessible
    degrees, so leaving the remainder out of the regression biases the
    slope by roughly C/log N (measured: +1.0 at N <= 160).  The 1/N term
    therefore enters as a nuisance regressor, reported as remainder_coeff.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    by_n = {}
    for r in records:
        if r.side == side:
            by_n.setdefault(r.N, []).append(r.deviation)
    if len(by_n) < 4:
        raise InsufficientDataError(
            f"rate fit needs >= 4 distinct degrees with {side}-side zeros, "
            f"got {sorted(by_n)}")
    ns = sorted(by_n)
    x = np.array([math.log(n) / n for n in ns])
    invn = np.array([1.0 / n for n in ns])
    y = np.array([float(np.mean(by_n[n])) for n in ns])
    A = np.vstack([x, np.ones_like(x), invn]).T
    (slope, intercept, c1), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ np.array([slope, intercept, c1])
    theory = (spec.xi - spec.mu.real + 0.5) if side == "left" \
        else (spec.xi - spec.nu.real + 0.5)
    return RateFit(float(slope), float(intercept), float(theory),
                   float(np.sqrt(np.mean(resid ** 2))), len(ns), float(c1))


@dataclass(frozen=True)
class StrayCandidate:
    point: complex
    degrees: tuple
    in_E: bool


def stray_scan(roots_by_degree: dict, curve: LimitCurve, spec: IntegrandSpec,
               tol_curve: float = 0.1, tol_cluster: float = 0.05) -> list[StrayCandidate]:
    """Persistent off-curve zero clusters across increasing degrees.

    A candidate stray limit point must be represented, within tol_cluster,
    among the zeros lying further than tol_curve from the curve at every
    provided degree.  Candidates are checked for membership in E_{a,b}.
    """
    degrees = sorted(roots_by_degree)
    if len(degrees) < 3:
        raise InsufficientDataError("stray scan needs roots from >= 3 degrees")
    far = {}
    for n in degrees:
        pts = roots_by_degree[n]
        pts = pts.roots if isinstance(pts, RootSet) else np.asarray(pts, dtype=complex)
        far[n] = [complex(z) for z in pts
                  if distance_to_curve(z, curve) > tol_curve]
    chains = [[z] for z in far[degrees[0]]]
    for n in degrees[1:]:
        nxt = []
        for chain in chains:
            tail = chain[-1]
            for z in far[n]:
                if abs(z - tail) <= tol_cluster:
                    nxt.append(chain + [z])
        chains = nxt
        if not chains:
            break
    out = []
    seen = []
    for chain in chains:
        center = complex(np.mean(chain))
        if any(abs(center - s) <= tol_cluster for s in seen):
            continue
        seen.append(center)
        out.append(StrayCandidate(center, tuple(degrees),
                                  in_region_E(center, spec.a, spec.b, spec.c)))
    return out
