"""The limit curves and validity regions for zeros of normalized sections.

D_{a,b} is the union of the two arcs |c z e^{1+az}| = 1 (Re z <= 0) and
|c z e^{1-bz}| = 1 (Re z >= 0) inside |z| <= 1/c, closed off on the
imaginary axis by the segment |z| <= 1/(ec).  The Bessel curve D(J) is the
rotation of D_{1,1} by -i, which lands the segment on the real axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .integrand import IntegrandSpec


def in_region_U(z: complex) -> bool:
    """Validity region of the section comparison: |z e^{1-z}| > 1, or
    |z e^{1-z}| <= 1 together with Re z < 1."""
    z = complex(z)
    if z == 0:
        return True
    logm = math.log(abs(z)) + 1.0 - z.real
    return logm > 0.0 or z.real < 1.0


def in_region_V(z: complex, a: float, b: float) -> bool:
    """Two-sided pullback: -az and bz both in U."""
    z = complex(z)
    return in_region_U(-a * z) and in_region_U(b * z)


def in_region_E(z: complex, a: float, b: float, c: float) -> bool:
    """Residual region |z| <= 2/c minus V_{a,b}, where stray limit points may sit."""
    z = complex(z)
    return abs(z) <= 2.0 / c and not in_region_V(z, a, b)


def curve_radius(theta: float, spec: IntegrandSpec, tol: float = 1e-12) -> float:
    """The unique r > 0 with r e^{i theta} on D_{a,b}, solved by bisection.

    The side is chosen by the sign of cos(theta); on (0, 1/c] the log form
    of the defining equation is strictly increasing, so the bracket has
    exactly one sign change.
    """
    ct = math.cos(theta)
    if ct == 0.0:
        raise ValueError("axis direction: the segment endpoint is 1/(e c), not a curve point")
    a, b, c = spec.a, spec.b, spec.c

    if ct < 0.0:
        def f(r):
            return math.log(c * r) + 1.0 + a * r * ct
    else:
        def f(r):
            return math.log(c * r) + 1.0 - b * r * ct

    hi = 1.0 / c
    fhi = f(hi)
    if fhi <= 0.0:
        # the arc meets |z| = 1/c exactly when the dominant endpoint is on
        # this side; fhi < 0 would contradict monotonicity + continuity
        if fhi < -1e-9:
            raise RuntimeError(f"bracket failure at theta={theta}")
        return hi
    lo = 1e-12
    while f(lo) > 0.0:
        lo *= 0.5
        if lo < 1e-300:
            raise RuntimeError(f"bracket failure at theta={theta}")
    while hi - lo > tol * hi:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class LimitCurve:
    """Sampled limit curve: a closed loop plus an optional straight segment.

    samples trace the loop at angles 2 pi i / M (before any rotation);
    rotation multiplies every sample and the segment endpoints, so D(J)
    reuses the machinery of D_{1,1}.
    """

    label: str
    a: float
    b: float
    c: float
    samples: np.ndarray
    seg_start: complex
    seg_end: complex
    rotation: complex = 1.0 + 0.0j

    @property
    def has_segment(self) -> bool:
        return self.seg_start is not None

    @property
    def max_spacing(self) -> float:
        d = np.abs(np.diff(np.r_[self.samples, self.samples[:1]]))
        return float(np.max(d))

    def left_modulus(self, z: complex) -> float:
        """|c z e^{1+a z}| in the frame of the un-rotated curve."""
        z = complex(z) / self.rotation
        if z == 0:
            return 0.0
        return math.exp(math.log(self.c * abs(z)) + 1.0 + self.a * z.real)

    def right_modulus(self, z: complex) -> float:
        """|c z e^{1-b z}| in the frame of the un-rotated curve."""
        z = complex(z) / self.rotation
        if z == 0:
            return 0.0
        return math.exp(math.log(self.c * abs(z)) + 1.0 - self.b * z.real)

    def implicit_modulus(self, z: complex) -> float:
        """The side-appropriate defining modulus at z (1.0 on the curve)."""
        w = complex(z) / self.rotation
        return self.left_modulus(z) if w.real < 0 else self.right_modulus(z)


def sample_limit_curve(spec: IntegrandSpec, M: int = 2048) -> LimitCurve:
    """D_{a,b} with the imaginary closing segment, sampled at M angles.

    M is rounded up to a multiple of 4 so the samples at +-pi/2 land
    exactly on the segment endpoints +-i/(ec).
    """
    if M < 16:
        raise ValueError("need M >= 16")
    M += (-M) % 4
    c = spec.c
    r_axis = 1.0 / (math.e * c)
    pts = np.empty(M, dtype=complex)
    for i in range(M):
        th = 2.0 * math.pi * i / M
        if abs(math.cos(th)) < 1e-15:
            r = r_axis
        else:
            r = curve_radius(th, spec)
        pts[i] = r * complex(math.cos(th), math.sin(th))
    return LimitCurve(f"D[a={spec.a:g},b={spec.b:g}]", spec.a, spec.b, c,
                      pts, complex(0.0, r_axis), complex(0.0, -r_axis))


def bessel_limit_curve(M: int = 2048) -> LimitCurve:
    """D(J): the a = b = 1 curve rotated by -i; the segment becomes
    [-1/e, 1/e] on the real axis."""
    base = sample_limit_curve(IntegrandSpec(1.0, 1.0, -0.5, -0.5, name="bessel"), M)
    rot = -1.0j
    return LimitCurve("D(J)", 1.0, 1.0, 1.0, base.samples * rot,
                      base.seg_start * rot, base.seg_end * rot, rotation=rot)


def szego_curve(M: int = 2048) -> LimitCurve:
    """The classical curve |z e^{1-z}| = 1, |z| <= 1 (no segment)."""
    if M < 16:
        raise ValueError("need M >= 16")
    M += (-M) % 4
    pts = np.empty(M, dtype=complex)
    for i in range(M):
        th = 2.0 * math.pi * i / M
        ct = math.cos(th)

        def f(r):
            return math.log(r) + 1.0 - r * ct

        hi = 1.0
        if f(hi) <= 0.0:
            r = hi
        else:
            lo = 1e-12
            while f(lo) > 0:
                lo *= 0.5
            for _ in range(100):
                mid = 0.5 * (lo + hi)
                if f(mid) < 0.0:
                    lo = mid
                else:
                    hi = mid
            r = 0.5 * (lo + hi)
        pts[i] = r * complex(ct, math.sin(th))
    return LimitCurve("szego", 0.0, 1.0, 1.0, pts, None, None)


def _segment_distance(z: complex, p: complex, q: complex) -> float:
    d = q - p
    L2 = abs(d) ** 2
    if L2 == 0:
        return abs(z - p)
    t = ((z - p) * d.conjugate()).real / L2
    t = min(1.0, max(0.0, t))
    return abs(z - (p + t * d))


def distance_to_curve(z: complex, curve: LimitCurve) -> float:
    """Distance from z to the sampled loop (as a polyline) and the segment."""
    z = complex(z)
    pts = curve.samples
    nxt = np.r_[pts[1:], pts[:1]]
    d = nxt - pts
    L2 = np.abs(d) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(L2 > 0, ((z - pts) * d.conjugate()).real / L2, 0.0)
    t = np.clip(t, 0.0, 1.0)
    proj = pts + t * d
    best = float(np.min(np.abs(z - proj)))
    if curve.has_segment:
        best = min(best, _segment_distance(z, curve.seg_start, curve.seg_end))
    return best
