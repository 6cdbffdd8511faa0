"""Normalized section polynomials s_n[F](nz) and their comparison quantities.

A section is stored with power-of-two normalized complex128 coefficients
plus a double-double low part and, when built through the closed-form
moment route, the exact multiprecision coefficient list.  The extra
precision is not a luxury: the roots of these polynomials have condition
numbers growing like exp(0.56 n), so coefficient accuracy directly limits
how well any solver can pin the zeros.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import mpmath as mp
import numpy as np

from . import _dd
from .integrand import IntegrandSpec
from .moments import moment_closed_form_mp
from .specfun import complex_gamma


def _build_dps(n: int) -> int:
    # root condition can reach ~exp(0.56 n); 0.25 n decimal digits plus
    # margin keeps coefficient rounding below anything the root finder needs
    return 40 + int(0.25 * n) + 1


@dataclass(frozen=True)
class SectionPolynomial:
    """Coefficients of a normalized degree-n section, low order first."""

    n: int
    coeffs: np.ndarray
    coeffs_lo: np.ndarray
    scale_exponent: int
    family_tag: str = "generic"
    mp_coeffs: tuple = field(default=None, repr=False, compare=False)
    mp_dps: int = field(default=0, repr=False, compare=False)

    def __post_init__(self):
        if len(self.coeffs) != self.n + 1:
            raise ValueError("coefficient count must be n + 1")
        if not np.any(self.coeffs != 0):
            raise ValueError("section has no nonzero coefficient")

    @classmethod
    def from_coefficients(cls, coeffs, family_tag: str = "generic"):
        """Wrap plain complex coefficients (low order first), renormalized.

        The power-of-two rescaling is exact, so the input coefficients are
        preserved bit for bit up to the recorded scale_exponent.
        """
        c = np.asarray(list(coeffs), dtype=complex)
        if len(c) == 0 or not np.any(c != 0):
            raise ValueError("empty or identically zero coefficient list")
        mx = np.max(np.abs(c))
        se = int(math.floor(math.log2(mx)))
        scaled = c * 2.0 ** (-se)
        return cls(len(c) - 1, scaled, np.zeros_like(scaled), se, family_tag)

    @classmethod
    def _from_mp(cls, cs, family_tag: str, dps: int):
        """Normalize an mpmath coefficient list and split into hi/lo parts."""
        with mp.workdps(dps):
            mags = [abs(c) for c in cs]
            mx = max(mags)
            if mx == 0:
                raise ValueError("section has no nonzero coefficient")
            se = int(mp.floor(mp.log(mx, 2)))
            scale = mp.power(2, -se)
            scaled = [c * scale for c in cs]
            hi = np.empty(len(cs), dtype=complex)
            lo = np.empty(len(cs), dtype=complex)
            for i, c in enumerate(scaled):
                ch = complex(c)
                hi[i] = ch
                lo[i] = complex(c - mp.mpc(ch))
            return cls(len(cs) - 1, hi, lo, se, family_tag,
                       mp_coeffs=tuple(scaled), mp_dps=dps)

    @property
    def degree(self) -> int:
        return self.n

    def mp_coefficients(self, dps: int):
        """Coefficient list as mpmath numbers at (at least) the stored accuracy."""
        if self.mp_coeffs is not None:
            return list(self.mp_coeffs)
        return [mp.mpc(h) + mp.mpc(l) for h, l in zip(self.coeffs, self.coeffs_lo)]


def build_section(spec: IntegrandSpec, n: int) -> SectionPolynomial:
    """Section s_n[F](nz): coefficient of z^k is n^k m_k / k!.

    Moments come from the closed-form route; assembly happens in
    multiprecision and is rescaled by a power of two afterwards.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    dps = _build_dps(n)
    with mp.workdps(dps):
        logn = mp.log(n)
        cs = []
        for k in range(n + 1):
            mk = moment_closed_form_mp(spec, k, extra_dps=dps)
            cs.append(mk * mp.exp(k * logn - mp.loggamma(k + 1)))
    tag = spec.name or f"spec(a={spec.a:g},b={spec.b:g})"
    return SectionPolynomial._from_mp(cs, f"section[{tag}]", dps)


def exp_section(n: int) -> SectionPolynomial:
    """Section of the exponential at argument nz: coefficients n^k / k!."""
    if n < 1:
        raise ValueError("need n >= 1")
    dps = _build_dps(n)
    with mp.workdps(dps):
        logn = mp.log(n)
        cs = [mp.exp(k * logn - mp.loggamma(k + 1)) for k in range(n + 1)]
    return SectionPolynomial._from_mp(cs, "exp", dps)


def hyp1f1_section(bparam: complex, n: int) -> SectionPolynomial:
    """Section of Gamma(b) sum z^k / Gamma(k+b) at argument nz, Re b > 1."""
    bparam = complex(bparam)
    if bparam.real <= 1.0:
        raise ValueError(f"need Re(b) > 1, got {bparam}")
    if n < 1:
        raise ValueError("need n >= 1")
    dps = _build_dps(n)
    with mp.workdps(dps):
        bb = mp.mpc(bparam)
        logn = mp.log(n)
        lgb = mp.loggamma(bb)
        cs = [mp.exp(k * logn + lgb - mp.loggamma(k + bb)) for k in range(n + 1)]
    return SectionPolynomial._from_mp(cs, f"hyp1f1({bparam:g})", dps)


@dataclass(frozen=True)
class BesselSectionPair:
    """Even-degree Bessel section plus its auxiliary polynomial in z^2.

    section: s_n[J_alpha](nz) without the z^alpha prefactor (degree n, even
    powers only).  pn: P_n with coefficient n^(2k) / (4^k Gamma(k+1)
    Gamma(k+alpha+1)) of z^k, so s_n[J_alpha](-inz) = 2^(-alpha) P_n(z^2).
    """

    alpha: complex
    section: SectionPolynomial
    pn: SectionPolynomial


def bessel_section(alpha: complex, n: int) -> BesselSectionPair:
    """Degree-n Bessel section for even n and Re(alpha) > -1/2."""
    alpha = complex(alpha)
    if alpha.real <= -0.5:
        raise ValueError(f"need Re(alpha) > -1/2, got {alpha}")
    if n < 2 or n % 2:
        raise ValueError(f"Bessel sections are defined for even n >= 2, got {n}")
    dps = _build_dps(n)
    half = n // 2
    with mp.workdps(dps):
        aa = mp.mpc(alpha)
        logn = mp.log(n)
        log4 = mp.log(4)
        pn_cs = [mp.exp(2 * k * logn - k * log4 - mp.loggamma(k + 1)
                        - mp.loggamma(k + aa + 1)) for k in range(half + 1)]
        two_alpha = mp.power(2, -aa)
        sec_cs = []
        for k in range(half + 1):
            sec_cs.append(two_alpha * (-1) ** k * pn_cs[k])
            if k < half:
                sec_cs.append(mp.mpc(0))
    sec = SectionPolynomial._from_mp(sec_cs, f"bessel({alpha:g})", dps)
    pn = SectionPolynomial._from_mp(pn_cs, f"bessel_pn({alpha:g})", dps)
    return BesselSectionPair(alpha, sec, pn)


def eval_section(p: SectionPolynomial, z) -> complex:
    """Evaluate a section by compensated (double-double) Horner."""
    scalar = np.isscalar(z) or isinstance(z, complex)
    zs = np.atleast_1d(np.asarray(z, dtype=complex))
    zdd = _dd.cdd_from_complex(zs)
    pv, _ = _dd.horner_dd(p.coeffs[::-1], p.coeffs_lo[::-1], zdd, derivative=False)
    out = _dd.cdd_to_complex(pv)
    return complex(out[0]) if scalar else out


def _gn_dps(n: int, z: complex) -> int:
    z = complex(z)
    az = abs(z)
    cancel = n * max(0.0, az - z.real)
    logm = (math.log(az) if az > 0 else -1e9) + 1.0 - z.real
    cancel += n * max(0.0, -logm)
    return 40 + int(cancel / math.log(10)) + 1


def gn_exact(n: int, z: complex) -> complex:
    """g_n(z) = 1 - e^{-nz} s_n[exp](nz), evaluated at adaptive precision.

    The series for s_n[exp](nz) cancels by a factor up to e^{n(|z| - Re z)},
    so fixed precision cannot produce relative accuracy; the working
    precision grows with n and z instead.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    z = complex(z)
    if z == 0:
        return 0.0 + 0.0j
    with mp.workdps(_gn_dps(n, z)):
        nz = mp.mpc(z) * n
        term = mp.mpc(1)
        s = mp.mpc(1)
        for k in range(1, n + 1):
            term *= nz / k
            s += term
        g = 1 - mp.exp(-nz) * s
        return complex(g)


def gn_szego(n: int, z: complex) -> complex:
    """Closed-form comparison: (z e^{1-z})^n / sqrt(2 pi n) * z/(1-z)."""
    if n < 1:
        raise ValueError("need n >= 1")
    z = complex(z)
    if z == 1.0:
        raise ZeroDivisionError("the comparison quantity is singular at z = 1")
    if z == 0:
        return 0.0 + 0.0j
    w = n * (cmath.log(z) + 1.0 - z)
    return cmath.exp(w) / math.sqrt(2.0 * math.pi * n) * z / (1.0 - z)


def szego_epsilon(n: int, z: complex) -> complex:
    """eps_n(z) = 1 - gn_exact/gn_szego, fully in multiprecision."""
    if n < 1:
        raise ValueError("need n >= 1")
    z = complex(z)
    if z == 1.0:
        raise ZeroDivisionError("singular at z = 1")
    if z == 0:
        raise ZeroDivisionError("ratio undefined at z = 0")
    with mp.workdps(_gn_dps(n, z) + 20):
        zz = mp.mpc(z)
        nz = zz * n
        term = mp.mpc(1)
        s = mp.mpc(1)
        for k in range(1, n + 1):
            term *= nz / k
            s += term
        g = 1 - mp.exp(-nz) * s
        ref = (mp.exp(n * (mp.log(zz) + 1 - zz)) / mp.sqrt(2 * mp.pi * n)
               * zz / (1 - zz))
        return complex(1 - g / ref)


def rho_n(spec: IntegrandSpec, n: int) -> float:
    """Coefficient-based zero scale rho_n = |m_n / n!|^(-1/n)."""
    if n < 1:
        raise ValueError("need n >= 1")
    mk = moment_closed_form_mp(spec, n, extra_dps=15)
    with mp.workdps(30):
        floor = mp.mpf(10) ** (-10)  # values this small mean a structural zero
        if abs(mk) < floor * _closed_form_scale(spec, n):
            raise ValueError(f"coefficient a_{n} vanishes for this integrand")
        val = -(mp.log(abs(mk)) - mp.loggamma(n + 1)) / n
        return float(mp.exp(val))


def _closed_form_scale(spec: IntegrandSpec, k: int):
    """Rough magnitude of the largest Beta-expansion term (for zero tests)."""
    a, b = spec.a, spec.b
    if a == 0:
        return mp.mpf(b) ** k
    ln_max = 0.0
    la, lab = math.log(a), math.log(a + b)
    for j in range(0, k + 1, max(1, k // 64)):
        t = (math.lgamma(k + 1) - math.lgamma(j + 1) - math.lgamma(k - j + 1)
             + (k - j) * la + j * lab)
        ln_max = max(ln_max, t)
    return mp.exp(ln_max)
