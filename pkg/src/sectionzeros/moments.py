"""Moments of phi, the function F, and their asymptotic approximations.

Two independent numerical routes are kept strictly separate:

* a quadrature route (Gauss-Jacobi for real endpoint exponents, an
  oscillation-removing endpoint substitution for complex ones), and
* a closed-form route (binomial Beta expansion in adaptive multiprecision)
  that serves as the oracle.

The endpoint substitution x = x0 * exp(-r) turns the unimodular factor
(t+a)^(i Im mu) into exp(-i Im mu * r), which is entire in r; composite
Gauss-Legendre panels in r then converge geometrically.  Plain Gauss-Jacobi
with the unimodular factor folded into the integrand converges only like
O(m^-1) and cannot reach the accuracy contract.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp
import numpy as np

from .integrand import IntegrandSpec
from .specfun import NonConvergenceError, complex_gamma

_LN10 = math.log(10.0)


class SlitProximityError(ValueError):
    """Argument too close to the real slits where the tail kernel is singular."""


# ---------------------------------------------------------------------------
# Gauss-Jacobi rules
# ---------------------------------------------------------------------------

@lru_cache(maxsize=256)
def gauss_jacobi_rule(alpha: float, beta: float, m: int):
    """Nodes and weights for weight (1-x)^alpha (1+x)^beta on (-1, 1).

    Golub-Welsch construction: eigenvalues of the symmetric tridiagonal
    Jacobi matrix, weights from the first eigenvector components.  Exact
    for polynomials up to degree 2m - 1.
    """
    from scipy.linalg import eigh_tridiagonal  # deferred: scipy import is slow

    if alpha <= -1 or beta <= -1:
        raise ValueError(f"Jacobi exponents must exceed -1, got ({alpha}, {beta})")
    if m < 1:
        raise ValueError("need at least one node")
    mu0 = (2.0 ** (alpha + beta + 1) * math.gamma(alpha + 1) * math.gamma(beta + 1)
           / math.gamma(alpha + beta + 2))
    if m == 1:
        return (np.array([(beta - alpha) / (alpha + beta + 2.0)]),
                np.array([mu0]))
    ab = alpha + beta
    diag = np.empty(m)
    offdiag = np.empty(m - 1)
    diag[0] = (beta - alpha) / (ab + 2.0)
    # b_1 with the (1+alpha+beta) factor cancelled, valid for ab = -1 too
    offsq = np.empty(m - 1)
    offsq[0] = 4.0 * (alpha + 1) * (beta + 1) / ((ab + 2.0) ** 2 * (ab + 3.0))
    for k in range(1, m):
        den = 2.0 * k + ab
        diag[k] = (beta * beta - alpha * alpha) / (den * (den + 2.0))
        if k < m - 1:
            kk = k + 1
            d = 2.0 * kk + ab
            offsq[k] = (4.0 * kk * (kk + alpha) * (kk + beta) * (kk + ab)
                        / (d * d * (d + 1.0) * (d - 1.0)))
    offdiag = np.sqrt(offsq)
    nodes, vecs = eigh_tridiagonal(diag, offdiag)
    weights = mu0 * vecs[0, :] ** 2
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


# ---------------------------------------------------------------------------
# Core quadrature of int phi(t) t^k f(t) dt
# ---------------------------------------------------------------------------

def _t_power(t: np.ndarray, k: int) -> np.ndarray:
    """t^k for real t of either sign, stable for large k via complex log."""
    if k == 0:
        return np.ones(len(t), dtype=complex)
    out = np.exp(k * np.log(t.astype(complex)))
    return out


def _gj_route(spec: IntegrandSpec, k: int, f, m_start: int):
    """Gauss-Jacobi with doubling; valid when mu, nu are real."""
    a, b = spec.a, spec.b
    half = 0.5 * (a + b)
    shift = 0.5 * (b - a)
    pref = half ** (spec.mu.real + spec.nu.real + 1.0)
    prev = None
    m = m_start
    while True:
        nodes, weights = gauss_jacobi_rule(spec.nu.real, spec.mu.real, m)
        t = half * nodes + shift
        vals = spec.g_at(t) * _t_power(t, k)
        if f is not None:
            vals = vals * f(t)
        cur = pref * np.sum(weights * vals)
        if prev is not None:
            err = abs(cur - prev)
            if err <= 1e-12 * max(1.0, abs(cur)):
                return cur, err, True
        if m >= 4096:
            return cur, abs(cur - prev) if prev is not None else math.inf, False
        prev = cur
        m *= 2


def _panel_nodes(rmax: float, width: float, nodes_per_panel: int):
    base_x, base_w = np.polynomial.legendre.leggauss(nodes_per_panel)
    rs, ws = [], []
    r0 = 0.0
    while r0 < rmax:
        r1 = min(r0 + width, rmax)
        rs.append(0.5 * (r1 - r0) * base_x + 0.5 * (r1 + r0))
        ws.append(0.5 * (r1 - r0) * base_w)
        r0 = r1
    return np.concatenate(rs), np.concatenate(ws)


def _exp_decay_integral(s: complex, H, rmax: float, nodes_per_panel: int,
                        width: float = 2.0) -> complex:
    """int_0^rmax exp(-s r) H(exp(-r)) dr by composite Gauss-Legendre panels."""
    r, w = _panel_nodes(rmax, width, nodes_per_panel)
    x = np.exp(-r)
    return complex(np.sum(w * np.exp(-s * r) * H(x)))


def _split_route(spec: IntegrandSpec, k: int, f):
    """Endpoint log-substitution route; handles complex mu, nu."""
    a, b = spec.a, spec.b
    x0 = 0.5 * (a + b)
    sum_ab = a + b
    mu, nu = spec.mu, spec.nu

    def left_H(x):
        t = x - a
        vals = np.exp(nu * np.log(sum_ab - x)) * spec.g_at(t) * _t_power(t, k)
        if f is not None:
            vals = vals * f(t)
        return vals

    def right_H(y):
        t = b - y
        vals = np.exp(mu * np.log(sum_ab - y)) * spec.g_at(t) * _t_power(t, k)
        if f is not None:
            vals = vals * f(t)
        return vals

    res_l = max(mu.real + 1.0, 0.4)
    res_r = max(nu.real + 1.0, 0.4)
    rmax_l = math.log(k + 1.0) + 40.0 / res_l + 5.0
    rmax_r = math.log(k + 1.0) + 40.0 / res_r + 5.0
    pref_l = cmath.exp((mu + 1) * math.log(x0)) if x0 > 0 else 0.0
    pref_r = cmath.exp((nu + 1) * math.log(x0)) if x0 > 0 else 0.0

    prev = None
    npp = 32
    while True:
        # x0*exp(-r) must be scaled into left_H via x argument: H receives e^-r,
        # so fold x0 by substituting x -> x0 * x inside the callables.
        cur = (pref_l * _exp_decay_integral(mu + 1, lambda e: left_H(x0 * e), rmax_l, npp)
               + pref_r * _exp_decay_integral(nu + 1, lambda e: right_H(x0 * e), rmax_r, npp))
        if prev is not None:
            err = abs(cur - prev)
            if err <= 1e-12 * max(1.0, abs(cur)):
                return cur, err, True
        if npp >= 512:
            return cur, abs(cur - prev) if prev is not None else math.inf, False
        prev = cur
        npp = npp * 3 // 2


def _integrate_phi(spec: IntegrandSpec, k: int, f=None, m_start: int = 32):
    """int_{-a}^{b} phi(t) t^k f(t) dt with convergence estimate."""
    if spec.mu.imag == 0.0 and spec.nu.imag == 0.0:
        return _gj_route(spec, k, f, m_start)
    return _split_route(spec, k, f)


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MomentValue:
    k: int
    value: complex
    est_abs_error: float

    @property
    def converged(self) -> bool:
        return self.est_abs_error <= 1e-10 * max(1.0, abs(self.value))


def moment(spec: IntegrandSpec, k: int) -> MomentValue:
    """Quadrature value of m_k = int_{-a}^{b} phi(t) t^k dt."""
    if k < 0:
        raise ValueError("moment index must be nonnegative")
    val, err, _ = _integrate_phi(spec, k)
    return MomentValue(k, val, err)


def _closed_form_dps(spec: IntegrandSpec, k: int) -> int:
    """Working precision needed by the Beta expansion at index k.

    The alternating binomial sum cancels down from terms of size roughly
    C(k,j) a^(k-j) (a+b)^j to a result of size ~ c^k; the precision must
    absorb that ratio.
    """
    a, b = spec.a, spec.b
    ln_max = 0.0
    la = math.log(a) if a > 0 else None
    lab = math.log(a + b)
    for j in range(k + 1):
        if a == 0.0 and j < k:
            continue
        t = (math.lgamma(k + 1) - math.lgamma(j + 1) - math.lgamma(k - j + 1)
             + (k - j) * (la if la is not None else 0.0) + j * lab)
        ln_max = max(ln_max, t)
    ln_floor = k * math.log(max(spec.c, 1e-2)) - 3.0 * math.log(k + 2.0) - 40.0
    return 25 + max(0, int((ln_max - ln_floor) / _LN10) + 1)


def moment_closed_form_mp(spec: IntegrandSpec, k: int, extra_dps: int = 0):
    """Beta-expansion moment as an mpmath complex at adaptive precision.

    m_k = (a+b)^(mu+nu+1) sum_j C(k,j) (-a)^(k-j) (a+b)^j B(mu+j+1, nu+1),
    extended linearly over the monomials of g; exact up to gamma accuracy.
    extra_dps adds digits beyond the cancellation estimate, for callers that
    need the returned value itself at elevated accuracy.
    """
    if k < 0:
        raise ValueError("moment index must be nonnegative")
    kmax = k + len(spec.g) - 1
    dps = _closed_form_dps(spec, kmax) + max(0, int(extra_dps))
    with mp.workdps(dps):
        A = mp.mpf(spec.a)
        B = mp.mpf(spec.b)
        S = A + B
        MU = mp.mpc(spec.mu)
        NU = mp.mpc(spec.nu)
        # Beta(mu+j+1, nu+1) by upward recurrence in j
        gam_nu1 = mp.gamma(NU + 1)
        jtop = kmax
        betas = [mp.gamma(MU + 1) * gam_nu1 / mp.gamma(MU + NU + 2)]
        for j in range(jtop):
            betas.append(betas[-1] * (MU + j + 1) / (MU + NU + j + 2))
        total = mp.mpc(0)
        for q, gq in enumerate(spec.g):
            if gq == 0:
                continue
            kk = k + q
            # binomial and power recurrences over j = 0..kk
            if A == 0:
                term = S ** kk * betas[kk]
                acc = term
            else:
                binom = mp.mpf(1)
                powa = (-A) ** kk
                pows = mp.mpf(1)
                acc = binom * powa * pows * betas[0]
                for j in range(1, kk + 1):
                    binom = binom * (kk - j + 1) / j
                    powa /= (-A)
                    pows *= S
                    acc += binom * powa * pows * betas[j]
            total += mp.mpc(gq) * acc
        total *= S ** (MU + NU + 1)
        return +total


def moment_closed_form(spec: IntegrandSpec, k: int) -> complex:
    """Closed-form moment as a complex128 (the quadrature oracle)."""
    with mp.workdps(30):
        return complex(moment_closed_form_mp(spec, k))


def moment_asymptotic(spec: IntegrandSpec, n: int) -> complex:
    """Two-term endpoint approximation of m_n for large n.

    (-1)^n f1(0) Gamma(mu+1) n^(-mu-1) a^(n+mu+1)
        + f2(0) Gamma(nu+1) n^(-nu-1) b^(n+nu+1),
    with the a- (resp. b-) term dropped when that endpoint is 0.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    total = 0.0 + 0.0j
    nn = complex(n)
    if spec.a > 0:
        sgn = -1.0 if n % 2 else 1.0
        total += (sgn * spec.f1_at_0 * complex_gamma(spec.mu + 1)
                  * nn ** (-spec.mu - 1)
                  * cmath.exp((n + spec.mu + 1) * math.log(spec.a)))
    if spec.b > 0:
        total += (spec.f2_at_0 * complex_gamma(spec.nu + 1)
                  * nn ** (-spec.nu - 1)
                  * cmath.exp((n + spec.nu + 1) * math.log(spec.b)))
    return total


def evaluate_F(spec: IntegrandSpec, z: complex) -> complex:
    """F(z) = int_{-a}^{b} phi(t) e^{zt} dt by quadrature."""
    z = complex(z)
    scale = abs(z) * (spec.a + spec.b)
    m_start = 32
    while m_start < min(2048, scale):
        m_start *= 2
    val, err, ok = _integrate_phi(spec, 0, f=lambda t: np.exp(z * t),
                                  m_start=m_start)
    if not ok and err > 1e-8 * max(1.0, abs(val)):
        raise NonConvergenceError(f"F quadrature did not settle at z={z}")
    return val


def F_asymptotic(spec: IntegrandSpec, n: int, z: complex) -> complex:
    """Leading-order F(nz) away from the imaginary axis.

    f1(0) Gamma(mu+1) (-nz)^(-mu-1) e^(-anz) for Re z < 0 and
    f2(0) Gamma(nu+1) (nz)^(-nu-1) e^(bnz) for Re z > 0, principal branches.
    """
    z = complex(z)
    if z.real == 0.0:
        raise ValueError("leading-order form does not apply on the imaginary axis")
    if z.real < 0.0:
        return (spec.f1_at_0 * complex_gamma(spec.mu + 1)
                * (-n * z) ** (-spec.mu - 1) * cmath.exp(-spec.a * n * z))
    return (spec.f2_at_0 * complex_gamma(spec.nu + 1)
            * (n * z) ** (-spec.nu - 1) * cmath.exp(spec.b * n * z))


def _check_slit_margin(spec: IntegrandSpec, z: complex, delta: float):
    z = complex(z)
    for endpoint, side in ((spec.a, -1.0), (spec.b, 1.0)):
        if endpoint == 0:
            continue
        edge = side / endpoint  # slit runs from edge to side*inf on the real axis
        if side > 0:
            on_ray = z.real >= edge
        else:
            on_ray = z.real <= edge
        dist = abs(z.imag) if on_ray else abs(z - edge)
        if dist < delta:
            raise SlitProximityError(
                f"z={z} is within {delta} of the real slit starting at {edge}")


def tail_integral(spec: IntegrandSpec, z: complex, n: int,
                  delta: float = 1e-6) -> complex:
    """int_{-a}^{b} phi(t)/(1 - z t) t^(n+1) dt."""
    _check_slit_margin(spec, z, delta)
    val, err, ok = _integrate_phi(spec, n + 1, f=lambda t: 1.0 / (1.0 - z * t))
    if not ok and err > 1e-8 * max(1.0, abs(val)):
        raise NonConvergenceError(f"tail quadrature did not settle at z={z}")
    return val


def tail_asymptotic(spec: IntegrandSpec, z: complex, n: int,
                    delta: float = 1e-6) -> complex:
    """Two-term endpoint approximation of the tail integral."""
    _check_slit_margin(spec, z, delta)
    total = 0.0 + 0.0j
    nn = complex(n)
    if spec.a > 0:
        sgn = -1.0 if (n + 1) % 2 else 1.0
        total += (sgn * spec.f1_at_0 * complex_gamma(spec.mu + 1)
                  / (1.0 + spec.a * z) * nn ** (-spec.mu - 1)
                  * cmath.exp((n + spec.mu + 2) * math.log(spec.a)))
    if spec.b > 0:
        total += (spec.f2_at_0 * complex_gamma(spec.nu + 1)
                  / (1.0 - spec.b * z) * nn ** (-spec.nu - 1)
                  * cmath.exp((n + spec.nu + 2) * math.log(spec.b)))
    return total


# ---------------------------------------------------------------------------
# Watson-type endpoint asymptotics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WatsonProblem:
    """Laplace-type integral with endpoint factor t^sigma on [0, T].

    side = "left" checks Phi(lam) = int_0^T t^sigma h(t) e^(-lam t) dt against
    h(0) Gamma(sigma+1) / lam^(sigma+1).  side = "right" checks the mirrored
    integral int_0^T (T-t)^sigma h(T-t) e^(lam t) dt, whose values carry a
    factor e^(T lam); to keep them representable for lam up to ~1000 the row
    stores Phi(lam) e^(-T lam) and the matching leading term.
    """

    sigma: complex
    T: float
    h: tuple = (1.0 + 0.0j,)
    side: str = "left"

    def __post_init__(self):
        if complex(self.sigma).real <= -1:
            raise ValueError("need Re(sigma) > -1")
        if not self.T > 0:
            raise ValueError("need T > 0")
        h = tuple(complex(c) for c in self.h)
        if not h or h[0] == 0:
            raise ValueError("need h(0) != 0")
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        object.__setattr__(self, "sigma", complex(self.sigma))
        object.__setattr__(self, "h", h)


@dataclass(frozen=True)
class WatsonCheckRow:
    lam: float
    numeric: complex
    leading: complex
    scaled_error: float


def _watson_numeric(problem: WatsonProblem, lam: float) -> complex:
    # both sides reduce to int_0^T u^sigma h(u) e^(-lam u) du
    sig = problem.sigma
    T = problem.T

    def H(x):
        u = T * x
        acc = np.zeros(len(u), dtype=complex)
        for c in reversed(problem.h):
            acc = acc * u + c
        return acc * np.exp(-lam * u)

    rmax = math.log1p(lam * T) + 40.0 / max(sig.real + 1.0, 0.4) + 5.0
    pref = cmath.exp((sig + 1) * math.log(T))
    v1 = pref * _exp_decay_integral(sig + 1, H, rmax, 48)
    v2 = pref * _exp_decay_integral(sig + 1, H, rmax, 64)
    if abs(v2 - v1) > 1e-10 * max(1.0, abs(v2)):
        raise NonConvergenceError(f"Watson quadrature did not settle at lam={lam}")
    return v2


def watson_check(problem: WatsonProblem, lambdas) -> list[WatsonCheckRow]:
    """Compare the numeric integral with its leading term at each lambda.

    scaled_error = |numeric - leading| * lam^(Re sigma + 2), which the
    endpoint expansion bounds uniformly in lambda.
    """
    rows = []
    h0 = problem.h[0]
    gam = complex_gamma(problem.sigma + 1)
    for lam in lambdas:
        lam = float(lam)
        if lam <= 0:
            raise ValueError("lambda must be positive")
        numeric = _watson_numeric(problem, lam)
        leading = h0 * gam * cmath.exp(-(problem.sigma + 1) * math.log(lam))
        scaled = abs(numeric - leading) * lam ** (problem.sigma.real + 2.0)
        rows.append(WatsonCheckRow(lam, numeric, leading, scaled))
    return rows
