"""Complex special functions: gamma, log-gamma, erfc, and real-base powers.

Everything here is scalar, pure, and stateless.  Accuracy targets: gamma to
better than 1e-12 relative on |z| <= 50, erfc to better than 1e-10 relative
on |z| <= 10.
"""

from __future__ import annotations

import cmath
import math


class PoleError(ValueError):
    """Gamma evaluated at a nonpositive integer."""


class NonConvergenceError(RuntimeError):
    """An iterative scheme failed to converge within its budget."""


# Lanczos approximation, g = 607/128 with 15 coefficients (Godfrey's set).
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517, -59.597960355475491248, 14.136097974741747174,
    -0.49191381609762019978, 0.33994649984811888699e-4,
    0.46523628927048575665e-4, -0.98374475304879564677e-4,
    0.15808870322491248884e-3, -0.21026444172410488319e-3,
    0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4, -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)

_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)
_LOG_SQRT_TWO_PI = 0.5 * math.log(2.0 * math.pi)


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == int(z.real)


def _lanczos_series(zz: complex) -> complex:
    acc = _LANCZOS_C[0]
    for i in range(1, 15):
        acc += _LANCZOS_C[i] / (zz + i)
    return acc


def complex_gamma(z: complex) -> complex:
    """Gamma function for complex argument.

    Lanczos approximation on Re z >= 0.5, reflection formula otherwise.
    Raises PoleError at the poles 0, -1, -2, ...
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"gamma pole at z={z}")
    if z.real < 0.5:
        # Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return math.pi / (cmath.sin(math.pi * z) * complex_gamma(1.0 - z))
    zz = z - 1.0
    t = zz + _LANCZOS_G + 0.5
    return _SQRT_TWO_PI * t ** (zz + 0.5) * cmath.exp(-t) * _lanczos_series(zz)


def complex_log_gamma(z: complex) -> complex:
    """A logarithm of Gamma(z): exp(complex_log_gamma(z)) == Gamma(z).

    The imaginary part is not the analytically continued branch; it is only
    consistent modulo 2*pi, which is all the coefficient assembly in
    log-magnitude/phase form requires.
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"log-gamma pole at z={z}")
    if z.real < 0.5:
        return (math.log(math.pi) - cmath.log(cmath.sin(math.pi * z))
                - complex_log_gamma(1.0 - z))
    zz = z - 1.0
    t = zz + _LANCZOS_G + 0.5
    return (_LOG_SQRT_TWO_PI + (zz + 0.5) * cmath.log(t) - t
            + cmath.log(_lanczos_series(zz)))


# erfc: Maclaurin series of erf for Re z <= 2.5, Laplace continued fraction
# beyond.  The series loses ~e^{2 (Re z)^2} eps in relative terms, so the
# crossover must be on Re z, not |z|; 2.5 keeps the loss below ~1e-10 while
# the continued fraction converges in < 100 terms for Re z > 2.5.
_ERFC_CROSSOVER_RE = 2.5
_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)


def _erfc_series(z: complex) -> complex:
    zz = z * z
    term = z
    s = z
    for k in range(1, 400):
        term *= -zz / k
        add = term / (2 * k + 1)
        s += add
        if abs(add) <= 1e-18 * abs(s):
            break
    return 1.0 - _TWO_OVER_SQRT_PI * s


def _erfc_cf(z: complex, maxiter: int = 300) -> complex:
    # sqrt(pi) exp(z^2) erfc(z) = 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
    # evaluated by the modified Lentz algorithm; valid for Re z > 0.
    tiny = 1e-300
    b = z
    c = 1e300
    d = 1.0 / b
    h = d
    for k in range(1, maxiter + 1):
        a = k / 2.0
        den = b + a * d
        d = 1.0 / den if den != 0 else 1e300
        c = b + a / c if c != 0 else tiny
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-17:
            return cmath.exp(-z * z) / math.sqrt(math.pi) * h
    raise NonConvergenceError(f"erfc continued fraction stalled at z={z}")


def complex_erfc(z: complex) -> complex:
    """Complementary error function erfc(z) = (2/sqrt(pi)) int_z^inf e^{-t^2} dt."""
    z = complex(z)
    if z.real < 0.0:
        return 2.0 - complex_erfc(-z)
    if z.real <= _ERFC_CROSSOVER_RE:
        return _erfc_series(z)
    return _erfc_cf(z)


def _erfc_derivative(z: complex) -> complex:
    return -_TWO_OVER_SQRT_PI * cmath.exp(-z * z)


class ErfcZeroResult:
    """First zero of erfc in the upper half-plane and the derived constant."""

    __slots__ = ("t1", "cvw_constant", "residual")

    def __init__(self, t1: complex, residual: float):
        self.t1 = t1
        self.cvw_constant = t1.real + t1.imag
        self.residual = residual

    def __repr__(self):
        return (f"ErfcZeroResult(t1={self.t1!r}, "
                f"cvw_constant={self.cvw_constant!r}, residual={self.residual!r})")


def first_erfc_zero_upper() -> ErfcZeroResult:
    """Locate the erfc zero closest to the origin with Im > 0.

    Coarse scan of the second quadrant (Re in [-4, 0], Im in [0, 4], step
    0.25) followed by Newton iteration from the most promising seeds,
    keeping the converged zero of smallest modulus.
    """
    seeds = []
    for i in range(17):
        for j in range(17):
            s = complex(-4.0 + 0.25 * i, 0.25 * j)
            seeds.append((abs(complex_erfc(s)), s))
    seeds.sort(key=lambda t: t[0])

    best = None
    for _, seed in seeds[:12]:
        z = seed
        ok = False
        for _ in range(60):
            f = complex_erfc(z)
            step = f / _erfc_derivative(z)
            z = z - step
            if abs(step) < 1e-14 * (1.0 + abs(z)):
                ok = True
                break
        if not ok:
            continue
        res = abs(complex_erfc(z))
        if z.imag > 0.0 and res < 1e-10:
            if best is None or abs(z) < abs(best.t1) - 1e-12:
                best = ErfcZeroResult(z, res)
    if best is None:
        raise NonConvergenceError("Newton failed from every grid seed")
    return best


def real_power(x: float, w: complex) -> complex:
    """x**w for real x > 0 and complex w, using the real logarithm of x."""
    if not x > 0.0:
        raise ValueError(f"real_power requires a positive base, got {x}")
    return cmath.exp(complex(w) * math.log(x))
