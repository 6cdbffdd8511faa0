"""Vectorized double-double ("dd") arithmetic for complex polynomial evaluation.

A dd number is an unevaluated sum hi + lo of two float64 values with
|lo| <= ulp(hi)/2, giving roughly 31 significant decimal digits.  Complex dd
values are 4-tuples of float64 arrays (re_hi, re_lo, im_hi, im_lo).

Only the operations needed by the root finder and section evaluator are
implemented: add, mul, div, and a fused Horner evaluation of a polynomial
and its derivative.  The error-free transformations are the classical
Knuth two-sum and Dekker split/two-product, which do not require an FMA.
"""

from __future__ import annotations

import numpy as np

# Unit roundoff of a dd value (2^-104 ~ 4.93e-32).
DD_EPS = 4.93e-32

_SPLITTER = 134217729.0  # 2^27 + 1, Dekker splitting constant


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a, b):
    # requires |a| >= |b|; callers guarantee this via _two_sum ordering
    s = a + b
    return s, b - (s - a)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def dd_add(xh, xl, yh, yl):
    s, e = _two_sum(xh, yh)
    return _quick_two_sum(s, e + xl + yl)


def dd_mul(xh, xl, yh, yl):
    p, e = _two_prod(xh, yh)
    return _quick_two_sum(p, e + xh * yl + xl * yh)


def dd_div(xh, xl, yh, yl):
    q1 = xh / yh
    ph, pl = dd_mul(q1, np.zeros_like(q1), yh, yl)
    rh, rl = dd_add(xh, xl, -ph, -pl)
    q2 = rh / yh
    ph, pl = dd_mul(q2, np.zeros_like(q2), yh, yl)
    rh, rl = dd_add(rh, rl, -ph, -pl)
    q3 = rh / yh
    qh, ql = _quick_two_sum(q1, q2)
    return dd_add(qh, ql, q3, np.zeros_like(q3))


def cdd_add(a, b):
    rh, rl = dd_add(a[0], a[1], b[0], b[1])
    ih, il = dd_add(a[2], a[3], b[2], b[3])
    return rh, rl, ih, il


def cdd_neg(a):
    return -a[0], -a[1], -a[2], -a[3]


def cdd_mul(a, b):
    t1 = dd_mul(a[0], a[1], b[0], b[1])
    t2 = dd_mul(a[2], a[3], b[2], b[3])
    re = dd_add(t1[0], t1[1], -t2[0], -t2[1])
    t3 = dd_mul(a[0], a[1], b[2], b[3])
    t4 = dd_mul(a[2], a[3], b[0], b[1])
    im = dd_add(t3[0], t3[1], t4[0], t4[1])
    return re[0], re[1], im[0], im[1]


def cdd_div(a, b):
    d1 = dd_mul(b[0], b[1], b[0], b[1])
    d2 = dd_mul(b[2], b[3], b[2], b[3])
    den = dd_add(d1[0], d1[1], d2[0], d2[1])
    num = cdd_mul(a, (b[0], b[1], -b[2], -b[3]))
    rh, rl = dd_div(num[0], num[1], den[0], den[1])
    ih, il = dd_div(num[2], num[3], den[0], den[1])
    return rh, rl, ih, il


def cdd_from_complex(z, zlo=None):
    """Promote a complex128 array (optionally with a low-order part) to cdd."""
    z = np.asarray(z, dtype=complex)
    zr = np.ascontiguousarray(z.real, dtype=float)
    zi = np.ascontiguousarray(z.imag, dtype=float)
    if zlo is None:
        return zr, np.zeros_like(zr), zi, np.zeros_like(zi)
    zlo = np.asarray(zlo, dtype=complex)
    return zr, np.ascontiguousarray(zlo.real, dtype=float), zi, np.ascontiguousarray(zlo.imag, dtype=float)


def cdd_to_complex(a):
    return (a[0] + a[1]) + 1j * (a[2] + a[3])


def horner_dd(coeff_hi, coeff_lo, z_cdd, derivative=True):
    """Evaluate p and optionally p' at cdd points; coefficients high -> low.

    coeff_hi/coeff_lo are 1-d complex128 arrays (the dd split of each
    coefficient), ordered from the leading coefficient down to the constant.
    """
    shape = np.shape(z_cdd[0])
    zero = np.zeros(shape)
    p = (zero.copy(), zero.copy(), zero.copy(), zero.copy())
    dp = (zero.copy(), zero.copy(), zero.copy(), zero.copy()) if derivative else None
    for ch, cl in zip(coeff_hi, coeff_lo):
        if derivative:
            dp = cdd_add(cdd_mul(dp, z_cdd), p)
        c = (np.full(shape, ch.real), np.full(shape, cl.real),
             np.full(shape, ch.imag), np.full(shape, cl.imag))
        p = cdd_add(cdd_mul(p, z_cdd), c)
    return p, dp
