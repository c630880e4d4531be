"""Hot loops on gmpy2 numbers at mpmath's current binary precision.

Conversions are exact in both directions, so results match what the same
arithmetic in mpmath would produce up to rounding of the individual ops.
"""
from __future__ import annotations

import gmpy2
import mpmath
from mpmath.libmp import from_man_exp


def gmp_context():
    return gmpy2.context(precision=mpmath.mp.prec, real_prec=mpmath.mp.prec, imag_prec=mpmath.mp.prec)


def to_gmp(x):
    """mpf/mpc/int/float -> mpfr/mpc; call inside :func:`gmp_context`."""
    if isinstance(x, mpmath.mpc):
        return gmpy2.mpc(to_gmp(x.real), to_gmp(x.imag))
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)
    sign, man, exp, _ = x._mpf_
    if not man:
        return gmpy2.mpfr(0)
    v = gmpy2.mul_2exp(gmpy2.mpfr(man), exp)
    return -v if sign else v


def from_gmp(v):
    if isinstance(v, gmpy2.mpc):
        return mpmath.mpc(from_gmp(v.real), from_gmp(v.imag))
    if not v:
        return mpmath.mpf(0)
    man, exp = v.as_mantissa_exp()
    return mpmath.mpf(from_man_exp(man, int(exp), mpmath.mp.prec))


def horner(coeffs, z):
    acc = 0 * z
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def horner_with_derivative(coeffs, z):
    val = 0 * z
    der = 0 * z
    for c in reversed(coeffs):
        der = der * z + val
        val = val * z + c
    return val, der


def abs_horner(abs_coeffs, ax):
    acc = gmpy2.mpfr(0)
    for c in reversed(abs_coeffs):
        acc = acc * ax + c
    return acc
