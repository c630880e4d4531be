"""Real zeros of family polynomials.

Seeds come from double-precision companion-matrix eigenvalues and are then
polished by Newton's method in working precision. Zeros whose polished
imaginary part exceeds the separation threshold are counted as complex
leakage instead of being reported.
"""
from __future__ import annotations

from dataclasses import dataclass

import gmpy2
import mpmath
import numpy as np
from numpy.polynomial import polynomial as npoly

from .config import ConvergenceFailure, DEFAULT_CONFIG, InvalidParams, PrecisionConfig
from .fastmath import from_gmp, gmp_context, horner_with_derivative, to_gmp
from .polynomial import RealPolynomial


@dataclass(frozen=True)
class ZeroSet:
    zeros: tuple
    residuals: tuple
    all_real: bool
    degree: int = 0

    @property
    def complex_count(self) -> int:
        return self.degree - len(self.zeros)

    @property
    def span(self):
        return self.zeros[-1] - self.zeros[0] if self.zeros else mpmath.mpf(0)

    def __len__(self):
        return len(self.zeros)

    def __iter__(self):
        return iter(self.zeros)

    def __getitem__(self, i):
        return self.zeros[i]

    def to_floats(self) -> list[float]:
        return [float(z) for z in self.zeros]


def sep_threshold(*point_sets, config: PrecisionConfig = DEFAULT_CONFIG):
    """Absolute separation threshold ``sep_tol * (1 + span)`` over all points given."""
    pts = [mpmath.mpf(x) for s in point_sets for x in s]
    span = (max(pts) - min(pts)) if pts else 0
    return mpmath.mpf(config.sep_tol) * (1 + span)


def _newton(gcoeffs, z0, config):
    """Newton iteration on gmpy2 numbers; real arithmetic iff ``z0`` is real."""
    z = z0
    # quadratic convergence: once |step| < 10^(-digits/2) the error is about step^2
    step_tol = gmpy2.mpfr(10) ** (-(config.working_digits // 2))
    for _ in range(config.newton_max_iter):
        val, der = horner_with_derivative(gcoeffs, z)
        if not val:
            return z
        if not der:
            break
        step = val / der
        z -= step
        if abs(step) <= step_tol * max(1, abs(z)):
            return z
    raise ConvergenceFailure(f"Newton polishing did not converge from seed {complex(z0)}")


def _seeds(poly: RealPolynomial):
    if poly.degree == 1:
        return [complex(-float(poly.coeffs[0]) / float(poly.coeffs[1]))]
    return list(npoly.polyroots(np.array(poly.to_floats())))


def _polish(gcoeffs, seed, config):
    """Polish one seed; near-real seeds are tried on the real axis first."""
    seed = complex(seed)
    if abs(seed.imag) <= 1e-7 * (1 + abs(seed)):
        try:
            return gmpy2.mpc(_newton(gcoeffs, gmpy2.mpfr(seed.real), config))
        except ConvergenceFailure:
            pass
    return _newton(gcoeffs, gmpy2.mpc(seed), config)


def _collect(polished, config):
    reals = [z.real for z in polished]
    span = max(reals) - min(reals) if reals else 0
    sep = config.sep_tol * (1 + span)
    real = sorted((z.real, bool(z.imag)) for z in polished if abs(z.imag) <= sep)
    # conjugate seeds may both converge onto one real root
    collided = any(b[0] - a[0] <= sep for a, b in zip(real, real[1:]))
    return real, collided


def find_real_zeros(poly: RealPolynomial, config: PrecisionConfig = DEFAULT_CONFIG) -> ZeroSet:
    """All real zeros of ``poly``, polished to working precision."""
    if poly.degree < 1:
        raise InvalidParams("find_real_zeros needs degree >= 1")
    with config.workdps(), gmp_context():
        gcoeffs = [to_gmp(c) for c in poly.coeffs]
        polished = [_polish(gcoeffs, s, config) for s in _seeds(poly)]
        real, collided = _collect(polished, config)
        if collided:
            # seeds too crude: retry from an extended-precision simultaneous iteration
            try:
                roots = mpmath.polyroots(list(reversed(poly.coeffs)), maxsteps=200,
                                         extraprec=4 * config.working_digits)
            except mpmath.libmp.NoConvergence as exc:
                raise ConvergenceFailure(str(exc)) from exc
            polished = [_newton(gcoeffs, to_gmp(mpmath.mpc(r)), config) for r in roots]
            real, collided = _collect(polished, config)
            if collided:
                raise ConvergenceFailure("two polished zeros coincide within sep_tol")
        # zeros reached through complex iterates get one real pass to sit on the axis
        zeros = sorted(from_gmp(_newton(gcoeffs, x, config) if via_complex else x)
                       for x, via_complex in real)
        residuals = tuple(abs(poly(z)) for z in zeros)
        bound = config.residual_tol * poly.scale()
        for z, res in zip(zeros, residuals):
            if res > bound:
                raise ConvergenceFailure(
                    f"residual {mpmath.nstr(res, 5)} at zero {mpmath.nstr(z, 10)} exceeds bound"
                )
        return ZeroSet(tuple(zeros), residuals, len(zeros) == poly.degree, poly.degree)


def min_zero_gap(a, b):
    """Smallest |a_i - b_j| between two nonempty zero sets."""
    a, b = list(a), list(b)
    if not a or not b:
        raise InvalidParams("min_zero_gap needs two nonempty zero sets")
    return min(abs(x - y) for x in a for y in b)
