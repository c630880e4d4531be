"""Dense polynomials over mpmath scalars.

Coefficients are stored lowest degree first. Complex-coefficient polynomials
only ever appear as intermediates (plain lists of ``mpc``); everything that
leaves a constructor is a :class:`RealPolynomial`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import mpmath

from .config import DEFAULT_CONFIG, PrecisionConfig, RealnessViolation

Scalar = "mpmath.mpf | int | float"


def _mpf(value):
    return value if isinstance(value, mpmath.mpf) else mpmath.mpf(value)


@dataclass(frozen=True)
class RealPolynomial:
    coeffs: tuple

    def __post_init__(self):
        coeffs = [_mpf(c) for c in self.coeffs] or [mpmath.mpf(0)]
        for c in coeffs:
            if not mpmath.isfinite(c):
                raise ValueError("polynomial coefficients must be finite")
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def constant(cls, value) -> "RealPolynomial":
        return cls((value,))

    @classmethod
    def linear(cls, root) -> "RealPolynomial":
        """The monic linear polynomial ``x - root``."""
        return cls((-_mpf(root), 1))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "RealPolynomial":
        out = cls.constant(1)
        for r in roots:
            out = out * cls.linear(r)
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def scale(self):
        """Largest coefficient magnitude."""
        return max(abs(c) for c in self.coeffs)

    def abs_eval(self, x):
        """Evaluate the polynomial with |coefficients| at |x| (rounding scale)."""
        ax = abs(x)
        acc = mpmath.mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * ax + abs(c)
        return acc

    def __call__(self, z):
        return poly_eval(self, z)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return RealPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return RealPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        return RealPolynomial(tuple(convolve(self.coeffs, other.coeffs)))

    __rmul__ = __mul__

    def derivative(self) -> "RealPolynomial":
        if self.degree == 0:
            return RealPolynomial.constant(0)
        return RealPolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def parity_part(self, parity: int) -> tuple:
        """Coefficients of the terms whose degree has the given parity."""
        return tuple(c for k, c in enumerate(self.coeffs) if k % 2 == parity)

    def to_floats(self) -> list[float]:
        return [float(c) for c in self.coeffs]

    def __repr__(self):
        terms = ", ".join(mpmath.nstr(c, 10) for c in self.coeffs)
        return f"RealPolynomial([{terms}])"


def _as_poly(value) -> RealPolynomial:
    if isinstance(value, RealPolynomial):
        return value
    return RealPolynomial.constant(value)


def convolve(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_add(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [x + y for x, y in zip(a, b)]


def poly_eval(poly, z):
    """Horner evaluation at a real or complex point in the current precision."""
    coeffs = poly.coeffs if isinstance(poly, RealPolynomial) else poly
    acc = 0 * z
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def poly_linear_combine(terms: Iterable[tuple]) -> RealPolynomial:
    """Return ``sum(c_i(x) * p_i(x))`` where each ``c_i`` is a scalar or polynomial."""
    out = RealPolynomial.constant(0)
    for coeff, poly in terms:
        out = out + _as_poly(coeff) * _as_poly(poly)
    return out


def realify(coeffs: Sequence, config: PrecisionConfig = DEFAULT_CONFIG, *, monic: bool = True,
            what: str = "polynomial") -> RealPolynomial:
    """Drop imaginary parts after checking they are negligible.

    Imaginary parts are measured against the largest coefficient magnitude so
    that structurally vanishing coefficients (parity symmetry) do not trip the
    check on pure rounding noise. With ``monic`` the result is divided by its
    leading coefficient and the leading coefficient is then set to exactly 1.
    """
    coeffs = [mpmath.mpc(c) for c in coeffs]
    scale = max(abs(c) for c in coeffs)
    if scale == 0:
        return RealPolynomial.constant(0)
    limit = config.realness_tol * scale
    worst = max(abs(c.imag) for c in coeffs)
    if worst > limit:
        raise RealnessViolation(
            f"{what}: imaginary part {mpmath.nstr(worst, 5)} exceeds "
            f"{config.realness_tol:g} x coefficient scale {mpmath.nstr(scale, 5)}"
        )
    real = [c.real for c in coeffs]
    if monic:
        lead = real[-1]
        real = [c / lead for c in real[:-1]] + [mpmath.mpf(1)]
    return RealPolynomial(tuple(real))
