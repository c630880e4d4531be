"""Monic Meixner-Pollaczek, Pseudo-Jacobi and continuous Hahn polynomials.

MP and PJ are expanded directly from their terminating 2F1 representations in
complex arithmetic. CH is built from its three-term recurrence; the direct
3F2 expansion is kept as an independent cross-check
(:func:`ch_polynomial_hypergeometric`).
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import ClassVar, Union

import mpmath

from .config import DEFAULT_CONFIG, InvalidParams, PrecisionConfig, SingularParams
from .polynomial import RealPolynomial, convolve, poly_add, realify

I = mpmath.mpc(0, 1)


def _num(value):
    """Coerce to mpf, accepting strings such as ``'pi/4'``."""
    if isinstance(value, str):
        return parse_real(value)
    return mpmath.mpf(value)


def parse_real(text: str):
    """Parse a real number, allowing ``pi`` and simple fractions of it.

    Accepted forms: ``0.5``, ``pi``, ``-pi``, ``pi/4``, ``3pi/4``, ``3*pi/4``.
    The result carries the current mpmath precision.
    """
    t = text.strip().lower().replace(" ", "")
    if "pi" not in t:
        return mpmath.mpf(t)
    num, _, den = t.partition("/")
    mult = num.replace("*", "").replace("pi", "")
    if mult in ("", "+"):
        mult = "1"
    elif mult == "-":
        mult = "-1"
    value = mpmath.mpf(mult) * mpmath.pi
    if den:
        value /= mpmath.mpf(den)
    return value


@dataclass(frozen=True)
class MP:
    """Meixner-Pollaczek parameters (lambda, phi)."""

    lam: object
    phi: object
    tag: ClassVar[str] = "MP"

    def validate(self):
        lam, phi = _num(self.lam), _num(self.phi)
        if not lam > 0:
            raise InvalidParams(f"MP requires lambda > 0, got {self.lam}")
        if not 0 < phi < mpmath.pi:
            raise InvalidParams(f"MP requires 0 < phi < pi, got {self.phi}")
        return lam, phi

    def shifted(self, dlam=1) -> "MP":
        return MP(_num(self.lam) + dlam, self.phi)


@dataclass(frozen=True)
class PJ:
    """Pseudo-Jacobi parameters (a, b); no global constraint."""

    a: object
    b: object
    tag: ClassVar[str] = "PJ"

    def validate(self):
        return _num(self.a), _num(self.b)

    def shifted(self, da=1) -> "PJ":
        return PJ(_num(self.a) + da, self.b)


@dataclass(frozen=True)
class CH:
    """Continuous Hahn parameters with a = p+iq, b = r+is, c = conj(a), d = conj(b)."""

    p: object
    q: object
    r: object
    s: object
    tag: ClassVar[str] = "CH"

    def validate(self):
        p, q, r, s = (_num(v) for v in (self.p, self.q, self.r, self.s))
        if not (p > 0 and r > 0):
            raise InvalidParams(f"CH requires p > 0 and r > 0, got p={self.p}, r={self.r}")
        return p, q, r, s

    def shifted(self, dp=0, dr=0) -> "CH":
        return CH(_num(self.p) + dp, self.q, _num(self.r) + dr, self.s)

    @property
    def abcd(self):
        p, q, r, s = self.validate()
        return mpmath.mpc(p, q), mpmath.mpc(r, s), mpmath.mpc(p, -q), mpmath.mpc(r, -s)


FamilyParams = Union[MP, PJ, CH]


def params_to_dict(params: FamilyParams) -> dict:
    out = {"family": params.tag}
    out.update({k: float(_num(v)) for k, v in asdict(params).items()})
    return out


def _check_degree(n) -> int:
    if int(n) != n or n < 0:
        raise InvalidParams(f"degree must be a nonnegative integer, got {n}")
    return int(n)


def pochhammer(a, n: int):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1."""
    out = mpmath.mpf(1)
    for j in range(_check_degree(n)):
        out *= a + j
    return out


def _rising_poly_in_x(shift, slope, k_max):
    """Yield the coefficient lists of prod_{j<k} (shift + j + slope*x) for k = 0..k_max."""
    current = [mpmath.mpc(1)]
    yield current
    for j in range(k_max):
        current = convolve(current, [shift + j, slope])
        yield current


def mp_polynomial(n: int, params: MP, config: PrecisionConfig = DEFAULT_CONFIG) -> RealPolynomial:
    """Monic Meixner-Pollaczek polynomial P_n^(lambda)(x; phi)."""
    n = _check_degree(n)
    with config.workdps():
        lam, phi = params.validate()
        e2 = mpmath.expj(2 * phi)
        arg = 1 - 1 / e2
        total = [mpmath.mpc(0)]
        # (2 lam)_n / (2 lam)_k is folded into (2 lam + k)_{n-k}
        for k, rising in enumerate(_rising_poly_in_x(lam, I, n)):
            coef = pochhammer(-n, k) * pochhammer(2 * lam + k, n - k) * arg ** k / mpmath.factorial(k)
            total = poly_add(total, [coef * c for c in rising])
        prefactor = I ** n * (e2 / (e2 - 1)) ** n
        return realify([prefactor * c for c in total], config, what=f"MP n={n}")


def _check_pj_denominator(n, a, config):
    # factors 2a+n+1, ..., 2a+2n of (2a+n+1)_n
    tol = mpmath.mpf(config.realness_tol) * max(1, abs(2 * a + 2 * n))
    for j in range(n):
        if abs(2 * a + n + 1 + j) <= tol:
            raise SingularParams(f"PJ n={n}: (2a+n+1)_n vanishes at a={mpmath.nstr(a, 10)}")


def pj_polynomial(n: int, params: PJ, config: PrecisionConfig = DEFAULT_CONFIG) -> RealPolynomial:
    """Monic Pseudo-Jacobi polynomial P_n(x; a, b)."""
    n = _check_degree(n)
    with config.workdps():
        a, b = params.validate()
        _check_pj_denominator(n, a, config)
        c = mpmath.mpc(a + 1, b)
        total = [mpmath.mpc(0)]
        # (1 - i x)^k / 2^k, built incrementally
        power = [mpmath.mpc(1)]
        for k in range(n + 1):
            # (c)_n / (c)_k folded into (c + k)_{n-k}: no division by (c)_k
            coef = (pochhammer(-n, k) * pochhammer(2 * a + n + 1, k) * pochhammer(c + k, n - k)
                    / mpmath.factorial(k))
            total = poly_add(total, [coef * t for t in power])
            power = convolve(power, [mpmath.mpf(0.5), -I / 2])
        prefactor = 2 ** n / (I ** n * pochhammer(2 * a + n + 1, n))
        return realify([prefactor * t for t in total], config, what=f"PJ n={n}")


def ch_recurrence_coefficients(m: int, params: CH):
    """(C_m, D_m) with p_{m+2} = (x + C_m) p_{m+1} - D_m p_m, valid for m >= -1.

    At m = -1 the D term vanishes and the relation reproduces p_1 from p_0.
    Call inside a working-precision context.
    """
    p, q, r, s = params.validate()
    t = m + p + r
    c_num = (m + 1) * (2 * p + 2 * r - 1) * (q + s) + (m + 1) ** 2 * (q + s) + 2 * (p + r - 1) * (p * s + q * r)
    if m == -1:
        # the general formula is 0/0 when p + r = 1; (ps + qr)/(p + r) is its limit
        return (p * s + q * r) / (p + r), mpmath.mpf(0)
    C = c_num / (2 * t * (t + 1))
    # (n+p+iq+r-is)(n+p-iq+r+is) = (n+p+r)^2 + (q-s)^2
    if m == 0:
        # m + 2p + 2r - 1 == 2t - 1 here; cancelled so p + r = 1/2 is not 0/0
        return C, 4 * p * r * (t ** 2 + (q - s) ** 2) / (4 * t ** 2 * (2 * t + 1))
    D = ((m + 1) * (m + 2 * p) * (m + 2 * r) * (m + 2 * p + 2 * r - 1) * (t ** 2 + (q - s) ** 2)
         / (4 * t ** 2 * (2 * t - 1) * (2 * t + 1)))
    return C, D


def ch_sequence(n_max: int, params: CH, config: PrecisionConfig = DEFAULT_CONFIG) -> list[RealPolynomial]:
    """[p_0, ..., p_{n_max}] for the monic continuous Hahn family via the recurrence."""
    n_max = _check_degree(n_max)
    with config.workdps():
        params.validate()
        seq = [[mpmath.mpf(1)]]
        C, _ = ch_recurrence_coefficients(-1, params)
        seq.append([C, mpmath.mpf(1)])
        for m in range(n_max - 1):
            C, D = ch_recurrence_coefficients(m, params)
            nxt = poly_add(convolve([C, 1], seq[m + 1]), [-D * c for c in seq[m]])
            nxt[-1] = mpmath.mpf(1)
            seq.append(nxt)
        return [RealPolynomial(tuple(c)) for c in seq[: n_max + 1]]


def ch_polynomial(n: int, params: CH, config: PrecisionConfig = DEFAULT_CONFIG) -> RealPolynomial:
    """Monic continuous Hahn polynomial p_n(x; p+iq, r+is, p-iq, r-is)."""
    return ch_sequence(n, params, config)[n]


def ch_polynomial_hypergeometric(n: int, params: CH,
                                 config: PrecisionConfig = DEFAULT_CONFIG) -> RealPolynomial:
    """Continuous Hahn polynomial by direct 3F2 expansion (cross-check route)."""
    n = _check_degree(n)
    with config.workdps():
        a, b, c, d = params.abcd
        total_shift = a + b + c + d
        total = [mpmath.mpc(0)]
        for k, rising in enumerate(_rising_poly_in_x(a, I, n)):
            # (a+c)_n (a+d)_n / ((a+c)_k (a+d)_k) folded into rising factorials from k
            coef = (pochhammer(-n, k) * pochhammer(n + total_shift - 1, k)
                    * pochhammer(a + c + k, n - k) * pochhammer(a + d + k, n - k)
                    / mpmath.factorial(k))
            total = poly_add(total, [coef * t for t in rising])
        prefactor = I ** n / pochhammer(n + total_shift - 1, n)
        return realify([prefactor * t for t in total], config, what=f"CH(3F2) n={n}")


def family_polynomial(n: int, params: FamilyParams, config: PrecisionConfig = DEFAULT_CONFIG) -> RealPolynomial:
    if isinstance(params, MP):
        return mp_polynomial(n, params, config)
    if isinstance(params, PJ):
        return pj_polynomial(n, params, config)
    if isinstance(params, CH):
        return ch_polynomial(n, params, config)
    raise InvalidParams(f"unknown parameter set {params!r}")
