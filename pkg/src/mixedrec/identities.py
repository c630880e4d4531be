"""Mixed recurrence identities, their residuals, and completion points.

Every identity is normalized to the shape

    f(x) g_n(x) = D(x) p_n(x) + H(x) q_{n+1}(x)

where ``g_n`` is the polynomial whose zeros are compared against those of
``p_n``. Both sides are assembled from independently constructed polynomials
and compared by point evaluation and coefficient by coefficient.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

import gmpy2
import mpmath
from scipy.stats import qmc

from .config import (DEFAULT_CONFIG, DegenerateU, InvalidParams, PrecisionConfig,
                     RealnessViolation, SingularParams)
from .families import (CH, MP, PJ, pochhammer, ch_polynomial, ch_polynomial_hypergeometric, ch_recurrence_coefficients,
                       ch_sequence, mp_polynomial, params_to_dict, pj_polynomial)
from .fastmath import abs_horner, from_gmp, gmp_context, horner, to_gmp
from .polynomial import RealPolynomial, poly_eval
from .roots import find_real_zeros


class IdentityId(str, enum.Enum):
    MP_111 = "MP_111"
    MP_LL = "MP_LL"
    PJ_1 = "PJ_1"
    PJ_4 = "PJ_4"
    CH_TTRR2 = "CH_TTRR2"
    CH_1 = "CH_1"
    CH_22 = "CH_22"
    CH_ch = "CH_ch"
    CH_2 = "CH_2"

    @property
    def family(self) -> str:
        return self.value.split("_")[0]


# identities whose H(x) is monic linear, i.e. the ones that produce a completion point
COMPLETION_IDENTITIES = (IdentityId.MP_111, IdentityId.PJ_1, IdentityId.PJ_4, IdentityId.CH_1,
                         IdentityId.CH_22, IdentityId.CH_ch, IdentityId.CH_2)

X = RealPolynomial((0, 1))


@dataclass(frozen=True)
class IdentityInstance:
    id: IdentityId
    n: int
    params: object
    lhs: RealPolynomial
    rhs: RealPolynomial
    f_factor: RealPolynomial
    d_coeff: RealPolynomial
    h_coeff: RealPolynomial
    h_linear: RealPolynomial | None
    g: RealPolynomial
    p: RealPolynomial
    q: RealPolynomial
    scalars: dict = field(default_factory=dict)

    def __post_init__(self):
        f = self.f_factor
        if f.degree == 0:
            if f.coeffs[0] == 0:
                raise SingularParams(f"{self.id.value}: f(x) vanishes identically")
        elif f.degree == 2:
            c, b, a = f.coeffs
            if b * b - 4 * a * c >= 0:
                raise InvalidParams(f"{self.id.value}: f(x) has real zeros")
        else:
            raise InvalidParams(f"{self.id.value}: unexpected f(x) degree {f.degree}")
        if self.h_linear is not None and (self.h_linear.degree != 1 or self.h_linear.leading != 1):
            raise InvalidParams(f"{self.id.value}: H(x) must be monic linear")

    @property
    def completion_point(self):
        """Zero of H(x), when H is monic linear."""
        if self.h_linear is None:
            return None
        return -self.h_linear.coeffs[0]


@dataclass(frozen=True)
class IdentityResidualReport:
    id: IdentityId
    n: int
    params: object
    max_point_residual: float
    coeff_residual: float
    passed: bool
    check: str = "residual"

    def to_dict(self) -> dict:
        return {
            "id": self.id.value,
            "check": self.check,
            "n": self.n,
            "params": params_to_dict(self.params),
            "max_point_residual": self.max_point_residual,
            "coeff_residual": self.coeff_residual,
            "passed": self.passed,
        }


# ---------------------------------------------------------------- coefficients

def mp_111_scalar(n, lam, phi):
    return lam * (2 * lam + n) / (2 * mpmath.sin(phi) ** 2)


def ll_coefficients(n, lam, phi, opposite_sign: bool = False):
    """(B(x), A(x)) with P_n^(l) = B P_n^(l+1) + A P_{n+1}^(l+1).

    With ``opposite_sign=True`` A(x) carries the other sign, which
    makes the x^(n+2) terms add up instead of cancelling; the default uses the
    sign for which the identity holds.
    """
    sin, cos = mpmath.sin(phi), mpmath.cos(phi)
    den = (2 * lam + n) * (2 * lam + n + 1)
    a_coeff = RealPolynomial((-4 * sin * lam * cos / den, 4 * sin * sin / den))
    if not opposite_sign:
        a_coeff = -a_coeff
    cos2 = mpmath.cos(2 * phi)
    b_coeff = RealPolynomial((
        2 * (lam ** 2 - cos2 * (lam ** 2 + n * lam + lam)) / den,
        2 * (n + 1) * mpmath.sin(2 * phi) / den,
        2 * (1 - cos2) / den,
    ))
    return b_coeff, a_coeff


def pj1_coefficients(n, a, b):
    """(B, D_2(x)) for B P_n(a-1) = D_2 P_n(a) - (x - b/(a+n)) P_{n+1}(a)."""
    for value, what in ((a + n, "a+n"), (a + n + 1, "a+n+1"), (2 * a + 2 * n + 1, "2a+2n+1"),
                        (4 * (a + n) ** 2 - 1, "4(a+n)^2-1")):
        if value == 0:
            raise SingularParams(f"PJ_1: {what} vanishes")
    big_b = ((2 * a + n - 1) * (2 * a + n) * ((a + n) ** 2 + b ** 2)
             / ((a + n) ** 2 * (4 * (a + n) ** 2 - 1)))
    const = ((2 * a ** 3 + a ** 2 * (5 * n + 2) + a * n * (4 * n + 3) + (n + 1) * (b ** 2 + n ** 2))
             / ((a + n) * (a + n + 1) * (2 * a + 2 * n + 1)))
    lin = -b * (n + 1) / ((a + n + 1) * (a + n))
    return big_b, RealPolynomial((const, lin, 1))


def pj4_scalar(n, a, b):
    if a + n + 1 == 0 or 2 * a + 2 * n + 1 == 0:
        raise SingularParams("PJ_4: a+n+1 or 2a+2n+1 vanishes")
    return (2 * a + n + 1) * ((a + n + 1) ** 2 + b ** 2) / ((a + n + 1) ** 2 * (2 * a + 2 * n + 1))


def ch_an_closed_form(n, p, r):
    """Closed form of the p_n coefficient magnitude in the symmetric a-shift identity."""
    first = ((n + 1) * (n + 2 * r) * (n + 2 * p) * (n + 2 * p + 2 * r - 1)
             / (4 * (2 * n + 2 * p + 2 * r + 1) * (2 * n + 2 * p + 2 * r - 1)))
    second = (pochhammer(n + 2 * p, 2) * pochhammer(n + p + r, 2) * pochhammer(n + 2 * p + 2 * r - 1, n)
              / pochhammer(n + 2 * p + 2 * r + 1, n + 2))
    return first - second


def ch_symmetric_ratio_constant(n, params: CH, variant: str, config: PrecisionConfig = DEFAULT_CONFIG):
    """D_n + p_{n+2}(i t)/p_n(i t) with t = p (a-shift) or t = r (b-shift), for q = s = 0."""
    with config.workdps():
        p, q, r, s = params.validate()
        seq = ch_sequence(n + 2, params, config)
        t = p if variant == "a" else r
        point = mpmath.mpc(0, t)
        denom = poly_eval(seq[n], point)
        if abs(denom) <= config.realness_tol * seq[n].abs_eval(point):
            raise DegenerateU(f"p_n(i{variant}) vanishes")
        ratio = poly_eval(seq[n + 2], point) / denom
        _, D = ch_recurrence_coefficients(n, params)
        if abs(ratio.imag) > config.realness_tol * max(1, abs(ratio)):
            raise RealnessViolation("p_{n+2}(it)/p_n(it) is not real")
        return D + ratio.real


# ---------------------------------------------------------------- U, V, W

@dataclass(frozen=True)
class ChUVW:
    """The 2x2 determinants of family values at a conjugate pair of points."""

    n: int
    params: CH
    variant: str
    U: object
    V: object
    W: object
    C: object
    D: object

    @property
    def v_over_u(self):
        return self.V / self.U

    @property
    def w_over_u(self):
        return self.W / self.U

    @property
    def completion_point(self):
        """Real zero of H(x) = x + C_n - V/U (G(x) for the b-shift)."""
        return self.v_over_u.real - self.C

    @property
    def pn_coefficient(self):
        """Scalar multiplying p_n: -(D_n - W/U)."""
        return -(self.D - self.w_over_u.real)

    def imag_leakage(self) -> dict:
        return {
            "v_over_u": abs(self.v_over_u.imag) / max(1, abs(self.v_over_u)),
            "w_over_u": abs(self.w_over_u.imag) / max(1, abs(self.w_over_u)),
        }


def _shift_points(params: CH, variant: str):
    p, q, r, s = params.validate()
    if variant == "a":
        return mpmath.mpc(-q, -p), mpmath.mpc(-q, p)
    if variant == "b":
        return mpmath.mpc(-s, -r), mpmath.mpc(-s, r)
    raise InvalidParams(f"variant must be 'a' or 'b', got {variant!r}")


def _conjugate_values(polys, alpha, beta):
    return [poly_eval(P, alpha) for P in polys], [poly_eval(P, beta) for P in polys]


def _variant(variant) -> str:
    v = str(variant).lower().replace("-shift", "")
    if v not in ("a", "b"):
        raise InvalidParams(f"variant must be 'a' or 'b', got {variant!r}")
    return v


def ch_uvw(n: int, params: CH, variant="a", config: PrecisionConfig = DEFAULT_CONFIG) -> ChUVW:
    """U, V, W (a-shift, points -q -/+ ip) or U1, V1, W1 (b-shift, points -s -/+ ir)."""
    variant = _variant(variant)
    with config.workdps():
        seq = ch_sequence(n + 2, params, config)
        alpha, beta = _shift_points(params, variant)
        top, bot = _conjugate_values(seq[n:n + 3], alpha, beta)
        U = top[0] * bot[1] - bot[0] * top[1]
        V = top[0] * bot[2] - bot[0] * top[2]
        W = top[1] * bot[2] - bot[1] * top[2]
        if abs(U) <= config.realness_tol * 2 * abs(top[0]) * abs(top[1]):
            raise DegenerateU(f"|U| = {mpmath.nstr(abs(U), 5)} is zero within tolerance (n={n})")
        C, D = ch_recurrence_coefficients(n, params)
        out = ChUVW(n, params, variant, U, V, W, C, D)
        for name, leak in out.imag_leakage().items():
            if leak > config.realness_tol:
                raise RealnessViolation(f"Im({name}) = {mpmath.nstr(leak, 5)} relative; conjugate structure broken")
        return out


# ---------------------------------------------------------------- completion points

SHIFTS = ("mp", "pj-minus", "pj-plus", "ch-a", "ch-b")


def completion_point(shift: str, n: int, params, config: PrecisionConfig = DEFAULT_CONFIG):
    """Point A completing the interlacing of p_n with (x - A) g_n.

    ``shift`` is one of ``mp`` (lambda -> lambda+1), ``pj-minus`` (a -> a-1),
    ``pj-plus`` (a -> a+1), ``ch-a`` (p -> p+1), ``ch-b`` (r -> r+1).
    """
    with config.workdps():
        if shift == "mp":
            lam, phi = params.validate()
            return lam * mpmath.cot(phi)
        if shift == "pj-minus":
            a, b = params.validate()
            if a + n == 0:
                raise SingularParams("a + n vanishes")
            return b / (a + n)
        if shift == "pj-plus":
            a, b = params.validate()
            if a + n + 1 == 0:
                raise SingularParams("a + n + 1 vanishes")
            return b / (a + n + 1)
        if shift in ("ch-a", "ch-b"):
            return ch_uvw(n, params, shift[-1], config).completion_point
    raise InvalidParams(f"unknown shift {shift!r}; expected one of {SHIFTS}")


# ---------------------------------------------------------------- assembly

def _family_check(identity: IdentityId, params):
    expected = {"MP": MP, "PJ": PJ, "CH": CH}[identity.family]
    if not isinstance(params, expected):
        raise InvalidParams(f"{identity.value} needs {expected.tag} parameters")
    return params.validate()


def _assemble(identity, n, params, f, g, d, p, h, q, *, linear: bool, **scalars):
    h = h if isinstance(h, RealPolynomial) else RealPolynomial.constant(h)
    d = d if isinstance(d, RealPolynomial) else RealPolynomial.constant(d)
    f = f if isinstance(f, RealPolynomial) else RealPolynomial.constant(f)
    return IdentityInstance(
        id=identity, n=n, params=params,
        lhs=f * g, rhs=d * p + h * q,
        f_factor=f, d_coeff=d, h_coeff=h, h_linear=h if linear else None,
        g=g, p=p, q=q, scalars=scalars,
    )


def build_identity(identity, n: int, params, config: PrecisionConfig = DEFAULT_CONFIG) -> IdentityInstance:
    identity = IdentityId(identity)
    vals = _family_check(identity, params)
    with config.workdps():
        if identity is IdentityId.MP_111:
            lam, phi = vals
            return _assemble(
                identity, n, params,
                f=RealPolynomial((lam ** 2, 0, 1)), g=mp_polynomial(n, params.shifted(1), config),
                d=mp_111_scalar(n, lam, phi), p=mp_polynomial(n, params, config),
                h=RealPolynomial.linear(lam * mpmath.cot(phi)), q=mp_polynomial(n + 1, params, config),
                linear=True,
            )
        if identity is IdentityId.MP_LL:
            lam, phi = vals
            big_b, small_a = ll_coefficients(n, lam, phi)
            up = params.shifted(1)
            return _assemble(
                identity, n, params,
                f=1, g=mp_polynomial(n, params, config),
                d=big_b, p=mp_polynomial(n, up, config),
                h=small_a, q=mp_polynomial(n + 1, up, config),
                linear=False,
            )
        if identity is IdentityId.PJ_1:
            a, b = vals
            big_b, d2 = pj1_coefficients(n, a, b)
            # B g = D_2 p - (x - A) q, rewritten as (-B) g = (-D_2) p + (x - A) q
            return _assemble(
                identity, n, params,
                f=-big_b, g=pj_polynomial(n, params.shifted(-1), config),
                d=-d2, p=pj_polynomial(n, params, config),
                h=RealPolynomial.linear(b / (a + n)), q=pj_polynomial(n + 1, params, config),
                linear=True, B=big_b,
            )
        if identity is IdentityId.PJ_4:
            a, b = vals
            return _assemble(
                identity, n, params,
                f=RealPolynomial((1, 0, 1)), g=pj_polynomial(n, params.shifted(1), config),
                d=pj4_scalar(n, a, b), p=pj_polynomial(n, params, config),
                h=RealPolynomial.linear(b / (a + n + 1)), q=pj_polynomial(n + 1, params, config),
                linear=True,
            )
        if identity is IdentityId.CH_TTRR2:
            C, D = ch_recurrence_coefficients(n, params)
            return _assemble(
                identity, n, params,
                f=1, g=ch_polynomial_hypergeometric(n + 2, params, config),
                d=-D, p=ch_polynomial_hypergeometric(n, params, config),
                h=RealPolynomial((C, 1)), q=ch_polynomial_hypergeometric(n + 1, params, config),
                linear=False,
            )
        p_, q_, r_, s_ = vals
        seq = ch_sequence(n + 1, params, config)
        if identity in (IdentityId.CH_1, IdentityId.CH_22):
            variant = "a" if identity is IdentityId.CH_1 else "b"
            uvw = ch_uvw(n, params, variant, config)
            if variant == "a":
                f = RealPolynomial((p_ ** 2 + q_ ** 2, 2 * q_, 1))
                g = ch_polynomial(n, params.shifted(dp=1), config)
            else:
                f = RealPolynomial((r_ ** 2 + s_ ** 2, 2 * s_, 1))
                g = ch_polynomial(n, params.shifted(dr=1), config)
            return _assemble(
                identity, n, params,
                f=f, g=g, d=uvw.pn_coefficient, p=seq[n],
                h=RealPolynomial.linear(uvw.completion_point), q=seq[n + 1],
                linear=True, U=uvw.U, V=uvw.V, W=uvw.W,
            )
        # symmetric CH identities need real a, b, c, d
        if q_ != 0 or s_ != 0:
            raise InvalidParams(f"{identity.value} requires q = s = 0")
        if identity is IdentityId.CH_ch:
            const = ch_an_closed_form(n, p_, r_)
            f = RealPolynomial((p_ ** 2, 0, 1))
            g = ch_polynomial(n, params.shifted(dp=1), config)
            # p_n(ip) must not vanish for the closed form to describe the identity
            ch_symmetric_ratio_constant(n, params, "a", config)
        else:
            const = ch_symmetric_ratio_constant(n, params, "b", config)
            f = RealPolynomial((r_ ** 2, 0, 1))
            g = ch_polynomial(n, params.shifted(dr=1), config)
        return _assemble(
            identity, n, params,
            f=f, g=g, d=-const, p=seq[n], h=X, q=seq[n + 1],
            linear=True, constant=const,
        )


# ---------------------------------------------------------------- residuals

@lru_cache(maxsize=64)
def sample_points(count: int, low: float = -10.0, high: float = 10.0) -> tuple:
    """Deterministic low-discrepancy points in [low, high] (unscrambled Halton)."""
    if count < 1:
        raise InvalidParams("sample_count must be >= 1")
    unit = qmc.Halton(d=1, scramble=False).random(count)[:, 0]
    return tuple(float(v) for v in low + (high - low) * unit)


def _coefficient_residual(lhs_coeffs, rhs_coeffs):
    n = max(len(lhs_coeffs), len(rhs_coeffs))
    a = list(lhs_coeffs) + [0] * (n - len(lhs_coeffs))
    b = list(rhs_coeffs) + [0] * (n - len(rhs_coeffs))
    scale = max(max(abs(x), abs(y)) for x, y in zip(a, b))
    if scale == 0:
        return mpmath.mpf(0)
    return max(abs(x - y) for x, y in zip(a, b)) / scale


def _point_residual(lhs_coeffs, rhs_coeffs, points):
    with gmp_context():
        lhs = [to_gmp(c) for c in lhs_coeffs]
        rhs = [to_gmp(c) for c in rhs_coeffs]
        abs_lhs, abs_rhs = [abs(c) for c in lhs], [abs(c) for c in rhs]
        worst = gmpy2.mpfr(0)
        for x in points:
            x = to_gmp(x)
            diff = abs(horner(lhs, x) - horner(rhs, x))
            ax = abs(x)
            scale = max(abs_horner(abs_lhs, ax), abs_horner(abs_rhs, ax))
            if scale:
                worst = max(worst, diff / scale)
        return from_gmp(worst)


def _constituent_zeros(polys, config):
    pts = []
    for P in polys:
        if P.degree >= 1:
            pts.extend(find_real_zeros(P, config).zeros)
    return pts


def residual_report(inst: IdentityInstance, sample_count: int = 16,
                    config: PrecisionConfig = DEFAULT_CONFIG) -> IdentityResidualReport:
    """Relative residual of lhs - rhs at sample points and in coefficient space.

    The point residual at x is |lhs(x) - rhs(x)| divided by the larger of the
    two sides evaluated with absolute coefficients at |x|, i.e. relative to the
    rounding scale of the evaluation.
    """
    points = list(sample_points(sample_count))
    with config.workdps():
        points += _constituent_zeros((inst.g, inst.p, inst.q), config)
        point_res = _point_residual(inst.lhs.coeffs, inst.rhs.coeffs, points)
        coeff_res = _coefficient_residual(inst.lhs.coeffs, inst.rhs.coeffs)
    tol = config.residual_tol
    return IdentityResidualReport(
        id=inst.id, n=inst.n, params=inst.params,
        max_point_residual=float(point_res), coeff_residual=float(coeff_res),
        passed=bool(point_res <= tol and coeff_res <= tol),
    )


def christoffel_polynomial(n: int, params: CH, variant="a", config: PrecisionConfig = DEFAULT_CONFIG) -> list:
    """Complex coefficients of det/U, the 3x3 determinant expanded along its polynomial row."""
    variant = _variant(variant)
    with config.workdps():
        seq = ch_sequence(n + 2, params, config)
        alpha, beta = _shift_points(params, variant)
        top, bot = _conjugate_values(seq[n:n + 3], alpha, beta)
        minors = [
            top[1] * bot[2] - top[2] * bot[1],
            top[0] * bot[2] - top[2] * bot[0],
            top[0] * bot[1] - top[1] * bot[0],
        ]
        if abs(minors[2]) <= config.realness_tol * 2 * abs(top[0]) * abs(top[1]):
            raise DegenerateU(f"|U| is zero within tolerance (n={n})")
        out = [mpmath.mpc(0)] * (n + 3)
        for sign, minor, P in zip((1, -1, 1), minors, seq[n:n + 3]):
            factor = sign * minor / minors[2]
            for k, c in enumerate(P.coeffs):
                out[k] += factor * c
        return out


def christoffel_check(n: int, params: CH, variant="a", sample_count: int = 16,
                      config: PrecisionConfig = DEFAULT_CONFIG) -> IdentityResidualReport:
    """Compare det/U against sigma(x) times the independently built shifted polynomial."""
    variant = _variant(variant)
    with config.workdps():
        p, q, r, s = params.validate()
        det_poly = christoffel_polynomial(n, params, variant, config)
        if variant == "a":
            sigma = RealPolynomial((p ** 2 + q ** 2, 2 * q, 1))
            shifted = ch_polynomial(n, params.shifted(dp=1), config)
        else:
            sigma = RealPolynomial((r ** 2 + s ** 2, 2 * s, 1))
            shifted = ch_polynomial(n, params.shifted(dr=1), config)
        target = (sigma * shifted).coeffs
        points = list(sample_points(sample_count))
        if shifted.degree >= 1:
            points += list(find_real_zeros(shifted, config).zeros)
        point_res = _point_residual(det_poly, target, points)
        coeff_res = _coefficient_residual(det_poly, target)
    tol = config.residual_tol
    return IdentityResidualReport(
        id=IdentityId.CH_1 if variant == "a" else IdentityId.CH_22, n=n, params=params,
        max_point_residual=float(point_res), coeff_residual=float(coeff_res),
        passed=bool(point_res <= tol and coeff_res <= tol), check="christoffel",
    )
