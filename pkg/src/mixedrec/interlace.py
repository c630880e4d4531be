"""Interlacing certificates for zero sets.

Three kinds of check are supported: adjacent degree (n zeros against n+1),
same degree, and completed, where an extra point A is adjoined to the zeros
of g_n before comparing against the zeros of p_n. All inequalities are strict
with slack larger than the separation threshold; near-ties count as
violations.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from .config import (ConstraintViolation, DEFAULT_CONFIG, InvalidParams, MergeCollision,
                     PrecisionConfig, SharedZeroSuspected, SizeMismatch)
from .families import CH, MP, PJ, family_polynomial, params_to_dict
from .identities import ch_uvw, completion_point
from .roots import ZeroSet, find_real_zeros, min_zero_gap, sep_threshold


@dataclass
class InterlacingCertificate:
    kind: str
    ok: bool
    violations: list = field(default_factory=list)
    case: str | None = None
    index: int | None = None
    A: object = None
    gap_margin: object = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "ok": self.ok,
            "case": self.case,
            "index": self.index,
            "A": None if self.A is None else float(self.A),
            "gap_margin": None if self.gap_margin is None else float(self.gap_margin),
            "violations": [[i, msg] for i, msg in self.violations],
        }
        out.update(self.details)
        return out


def _points(zs):
    return [mpmath.mpf(z) for z in (zs.zeros if isinstance(zs, ZeroSet) else zs)]


def _alternation(small, big, sep):
    """Check big[0] < small[0] < big[1] < ... < small[-1] < big[-1]; return (violations, margin)."""
    chain = []
    for i, s in enumerate(small):
        chain += [(f"big[{i}]", big[i]), (f"small[{i}]", s)]
    chain.append((f"big[{len(small)}]", big[-1]))
    violations = []
    margin = None
    for k, ((name_lo, lo), (name_hi, hi)) in enumerate(zip(chain, chain[1:])):
        slack = hi - lo
        margin = slack if margin is None else min(margin, slack)
        if slack <= sep:
            violations.append((k, f"{name_lo} < {name_hi} fails: {mpmath.nstr(lo, 12)} vs {mpmath.nstr(hi, 12)}"))
    return violations, margin


def interlaces_adjacent(small, big, config: PrecisionConfig = DEFAULT_CONFIG) -> InterlacingCertificate:
    """Strict interlacing of n zeros (``small``) with n+1 zeros (``big``)."""
    small, big = _points(small), _points(big)
    if len(big) != len(small) + 1:
        raise SizeMismatch(f"expected sizes n and n+1, got {len(small)} and {len(big)}")
    with config.workdps():
        sep = sep_threshold(small, big, config=config)
        violations, margin = _alternation(small, big, sep)
    return InterlacingCertificate("adjacent", not violations, violations, gap_margin=margin)


def interlaces_same_degree(x, y, config: PrecisionConfig = DEFAULT_CONFIG) -> InterlacingCertificate:
    """Strict alternation of two n-point zero sets, in either order."""
    x, y = _points(x), _points(y)
    if len(x) != len(y):
        raise SizeMismatch(f"expected equal sizes, got {len(x)} and {len(y)}")
    with config.workdps():
        sep = sep_threshold(x, y, config=config)
        first, second = (x, y) if x[0] < y[0] else (y, x)
        chain = [v for pair in zip(first, second) for v in pair]
        violations = []
        margin = None
        for k, (lo, hi) in enumerate(zip(chain, chain[1:])):
            slack = hi - lo
            margin = slack if margin is None else min(margin, slack)
            if slack <= sep:
                violations.append((k, f"chain[{k}] < chain[{k + 1}] fails"))
    return InterlacingCertificate("same_degree", not violations, violations, gap_margin=margin)


def completed_interlacing_classify(p_zeros, g_zeros, A, config: PrecisionConfig = DEFAULT_CONFIG) -> InterlacingCertificate:
    """Check that zeros(g) together with A interlace zeros(p), and classify where A sits.

    Cases: ``i1`` A lies below every zero of p, ``i3`` above every zero, ``i2``
    strictly between p[index-1] and p[index] (``index`` counted from 1).
    """
    p, g = _points(p_zeros), _points(g_zeros)
    if len(p) != len(g):
        raise SizeMismatch(f"expected equal sizes, got {len(p)} and {len(g)}")
    if not p:
        raise SizeMismatch("zero sets are empty")
    with config.workdps():
        A = mpmath.mpf(A)
        sep = sep_threshold(p, g, [A], config=config)
        if min(abs(A - x) for x in p) <= sep:
            raise SharedZeroSuspected(f"A = {mpmath.nstr(A, 12)} coincides with a zero of p_n")
        if min(abs(A - y) for y in g) <= sep:
            raise MergeCollision(f"A = {mpmath.nstr(A, 12)} coincides with a zero of g_n")
        merged = sorted(g + [A])
        violations, margin = _alternation(p, merged, sep)
    cert = InterlacingCertificate("completed", not violations, violations, A=A, gap_margin=margin)
    if cert.ok:
        if A < p[0]:
            cert.case = "i1"
        elif A > p[-1]:
            cert.case = "i3"
        else:
            cert.case = "i2"
            cert.index = next(i for i in range(1, len(p)) if p[i - 1] < A < p[i])
    return cert


# ---------------------------------------------------------------- propositions

# prop id -> (family, kind); aliases map onto these names
PROPOSITIONS = {
    "mp-i": ("MP", "completed"),
    "mp-ii": ("MP", "adjacent"),
    "mp-half-pi": ("MP", "adjacent"),
    "pj-i": ("PJ", "completed"),
    "pj-ii": ("PJ", "completed"),
    "pj-iii": ("PJ", "adjacent"),
    "conthahn1-i": ("CH", "completed"),
    "conthahn1-ii": ("CH", "completed"),
    "conthahn-i": ("CH", "completed"),
    "conthahn-ii": ("CH", "completed"),
}
ALIASES = {"fin-i": "mp-i", "fin-ii": "mp-ii", "symint": "mp-half-pi"}


def _normalize_prop(prop_id: str) -> str:
    key = ALIASES.get(prop_id, prop_id)
    if key not in PROPOSITIONS:
        raise InvalidParams(f"unknown proposition {prop_id!r}; expected one of {sorted(PROPOSITIONS)}")
    return key


def _pair(prop, n, params):
    """(reference polynomial params/degree, compared polynomial params/degree, completion shift)."""
    if prop == "mp-i":
        return (n, params), (n, params.shifted(1)), "mp"
    if prop == "mp-ii":
        return (n, params.shifted(1)), (n + 1, params), None
    if prop == "mp-half-pi":
        base = MP(params.lam, mpmath.pi / 2)
        return (n, base), (n + 1, base.shifted(1)), None
    if prop == "pj-i":
        return (n, params), (n, params.shifted(-1)), "pj-minus"
    if prop == "pj-ii":
        return (n, params), (n, params.shifted(1)), "pj-plus"
    if prop == "pj-iii":
        return (n, params.shifted(1)), (n + 1, params), None
    if prop in ("conthahn1-i", "conthahn-i"):
        return (n, params), (n, params.shifted(dp=1)), "ch-a"
    return (n, params), (n, params.shifted(dr=1)), "ch-b"


def _check_constraints(prop, n, params):
    family = PROPOSITIONS[prop][0]
    expected = {"MP": MP, "PJ": PJ, "CH": CH}[family]
    if not isinstance(params, expected):
        raise ConstraintViolation(f"{prop} needs {family} parameters")
    vals = params.validate()
    if n < 1:
        raise ConstraintViolation("degree must be >= 1")
    if prop == "pj-i" and not vals[0] < -n:
        raise ConstraintViolation(f"pj-i requires a < -n (a={float(vals[0])}, n={n})")
    if prop in ("pj-ii", "pj-iii") and not vals[0] + 1 < -n:
        raise ConstraintViolation(f"{prop} requires a + 1 < -n (a={float(vals[0])}, n={n})")
    if prop in ("conthahn-i", "conthahn-ii"):
        if n % 2:
            raise ConstraintViolation(f"{prop} requires even n")
        if vals[1] != 0 or vals[3] != 0:
            raise ConstraintViolation(f"{prop} requires q = s = 0")


def _not_real(kind, which, zs, details):
    msg = f"{which} has {zs.complex_count} non-real zero(s)"
    return InterlacingCertificate(kind, False, [(-1, msg)], details=details)


def verify_proposition(prop_id: str, n: int, params, config: PrecisionConfig = DEFAULT_CONFIG,
                       coprime_tol: float | None = None) -> InterlacingCertificate:
    """Build the two polynomials a proposition names and certify their interlacing.

    Raises SharedZeroSuspected when the inputs are not numerically co-prime:
    the minimal distance between the two zero sets (or between A and the
    zeros of p_n) is at or below ``coprime_tol`` (default: the separation
    threshold), or p_n(A) vanishes to residual tolerance.
    """
    prop = _normalize_prop(prop_id)
    _check_constraints(prop, n, params)
    kind = PROPOSITIONS[prop][1]
    (n_ref, ref_params), (n_cmp, cmp_params), shift = _pair(prop, n, params)
    with config.workdps():
        ref_poly = family_polynomial(n_ref, ref_params, config)
        cmp_poly = family_polynomial(n_cmp, cmp_params, config)
        ref = find_real_zeros(ref_poly, config)
        cmp = find_real_zeros(cmp_poly, config)
        details = {
            "prop": prop, "n": n, "params": params_to_dict(params),
            "p_zeros": ref.to_floats(), "g_zeros": cmp.to_floats(),
        }
        if not ref.all_real:
            return _not_real(kind, "reference polynomial", ref, details)
        if not cmp.all_real:
            return _not_real(kind, "compared polynomial", cmp, details)
        tol = sep_threshold(ref, cmp, config=config) if coprime_tol is None else mpmath.mpf(coprime_tol)
        gap = min_zero_gap(ref, cmp)
        details["min_zero_gap"] = float(gap)
        if gap <= tol:
            raise SharedZeroSuspected(f"{prop}: zero sets share a zero (gap {mpmath.nstr(gap, 5)})")
        if kind == "adjacent":
            cert = interlaces_adjacent(ref, cmp, config)
        else:
            if shift in ("ch-a", "ch-b"):
                uvw = ch_uvw(n, params, shift[-1], config)
                # symmetric parameters: H(x) = x exactly
                A = mpmath.mpf(0) if prop.startswith("conthahn-") else uvw.completion_point
                details["imag_leakage"] = {k: float(v) for k, v in uvw.imag_leakage().items()}
            else:
                A = completion_point(shift, n, params, config)
            if abs(ref_poly(A)) <= config.residual_tol * ref_poly.abs_eval(A):
                raise SharedZeroSuspected(f"{prop}: p_n vanishes at A = {mpmath.nstr(A, 12)}")
            cert = completed_interlacing_classify(ref, cmp, A, config)
    cert.details.update(details)
    return cert


def sign_change_pattern(p_zeros, g_poly, A, config: PrecisionConfig = DEFAULT_CONFIG) -> list[tuple[bool, bool]]:
    """For each consecutive pair of p-zeros: (g changes sign across it, A lies outside it)."""
    p = _points(p_zeros)
    out = []
    with config.workdps():
        A = mpmath.mpf(A)
        values = [g_poly(x) for x in p]
        for i in range(len(p) - 1):
            changes = values[i] * values[i + 1] < 0
            outside = not (p[i] < A < p[i + 1])
            out.append((bool(changes), bool(outside)))
    return out
