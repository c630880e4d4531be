import dataclasses
import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from mixedrec import identities
from mixedrec.config import DEFAULT_CONFIG, InvalidParams
from mixedrec.families import CH, MP, PJ, ch_recurrence_coefficients, ch_sequence, mp_polynomial
from mixedrec.identities import (IdentityId, IdentityInstance, build_identity, ch_an_closed_form,
                                 ch_symmetric_ratio_constant, ch_uvw, christoffel_check,
                                 christoffel_polynomial, completion_point, ll_coefficients, residual_report)
from mixedrec.polynomial import RealPolynomial

lams = st.floats(0.05, 5.0)
phis = st.floats(0.1, math.pi - 0.1)
pos = st.floats(0.5, 5.0)
imag = st.floats(-4.0, 4.0)


def passes(identity, n, params):
    rep = residual_report(build_identity(identity, n, params))
    return rep.passed, rep


# -------------------------------------------------------- construction examples

def test_mp_111_at_half_pi_has_h_equal_x():
    with mpmath.workdps(50):
        inst = build_identity(IdentityId.MP_111, 3, MP(1, "pi/2"))
    assert inst.h_linear.degree == 1 and abs(inst.completion_point) < 1e-40


def test_ch_ch_shape():
    inst = build_identity(IdentityId.CH_ch, 4, CH(2, 0, 4, 0))
    assert inst.h_linear.coeffs == (0, 1)
    assert inst.f_factor.coeffs == (4, 0, 1)


def test_pj_4_completion_point():
    inst = build_identity(IdentityId.PJ_4, 2, PJ(-6, 1))
    assert abs(inst.completion_point - mpmath.mpf(-1) / 3) < 1e-40


def test_symmetric_identities_need_real_parameters():
    with pytest.raises(InvalidParams):
        build_identity(IdentityId.CH_ch, 4, CH(2, 1, 4, 0))


def test_family_mismatch_rejected():
    with pytest.raises(InvalidParams):
        build_identity(IdentityId.MP_111, 3, PJ(-6, 1))


def test_f_with_real_zeros_rejected():
    inst = build_identity(IdentityId.MP_111, 2, MP(1, 1))
    with pytest.raises(InvalidParams):
        dataclasses.replace(inst, f_factor=RealPolynomial((-1, 0, 1)))


# -------------------------------------------------------- residual engine

@pytest.mark.parametrize("identity, n, params", [
    (IdentityId.MP_111, 6, MP(2, 1.0)),
    (IdentityId.MP_LL, 5, MP(1.5, 0.7)),
    (IdentityId.PJ_1, 4, PJ(-7.5, 1.2)),
    (IdentityId.PJ_4, 4, PJ(-7.5, 1.2)),
    (IdentityId.CH_TTRR2, 3, CH(2, 1, 4, 3)),
    (IdentityId.CH_1, 5, CH(2, 1, 4, 3)),
    (IdentityId.CH_22, 5, CH(2, 1, 4, 3)),
    (IdentityId.CH_ch, 6, CH(2, 0, 4, 0)),
    (IdentityId.CH_2, 6, CH(2, 0, 4, 0)),
])
def test_identity_examples_pass(identity, n, params):
    ok, rep = passes(identity, n, params)
    assert ok, rep


@given(st.integers(1, 10), lams, phis)
def test_mp_111_property(n, lam, phi):
    assert passes(IdentityId.MP_111, n, MP(lam, phi))[0]


@given(st.integers(1, 10), lams, phis)
def test_mp_ll_property(n, lam, phi):
    assert passes(IdentityId.MP_LL, n, MP(lam, phi))[0]


@given(st.integers(1, 10), st.floats(-10, -1), st.floats(-5, 5))
def test_pj_properties(n, offset, b):
    params = PJ(-n + offset - 0.05, b)
    assert passes(IdentityId.PJ_1, n, params)[0]
    assert passes(IdentityId.PJ_4, n, params)[0]


@given(st.integers(0, 10), pos, imag, pos, imag)
def test_ch_general_properties(n, p, q, r, s):
    params = CH(p, q, r, s)
    for identity in (IdentityId.CH_TTRR2, IdentityId.CH_1, IdentityId.CH_22):
        assert passes(identity, n, params)[0]


@given(st.integers(0, 10), pos, pos)
def test_ch_symmetric_properties(n, p, r):
    params = CH(p, 0, r, 0)
    assert passes(IdentityId.CH_ch, n, params)[0]
    assert passes(IdentityId.CH_2, n, params)[0]


def test_ll_opposite_sign_fails():
    # with the other sign for A(x) the x^(n+2) terms do not cancel
    n, params = 4, MP(1.3, 0.8)
    with mpmath.workdps(50):
        lam, phi = params.validate()
        big_b, a_flipped = ll_coefficients(n, lam, phi, opposite_sign=True)
        up = params.shifted(1)
        lhs = mp_polynomial(n, params)
        rhs = big_b * mp_polynomial(n, up) + a_flipped * mp_polynomial(n + 1, up)
        assert rhs.degree == n + 2
        assert max(abs(c) for c in (lhs - rhs).coeffs) > 1e-3


def test_perturbed_lhs_detected():
    inst = build_identity(IdentityId.MP_111, 5, MP(1.2, 0.9))
    coeffs = list(inst.lhs.coeffs)
    k = max(range(len(coeffs)), key=lambda i: abs(coeffs[i]))
    coeffs[k] *= 1 + mpmath.mpf("1e-3")
    bad = dataclasses.replace(inst, lhs=RealPolynomial(tuple(coeffs)))
    assert residual_report(inst).passed
    assert not residual_report(bad).passed


# -------------------------------------------------------- completion points and U, V, W

def test_completion_point_examples():
    with mpmath.workdps(50):
        assert abs(completion_point("mp", 3, MP(1, "pi/4")) - 1) < 1e-40
    assert completion_point("pj-minus", 3, PJ(-7, 2)) == -0.5
    assert round(float(completion_point("ch-a", 5, CH(2, 1, 4, 3))), 3) == -0.636
    assert round(float(completion_point("ch-b", 5, CH(2, 1, 4, 3))), 3) == -3.727


def test_example_completion_points_are_rational():
    # a-shift A = -7/11, b-shift A = -41/11 at these parameters
    with mpmath.workdps(50):
        assert abs(completion_point("ch-a", 5, CH(2, 1, 4, 3)) + mpmath.mpf(7) / 11) < 1e-40
        assert abs(completion_point("ch-b", 5, CH(2, 1, 4, 3)) + mpmath.mpf(41) / 11) < 1e-40


@given(st.integers(0, 10), pos, pos, st.sampled_from(["ch-a", "ch-b"]))
def test_symmetric_completion_point_is_zero(n, p, r, shift):
    assert abs(completion_point(shift, n, CH(p, 0, r, 0))) < 1e-30


def test_unknown_shift():
    with pytest.raises(InvalidParams):
        completion_point("mp-up", 2, MP(1, 1))


@given(st.integers(0, 12), pos, imag, pos, imag, st.sampled_from("ab"))
def test_conjugate_structure_leakage(n, p, q, r, s, variant):
    leak = ch_uvw(n, CH(p, q, r, s), variant).imag_leakage()
    assert leak["v_over_u"] <= 1e-12 and leak["w_over_u"] <= 1e-12


@given(st.integers(0, 10), pos, pos)
def test_an_closed_form_matches_determinant_route(n, p, r):
    params = CH(p, 0, r, 0)
    with mpmath.workdps(50):
        uvw = ch_uvw(n, params, "a")
        via_det = uvw.D - uvw.w_over_u.real
        closed = ch_an_closed_form(n, mpmath.mpf(p), mpmath.mpf(r))
        ratio = ch_symmetric_ratio_constant(n, params, "a")
        assert abs(via_det - closed) <= 1e-30 * max(1, abs(closed))
        assert abs(ratio - closed) <= 1e-30 * max(1, abs(closed))


# -------------------------------------------------------- Christoffel cross-check

@pytest.mark.parametrize("variant", ["a", "b"])
def test_christoffel_example(variant):
    rep = christoffel_check(3, CH(2, 1, 4, 3), variant)
    assert rep.passed and rep.check == "christoffel"


def test_christoffel_symmetric_form():
    # det/U = -A_n p_n + x p_{n+1} when q = s = 0
    n, params = 2, CH(1, 0, 1, 0)
    assert christoffel_check(n, params, "a").passed
    with mpmath.workdps(50):
        det = christoffel_polynomial(n, params, "a")
        seq = ch_sequence(n + 1, params)
        one = mpmath.mpf(1)
        want = (-ch_an_closed_form(n, one, one)) * seq[n] + RealPolynomial((0, 1)) * seq[n + 1]
        assert len(det) == len(want.coeffs)
        assert all(abs(a - b) < 1e-40 for a, b in zip(det, want.coeffs))


def test_christoffel_perturbed_entry_detected(monkeypatch):
    original = identities._conjugate_values

    def perturbed(polys, alpha, beta):
        top, bot = original(polys, alpha, beta)
        top[2] *= 1 + mpmath.mpf("1e-3")
        return top, bot

    monkeypatch.setattr(identities, "_conjugate_values", perturbed)
    assert not christoffel_check(3, CH(2, 1, 4, 3), "a").passed


@given(st.integers(0, 8), pos, imag, pos, imag, st.sampled_from("ab"))
def test_christoffel_property(n, p, q, r, s, variant):
    assert christoffel_check(n, CH(p, q, r, s), variant).passed


def test_report_dict_shape():
    rep = residual_report(build_identity(IdentityId.PJ_4, 3, PJ(-8, 0.5)))
    d = rep.to_dict()
    assert d["id"] == "PJ_4" and d["params"]["family"] == "PJ" and d["passed"] is True
