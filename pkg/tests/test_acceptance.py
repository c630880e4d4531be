"""Acceptance criteria, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v`` (lines are repeated in the
terminal summary) or ``python tests/test_acceptance.py``.
"""
import math
import time
from functools import lru_cache

import mpmath
import numpy as np
import pytest

from mixedrec.cli import REFERENCE_EXAMPLES, fmt3
from mixedrec.config import DEFAULT_CONFIG
from mixedrec.families import CH, MP, PJ, ch_polynomial, family_polynomial, mp_polynomial, pj_polynomial
from mixedrec.interlace import verify_proposition
from mixedrec.roots import find_real_zeros
from mixedrec.sweeps import run_suite, summarize

RESULTS = []

COMPLETED = ("mp-i", "pj-i", "pj-ii", "conthahn1-i", "conthahn1-ii", "conthahn-i", "conthahn-ii")
ADJACENT = ("mp-ii", "pj-iii", "mp-half-pi")
CH_PROPS = ("conthahn1-i", "conthahn1-ii", "conthahn-i", "conthahn-ii")


def record(name, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def _example_mismatches(ex):
    bad = []
    zs = find_real_zeros(family_polynomial(ex["n"], ex["params"]))
    got = [fmt3(z) for z in zs.to_floats()]
    if got != [fmt3(z) for z in ex["p_zeros"]]:
        bad.append(f"p_n zeros {got}")
    for prop, A_want, merged_want in ex["shifts"]:
        cert = verify_proposition(prop, ex["n"], ex["params"])
        if not cert.ok or fmt3(cert.A) != fmt3(A_want):
            bad.append(f"{prop} A={fmt3(cert.A)} ok={cert.ok}")
        merged = [fmt3(z) for z in sorted(cert.details["g_zeros"] + [float(cert.A)])]
        if merged != [fmt3(z) for z in merged_want]:
            bad.append(f"{prop} zeros {merged}")
    return bad


# -------------------------------------------------------- criteria

def criterion_1():
    start = time.perf_counter()
    bad = _example_mismatches(REFERENCE_EXAMPLES[0])
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 1.0
    return ok, f"n=5 complex example, {len(bad)} mismatches {bad}, {elapsed:.2f} s (< 1 s)"


def criterion_2():
    bad = _example_mismatches(REFERENCE_EXAMPLES[1])
    return not bad, f"n=6 real example, {len(bad)} mismatches {bad}"


def criterion_3():
    start = time.perf_counter()
    entries = run_suite("identities", seed=7, count=200, n_max=15)
    elapsed = time.perf_counter() - start
    s = summarize(entries)
    worst = max(max(e.get("max_point_residual", 1.0), e.get("coeff_residual", 1.0)) for e in entries)
    ok = s["passed"] == len(entries) == 1800 and worst <= 1e-9 and elapsed < 60
    return ok, f"{s} over 9 x 200 draws, worst residual {worst:.2e} (<= 1e-9), {elapsed:.1f} s (< 60 s)"


@lru_cache(maxsize=None)
def proposition_sweep(prop):
    return tuple(run_suite("propositions", seed=7, count=100, n_max=12, items=[prop]))


def criterion_4(prop):
    entries = proposition_sweep(prop)
    s = summarize(entries)
    checked = [e for e in entries if e["status"] != "skipped"]
    good = [e for e in checked if e.get("ok") and e.get("case") in ("i1", "i2", "i3")]
    ok = len(good) == len(checked) and len(checked) > 0
    rate = s["skipped"] / len(entries)
    return ok, f"{prop}: {len(good)}/{len(checked)} completed certificates ok, skip rate {rate:.2%}"


def criterion_5(prop):
    entries = proposition_sweep(prop)
    s = summarize(entries)
    checked = [e for e in entries if e["status"] != "skipped"]
    good = [e for e in checked if e.get("ok") and e.get("kind") == "adjacent"]
    ok = len(good) == len(checked) and len(checked) > 0
    return ok, f"{prop}: {len(good)}/{len(checked)} adjacent certificates ok, {s['skipped']} skipped"


def criterion_6():
    # hand expansions: x + lam cot(phi), x + b/(a+1), x + q - p (q - s)/(p + r)
    rng = np.random.default_rng(606)
    worst = mpmath.mpf(0)
    with mpmath.workdps(DEFAULT_CONFIG.working_digits):
        for _ in range(50):
            lam, phi = rng.uniform(0.05, 5), rng.uniform(0.1, math.pi - 0.1)
            a = rng.uniform(-12, 4)
            while abs(a + 1) < 1e-3:
                a = rng.uniform(-12, 4)
            b = rng.uniform(-5, 5)
            p, q, r, s = rng.uniform(0.5, 5), rng.uniform(-4, 4), rng.uniform(0.5, 5), rng.uniform(-4, 4)
            cases = [
                (mp_polynomial(1, MP(lam, phi)), mpmath.mpf(lam) * mpmath.cot(phi)),
                (pj_polynomial(1, PJ(a, b)), mpmath.mpf(b) / (mpmath.mpf(a) + 1)),
                (ch_polynomial(1, CH(p, q, r, s)),
                 mpmath.mpf(q) - mpmath.mpf(p) * (mpmath.mpf(q) - s) / (mpmath.mpf(p) + r)),
            ]
            for poly, want in cases:
                rel = max(abs(poly.coeffs[0] - want), abs(poly.coeffs[1] - 1)) / max(1, abs(want))
                worst = max(worst, rel)
    return worst <= 1e-12, f"n=1 closed forms, 150 polynomials, worst relative error {float(worst):.2e} (<= 1e-12)"


def criterion_7():
    rng = np.random.default_rng(707)
    worst = 0.0
    count = 0
    for n in range(1, 16):
        for _ in range(3):
            for params in (MP(rng.uniform(0.05, 5), "pi/2"), CH(rng.uniform(0.5, 5), 0, rng.uniform(0.5, 5), 0)):
                zs = find_real_zeros(family_polynomial(n, params))
                z = zs.zeros
                asym = max(abs(z[i] + z[-1 - i]) for i in range(n))
                # span is 0 at n = 1; the single zero is then compared against 1e-10 absolutely
                worst = max(worst, float(asym / max(zs.span, 1)))
                count += 1
    return worst <= 1e-10, f"{count} zero sets (n <= 15), worst |z_i + z_(n+1-i)| / span {worst:.2e} (<= 1e-10)"


def criterion_8():
    entries = run_suite("christoffel", seed=7, count=50, n_max=8)
    s = summarize(entries)
    worst = max(max(e.get("max_point_residual", 1.0), e.get("coeff_residual", 1.0)) for e in entries)
    ok = s["passed"] == len(entries) == 100 and worst <= 1e-9
    return ok, f"both variants, 50 draws each: {s}, worst residual {worst:.2e} (<= 1e-9)"


def criterion_9():
    worst, count = 0.0, 0
    for prop in CH_PROPS:
        for e in proposition_sweep(prop):
            leak = e.get("imag_leakage")
            if leak is None:
                continue
            worst = max(worst, leak["v_over_u"], leak["w_over_u"])
            count += 1
    ok = count > 0 and worst <= 1e-12
    return ok, f"{count} CH draws from the proposition sweep, worst relative |Im(V/U)|, |Im(W/U)| {worst:.2e} (<= 1e-12)"


CRITERIA = (
    [("criterion 1", criterion_1), ("criterion 2", criterion_2), ("criterion 3", criterion_3)]
    + [(f"criterion 4 [{p}]", lambda p=p: criterion_4(p)) for p in COMPLETED]
    + [(f"criterion 5 [{p}]", lambda p=p: criterion_5(p)) for p in ADJACENT]
    + [("criterion 6", criterion_6), ("criterion 7", criterion_7), ("criterion 8", criterion_8),
       ("criterion 9", criterion_9)]
)


@pytest.mark.parametrize("name, check", CRITERIA, ids=[name for name, _ in CRITERIA])
def test_acceptance(name, check):
    ok, detail = check()
    assert record(name, ok, detail), detail


if __name__ == "__main__":
    failed = 0
    for name, check in CRITERIA:
        ok, detail = check()
        failed += not record(name, ok, detail)
    raise SystemExit(1 if failed else 0)
