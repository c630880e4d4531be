"""Seeded parameter sweeps over identities and propositions.

Each cell (suite, item, draw) gets its own generator seeded from
``[seed, item index, draw]``, so results do not depend on the number of
worker processes or on execution order.
"""
from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .config import (DEFAULT_CONFIG, DegenerateU, InvalidParams, MixedRecError, PrecisionConfig,
                     SharedZeroSuspected)
from .families import CH, MP, PJ, mp_polynomial, params_to_dict
from .identities import IdentityId, build_identity, christoffel_check, residual_report
from .interlace import interlaces_adjacent, verify_proposition
from .roots import find_real_zeros

SUITES = ("identities", "propositions", "christoffel", "exploratory-mp-open-question")

COMPLETED_PROPS = ("mp-i", "pj-i", "pj-ii", "conthahn1-i", "conthahn1-ii", "conthahn-i", "conthahn-ii")
ADJACENT_PROPS = ("mp-ii", "pj-iii", "mp-half-pi")
PROPOSITION_ITEMS = COMPLETED_PROPS + ADJACENT_PROPS


def draw_mp(rng):
    lam = 0.0
    while lam <= 0.0:
        lam = rng.uniform(0.0, 5.0)
    return MP(lam, rng.uniform(0.1, math.pi - 0.1))


def draw_pj(rng, n, upper_offset=1.0):
    """a in (-n-10, -n-upper_offset), b in (-5, 5)."""
    return PJ(rng.uniform(-n - 10.0, -n - upper_offset), rng.uniform(-5.0, 5.0))


def draw_ch(rng, symmetric=False):
    p, r = rng.uniform(0.5, 5.0), rng.uniform(0.5, 5.0)
    if symmetric:
        return CH(p, 0.0, r, 0.0)
    return CH(p, rng.uniform(-4.0, 4.0), r, rng.uniform(-4.0, 4.0))


def draw_for(family: str, rng, n: int, symmetric: bool = False):
    if family == "MP":
        return draw_mp(rng)
    if family == "PJ":
        return draw_pj(rng, n)
    return draw_ch(rng, symmetric)


def cell_rng(seed: int, item_index: int, draw: int):
    return np.random.default_rng([seed, item_index, draw])


def draw_degree(rng, n_max: int, even: bool = False) -> int:
    if even:
        return 2 * int(rng.integers(1, n_max // 2 + 1))
    return int(rng.integers(1, n_max + 1))


# ---------------------------------------------------------------- cell runners

def identity_cell(item: str, draw: int, seed: int, n_max: int, config: PrecisionConfig) -> dict:
    identity = IdentityId(item)
    rng = cell_rng(seed, list(IdentityId).index(identity), draw)
    n = draw_degree(rng, n_max)
    symmetric = identity in (IdentityId.CH_ch, IdentityId.CH_2)
    params = draw_for(identity.family, rng, n, symmetric)
    entry = {"key": f"{item}/{draw:05d}", "suite": "identities"}
    try:
        report = residual_report(build_identity(identity, n, params, config), config=config)
    except DegenerateU as exc:
        return {**entry, "n": n, "params": params_to_dict(params), "status": "skipped", "reason": str(exc)}
    except MixedRecError as exc:
        return {**entry, "n": n, "params": params_to_dict(params), "status": "failed",
                "error": f"{type(exc).__name__}: {exc}"}
    return {**entry, **report.to_dict(), "status": "passed" if report.passed else "failed"}


def christoffel_cell(item: str, draw: int, seed: int, n_max: int, config: PrecisionConfig) -> dict:
    rng = cell_rng(seed, "ab".index(item), draw)
    n = int(rng.integers(0, n_max + 1))
    params = draw_ch(rng)
    entry = {"key": f"{item}/{draw:05d}", "suite": "christoffel", "variant": item}
    try:
        report = christoffel_check(n, params, item, config=config)
    except DegenerateU as exc:
        return {**entry, "n": n, "params": params_to_dict(params), "status": "skipped", "reason": str(exc)}
    return {**entry, **report.to_dict(), "status": "passed" if report.passed else "failed"}


def proposition_cell(item: str, draw: int, seed: int, n_max: int, config: PrecisionConfig) -> dict:
    rng = cell_rng(seed, PROPOSITION_ITEMS.index(item), draw)
    symmetric = item in ("conthahn-i", "conthahn-ii")
    n = draw_degree(rng, n_max, even=symmetric)
    family = "MP" if item.startswith("mp") else "PJ" if item.startswith("pj") else "CH"
    params = draw_for(family, rng, n, symmetric)
    entry = {"key": f"{item}/{draw:05d}", "suite": "propositions", "prop": item}
    try:
        cert = verify_proposition(item, n, params, config)
    except SharedZeroSuspected as exc:
        return {**entry, "n": n, "params": params_to_dict(params), "status": "skipped", "reason": str(exc)}
    except MixedRecError as exc:
        return {**entry, "n": n, "params": params_to_dict(params), "status": "failed",
                "error": f"{type(exc).__name__}: {exc}"}
    return {**entry, **cert.to_dict(), "status": "passed" if cert.ok else "failed"}


def exploratory_cell(item: str, draw: int, seed: int, n_max: int, config: PrecisionConfig) -> dict:
    """Do zeros of P_n^(l)(x; phi) and P_{n+1}^(l+1)(x; phi) interlace? Observation only."""
    rng = cell_rng(seed, 0, draw)
    n = draw_degree(rng, n_max)
    params = draw_mp(rng)
    entry = {"key": f"{item}/{draw:05d}", "suite": "exploratory-mp-open-question", "n": n,
             "params": params_to_dict(params), "status": "skipped"}
    try:
        small = find_real_zeros(mp_polynomial(n, params, config), config)
        big = find_real_zeros(mp_polynomial(n + 1, params.shifted(1), config), config)
        cert = interlaces_adjacent(small, big, config)
    except MixedRecError as exc:
        return {**entry, "observation": None, "error": f"{type(exc).__name__}: {exc}"}
    return {**entry, "observation": cert.ok, "violations": len(cert.violations)}


_RUNNERS = {
    "identities": (identity_cell, tuple(i.value for i in IdentityId)),
    "propositions": (proposition_cell, PROPOSITION_ITEMS),
    "christoffel": (christoffel_cell, ("a", "b")),
    "exploratory-mp-open-question": (exploratory_cell, ("mp-open",)),
}


def _run_cell(args):
    suite, item, draw, seed, n_max, config = args
    return _RUNNERS[suite][0](item, draw, seed, n_max, config)


def run_suite(suite: str, seed: int = 0, count: int = 10, n_max: int = 12,
              config: PrecisionConfig = DEFAULT_CONFIG, jobs: int = 1, items=None) -> list[dict]:
    """Run ``count`` draws for every item of ``suite``; entries sorted by cell key."""
    if suite not in _RUNNERS:
        raise InvalidParams(f"unknown suite {suite!r}; expected one of {SUITES}")
    if count < 1 or n_max < 1:
        raise InvalidParams("count and n_max must be >= 1")
    all_items = _RUNNERS[suite][1]
    items = all_items if items is None else tuple(items)
    unknown = set(items) - set(all_items)
    if unknown:
        raise InvalidParams(f"unknown items for {suite}: {sorted(unknown)}")
    cells = [(suite, item, d, seed, n_max, config) for item in items for d in range(count)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(_run_cell, cells, chunksize=max(1, len(cells) // (4 * jobs))))
    else:
        entries = [_run_cell(c) for c in cells]
    return sorted(entries, key=lambda e: e["key"])


def summarize(entries: list[dict]) -> dict:
    counts = {"passed": 0, "failed": 0, "skipped": 0}
    for e in entries:
        counts[e["status"]] += 1
    return counts


@dataclass
class RunReport:
    command: str
    config: dict
    entries: list = field(default_factory=list)
    wall_ms: float | None = None

    @property
    def summary(self) -> dict:
        return summarize(self.entries)

    def to_dict(self, timestamps: bool = True) -> dict:
        out = {"command": self.command, "config": self.config, "entries": self.entries,
               "summary": self.summary}
        if timestamps:
            out["wall_ms"] = self.wall_ms
        return out

    def to_json(self, timestamps: bool = True) -> str:
        return json.dumps(self.to_dict(timestamps), indent=2, sort_keys=True)


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = 1000 * (time.perf_counter() - self.start)
