"""Randomized invariant suites shared by the CLI ``selftest`` command."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .bounds import (
    ClosedFormParams,
    certified_lower_bound,
    closed_form_full,
    closed_form_simplified,
    theorem_induction_check,
)
from .charpoly import interior_analysis
from .errors import SimplexBoundError
from .multipoly import MultiPoly
from .oracle import GridSpec, direct_charpoly, grid_min
from .quotient import verify_quotient_consistency

SCALES = {
    # instances per suite, max k, max d, max tau, grid denominator
    "quick": dict(n=12, kmax=2, dmax=3, taumax=3, grid=20),
    "full": dict(n=60, kmax=2, dmax=4, taumax=4, grid=100),
}


def random_poly(rng: random.Random, k: int, d: int, tau: int, density: float = 0.6) -> MultiPoly:
    """Random P with total degree exactly d and coefficients below ``2**tau``."""
    bound = 2 ** tau - 1
    terms = {}
    for alpha in itertools.product(range(d + 1), repeat=k):
        if sum(alpha) <= d and rng.random() < density:
            terms[alpha] = rng.choice([-1, 1]) * rng.randint(1, bound)
    top = [0] * k
    top[rng.randrange(k)] = d
    terms.setdefault(tuple(top), rng.choice([-1, 1]) * rng.randint(1, bound))
    return MultiPoly(k, terms)


def random_positive_poly(rng: random.Random, k: int, half_degree: int, tau: int) -> MultiPoly:
    """``Q**2 + c`` with random Q; positive everywhere by construction."""
    Q = random_poly(rng, k, half_degree, tau)
    return Q * Q + rng.randint(1, 3)


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0


@dataclass
class SelftestReport:
    scale: str
    suites: list[SuiteResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.failed == 0 for s in self.suites)


def _run(name: str, cases, body: Callable) -> SuiteResult:
    res = SuiteResult(name)
    start = time.perf_counter()
    for case in cases:
        try:
            problem = body(case)
        except SimplexBoundError as exc:
            problem = f"{type(exc).__name__}: {exc}"
        if problem:
            res.failed += 1
            res.failures.append(f"{case}: {problem}")
        else:
            res.passed += 1
    res.seconds = time.perf_counter() - start
    return res


def run_selftest(scale: str = "quick", seed: int = 20240601) -> SelftestReport:
    if scale not in SCALES:
        raise ValueError(f"unknown scale {scale!r}; choose from {sorted(SCALES)}")
    cfg = SCALES[scale]
    rng = random.Random(seed)
    report = SelftestReport(scale)

    instances = []
    for _ in range(cfg["n"]):
        k = rng.randint(1, cfg["kmax"])
        d = rng.randint(2, cfg["dmax"])
        tau = rng.randint(1, cfg["taumax"])
        instances.append(random_poly(rng, k, d, tau))

    def estimates_case(P):
        interior_analysis(P, check=True)  # raises on any estimate violation
        return ""

    report.suites.append(_run("coefficient-estimates", instances, estimates_case))

    def oracle_case(P):
        a = interior_analysis(P, check=False)
        verify_quotient_consistency(a.table, a.table.basis, P, a.d,
                                    extra_betas=[tuple([a.d + 1] * P.nvars)])
        if a.table.dim <= 9 and direct_charpoly(a.matrix) != a.charpoly.b:
            return "Newton and cofactor characteristic polynomials differ"
        return ""

    report.suites.append(_run("oracle-equivalence", instances, oracle_case))

    positives = []
    for _ in range(max(4, cfg["n"] // 3)):
        k = rng.randint(1, cfg["kmax"])
        positives.append(random_positive_poly(rng, k, rng.randint(1, 2), rng.randint(1, 2)))

    def soundness_case(P):
        rep = certified_lower_bound(P)
        gm, _ = grid_min(P, GridSpec(P.nvars, cfg["grid"]))
        if not 0 < rep.global_bound <= gm:
            return f"bound {rep.global_bound} vs grid {gm}"
        return ""

    report.suites.append(_run("soundness", positives, soundness_case))

    grid = [ClosedFormParams(k, d, tau) for d in range(1, 6) for k in range(1, 4) for tau in range(1, 9)]

    def closed_case(p):
        return "" if closed_form_simplified(p) <= closed_form_full(p) else "simplified > full"

    report.suites.append(_run("closed-forms", grid, closed_case))

    def induction_case(_):
        rep = theorem_induction_check(range(2, 5), range(1, 4), range(1, 9))
        return "" if rep.ok else f"violations {rep.violations}"

    report.suites.append(_run("face-step-inequality", [None], induction_case))
    return report
