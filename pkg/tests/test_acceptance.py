"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

import random
import time
from fractions import Fraction

import pytest

from simplexbound.arith import SPoly
from simplexbound.bounds import (
    ClosedFormParams,
    certified_lower_bound,
    closed_form_full,
    closed_form_interior,
    closed_form_simplified,
    example_family,
    example_family_upper_bound,
    theorem_induction_check,
)
from simplexbound.charpoly import (
    check_charpoly_bounds,
    check_reduction_bounds,
    check_trace_bounds,
    extract_S0,
    interior_analysis,
)
from simplexbound.multipoly import parse_poly
from simplexbound.oracle import GridSpec, direct_charpoly, grid_min
from simplexbound.quotient import MultMatrix, verify_quotient_consistency
from simplexbound.selftest import random_poly, random_positive_poly

SEED = 31337


def S(*c):
    return SPoly(c)


def _random_instances(n, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        k = rng.randint(1, 2)
        out.append(random_poly(rng, k, rng.randint(2, 4), rng.randint(1, 4)))
    return out


def test_criterion_1_worked_instance(acceptance_log):
    start = time.perf_counter()
    P = parse_poly("2*X1^2 - 2*X1 + 1")
    a = interior_analysis(P)
    rep = certified_lower_bound(P)
    elapsed = time.perf_counter() - start
    checks = {
        "M_R": a.matrix == MultMatrix([[S(2), S(0, -4)], [S(-2), S(2, 8)]]),
        "tr1": a.traces[1] == S(4, 8),
        "b": a.charpoly.b == (S(1), S(-4, -8), S(4, 8)),
        "l0": a.charpoly.l0 == 1,
        "S0": extract_S0(a.charpoly) == (8, -8, 0),
        "cauchy": a.cauchy == 2,
        "interior": a.bound == Fraction(1, 4),
        "global": rep.global_bound == Fraction(1, 4),
        "direct": direct_charpoly(a.matrix) == a.charpoly.b,
        "time": elapsed < 1.0,
    }
    bad = [k for k, v in checks.items() if not v]
    acceptance_log(1, "worked micro-instance reproduced exactly", not bad,
                   f"{elapsed:.3f}s" + (f"; failed {bad}" if bad else ""))
    assert not bad


def test_criterion_2_closed_forms(acceptance_log):
    start = time.perf_counter()
    ok = (closed_form_full(ClosedFormParams(1, 2, 1)) == Fraction(1, 36864)
          and closed_form_simplified(ClosedFormParams(1, 2, 1)) == Fraction(1, 2 ** 16)
          and closed_form_full(ClosedFormParams(2, 2, 1)) == Fraction(1, 2 ** 36))
    violations = [(k, d, tau) for d in range(1, 6) for k in range(1, 4) for tau in range(1, 9)
                  if closed_form_simplified(ClosedFormParams(k, d, tau))
                  > closed_form_full(ClosedFormParams(k, d, tau))]
    elapsed = time.perf_counter() - start
    passed = ok and not violations and elapsed < 1.0
    acceptance_log(2, "closed-form values and simplified <= full on 120-point grid", passed,
                   f"{elapsed:.3f}s, {len(violations)} violations")
    assert passed


def test_criterion_3_coefficient_estimates(acceptance_log):
    start = time.perf_counter()
    instances = _random_instances(60, SEED)
    violations = []
    counted = 0
    for P in instances:
        a = interior_analysis(P, check=False)
        k, d, tau = a.k, a.d, a.tau
        # a few monomials beyond those the matrix of R needed
        for extra in ((d + 1,) * k, (2 * d,) * k, (3 * d - 1,) + (0,) * (k - 1)):
            a.table.reduce(extra)
        violations += check_reduction_bounds(a.table, tau)
        violations += check_trace_bounds(a.traces, k, d, tau)
        violations += check_charpoly_bounds(a.charpoly, k, d, tau)
        counted += sum(len(v) for v in a.table.memo.values()) + len(a.traces) + len(a.charpoly.b)
    elapsed = time.perf_counter() - start
    passed = not violations and elapsed < 300 and len(instances) >= 50
    acceptance_log(3, "coefficient estimates on 60 random instances", passed,
                   f"{counted} quantities checked, {len(violations)} violations, {elapsed:.1f}s")
    assert passed, violations[:5]


def test_criterion_4_oracle_equivalence(acceptance_log):
    start = time.perf_counter()
    instances = _random_instances(60, SEED + 1)
    failures = []
    direct_checked = 0
    for P in instances:
        a = interior_analysis(P, check=False)
        rep = verify_quotient_consistency(a.table, a.table.basis, P, a.d,
                                          extra_betas=[(a.d + 1,) * P.nvars, (2 * a.d + 1,) * P.nvars],
                                          raise_on_failure=False)
        failures += rep.failures
        if a.table.dim <= 9:
            direct_checked += 1
            if direct_charpoly(a.matrix) != a.charpoly.b:
                failures.append(f"charpoly mismatch for {P}")
    elapsed = time.perf_counter() - start
    passed = not failures and elapsed < 300 and direct_checked > 0
    acceptance_log(4, "Newton = cofactor, commutation, relations, pivot independence", passed,
                   f"{direct_checked} determinant comparisons, {len(failures)} failures, {elapsed:.1f}s")
    assert passed, failures[:5]


def test_criterion_5_soundness(acceptance_log):
    start = time.perf_counter()
    rng = random.Random(SEED + 2)
    failures = []
    n = 0
    for _ in range(24):
        k = rng.randint(1, 2)
        P = random_positive_poly(rng, k, rng.randint(1, 2), rng.randint(1, 3))
        rep = certified_lower_bound(P)
        n += 1
        for N in (50, 100):
            gm, _ = grid_min(P, GridSpec(k, N))
            if not 0 < rep.global_bound <= gm:
                failures.append(f"{P}: bound {rep.global_bound} vs grid({N}) {gm}")
        for c in rep.contributions:
            if c.kind == "interior" and c.value is not None:
                if c.value < closed_form_interior(ClosedFormParams(*c.params)):
                    failures.append(f"{P}: node {c.face.describe()} below closed form")
    elapsed = time.perf_counter() - start
    passed = not failures and elapsed < 600
    acceptance_log(5, "0 < certified bound <= grid minimum (N=50,100) on Q^2+c instances", passed,
                   f"{n} instances, {len(failures)} failures, {elapsed:.1f}s")
    assert passed, failures[:5]


@pytest.mark.parametrize("k,d,tau", [(1, 4, 2), (1, 4, 4), (2, 4, 2)])
def test_criterion_6_example_family(acceptance_log, k, d, tau):
    start = time.perf_counter()
    rep = certified_lower_bound(example_family(k, d, tau))
    elapsed = time.perf_counter() - start
    ceiling = example_family_upper_bound(k, d, tau)
    passed = 0 < rep.global_bound <= ceiling and elapsed < 600
    acceptance_log(6, f"example family (k={k}, d={d}, tau={tau}) bound in (0, {ceiling}]", passed,
                   f"bound {rep.global_bound}, {elapsed:.2f}s")
    assert passed


def test_criterion_7_face_step_inequality(acceptance_log):
    rep = theorem_induction_check(range(2, 5), range(1, 4), range(1, 9))
    acceptance_log(7, "face-step inequality over d in [2,4], k in [1,3], tau in [1,8]", rep.ok,
                   f"{rep.checked} comparisons, {len(rep.violations)} violations")
    assert rep.ok, rep.violations
