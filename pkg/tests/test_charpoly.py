import random
from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from simplexbound.arith import SPoly
from simplexbound.bounds import ClosedFormParams, closed_form_interior
from simplexbound.charpoly import (
    CharPolyData,
    TraceSequence,
    cauchy_reciprocal_bound,
    check_charpoly_bounds,
    check_trace_bounds,
    extract_S0,
    interior_analysis,
    interior_bound,
    newton_charpoly,
    power_traces,
)
from simplexbound.errors import NonIntegralCoefficient, TraceBoundViolation
from simplexbound.multipoly import abs_coeff_sum, bitsize, build_R, parse_poly, total_degree
from simplexbound.quotient import MultMatrix
from simplexbound.selftest import random_poly


def S(*c):
    return SPoly(c)


WORKED_M = MultMatrix([[S(2), S(0, -4)], [S(-2), S(2, 8)]])


def test_traces_worked():
    tr = power_traces(WORKED_M, 2)
    assert tr[1] == S(4, 8)
    # diagonal of M^2 is 4+8s and 4+40s+64s^2
    assert tr[2] == S(8, 48, 64)


def test_traces_identity():
    tr = power_traces(MultMatrix.identity(3), 3)
    assert all(tr[n] == S(3) for n in range(1, 4))


def test_power_traces_asserts_estimates():
    with pytest.raises(TraceBoundViolation):
        power_traces(MultMatrix([[S(10 ** 6)]]), 1, params=(1, 2, 1))


def test_newton_worked():
    cp = newton_charpoly(power_traces(WORKED_M, 2), 2)
    assert cp.b == (S(1), S(-4, -8), S(4, 8))
    assert (cp.l0, cp.h1, cp.s0coeffs) == (1, 2, (0, -8, 8))


def test_newton_one_by_one():
    cp = newton_charpoly(TraceSequence((S(1), S(7, 1))), 1)
    assert cp.b == (S(1), S(-7, -1))


def test_newton_scaled_identity():
    cp = newton_charpoly(power_traces(MultMatrix.identity(2, 2), 2), 2)
    assert cp.b == (S(1), S(-4), S(4))
    assert cp.l0 == 0
    assert extract_S0(cp) == (4, -4, 1)  # (Y - 2)^2


def test_newton_rejects_inconsistent_traces():
    with pytest.raises(NonIntegralCoefficient):
        newton_charpoly(TraceSequence((S(2), S(1), S())), 2)


def test_extract_S0():
    cp = newton_charpoly(power_traces(WORKED_M, 2), 2)
    assert extract_S0(cp) == (8, -8, 0)  # -8Y + 8
    cp = newton_charpoly(TraceSequence((S(1), S(2, 3))), 1)
    assert cp.l0 == 1 and extract_S0(cp) == (-3, 0)


def test_cauchy_values():
    cp = newton_charpoly(power_traces(WORKED_M, 2), 2)
    assert cauchy_reciprocal_bound(cp) == 2
    sq = CharPolyData((S(1), S(-4), S(4)), 0, 2, (1, -4, 4))
    assert cauchy_reciprocal_bound(sq) == 2
    flat = CharPolyData((S(5), S(), S()), 0, 0, (5, 0, 0))
    assert cauchy_reciprocal_bound(flat) is None


def test_cauchy_bounds_reciprocal_roots():
    # S(0,Y) = 3Y^2 - 7Y + 2 has roots 2 and 1/3; reciprocals 1/2 and 3
    cp = CharPolyData((S(3), S(-7), S(2)), 0, 2, (3, -7, 2))
    B = cauchy_reciprocal_bound(cp)
    assert B == Fraction(7, 2) + 1
    assert all(r <= B for r in (Fraction(1, 2), 3))


def test_interior_bound_values(worked):
    assert interior_bound(worked) == Fraction(1, 4)
    assert interior_bound(parse_poly("X1^2 + 1")) == Fraction(1, 4)


def test_interior_requires_degree_two():
    with pytest.raises(ValueError):
        interior_bound(parse_poly("X1 + 2"))


def test_interior_analysis_keeps_intermediates(worked):
    a = interior_analysis(worked)
    assert a.R == parse_poly("-2*X1 + 2")
    assert a.matrix == WORKED_M
    assert a.S0 == (8, -8, 0)
    assert a.cauchy == 2


@pytest.mark.parametrize("seed", range(8))
def test_newton_matches_sympy_charpoly(seed):
    rng = random.Random(100 + seed)
    k = 1 + seed % 2
    P = random_poly(rng, k, rng.randint(2, 3), 3)
    a = interior_analysis(P, check=False)
    s, Y = sympy.symbols("s Y")
    M = sympy.Matrix(a.matrix.dim, a.matrix.dim,
                     lambda r, c: sum(v * s ** l for l, v in enumerate(a.matrix[r, c])))
    chi = sympy.Poly((Y * sympy.eye(M.rows) - M).det(method="berkowitz").expand(), Y)
    D = M.rows
    for h, bh in enumerate(a.charpoly.b):
        expected = sympy.Poly(chi.coeff_monomial(Y ** (D - h)), s)
        got = sum(v * s ** l for l, v in enumerate(bh))
        assert sympy.expand(expected.as_expr() - got) == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_trace_and_charpoly_estimates(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 2)
    d = rng.randint(2, 4 if k == 1 else 3)
    P = random_poly(rng, k, d, rng.randint(1, 4))
    a = interior_analysis(P, check=False)
    tau = bitsize(P)
    assert check_trace_bounds(a.traces, k, d, tau) == []
    assert check_charpoly_bounds(a.charpoly, k, d, tau) == []
    dim = d ** k
    if a.charpoly.l0 > (dim - 1) * (d - 1):
        assert not any(a.charpoly.s0coeffs[:-1])
    if a.bound is not None:
        assert a.bound >= closed_form_interior(ClosedFormParams(k, d, tau))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_power_sum_of_R(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 3)
    P = random_poly(rng, k, rng.randint(1, 3), rng.randint(1, 4))
    d, tau = total_degree(P), bitsize(P)
    R = build_R(P, d)
    base = 2 ** tau * comb(d + k, k + 1)
    for n in range(1, 4):
        assert abs_coeff_sum(R ** n) <= base ** n


def test_charpoly_checker_flags_violations():
    cp = CharPolyData((S(2), S(1, 2, 3, 4)), 3, 1, (0, 4))
    problems = check_charpoly_bounds(cp, 1, 2, 1)
    assert "b[0] != 1" in problems
    assert any(p.startswith("deg b[1]") for p in problems)
