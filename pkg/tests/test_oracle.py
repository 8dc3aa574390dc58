import random
from fractions import Fraction

import pytest

from simplexbound.arith import SPoly
from simplexbound.charpoly import interior_analysis
from simplexbound.errors import DimensionMismatch, DimensionTooLarge
from simplexbound.multipoly import MultiPoly, eval_rational, parse_poly
from simplexbound.oracle import GridSpec, direct_charpoly, grid_min, numeric_membership_check
from simplexbound.quotient import MultMatrix, ReductionTable
from simplexbound.selftest import random_poly


def S(*c):
    return SPoly(c)


def test_grid_min_worked(worked):
    value, point = grid_min(worked, GridSpec(1, 2))
    assert value == Fraction(1, 2) and point == (Fraction(1, 2),)


def test_grid_min_vertex():
    value, point = grid_min(parse_poly("X1 + X2 + 1"), GridSpec(2, 1))
    assert value == 1 and point == (0, 0)


def test_grid_min_constant():
    assert grid_min(MultiPoly.constant(2, 7), GridSpec(2, 5))[0] == 7


def test_grid_min_dimension_check(worked):
    with pytest.raises(DimensionMismatch):
        grid_min(worked, GridSpec(2, 3))


@pytest.mark.parametrize("seed", range(5))
def test_grid_min_matches_brute_force_fractions(seed):
    rng = random.Random(seed)
    P = random_poly(rng, 2, 3, 3)
    N = 6
    pts = [(Fraction(a, N), Fraction(b, N)) for a in range(N + 1) for b in range(N + 1 - a)]
    brute = min(eval_rational(P, p) for p in pts)
    value, point = grid_min(P, GridSpec(2, N))
    assert value == brute and eval_rational(P, point) == value


@pytest.mark.parametrize("seed", range(5))
def test_grid_refinement_is_monotone(seed):
    rng = random.Random(seed)
    P = random_poly(rng, rng.randint(1, 2), 4, 3)
    for N in (3, 5, 8):
        assert grid_min(P, GridSpec(P.nvars, 2 * N))[0] <= grid_min(P, GridSpec(P.nvars, N))[0]


def test_direct_charpoly_worked():
    M = MultMatrix([[S(2), S(0, -4)], [S(-2), S(2, 8)]])
    assert direct_charpoly(M) == (S(1), S(-4, -8), S(4, 8))


def test_direct_charpoly_trivial():
    assert direct_charpoly(MultMatrix.identity(2)) == (S(1), S(-2), S(1))
    assert direct_charpoly(MultMatrix.identity(3, 0)) == (S(1), S(), S(), S())


def test_direct_charpoly_guard():
    with pytest.raises(DimensionTooLarge):
        direct_charpoly(MultMatrix.identity(10))


@pytest.mark.parametrize("seed", range(10))
def test_direct_equals_newton(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 2)
    d = rng.randint(2, 3 if k == 2 else 9)
    P = random_poly(rng, k, d, rng.randint(1, 4))
    a = interior_analysis(P, check=False)
    assert direct_charpoly(a.matrix) == a.charpoly.b


def test_membership_worked(worked):
    res = numeric_membership_check(worked, (2,), Fraction(1, 10), precision=30)
    assert res.residual < 1e-20


def test_membership_basis_element_is_exact(worked):
    res = numeric_membership_check(worked, (1,), Fraction(1, 10))
    assert res.residual == 0


def test_membership_x_squared_plus_one():
    res = numeric_membership_check(parse_poly("X1^2 + 1"), (3,), Fraction(1, 7), precision=30)
    assert res.residual < 1e-20


def test_membership_high_power_reports_loss():
    P = parse_poly("X1^3 - 4*X1^2 + X1 + 3")
    res = numeric_membership_check(P, (9,), Fraction(1, 1000), precision=40)
    assert res.loss_digits > 0
    assert res.residual < 10.0 ** -(40 - res.loss_digits - 5)


def test_membership_univariate_only():
    with pytest.raises(DimensionMismatch):
        numeric_membership_check(parse_poly("X1*X2 + X1^2"), (2, 0), Fraction(1, 10))
