"""Independent checks used to cross-validate the bound pipeline.

None of these share code paths with the computations they verify: the grid
evaluates P with integer arithmetic on lattice points, the determinant uses
cofactor expansion instead of traces, and the membership check finds roots
numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import mpmath

from .arith import SPoly
from .errors import DimensionMismatch, DimensionTooLarge, RootFindingFailure
from .multipoly import MultiPoly, partial_derivative, total_degree
from .quotient import MultMatrix, ReductionTable


@dataclass(frozen=True)
class GridSpec:
    k: int
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("grid denominator must be positive")


def _compositions(k: int, budget: int):
    """All k-tuples of non-negative ints with sum <= budget."""
    if k == 0:
        yield ()
        return
    for m in range(budget + 1):
        for rest in _compositions(k - 1, budget - m):
            yield (m,) + rest


def grid_min(P: MultiPoly, g: GridSpec) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Exact minimum of P over the lattice points ``m/N`` of the simplex."""
    if g.k != P.nvars:
        raise DimensionMismatch(f"grid is {g.k}-dimensional, P has {P.nvars} variables")
    N = g.N
    d = total_degree(P)
    # P(m/N) * N**d, all integers
    scaled = [(alpha, c * N ** (d - sum(alpha))) for alpha, c in P.terms.items()]
    best = None
    best_m = None
    for m in _compositions(g.k, N):
        v = 0
        for alpha, c in scaled:
            for mi, e in zip(m, alpha):
                if e:
                    c *= mi ** e
            v += c
        if best is None or v < best:
            best, best_m = v, m
    point = tuple(Fraction(mi, N) for mi in best_m)
    return Fraction(best, N ** d), point


# --- characteristic polynomial by cofactor expansion ---------------------------------

# bivariate polynomials in (Y, s) as {(ydeg, sdeg): coeff}
BiPoly = dict


def _bi_mul(a: BiPoly, b: BiPoly) -> BiPoly:
    out: BiPoly = {}
    for (y1, s1), c1 in a.items():
        for (y2, s2), c2 in b.items():
            key = (y1 + y2, s1 + s2)
            out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _bi_add_into(acc: BiPoly, a: BiPoly, sign: int) -> None:
    for key, c in a.items():
        acc[key] = acc.get(key, 0) + sign * c


MAX_DIRECT_DIM = 9


def direct_charpoly(M: MultMatrix, max_dim: int = MAX_DIRECT_DIM) -> tuple[SPoly, ...]:
    """``det(Y*I - M)`` by Laplace expansion along rows.

    Sub-determinants are memoized on the set of remaining columns, which keeps
    the expansion at ``2**n * n`` minors.  Returns ``b[h]`` = coefficient of
    ``Y**(n-h)`` for ``h = 0..n``.
    """
    n = M.dim
    if n > max_dim:
        raise DimensionTooLarge(f"dimension {n} exceeds {max_dim}")
    entries: list[list[BiPoly]] = []
    for r in range(n):
        row = []
        for c in range(n):
            e = {(0, l): -v for l, v in enumerate(M[r, c]) if v}
            if r == c:
                e[(1, 0)] = e.get((1, 0), 0) + 1
            row.append(e)
        entries.append(row)

    @lru_cache(maxsize=None)
    def minor(cols: frozenset) -> tuple:
        r = n - len(cols)
        if not cols:
            return (((0, 0), 1),)
        acc: BiPoly = {}
        ordered = sorted(cols)
        for pos, c in enumerate(ordered):
            if not entries[r][c]:
                continue
            sub = dict(minor(cols - {c}))
            _bi_add_into(acc, _bi_mul(entries[r][c], sub), -1 if pos % 2 else 1)
        return tuple((k, v) for k, v in acc.items() if v)

    det = dict(minor(frozenset(range(n))))
    out = []
    for h in range(n + 1):
        y = n - h
        sdeg = max((s for (yy, s) in det if yy == y), default=-1)
        out.append(SPoly([det.get((y, l), 0) for l in range(sdeg + 1)]))
    return tuple(out)


# --- numeric membership check ------------------------------------------------------

@dataclass
class MembershipResidual:
    residual: mpmath.mpf
    loss_digits: int
    roots: list

    def __float__(self):
        return float(self.residual)


def numeric_membership_check(P: MultiPoly, beta: Sequence[int], t0, precision: int = 30,
                             table: Optional[ReductionTable] = None) -> MembershipResidual:
    """Residual of ``X**beta - sum_gamma c[beta,gamma](1/t0) X**gamma`` at the roots of F_1.

    Only univariate P is supported.  ``loss_digits`` estimates cancellation
    from the size of the largest term compared with 1.
    """
    if P.nvars != 1:
        raise DimensionMismatch("numeric membership check is univariate only")
    t0 = Fraction(t0)
    if t0 == 0:
        raise ValueError("t0 must be nonzero")
    T = table or ReductionTable(P)
    d = T.d
    coords = T.reduce(tuple(beta))
    # F_1(t0, X) = P'(X) + t0 X^d, highest degree first for polyroots
    dp = partial_derivative(P, 1)
    coeffs = [0] * (d + 1)
    for (e,), c in dp.terms.items():
        coeffs[e] += c
    with mpmath.workdps(precision):
        mcoeffs = [mpmath.mpf(c) for c in coeffs]
        mcoeffs[d] += mpmath.mpf(t0.numerator) / t0.denominator
        try:
            roots = mpmath.polyroots(list(reversed(mcoeffs)), maxsteps=500, extraprec=4 * precision)
        except mpmath.libmp.libhyper.NoConvergence as exc:
            raise RootFindingFailure(str(exc)) from None
        s0 = mpmath.mpf(t0.denominator) / t0.numerator
        cvals = [c(s0) if c else 0 for c in coords]
        worst = mpmath.mpf(0)
        scale = mpmath.mpf(1)
        for x in roots:
            lhs = x ** beta[0]
            rhs = sum(cv * x ** g[0] for cv, g in zip(cvals, T.basis) if cv)
            scale = max(scale, abs(lhs), *(abs(cv * x ** g[0]) for cv, g in zip(cvals, T.basis) if cv))
            worst = max(worst, abs(lhs - rhs))
        loss = int(mpmath.ceil(mpmath.log10(scale))) if scale > 1 else 0
    return MembershipResidual(worst, loss, roots)
