"""Characteristic polynomial of multiplication by R and the reciprocal root bound.

The pipeline for one polynomial P (degree d >= 2, k variables):

1. ``R = d*P - sum X_i dP/dX_i``; at an interior critical point ``R = d*P``.
2. Matrix ``M`` of multiplication by R in the quotient algebra, entries in Z[s].
3. Traces of ``M**n`` and Newton's identities give ``chi(Y) = sum b[h] Y**(D-h)``.
4. The top s-degree coefficients of the b's form ``S(0, Y)``, which has
   ``R(z0)`` as a root.  A Cauchy bound on the reversed polynomial bounds
   ``1/R(z0)`` from above.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

from .arith import ONE, SPoly, spoly_sum
from .errors import NonIntegralCoefficient, TraceBoundViolation
from .multipoly import MultiPoly, bitsize, build_R, total_degree
from .quotient import (
    DEFAULT_MAX_DIM,
    MonomialBasisU,
    MultMatrix,
    ReductionTable,
    layer_matmul,
    layer_trace,
    mult_matrix,
)


@dataclass(frozen=True)
class TraceSequence:
    """``tr[n] = trace(M**n)``; ``tr[0]`` is the dimension."""

    tr: tuple[SPoly, ...]

    def __getitem__(self, n: int) -> SPoly:
        return self.tr[n]

    def __len__(self):
        return len(self.tr) - 1


@dataclass(frozen=True)
class CharPolyData:
    """``b[h]`` is the coefficient of ``Y**(dim - h)`` in ``det(Y*I - M)``."""

    b: tuple[SPoly, ...]
    l0: int
    h1: int
    s0coeffs: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.b) - 1


# --- coefficient estimates ----------------------------------------------------

def reduction_coeff_bound(l: int, k: int, d: int, tau: int) -> int:
    """Upper bound ``2**(l*tau) * d * C(d+k,k+1)**(l-1)`` for ``l >= 1``."""
    return 2 ** (l * tau) * d * comb(d + k, k + 1) ** (l - 1)


def trace_coeff_bound(l: int, n: int, k: int, d: int, tau: int) -> int:
    return 2 ** ((l + n) * tau) * d ** (k + 1) * comb(d + k, k + 1) ** (l + n - 1)


def charpoly_coeff_bound(l: int, h: int, k: int, d: int, tau: int) -> int:
    return 2 ** ((l + h) * (tau + 1)) * d ** ((k + 1) * h) * comb(d + k, k + 1) ** l


def check_reduction_bounds(T: ReductionTable, tau: int) -> list[str]:
    """Degree and magnitude estimates for every memoized non-basis ``beta``."""
    out = []
    k, d = T.k, T.d
    for beta, vec in T.memo.items():
        if beta in T.basis:
            continue
        nb = sum(beta)
        for gamma, c in zip(T.basis, vec):
            if not c:
                continue
            ng = sum(gamma)
            if ng >= nb:
                out.append(f"c[{beta},{gamma}] nonzero with |gamma| >= |beta|")
                continue
            if c.degree > nb - ng:
                out.append(f"deg c[{beta},{gamma}] = {c.degree} > {nb - ng}")
            if c[0] != 0:
                out.append(f"c[{beta},{gamma}] has constant term {c[0]}")
            for l in range(1, len(c)):
                if abs(c[l]) > reduction_coeff_bound(l, k, d, tau):
                    out.append(f"|c[{beta},{gamma},{l}]| = {abs(c[l])} too large")
    return out


def check_trace_bounds(tr: TraceSequence, k: int, d: int, tau: int) -> list[str]:
    out = []
    for n in range(1, len(tr) + 1):
        t = tr[n]
        if t.degree > n * (d - 1):
            out.append(f"deg tr[{n}] = {t.degree} > {n * (d - 1)}")
        for l, v in enumerate(t):
            if abs(v) > trace_coeff_bound(l, n, k, d, tau):
                out.append(f"|tr[{n}]_{l}| = {abs(v)} too large")
    return out


def check_charpoly_bounds(c: CharPolyData, k: int, d: int, tau: int) -> list[str]:
    out = []
    if c.b[0] != ONE:
        out.append("b[0] != 1")
    for h in range(1, len(c.b)):
        bh = c.b[h]
        if bh.degree > h * (d - 1):
            out.append(f"deg b[{h}] = {bh.degree} > {h * (d - 1)}")
        for l, v in enumerate(bh):
            # strict for h >= 1
            if abs(v) >= charpoly_coeff_bound(l, h, k, d, tau):
                out.append(f"|b[{h}]_{l}| = {abs(v)} not below bound")
    return out


# --- operations ---------------------------------------------------------------

def power_traces(M: MultMatrix, n_max: int, params: Optional[tuple[int, int, int]] = None
                 ) -> TraceSequence:
    """Traces of ``M, M**2, ..., M**n_max`` by repeated exact multiplication.

    With ``params = (k, d, tau)`` the trace estimates are asserted and a
    :class:`TraceBoundViolation` is raised on failure.
    """
    base = M.layers()
    cur = base
    traces = [SPoly.const(M.dim), layer_trace(cur)]
    for _ in range(2, n_max + 1):
        cur = layer_matmul(cur, base)
        while len(cur) > 1 and not cur[-1].any():
            cur.pop()
        traces.append(layer_trace(cur))
    seq = TraceSequence(tuple(traces[: n_max + 1]))
    if params is not None:
        bad = check_trace_bounds(seq, *params)
        if bad:
            raise TraceBoundViolation("; ".join(bad[:5]))
    return seq


def newton_charpoly(tr: TraceSequence, dim: int) -> CharPolyData:
    """Coefficients of the characteristic polynomial from power traces.

    ``b[h] = -(1/h) * sum_{n=1..h} tr[n] * b[h-n]``; each division is exact
    because the matrix has entries in Z[s].
    """
    if len(tr) < dim:
        raise ValueError(f"need {dim} traces, got {len(tr)}")
    b = [ONE]
    for h in range(1, dim + 1):
        acc = spoly_sum(tr[n] * b[h - n] for n in range(1, h + 1))
        try:
            b.append(-acc.exact_div(h))
        except ArithmeticError as exc:
            raise NonIntegralCoefficient(f"b[{h}] is not integral: {exc}") from None
    l0 = max(p.degree for p in b)
    s0 = tuple(p[l0] for p in b)
    h1 = max(h for h, v in enumerate(s0) if v != 0)
    return CharPolyData(tuple(b), l0, h1, s0)


def extract_S0(c: CharPolyData) -> tuple[int, ...]:
    """``S(0, Y)`` as integer coefficients, lowest power of Y first."""
    return tuple(reversed(c.s0coeffs))


def cauchy_reciprocal_bound(c: CharPolyData) -> Optional[Fraction]:
    """Upper bound on ``1/y`` over the nonzero roots y of ``S(0, Y)``.

    The reciprocals are roots of ``sum_h s0[h] Y**h`` whose leading
    coefficient is ``s0[h1]``, so the classical Cauchy bound applies.  ``None``
    when ``h1 == 0`` (no nonzero root).
    """
    if c.h1 == 0:
        return None
    lead = abs(c.s0coeffs[c.h1])
    return max(Fraction(abs(c.s0coeffs[h]), lead) for h in range(c.h1)) + 1


@dataclass
class InteriorAnalysis:
    P: MultiPoly
    k: int
    d: int
    tau: int
    R: MultiPoly
    table: ReductionTable
    matrix: MultMatrix
    traces: TraceSequence
    charpoly: CharPolyData
    cauchy: Optional[Fraction]
    bound: Optional[Fraction]
    violations: list[str] = field(default_factory=list)

    @property
    def S0(self) -> tuple[int, ...]:
        return extract_S0(self.charpoly)


def interior_analysis(P: MultiPoly, max_dim: int = DEFAULT_MAX_DIM, check: bool = True
                      ) -> InteriorAnalysis:
    """Run the whole interior pipeline and keep every intermediate object.

    With ``check`` the coefficient estimates for the reduction table, traces
    and characteristic polynomial are verified and a violation raises.
    """
    k, d = P.nvars, total_degree(P)
    if k < 1 or d < 2:
        raise ValueError(f"interior pipeline needs k >= 1 and degree >= 2 (k={k}, d={d})")
    tau = bitsize(P)
    R = build_R(P, d)
    basis = MonomialBasisU(k, d, max_dim)
    table = ReductionTable(P, d, basis=basis)
    M = mult_matrix(table, basis, R)
    traces = power_traces(M, len(basis))
    cp = newton_charpoly(traces, len(basis))

    violations: list[str] = []
    if check:
        violations += check_reduction_bounds(table, tau)
        violations += check_trace_bounds(traces, k, d, tau)
        violations += check_charpoly_bounds(cp, k, d, tau)
        if cp.l0 > (len(basis) - 1) * (d - 1) and any(cp.s0coeffs[:-1]):
            violations.append("l0 exceeds (d^k-1)(d-1) but lower b's survive")
        if violations:
            raise TraceBoundViolation("; ".join(violations[:5]))

    cauchy = cauchy_reciprocal_bound(cp)
    bound = None if cauchy is None else 1 / (d * cauchy)
    return InteriorAnalysis(P, k, d, tau, R, table, M, traces, cp, cauchy, bound, violations)


def interior_bound(P: MultiPoly, max_dim: int = DEFAULT_MAX_DIM, check: bool = True
                   ) -> Optional[Fraction]:
    """Lower bound for ``P(z0)`` at any interior minimizer, or ``None``.

    Valid when the minimum of P over the simplex is attained only in the
    interior.
    """
    return interior_analysis(P, max_dim, check).bound
