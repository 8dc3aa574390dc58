"""Normal forms in the deformed quotient algebra.

For a polynomial P of degree d in k variables the deformed system is
``F_i = dP/dX_i + t * X_i**d``.  Its leading terms ``t * X_i**d`` make the
monomials ``X**gamma`` with every ``gamma_i < d`` a basis of the quotient, and
``X_i**d`` rewrites to ``-s * dP/dX_i`` where ``s = 1/t``.  Every coordinate
that comes out of the rewriting is therefore a polynomial in ``s`` with
integer coefficients.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .arith import ONE, ZERO, SPoly, spoly_sum
from .errors import ConsistencyFailure, DimensionMismatch, SizeOverflow
from .multipoly import MultiPoly, partial_derivative, total_degree

DEFAULT_MAX_DIM = 4096

Exponent = tuple[int, ...]
Vector = tuple[SPoly, ...]


class MonomialBasisU:
    """Exponents ``gamma`` with ``0 <= gamma_i <= d-1``, ascending lex."""

    def __init__(self, k: int, d: int, max_dim: int = DEFAULT_MAX_DIM):
        if k < 1 or d < 1:
            raise ValueError(f"need k >= 1 and d >= 1, got k={k}, d={d}")
        if d ** k > max_dim:
            raise SizeOverflow(f"basis size {d}^{k} = {d ** k} exceeds cap {max_dim}")
        self.k = k
        self.d = d
        self.elements: list[Exponent] = list(itertools.product(range(d), repeat=k))
        self._index = {g: n for n, g in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, n: int) -> Exponent:
        return self.elements[n]

    def __contains__(self, beta) -> bool:
        return tuple(beta) in self._index

    def index(self, gamma: Sequence[int]) -> int:
        return self._index[tuple(gamma)]


def build_basis(k: int, d: int, max_dim: int = DEFAULT_MAX_DIM) -> MonomialBasisU:
    return MonomialBasisU(k, d, max_dim)


class ReductionTable:
    """Memoized coordinates of ``[X**beta]`` in the monomial basis.

    ``pivot`` selects which exceeding variable is rewritten first: the
    smallest index (default) or the largest.  The answer does not depend on
    it; the alternative only exists to check that.
    """

    def __init__(self, P: MultiPoly, d: Optional[int] = None, basis: Optional[MonomialBasisU] = None,
                 pivot: str = "smallest", max_dim: int = DEFAULT_MAX_DIM):
        if pivot not in ("smallest", "largest"):
            raise ValueError(f"unknown pivot rule {pivot!r}")
        self.P = P
        self.k = P.nvars
        self.d = total_degree(P) if d is None else d
        if self.d < total_degree(P):
            raise ValueError("d below the degree of P")
        self.basis = basis if basis is not None else MonomialBasisU(self.k, self.d, max_dim)
        self.pivot = pivot
        self.dim = len(self.basis)
        self._lock = threading.RLock()
        self.memo: dict[Exponent, Vector] = {}
        # X_i^d == sum_alpha rule[i][alpha] * s * X^alpha
        self.rules: list[list[tuple[Exponent, int]]] = []
        for i in range(1, self.k + 1):
            dp = partial_derivative(P, i)
            self.rules.append(sorted((a, -c) for a, c in dp.terms.items()))

    def unit(self, gamma: Exponent) -> Vector:
        vec = [ZERO] * self.dim
        vec[self.basis.index(gamma)] = ONE
        return tuple(vec)

    def _pivot_index(self, beta: Exponent) -> int:
        idx = [i for i, b in enumerate(beta) if b >= self.d]
        return idx[0] if self.pivot == "smallest" else idx[-1]

    def reduce(self, beta: Sequence[int]) -> Vector:
        beta = tuple(beta)
        if len(beta) != self.k:
            raise DimensionMismatch(f"exponent {beta} does not have {self.k} entries")
        got = self.memo.get(beta)
        if got is not None:
            return got
        with self._lock:
            return self._reduce(beta)

    def _reduce(self, beta: Exponent) -> Vector:
        got = self.memo.get(beta)
        if got is not None:
            return got
        if beta in self.basis:
            vec = self.unit(beta)
        else:
            i = self._pivot_index(beta)
            rest = list(beta)
            rest[i] -= self.d
            acc: list[list[int]] = [[] for _ in range(self.dim)]
            for alpha, c in self.rules[i]:
                sub = tuple(x + y for x, y in zip(alpha, rest))
                if sub in self.basis:
                    _accumulate(acc, self.basis.index(sub), (0, c))
                else:
                    for n, entry in enumerate(self._reduce(sub)):
                        if entry.coeffs:
                            _accumulate(acc, n, (0,) + tuple(c * x for x in entry.coeffs))
            vec = tuple(SPoly(a) for a in acc)
        self.memo[beta] = vec
        return vec

    def reduce_poly(self, g: MultiPoly, shift: Optional[Exponent] = None) -> Vector:
        """Coordinates of ``[X**shift * g]``."""
        if g.nvars != self.k:
            raise DimensionMismatch(f"polynomial has {g.nvars} variables, table has {self.k}")
        shift = shift or (0,) * self.k
        acc: list[list[int]] = [[] for _ in range(self.dim)]
        for alpha, c in g.terms.items():
            vec = self.reduce(tuple(x + y for x, y in zip(alpha, shift)))
            for n, entry in enumerate(vec):
                if entry.coeffs:
                    _accumulate(acc, n, tuple(c * x for x in entry.coeffs))
        return tuple(SPoly(a) for a in acc)

    def multiply(self, u: Vector, v: Vector) -> Vector:
        """Product of two quotient elements given by coordinates."""
        acc: list[list[int]] = [[] for _ in range(self.dim)]
        for a, ua in enumerate(u):
            if not ua:
                continue
            for b, vb in enumerate(v):
                if not vb:
                    continue
                coef = ua * vb
                ga, gb = self.basis[a], self.basis[b]
                for n, entry in enumerate(self.reduce(tuple(x + y for x, y in zip(ga, gb)))):
                    if entry.coeffs:
                        _accumulate(acc, n, (entry * coef).coeffs)
        return tuple(SPoly(a) for a in acc)


def _accumulate(acc: list[list[int]], n: int, coeffs: Sequence[int]) -> None:
    row = acc[n]
    if len(row) < len(coeffs):
        row.extend([0] * (len(coeffs) - len(row)))
    for l, c in enumerate(coeffs):
        row[l] += c


def reduce_monomial(T: ReductionTable, beta: Sequence[int]) -> Vector:
    return T.reduce(beta)


class MultMatrix:
    """Square matrix over Z[s]; ``entries[row][col]``, column = image of basis element."""

    def __init__(self, entries: Sequence[Sequence[SPoly]]):
        self.entries = tuple(tuple(row) for row in entries)
        self.dim = len(self.entries)
        if any(len(row) != self.dim for row in self.entries):
            raise DimensionMismatch("matrix is not square")

    @classmethod
    def from_columns(cls, columns: Sequence[Vector]) -> MultMatrix:
        n = len(columns)
        return cls([[columns[c][r] for c in range(n)] for r in range(n)])

    @classmethod
    def identity(cls, n: int, scale: int = 1) -> MultMatrix:
        one = SPoly.const(scale)
        return cls([[one if r == c else ZERO for c in range(n)] for r in range(n)])

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def __eq__(self, other):
        if not isinstance(other, MultMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        return f"MultMatrix({[list(map(str, row)) for row in self.entries]})"

    @property
    def degree(self) -> int:
        return max((len(e) for row in self.entries for e in row), default=0) - 1

    def trace(self) -> SPoly:
        return spoly_sum(self.entries[n][n] for n in range(self.dim))

    def layers(self) -> list[np.ndarray]:
        """Split into integer matrices by power of s: ``M = sum_l layers[l] * s**l``."""
        depth = max(self.degree + 1, 1)
        out = [np.zeros((self.dim, self.dim), dtype=object) for _ in range(depth)]
        for r, row in enumerate(self.entries):
            for c, e in enumerate(row):
                for l, v in enumerate(e.coeffs):
                    out[l][r, c] = v
        return out

    @classmethod
    def from_layers(cls, layers: Sequence[np.ndarray]) -> MultMatrix:
        n = layers[0].shape[0]
        return cls([[SPoly([int(L[r, c]) for L in layers]) for c in range(n)] for r in range(n)])

    def __matmul__(self, other: MultMatrix) -> MultMatrix:
        return MultMatrix.from_layers(layer_matmul(self.layers(), other.layers()))


def layer_matmul(A: Sequence[np.ndarray], B: Sequence[np.ndarray]) -> list[np.ndarray]:
    n = A[0].shape[0]
    out = [np.zeros((n, n), dtype=object) for _ in range(len(A) + len(B) - 1)]
    for i, Ai in enumerate(A):
        if not Ai.any():
            continue
        for j, Bj in enumerate(B):
            if Bj.any():
                out[i + j] += Ai.dot(Bj)
    return out


def layer_trace(layers: Sequence[np.ndarray]) -> SPoly:
    return SPoly([int(np.trace(L)) for L in layers])


def mult_matrix(T: ReductionTable, B: MonomialBasisU, g: MultiPoly) -> MultMatrix:
    """Matrix of multiplication by g; column gamma holds ``[g * X**gamma]``."""
    if g.nvars != T.k:
        raise DimensionMismatch(f"g has {g.nvars} variables, expected {T.k}")
    cols = [T.reduce_poly(g, shift=gamma) for gamma in B]
    return MultMatrix.from_columns(cols)


@dataclass
class ConsistencyReport:
    checks: dict[str, bool] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks[name] = self.checks.get(name, True) and passed
        if not passed:
            self.failures.append(f"{name}: {detail}" if detail else name)


def verify_quotient_consistency(T: ReductionTable, B: MonomialBasisU, P: MultiPoly, d: int,
                                extra_betas: Iterable[Sequence[int]] = (),
                                raise_on_failure: bool = True) -> ConsistencyReport:
    """Check commutation, vanishing of the F_i, and pivot independence."""
    report = ConsistencyReport()
    k = P.nvars

    xs = [mult_matrix(T, B, MultiPoly.variable(k, i)) for i in range(1, k + 1)]
    for i, j in itertools.combinations(range(k), 2):
        same = (xs[i] @ xs[j]) == (xs[j] @ xs[i])
        report.record("commutation", same, f"X{i + 1} and X{j + 1} do not commute")
    if k == 1:
        report.checks.setdefault("commutation", True)

    for i in range(1, k + 1):
        grad = T.reduce_poly(partial_derivative(P, i))
        top = [0] * k
        top[i - 1] = d
        lead = T.reduce(tuple(top))
        ok = all((g + l.mul_by_t()).is_zero() for g, l in zip(grad, lead))
        report.record("relations", ok, f"F_{i} does not vanish")

    other = ReductionTable(P, d, basis=B, pivot="largest" if T.pivot == "smallest" else "smallest")
    betas = list(T.memo) + [tuple(b) for b in extra_betas]
    for beta in betas:
        ok = T.reduce(beta) == other.reduce(beta)
        report.record("pivot", ok, f"beta={beta}")
    report.checks.setdefault("pivot", True)

    if raise_on_failure and not report.ok:
        raise ConsistencyFailure("; ".join(report.failures))
    return report
