"""Closed-form minimum bounds and the per-instance certified bound.

The instance bound walks the face lattice of the simplex.  Each face is
reached either by fixing a coordinate to zero or by moving onto the
``X_1 + ... + X_k = 1`` facet via ``X_k -> 1 - (X_1 + ... + X_{k-1})``.
The true minimizer lies in the relative interior of some face; that face
contributes either an exact vertex value or an interior bound, so the
minimum over all contributions is a certified lower bound.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Optional

from .charpoly import InteriorAnalysis, interior_analysis
from .errors import ConsistencyFailure, ParityViolation, PositivityViolated
from .multipoly import (
    MultiPoly,
    ProblemInstance,
    bitsize,
    hyperplane_bitsize_allowance,
    restrict_zero,
    substitute_simplex_hyperplane,
    total_degree,
)
from .quotient import DEFAULT_MAX_DIM

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClosedFormParams:
    k: int
    d: int
    tau: int

    def __post_init__(self):
        if self.k < 1 or self.d < 1 or self.tau < 1:
            raise ValueError(f"closed forms need k, d, tau >= 1, got {self}")


def closed_form_full(p: ClosedFormParams) -> Fraction:
    k, d, tau = p.k, p.d, p.tau
    den = (2 ** ((tau + 1) * d ** (k + 1))
           * d ** ((k + 1) * d ** k)
           * comb(d + k, k + 1) ** (d ** k * (d - 1)))
    return Fraction(1, den)


def closed_form_simplified(p: ClosedFormParams) -> Fraction:
    k, d, tau = p.k, p.d, p.tau
    return Fraction(1, 2 ** ((tau + 1) * d ** (k + 1)) * d ** ((k + 1) * d ** (k + 1)))


def closed_form_interior(p: ClosedFormParams) -> Fraction:
    """Same expression as :func:`closed_form_full`, valid for interior minima only."""
    return closed_form_full(p)


CLOSED_FORMS = {
    "full": closed_form_full,
    "simplified": closed_form_simplified,
    "interior": closed_form_interior,
}


# --- face recursion -----------------------------------------------------------

@dataclass(frozen=True)
class FaceDescriptor:
    """Which face of the original simplex a node polynomial lives on.

    ``hyperplane_applied`` holds ``(label, remaining_labels)`` pairs meaning
    original variable ``label`` was replaced by ``1 - sum(remaining_labels)``.
    """

    zeroed: tuple[int, ...] = ()
    hyperplane_applied: tuple[tuple[int, tuple[int, ...]], ...] = ()
    dimension: int = 0
    labels: tuple[int, ...] = ()

    def describe(self) -> str:
        parts = [f"X{i}=0" for i in self.zeroed]
        for label, rest in self.hyperplane_applied:
            rhs = " - ".join(f"X{j}" for j in rest)
            parts.append(f"X{label}=1" + (f" - {rhs}" if rhs else ""))
        return ", ".join(parts) if parts else "simplex"


@dataclass
class Contribution:
    face: FaceDescriptor
    kind: str  # "interior" or "vertex-constant"
    value: Optional[Fraction]
    params: Optional[tuple[int, int, int]] = None
    note: str = ""


@dataclass
class BoundReport:
    global_bound: Optional[Fraction]  # None only when face recursion is disabled
    contributions: list[Contribution]
    closed_form_full: Optional[Fraction]
    closed_form_simplified: Optional[Fraction]
    instance: ProblemInstance
    diagnostics: list[str] = field(default_factory=list)


def certified_lower_bound(P: MultiPoly, max_dim: int = DEFAULT_MAX_DIM,
                          face_recursion: bool = True, check: bool = True) -> BoundReport:
    """Certified rational lower bound for ``min P`` over the standard simplex.

    Positivity of P on the simplex is assumed.  Vertex values that are not
    positive raise :class:`PositivityViolated`.  With ``check`` every interior
    contribution is compared against the closed-form interior bound of its
    node, and the coefficient estimates inside the pipeline are asserted.
    """
    instance = ProblemInstance(P, P.nvars, total_degree(P), bitsize(P) if not P.is_zero() else 0)
    contributions: list[Contribution] = []
    diagnostics: list[str] = []
    cache: dict[MultiPoly, InteriorAnalysis] = {}

    def interior(Q: MultiPoly) -> InteriorAnalysis:
        got = cache.get(Q)
        if got is None:
            got = interior_analysis(Q, max_dim=max_dim, check=check)
            cache[Q] = got
        return got

    def visit(Q: MultiPoly, face: FaceDescriptor, recurse: bool) -> None:
        if Q.nvars == 0 or Q.is_constant():
            value = Q.constant_term()
            if value <= 0:
                raise PositivityViolated(
                    f"value {value} on face [{face.describe()}]; P is not positive on the simplex")
            contributions.append(Contribution(face, "vertex-constant", Fraction(value)))
            return
        deg = total_degree(Q)
        if deg <= 1:
            contributions.append(Contribution(
                face, "interior", None, note="degree <= 1: minimum attained at a vertex"))
        else:
            res = interior(Q)
            params = (res.k, res.d, res.tau)
            note = "" if res.bound is not None else "S(0,Y) has no nonzero root"
            if check and res.bound is not None:
                floor = closed_form_interior(ClosedFormParams(*params))
                if res.bound < floor:
                    raise ConsistencyFailure(
                        f"interior bound {res.bound} below closed form {floor} at [{face.describe()}]")
            contributions.append(Contribution(face, "interior", res.bound, params, note))
        if not recurse:
            return
        for i in range(1, Q.nvars + 1):
            label = face.labels[i - 1]
            child = FaceDescriptor(
                tuple(sorted(face.zeroed + (label,))),
                face.hyperplane_applied,
                face.dimension - 1,
                face.labels[: i - 1] + face.labels[i:])
            visit(restrict_zero(Q, i), child, recurse)
        Qh = substitute_simplex_hyperplane(Q)
        if Q.nvars >= 2 and not Qh.is_zero():
            allowed = hyperplane_bitsize_allowance(Q)
            if bitsize(Qh) > allowed:
                msg = (f"hyperplane substitution at [{face.describe()}] has bitsize "
                       f"{bitsize(Qh)} > {allowed}")
                log.warning(msg)
                diagnostics.append(msg)
        step = (face.labels[-1], face.labels[:-1])
        child = FaceDescriptor(face.zeroed, face.hyperplane_applied + (step,),
                               face.dimension - 1, face.labels[:-1])
        visit(Qh, child, recurse)

    root = FaceDescriptor((), (), P.nvars, tuple(range(1, P.nvars + 1)))
    visit(P, root, face_recursion)

    values = [c.value for c in contributions if c.value is not None]
    if not values and face_recursion:
        raise ConsistencyFailure("no face produced a usable bound")
    if instance.d >= 1 and instance.tau >= 1 and instance.k >= 1:
        params = ClosedFormParams(instance.k, instance.d, instance.tau)
        cf_full, cf_simple = closed_form_full(params), closed_form_simplified(params)
    else:
        cf_full = cf_simple = None
    if not face_recursion:
        diagnostics.append("face recursion disabled: bound covers interior minima only")
    return BoundReport(min(values, default=None), contributions, cf_full, cf_simple, instance,
                       diagnostics)


# --- example family -----------------------------------------------------------

def example_family(k: int, d: int, tau: int) -> MultiPoly:
    """``(2**(tau/2) X1 - 1)**2 + sum (X_i - X_{i-1}**(d/2))**2 + X_k**d``."""
    if k < 1:
        raise ValueError("k must be positive")
    if d % 2 or tau % 2 or d < 4 or tau < 2:
        raise ParityViolation(f"need even d >= 4 and even tau >= 2, got d={d}, tau={tau}")
    X = [MultiPoly.variable(k, i) for i in range(1, k + 1)]
    P = (X[0] * 2 ** (tau // 2) - 1) ** 2
    for i in range(1, k):
        P = P + (X[i] - X[i - 1] ** (d // 2)) ** 2
    return P + X[-1] ** d


def example_family_point(k: int, d: int, tau: int) -> tuple[Fraction, ...]:
    """The point ``X_i = 2**(-(tau/2) (d/2)**(i-1))``."""
    return tuple(Fraction(1, 2 ** ((tau // 2) * (d // 2) ** (i - 1))) for i in range(1, k + 1))


def example_family_upper_bound(k: int, d: int, tau: int) -> Fraction:
    """``2**(-tau (d/2)**k)``, which the minimum over the simplex cannot exceed."""
    return Fraction(1, 2 ** (tau * (d // 2) ** k))


# --- the inequality that closes the induction -----------------------------------

@dataclass
class InductionCheckReport:
    checked: int = 0
    violations: list[tuple[int, int, int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def induction_sides(d: int, k: int, tau: int, ceil_log: bool = False) -> tuple[int, int]:
    """Both sides of the face-step inequality as exact integers.

    ``2**(d*log2 k)`` equals ``k**d`` so the exact form needs no logarithms;
    ``ceil_log`` instead rounds ``d*log2 k`` up to an integer exponent.
    """
    dk = d ** k
    binom_low = comb(d + k - 1, k) ** (d ** (k - 1) * (d - 1))
    d_low = d ** (k * d ** (k - 1))
    if ceil_log:
        clog = (k ** d - 1).bit_length()
        lhs = 2 ** (dk * (tau + 2 + clog)) * d_low * binom_low
    else:
        lhs = 2 ** (dk * (tau + 2)) * k ** (d * dk) * d_low * binom_low
    rhs = (2 ** (d ** (k + 1) * (tau + 1))
           * d ** ((k + 1) * dk)
           * comb(d + k, k + 1) ** (dk * (d - 1)))
    return lhs, rhs


def theorem_induction_check(d_range: Iterable[int], k_range: Iterable[int],
                            tau_range: Iterable[int]) -> InductionCheckReport:
    report = InductionCheckReport()
    d_range, k_range, tau_range = list(d_range), list(k_range), list(tau_range)
    for d in d_range:
        if d < 2:
            raise ValueError("the face-step inequality is stated for d >= 2")
        for k in k_range:
            for tau in tau_range:
                for variant, ceil_log in (("exact", False), ("ceil", True)):
                    lhs, rhs = induction_sides(d, k, tau, ceil_log)
                    report.checked += 1
                    if lhs > rhs:
                        report.violations.append((d, k, tau, variant))
    return report
