"""Sparse multivariate polynomials with integer coefficients.

A :class:`MultiPoly` is a map from exponent tuples to nonzero ints plus an
explicit variable count.  Variables are named ``X1 .. Xk`` and all public
functions that take a variable index use 1-based indexing, like the text
grammar does.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    DegreeTooSmall,
    DimensionMismatch,
    IndexOutOfRange,
    NonIntegerCoefficient,
    PolySyntaxError,
    ZeroPolynomial,
)

Exponent = tuple[int, ...]


class MultiPoly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], int] | Iterable = ()):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, int] = {}
        for alpha, c in items:
            alpha = tuple(int(e) for e in alpha)
            if len(alpha) != nvars:
                raise DimensionMismatch(
                    f"exponent {alpha} has length {len(alpha)}, expected {nvars}")
            if any(e < 0 for e in alpha):
                raise ValueError(f"negative exponent in {alpha}")
            acc[alpha] = acc.get(alpha, 0) + int(c)
        self.nvars = nvars
        self.terms = {a: c for a, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def constant(cls, nvars: int, c: int) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> MultiPoly:
        _check_index(nvars, i)
        alpha = [0] * nvars
        alpha[i - 1] = 1
        return cls(nvars, {tuple(alpha): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(a) == 0 for a in self.terms)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def coeff(self, alpha: Sequence[int]) -> int:
        return self.terms.get(tuple(alpha), 0)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.terms!r})"

    def __str__(self):
        return to_text(self)

    # ring operations ---------------------------------------------------

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, int):
            return MultiPoly.constant(self.nvars, other)
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other
        raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[Exponent, int] = {}
        for a, c in self.terms.items():
            for b, e in other.terms.items():
                m = tuple(x + y for x, y in zip(a, b))
                out[m] = out.get(m, 0) + c * e
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result


@dataclass(frozen=True)
class ProblemInstance:
    P: MultiPoly
    k: int
    d: int
    tau: int

    @classmethod
    def from_poly(cls, P: MultiPoly) -> ProblemInstance:
        return cls(P, P.nvars, total_degree(P), bitsize(P))


def _check_index(nvars: int, i: int) -> None:
    if not 1 <= i <= nvars:
        raise IndexOutOfRange(f"variable index {i} outside 1..{nvars}")


# --- parsing / printing -----------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>X\d+)|(?P<op>[-+*^])|(?P<bad>\S))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "bad":
            if value in "./eE":
                raise NonIntegerCoefficient(f"non-integer coefficient near {value!r}", start)
            raise PolySyntaxError(f"unexpected character {value!r}", start)
        toks.append((kind, value, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


def parse_poly(text: str, nvars_hint: Optional[int] = None) -> MultiPoly:
    """Parse the ``X1``-style text grammar into a :class:`MultiPoly`.

    >>> parse_poly("2*X1^2 - 2*X1 + 1").terms
    {(2,): 2, (1,): -2, (0,): 1}
    """
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos]

    def take(kind=None, value=None):
        nonlocal pos
        tok = toks[pos]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            raise PolySyntaxError(f"expected {want}, found {tok[1] or 'end of input'!r}", tok[2])
        pos += 1
        return tok

    def posint():
        tok = take("int")
        if int(tok[1]) == 0:
            raise PolySyntaxError("exponent must be positive", tok[2])
        return int(tok[1])

    def mono():
        powers: dict[int, int] = {}
        while True:
            tok = take("var")
            idx = int(tok[1][1:])
            if idx == 0:
                raise PolySyntaxError("variable indices start at 1", tok[2])
            e = 1
            if peek()[1] == "^":
                take("op", "^")
                e = posint()
            powers[idx] = powers.get(idx, 0) + e
            if peek()[1] == "*" and toks[pos + 1][0] == "var":
                take("op", "*")
                continue
            return powers

    def term():
        tok = peek()
        if tok[0] == "int":
            c = int(take("int")[1])
            if peek()[1] == "*":
                take("op", "*")
                return c, mono()
            return c, {}
        if tok[0] == "var":
            return 1, mono()
        raise PolySyntaxError(f"expected a term, found {tok[1] or 'end of input'!r}", tok[2])

    raw: list[tuple[int, dict[int, int]]] = []
    sign = 1
    if peek()[1] in "+-" and peek()[0] == "op":
        sign = -1 if take("op")[1] == "-" else 1
    c, m = term()
    raw.append((sign * c, m))
    while peek()[0] != "end":
        tok = peek()
        if tok[0] != "op" or tok[1] not in "+-":
            raise PolySyntaxError(f"expected '+' or '-', found {tok[1]!r}", tok[2])
        sign = -1 if take("op")[1] == "-" else 1
        c, m = term()
        raw.append((sign * c, m))

    mentioned = max((max(m) for _, m in raw if m), default=0)
    if nvars_hint is None:
        k = mentioned
    else:
        if nvars_hint < mentioned:
            raise DimensionMismatch(f"X{mentioned} used but nvars is {nvars_hint}")
        k = nvars_hint
    terms: dict[Exponent, int] = {}
    for c, m in raw:
        alpha = [0] * k
        for idx, e in m.items():
            alpha[idx - 1] += e
        alpha = tuple(alpha)
        terms[alpha] = terms.get(alpha, 0) + c
    return MultiPoly(k, terms)


def _term_order(alpha: Exponent):
    return (-sum(alpha), tuple(-e for e in alpha))


def to_text(P: MultiPoly) -> str:
    """Render P in the input grammar, graded descending order."""
    if P.is_zero():
        return "0"
    out = []
    for alpha in sorted(P.terms, key=_term_order):
        c = P.terms[alpha]
        mono = "*".join(
            f"X{i + 1}" if e == 1 else f"X{i + 1}^{e}"
            for i, e in enumerate(alpha) if e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)


# --- measurements -------------------------------------------------------------

def total_degree(P: MultiPoly) -> int:
    """Maximum ``|alpha|`` over stored terms; 0 for constants and for zero."""
    return max((sum(a) for a in P.terms), default=0)


def bitsize(P: MultiPoly) -> int:
    """``max floor(log2|a|) + 1`` over the coefficients, so ``|a| < 2**tau``."""
    if P.is_zero():
        raise ZeroPolynomial("bitsize of the zero polynomial is undefined")
    return max(abs(c).bit_length() for c in P.terms.values())


# --- calculus and evaluation -------------------------------------------------

def partial_derivative(P: MultiPoly, i: int) -> MultiPoly:
    _check_index(P.nvars, i)
    j = i - 1
    out = {}
    for a, c in P.terms.items():
        if a[j]:
            b = list(a)
            b[j] -= 1
            out[tuple(b)] = c * a[j]
    return MultiPoly(P.nvars, out)


def eval_rational(P: MultiPoly, x: Sequence) -> Fraction:
    if len(x) != P.nvars:
        raise DimensionMismatch(f"point has {len(x)} coordinates, polynomial has {P.nvars}")
    x = [Fraction(v) for v in x]
    total = Fraction(0)
    for a, c in P.terms.items():
        v = Fraction(c)
        for xi, e in zip(x, a):
            if e:
                v *= xi ** e
        total += v
    return total


def restrict_zero(P: MultiPoly, i: int) -> MultiPoly:
    """Set ``X_i = 0`` and drop that variable; higher indices shift down."""
    _check_index(P.nvars, i)
    j = i - 1
    return MultiPoly(P.nvars - 1, {a[:j] + a[j + 1:]: c for a, c in P.terms.items() if a[j] == 0})


def substitute_simplex_hyperplane(P: MultiPoly) -> MultiPoly:
    """Substitute ``X_k = 1 - (X_1 + ... + X_{k-1})``, giving k-1 variables."""
    k = P.nvars
    if k < 1:
        raise IndexOutOfRange("need at least one variable")
    m = k - 1
    # powers of (1 - X1 - ... - X_{k-1}) by degree, built on demand
    base = MultiPoly.constant(m, 1) - sum(
        (MultiPoly.variable(m, i) for i in range(1, m + 1)), MultiPoly(m))
    powers = [MultiPoly.constant(m, 1)]
    out: dict[Exponent, int] = {}
    for a, c in P.terms.items():
        e = a[-1]
        while len(powers) <= e:
            powers.append(powers[-1] * base)
        head = a[:-1]
        for b, v in powers[e].terms.items():
            key = tuple(x + y for x, y in zip(head, b))
            out[key] = out.get(key, 0) + c * v
    return MultiPoly(m, out)


def hyperplane_bitsize_allowance(P: MultiPoly) -> int:
    """``bitsize(P) + 1 + ceil(d * log2 k)`` computed with integers only."""
    k, d = P.nvars, total_degree(P)
    ceil_dlogk = (k ** d - 1).bit_length() if k >= 1 else 0
    return bitsize(P) + 1 + ceil_dlogk


def build_R(P: MultiPoly, d: int) -> MultiPoly:
    """``d*P - sum_i X_i dP/dX_i``, i.e. ``sum (d - |alpha|) a_alpha X^alpha``."""
    if d < total_degree(P):
        raise DegreeTooSmall(f"d={d} is below deg P = {total_degree(P)}")
    return MultiPoly(P.nvars, {a: (d - sum(a)) * c for a, c in P.terms.items()})


def euler_R(P: MultiPoly, d: int) -> MultiPoly:
    """Same polynomial as :func:`build_R`, computed from derivatives."""
    out = P * d
    for i in range(1, P.nvars + 1):
        out = out - MultiPoly.variable(P.nvars, i) * partial_derivative(P, i)
    return out


def abs_coeff_sum(P: MultiPoly) -> int:
    return sum(abs(c) for c in P.terms.values())


def binom_dk(d: int, k: int) -> int:
    """``C(d+k, k+1)``, the constant that appears in every coefficient estimate."""
    return comb(d + k, k + 1)
