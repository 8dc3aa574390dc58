"""Exact integer, rational and univariate polynomial arithmetic.

Everything in the quotient-algebra pipeline lives in Z[1/t].  We work in the
substituted variable ``s = 1/t`` and store polynomials densely, lowest power
first.  Integers are Python ints; rationals are :class:`fractions.Fraction`,
which already keeps ``den > 0`` and ``gcd(num, den) == 1``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NonzeroConstantTerm

Rational = Fraction

#: Degree reported for the zero polynomial.
NEG_INF = float("-inf")


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class SPoly:
    """Immutable polynomial in ``s`` with integer coefficients.

    ``coeffs[l]`` is the coefficient of ``s**l``.  The highest stored
    coefficient is never zero, so the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim([int(c) for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("SPoly is immutable")

    @classmethod
    def _raw(cls, coeffs: tuple[int, ...]) -> SPoly:
        # caller guarantees coeffs is already trimmed
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @classmethod
    def const(cls, c: int) -> SPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, c: int, power: int) -> SPoly:
        if power < 0:
            raise ValueError("negative power")
        return cls([0] * power + [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, l: int) -> int:
        if 0 <= l < len(self.coeffs):
            return self.coeffs[l]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, SPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _trim([other])
        return NotImplemented

    def __hash__(self):
        # consistent with equality against plain ints
        if len(self.coeffs) <= 1:
            return hash(self[0])
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"SPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for l, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if l == 0:
                parts.append(str(c))
            elif l == 1:
                parts.append(f"{c}*s")
            else:
                parts.append(f"{c}*s^{l}")
        return " + ".join(parts).replace("+ -", "- ")

    def __neg__(self):
        return SPoly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if isinstance(other, int):
            other = SPoly.const(other)
        if not isinstance(other, SPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return SPoly._raw(_trim(out))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = SPoly.const(other)
        if not isinstance(other, SPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return SPoly._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, SPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return SPoly._raw(tuple(out))

    __rmul__ = __mul__

    def scale(self, c: int) -> SPoly:
        return self * c

    def shift(self, n: int = 1) -> SPoly:
        """Multiply by ``s**n``."""
        if not self.coeffs or n == 0:
            return self
        return SPoly._raw((0,) * n + self.coeffs)

    def mul_by_t(self) -> SPoly:
        """Divide by ``s``, i.e. multiply by ``t``.

        Raises :class:`NonzeroConstantTerm` when the result would leave Z[s].
        """
        if not self.coeffs:
            return self
        if self.coeffs[0] != 0:
            raise NonzeroConstantTerm(f"{self} is not divisible by s")
        return SPoly._raw(self.coeffs[1:])

    def exact_div(self, h: int) -> SPoly:
        """Divide every coefficient by ``h``; raises ``ArithmeticError`` if inexact."""
        out = []
        for c in self.coeffs:
            q, r = divmod(c, h)
            if r:
                raise ArithmeticError(f"{c} not divisible by {h}")
            out.append(q)
        return SPoly._raw(tuple(out))

    def __call__(self, s):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc


ZERO = SPoly()
ONE = SPoly.const(1)


def spoly_mul_by_t(a: SPoly) -> SPoly:
    return a.mul_by_t()


def spoly_sum(items: Iterable[SPoly]) -> SPoly:
    out: list[int] = []
    for p in items:
        c = p.coeffs
        if len(c) > len(out):
            out.extend([0] * (len(c) - len(out)))
        for i, x in enumerate(c):
            out[i] += x
    return SPoly._raw(_trim(out))


def rational_compare(a, b) -> int:
    """Return -1, 0 or 1 as ``a < b``, ``a == b`` or ``a > b``.

    Works by cross multiplication on canonical fractions so the answer is exact.
    """
    a, b = Fraction(a), Fraction(b)
    lhs = a.numerator * b.denominator
    rhs = b.numerator * a.denominator
    return (lhs > rhs) - (lhs < rhs)


def bit_length(n: int) -> int:
    """Bitsize of an integer: ``floor(log2 |n|) + 1`` (0 for 0)."""
    return abs(n).bit_length()


def as_rational_pair(q) -> dict[str, str]:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def poly_to_str(coeffs: Sequence[int], var: str = "Y") -> str:
    """Render an integer coefficient list (lowest power first)."""
    parts = []
    for e, c in enumerate(coeffs):
        if c == 0:
            continue
        if e == 0:
            parts.append(str(c))
        elif e == 1:
            parts.append(f"{c}*{var}")
        else:
            parts.append(f"{c}*{var}^{e}")
    if not parts:
        return "0"
    return " + ".join(reversed(parts)).replace("+ -", "- ")
