"""Exact scalars, polynomials in q, and the basic q-combinatorial quantities.

Everything here is big-rational arithmetic (fractions.Fraction). Floats enter
only when the caller evaluates at a float point; nothing in this module
rounds on its own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import DomainError, ValidationError

RationalLike = Union[int, Fraction, str]


def as_fraction(value, what: str = "value") -> Fraction:
    """Coerce to Fraction, refusing floats (binary roundoff would leak in silently)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise DomainError(
            f"{what} must be exact (int, Fraction, or a string like '1/2' or '0.9'); "
            f"got float {value!r}"
        )
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot read {value!r} as an exact rational {what}") from exc


@dataclass(frozen=True)
class QParam:
    """The deformation parameter: an exact rational strictly inside (0, 1)."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", as_fraction(self.value, "q"))
        if not (0 < self.value < 1):
            raise DomainError(f"q must satisfy 0 < q < 1, got {self.value}")

    @property
    def as_float(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True, eq=False)
class QScalar:
    """Exact rational value, optionally carrying one factor of sqrt(1-q).

    surd_exponent is 0 or 1. A surd-carrying scalar must know its q so that
    products of two surds can fold the (1-q) factor back into the rational
    part. Scalars with differing surd exponents cannot be added.
    """

    rational_part: Fraction
    surd_exponent: int = 0
    q: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "rational_part", as_fraction(self.rational_part, "rational_part"))
        if self.surd_exponent not in (0, 1):
            raise DomainError(f"surd_exponent must be 0 or 1, got {self.surd_exponent}")
        if self.q is not None:
            qv = as_fraction(self.q, "q")
            if not (0 < qv < 1):
                raise DomainError(f"q must satisfy 0 < q < 1, got {qv}")
            object.__setattr__(self, "q", qv)
        if self.surd_exponent == 1 and self.q is None:
            raise DomainError("a surd-carrying scalar must record its q")

    @property
    def is_rational(self) -> bool:
        return self.surd_exponent == 0

    @staticmethod
    def _coerce(other) -> "QScalar":
        if isinstance(other, QScalar):
            return other
        return QScalar(as_fraction(other, "operand"))

    def _merged_q(self, other: "QScalar") -> Fraction | None:
        if self.q is None:
            return other.q
        if other.q is None or other.q == self.q:
            return self.q
        raise DomainError(f"cannot combine scalars with different q ({self.q} vs {other.q})")

    def __add__(self, other):
        other = self._coerce(other)
        # exact zero is surd-agnostic
        if self.rational_part == 0 and self.surd_exponent == 0:
            return other
        if other.rational_part == 0 and other.surd_exponent == 0:
            return self
        if self.surd_exponent != other.surd_exponent:
            raise DomainError("scalars with different surd exponents cannot be added")
        return QScalar(self.rational_part + other.rational_part, self.surd_exponent,
                       self._merged_q(other))

    __radd__ = __add__

    def __neg__(self):
        return QScalar(-self.rational_part, self.surd_exponent, self.q)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        q = self._merged_q(other)
        exponent = self.surd_exponent + other.surd_exponent
        rational = self.rational_part * other.rational_part
        if exponent == 2:
            # sqrt(1-q)^2 folds back into the rational part
            rational *= 1 - q
            exponent = 0
        return QScalar(rational, exponent, q)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.rational_part == 0:
            raise ZeroDivisionError("division by zero scalar")
        if other.surd_exponent == 0:
            return QScalar(self.rational_part / other.rational_part, self.surd_exponent,
                           self._merged_q(other))
        # 1/(r*sqrt(1-q)) = (1/(r*(1-q))) * sqrt(1-q)
        inverse = QScalar(1 / (other.rational_part * (1 - other.q)), 1, other.q)
        return self * inverse

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise DomainError("QScalar powers must be non-negative integers")
        out = QScalar(Fraction(1), 0, self.q)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.surd_exponent == 0 and self.rational_part == other
        if isinstance(other, QScalar):
            if self.surd_exponent != other.surd_exponent:
                # zero compares equal regardless of its surd tag
                return self.rational_part == 0 and other.rational_part == 0
            if self.surd_exponent == 0:
                return self.rational_part == other.rational_part
            return self.rational_part == other.rational_part and self.q == other.q
        return NotImplemented

    def __hash__(self):
        if self.surd_exponent == 0 or self.rational_part == 0:
            return hash(self.rational_part)
        return hash((self.rational_part, self.surd_exponent, self.q))

    def __bool__(self):
        return self.rational_part != 0

    def __float__(self):
        if self.surd_exponent == 0:
            return float(self.rational_part)
        return float(self.rational_part) * math.sqrt(1 - float(self.q))

    def __str__(self):
        if self.surd_exponent == 0:
            return str(self.rational_part)
        return f"{self.rational_part}*sqrt(1-q)"

    def __repr__(self):
        return f"QScalar({self})"


@dataclass(frozen=True, eq=False)
class QPolynomial:
    """Polynomial in the indeterminate q with exact rational coefficients.

    coefficients[i] is the coefficient of q^i; trailing zeros are stripped so
    the zero polynomial is the empty tuple.
    """

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(as_fraction(c, "coefficient") for c in self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def zero(cls) -> "QPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "QPolynomial":
        return cls((Fraction(1),))

    @classmethod
    def monomial(cls, exponent: int, coefficient: RationalLike = 1) -> "QPolynomial":
        if exponent < 0:
            raise DomainError("monomial exponent must be non-negative")
        return cls((Fraction(0),) * exponent + (as_fraction(coefficient),))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, i: int) -> Fraction:
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    @staticmethod
    def _coerce(other) -> "QPolynomial":
        if isinstance(other, QPolynomial):
            return other
        return QPolynomial((as_fraction(other, "operand"),))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coefficients), len(other.coefficients))
        return QPolynomial(tuple(self.coefficient(i) + other.coefficient(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return QPolynomial.zero()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return QPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise DomainError("polynomial powers must be non-negative integers")
        out = QPolynomial.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if isinstance(other, QPolynomial):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def eval(self, point):
        """Evaluate by Horner. Exact at Fraction/int points, float at floats."""
        if isinstance(point, QParam):
            point = point.value
        if not self.coefficients:
            return 0.0 if isinstance(point, float) else Fraction(0)
        acc = self.coefficients[-1]
        if isinstance(point, float):
            acc = float(acc)
            for c in reversed(self.coefficients[:-1]):
                acc = acc * point + float(c)
            return acc
        point = as_fraction(point, "evaluation point")
        for c in reversed(self.coefficients[:-1]):
            acc = acc * point + c
        return acc

    def compose_power(self, k: int) -> "QPolynomial":
        """Substitute q -> q^k at the polynomial level."""
        if not isinstance(k, int) or k < 1:
            raise DomainError("compose_power expects a positive integer")
        if self.is_zero():
            return self
        out = [Fraction(0)] * (self.degree * k + 1)
        for i, c in enumerate(self.coefficients):
            out[i * k] = c
        return QPolynomial(tuple(out))

    def as_monomial(self) -> tuple[int, Fraction]:
        """Return (exponent, coefficient); error if more than one term."""
        terms = [(i, c) for i, c in enumerate(self.coefficients) if c != 0]
        if len(terms) > 1:
            raise ValidationError(f"not a monomial: {self}")
        if not terms:
            return (0, Fraction(0))
        return terms[0]

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if i == 0:
                term = str(c)
            else:
                var = "q" if i == 1 else f"q^{i}"
                if c == 1:
                    term = var
                elif c == -1:
                    term = f"-{var}"
                else:
                    term = f"{c}{var}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    def __repr__(self):
        return f"QPolynomial({self})"


def q_bracket(n: int) -> QPolynomial:
    """[n]_q = 1 + q + ... + q^(n-1); [0]_q is the zero polynomial."""
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"q_bracket expects a non-negative integer, got {n!r}")
    return QPolynomial((Fraction(1),) * n)


def q_bracket_real(t, q: QParam):
    """[t]_q = (q^t - 1)/(q - 1) for real t.

    Exact Fraction for integer t (agrees with q_bracket evaluated at q),
    float otherwise.
    """
    qv = q.value
    if isinstance(t, int) or (isinstance(t, Fraction) and t.denominator == 1):
        t = int(t)
        return (qv ** t - 1) / (qv - 1)
    tf = float(t)
    qf = float(qv)
    return (qf ** tf - 1.0) / (qf - 1.0)


@lru_cache(maxsize=None)
def q_factorial(n: int) -> QPolynomial:
    """[n]_q! = [n]_q [n-1]_q ... [2]_q [1]_q; empty product for n = 0."""
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"q_factorial expects a non-negative integer, got {n!r}")
    if n == 0:
        return QPolynomial.one()
    return q_factorial(n - 1) * q_bracket(n)


@lru_cache(maxsize=None)
def q_double_factorial(n: int) -> QPolynomial:
    """Product of the first n odd brackets, [2n-1]_q [2n-3]_q ... [1]_q.

    Indexed by the number of factors n (so n=2 gives [3]_q [1]_q), avoiding
    any off-by-one around the 2n-1 in the usual notation.
    """
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"q_double_factorial expects a non-negative integer, got {n!r}")
    if n == 0:
        return QPolynomial.one()
    return q_double_factorial(n - 1) * q_bracket(2 * n - 1)


def q_squared_factorial(n: int) -> QPolynomial:
    """[n]_{q^2}!: the q-factorial with q replaced by q^2 at the polynomial level."""
    return q_factorial(n).compose_power(2)


def binomial(n: int, k: int) -> int:
    """Ordinary binomial coefficient; 0 when k > n, error on negative input."""
    if not isinstance(n, int) or not isinstance(k, int) or n < 0 or k < 0:
        raise DomainError(f"binomial expects non-negative integers, got ({n!r}, {k!r})")
    if k > n:
        return 0
    return math.comb(n, k)
