"""Functional q-calculus: q-derivative, Jackson integrals, and the two
q-exponential series, with controlled truncation.

Two evaluation regimes coexist. Exact mode keeps every operation in rational
arithmetic and always sums the full term budget (the tail tolerance is a
float-mode concept). Float mode stops early once terms fall below the relative
tail tolerance. Polynomial integrands bypass node summation entirely: a
Jackson integral of x^t over [0, b] has the closed form b^(t+1)/[t+1]_q, so
identity-level tests never depend on truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

import mpmath as mp

from .errors import DivergenceError, DomainError, EvaluationError
from .qcore import QParam, as_fraction

Real = Union[int, Fraction, float]

_MIN_FLOAT = 1e-300  # guards relative-size tests against a zero running sum


@dataclass(frozen=True)
class TruncationPolicy:
    """How infinite series and node sums are cut off.

    max_terms is the hard budget. relative_tail_tolerance is the float-mode
    early-stopping threshold (a term smaller than tol * |partial sum| ends the
    loop); it is ignored in exact mode, which always spends the full budget.
    """

    max_terms: int = 512
    relative_tail_tolerance: float = 1e-30
    mode: str = "float"

    def __post_init__(self):
        if self.mode not in ("exact", "float"):
            raise DomainError(f"mode must be 'exact' or 'float', got {self.mode!r}")
        if not isinstance(self.max_terms, int) or self.max_terms < 1:
            raise DomainError("max_terms must be a positive integer")
        if self.relative_tail_tolerance < 0:
            raise DomainError("relative_tail_tolerance must be non-negative")

    @classmethod
    def exact(cls, max_terms: int) -> "TruncationPolicy":
        return cls(max_terms=max_terms, relative_tail_tolerance=0.0, mode="exact")

    @classmethod
    def floating(cls, max_terms: int = 512,
                 relative_tail_tolerance: float = 1e-30) -> "TruncationPolicy":
        return cls(max_terms=max_terms, relative_tail_tolerance=relative_tail_tolerance,
                   mode="float")

    @property
    def is_exact(self) -> bool:
        return self.mode == "exact"


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class QuadratureResult:
    """Value of a truncated Jackson sum plus diagnostics.

    residual is the magnitude of the last included term (with the (1-q)b node
    weight folded in); terms_used is 0 for closed-form polynomial paths.
    """

    value: Real
    terms_used: int
    residual: Real

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True, eq=False)
class XPoly:
    """Polynomial in the integration variable x with exact rational coefficients.

    Used as an integrand type: callers get exact closed-form Jackson integrals
    and exact q-derivatives instead of node sums.
    """

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(as_fraction(c, "coefficient") for c in self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def monomial(cls, exponent: int, coefficient=1) -> "XPoly":
        if exponent < 0:
            raise DomainError("monomial exponent must be non-negative")
        return cls((Fraction(0),) * exponent + (as_fraction(coefficient),))

    @classmethod
    def constant(cls, value) -> "XPoly":
        return cls((as_fraction(value),))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, i: int) -> Fraction:
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return Fraction(0)

    def __call__(self, x):
        if not self.coefficients:
            return 0.0 if isinstance(x, float) else Fraction(0)
        if isinstance(x, float):
            acc = float(self.coefficients[-1])
            for c in reversed(self.coefficients[:-1]):
                acc = acc * x + float(c)
            return acc
        acc = self.coefficients[-1]
        for c in reversed(self.coefficients[:-1]):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        if not isinstance(other, XPoly):
            other = XPoly.constant(other)
        n = max(len(self.coefficients), len(other.coefficients))
        return XPoly(tuple(self.coefficient(i) + other.coefficient(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return XPoly(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        if not isinstance(other, XPoly):
            other = XPoly.constant(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, XPoly):
            other = XPoly.constant(other)
        if not self.coefficients or not other.coefficients:
            return XPoly(())
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return XPoly(tuple(out))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, XPoly):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def reflect(self) -> "XPoly":
        """x -> -x."""
        return XPoly(tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coefficients)))

    def scale_argument(self, factor) -> "XPoly":
        """x -> factor * x, exactly."""
        f = as_fraction(factor, "scale factor")
        return XPoly(tuple(c * f ** i for i, c in enumerate(self.coefficients)))

    def q_derivative(self, q: QParam) -> "XPoly":
        """Exact q-derivative: x^t maps to [t]_q x^(t-1)."""
        qv = q.value
        out = []
        bracket = Fraction(0)
        power = Fraction(1)
        for t in range(1, len(self.coefficients)):
            bracket += power          # [t]_q accumulated as 1 + q + ... + q^(t-1)
            power *= qv
            out.append(self.coefficients[t] * bracket)
        return XPoly(tuple(out))


RealFunction = Union[Callable[[Real], Real], XPoly]


def q_derivative(f: RealFunction, x: Real, q: QParam) -> Real:
    """(f(qx) - f(x)) / ((q-1)x). Undefined at x = 0: no limit is taken."""
    if x == 0:
        raise DomainError("q_derivative is undefined at x = 0")
    qv = q.value if not isinstance(x, float) else q.as_float
    return (f(qv * x) - f(x)) / ((qv - 1) * x)


def _closed_form_jackson(p: XPoly, b, q: QParam) -> QuadratureResult:
    # integral of x^t over [0, b] is b^(t+1) / [t+1]_q
    if isinstance(b, float):
        qf = q.as_float
        total = 0.0
        bracket = 0.0
        power = 1.0
        bpow = b
        for t in range(len(p.coefficients)):
            bracket += power
            power *= qf
            total += float(p.coefficients[t]) * bpow / bracket
            bpow *= b
        return QuadratureResult(total, 0, 0.0)
    bq = as_fraction(b, "integration bound")
    qv = q.value
    total = Fraction(0)
    bracket = Fraction(0)
    power = Fraction(1)
    bpow = bq
    for t in range(len(p.coefficients)):
        bracket += power
        power *= qv
        total += p.coefficients[t] * bpow / bracket
        bpow *= bq
    return QuadratureResult(total, 0, Fraction(0))


def jackson_integral(f: RealFunction, b: Real, q: QParam,
                     trunc: TruncationPolicy = DEFAULT_POLICY) -> QuadratureResult:
    """Truncated Jackson integral (1-q) b sum_n q^n f(q^n b) over [0, b].

    XPoly integrands are integrated in closed form (exact, no truncation).
    Black-box callables get the node sum: full budget in exact mode, early
    stop on the relative tail tolerance in float mode. A non-finite float
    value at a node raises EvaluationError carrying the node index.
    """
    if not (b > 0):
        raise DomainError(f"integration bound must be positive, got {b!r}")
    if isinstance(f, XPoly):
        return _closed_form_jackson(f, b, q)
    if trunc.is_exact:
        bq = as_fraction(b, "integration bound")
        qv = q.value
        total = Fraction(0)
        weight = Fraction(1)   # q^n
        x = bq
        term = Fraction(0)
        for _ in range(trunc.max_terms):
            term = weight * as_fraction(f(x), "integrand value")
            total += term
            weight *= qv
            x *= qv
        scale = (1 - qv) * bq
        return QuadratureResult(scale * total, trunc.max_terms, abs(scale * term))
    qf = q.as_float
    bf = float(b)
    tol = trunc.relative_tail_tolerance
    total = 0.0
    weight = 1.0
    x = bf
    term = 0.0
    used = 0
    for n in range(trunc.max_terms):
        v = float(f(x))
        if not math.isfinite(v):
            raise EvaluationError(f"integrand returned non-finite value at node {n}", n)
        term = weight * v
        total += term
        used = n + 1
        if n >= 2 and abs(term) <= tol * max(abs(total), _MIN_FLOAT):
            break
        weight *= qf
        x *= qf
    scale = (1 - qf) * bf
    return QuadratureResult(scale * total, used, abs(scale * term))


def jackson_integral_symmetric(f: RealFunction, b: Real, q: QParam,
                               trunc: TruncationPolicy = DEFAULT_POLICY,
                               parity: str | None = None) -> QuadratureResult:
    """Jackson integral over [-b, b], as the [0,b] part plus the reflected part.

    The caller may declare the integrand's parity: "odd" returns exact zero
    without evaluating anything, "even" returns twice the [0, b] integral.
    """
    if parity not in (None, "even", "odd"):
        raise DomainError(f"parity must be None, 'even' or 'odd', got {parity!r}")
    if parity == "odd":
        zero = Fraction(0) if trunc.is_exact else 0.0
        return QuadratureResult(zero, 0, zero)
    if parity == "even":
        half = jackson_integral(f, b, q, trunc)
        return QuadratureResult(2 * half.value, half.terms_used, 2 * half.residual)
    if isinstance(f, XPoly):
        reflected = f.reflect()
    else:
        reflected = lambda x: f(-x)
    plus = jackson_integral(f, b, q, trunc)
    minus = jackson_integral(reflected, b, q, trunc)
    return QuadratureResult(plus.value + minus.value,
                            plus.terms_used + minus.terms_used,
                            plus.residual + minus.residual)


def e_q(x: Real, q: QParam, trunc: TruncationPolicy = DEFAULT_POLICY) -> Real:
    """The q-exponential sum_n x^n / [n]_q!.

    Converges only for |x| < 1/(1-q); divergence is detected heuristically
    (terms growing for max_terms//2 consecutive steps) rather than by a radius
    precondition, so exact boundary inputs are not rejected up front.
    """
    exact = trunc.is_exact and not isinstance(x, float)
    if exact:
        xv = as_fraction(x, "argument")
        qv = q.value
        term = Fraction(1)
        bracket = Fraction(0)
        power = Fraction(1)
    else:
        xv = float(x)
        qv = q.as_float
        term = 1.0
        bracket = 0.0
        power = 1.0
    total = term * 0
    growth_streak = 0
    streak_limit = max(2, trunc.max_terms // 2)
    tol = trunc.relative_tail_tolerance
    for n in range(trunc.max_terms):
        total += term
        if not exact and n >= 1 and abs(term) <= tol * max(abs(total), _MIN_FLOAT):
            break
        bracket += power          # [n+1]_q
        power *= qv
        next_term = term * xv / bracket
        if abs(next_term) > abs(term) and term != 0:
            growth_streak += 1
            if growth_streak >= streak_limit:
                raise DivergenceError(
                    f"e_q series diverging at x={x!r} (|x| outside radius 1/(1-q))")
        else:
            growth_streak = 0
        term = next_term
    return total


def _E_q_float_fallback(x: float, q: QParam, trunc: TruncationPolicy) -> float:
    """Alternating direct sum in high precision, for arguments where the float
    reciprocal path is unavailable (x < 0 with |x| at or beyond the e_q radius)."""
    qf = q.as_float
    # scan term magnitudes in log space to size the working precision
    peak = 0.0
    log_term = 0.0
    log_q = math.log10(qf)
    log_x = math.log10(abs(x))
    bracket = 0.0
    power = 1.0
    for n in range(trunc.max_terms):
        bracket += power
        power *= qf
        log_term += n * log_q + log_x - math.log10(bracket)
        peak = max(peak, log_term)
        if log_term < -40:
            break
    with mp.workdps(int(peak) + 45):
        qm = mp.mpf(q.value.numerator) / q.value.denominator
        xm = mp.mpf(x)
        term = mp.mpf(1)
        total = mp.mpf(0)
        bracket = mp.mpf(0)
        power = mp.mpf(1)
        cutoff = mp.mpf(10) ** (-45)
        for n in range(trunc.max_terms):
            total += term
            if n >= 1 and abs(term) < cutoff:
                break
            bracket += power
            power *= qm
            term = term * qm ** n * xm / bracket
        return float(total)


def E_q(x: Real, q: QParam, trunc: TruncationPolicy = DEFAULT_POLICY) -> Real:
    """The entire q-exponential sum_n q^(n(n-1)/2) x^n / [n]_q!.

    Float evaluation at negative arguments uses the inverse identity
    E_q^x = 1/e_q^(-x) whenever -x lies inside the e_q radius: that route
    sums positive terms only, so no cancellation. Outside the radius an
    adaptive high-precision alternating sum takes over.
    """
    if trunc.is_exact and not isinstance(x, float):
        xv = as_fraction(x, "argument")
        qv = q.value
        term = Fraction(1)
        total = Fraction(0)
        bracket = Fraction(0)
        power = Fraction(1)
        qpow = Fraction(1)     # q^n
        for n in range(trunc.max_terms):
            total += term
            bracket += power
            power *= qv
            term = term * qpow * xv / bracket
            qpow *= qv
        return total
    xf = float(x)
    qf = q.as_float
    if xf < 0:
        if abs(xf) * (1 - qf) < 1 - 1e-12:
            return 1.0 / e_q(-xf, q, trunc)
        return _E_q_float_fallback(xf, q, trunc)
    tol = trunc.relative_tail_tolerance
    term = 1.0
    total = 0.0
    bracket = 0.0
    power = 1.0
    qpow = 1.0
    for n in range(trunc.max_terms):
        total += term
        if n >= 1 and term <= tol * max(total, _MIN_FLOAT):
            break
        bracket += power
        power *= qf
        term = term * qpow * xf / bracket
        qpow *= qf
    return total
