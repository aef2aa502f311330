"""Formal power series at fixed exact q: the bivariate expansion coefficients
lambda_{c,d}, the integrand expansion, and the coefficients of the cubic-vertex
perturbative series I(g).

Everything coefficient-level is exact rational arithmetic; the only floats are
in fj_numeric, the end-to-end quadrature oracle that never touches the series
formulas it is used to check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import mpmath as mp

from .errors import DomainError
from .qcalc import DEFAULT_POLICY, TruncationPolicy, E_q, jackson_integral_symmetric
from .qcore import (QParam, QScalar, as_fraction, binomial, q_bracket,
                    q_double_factorial, q_factorial, q_squared_factorial)
from .qgauss import _interchanged_c_mp, c_of_q, nu


@dataclass(frozen=True, eq=False)
class PowerSeries1:
    """Truncated univariate power series; coefficients[m] multiplies g^m."""

    coefficients: tuple[QScalar, ...]
    truncation_order: int

    def __post_init__(self):
        if len(self.coefficients) != self.truncation_order + 1:
            raise DomainError("coefficient count must equal truncation_order + 1")

    def coefficient(self, m: int) -> QScalar:
        if 0 <= m <= self.truncation_order:
            return self.coefficients[m]
        return QScalar(Fraction(0))

    def __add__(self, other: "PowerSeries1") -> "PowerSeries1":
        order = min(self.truncation_order, other.truncation_order)
        return PowerSeries1(tuple(self.coefficient(m) + other.coefficient(m)
                                  for m in range(order + 1)), order)

    def __mul__(self, other: "PowerSeries1") -> "PowerSeries1":
        order = min(self.truncation_order, other.truncation_order)
        out = []
        for m in range(order + 1):
            acc = QScalar(Fraction(0))
            for i in range(m + 1):
                acc = acc + self.coefficient(i) * other.coefficient(m - i)
            out.append(acc)
        return PowerSeries1(tuple(out), order)

    def eval(self, g):
        """Horner evaluation; exact for Fraction/int g, float for float g."""
        if isinstance(g, float):
            acc = 0.0
            for c in reversed(self.coefficients):
                acc = acc * g + float(c)
            return acc
        gv = as_fraction(g, "evaluation point")
        acc = QScalar(Fraction(0))
        for c in reversed(self.coefficients):
            acc = acc * gv + c
        return acc


@dataclass(frozen=True, eq=False)
class PowerSeries2:
    """Truncated bivariate power series with a total-degree bound.

    terms maps (i, j) to the coefficient of variables[0]^i * variables[1]^j;
    monomials beyond the bound are dropped by construction and by products.
    """

    terms: Mapping[tuple[int, int], QScalar]
    truncation: int
    variables: tuple[str, str] = ("x", "y")

    def __post_init__(self):
        clean = {key: value for key, value in self.terms.items()
                 if value and key[0] + key[1] <= self.truncation}
        object.__setattr__(self, "terms", clean)

    def coefficient(self, i: int, j: int) -> QScalar:
        return self.terms.get((i, j), QScalar(Fraction(0)))

    def __add__(self, other: "PowerSeries2") -> "PowerSeries2":
        bound = min(self.truncation, other.truncation)
        keys = set(self.terms) | set(other.terms)
        return PowerSeries2({k: self.coefficient(*k) + other.coefficient(*k) for k in keys},
                            bound, self.variables)

    def __mul__(self, other: "PowerSeries2") -> "PowerSeries2":
        bound = min(self.truncation, other.truncation)
        out: dict[tuple[int, int], QScalar] = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                i, j = i1 + i2, j1 + j2
                if i + j > bound:
                    continue
                key = (i, j)
                prod = a * b
                out[key] = out[key] + prod if key in out else prod
        return PowerSeries2(out, bound, self.variables)


@dataclass(frozen=True, eq=False)
class LambdaTable:
    """Expansion coefficients lambda_{c,d} on the rectangle c <= max_c, d <= max_d."""

    q: QParam
    values: Mapping[tuple[int, int], QScalar]
    max_c: int
    max_d: int

    def lam(self, c: int, d: int) -> QScalar:
        if not (0 <= c <= self.max_c and 0 <= d <= self.max_d):
            raise DomainError(f"(c,d)=({c},{d}) outside table bounds "
                              f"({self.max_c},{self.max_d})")
        return self.values.get((c, d), QScalar(Fraction(0), 0, self.q.value))


@lru_cache(maxsize=None)
def _qsq_factorial_at(m: int, qv: Fraction) -> Fraction:
    return q_squared_factorial(m).eval(qv)


def lambda_closed_form(c: int, d: int, q: QParam) -> QScalar:
    """Closed form for lambda_{c,d}: the alternating k-sum with sign (-1)^(c-k).

    The k-sum telescopes to zero for d = 0, c >= 1 (only lambda_{0,0} = 1
    survives on that row), matching the series-division oracle.
    """
    if c < 0 or d < 0:
        raise DomainError("lambda indices must be non-negative")
    qv = q.value
    total = Fraction(0)
    for k in range(c + 1):
        total += (Fraction((-1) ** (c - k) * binomial(d + k, k))
                  * qv ** ((d + k) * (d + k - 1))
                  / (_qsq_factorial_at(d + k, qv) * _qsq_factorial_at(c - k, qv)))
    return QScalar(total, 0, qv)


def _E_two_variable(total_degree: int, q: QParam) -> PowerSeries2:
    """The entire q^2-exponential of x+y as a bivariate series: coefficient of
    x^a y^b is q^(n(n-1)) C(n,a) / [n]_{q^2}! with n = a + b."""
    qv = q.value
    terms: dict[tuple[int, int], QScalar] = {}
    for n in range(total_degree + 1):
        base = qv ** (n * (n - 1)) / _qsq_factorial_at(n, qv)
        for a in range(n + 1):
            terms[(a, n - a)] = QScalar(base * binomial(n, a), 0, qv)
    return PowerSeries2(terms, total_degree)


def lambda_oracle(max_c: int, max_d: int, q: QParam) -> LambdaTable:
    """lambda table computed without the closed form, by series division.

    Divide the bivariate q^2-exponential of x+y by the univariate one in x,
    using the inverse identity: the reciprocal of the entire q^2-exponential
    is the alternating plain q^2-exponential. The product's (c,d) coefficient
    is lambda_{c,d}.
    """
    if max_c < 0 or max_d < 0:
        raise DomainError("table bounds must be non-negative")
    degree = max_c + max_d
    qv = q.value
    numerator = _E_two_variable(degree, q)
    reciprocal = PowerSeries2(
        {(a, 0): QScalar(Fraction((-1) ** a) / _qsq_factorial_at(a, qv), 0, qv)
         for a in range(degree + 1)},
        degree)
    product = numerator * reciprocal
    values = {(c, d): product.coefficient(c, d)
              for c in range(max_c + 1) for d in range(max_d + 1)}
    return LambdaTable(q, values, max_c, max_d)


@lru_cache(maxsize=None)
def _ddf_at(j: int, qv: Fraction) -> Fraction:
    return q_double_factorial(j).eval(qv)


def fj_term(c: int, k: int, d: int, q: QParam) -> QScalar:
    """Single (c,k) summand of the g^(2d) series coefficient.

    (-1)^k C(2d+k,k) q^((2d+k)(2d+k-1)+2c) [2(c+3d)-1]!!_q
    / ([2]_q^c ([3]_q!)^(2d) [2d+k]_{q^2}! [c-k]_{q^2}!).
    """
    if not (0 <= k <= c) or d < 0:
        raise DomainError(f"need 0 <= k <= c and d >= 0, got c={c}, k={k}, d={d}")
    qv = q.value
    bracket2 = q_bracket(2).eval(qv)
    fact3 = q_factorial(3).eval(qv)
    numerator = (Fraction((-1) ** k * binomial(2 * d + k, k))
                 * qv ** ((2 * d + k) * (2 * d + k - 1) + 2 * c)
                 * _ddf_at(c + 3 * d, qv))
    denominator = (bracket2 ** c * fact3 ** (2 * d)
                   * _qsq_factorial_at(2 * d + k, qv) * _qsq_factorial_at(c - k, qv))
    return QScalar(numerator / denominator, 0, qv)


def fj_blocks(m: int, q: QParam, max_c: int) -> tuple[QScalar, ...]:
    """Per-c blocks (k summed out) of the g^m series coefficient, for even m.

    Exposed so callers can check stabilization of the partial sums over c;
    for m = 0 every block with c >= 1 is exactly zero.
    """
    if m % 2 != 0 or m < 0:
        raise DomainError(f"blocks are defined for even m >= 0, got {m}")
    if max_c < 0:
        raise DomainError("max_c must be non-negative")
    d = m // 2
    out = []
    for c in range(max_c + 1):
        acc = QScalar(Fraction(0), 0, q.value)
        for k in range(c + 1):
            acc = acc + fj_term(c, k, d, q)
        out.append(acc)
    return tuple(out)


def fj_coefficient(m: int, q: QParam, max_c: int = 12) -> QScalar:
    """Coefficient of g^m in the perturbative series I(g).

    Odd m vanish structurally (only even powers of g appear); even m sums the
    per-c blocks up to max_c. Always exact at exact rational q.
    """
    if m < 0:
        raise DomainError(f"series index must be non-negative, got {m}")
    if m % 2 == 1:
        return QScalar(Fraction(0), 0, q.value)
    total = QScalar(Fraction(0), 0, q.value)
    for block in fj_blocks(m, q, max_c):
        total = total + block
    return total


def fj_series(order: int, q: QParam, max_c: int = 12) -> PowerSeries1:
    """I(g) assembled through the given order."""
    if order < 0:
        raise DomainError("order must be non-negative")
    return PowerSeries1(tuple(fj_coefficient(m, q, max_c) for m in range(order + 1)),
                        order)


def integrand_expansion(order_g: int, order_x: int, q: QParam) -> PowerSeries2:
    """The integrand divided by the Gaussian kernel, expanded in x and g.

    Coefficients sit at (x-power, g-power) = (2c+3d, d):
    sum_k (-1)^(2c-k) C(d+k,k) q^((d+k)(d+k-1)+2c)
    / ([2]_q^c ([3]_q!)^d [d+k]_{q^2}! [c-k]_{q^2}!).
    Pairing each x-power with its closed-form moment and summing over c
    reproduces fj_coefficient; that resummation is the internal consistency
    route between the two printed forms of the series.
    """
    if order_g < 0 or order_x < 0:
        raise DomainError("expansion orders must be non-negative")
    qv = q.value
    bracket2 = q_bracket(2).eval(qv)
    fact3 = q_factorial(3).eval(qv)
    terms: dict[tuple[int, int], QScalar] = {}
    for d in range(order_g + 1):
        for c in range((order_x - 3 * d) // 2 + 1):
            if 2 * c + 3 * d > order_x or c < 0:
                continue
            acc = Fraction(0)
            for k in range(c + 1):
                acc += (Fraction((-1) ** (2 * c - k) * binomial(d + k, k))
                        * qv ** ((d + k) * (d + k - 1) + 2 * c)
                        / (bracket2 ** c * fact3 ** d
                           * _qsq_factorial_at(d + k, qv) * _qsq_factorial_at(c - k, qv)))
            if acc:
                terms[(2 * c + 3 * d, d)] = QScalar(acc, 0, qv)
    return PowerSeries2(terms, order_x + order_g, variables=("x", "g"))


def fj_coefficient_via_moments(m: int, q: QParam, max_c: int = 12) -> QScalar:
    """g^m series coefficient by the moment-resummation route.

    Expands the integrand over the kernel, integrates monomials with the
    closed-form moments (odd x-powers drop), and sums. Agrees exactly with
    fj_coefficient at matched max_c; the two routes start from different
    printed forms, so the equality is a real cross-check.
    """
    if m < 0:
        raise DomainError(f"series index must be non-negative, got {m}")
    qv = q.value
    if m % 2 == 1:
        return QScalar(Fraction(0), 0, qv)
    expansion = integrand_expansion(m, 2 * max_c + 3 * m, q)
    total = Fraction(0)
    for (x_power, g_power), coeff in expansion.terms.items():
        if g_power != m or x_power % 2 == 1:
            continue
        total += coeff.rational_part * _ddf_at(x_power // 2, qv)
    return QScalar(total, 0, qv)


def _fj_numeric_mp(g, q: QParam, trunc: TruncationPolicy, dps: int):
    """High-precision quadrature for I(g); used where float64 cannot resolve
    the g^6-scale gap between the numeric value and the order-4 series."""
    qv = q.value
    c_value, _ = _interchanged_c_mp(qv, trunc.max_terms, extra_dps=dps)
    with mp.workdps(dps + 30):
        qm = mp.mpf(qv.numerator) / qv.denominator
        q_sq = qm * qm
        nu_m = 1 / mp.sqrt(1 - qm)
        bracket2 = 1 + qm
        fact3 = (1 + qm) * (1 + qm + q_sq)
        if isinstance(g, Fraction):
            gm = mp.mpf(g.numerator) / g.denominator
        else:
            gm = mp.mpf(g)
        e_cutoff = mp.mpf(10) ** (-(dps + 25))

        def entire_exp(u):
            term = mp.mpf(1)
            total = mp.mpf(0)
            bracket = mp.mpf(0)
            power = mp.mpf(1)
            qpow = mp.mpf(1)
            for n in range(trunc.max_terms):
                total += term
                if n >= 1 and abs(term) <= e_cutoff * max(abs(total), mp.mpf(1)):
                    break
                bracket += power
                power *= q_sq
                term = term * qpow * u / bracket
                qpow *= q_sq
            return total

        total = mp.mpf(0)
        weight = mp.mpf(1)
        x = nu_m
        node_cutoff = mp.mpf(10) ** (-(dps + 20))
        for m_idx in range(trunc.max_terms):
            x_sq = x * x
            even_part = -q_sq * x_sq / bracket2
            odd_part = gm * x * x_sq / fact3
            term = weight * (entire_exp(even_part + odd_part)
                             + entire_exp(even_part - odd_part))
            total += term
            if m_idx >= 2 and abs(term) <= node_cutoff * abs(total):
                break
            weight *= qm
            x *= qm
        integral = (1 - qm) * nu_m * total
        return integral / c_value


def fj_numeric(g, q: QParam, trunc: TruncationPolicy = DEFAULT_POLICY,
               dps: int | None = None):
    """I(g) by direct symmetric Jackson quadrature of the full integrand.

    This is the genuinely independent end-to-end oracle: the q^2-exponential
    is evaluated at the shifted argument -q^2 x^2/[2]_q + g x^3/[3]_q! node by
    node, with no reference to the series formulas. Float64 by default; pass
    dps for an adaptive high-precision run (needed to resolve O(g^6) effects).
    """
    if dps is not None:
        return _fj_numeric_mp(g, q, trunc, dps)
    qv = q.value
    qf = float(qv)
    gf = float(g)
    q_sq = QParam(qv * qv)
    bracket2 = 1.0 + qf
    fact3 = (1.0 + qf) * (1.0 + qf + qf * qf)

    def integrand(x):
        u = -qf * qf * x * x / bracket2 + gf * x ** 3 / fact3
        return E_q(u, q_sq, trunc)

    quad = jackson_integral_symmetric(integrand, nu(q).value, q, trunc)
    c_value = c_of_q(q, trunc, "interchanged_sum").float_value
    return quad.value / c_value
