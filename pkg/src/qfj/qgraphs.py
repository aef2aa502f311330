"""Graph-sum form of the perturbative series.

Each series term is recast as a sum over decorated graphs: a graph is a choice
of c two-valent kernel insertions, dprime cubic vertices, a k-subset sigma of
the dprime+k deformation slots, and an ordered pairing of the 2c+3*dprime
flags. The graph weight omega_q divided by the symmetry-like factor a_q,
summed over graphs, reproduces the closed-form series coefficient. The two
routes share no code: graph values come from enumerating pairings, the series
route from the double-factorial closed form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ResourceLimitError, ValidationError
from .pairings import (DEFAULT_LIMIT, OrderedPairing, iter_pairings, weight,
                       weight_exponent_counts)
from .qcore import (QParam, QPolynomial, QScalar, binomial, q_bracket,
                    q_factorial, q_squared_factorial)


@dataclass(frozen=True)
class GraphEncoding:
    """One decorated graph contributing to the coefficient of g^dprime."""

    c: int
    dprime: int
    k: int
    sigma: tuple[int, ...]
    flag_pairing: OrderedPairing

    def __post_init__(self):
        if self.c < 0 or self.dprime < 0:
            raise ValidationError("c and dprime must be non-negative")
        if self.dprime % 2 != 0:
            raise ValidationError(
                f"dprime must be even (odd powers of g vanish), got {self.dprime}")
        if not (0 <= self.k <= self.c):
            raise ValidationError(f"need 0 <= k <= c, got k={self.k}, c={self.c}")
        slots = self.dprime + self.k
        if len(self.sigma) != self.k:
            raise ValidationError(f"sigma must pick exactly k={self.k} slots")
        if any(not (1 <= s <= slots) for s in self.sigma):
            raise ValidationError(f"sigma entries must lie in 1..{slots}")
        if any(a >= b for a, b in zip(self.sigma, self.sigma[1:])):
            raise ValidationError("sigma must be strictly increasing")
        flags = 2 * self.c + 3 * self.dprime
        if self.flag_pairing.size != flags:
            raise ValidationError(
                f"pairing covers {self.flag_pairing.size} flags, expected {flags}")

    @property
    def flags(self) -> int:
        return 2 * self.c + 3 * self.dprime


def enumerate_graphs(c: int, dprime: int, k: int,
                     limit: int = DEFAULT_LIMIT) -> list[GraphEncoding]:
    """All C(dprime+k, k) * (2c+3*dprime-1)!! graphs in the (c, dprime, k) block.

    Materializes every encoding, so this is only for small blocks; the block
    aggregate graph_block_value walks the same pairing set without building
    the objects.
    """
    if c < 0 or dprime < 0 or not (0 <= k <= c):
        raise DomainError(f"need c >= 0, dprime >= 0, 0 <= k <= c; "
                          f"got c={c}, dprime={dprime}, k={k}")
    if dprime % 2 != 0:
        raise DomainError(f"dprime must be even, got {dprime}")
    flags = 2 * c + 3 * dprime
    if flags // 2 > limit:
        raise ResourceLimitError(
            f"block (c={c}, dprime={dprime}) has {flags} flags, beyond the "
            f"pairing limit of {2 * limit} elements")
    sigmas = list(itertools.combinations(range(1, dprime + k + 1), k))
    if flags == 0:
        pairing_list = [OrderedPairing(())]
    else:
        pairing_list = list(iter_pairings(flags // 2, limit))
    return [GraphEncoding(c, dprime, k, sigma, pairing)
            for sigma in sigmas for pairing in pairing_list]


def omega_q(graph: GraphEncoding) -> QPolynomial:
    """Graph weight: (-1)^k q^(2c + (dprime+k)(dprime+k-1)) times the pairing
    weight monomial."""
    shift = 2 * graph.c + (graph.dprime + graph.k) * (graph.dprime + graph.k - 1)
    sign = QPolynomial.monomial(shift, (-1) ** graph.k)
    return sign * weight(graph.flag_pairing)


def a_q(graph: GraphEncoding) -> QPolynomial:
    """Denominator factor [2]^c ([3]!)^dprime [dprime+k]_{q^2}! [c-k]_{q^2}!."""
    return (q_bracket(2) ** graph.c
            * q_factorial(3) ** graph.dprime
            * q_squared_factorial(graph.dprime + graph.k)
            * q_squared_factorial(graph.c - graph.k))


def graph_block_value(c: int, dprime: int, k: int, q: QParam,
                      limit: int = DEFAULT_LIMIT) -> QScalar:
    """Sum of omega_q/a_q over the whole (c, dprime, k) block, exactly.

    The pairing sum enters through the enumerated weight-exponent histogram,
    not the double-factorial identity, so agreement with the closed-form
    series term is an actual check of that identity inside the series.
    """
    if c < 0 or dprime < 0 or not (0 <= k <= c):
        raise DomainError(f"need c >= 0, dprime >= 0, 0 <= k <= c; "
                          f"got c={c}, dprime={dprime}, k={k}")
    if dprime % 2 != 0:
        raise DomainError(f"dprime must be even, got {dprime}")
    flags = 2 * c + 3 * dprime
    if flags // 2 > limit:
        raise ResourceLimitError(
            f"block (c={c}, dprime={dprime}) has {flags} flags, beyond the "
            f"pairing limit of {2 * limit} elements")
    qv = q.value
    counts = weight_exponent_counts(flags // 2, limit)
    pairing_sum = sum((count * qv ** exponent for exponent, count in counts.items()),
                      Fraction(0))
    shift = 2 * c + (dprime + k) * (dprime + k - 1)
    slots = dprime + k
    denominator = (q_bracket(2).eval(qv) ** c
                   * q_factorial(3).eval(qv) ** dprime
                   * q_squared_factorial(slots).eval(qv)
                   * q_squared_factorial(c - k).eval(qv))
    numerator = (Fraction((-1) ** k * binomial(slots, k))
                 * qv ** shift * pairing_sum)
    return QScalar(numerator / denominator, 0, qv)


def graph_sum_coefficient(m: int, q: QParam, max_c: int = 4,
                          limit: int = DEFAULT_LIMIT) -> QScalar:
    """Coefficient of g^m assembled purely from graph blocks.

    Matches fj_coefficient(m, q, max_c) exactly term by term when both use
    the same max_c. Odd m has no graphs (odd flag count cannot be paired).
    """
    if m < 0:
        raise DomainError(f"series index must be non-negative, got {m}")
    if m % 2 == 1:
        raise DomainError(
            f"g^{m} has no graphs: 2c+3m is odd, so the flags cannot be paired")
    if max_c < 0:
        raise DomainError("max_c must be non-negative")
    total = QScalar(Fraction(0), 0, q.value)
    for c in range(max_c + 1):
        for k in range(c + 1):
            total = total + graph_block_value(c, m, k, q, limit)
    return total
