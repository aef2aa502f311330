"""Ordered pairings on {1,...,2n} and their q-weights.

An ordered pairing splits {1,...,2n} into n pairs (a_i, b_i) with a_i < b_i
and a_1 < a_2 < ... < a_n. Its weight is q^W where W counts, for each pair,
the elements strictly between a_i and b_i that are not right endpoints of an
earlier pair. Summed over all (2n-1)!! pairings, the weights reproduce the
product of the first n odd q-brackets; that identity is the combinatorial
backbone of the graph-sum modules and is kept as an enumeration (never the
closed form) on this side of every cross-check.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Iterator, Mapping

from .errors import DomainError, ResourceLimitError, ValidationError
from .qcore import QPolynomial

DEFAULT_LIMIT = 8   # largest n enumerated by default: (2*8-1)!! = 2,027,025 pairings


@dataclass(frozen=True)
class OrderedPairing:
    """Pairs ((a_1,b_1),...,(a_n,b_n)) partitioning {1,...,2n}; may be empty."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        seen: set[int] = set()
        previous_a = 0
        for a, b in pairs:
            if a >= b:
                raise ValidationError(f"pair ({a},{b}) must have a < b")
            if a <= previous_a:
                raise ValidationError("left endpoints must be strictly increasing")
            previous_a = a
            seen.update((a, b))
        n = len(pairs)
        if len(seen) != 2 * n or (pairs and (min(seen) != 1 or max(seen) != 2 * n)):
            raise ValidationError(f"entries must be exactly 1..{2 * n} with no repetition")

    @property
    def n(self) -> int:
        return len(self.pairs)

    @property
    def size(self) -> int:
        return 2 * len(self.pairs)

    def __str__(self):
        return "".join(f"({a},{b})" for a, b in self.pairs) or "()"


def _check_n(n: int, limit: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if n > limit:
        raise ResourceLimitError(
            f"n={n} exceeds the enumeration limit {limit} "
            f"({2 * limit} elements, {_double_factorial_count(limit)} pairings)")


def _double_factorial_count(n: int) -> int:
    out = 1
    for k in range(1, n + 1):
        out *= 2 * k - 1
    return out


def iter_pairings(n: int, limit: int = DEFAULT_LIMIT) -> Iterator[OrderedPairing]:
    """Lazily generate all ordered pairings of {1,...,2n}, lexicographically.

    Always pairing the smallest unpaired element first makes a_1 = 1 and the
    sorted-left-endpoint invariant hold by construction, and yields each
    pairing exactly once.
    """
    _check_n(n, limit)

    def rec(available: tuple[int, ...], acc: tuple[tuple[int, int], ...]):
        if not available:
            yield OrderedPairing(acc)
            return
        a = available[0]
        rest = available[1:]
        for i, b in enumerate(rest):
            yield from rec(rest[:i] + rest[i + 1:], acc + ((a, b),))

    yield from rec(tuple(range(1, 2 * n + 1)), ())


def enumerate_pairings(n: int, limit: int = DEFAULT_LIMIT) -> list[OrderedPairing]:
    """All (2n-1)!! ordered pairings as a list, in lexicographic order."""
    return list(iter_pairings(n, limit))


def weight(p: OrderedPairing) -> QPolynomial:
    """The monomial q^W for a pairing.

    W sums, over pairs in left-endpoint order, the number of elements strictly
    inside (a_i, b_i) that are not right endpoints of an earlier pair.
    """
    exponent = 0
    earlier_rights: set[int] = set()
    for a, b in p.pairs:
        gap = set(range(a + 1, b)) - earlier_rights
        exponent += len(gap)
        earlier_rights.add(b)
    return QPolynomial.monomial(exponent)


@lru_cache(maxsize=None)
def weight_exponent_counts(n: int, limit: int = DEFAULT_LIMIT) -> Mapping[int, int]:
    """Histogram {W: number of pairings on [2n] with weight exponent W}.

    Computed by a bitmask walk over the same smallest-first recursion as
    iter_pairings: because the current left endpoint a is the smallest
    unpaired element, the gap contribution of a new pair (a, b) is exactly
    the number of still-unpaired elements between a and b. Cached per n;
    n = 0 gives the empty-pairing histogram {0: 1}.
    """
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    if n == 0:
        return MappingProxyType({0: 1})
    _check_n(n, limit)
    size = 2 * n
    # between[a][b] = bitmask of elements strictly between a and b (1-based, bit i-1)
    between = [[0] * (size + 1) for _ in range(size + 1)]
    for a in range(1, size + 1):
        mask = 0
        for b in range(a + 2, size + 1):
            mask |= 1 << (b - 2)
            between[a][b] = mask
    counts: Counter[int] = Counter()

    def rec(available: int, w: int):
        if not available:
            counts[w] += 1
            return
        a_bit = available & -available
        a = a_bit.bit_length()
        rest = available ^ a_bit
        bb = rest
        while bb:
            b_bit = bb & -bb
            b = b_bit.bit_length()
            rec(rest ^ b_bit, w + (available & between[a][b]).bit_count())
            bb ^= b_bit

    rec((1 << size) - 1, 0)
    return MappingProxyType(dict(counts))


def weighted_pairing_sum(n: int, limit: int = DEFAULT_LIMIT) -> QPolynomial:
    """Sum of q^W over all ordered pairings of {1,...,2n}, as an exact polynomial.

    n = 0 is the empty pairing with weight 1, matching weight_exponent_counts.
    """
    if n != 0:
        _check_n(n, limit)
    counts = weight_exponent_counts(n, limit)
    coeffs = [0] * (max(counts) + 1)
    for exponent, count in counts.items():
        coeffs[exponent] = count
    return QPolynomial(tuple(coeffs))
