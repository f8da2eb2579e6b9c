"""Exponent combinatorics of symmetric differential sheaves on orbifolds.

Local generators of the N-th symmetric q-differentials adapted to a
multiplicity vector (m_1, ..., m_p) are indexed by N-tuples of q-element
subsets of {1..p}.  Only the integer combinatorics of their exponents is
computed here: occupancy vectors, the ceil/floor exponent pair, the
positive-floor threshold, and the relative (filtration) exponent with its
two-sided bound.  Sheaves themselves are never materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Sequence

from .orbcore import DomainError, Multiplicity, MultiplicityLike, as_multiplicity

# Exhaustive enumerations refuse to run past this bound on p * N * q unless
# the caller raises it explicitly.
DEFAULT_ENUMERATION_LIMIT = 200


@dataclass(frozen=True)
class MultiIndexJ:
    """An N-tuple of q-element subsets of {1..p}, canonically ordered."""

    p: int
    q: int
    subsets: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not 1 <= self.q <= self.p:
            raise DomainError(f"need 1 <= q <= p, got q={self.q}, p={self.p}")
        canon = tuple(sorted(tuple(sorted(s)) for s in self.subsets))
        object.__setattr__(self, "subsets", canon)
        for s in canon:
            if len(s) != self.q or len(set(s)) != self.q:
                raise DomainError(f"subset {s} does not have cardinality {self.q}")
            if not all(1 <= j <= self.p for j in s):
                raise DomainError(f"subset {s} is not contained in 1..{self.p}")

    @property
    def n(self) -> int:
        return len(self.subsets)


def occupancy(j: MultiIndexJ) -> tuple[int, ...]:
    """k_j = number of subsets containing j; the k_j sum to N*q."""
    counts = [0] * j.p
    for subset in j.subsets:
        for idx in subset:
            counts[idx - 1] += 1
    return tuple(counts)


def floor_coefficient_multiple(k: int, m: Multiplicity) -> int:
    """floor(k * (1 - 1/m)) computed exactly; m = oo gives k."""
    if k < 0:
        raise DomainError(f"occupancy must be nonnegative, got {k}")
    if m.is_infinite:
        return k
    v = m.finite_value()
    if v.denominator == 1:
        n = v.numerator
        return (k * (n - 1)) // n
    return math.floor(k * (1 - Fraction(1, 1) / v))


def ceil_quotient(k: int, m: Multiplicity) -> int:
    """ceil(k / m) computed exactly; m = oo gives 0 for every k >= 0."""
    if k < 0:
        raise DomainError(f"occupancy must be nonnegative, got {k}")
    if m.is_infinite:
        return 0
    v = m.finite_value()
    return math.ceil(Fraction(k) / v)


@dataclass(frozen=True)
class ExponentProfile:
    occupancy: tuple[int, ...]
    ceil_exponents: tuple[int, ...]
    floor_exponents: tuple[int, ...]


def generator_exponents(
    k: Sequence[int], mults: Sequence[MultiplicityLike]
) -> ExponentProfile:
    """Both exponent vectors of a local generator: ceil(k_j / m_j) and
    floor(k_j (1 - 1/m_j)).

    Requires finite multiplicities.  For integral m the two normalizations
    agree via floor(k(1-1/m)) = k - ceil(k/m), which is asserted.
    """
    if len(k) != len(mults):
        raise DomainError("occupancy vector and multiplicity vector differ in length")
    ms = [as_multiplicity(m) for m in mults]
    for m in ms:
        if m.is_infinite:
            raise DomainError("generator exponents require finite multiplicities")
    ceils = tuple(ceil_quotient(kj, m) for kj, m in zip(k, ms))
    floors = tuple(floor_coefficient_multiple(kj, m) for kj, m in zip(k, ms))
    for kj, m, c, f in zip(k, ms, ceils, floors):
        if m.is_integral:
            assert f == kj - c, f"floor/ceil identity failed at k={kj}, m={m}"
    return ExponentProfile(tuple(k), ceils, floors)


def positive_floor_threshold(p: int, q: int, mults: Sequence[Multiplicity]) -> int:
    """Smallest N from which some floor exponent must be positive:
    ceil(p / (q * (1 - 1/m))) with m the minimum multiplicity."""
    m = min(mults)
    c = m.coefficient()
    if c == 0:
        raise DomainError("positive-floor threshold needs all multiplicities > 1")
    return math.ceil(Fraction(p) / (q * c))


def multi_indices(
    p: int, q: int, n: int, first_subset: tuple[int, ...] | None = None
) -> Iterable[MultiIndexJ]:
    """All multisets of n q-subsets of {1..p}.

    With ``first_subset`` given, only the shard whose canonically smallest
    subset equals it is produced; the shards over all q-subsets partition
    the full enumeration.
    """
    subsets = list(combinations(range(1, p + 1), q))
    if first_subset is None:
        for combo in combinations_with_replacement(subsets, n):
            yield MultiIndexJ(p, q, combo)
        return
    first = tuple(sorted(first_subset))
    if first not in subsets:
        raise DomainError(f"{first} is not a q-subset of 1..{p}")
    tail = [s for s in subsets if s >= first]
    for combo in combinations_with_replacement(tail, n - 1):
        yield MultiIndexJ(p, q, (first,) + combo)


@dataclass(frozen=True)
class PositiveFloorReport:
    p: int
    q: int
    mults: tuple[Multiplicity, ...]
    threshold: int
    n_values: tuple[int, ...]
    checked: int
    counterexamples: tuple[tuple[int, MultiIndexJ], ...]

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def check_positive_floor(
    p: int,
    q: int,
    mults: Sequence[MultiplicityLike],
    extra: int = 1,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
    first_subset: tuple[int, ...] | None = None,
) -> PositiveFloorReport:
    """Exhaustively verify that at and above the threshold every multi-index
    has some strictly positive floor exponent.

    Enumerates all multi-indices for N = threshold .. threshold + extra and
    reports counterexamples (expected: none).  Refuses to run if
    p * N * q exceeds ``limit``.  ``first_subset`` restricts to one shard of
    the enumeration, keyed by the smallest subset.
    """
    if not 1 <= q <= p:
        raise DomainError(f"need 1 <= q <= p, got q={q}, p={p}")
    if len(mults) != p:
        raise DomainError(f"expected {p} multiplicities, got {len(mults)}")
    ms = tuple(as_multiplicity(m) for m in mults)
    for m in ms:
        if m.is_finite and m.finite_value() <= 1:
            raise DomainError("positive-floor check requires all multiplicities > 1")
    threshold = positive_floor_threshold(p, q, ms)
    n_values = tuple(range(threshold, threshold + extra + 1))
    worst = p * max(n_values) * q
    if worst > limit:
        raise DomainError(
            f"enumeration size p*N*q = {worst} exceeds the limit {limit}; "
            f"raise the limit explicitly to proceed"
        )
    checked = 0
    bad: list[tuple[int, MultiIndexJ]] = []
    for n in n_values:
        for j in multi_indices(p, q, n, first_subset):
            checked += 1
            k = occupancy(j)
            if not any(floor_coefficient_multiple(kj, m) > 0 for kj, m in zip(k, ms)):
                bad.append((n, j))
    return PositiveFloorReport(
        p=p,
        q=q,
        mults=ms,
        threshold=threshold,
        n_values=n_values,
        checked=checked,
        counterexamples=tuple(bad),
    )


def relative_exponent(
    kj: int, decomposition: Sequence[int], m: MultiplicityLike, q: int
) -> int:
    """The filtration exponent floor(kj(1-1/m)) - sum_{r>=1} floor(k(r)(1-1/m))
    for a decomposition (k(0), ..., k(q)) of kj, with its two-sided bound
    floor(k(0)(1-1/m)) <= value <= q + floor(k(0)(1-1/m)) asserted."""
    mult = as_multiplicity(m)
    if not mult.is_integral:
        raise DomainError(f"relative exponent requires an integral multiplicity, got {mult}")
    parts = list(decomposition)
    if len(parts) != q + 1:
        raise DomainError(f"decomposition must have q+1 = {q + 1} parts, got {len(parts)}")
    if any(not isinstance(x, int) or x < 0 for x in parts):
        raise DomainError(f"decomposition parts must be nonnegative integers: {parts}")
    if sum(parts) != kj:
        raise DomainError(f"decomposition {parts} does not sum to {kj}")
    total = floor_coefficient_multiple(kj, mult)
    value = total - sum(floor_coefficient_multiple(x, mult) for x in parts[1:])
    low = floor_coefficient_multiple(parts[0], mult)
    assert low <= value <= q + low, (kj, parts, str(mult), value)
    return value


@dataclass(frozen=True)
class BoundsReport:
    checked: int
    violations: tuple[tuple[int, tuple[int, ...], int], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_relative_exponent_bounds(
    kj_max: int, q_max: int, m_max: int
) -> BoundsReport:
    """Exhaustive verification of the relative-exponent bounds over all
    decompositions with kj <= kj_max, 1 <= q <= q_max, 2 <= m <= m_max."""
    checked = 0
    violations: list[tuple[int, tuple[int, ...], int]] = []
    for q in range(1, q_max + 1):
        for kj in range(kj_max + 1):
            for parts in _compositions(kj, q + 1):
                for m in range(2, m_max + 1):
                    checked += 1
                    try:
                        relative_exponent(kj, parts, m, q)
                    except AssertionError:
                        violations.append((kj, parts, m))
    return BoundsReport(checked=checked, violations=tuple(violations))


def _compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    """All tuples of ``parts`` nonnegative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def check_floor_ceiling_identity(k_max: int = 200, m_max: int = 50) -> int:
    """Exhaustively check floor(k(1-1/m)) = k - ceil(k/m) for integral m.

    Returns the number of (k, m) pairs checked; raises on any failure."""
    checked = 0
    for m in range(1, m_max + 1):
        mult = Multiplicity(m)
        for k in range(k_max + 1):
            if floor_coefficient_multiple(k, mult) != k - ceil_quotient(k, mult):
                raise AssertionError(f"floor/ceil identity failed at k={k}, m={m}")
            checked += 1
    return checked
