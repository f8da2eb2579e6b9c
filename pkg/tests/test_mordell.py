import math

import pytest
from hypothesis import given, settings, strategies as st

from orbpairs.mordell import (
    ClassicalWitness,
    OrbifoldP1Triple,
    RationalPoint,
    density_report,
    enumerate_p_full,
    enumerate_p_full_by_filter,
    factorize,
    integer_nth_root,
    is_general_type_triple,
    is_p_full,
    is_perfect_power,
    merge_point_lists,
    search_classical,
    search_points,
)
from orbpairs.orbcore import DomainError


class TestPFull:
    def test_examples(self):
        assert is_p_full(8, 3)
        assert not is_p_full(12, 2)
        assert is_p_full(72, 2)
        assert is_p_full(1, 4)
        assert is_p_full(-8, 3)

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            is_p_full(0, 2)

    def test_against_sieve_oracle(self):
        # independent oracle: factor through a smallest-prime-factor sieve
        limit = 10**5
        spf = list(range(limit + 1))
        for i in range(2, math.isqrt(limit) + 1):
            if spf[i] == i:
                for j in range(i * i, limit + 1, i):
                    if spf[j] == j:
                        spf[j] = i

        def min_exponent(n: int) -> float:
            if n == 1:
                return math.inf
            smallest = math.inf
            while n > 1:
                prime = spf[n]
                e = 0
                while n % prime == 0:
                    n //= prime
                    e += 1
                smallest = min(smallest, e)
            return smallest

        for n in range(1, limit + 1):
            smallest = min_exponent(n)
            for p in range(2, 6):
                assert is_p_full(n, p) == (smallest >= p), (n, p)
                assert is_p_full(-n, p) == (smallest >= p), (-n, p)

    @given(st.integers(2, 4), st.integers(1, 10**6), st.integers(1, 10**6))
    @settings(max_examples=200)
    def test_coprime_multiplicativity(self, p, a, b):
        if math.gcd(a, b) != 1:
            return
        if is_p_full(a, p) and is_p_full(b, p):
            assert is_p_full(a * b, p)


class TestEnumerate:
    def test_hundred_squarefull(self):
        values = enumerate_p_full(100, 2)
        assert values == [1, 4, 8, 9, 16, 25, 27, 32, 36, 49, 64, 72, 81, 100]
        assert len(values) == 14

    def test_small_limits(self):
        assert enumerate_p_full(7, 3) == [1]
        assert enumerate_p_full(1, 2) == [1]

    def test_generation_matches_filter_oracle(self):
        for p in (2, 3, 4):
            assert enumerate_p_full(10**4, p) == enumerate_p_full_by_filter(10**4, p)

    def test_strictly_sorted(self):
        values = enumerate_p_full(10**5, 2)
        assert all(a < b for a, b in zip(values, values[1:]))


class TestDensity:
    def test_slope_near_inverse_exponent(self):
        for p in (2, 3):
            report = density_report(10**6, p)
            assert abs(report.slope - 1 / p) <= 0.08

    def test_count_consistency(self):
        report = density_report(10**3, 2)
        assert report.count == len(enumerate_p_full(10**3, 2))

    def test_limit_precondition(self):
        with pytest.raises(DomainError):
            density_report(999, 2)


class TestSearchPoints:
    def test_273_contains_9_8(self):
        points = search_points(OrbifoldP1Triple(2, 7, 3), 100, 100)
        assert RationalPoint(9, 8) in points

    def test_237_contains_9_1(self):
        points = search_points(OrbifoldP1Triple(2, 3, 7), 100, 100)
        assert RationalPoint(9, 1) in points

    def test_tiny_bounds_match_brute_force(self):
        triple = OrbifoldP1Triple(2, 3, 7)
        for max_a, max_b in [(3, 3), (10, 10), (30, 20)]:
            expected = []
            for b in range(1, max_b + 1):
                for a in range(1, max_a + 1):
                    if a == b or math.gcd(a, b) != 1:
                        continue
                    if not (is_p_full(a, 2) and is_p_full(b, 7)):
                        continue
                    if is_p_full(abs(a - b), 3):
                        expected.append((a, b))
            got = [(pt.a, pt.b) for pt in search_points(triple, max_a, max_b)]
            assert got == sorted(expected, key=lambda ab: (ab[1], ab[0]))

    def test_sign_plus(self):
        # a=1, b=8: a+b = 9 = 3^2 is 2-full but not 3-full
        assert RationalPoint(1, 8) in search_points(
            OrbifoldP1Triple(2, 2, 3), 30, 30, sign="plus"
        )
        assert RationalPoint(1, 8) not in search_points(
            OrbifoldP1Triple(2, 3, 3), 30, 30, sign="plus"
        )

    def test_bounds_validated(self):
        with pytest.raises(DomainError):
            search_points(OrbifoldP1Triple(2, 3, 7), 0, 10)

    def test_shard_merge_determinism(self):
        triple = OrbifoldP1Triple(2, 7, 3)
        full = search_points(triple, 200, 200)
        shards = []
        bounds = [(1, 50), (51, 100), (101, 150), (151, 200)]
        for lo, hi in bounds:
            shards.append(search_points(triple, 200, 200, b_range=(lo, hi)))
        assert merge_point_lists(shards) == full


class TestSearchClassical:
    def test_323_contains_1_2_3(self):
        witnesses = search_classical(OrbifoldP1Triple(3, 2, 3), 10, 10)
        assert ClassicalWitness(1, 2, 3) in witnesses
        for w in witnesses:
            assert w.alpha**3 + w.beta**3 == w.gamma**2
            assert math.gcd(w.alpha, w.beta) == 1

    def test_exhaustive_tiny(self):
        witnesses = search_classical(OrbifoldP1Triple(2, 3, 7), 3, 3)
        expected = []
        for beta in range(1, 4):
            for alpha in range(1, 4):
                if math.gcd(alpha, beta) != 1:
                    continue
                total = alpha**2 + beta**7
                root = round(total ** (1 / 3))
                for g in (root - 1, root, root + 1):
                    if g >= 0 and g**3 == total:
                        expected.append((alpha, beta, g))
        assert [(w.alpha, w.beta, w.gamma) for w in witnesses] == sorted(
            expected, key=lambda t: (t[1], t[0])
        )

    def test_bounds_validated(self):
        with pytest.raises(DomainError):
            search_classical(OrbifoldP1Triple(2, 3, 7), 1, 0)

    def test_classical_points_are_nonclassical_under_plus(self):
        # alpha^p and beta^r are p- and r-full; their sum gamma^q is q-full
        for triple in (OrbifoldP1Triple(3, 2, 3), OrbifoldP1Triple(2, 2, 3)):
            witnesses = search_classical(triple, 6, 6)
            assert witnesses
            max_a = max(w.alpha**triple.p for w in witnesses)
            max_b = max(w.beta**triple.r for w in witnesses)
            points = search_points(triple, max_a, max_b, sign="plus")
            for w in witnesses:
                assert RationalPoint(w.alpha**triple.p, w.beta**triple.r) in points


class TestTripleClassification:
    def test_examples(self):
        assert is_general_type_triple(OrbifoldP1Triple(2, 3, 7))
        assert not is_general_type_triple(OrbifoldP1Triple(2, 3, 5))
        assert not is_general_type_triple(OrbifoldP1Triple(2, 3, 6))

    def test_validation(self):
        with pytest.raises(DomainError):
            OrbifoldP1Triple(1, 3, 7)


class TestIntegerRoots:
    def test_exact_roots(self):
        for n in range(1, 500):
            for k in (2, 3, 5):
                root = integer_nth_root(n, k)
                assert root**k <= n < (root + 1) ** k

    def test_large_values(self):
        assert integer_nth_root(10**30, 3) == 10**10
        assert integer_nth_root(10**30 - 1, 3) == 10**10 - 1
        assert is_perfect_power(2**60, 5) == (True, 2**12)
        assert is_perfect_power(2**60 + 1, 5) == (False, 0)

    def test_point_validation(self):
        with pytest.raises(DomainError):
            RationalPoint(2, 2)
        with pytest.raises(DomainError):
            RationalPoint(4, 2)
