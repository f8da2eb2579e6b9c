import random
from fractions import Fraction
from math import lcm

import pytest

from orbpairs.orbcore import INFINITY, DomainError
from orbpairs.planepairs import (
    PlaneArrangementPair,
    adjunction_identity_check,
    anticanonical_degree,
    expected_family_dim,
    family_dim_report,
    is_fano,
)


def lines(*mults):
    return PlaneArrangementPair([(f"L{i}", 1, m) for i, m in enumerate(mults, 1)])


class TestAnticanonicalDegree:
    def test_worked_examples(self):
        assert anticanonical_degree(lines(3, 3, 5, 7)) == Fraction(1, 105)
        assert anticanonical_degree(lines(2, 3, 7, 41)) == Fraction(1, 1722)
        assert anticanonical_degree(lines(2, 2, 2)) == Fraction(3, 2)

    def test_line_identity(self):
        # for k lines: degree = sum(1/m_j) - (k - 3)
        rng = random.Random(7)
        for _ in range(200):
            k = rng.randint(1, 6)
            mults = [rng.randint(2, 30) for _ in range(k)]
            expected = sum(Fraction(1, m) for m in mults) - (k - 3)
            assert anticanonical_degree(lines(*mults)) == expected

    def test_higher_degree_components(self):
        conic = PlaneArrangementPair([("C", 2, INFINITY)])
        assert anticanonical_degree(conic) == 1


class TestFano:
    def test_examples(self):
        assert is_fano(lines(3, 3, 5, 7))
        assert not is_fano(lines(3, 3, 5, 8))
        assert is_fano(lines(2, 3, 7, 41))

    def test_three_lines_always_fano(self):
        for a in range(2, 14):
            for b in range(2, 14):
                for c in range(2, 14):
                    assert is_fano(lines(a, b, c))

    def test_monotone_decreasing_in_multiplicity(self):
        rng = random.Random(11)
        for _ in range(200):
            k = rng.randint(1, 5)
            mults = [rng.randint(2, 20) for _ in range(k)]
            raised = list(mults)
            j = rng.randrange(k)
            raised[j] += rng.randint(1, 10)
            if not is_fano(lines(*mults)):
                assert not is_fano(lines(*raised))


class TestFamilyDim:
    def test_worked_examples(self):
        assert expected_family_dim(lines(3, 3, 5, 7), 105) == 0
        assert expected_family_dim(lines(3, 3, 5, 7), 210) == 1
        assert expected_family_dim(lines(2, 2), 2) == 3

    def test_identity_with_anticanonical(self):
        rng = random.Random(13)
        for _ in range(300):
            k = rng.randint(1, 5)
            mults = [rng.randint(2, 12) for _ in range(k)]
            degree = lcm(*mults) * rng.randint(1, 4)
            pair = lines(*mults)
            dim = expected_family_dim(pair, degree)
            assert Fraction(dim) == degree * anticanonical_degree(pair) - 1
            assert adjunction_identity_check(pair, degree)

    def test_adjunction_examples(self):
        assert adjunction_identity_check(lines(3, 3, 5, 7), 105)
        assert adjunction_identity_check(lines(2, 3, 7, 41), 2 * 3 * 7 * 41)
        assert adjunction_identity_check(lines(2, 2, 2), 2)

    def test_divisibility_required(self):
        with pytest.raises(DomainError):
            expected_family_dim(lines(3, 3, 5, 7), 104)

    def test_lines_required(self):
        conic = PlaneArrangementPair([("C", 2, 3)])
        with pytest.raises(DomainError):
            expected_family_dim(conic, 6)

    def test_integral_required(self):
        with pytest.raises(DomainError):
            expected_family_dim(lines(Fraction(5, 2)), 5)
        with pytest.raises(DomainError):
            expected_family_dim(PlaneArrangementPair([("L", 1, INFINITY)]), 4)


class TestFamilyDimReport:
    def test_discrepancy_note_present(self):
        report = family_dim_report(lines(3, 3, 5, 7), 105)
        assert report.dimension == 0
        assert report.note is not None
        assert "3N-1" in report.note and "N-1" in report.note

    def test_discrepancy_note_at_higher_n(self):
        report = family_dim_report(lines(3, 3, 5, 7), 420)
        assert report.dimension == 3
        assert "3N-1 = 11" in report.note

    def test_no_note_for_other_arrangements(self):
        assert family_dim_report(lines(2, 2), 2).note is None
        assert family_dim_report(lines(3, 3, 5), 15).note is None


class TestValidation:
    def test_duplicate_labels(self):
        with pytest.raises(DomainError):
            PlaneArrangementPair([("L", 1, 2), ("L", 1, 3)])

    def test_multiplicity_one_dropped(self):
        pair = PlaneArrangementPair([("L1", 1, 1), ("L2", 1, 2)])
        assert [c.label for c in pair.components] == ["L2"]

    def test_bad_degree(self):
        with pytest.raises(DomainError):
            PlaneArrangementPair([("L", 0, 2)])
