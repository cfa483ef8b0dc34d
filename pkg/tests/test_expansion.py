import random
from collections import Counter
from fractions import Fraction

import pytest

from schurq.expansion import (
    ExpansionTerm,
    SymmetryError,
    bilinear_expansion,
    dedupe_symmetric,
    evaluate_expansion,
    sweep,
    verify_identity,
)
from schurq.partitions import (
    FrobeniusCoords,
    Partition,
    StrictPartition,
    count_partitions,
    double_of,
    frobenius_from_partition,
    partition_from_frobenius,
    partitions_of,
)
from schurq.polarization import s_and_t
from schurq.polyring import GradedPoly

from conftest import random_fraction


def term_multiset(terms):
    return Counter((t.coeff, t.q_plus.parts, t.q_minus.parts) for t in terms)


class TestSingleBox:
    """The smallest nontrivial case: lambda = (1), coordinates ((0)|(0))."""

    def test_terms(self):
        terms = bilinear_expansion(FrobeniusCoords([0], [0]))
        quarter = Fraction(1, 4)
        assert [(t.coeff, t.q_plus.parts, t.q_minus.parts) for t in terms] == [
            (quarter, (1, 0), ()),
            (quarter, (), (1, 0)),
            (quarter, (1, 0), ()),
            (quarter, (), (1, 0)),
        ]

    def test_evaluates_to_t1(self):
        terms = bilinear_expansion(FrobeniusCoords([0], [0]))
        assert evaluate_expansion(terms, 1) == GradedPoly.variable(1, 1)

    def test_verify(self):
        report = verify_identity(Partition([1]))
        assert report.ok
        assert report.lhs == GradedPoly.variable(1, 1)
        assert report.rhs == GradedPoly.variable(1, 1)


class TestWorkedExamples:
    def test_three_two_terms(self):
        terms = bilinear_expansion(FrobeniusCoords([2, 0], [1, 0]))
        eighth = Fraction(1, 8)
        assert [(t.coeff, t.q_plus.parts, t.q_minus.parts) for t in terms] == [
            (eighth, (2, 1), (2, 0)),
            (eighth, (2, 0), (2, 1)),
            (eighth, (2, 1), (2, 0)),
            (eighth, (2, 0), (2, 1)),
        ]

    def test_three_three_doubles_anchor(self):
        terms = bilinear_expansion(FrobeniusCoords([2, 1], [1, 0]))
        assert len(terms) == 1
        assert terms[0].coeff == Fraction(1, 4)
        assert terms[0].q_plus.parts == (2, 1)
        assert terms[0].q_minus.parts == (2, 1)
        expected = GradedPoly.parse("(1/144)*t1^6 - (1/6)*t1^3*t3 + t3^2", 6)
        assert evaluate_expansion(terms, 6) == expected

    def test_verify_examples(self):
        for parts in ([1], [3, 3], [3, 2]):
            assert verify_identity(Partition(parts)).ok

    def test_empty_terms_evaluate_to_zero(self):
        assert evaluate_expansion([], 3).is_zero

    def test_empty_partition_verifies(self):
        report = verify_identity(Partition())
        assert report.ok
        assert report.lhs == GradedPoly.one(0)


class TestDedupe:
    def test_double_unchanged(self):
        terms = bilinear_expansion(FrobeniusCoords([2, 1], [1, 0]))
        assert dedupe_symmetric(terms) == terms

    def test_hook_collapses_to_two_terms(self):
        merged = dedupe_symmetric(bilinear_expansion(FrobeniusCoords([3], [1])))
        assert term_multiset(merged) == Counter(
            {
                (Fraction(1, 2), (3, 0), (2, 0)): 1,
                (Fraction(-1, 2), (3, 2), ()): 1,
            }
        )

    def test_three_two_collapses_to_two_terms(self):
        merged = dedupe_symmetric(bilinear_expansion(FrobeniusCoords([2, 0], [1, 0])))
        assert len(merged) == 2
        assert all(t.coeff == Fraction(1, 4) for t in merged)

    def test_merged_sum_is_unchanged(self):
        for parts in ([1], [3, 2], [4, 2], [5, 3, 1], [2, 2, 1]):
            lam = Partition(parts)
            terms = bilinear_expansion(frobenius_from_partition(lam))
            merged = dedupe_symmetric(terms)
            assert evaluate_expansion(terms, lam.weight) == evaluate_expansion(
                merged, lam.weight
            )

    def test_unequal_pair_raises(self):
        a = StrictPartition([2, 0])
        b = StrictPartition([2, 1])
        broken = [
            ExpansionTerm(Fraction(1, 4), a, b),
            ExpansionTerm(Fraction(1, 8), b, a),
        ]
        with pytest.raises(SymmetryError):
            dedupe_symmetric(broken)


class TestExampleFamilies:
    def test_doubles_family(self):
        for parts in [(1,), (2,), (2, 1), (3, 1), (3, 2), (3, 2, 1)]:
            strict = StrictPartition(parts)
            lam = double_of(strict)
            r = strict.cardinality
            terms = bilinear_expansion(frobenius_from_partition(lam))
            assert len(terms) == 1
            term = terms[0]
            assert term.coeff == Fraction(1, 2**r)
            expected_side = parts if r % 2 == 0 else parts + (0,)
            assert term.q_plus.parts == expected_side
            assert term.q_minus.parts == expected_side
            assert verify_identity(lam).ok

    def test_hook_family_closed_form(self):
        for arm in range(2, 6):
            for leg in range(0, arm - 1):
                merged = dedupe_symmetric(
                    bilinear_expansion(FrobeniusCoords([arm], [leg]))
                )
                assert term_multiset(merged) == Counter(
                    {
                        (Fraction(1, 2), (arm, 0), (leg + 1, 0)): 1,
                        (Fraction(-1, 2), (arm, leg + 1), ()): 1,
                    }
                )

    def test_degenerate_hooks_verify(self):
        for arm in range(0, 4):
            for leg in range(max(arm - 1, 0), 5):
                lam = partition_from_frobenius(FrobeniusCoords([arm], [leg]))
                assert verify_identity(lam).ok

    def test_near_double_rank_two(self):
        for alpha, beta in [((4, 1), (2, 0)), ((5, 2), (3, 1))]:
            fc = FrobeniusCoords(alpha, beta)
            a1, a2 = alpha
            b1 = beta[0]
            merged = dedupe_symmetric(bilinear_expansion(fc))
            assert term_multiset(merged) == Counter(
                {
                    (Fraction(1, 4), (a1, a2), (b1 + 1, a2)): 1,
                    (Fraction(-1, 4), (a1, b1 + 1, a2, 0), (a2, 0)): 1,
                }
            )
            assert verify_identity(partition_from_frobenius(fc)).ok


class TestSweep:
    def test_small_sweep_counts_and_order(self):
        reports = sweep(4)
        assert len(reports) == sum(count_partitions(n) for n in range(1, 5))
        assert all(r.ok for r in reports)
        keys = [(r.lam.weight, r.lam.parts) for r in reports]
        assert keys == sorted(keys)

    def test_parallel_matches_serial(self):
        serial = sweep(5)
        parallel = sweep(5, jobs=4)
        assert [(r.lam.parts, r.ok, str(r.lhs)) for r in serial] == [
            (r.lam.parts, r.ok, str(r.lhs)) for r in parallel
        ]

    def test_rejects_bad_weight(self):
        with pytest.raises(ValueError):
            sweep(0)


class TestStructuralInvariants:
    def test_coefficient_symmetry_under_swap(self):
        for weight in range(1, 9):
            for lam in partitions_of(weight):
                terms = bilinear_expansion(frobenius_from_partition(lam))
                forward = term_multiset(terms)
                swapped = Counter(
                    (t.coeff, t.q_minus.parts, t.q_plus.parts) for t in terms
                )
                assert forward == swapped

    def test_term_counts(self):
        for weight in range(1, 11):
            for lam in partitions_of(weight):
                fc = frobenius_from_partition(lam)
                shared, _ = s_and_t(fc)
                r, s = fc.rank, shared.cardinality
                terms = bilinear_expansion(fc)
                assert len(terms) == 1 << (2 * r - 2 * s)
                merged = dedupe_symmetric(terms)
                if s == r:
                    assert len(merged) == 1
                else:
                    assert len(merged) == 1 << (2 * r - 2 * s - 1)

    def test_rhs_homogeneous_and_odd(self):
        for weight in range(1, 9):
            for lam in partitions_of(weight):
                report = verify_identity(lam)
                assert report.rhs.is_homogeneous(weight) or report.rhs.is_zero
                assert all(i % 2 == 1 for i in report.rhs.variables())
                assert report.term_count % 2 == 0 or report.term_count == 1

    def test_even_cardinality_of_term_sides(self):
        for weight in range(1, 9):
            for lam in partitions_of(weight):
                for term in bilinear_expansion(frobenius_from_partition(lam)):
                    assert term.coeff != 0
                    assert term.q_plus.cardinality % 2 == 0
                    assert term.q_minus.cardinality % 2 == 0

    def test_numeric_consistency(self):
        rng = random.Random(53)
        for weight in range(1, 7):
            for lam in partitions_of(weight):
                report = verify_identity(lam)
                for _ in range(3):
                    xs = [random_fraction(rng) for _ in range(rng.randint(1, 3))]
                    assert report.lhs.eval_power_sums(xs) == report.rhs.eval_power_sums(xs)
