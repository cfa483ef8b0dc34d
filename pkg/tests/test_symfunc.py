import math
import random
from fractions import Fraction

import pytest

from schurq.partitions import (
    FrobeniusCoords,
    Partition,
    StrictPartition,
    frobenius_from_partition,
    partitions_of,
)
from schurq.polyring import GradedPoly
from schurq.symfunc import (
    PolyMatrix,
    SymSeries,
    complete_h,
    determinant,
    hook_schur,
    neutral_q,
    pfaffian,
    q_matrix_entry,
    schur,
    schur_giambelli,
    schur_q,
    schur_q_half,
)

from conftest import (
    determinant_oracle,
    pfaffian_oracle,
    random_fraction,
    random_poly,
    strict_partitions_of,
)


def t(i: int, cutoff=None) -> GradedPoly:
    return GradedPoly.variable(i, cutoff)


def h_oracle(k: int) -> GradedPoly:
    """h_k as a sum over exponent multisets: prod t_i^{m_i} / m_i!."""
    acc = GradedPoly.zero()
    for lam in partitions_of(k):
        mult: dict[int, int] = {}
        for part in lam.parts:
            mult[part] = mult.get(part, 0) + 1
        coeff = Fraction(1)
        mono = []
        for i, m in sorted(mult.items()):
            coeff /= math.factorial(m)
            mono.append((i, m))
        acc = acc + GradedPoly({tuple(mono): coeff})
    return acc


def q_oracle(k: int) -> GradedPoly:
    """q_k over odd-part multisets: prod 2^{m_i} t_i^{m_i} / m_i!."""
    acc = GradedPoly.zero()
    for lam in partitions_of(k):
        if any(p % 2 == 0 for p in lam.parts):
            continue
        mult: dict[int, int] = {}
        for part in lam.parts:
            mult[part] = mult.get(part, 0) + 1
        coeff = Fraction(1)
        mono = []
        for i, m in sorted(mult.items()):
            coeff *= Fraction(2**m, math.factorial(m))
            mono.append((i, m))
        acc = acc + GradedPoly({tuple(mono): coeff})
    return acc


def geometric_series(x: Fraction, depth: int) -> list[Fraction]:
    """Coefficients of 1 / (1 - z*x) up to z^depth."""
    return [x**k for k in range(depth + 1)]


def series_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    depth = len(a) - 1
    out = [Fraction(0)] * (depth + 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            if i + j <= depth:
                out[i + j] += ca * cb
    return out


class TestSeries:
    def test_h_examples(self):
        assert complete_h(0) == GradedPoly.one()
        assert complete_h(-3, 5).is_zero
        assert complete_h(2) == t(1) ** 2 * Fraction(1, 2) + t(2)
        assert complete_h(3) == t(1) ** 3 * Fraction(1, 6) + t(1) * t(2) + t(3)

    def test_q_examples(self):
        assert neutral_q(0) == GradedPoly.one()
        assert neutral_q(-1, 4).is_zero
        assert neutral_q(1) == t(1) * 2
        assert neutral_q(3) == t(1) ** 3 * Fraction(4, 3) + t(3) * 2

    def test_h_matches_multiset_oracle(self):
        for k in range(0, 9):
            assert complete_h(k) == h_oracle(k)

    def test_q_matches_multiset_oracle(self):
        for k in range(0, 9):
            assert neutral_q(k) == q_oracle(k)

    def test_q_depends_only_on_odd_variables(self):
        for k in range(0, 10):
            assert all(i % 2 == 1 for i in neutral_q(k).variables())

    def test_h_generating_function_in_x(self):
        # prod_a 1/(1 - z x_a) = sum h_k(x) z^k with t_i = p_i / i
        xs = [Fraction(1, 2), Fraction(-1, 3), Fraction(2)]
        depth = 6
        series = [Fraction(1)] + [Fraction(0)] * depth
        for x in xs:
            series = series_mul(series, geometric_series(x, depth))
        for k in range(depth + 1):
            assert complete_h(k).eval_power_sums(xs) == series[k]

    def test_q_generating_function_in_x(self):
        # prod_a (1 + z x_a)/(1 - z x_a) = sum q_k(x) z^k
        xs = [Fraction(1, 2), Fraction(1, 3), Fraction(-2, 5)]
        depth = 6
        series = [Fraction(1)] + [Fraction(0)] * depth
        for x in xs:
            numer = [Fraction(1), x] + [Fraction(0)] * (depth - 1)
            series = series_mul(series, series_mul(numer, geometric_series(x, depth)))
        for k in range(depth + 1):
            assert neutral_q(k).eval_power_sums(xs) == series[k]

    def test_truncated_accessor(self):
        assert complete_h(5, 3).is_zero  # homogeneous of degree 5 > cutoff 3
        assert complete_h(3, 3) == complete_h(3)

    def test_symseries_build(self):
        series = SymSeries.build("complete_h", 4)
        assert len(series.coefficients) == 5
        assert series.coefficients[0] == GradedPoly.one()
        assert series.coefficients[2] == complete_h(2)
        qs = SymSeries.build("neutral_q", 3)
        assert qs.coefficients[3] == neutral_q(3, 3)
        with pytest.raises(ValueError):
            SymSeries.build("nope", 3)


class TestDeterminant:
    def test_empty(self):
        assert determinant(PolyMatrix([])) == GradedPoly.one()

    def test_two_by_two_h_matrix(self):
        m = PolyMatrix([[complete_h(3), complete_h(4)], [complete_h(2), complete_h(3)]])
        expected = complete_h(3) * complete_h(3) - complete_h(2) * complete_h(4)
        assert determinant(m) == expected

    def test_diagonal(self):
        zero = GradedPoly.zero()
        m = PolyMatrix([[t(1), zero, zero], [zero, t(2), zero], [zero, zero, t(3)]])
        assert determinant(m) == t(1) * t(2) * t(3)

    def test_matches_permutation_oracle(self):
        rng = random.Random(31)
        for n in range(1, 5):
            rows = [[random_poly(rng, cutoff=4, max_var=2, max_terms=2) for _ in range(n)] for _ in range(n)]
            assert determinant(PolyMatrix(rows)) == determinant_oracle(rows, GradedPoly.one(4))

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            PolyMatrix([[GradedPoly.one()], [GradedPoly.one(), GradedPoly.zero()]])


def random_skew(rng: random.Random, n: int) -> list[list[GradedPoly]]:
    zero = GradedPoly.zero(4)
    rows = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            p = random_poly(rng, cutoff=4, max_var=2, max_terms=2)
            rows[i][j] = p
            rows[j][i] = -p
    return rows


class TestPfaffian:
    def test_empty(self):
        assert pfaffian(PolyMatrix([])) == GradedPoly.one()

    def test_two_by_two(self):
        a = t(1) + t(2)
        m = PolyMatrix([[GradedPoly.zero(), a], [-a, GradedPoly.zero()]])
        assert pfaffian(m) == a

    def test_four_by_four_expansion(self):
        # upper entries (a, b, c | d, e | f) give a*f - b*e + c*d
        a, b, c, d, e, f = (t(i) for i in range(1, 7))
        zero = GradedPoly.zero()
        m = PolyMatrix(
            [
                [zero, a, b, c],
                [-a, zero, d, e],
                [-b, -d, zero, f],
                [-c, -e, -f, zero],
            ]
        )
        assert pfaffian(m) == a * f - b * e + c * d

    def test_matches_matching_oracle(self):
        rng = random.Random(37)
        for n in (2, 4, 6):
            rows = random_skew(rng, n)
            assert pfaffian(PolyMatrix(rows)) == pfaffian_oracle(rows, GradedPoly.one(4))

    def test_square_is_determinant(self):
        rng = random.Random(41)
        for n in (2, 4, 6):
            rows = random_skew(rng, n)
            pf = pfaffian(PolyMatrix(rows))
            assert pf * pf == determinant(PolyMatrix(rows))

    def test_permutation_covariance(self):
        rng = random.Random(43)
        rows = random_skew(rng, 4)
        for perm in ((1, 0, 2, 3), (3, 2, 1, 0), (1, 2, 3, 0)):
            permuted = [[rows[perm[i]][perm[j]] for j in range(4)] for i in range(4)]
            inversions = sum(
                1 for a in range(4) for b in range(a + 1, 4) if perm[a] > perm[b]
            )
            sign = -1 if inversions % 2 else 1
            assert pfaffian(PolyMatrix(permuted)) == pfaffian(PolyMatrix(rows)) * sign

    def test_rejects_odd_dimension(self):
        with pytest.raises(ValueError):
            pfaffian(PolyMatrix([[GradedPoly.zero()]]))

    def test_rejects_non_skew(self):
        m = PolyMatrix([[GradedPoly.zero(), t(1)], [t(1), GradedPoly.zero()]])
        with pytest.raises(ValueError):
            pfaffian(m)


class TestSchur:
    def test_empty(self):
        assert schur(Partition(), 4) == GradedPoly.one()

    def test_row_two(self):
        assert schur(Partition([2]), 2) == complete_h(2, 2)

    def test_three_three_odd_anchor(self):
        poly = schur(Partition([3, 3]), 6).restrict_to_odd()
        expected = GradedPoly.parse("(1/144)*t1^6 - (1/6)*t1^3*t3 + t3^2", 6)
        assert poly == expected

    def test_homogeneous(self):
        for weight in range(1, 8):
            for lam in partitions_of(weight):
                assert schur(lam, weight).is_homogeneous(weight)

    def test_monomial_positivity_spot_check(self):
        rng = random.Random(47)
        for _ in range(10):
            lam = Partition([rng.randint(1, 4) for _ in range(rng.randint(1, 3))])
            xs = [abs(random_fraction(rng)) for _ in range(3)]
            assert schur(lam, lam.weight).eval_power_sums(xs) >= 0

    def test_hooks(self):
        assert hook_schur(0, 0, 1) == t(1, 1)
        assert hook_schur(1, 0, 2) == t(1, 2) ** 2 * Fraction(1, 2) + t(2, 2)
        assert hook_schur(0, 1, 2) == t(1, 2) ** 2 * Fraction(1, 2) - t(2, 2)
        with pytest.raises(ValueError):
            hook_schur(-1, 0, 2)

    def test_giambelli_trivial_cases(self):
        assert schur_giambelli(FrobeniusCoords([], []), 3) == GradedPoly.one()
        assert schur_giambelli(FrobeniusCoords([1], [0]), 2) == schur(Partition([2]), 2)

    def test_giambelli_matches_jacobi_trudi(self):
        for weight in range(0, 9):
            for lam in partitions_of(weight):
                fc = frobenius_from_partition(lam)
                assert schur_giambelli(fc, weight) == schur(lam, weight)


class TestQMatrix:
    def test_zero_zero(self):
        assert q_matrix_entry(0, 0, 5).is_zero

    def test_first_column_is_q(self):
        for j in range(1, 6):
            assert q_matrix_entry(j, 0) == neutral_q(j)
            assert q_matrix_entry(0, j) == -neutral_q(j)

    def test_two_one(self):
        expected = t(1) ** 3 * Fraction(4, 3) - t(3) * 4
        assert q_matrix_entry(2, 1) == expected

    def test_antisymmetry(self):
        for i in range(0, 9):
            for j in range(0, 9):
                assert q_matrix_entry(i, j, 10) == -q_matrix_entry(j, i, 10)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            q_matrix_entry(-1, 2)


class TestSchurQ:
    def test_empty(self):
        assert schur_q(StrictPartition(), 3) == GradedPoly.one()

    def test_two_one(self):
        expected = t(1) ** 3 * Fraction(4, 3) - t(3) * 4
        assert schur_q(StrictPartition([2, 1]), 3) == expected

    def test_one_zero(self):
        assert schur_q(StrictPartition([1, 0]), 1) == neutral_q(1, 1)

    def test_odd_cardinality_supplements(self):
        assert schur_q(StrictPartition([3]), 3) == neutral_q(3, 3)
        assert schur_q(StrictPartition([0]), 2) == GradedPoly.one()
        assert schur_q(StrictPartition([2, 1, 0]), 3) == schur_q(StrictPartition([2, 1]), 3)

    def test_only_odd_variables(self):
        for weight in range(1, 7):
            for parts in strict_partitions_of(weight, allow_trailing_zero=True):
                poly = schur_q(StrictPartition(parts), weight)
                assert all(i % 2 == 1 for i in poly.variables())

    def test_homogeneous(self):
        for weight in range(1, 7):
            for parts in strict_partitions_of(weight):
                assert schur_q(StrictPartition(parts), weight).is_homogeneous(weight)

    def test_half_examples(self):
        assert schur_q_half(StrictPartition(), 2) == GradedPoly.one()
        assert schur_q_half(StrictPartition([1, 0]), 1) == t(1, 1)
        expected = t(1, 3) ** 3 * Fraction(1, 6) - t(3, 3) * 2
        assert schur_q_half(StrictPartition([2, 1]), 3) == expected

    def test_half_is_scaling(self):
        for parts in [(2,), (3, 1), (4, 2, 1), (5, 0)]:
            alpha = StrictPartition(parts)
            w = alpha.weight
            assert schur_q_half(alpha, w) == schur_q(alpha, w).scale_vars(Fraction(1, 2))
