"""Schur functions and Schur Q-functions over the graded flow-variable ring.

Schur functions come from the Jacobi-Trudi determinant in the complete
homogeneous generators h_k, defined by sum_k h_k z^k = exp(sum_i t_i z^i),
and from the Giambelli determinant in hook Schur functions as a second,
independent route.  Schur Q-functions come from the Pfaffian of the matrix
of two-row functions Q_{ij} built out of the neutral generators q_k, where
sum_k q_k z^k = exp(2 * sum_{i odd} t_i z^i).

Both h_k and q_k are weight-homogeneous of degree k, so the exact series are
computed once per index and cached; public accessors truncate on demand.
Determinants use Laplace expansion with minors memoised on row subsets
(exact in the truncated ring, where fraction-free elimination would divide
by minors that truncation may have zeroed), and Pfaffians expand along the
first row with memoisation on index subsets.
"""

from __future__ import annotations

import pickle
from fractions import Fraction
from dataclasses import dataclass

from .partitions import FrobeniusCoords, Partition, StrictPartition, supplement
from .polyring import GradedPoly

_HALF = Fraction(1, 2)

# Exact (cutoff-free) series caches; values are homogeneous of degree == key.
_h_exact: dict[int, GradedPoly] = {}
_q_exact: dict[int, GradedPoly] = {}
_schur_cache: dict[tuple[tuple[int, ...], int | None], GradedPoly] = {}
_schur_q_exact: dict[tuple[int, ...], GradedPoly] = {}
_schur_q_half_exact: dict[tuple[int, ...], GradedPoly] = {}

_CACHE_FORMAT_VERSION = 1


def _h_series(k: int) -> GradedPoly:
    """Exact h_k via k*h_k = sum_{i<=k} i*t_i*h_{k-i}."""
    if k not in _h_exact:
        for m in range(k + 1):
            if m in _h_exact:
                continue
            if m == 0:
                _h_exact[0] = GradedPoly.one()
                continue
            acc = GradedPoly.zero()
            for i in range(1, m + 1):
                acc = acc + GradedPoly.variable(i) * _h_exact[m - i] * i
            _h_exact[m] = acc * Fraction(1, m)
    return _h_exact[k]


def _q_series(k: int) -> GradedPoly:
    """Exact q_k via k*q_k = sum_{odd i<=k} 2*i*t_i*q_{k-i}."""
    if k not in _q_exact:
        for m in range(k + 1):
            if m in _q_exact:
                continue
            if m == 0:
                _q_exact[0] = GradedPoly.one()
                continue
            acc = GradedPoly.zero()
            for i in range(1, m + 1, 2):
                acc = acc + GradedPoly.variable(i) * _q_exact[m - i] * (2 * i)
            _q_exact[m] = acc * Fraction(1, m)
    return _q_exact[k]


def complete_h(k: int, cutoff: int | None = None) -> GradedPoly:
    """Degree-k coefficient of exp(sum t_i z^i); zero for k < 0."""
    if k < 0:
        return GradedPoly.zero(cutoff)
    if cutoff is not None and k > cutoff:
        # h_k is homogeneous of degree k, so it truncates to zero outright.
        return GradedPoly.zero(cutoff)
    return _h_series(k).truncate(cutoff)


def neutral_q(k: int, cutoff: int | None = None) -> GradedPoly:
    """Degree-k coefficient of exp(2 sum_{odd i} t_i z^i); zero for k < 0."""
    if k < 0:
        return GradedPoly.zero(cutoff)
    if cutoff is not None and k > cutoff:
        return GradedPoly.zero(cutoff)
    return _q_series(k).truncate(cutoff)


@dataclass(frozen=True)
class SymSeries:
    """Generating-series coefficients h_0..h_W or q_0..q_W at a fixed cutoff."""

    kind: str
    cutoff: int
    coefficients: tuple[GradedPoly, ...]

    @classmethod
    def build(cls, kind: str, cutoff: int) -> "SymSeries":
        if kind == "complete_h":
            gen = complete_h
        elif kind == "neutral_q":
            gen = neutral_q
        else:
            raise ValueError(f"unknown series kind {kind!r}")
        return cls(kind, cutoff, tuple(gen(k, cutoff) for k in range(cutoff + 1)))


class PolyMatrix:
    """A square matrix of :class:`GradedPoly` entries."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(row) for row in rows)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("matrix must be square")
        self.rows = rows

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def is_skew_symmetric(self) -> bool:
        n = self.dimension
        for i in range(n):
            if not self.rows[i][i].is_zero:
                return False
            for j in range(i + 1, n):
                if self.rows[i][j] != -self.rows[j][i]:
                    return False
        return True


def _det_rows(rows, one):
    """Determinant by column-wise Laplace expansion, memoised on row subsets.

    Generic over any commutative ring element supporting +, -, *.
    """
    n = len(rows)
    memo: dict[tuple[int, ...], object] = {(): one}

    def minor(row_idx: tuple[int, ...]):
        if row_idx in memo:
            return memo[row_idx]
        col = n - len(row_idx)
        acc = None
        for pos, r in enumerate(row_idx):
            entry = rows[r][col]
            sub = minor(row_idx[:pos] + row_idx[pos + 1 :])
            piece = entry * sub
            if pos % 2:
                piece = -piece
            acc = piece if acc is None else acc + piece
        memo[row_idx] = acc
        return acc

    return minor(tuple(range(n)))


def _pf_rows(rows, one):
    """Pfaffian by first-row expansion, memoised on index subsets."""
    n = len(rows)
    memo: dict[tuple[int, ...], object] = {(): one}

    def pf(idx: tuple[int, ...]):
        if idx in memo:
            return memo[idx]
        first = idx[0]
        acc = None
        for pos in range(1, len(idx)):
            partner = idx[pos]
            rest = idx[1:pos] + idx[pos + 1 :]
            piece = rows[first][partner] * pf(rest)
            if pos % 2 == 0:
                piece = -piece
            acc = piece if acc is None else acc + piece
        memo[idx] = acc
        return acc

    return pf(tuple(range(n)))


def determinant(matrix: PolyMatrix) -> GradedPoly:
    if matrix.dimension == 0:
        return GradedPoly.one()
    return _det_rows(matrix.rows, GradedPoly.one())


def pfaffian(matrix: PolyMatrix) -> GradedPoly:
    n = matrix.dimension
    if n % 2:
        raise ValueError("pfaffian requires even dimension")
    if not matrix.is_skew_symmetric():
        raise ValueError("pfaffian requires a skew-symmetric matrix")
    if n == 0:
        return GradedPoly.one()
    return _pf_rows(matrix.rows, GradedPoly.one())


def schur(lam: Partition, cutoff: int | None = None) -> GradedPoly:
    """Schur function via the Jacobi-Trudi determinant det(h_{lam_i - i + j})."""
    key = (lam.parts, cutoff)
    cached = _schur_cache.get(key)
    if cached is not None:
        return cached
    n = lam.length
    if n == 0:
        result = GradedPoly.one(cutoff)
    else:
        rows = [
            [complete_h(lam.parts[i] - i + j, cutoff) for j in range(n)]
            for i in range(n)
        ]
        result = _det_rows(rows, GradedPoly.one(cutoff))
    _schur_cache[key] = result
    return result


def hook_schur(arm: int, leg: int, cutoff: int | None = None) -> GradedPoly:
    """Schur function of the hook partition (arm+1, 1^leg)."""
    if arm < 0 or leg < 0:
        raise ValueError("hook coordinates must be non-negative")
    return schur(Partition([arm + 1] + [1] * leg), cutoff)


def schur_giambelli(fc: FrobeniusCoords, cutoff: int | None = None) -> GradedPoly:
    """Schur function via the Giambelli determinant of hook Schur functions."""
    r = fc.rank
    if r == 0:
        return GradedPoly.one(cutoff)
    rows = [
        [hook_schur(fc.alpha.parts[j], fc.beta.parts[k], cutoff) for k in range(r)]
        for j in range(r)
    ]
    return _det_rows(rows, GradedPoly.one(cutoff))


def q_matrix_entry(i: int, j: int, cutoff: int | None = None) -> GradedPoly:
    """Q_{ij} = q_i q_j + 2 sum_{k=1}^{j} (-1)^k q_{i+k} q_{j-k}, with Q_00 = 0."""
    if i < 0 or j < 0:
        raise ValueError("Q-matrix indices must be non-negative")
    if i == 0 and j == 0:
        return GradedPoly.zero(cutoff)
    if cutoff is not None and i + j > cutoff:
        return GradedPoly.zero(cutoff)
    acc = neutral_q(i, cutoff) * neutral_q(j, cutoff)
    for k in range(1, j + 1):
        piece = neutral_q(i + k, cutoff) * neutral_q(j - k, cutoff) * 2
        acc = acc - piece if k % 2 else acc + piece
    return acc


def _schur_q_exact_for(parts: tuple[int, ...]) -> GradedPoly:
    cached = _schur_q_exact.get(parts)
    if cached is not None:
        return cached
    alpha = StrictPartition(parts)
    if alpha.cardinality % 2:
        result = _schur_q_exact_for(supplement(alpha).parts)
    elif alpha.cardinality == 0:
        result = GradedPoly.one()
    else:
        n = alpha.cardinality
        rows = [
            [q_matrix_entry(alpha.parts[i], alpha.parts[j]) for j in range(n)]
            for i in range(n)
        ]
        result = _pf_rows(rows, GradedPoly.one())
    _schur_q_exact[parts] = result
    return result


def schur_q(alpha: StrictPartition, cutoff: int | None = None) -> GradedPoly:
    """Schur Q-function: the Pfaffian of (Q_{alpha_i alpha_j}).

    Odd cardinality delegates to :func:`supplement`, which appends a 0 part
    or strips a trailing one; see that function for the collision rule.
    """
    if cutoff is not None and alpha.weight > cutoff:
        return GradedPoly.zero(cutoff)
    return _schur_q_exact_for(alpha.parts).truncate(cutoff)


def schur_q_half(alpha: StrictPartition, cutoff: int | None = None) -> GradedPoly:
    """Schur Q-function with every variable halved (t_i -> t_i / 2)."""
    if cutoff is not None and alpha.weight > cutoff:
        return GradedPoly.zero(cutoff)
    cached = _schur_q_half_exact.get(alpha.parts)
    if cached is None:
        cached = _schur_q_exact_for(alpha.parts).scale_vars(_HALF)
        _schur_q_half_exact[alpha.parts] = cached
    return cached.truncate(cutoff)


# -- series-cache persistence (used by the CLI) -----------------------------


def _poly_to_plain(poly: GradedPoly) -> list:
    return [(mono, coeff.numerator, coeff.denominator) for mono, coeff in poly.terms.items()]


def _poly_from_plain(data) -> GradedPoly:
    terms = {
        tuple(tuple(pair) for pair in mono): Fraction(num, den)
        for mono, num, den in data
    }
    return GradedPoly(terms, None)


def save_series_cache(path) -> None:
    payload = {
        "version": _CACHE_FORMAT_VERSION,
        "h": {k: _poly_to_plain(v) for k, v in _h_exact.items()},
        "q": {k: _poly_to_plain(v) for k, v in _q_exact.items()},
    }
    with open(path, "wb") as handle:
        pickle.dump(payload, handle, protocol=pickle.HIGHEST_PROTOCOL)


def load_series_cache(path) -> bool:
    """Load a previously saved series cache; ignore missing or stale files."""
    try:
        with open(path, "rb") as handle:
            payload = pickle.load(handle)
    except (OSError, pickle.UnpicklingError, EOFError, AttributeError):
        return False
    if not isinstance(payload, dict) or payload.get("version") != _CACHE_FORMAT_VERSION:
        return False
    try:
        for k, data in payload.get("h", {}).items():
            _h_exact.setdefault(int(k), _poly_from_plain(data))
        for k, data in payload.get("q", {}).items():
            _q_exact.setdefault(int(k), _poly_from_plain(data))
    except (TypeError, ValueError, ZeroDivisionError):
        return False
    return True
