"""Bilinear expansion of a Schur function into products of Schur Q-functions.

For a partition with Frobenius coordinates ``(alpha | beta)`` of rank r and
``s = #(alpha & I(beta))``, the Schur function restricted to odd flow
variables expands as a signed sum over polarizations::

    s(t') = (-1)**(r(r+1)/2 + s) / 2**(2r - s)
            * sum_mu  sgn(mu) * (-1)**(pi(mu) + hat_m_minus(mu)/2)
                      * Qh[hat_mu_plus] * Qh[hat_mu_minus]

where ``Qh`` is the Schur Q-function evaluated at half the odd flow
variables.  Both sides are weight-homogeneous of degree |lambda|, so
verifying at cutoff W = |lambda| is an exact check of the identity.

The exponent uses ``hat_m_minus`` = m_minus rounded up to even (the appended
cardinality), while the Q arguments use the collapsed supplemented
partitions; these differ exactly when a polarization side of odd cardinality
ends in a 0 part, and that split is what makes degenerate cases such as the
single-box partition come out right.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .partitions import (
    FrobeniusCoords,
    Partition,
    StrictPartition,
    frobenius_from_partition,
    partitions_of,
)
from .polarization import enumerate_polarizations, s_and_t
from .polyring import GradedPoly
from .symfunc import schur, schur_q_half


class SymmetryError(Exception):
    """A (mu+, mu-) <-> (mu-, mu+) pair carried unequal coefficients."""


@dataclass(frozen=True)
class ExpansionTerm:
    """One summand: an exact coefficient and the two supplemented sides."""

    coeff: Fraction
    q_plus: StrictPartition
    q_minus: StrictPartition


@dataclass(frozen=True)
class VerificationReport:
    lam: Partition
    weight_cutoff: int
    lhs: GradedPoly
    rhs: GradedPoly
    residual: GradedPoly
    ok: bool
    term_count: int


def bilinear_expansion(fc: FrobeniusCoords) -> list[ExpansionTerm]:
    """One term per polarization, in ascending canonical-marking order."""
    r = fc.rank
    shared, _ = s_and_t(fc)
    s = shared.cardinality
    base = Fraction(1, 1 << (2 * r - s))
    if (r * (r + 1) // 2 + s) % 2:
        base = -base
    terms = []
    for pol in enumerate_polarizations(fc):
        coeff = base * pol.sgn
        if (pol.pi + pol.hat_m_minus // 2) % 2:
            coeff = -coeff
        terms.append(ExpansionTerm(coeff, pol.hat_mu_plus, pol.hat_mu_minus))
    return terms


def evaluate_expansion(terms, cutoff: int) -> GradedPoly:
    total = GradedPoly.zero(cutoff)
    for term in terms:
        product = schur_q_half(term.q_plus, cutoff) * schur_q_half(term.q_minus, cutoff)
        total = total + product * term.coeff
    return total


def verify_identity(lam: Partition, cutoff: int | None = None) -> VerificationReport:
    """Check the expansion against the Jacobi-Trudi route, exactly.

    Homogeneity makes cutoff = |lambda| sufficient; that is the default.
    A mismatch yields ok=False rather than an exception.
    """
    if cutoff is None:
        cutoff = lam.weight
    fc = frobenius_from_partition(lam)
    lhs = schur(lam, cutoff).restrict_to_odd()
    terms = bilinear_expansion(fc)
    rhs = evaluate_expansion(terms, cutoff)
    residual = lhs - rhs
    return VerificationReport(
        lam=lam,
        weight_cutoff=cutoff,
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        ok=residual.is_zero,
        term_count=len(terms),
    )


def sweep(max_weight: int, jobs: int = 1) -> list[VerificationReport]:
    """Verify every partition of weight 1..max_weight.

    Reports come back ordered by (weight, lexicographic parts) regardless of
    completion order when jobs > 1.
    """
    if max_weight < 1:
        raise ValueError("max_weight must be >= 1")
    lams = []
    for weight in range(1, max_weight + 1):
        lams.extend(sorted(partitions_of(weight), key=lambda p: p.parts))
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(verify_identity, lams))
    else:
        reports = [verify_identity(lam) for lam in lams]
    return reports


def dedupe_symmetric(terms) -> list[ExpansionTerm]:
    """Merge each (mu+, mu-) / (mu-, mu+) pair into one doubled term.

    Every expansion is invariant under swapping the two sides, so the terms
    pair up with equal coefficients; a self-symmetric term (equal sides) is
    kept as is.  Unequal paired coefficients raise :class:`SymmetryError`.
    """
    groups: dict[frozenset, list[ExpansionTerm]] = {}
    order: list[frozenset] = []
    for term in terms:
        key = frozenset({term.q_plus.parts, term.q_minus.parts})
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(term)

    merged: list[ExpansionTerm] = []
    for key in order:
        bucket = groups[key]
        first = bucket[0]
        if first.q_plus == first.q_minus:
            # Self-symmetric orientation; pair consecutive duplicates and keep
            # a lone survivor (the single-term case of a double) unchanged.
            idx = 0
            while idx + 1 < len(bucket):
                a, b = bucket[idx], bucket[idx + 1]
                if a.coeff != b.coeff:
                    raise SymmetryError(
                        f"unequal coefficients {a.coeff} vs {b.coeff} for {a.q_plus}"
                    )
                merged.append(ExpansionTerm(a.coeff * 2, a.q_plus, a.q_minus))
                idx += 2
            if idx < len(bucket):
                merged.append(bucket[idx])
            continue
        fwd = [t for t in bucket if (t.q_plus, t.q_minus) == (first.q_plus, first.q_minus)]
        rev = [t for t in bucket if (t.q_plus, t.q_minus) != (first.q_plus, first.q_minus)]
        if len(fwd) != len(rev):
            raise SymmetryError(
                f"orientation counts differ for pair {first.q_plus}/{first.q_minus}"
            )
        for a, b in zip(fwd, rev):
            if a.coeff != b.coeff:
                raise SymmetryError(
                    f"unequal coefficients {a.coeff} vs {b.coeff} for "
                    f"{a.q_plus}/{a.q_minus}"
                )
            merged.append(ExpansionTerm(a.coeff + b.coeff, a.q_plus, a.q_minus))
    return merged
