"""Polarizations of Frobenius coordinates and their binary markings.

Given coordinates ``(alpha | beta)`` of rank r, write ``I(beta)`` for beta
shifted up by one and set ``S = alpha & I(beta)``, ``T = alpha | I(beta)``
(as sets).  A *polarization* is a pair of strict partitions
``(mu_plus, mu_minus)`` with intersection S and union T; there are exactly
``2**(2r - 2s)`` of them, where ``s = #S``.

A *binary marking* indexed by ``j in [0, 2**(2r))`` assigns a sign to each of
the 2r generator slots ``(alpha_1 .. alpha_r, beta_1+1 .. beta_r+1)``: slot k
gets '+' when the k-th binary digit of j (most significant digit first,
written with exactly 2r digits) is 0, and '-' when it is 1.  A marking with
two identical signed slots vanishes.  Each nonvanishing marking determines a
polarization by collecting the '+' slots and the '-' slots; markings with the
same polarization form classes of size ``2**s``, and the class representative
in which every slot holding an element of S inside the alpha block carries
'+' is called canonical.

Signs: ``sigma(j)`` is +1 or -1 according to the parity of the number of
alpha-block slots holding an element of S with a '-' sign (so sigma is +1 at
the canonical representative), and the sign of a polarization is the
signature of the permutation that sorts the canonical signed word into
"'+' slots by decreasing index, then '-' slots by decreasing index", all 2r
signed generators being treated as pairwise anticommuting.
"""

from __future__ import annotations

from dataclasses import dataclass

from .partitions import FrobeniusCoords, StrictPartition, shift_up, supplement

Sign = int  # +1 or -1


@dataclass(frozen=True)
class MarkingIndex:
    """An integer j in [0, 2**(2r)) together with the rank r it refers to."""

    j: int
    r: int

    def __post_init__(self):
        if not 0 <= self.j < 1 << (2 * self.r):
            raise ValueError(f"marking index {self.j} out of range for rank {self.r}")

    def epsilon(self) -> tuple[Sign, ...]:
        """Slot signs, most significant binary digit first."""
        width = 2 * self.r
        return tuple(
            -1 if (self.j >> (width - k)) & 1 else 1 for k in range(1, width + 1)
        )

    @classmethod
    def from_epsilon(cls, eps: tuple[Sign, ...]) -> "MarkingIndex":
        j = 0
        for sign in eps:
            j = (j << 1) | (1 if sign < 0 else 0)
        return cls(j, len(eps) // 2)


@dataclass(frozen=True)
class Polarization:
    """One polarization with all of its sign and counting data.

    ``hat_mu_plus``/``hat_mu_minus`` are the supplemented partitions (even
    cardinality, zero-collision collapsed) that feed Q-function arguments.
    ``hat_m_minus`` is ``m_minus`` rounded up to even, i.e. the cardinality
    of mu_minus with a 0 part appended when odd; the sign bookkeeping needs
    this count even where the collapsed ``hat_mu_minus`` is shorter.
    """

    mu_plus: StrictPartition
    mu_minus: StrictPartition
    sgn: Sign
    pi: int
    pi_tilde: int
    m_plus: int
    m_minus: int
    hat_mu_plus: StrictPartition
    hat_mu_minus: StrictPartition
    hat_m_minus: int
    canonical_j: MarkingIndex


def s_and_t(fc: FrobeniusCoords) -> tuple[StrictPartition, StrictPartition]:
    """Intersection and union of alpha with I(beta), as strict partitions."""
    a = set(fc.alpha.parts)
    ib = set(shift_up(fc.beta).parts)
    return StrictPartition(a & ib), StrictPartition(a | ib)


def _signed_word(fc: FrobeniusCoords, eps: tuple[Sign, ...]) -> list[tuple[int, Sign]]:
    r = fc.rank
    word = [(fc.alpha.parts[i], eps[i]) for i in range(r)]
    word += [(fc.beta.parts[i] + 1, eps[r + i]) for i in range(r)]
    return word


def _word_permutation_sign(
    word: list[tuple[int, Sign]],
    mu_plus: StrictPartition,
    mu_minus: StrictPartition,
) -> Sign:
    """Signature of the sort taking `word` into (mu_plus '+', mu_minus '-')."""
    target = [(v, 1) for v in mu_plus.parts] + [(v, -1) for v in mu_minus.parts]
    position = {token: k for k, token in enumerate(target)}
    order = [position[token] for token in word]
    inversions = sum(
        1
        for a in range(len(order))
        for b in range(a + 1, len(order))
        if order[a] > order[b]
    )
    return -1 if inversions % 2 else 1


def _split_by_sign(word) -> tuple[StrictPartition, StrictPartition]:
    plus = [v for v, sign in word if sign > 0]
    minus = [v for v, sign in word if sign < 0]
    return StrictPartition(plus), StrictPartition(minus)


def _canonicalize(fc: FrobeniusCoords, eps: tuple[Sign, ...], shared: set[int]):
    """Flip the shared-element sign pairs so alpha-block slots carry '+'.

    Returns (canonical eps, sigma) where sigma is the parity sign of the
    number of flips.
    """
    r = fc.rank
    flips = [
        i for i in range(r) if fc.alpha.parts[i] in shared and eps[i] < 0
    ]
    if not flips:
        return eps, 1
    new_eps = list(eps)
    partner_of = {fc.beta.parts[i] + 1: r + i for i in range(r)}
    for i in flips:
        new_eps[i] = 1
        new_eps[partner_of[fc.alpha.parts[i]]] = -1
    return tuple(new_eps), (-1 if len(flips) % 2 else 1)


def _polarization_from_canonical(
    fc: FrobeniusCoords, eps: tuple[Sign, ...], shared: set[int]
) -> Polarization:
    word = _signed_word(fc, eps)
    mu_plus, mu_minus = _split_by_sign(word)
    sgn = _word_permutation_sign(word, mu_plus, mu_minus)
    alpha_set = set(fc.alpha.parts)
    ib_set = set(shift_up(fc.beta).parts)
    minus_set = set(mu_minus.parts)
    m_minus = mu_minus.cardinality
    return Polarization(
        mu_plus=mu_plus,
        mu_minus=mu_minus,
        sgn=sgn,
        pi=len(alpha_set & minus_set),
        pi_tilde=len(ib_set & minus_set),
        m_plus=mu_plus.cardinality,
        m_minus=m_minus,
        hat_mu_plus=supplement(mu_plus),
        hat_mu_minus=supplement(mu_minus),
        hat_m_minus=m_minus + (m_minus % 2),
        canonical_j=MarkingIndex.from_epsilon(eps),
    )


def binary_marking(
    fc: FrobeniusCoords, index: MarkingIndex | int
) -> tuple[Polarization, Sign] | None:
    """Evaluate the j-th binary marking.

    Returns None when the marking vanishes (two identical signed slots),
    otherwise the polarization it determines together with sigma(j).
    """
    if isinstance(index, int):
        index = MarkingIndex(index, fc.rank)
    elif index.r != fc.rank:
        raise ValueError("marking index rank does not match the coordinates")
    eps = index.epsilon()
    word = _signed_word(fc, eps)
    if len(set(word)) != len(word):
        return None
    shared = set(fc.alpha.parts) & set(shift_up(fc.beta).parts)
    canon_eps, sigma = _canonicalize(fc, eps, shared)
    return _polarization_from_canonical(fc, canon_eps, shared), sigma


def polarization_sign(fc: FrobeniusCoords, index: MarkingIndex | int) -> Sign:
    """Sign of the polarization at a canonical representative.

    Raises ValueError when the marking vanishes or is not canonical.
    """
    if isinstance(index, int):
        index = MarkingIndex(index, fc.rank)
    eps = index.epsilon()
    word = _signed_word(fc, eps)
    if len(set(word)) != len(word):
        raise ValueError(f"marking {index.j} vanishes")
    shared = set(fc.alpha.parts) & set(shift_up(fc.beta).parts)
    for i in range(fc.rank):
        if fc.alpha.parts[i] in shared and eps[i] < 0:
            raise ValueError(f"marking {index.j} is not a canonical representative")
    mu_plus, mu_minus = _split_by_sign(word)
    return _word_permutation_sign(word, mu_plus, mu_minus)


def enumerate_polarizations(fc: FrobeniusCoords) -> list[Polarization]:
    """All polarizations, ordered by ascending canonical marking index.

    Iterates directly over the assignments of the free elements of T \\ S to
    the two sides instead of scanning all 2**(2r) markings; the scan route is
    kept in :func:`enumerate_polarizations_by_scan` as a cross-check.
    """
    shared_sp, union_sp = s_and_t(fc)
    shared = set(shared_sp.parts)
    free = [v for v in union_sp.parts if v not in shared]
    r = fc.rank
    alpha_parts = fc.alpha.parts
    ib_parts = tuple(v + 1 for v in fc.beta.parts)

    results = []
    for mask in range(1 << len(free)):
        plus_free = {v for k, v in enumerate(free) if not (mask >> k) & 1}
        eps: list[Sign] = []
        for v in alpha_parts:
            eps.append(1 if v in shared or v in plus_free else -1)
        for v in ib_parts:
            if v in shared:
                eps.append(-1)
            else:
                eps.append(1 if v in plus_free else -1)
        results.append(_polarization_from_canonical(fc, tuple(eps), shared))
    results.sort(key=lambda p: p.canonical_j.j)
    return results


def enumerate_polarizations_by_scan(fc: FrobeniusCoords) -> list[Polarization]:
    """Full-scan enumeration over all 2**(2r) markings (validation mode)."""
    seen: dict[int, Polarization] = {}
    for j in range(1 << (2 * fc.rank)):
        hit = binary_marking(fc, j)
        if hit is None:
            continue
        pol, _ = hit
        seen.setdefault(pol.canonical_j.j, pol)
    return [seen[j] for j in sorted(seen)]
