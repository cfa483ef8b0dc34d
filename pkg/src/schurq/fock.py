"""Exact free-fermion Fock-space computations (the cross-check oracle).

Basis states are Maya diagrams encoded as a charge n and a partition: the
occupied particle positions are l_i = lam_i - i + n, saturating to n - i
after the stored parts run out.  Charged generators act by wedge insertion
(psi_j) and interior product (psidag_j) with the usual fermionic signs.

Neutral generators phi+_j = (psi_j + (-1)^j psidag_{-j}) / sqrt(2) and
phi-_j = i (psi_j - (-1)^j psidag_{-j}) / sqrt(2) force two bookkeeping
devices:

* coefficients are Gaussian rationals over the graded polynomial ring
  (pairs of :class:`GradedPoly` for real and imaginary parts), and
* each vector carries an integer ``half_pow`` e meaning a global factor
  2**(e/2); every phi application decrements e, and a vacuum amplitude with
  odd e is always zero (each phi flips charge parity), so results stay in
  the Gaussian rationals.

Dressed generators are conjugates by the flow-group elements and act as
finite h_k-weighted shift series truncated at the cutoff weight:

    psi_j(t)    -> sum_k h_k(t)    psi_{j-k}
    psidag_j(t) -> sum_k h_k(-t)   psidag_{j+k}
    phi_j(tB)   -> sum_k h_k(t')   phi_{j-k}      (t' = odd variables only)

The closed forms are not assumed: the test suite checks the commutators
[J_n, psi_j] = psi_{j-n}, [J_n, psidag_j] = -psidag_{j+n} and, for odd n,
[JB_n, phi_j] = phi_{j-n} against the direct actions of the current
operators implemented below before trusting them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .partitions import FrobeniusCoords, Partition, StrictPartition
from .polyring import GradedPoly
from .symfunc import _det_rows, _pf_rows, complete_h


class WickHypothesisError(Exception):
    """The operator word does not satisfy the pairing-formula hypotheses."""


# -- coefficients ------------------------------------------------------------


class GaussianRationalPoly:
    """A pair (re, im) of graded polynomials representing re + i*im."""

    __slots__ = ("re", "im")

    def __init__(self, re: GradedPoly, im: GradedPoly | None = None):
        self.re = re
        self.im = im if im is not None else GradedPoly.zero(re.cutoff)

    @classmethod
    def zero(cls, cutoff: int | None = None) -> "GaussianRationalPoly":
        return cls(GradedPoly.zero(cutoff))

    @classmethod
    def one(cls, cutoff: int | None = None) -> "GaussianRationalPoly":
        return cls(GradedPoly.one(cutoff))

    @classmethod
    def i_unit(cls, cutoff: int | None = None) -> "GaussianRationalPoly":
        return cls(GradedPoly.zero(cutoff), GradedPoly.one(cutoff))

    @property
    def is_zero(self) -> bool:
        return self.re.is_zero and self.im.is_zero

    def times_i(self) -> "GaussianRationalPoly":
        return GaussianRationalPoly(-self.im, self.re)

    def __add__(self, other: "GaussianRationalPoly") -> "GaussianRationalPoly":
        return GaussianRationalPoly(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRationalPoly") -> "GaussianRationalPoly":
        return GaussianRationalPoly(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRationalPoly":
        return GaussianRationalPoly(-self.re, -self.im)

    def __mul__(self, other) -> "GaussianRationalPoly":
        if isinstance(other, GaussianRationalPoly):
            return GaussianRationalPoly(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return GaussianRationalPoly(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaussianRationalPoly):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    __hash__ = None

    def __str__(self) -> str:
        if self.im.is_zero:
            return str(self.re)
        if self.re.is_zero:
            return f"i*({self.im})"
        return f"{self.re} + i*({self.im})"

    def __repr__(self) -> str:
        return f"GaussianRationalPoly({str(self)!r})"


# -- Maya states -------------------------------------------------------------


class MayaState(NamedTuple):
    """A basis state: fermionic charge plus the partition of excitations."""

    charge: int
    parts: tuple[int, ...]

    @classmethod
    def vacuum(cls, charge: int = 0) -> "MayaState":
        return cls(charge, ())

    @classmethod
    def from_partition(cls, lam: Partition, charge: int = 0) -> "MayaState":
        return cls(charge, lam.parts)

    def position(self, k: int) -> int:
        """The k-th (0-based) occupied position, in decreasing order."""
        if k < len(self.parts):
            return self.parts[k] - (k + 1) + self.charge
        return self.charge - (k + 1)

    def occupied(self, j: int) -> bool:
        if j <= self.charge - len(self.parts) - 1:
            return True
        return any(self.position(k) == j for k in range(len(self.parts)))


def _positions(state: MayaState, depth: int) -> list[int]:
    return [state.position(k) for k in range(depth)]


def _insert_particle(state: MayaState, j: int):
    """Wedge e_j onto the state; None when j is already occupied."""
    if state.occupied(j):
        return None
    depth = max(len(state.parts), state.charge - j)
    pos = _positions(state, depth)
    above = sum(1 for p in pos if p > j)
    new_pos = pos + [j]
    new_pos.sort(reverse=True)
    charge = state.charge + 1
    parts = [p + (k + 1) - charge for k, p in enumerate(new_pos)]
    while parts and parts[-1] == 0:
        parts.pop()
    return MayaState(charge, tuple(parts)), (-1 if above % 2 else 1)


def _remove_particle(state: MayaState, j: int):
    """Interior product against e_j; None when j is unoccupied."""
    if not state.occupied(j):
        return None
    depth = max(len(state.parts), state.charge - j)
    pos = _positions(state, depth)
    above = sum(1 for p in pos if p > j)
    pos.remove(j)
    charge = state.charge - 1
    parts = [p + (k + 1) - charge for k, p in enumerate(pos)]
    while parts and parts[-1] == 0:
        parts.pop()
    return MayaState(charge, tuple(parts)), (-1 if above % 2 else 1)


# -- Fock vectors -------------------------------------------------------------


class FockVector:
    """A finite combination of Maya states with Gaussian-rational coefficients.

    ``half_pow`` is the exponent e of a global factor 2**(e/2); see the
    module docstring.
    """

    __slots__ = ("states", "half_pow")

    def __init__(self, states: dict | None = None, half_pow: int = 0):
        self.states: dict[MayaState, GaussianRationalPoly] = {}
        if states:
            for key, coeff in states.items():
                if not coeff.is_zero:
                    self.states[key] = coeff
        self.half_pow = half_pow if self.states else 0

    @classmethod
    def vacuum(cls, cutoff: int | None = None, charge: int = 0) -> "FockVector":
        return cls({MayaState.vacuum(charge): GaussianRationalPoly.one(cutoff)})

    @classmethod
    def basis(cls, state: MayaState, cutoff: int | None = None) -> "FockVector":
        return cls({state: GaussianRationalPoly.one(cutoff)})

    @property
    def is_zero(self) -> bool:
        return not self.states

    def scaled(self, factor) -> "FockVector":
        return FockVector(
            {s: c * factor for s, c in self.states.items()}, self.half_pow
        )

    def normalized(self) -> "FockVector":
        """Fold the even part of half_pow into the coefficients (e -> 0 or 1)."""
        if not self.states:
            return FockVector()
        fold, parity = divmod(self.half_pow, 2)
        if fold == 0:
            return self
        factor = Fraction(2) ** fold
        return FockVector(
            {s: c * factor for s, c in self.states.items()}, parity
        )

    def __add__(self, other: "FockVector") -> "FockVector":
        a, b = self.normalized(), other.normalized()
        if a.is_zero:
            return b
        if b.is_zero:
            return a
        if a.half_pow != b.half_pow:
            raise ValueError("cannot add vectors with incommensurable sqrt(2) factors")
        out = dict(a.states)
        for s, c in b.states.items():
            acc = out[s] + c if s in out else c
            if acc.is_zero:
                out.pop(s, None)
            else:
                out[s] = acc
        return FockVector(out, a.half_pow)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scaled(Fraction(-1))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        a, b = self.normalized(), other.normalized()
        if a.is_zero or b.is_zero:
            return a.is_zero and b.is_zero
        return a.half_pow == b.half_pow and a.states == b.states

    __hash__ = None

    def __repr__(self) -> str:
        body = " + ".join(f"({coeff})|{s.charge};{s.parts}>" for s, coeff in self.states.items())
        return f"FockVector[2^({self.half_pow}/2) * ({body or '0'})]"


def _merge(parts: Iterable[dict], half_pow: int) -> FockVector:
    out: dict[MayaState, GaussianRationalPoly] = {}
    for chunk in parts:
        for s, c in chunk.items():
            acc = out[s] + c if s in out else c
            if acc.is_zero:
                out.pop(s, None)
            else:
                out[s] = acc
    return FockVector(out, half_pow)


def apply_psi(j: int, v: FockVector) -> FockVector:
    out: dict[MayaState, GaussianRationalPoly] = {}
    for state, coeff in v.states.items():
        hit = _insert_particle(state, j)
        if hit is None:
            continue
        new_state, sign = hit
        piece = coeff * sign
        acc = out[new_state] + piece if new_state in out else piece
        if acc.is_zero:
            out.pop(new_state, None)
        else:
            out[new_state] = acc
    return FockVector(out, v.half_pow)


def apply_psi_dag(j: int, v: FockVector) -> FockVector:
    out: dict[MayaState, GaussianRationalPoly] = {}
    for state, coeff in v.states.items():
        hit = _remove_particle(state, j)
        if hit is None:
            continue
        new_state, sign = hit
        piece = coeff * sign
        acc = out[new_state] + piece if new_state in out else piece
        if acc.is_zero:
            out.pop(new_state, None)
        else:
            out[new_state] = acc
    return FockVector(out, v.half_pow)


def apply_phi(sign: str, j: int, v: FockVector) -> FockVector:
    """Apply phi+_j or phi-_j; costs one half_pow unit (the 1/sqrt 2)."""
    if sign not in ("+", "-"):
        raise ValueError("phi sign must be '+' or '-'")
    created = apply_psi(j, v)
    annihilated = apply_psi_dag(-j, v)
    parity = -1 if j % 2 else 1
    if sign == "+":
        chunks = [created.states, annihilated.scaled(Fraction(parity)).states]
        return _merge(chunks, v.half_pow - 1)
    diff = _merge(
        [created.states, annihilated.scaled(Fraction(-parity)).states],
        v.half_pow - 1,
    )
    return FockVector(
        {s: c.times_i() for s, c in diff.states.items()}, diff.half_pow
    )


# -- operator words -----------------------------------------------------------


_KINDS = ("psi", "psidag", "phi+", "phi-")


@dataclass(frozen=True)
class Generator:
    """One fermionic generator, optionally dressed by the flow group."""

    kind: str
    index: int
    dressed: bool = False

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")

    def __str__(self) -> str:
        name = {"psi": "psi", "psidag": "psidag", "phi+": "phi+", "phi-": "phi-"}[self.kind]
        return f"{name}({self.index},t)" if self.dressed else f"{name}({self.index})"


OperatorWord = tuple[Generator, ...]

_series_cache: dict[tuple[str, int, int | None], GradedPoly] = {}


def _series_coeff(kind: str, k: int, cutoff: int | None) -> GradedPoly:
    key = (kind, k, cutoff)
    cached = _series_cache.get(key)
    if cached is None:
        if kind == "psi":
            cached = complete_h(k, cutoff)
        elif kind == "psidag":
            cached = complete_h(k, cutoff).scale_vars(Fraction(-1))
        else:  # neutral: only odd flow variables enter
            cached = complete_h(k, cutoff).restrict_to_odd()
        _series_cache[key] = cached
    return cached


def apply_generator(gen: Generator, v: FockVector, cutoff: int) -> FockVector:
    if not gen.dressed:
        if gen.kind == "psi":
            return apply_psi(gen.index, v)
        if gen.kind == "psidag":
            return apply_psi_dag(gen.index, v)
        return apply_phi(gen.kind[-1], gen.index, v)
    chunks: list[dict] = []
    for k in range(cutoff + 1):
        coeff = _series_coeff(gen.kind if gen.kind in ("psi", "psidag") else "phi", k, cutoff)
        if coeff.is_zero:
            continue
        if gen.kind == "psi":
            w = apply_psi(gen.index - k, v)
        elif gen.kind == "psidag":
            w = apply_psi_dag(gen.index + k, v)
        else:
            w = apply_phi(gen.kind[-1], gen.index - k, v)
        if not w.is_zero:
            chunks.append(w.scaled(coeff).states)
    shift = -1 if gen.kind.startswith("phi") else 0
    return _merge(chunks, v.half_pow + shift)


def apply_dressed(word: Iterable[Generator], v: FockVector, cutoff: int) -> FockVector:
    """Apply an operator word right-to-left (the rightmost factor acts first)."""
    word = tuple(word)
    for gen in reversed(word):
        v = apply_generator(gen, v, cutoff)
    return v


def vev(word: Iterable[Generator], cutoff: int) -> GaussianRationalPoly:
    """Vacuum expectation value of the word at the given weight cutoff."""
    v = apply_dressed(tuple(word), FockVector.vacuum(cutoff), cutoff)
    amp = v.states.get(MayaState.vacuum())
    if amp is None:
        return GaussianRationalPoly.zero(cutoff)
    if v.half_pow % 2:
        # Odd phi count flips charge parity, so the charge-0 amplitude of an
        # odd-half_pow vector must vanish; a nonzero one signals a bug.
        raise ArithmeticError("irrational sqrt(2) factor in a vacuum amplitude")
    return amp * Fraction(2) ** (v.half_pow // 2)


# -- current operators (used to validate the dressed series) ------------------


def apply_current(n: int, v: FockVector) -> FockVector:
    """J_n = sum_i psi_i psidag_{i+n}: hop one particle n steps down."""
    if n < 1:
        raise ValueError("current index must be positive")
    out: dict[MayaState, GaussianRationalPoly] = {}
    for state, coeff in v.states.items():
        for k in range(len(state.parts)):
            p = state.position(k)
            if state.occupied(p - n):
                continue
            removed, s1 = _remove_particle(state, p)
            inserted, s2 = _insert_particle(removed, p - n)
            piece = coeff * (s1 * s2)
            acc = out[inserted] + piece if inserted in out else piece
            if acc.is_zero:
                out.pop(inserted, None)
            else:
                out[inserted] = acc
    return FockVector(out, v.half_pow)


def apply_neutral_current(sign: str, n: int, v: FockVector) -> FockVector:
    """JB+-_n = (1/2) sum_j (-1)**(j+1) phi_j phi_{-j-n}; zero for even n."""
    if n < 1:
        raise ValueError("current index must be positive")
    bound = 0
    for state in v.states:
        top = state.position(0) if state.parts else state.charge - 1
        bottom = state.charge - len(state.parts) - 1
        bound = max(bound, abs(top), abs(bottom))
    bound += n + 2
    chunks: list[dict] = []
    for j in range(-bound, bound + 1):
        w = apply_phi(sign, j, apply_phi(sign, -j - n, v))
        if w.is_zero:
            continue
        factor = Fraction(1 if (j + 1) % 2 == 0 else -1, 2)
        chunks.append(w.scaled(factor).states)
    return _merge(chunks, v.half_pow - 2)


# -- named expectation values --------------------------------------------------


def vev_schur(fc: FrobeniusCoords, cutoff: int) -> GradedPoly:
    """Schur function as a signed VEV of dressed charged generator pairs."""
    word: list[Generator] = []
    for i in range(fc.rank):
        word.append(Generator("psi", fc.alpha.parts[i], dressed=True))
        word.append(Generator("psidag", -fc.beta.parts[i] - 1, dressed=True))
    value = vev(word, cutoff)
    if sum(fc.beta.parts) % 2:
        value = -value
    if not value.im.is_zero:
        raise ArithmeticError("charged VEV produced a nonzero imaginary part")
    return value.re


def vev_schur_q(alpha: StrictPartition, sign: str, cutoff: int) -> GradedPoly:
    """Half-variable Schur Q-function as 2**(r/2) times a neutral VEV.

    Odd cardinality is completed by a trailing undressed phi_0 of the same
    sign, matching the factorization identity; the result then agrees with
    the supplemented Q-function.
    """
    word = [Generator(f"phi{sign}", a, dressed=True) for a in alpha.parts]
    r = alpha.cardinality
    if r % 2:
        word.append(Generator(f"phi{sign}", 0, dressed=False))
        r += 1
    value = vev(word, cutoff) * (2 ** (r // 2))
    if not value.im.is_zero:
        raise ArithmeticError("neutral VEV produced a nonzero imaginary part")
    return value.re


# -- pairing formulas ----------------------------------------------------------


def _neutral_pair_anticommutes(a: Generator, b: Generator) -> bool:
    if a.kind != b.kind:
        return True  # phi+ against phi- always anticommutes
    if a.dressed == b.dressed:
        return a.index + b.index != 0
    # A dressed generator is a shift series, so the anticommutator with an
    # undressed partner is h_{j+k}, nonzero whenever j + k >= 0.
    return a.index + b.index < 0


def check_wick(word: Iterable[Generator], cutoff: int) -> bool:
    """Compare a direct VEV with its pairing formula.

    Neutral words must pairwise anticommute and go through the Pfaffian of
    pair VEVs; charged words must alternate creation (psi) and annihilation
    (psidag) combinations and go through the determinant.
    """
    word = tuple(word)
    if len(word) % 2:
        raise WickHypothesisError("word length must be even")
    kinds = {gen.kind for gen in word}
    if kinds <= {"phi+", "phi-"}:
        for a in range(len(word)):
            for b in range(a + 1, len(word)):
                if not _neutral_pair_anticommutes(word[a], word[b]):
                    raise WickHypothesisError(
                        f"generators {word[a]} and {word[b]} do not anticommute"
                    )
        n = len(word)
        zero = GaussianRationalPoly.zero(cutoff)
        rows = [[zero for _ in range(n)] for _ in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                pair = vev((word[a], word[b]), cutoff)
                rows[a][b] = pair
                rows[b][a] = -pair
        rhs = _pf_rows(rows, GaussianRationalPoly.one(cutoff))
        return vev(word, cutoff) == rhs
    if kinds <= {"psi", "psidag"}:
        if any(gen.kind != ("psi" if k % 2 == 0 else "psidag") for k, gen in enumerate(word)):
            raise WickHypothesisError(
                "charged word must alternate psi (odd slots) and psidag (even slots)"
            )
        half = len(word) // 2
        rows = [
            [vev((word[2 * a], word[2 * b + 1]), cutoff) for b in range(half)]
            for a in range(half)
        ]
        rhs = _det_rows(rows, GaussianRationalPoly.one(cutoff))
        return vev(word, cutoff) == rhs
    raise WickHypothesisError("cannot mix charged and neutral generators")


def check_factorization(
    plus_word: Iterable[Generator], minus_word: Iterable[Generator], cutoff: int
) -> bool:
    """Check the VEV factorization over the two neutral families.

    For m, n the word lengths: even/even factorizes into the product of the
    separate VEVs, mixed parity vanishes, and odd/odd equals 2i times the
    product of the phi_0-completed VEVs.
    """
    plus_word = tuple(plus_word)
    minus_word = tuple(minus_word)
    if any(gen.kind != "phi+" for gen in plus_word):
        raise ValueError("plus_word must contain only phi+ generators")
    if any(gen.kind != "phi-" for gen in minus_word):
        raise ValueError("minus_word must contain only phi- generators")
    lhs = vev(plus_word + minus_word, cutoff)
    n, m = len(plus_word), len(minus_word)
    if n % 2 != m % 2:
        rhs = GaussianRationalPoly.zero(cutoff)
    elif n % 2 == 0:
        rhs = vev(plus_word, cutoff) * vev(minus_word, cutoff)
    else:
        completed_plus = plus_word + (Generator("phi+", 0),)
        completed_minus = minus_word + (Generator("phi-", 0),)
        rhs = (
            vev(completed_plus, cutoff) * vev(completed_minus, cutoff) * 2
        ).times_i()
    return lhs == rhs
