"""Sparse exact-rational polynomials in the flow variables t1, t2, t3, ...

Monomials are graded by weight, with deg(t_i) = i, and every polynomial
carries an optional truncation weight ``cutoff``: monomials heavier than the
cutoff are dropped on construction and after every arithmetic operation.
``cutoff=None`` means no truncation.  Binary operations combine cutoffs by
taking the minimum, so a truncated operand truncates the result.

Coefficients are :class:`fractions.Fraction`; there is no floating point
anywhere in this module.

The canonical text form orders monomials by descending weight, then by
descending lexicographic exponent vector, e.g.::

    (1/144)*t1^6 - (1/6)*t1^3*t3 + t3^2

and :meth:`GradedPoly.parse` reads that form back losslessly.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

Rational = Fraction

# A monomial is a tuple of (variable index, exponent) pairs, sorted by
# variable index, with no zero exponents.  The empty tuple is the constant 1.
Monomial = tuple[tuple[int, int], ...]

_ONE_MONO: Monomial = ()


def monomial_weight(mono: Monomial) -> int:
    return sum(i * e for i, e in mono)


def monomial_degree(mono: Monomial) -> int:
    """Total exponent count (the ordinary degree, ignoring variable weights)."""
    return sum(e for _, e in mono)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for i, e in b:
        exps[i] = exps.get(i, 0) + e
    return tuple(sorted(exps.items()))


def _min_cutoff(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as a coefficient")


class GradedPoly:
    """A sparse polynomial with exact rational coefficients and a weight cutoff."""

    __slots__ = ("terms", "cutoff")

    def __init__(
        self,
        terms: Mapping[Monomial, Fraction] | None = None,
        cutoff: int | None = None,
        _clean: bool = False,
    ):
        if cutoff is not None and cutoff < 0:
            raise ValueError("cutoff must be non-negative")
        self.cutoff = cutoff
        if terms is None:
            self.terms: dict[Monomial, Fraction] = {}
        elif _clean:
            self.terms = dict(terms)
        else:
            cleaned: dict[Monomial, Fraction] = {}
            for mono, coeff in terms.items():
                coeff = _as_fraction(coeff)
                if coeff == 0:
                    continue
                mono = tuple(sorted((int(i), int(e)) for i, e in mono if e))
                if any(i < 1 or e < 0 for i, e in mono):
                    raise ValueError(f"bad monomial {mono!r}")
                if cutoff is not None and monomial_weight(mono) > cutoff:
                    continue
                cleaned[mono] = cleaned.get(mono, Fraction(0)) + coeff
            self.terms = {m: c for m, c in cleaned.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, cutoff: int | None = None) -> "GradedPoly":
        return cls(None, cutoff)

    @classmethod
    def constant(cls, value, cutoff: int | None = None) -> "GradedPoly":
        value = _as_fraction(value)
        if value == 0:
            return cls(None, cutoff)
        return cls({_ONE_MONO: value}, cutoff, _clean=True)

    @classmethod
    def one(cls, cutoff: int | None = None) -> "GradedPoly":
        return cls.constant(1, cutoff)

    @classmethod
    def variable(cls, index: int, cutoff: int | None = None) -> "GradedPoly":
        """The flow variable t_index (weight = index)."""
        if index < 1:
            raise ValueError("variable index must be >= 1")
        if cutoff is not None and index > cutoff:
            return cls(None, cutoff)
        return cls({((index, 1),): Fraction(1)}, cutoff, _clean=True)

    # -- structure queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get(_ONE_MONO, Fraction(0))

    def min_weight(self) -> int | None:
        """Smallest monomial weight present, or None for the zero polynomial."""
        if not self.terms:
            return None
        return min(monomial_weight(m) for m in self.terms)

    def max_weight(self) -> int | None:
        if not self.terms:
            return None
        return max(monomial_weight(m) for m in self.terms)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        weights = {monomial_weight(m) for m in self.terms}
        if not weights:
            return True
        if len(weights) > 1:
            return False
        return degree is None or weights == {degree}

    def variables(self) -> set[int]:
        return {i for mono in self.terms for i, _ in mono}

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(sorted(mono)), Fraction(0))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "GradedPoly":
        if not isinstance(other, GradedPoly):
            other = GradedPoly.constant(other)
        cutoff = _min_cutoff(self.cutoff, other.cutoff)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono, Fraction(0)) + coeff
            if acc == 0:
                out.pop(mono, None)
            else:
                out[mono] = acc
        if cutoff is not None and (self.cutoff != cutoff or other.cutoff != cutoff):
            out = {m: c for m, c in out.items() if monomial_weight(m) <= cutoff}
        return GradedPoly(out, cutoff, _clean=True)

    __radd__ = __add__

    def __neg__(self) -> "GradedPoly":
        return GradedPoly({m: -c for m, c in self.terms.items()}, self.cutoff, _clean=True)

    def __sub__(self, other) -> "GradedPoly":
        if not isinstance(other, GradedPoly):
            other = GradedPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "GradedPoly":
        return (-self) + other

    def __mul__(self, other) -> "GradedPoly":
        if not isinstance(other, GradedPoly):
            coeff = _as_fraction(other)
            if coeff == 0:
                return GradedPoly.zero(self.cutoff)
            return GradedPoly(
                {m: c * coeff for m, c in self.terms.items()}, self.cutoff, _clean=True
            )
        cutoff = _min_cutoff(self.cutoff, other.cutoff)
        out: dict[Monomial, Fraction] = {}
        if cutoff is not None:
            weights_b = [(m, monomial_weight(m)) for m in other.terms]
            for mono_a, coeff_a in self.terms.items():
                wa = monomial_weight(mono_a)
                for mono_b, wb in weights_b:
                    if wa + wb > cutoff:
                        continue
                    mono = _mono_mul(mono_a, mono_b)
                    acc = out.get(mono, Fraction(0)) + coeff_a * other.terms[mono_b]
                    if acc == 0:
                        out.pop(mono, None)
                    else:
                        out[mono] = acc
        else:
            for mono_a, coeff_a in self.terms.items():
                for mono_b, coeff_b in other.terms.items():
                    mono = _mono_mul(mono_a, mono_b)
                    acc = out.get(mono, Fraction(0)) + coeff_a * coeff_b
                    if acc == 0:
                        out.pop(mono, None)
                    else:
                        out[mono] = acc
        return GradedPoly(out, cutoff, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "GradedPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = GradedPoly.one(self.cutoff)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GradedPoly.constant(other)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # mutable mapping inside; not intended as a dict key

    # -- graded-ring specific operations ------------------------------------

    def truncate(self, cutoff: int | None) -> "GradedPoly":
        """Copy with the given cutoff, dropping monomials heavier than it."""
        if cutoff is None:
            return GradedPoly(self.terms, None, _clean=True)
        kept = {m: c for m, c in self.terms.items() if monomial_weight(m) <= cutoff}
        return GradedPoly(kept, cutoff, _clean=True)

    def restrict_to_odd(self) -> "GradedPoly":
        """Set every even-indexed variable to zero."""
        kept = {
            m: c
            for m, c in self.terms.items()
            if all(i % 2 == 1 for i, _ in m)
        }
        return GradedPoly(kept, self.cutoff, _clean=True)

    def scale_vars(self, factor) -> "GradedPoly":
        """Substitute t_i -> factor * t_i for every variable."""
        factor = _as_fraction(factor)
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            scaled = coeff * factor ** monomial_degree(mono)
            if scaled != 0:
                out[mono] = scaled
        return GradedPoly(out, self.cutoff, _clean=True)

    def eval_power_sums(self, xs: Iterable) -> Fraction:
        """Evaluate at t_i = (1/i) * sum_a xs[a]**i, exactly."""
        values = [_as_fraction(x) for x in xs]
        cache: dict[int, Fraction] = {}

        def tval(i: int) -> Fraction:
            if i not in cache:
                cache[i] = Fraction(sum(x**i for x in values), i)
            return cache[i]

        total = Fraction(0)
        for mono, coeff in self.terms.items():
            term = coeff
            for i, e in mono:
                term *= tval(i) ** e
            total += term
        return total

    # -- text form -----------------------------------------------------------

    def _sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        max_var = max((i for m in self.terms for i, _ in m), default=1)

        def key(item: tuple[Monomial, Fraction]):
            mono = item[0]
            exps = [0] * max_var
            for i, e in mono:
                exps[i - 1] = e
            return (-monomial_weight(mono), tuple(-e for e in exps))

        return sorted(self.terms.items(), key=key)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for mono, coeff in self._sorted_terms():
            body = _term_body(mono, coeff)
            if not pieces:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"GradedPoly({str(self)!r}, cutoff={self.cutoff!r})"

    @classmethod
    def parse(cls, text: str, cutoff: int | None = None) -> "GradedPoly":
        return _parse_poly(text, cutoff)


def _term_body(mono: Monomial, coeff: Fraction) -> str:
    mag = abs(coeff)
    vars_txt = "*".join(f"t{i}^{e}" if e > 1 else f"t{i}" for i, e in mono)
    if not vars_txt:
        return str(mag)
    if mag == 1:
        return vars_txt
    if mag.denominator == 1:
        return f"{mag}*{vars_txt}"
    return f"({mag})*{vars_txt}"


_TERM_RE = re.compile(
    r"""^
    (?:
        \((?P<par_num>-?\d+)/(?P<par_den>\d+)\)    # (p/q)
      | (?P<num>-?\d+)(?:/(?P<den>\d+))?           # p or p/q
    )?
    (?:\*?(?P<vars>t\d+(?:\^\d+)?(?:\*t\d+(?:\^\d+)?)*))?
    $""",
    re.VERBOSE,
)


def _parse_poly(text: str, cutoff: int | None) -> GradedPoly:
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("empty polynomial text")
    # Split into signed chunks at top-level + and - (parentheses only ever
    # wrap fraction coefficients, so a '-' inside parens belongs to a number).
    chunks: list[tuple[int, str]] = []
    sign, start, depth = 1, 0, 0
    i = 0
    if compact[0] in "+-":
        sign = -1 if compact[0] == "-" else 1
        start = i = 1
    while i < len(compact):
        ch = compact[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start:
            chunks.append((sign, compact[start:i]))
            sign = -1 if ch == "-" else 1
            start = i + 1
        i += 1
    chunks.append((sign, compact[start:]))

    total = GradedPoly.zero(cutoff)
    for sgn, chunk in chunks:
        match = _TERM_RE.match(chunk)
        if not match or not chunk:
            raise ValueError(f"bad polynomial term {chunk!r}")
        if match.group("par_num") is not None:
            coeff = Fraction(int(match.group("par_num")), int(match.group("par_den")))
        elif match.group("num") is not None:
            den = match.group("den")
            coeff = Fraction(int(match.group("num")), int(den) if den else 1)
        else:
            coeff = Fraction(1)
        exps: dict[int, int] = {}
        vars_txt = match.group("vars")
        if vars_txt:
            for factor in vars_txt.split("*"):
                base, _, exp = factor.partition("^")
                idx = int(base[1:])
                exps[idx] = exps.get(idx, 0) + (int(exp) if exp else 1)
        elif match.group("par_num") is None and match.group("num") is None:
            raise ValueError(f"bad polynomial term {chunk!r}")
        mono = tuple(sorted(exps.items()))
        total = total + GradedPoly({mono: sgn * coeff}, cutoff)
    return total


def exp_truncated(a: GradedPoly) -> GradedPoly:
    """The series exponential sum_k a^k / k!, truncated at a's cutoff.

    Requires a zero constant term; then each power raises the minimum weight,
    so the series terminates at the cutoff.  A nonzero polynomial without a
    finite cutoff is rejected since its exponential has infinitely many terms.
    """
    if a.constant_term() != 0:
        raise ValueError("exp_truncated requires a zero constant term")
    if a.is_zero:
        return GradedPoly.one(a.cutoff)
    if a.cutoff is None:
        raise ValueError("exp_truncated requires a finite cutoff")
    result = GradedPoly.one(a.cutoff)
    term = GradedPoly.one(a.cutoff)
    k = 1
    while True:
        term = term * a * Fraction(1, k)
        if term.is_zero:
            break
        result = result + term
        k += 1
    return result
