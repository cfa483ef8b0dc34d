"""Shared test helpers: independent oracles and small random generators."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from schurq.polyring import GradedPoly


def strict_partitions_of(n: int, allow_trailing_zero: bool = False):
    """Strictly decreasing positive partitions of n (optionally with a 0 appended)."""

    def rec(remaining: int, ceiling: int, prefix: tuple[int, ...]):
        if remaining == 0:
            yield prefix
            return
        for first in range(min(remaining, ceiling), 0, -1):
            yield from rec(remaining - first, first - 1, prefix + (first,))

    for parts in rec(n, n, ()):
        yield parts
        if allow_trailing_zero:
            yield parts + (0,)


def all_pairings(items: list):
    """Every perfect matching of the given items, as lists of pairs."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for k, partner in enumerate(rest):
        for tail in all_pairings(rest[:k] + rest[k + 1 :]):
            yield [(first, partner)] + tail


def _perm_parity(seq) -> int:
    inv = sum(
        1
        for a in range(len(seq))
        for b in range(a + 1, len(seq))
        if seq[a] > seq[b]
    )
    return -1 if inv % 2 else 1


def pfaffian_oracle(rows, one):
    """Pfaffian as the signed sum over perfect matchings (independent route)."""
    n = len(rows)
    if n == 0:
        return one
    total = None
    for matching in all_pairings(list(range(n))):
        flat = [idx for pair in matching for idx in pair]
        piece = one * _perm_parity(flat)
        for a, b in matching:
            piece = piece * rows[a][b]
        total = piece if total is None else total + piece
    return total


def determinant_oracle(rows, one):
    """Determinant as the signed sum over permutations (independent route)."""
    n = len(rows)
    if n == 0:
        return one
    total = None
    for perm in itertools.permutations(range(n)):
        piece = one * _perm_parity(list(perm))
        for i in range(n):
            piece = piece * rows[i][perm[i]]
        total = piece if total is None else total + piece
    return total


def random_poly(
    rng: random.Random,
    cutoff: int | None = 6,
    max_var: int = 3,
    max_terms: int = 4,
) -> GradedPoly:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = []
        for var in range(1, max_var + 1):
            exp = rng.randint(0, 2)
            if exp:
                mono.append((var, exp))
        coeff = Fraction(rng.randint(-4, 4), rng.randint(1, 4))
        if coeff:
            mono_t = tuple(mono)
            terms[mono_t] = terms.get(mono_t, Fraction(0)) + coeff
    return GradedPoly(terms, cutoff)


def random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-6, 6), rng.randint(1, 5))
