"""Integer partitions, strict partitions and Frobenius coordinates.

Conventions used throughout the package:

* ``Partition`` stores weakly decreasing positive parts; trailing zeros are
  never stored, so the empty partition is ``Partition([])``.
* ``StrictPartition`` stores strictly decreasing non-negative parts.  A single
  trailing 0 part is allowed and is meaningful: the Q-function machinery
  distinguishes e.g. ``(3, 0)`` from ``(3)``.
* Frobenius coordinates ``(alpha | beta)`` hold the arm and leg lengths along
  the main diagonal of the Young diagram; both are strict with final part
  >= 0 and share the same cardinality (the Frobenius rank).

Text forms: comma separated parts (``3,2``), the literal ``-`` for the empty
partition, and ``2,0|1,0`` for Frobenius coordinates.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class Partition:
    """A weakly decreasing sequence of positive integers."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int] = ()):
        ps = sorted((int(p) for p in parts), reverse=True)
        if ps and ps[-1] < 0:
            raise ValueError("partition parts must be non-negative")
        self.parts: tuple[int, ...] = tuple(p for p in ps if p > 0)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        cols = [0] * self.parts[0]
        for p in self.parts:
            for i in range(p):
                cols[i] += 1
        return Partition(cols)

    def frobenius_rank(self) -> int:
        """Number of cells on the main diagonal of the Young diagram."""
        return sum(1 for i, p in enumerate(self.parts) if p >= i + 1)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip()
        if text == "-":
            return cls()
        try:
            return cls(int(tok) for tok in text.split(","))
        except ValueError as exc:
            raise ValueError(f"bad partition {text!r}") from exc

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts) if self.parts else "-"

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)!r})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(("Partition", self.parts))


class StrictPartition:
    """A strictly decreasing sequence of non-negative integers.

    At most one 0 part may occur (necessarily last once sorted).  Duplicate
    parts are rejected rather than merged.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int] = ()):
        ps = sorted((int(p) for p in parts), reverse=True)
        if ps and ps[-1] < 0:
            raise ValueError("strict partition parts must be non-negative")
        for a, b in zip(ps, ps[1:]):
            if a == b:
                raise ValueError(f"duplicate part {a} in strict partition")
        self.parts: tuple[int, ...] = tuple(ps)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def cardinality(self) -> int:
        return len(self.parts)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.parts)

    @classmethod
    def parse(cls, text: str) -> "StrictPartition":
        text = text.strip()
        if text == "-":
            return cls()
        try:
            return cls(int(tok) for tok in text.split(","))
        except ValueError as exc:
            raise ValueError(f"bad strict partition {text!r}") from exc

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts) if self.parts else "-"

    def __repr__(self) -> str:
        return f"StrictPartition({list(self.parts)!r})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, StrictPartition) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(("StrictPartition", self.parts))


class FrobeniusCoords:
    """Arm/leg coordinates ``(alpha | beta)`` of common cardinality."""

    __slots__ = ("alpha", "beta")

    def __init__(self, alpha, beta):
        self.alpha = alpha if isinstance(alpha, StrictPartition) else StrictPartition(alpha)
        self.beta = beta if isinstance(beta, StrictPartition) else StrictPartition(beta)
        if self.alpha.cardinality != self.beta.cardinality:
            raise ValueError("alpha and beta must have the same cardinality")

    @property
    def rank(self) -> int:
        return self.alpha.cardinality

    @classmethod
    def parse(cls, text: str) -> "FrobeniusCoords":
        text = text.strip()
        if "|" not in text:
            raise ValueError(f"bad frobenius coordinates {text!r} (expected a|b)")
        left, right = text.split("|", 1)
        return cls(StrictPartition.parse(left), StrictPartition.parse(right))

    def __str__(self) -> str:
        return f"{self.alpha}|{self.beta}"

    def __repr__(self) -> str:
        return f"FrobeniusCoords({list(self.alpha.parts)!r}, {list(self.beta.parts)!r})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FrobeniusCoords)
            and self.alpha == other.alpha
            and self.beta == other.beta
        )

    def __hash__(self) -> int:
        return hash(("FrobeniusCoords", self.alpha.parts, self.beta.parts))


def frobenius_from_partition(lam: Partition) -> FrobeniusCoords:
    """Arm/leg lengths along the diagonal: alpha_i = lam_i - i, beta_i = lam'_i - i."""
    r = lam.frobenius_rank()
    conj = lam.conjugate()
    alpha = [lam.parts[i] - (i + 1) for i in range(r)]
    beta = [conj.parts[i] - (i + 1) for i in range(r)]
    return FrobeniusCoords(StrictPartition(alpha), StrictPartition(beta))


def partition_from_frobenius(fc: FrobeniusCoords) -> Partition:
    """Inverse of :func:`frobenius_from_partition`."""
    r = fc.rank
    rows = [fc.alpha.parts[i] + (i + 1) for i in range(r)]
    # Rows below the diagonal block are determined by the column lengths
    # beta_j + j; row i (1-based) has one cell per column j with beta_j + j >= i.
    i = r + 1
    while True:
        count = sum(1 for j in range(r) if fc.beta.parts[j] + (j + 1) >= i)
        if count == 0:
            break
        rows.append(count)
        i += 1
    return Partition(rows)


def shift_up(alpha: StrictPartition) -> StrictPartition:
    """Increment every part by one."""
    return StrictPartition(p + 1 for p in alpha.parts)


def double_of(strict: StrictPartition) -> Partition:
    """The partition with Frobenius coordinates ``(I | I - 1)``."""
    if 0 in strict.parts:
        raise ValueError("double_of requires all parts >= 1")
    beta = StrictPartition(p - 1 for p in strict.parts)
    return partition_from_frobenius(FrobeniusCoords(strict, beta))


def supplement(mu: StrictPartition) -> StrictPartition:
    """Adjust a strict partition to even cardinality.

    Even cardinality is returned unchanged.  Odd cardinality appends a
    trailing 0, except when the last part already is 0, in which case that 0
    is removed: a doubled-zero pair collapses with factor one in the vacuum
    expectation values this feeds, so ``(mu, 0, 0)`` must not arise.
    """
    n = mu.cardinality
    if n % 2 == 0:
        return mu
    if mu.parts[-1] > 0:
        return StrictPartition(mu.parts + (0,))
    return StrictPartition(mu.parts[:-1])


def partitions_of(n: int) -> Iterator[Partition]:
    """All partitions of weight ``n``, in reverse lexicographic order."""
    if n < 0:
        return
    if n == 0:
        yield Partition()
        return
    parts = [n]
    while True:
        yield Partition(parts)
        # Find the rightmost part > 1, decrement it and repack the remainder.
        i = len(parts) - 1
        while i >= 0 and parts[i] == 1:
            i -= 1
        if i < 0:
            return
        rest = len(parts) - i
        parts = parts[:i] + [parts[i] - 1]
        while rest > 0:
            chunk = min(parts[-1], rest)
            parts.append(chunk)
            rest -= chunk


def count_partitions(n: int) -> int:
    """Partition function p(n) via the Euler pentagonal-number recurrence."""
    if n < 0:
        return 0
    table = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > m and g2 > m:
                break
            sign = -1 if k % 2 == 0 else 1
            if g1 <= m:
                total += sign * table[m - g1]
            if g2 <= m:
                total += sign * table[m - g2]
            k += 1
        table[m] = total
    return table[n]
