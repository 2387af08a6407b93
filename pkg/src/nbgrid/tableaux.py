"""Standard Young tableaux: hook-length counting and direct enumeration.

Shapes are partitions written as non-increasing positive parts.  A
standard tableau fills the shape with 1..N increasing along rows and
down columns; the square shape (n, ..., n) is the bridge between grid
combinatorics and poset linear extensions, since the linear extensions
of the n-by-n divisibility lattice are exactly these tableaux.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterator


@dataclass(frozen=True)
class Partition:
    """A partition of N as non-increasing positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("partition needs at least one part")
        if any(p < 1 for p in self.parts):
            raise ValueError("parts must be positive")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("parts must be non-increasing")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> tuple[int, ...]:
        return tuple(
            sum(1 for p in self.parts if p > j) for j in range(self.parts[0])
        )

    @classmethod
    def square(cls, n: int) -> "Partition":
        return cls((n,) * n)


def hook_lengths(shape: Partition) -> list[list[int]]:
    """Hook of cell (i, j): arm to the right plus leg below plus the cell."""
    conj = shape.conjugate()
    return [
        [(row - j - 1) + (conj[j] - i - 1) + 1 for j in range(row)]
        for i, row in enumerate(shape.parts)
    ]


def count_tableaux_hook(shape: Partition) -> int:
    """Number of standard tableaux via the hook-length formula (exact)."""
    prod = 1
    for row in hook_lengths(shape):
        for h in row:
            prod *= h
    n_fact = factorial(shape.size)
    assert n_fact % prod == 0
    return n_fact // prod


def enumerate_tableaux(shape: Partition) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Generate every standard tableau of the shape, rows as tuples.

    Values 1..N are placed in increasing order; value v may extend any row
    whose current length is below both its part and the filled length of
    the row above, which keeps rows and columns increasing by
    construction.
    """
    parts = shape.parts
    rows: list[list[int]] = [[] for _ in parts]

    def place(v: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if v > shape.size:
            yield tuple(tuple(r) for r in rows)
            return
        for i, part in enumerate(parts):
            filled = len(rows[i])
            if filled >= part:
                continue
            if i > 0 and len(rows[i - 1]) <= filled:
                continue
            rows[i].append(v)
            yield from place(v + 1)
            rows[i].pop()

    yield from place(1)


def count_tableaux_enumerated(shape: Partition) -> int:
    return sum(1 for _ in enumerate_tableaux(shape))


def count_linear_extensions_lattice(n: int) -> int:
    """Linear extensions of the n-by-n grid poset (product of two chains)."""
    if n < 1:
        raise ValueError("n must be positive")
    return count_tableaux_hook(Partition.square(n))


def square_hook_product(n: int) -> int:
    """Hook product of the square shape: product of (2n - i - j + 1)."""
    prod = 1
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            prod *= 2 * n - i - j + 1
    return prod


def partitions_of(N: int) -> Iterator[Partition]:
    """All partitions of N, largest first part first."""

    def gen(remaining: int, cap: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield prefix
            return
        for part in range(min(cap, remaining), 0, -1):
            yield from gen(remaining - part, part, prefix + (part,))

    for parts in gen(N, N, ()):
        yield Partition(parts)
