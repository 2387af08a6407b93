"""Exact combinatorics of rank-restricted grids.

Throughout, points are rank-normalized: with N = n*n points, the x
coordinates and the y coordinates are each exactly 1..N.  Such a point
set is determined by the permutation sigma with y = sigma(x), called a
rank configuration here.  All counting is done in exact integers or
rationals; floats appear only in the final bit-count conversions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Sequence

from . import _kernels
from .grid import Grid, is_stable
from .points import GuardError, Point, PointSet
from .tableaux import Partition, count_tableaux_hook, square_hook_product

EXHAUSTIVE_CELL_GUARD = 16  # largest N = n*n meant for exhaustive enumeration


@dataclass(frozen=True)
class RankConfig:
    """A rank-restricted point set: point i sits at (i, perm[i-1]).

    `perm` is 1-based: a tuple holding a permutation of 1..N whose i-th
    entry is the y-rank of the point with x-rank i.
    """

    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise ValueError("perm must be a permutation of 1..N")

    @property
    def N(self) -> int:
        return len(self.perm)

    @property
    def n(self) -> int:
        n = round(self.N ** 0.5)
        if n * n != self.N:
            raise ValueError(f"N={self.N} is not a perfect square")
        return n

    def point_set(self) -> PointSet:
        """Points with id = x-rank, listed in x order."""
        return PointSet(
            Point(i, (i, y)) for i, y in enumerate(self.perm, start=1)
        )

    @classmethod
    def identity(cls, N: int) -> "RankConfig":
        return cls(tuple(range(1, N + 1)))

    @classmethod
    def from_point_set(cls, ps: PointSet) -> "RankConfig":
        """Rank-normalize a 2D set and read off the configuration."""
        from .points import normalize_ranks

        if ps.d != 2:
            raise ValueError("rank configurations are two-dimensional")
        ranked = normalize_ranks(ps)
        perm = [0] * len(ps)
        for p in ranked:
            perm[p.coords[0] - 1] = p.coords[1]
        return cls(tuple(perm))

    def sigma0(self) -> tuple[int, ...]:
        """0-based permutation for the kernels."""
        return tuple(v - 1 for v in self.perm)


# -- closed-form counts ------------------------------------------------------

def count_point_sets(n: int) -> int:
    """Distinct rank configurations on an n-by-n grid: (n^2)!."""
    return factorial(n * n)


def count_fillings(n: int) -> tuple[int, int]:
    """(point sets, fillings): fillings assign x- and y-ranks independently.

    A filling pairs an assignment of the N x-values to cells with an
    independent assignment of the N y-values, hence ((n^2)!)^2 total.
    """
    sets = count_point_sets(n)
    return sets, sets * sets


def count_stable_fillings(n: int) -> int:
    """Stable fillings: ((n^2)! / (n!)^n)^2.

    Per axis, a stable filling partitions the sorted values into n ordered
    blocks of n (one per line) whose internal order is forced, leaving
    (n^2)!/(n!)^n choices; the two axes are independent.
    """
    N_fact = factorial(n * n)
    per_axis, rem = divmod(N_fact, factorial(n) ** n)
    assert rem == 0
    return per_axis * per_axis


def stable_fraction(n: int) -> Fraction:
    """Fraction of all fillings that are stable: 1 / (n!)^(2n)."""
    return Fraction(1, factorial(n) ** (2 * n))


def count_bin_stable(n: int) -> int:
    """Stable fillings satisfying both bin conditions: (n!)^(2n).

    With the k-th smallest value block pinned to line k on both axes,
    each of the n lines per axis may order its block freely.
    """
    return factorial(n) ** (2 * n)


# -- conditions on grids -----------------------------------------------------

def check_bin_conditions(g: Grid) -> tuple[bool, bool]:
    """(x_bin, y_bin) for a d=2 grid.

    x_bin holds when column k contains exactly the k-th smallest block of
    n x-values; y_bin is the same for rows and y-values.
    """
    if g.d != 2:
        raise ValueError("bin conditions are defined for d=2 grids")
    n = g.n
    xs = sorted(p.coords[0] for p in g.points())
    ys = sorted(p.coords[1] for p in g.points())
    rows = g.rows()
    x_bin = all(
        sorted(rows[r][c].coords[0] for r in range(n))
        == xs[c * n : (c + 1) * n]
        for c in range(n)
    )
    y_bin = all(
        sorted(rows[r][c].coords[1] for c in range(n))
        == ys[r * n : (r + 1) * n]
        for r in range(n)
    )
    return x_bin, y_bin


def enumerate_stable_states(
    cfg: RankConfig, limit: int = 0, allow_large: bool = False
) -> list[Grid]:
    """All stable grids over a rank configuration, via backtracking.

    Cells are filled row-major from the bottom; each candidate point only
    needs to beat its left neighbor in x-rank and its lower neighbor in
    y-rank, which characterizes stability exactly.  `limit` caps the
    number of states returned (0 = all); sets beyond 16 cells need
    `allow_large=True`.
    """
    n = cfg.n
    if cfg.N > EXHAUSTIVE_CELL_GUARD and not allow_large:
        raise GuardError(
            f"N={cfg.N} exceeds the exhaustive-enumeration guard "
            f"({EXHAUSTIVE_CELL_GUARD}); pass allow_large=True to override"
        )
    placements = _kernels.enumerate_stable_placements(cfg.sigma0(), n, limit)
    pts = list(cfg.point_set())
    grids = []
    for flat in placements:
        cells = {}
        for k, v in enumerate(flat):
            r, c = divmod(k, n)
            cells[(c + 1, r + 1)] = pts[v]
        grids.append(Grid(n, 2, cells))
    return grids


def count_stable_states(
    cfg: RankConfig, limit: int = 0, allow_large: bool = False
) -> int:
    """Number of stable states of a configuration (limit 0 = exact)."""
    if cfg.N > EXHAUSTIVE_CELL_GUARD and not allow_large:
        raise GuardError(
            f"N={cfg.N} exceeds the exhaustive-enumeration guard "
            f"({EXHAUSTIVE_CELL_GUARD}); pass allow_large=True to override"
        )
    return _kernels.count_stable_placements(cfg.sigma0(), cfg.n, limit)


def check_submatrix_unique(cfg: RankConfig, g: Grid) -> bool:
    """Whether every contiguous square submatrix is uniquely stable.

    `g` must be a stable state of `cfg`.  For each k in 1..n and each
    k-by-k window of g, the window's points are rank-reduced to their own
    configuration and its stable states are counted with an early cutoff;
    any window admitting a second arrangement fails the check.  Uniqueness
    of the whole configuration requires this to hold everywhere.
    """
    report = is_stable(g)
    if not report.stable:
        raise ValueError("grid is not a stable state of the configuration")
    n = g.n
    rows = g.rows()
    for k in range(2, n + 1):
        for r0 in range(n - k + 1):
            for c0 in range(n - k + 1):
                window = [
                    rows[r][c]
                    for r in range(r0, r0 + k)
                    for c in range(c0, c0 + k)
                ]
                sub = RankConfig.from_point_set(
                    PointSet(
                        Point(i, p.coords)
                        for i, p in enumerate(
                            sorted(window, key=lambda p: p.id), start=1
                        )
                    )
                )
                if _kernels.count_stable_placements(sub.sigma0(), k, 2) != 1:
                    return False
    return True


# -- information lower bound -------------------------------------------------

def lower_bound_bits(n: int) -> float:
    """log2 of (n^2)! / #tableaux(square n), from exact integers.

    This is the information needed to pin down one of the stable states
    that a comparison-based arrangement procedure must distinguish; it
    equals log2 of the square hook product.
    """
    ratio, rem = divmod(factorial(n * n), count_tableaux_hook(Partition.square(n)))
    assert rem == 0
    assert ratio == square_hook_product(n)
    return _log2_big(ratio)


def lower_bound_bits_formula(n: int) -> float:
    """The same bound as a closed-form sum of logarithms.

    n*log2(n) plus sum over i in 1..n-1 of i*log2(i) + i*log2(2n - i);
    the i = n term of the naive summation is exactly the leading
    n*log2(n), so the sum stops at n-1 to avoid double counting.
    """
    from math import log2

    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return 0.0
    total = n * log2(n)
    for i in range(1, n):
        if i > 1:
            total += i * log2(i)
        total += i * log2(2 * n - i)
    return total


def _log2_big(value: int) -> float:
    """log2 for integers too large for float conversion."""
    from math import log2

    if value <= 0:
        raise ValueError("log2 of non-positive value")
    bits = value.bit_length()
    if bits <= 1000:
        return log2(value)
    shift = bits - 64
    return shift + log2(value >> shift)


def all_rank_configs(n: int) -> Iterator[RankConfig]:
    """Every configuration of n*n ranks, in lexicographic perm order."""
    from itertools import permutations

    for perm in permutations(range(1, n * n + 1)):
        yield RankConfig(perm)
