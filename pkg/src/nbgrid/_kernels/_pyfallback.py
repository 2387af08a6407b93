"""Pure-Python kernels: reference implementations of the hot loops.

A rank configuration over N = n*n points is a permutation sigma (0-based
here): point i has x-rank i and y-rank sigma[i].  A stable placement is a
row-major filling (bottom row first) of the n-by-n grid with point
indices such that every row increases in i and every column increases in
sigma[i].  These routines are drop-in equivalents of the compiled module;
the census and candidate scans spend essentially all their time here.
"""

from __future__ import annotations

from typing import Sequence

BACKEND_NAME = "python"


def count_stable_placements(sigma: Sequence[int], n: int, limit: int = 0) -> int:
    """Count stable placements of the configuration, stopping at `limit` (0 = all)."""
    N = n * n
    if len(sigma) != N:
        raise ValueError(f"sigma must have length {N}")
    sig = tuple(sigma)
    grid = [0] * N
    found = 0

    def fill(k: int) -> bool:  # returns True when the cutoff fired
        nonlocal found
        if k == N:
            found += 1
            return limit > 0 and found >= limit
        c = k % n
        lo = grid[k - 1] + 1 if c else 0
        below = sig[grid[k - n]] if k >= n else -1
        for v in range(lo, N):
            if not used[v] and sig[v] > below:
                used[v] = True
                grid[k] = v
                if fill(k + 1):
                    return True
                used[v] = False
        return False

    used = [False] * N
    fill(0)
    return found


def enumerate_stable_placements(
    sigma: Sequence[int], n: int, cap: int = 0
) -> list[tuple[int, ...]]:
    """All stable placements as row-major point-index tuples (bottom row first)."""
    N = n * n
    if len(sigma) != N:
        raise ValueError(f"sigma must have length {N}")
    sig = tuple(sigma)
    grid = [0] * N
    out: list[tuple[int, ...]] = []

    def fill(k: int) -> bool:
        if k == N:
            out.append(tuple(grid))
            return cap > 0 and len(out) >= cap
        c = k % n
        lo = grid[k - 1] + 1 if c else 0
        below = sig[grid[k - n]] if k >= n else -1
        for v in range(lo, N):
            if not used[v] and sig[v] > below:
                used[v] = True
                grid[k] = v
                if fill(k + 1):
                    return True
                used[v] = False
        return False

    used = [False] * N
    fill(0)
    return out


def scan_configs(n: int, counts, start: int = 0, stop: int | None = None,
                 limit: int = 0) -> None:
    """Count stable placements for a lexicographic range of configurations.

    `counts` is a writable int64 buffer of length stop-start; entry j
    receives the count for the permutation of lexicographic rank start+j.
    """
    import itertools
    import math

    N = n * n
    total = math.factorial(N)
    if stop is None:
        stop = total
    if not 0 <= start <= stop <= total:
        raise ValueError("bad rank range")
    perm = perm_unrank(start, N)
    idx = 0
    # walk permutations in lexicographic order from `perm`
    for sigma in _lex_perms_from(perm, N):
        if start + idx >= stop:
            break
        counts[idx] = count_stable_placements(sigma, n, limit)
        idx += 1


def _lex_perms_from(first: list[int], N: int):
    perm = list(first)
    while True:
        yield tuple(perm)
        # next_permutation, lexicographic
        i = N - 2
        while i >= 0 and perm[i] >= perm[i + 1]:
            i -= 1
        if i < 0:
            return
        j = N - 1
        while perm[j] <= perm[i]:
            j -= 1
        perm[i], perm[j] = perm[j], perm[i]
        perm[i + 1 :] = reversed(perm[i + 1 :])


def perm_rank(perm: Sequence[int]) -> int:
    """Lexicographic rank of a 0-based permutation (Lehmer code)."""
    import math

    N = len(perm)
    rank = 0
    for i in range(N):
        smaller = sum(1 for j in range(i + 1, N) if perm[j] < perm[i])
        rank += smaller * math.factorial(N - 1 - i)
    return rank


def perm_unrank(rank: int, N: int) -> list[int]:
    """Inverse of perm_rank."""
    import math

    if not 0 <= rank < math.factorial(N):
        raise ValueError(f"rank {rank} out of range for N={N}")
    avail = list(range(N))
    out = []
    for i in range(N, 0, -1):
        f = math.factorial(i - 1)
        out.append(avail.pop(rank // f))
        rank %= f
    return out


def binned_candidates(n: int, unique_tables: dict[int, Sequence[int]]) -> list[tuple[int, ...]]:
    """Enumerate configurations whose canonical state is doubly binned and
    survives the proper-submatrix uniqueness filter.

    The search fills the binned grid cell by cell, row-major from the
    bottom: cell (c, r) takes x = n*c + a with offset a unused in column c
    and y = n*r + b with offset b unused in row r.  After each placement
    the k-by-k windows ending at that cell (2 <= k < n) are rank-reduced
    and looked up in `unique_tables[k*k]`, a 0/1 table indexed by
    lexicographic permutation rank; windows whose configuration is not
    uniquely stable prune the branch.  Returns the surviving sigmas,
    0-based, in lexicographic search order.
    """
    N = n * n
    xoff = [[False] * n for _ in range(n)]  # xoff[c][a]: offset a used in column c
    yoff = [[False] * n for _ in range(n)]
    gx = [0] * N  # x value at flat cell index (row-major, bottom first)
    gy = [0] * N
    out: list[tuple[int, ...]] = []

    def window_ok(c: int, r: int, k: int) -> bool:
        table = unique_tables[k * k]
        pts = []
        for rr in range(r - k + 1, r + 1):
            for cc in range(c - k + 1, c + 1):
                i = rr * n + cc
                pts.append((gx[i], gy[i]))
        pts.sort()
        ys = sorted(range(k * k), key=lambda t: pts[t][1])
        pattern = [0] * (k * k)
        for yrank, t in enumerate(ys):
            pattern[t] = yrank
        return bool(table[perm_rank(pattern)])

    def fill(k: int):
        if k == N:
            sigma = [0] * N
            for i in range(N):
                sigma[gx[i]] = gy[i]
            out.append(tuple(sigma))
            return
        r, c = divmod(k, n)
        for a in range(n):
            if xoff[c][a]:
                continue
            for b in range(n):
                if yoff[r][b]:
                    continue
                gx[k] = n * c + a
                gy[k] = n * r + b
                ok = True
                if c and r:
                    for size in range(2, n):
                        if c >= size - 1 and r >= size - 1:
                            if not window_ok(c, r, size):
                                ok = False
                                break
                if ok:
                    xoff[c][a] = yoff[r][b] = True
                    fill(k + 1)
                    xoff[c][a] = yoff[r][b] = False

    fill(0)
    return out
