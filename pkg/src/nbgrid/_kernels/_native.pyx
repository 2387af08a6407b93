# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: stable-placement counting and the census scans.

Same contracts as the pure-Python module; see there for the semantics.
Inputs larger than the compiled limits are delegated to the fallback.
"""

from libc.stdint cimport int64_t
from libc.stdlib cimport free, malloc
from libc.string cimport memset

BACKEND_NAME = "native"


cdef long long _count_rec(int k, int N, int n, int* sig, int* grid,
                          unsigned char* used, long long remaining) nogil:
    # remaining == 0 means unlimited; otherwise return at most `remaining`
    cdef long long found = 0
    cdef long long sub
    cdef int lo, below, v
    if k == N:
        return 1
    lo = grid[k - 1] + 1 if k % n else 0
    below = sig[grid[k - n]] if k >= n else -1
    for v in range(lo, N):
        if not used[v] and sig[v] > below:
            used[v] = 1
            grid[k] = v
            sub = _count_rec(k + 1, N, n, sig, grid, used,
                             0 if remaining == 0 else remaining - found)
            used[v] = 0
            found += sub
            if remaining > 0 and found >= remaining:
                return found
    return found


def count_stable_placements(sigma, int n, long long limit=0):
    """Count stable placements of the configuration, stopping at `limit` (0 = all)."""
    cdef int N = n * n
    if len(sigma) != N:
        raise ValueError(f"sigma must have length {N}")
    if N > 64:
        from . import _pyfallback
        return _pyfallback.count_stable_placements(sigma, n, limit)
    cdef int* sig = <int*> malloc(N * sizeof(int))
    cdef int* grid = <int*> malloc(N * sizeof(int))
    cdef unsigned char* used = <unsigned char*> malloc(N)
    if sig == NULL or grid == NULL or used == NULL:
        free(sig); free(grid); free(used)
        raise MemoryError()
    cdef int i, v
    cdef long long out
    try:
        for i in range(N):
            v = sigma[i]
            if not 0 <= v < N:
                raise ValueError(f"sigma entries must lie in 0..{N - 1}")
            sig[i] = v
        memset(used, 0, N)
        with nogil:
            out = _count_rec(0, N, n, sig, grid, used, limit)
    finally:
        free(sig); free(grid); free(used)
    return out


def enumerate_stable_placements(sigma, int n, cap=0):
    """All stable placements as row-major point-index tuples (bottom row first)."""
    N = n * n
    if len(sigma) != N:
        raise ValueError(f"sigma must have length {N}")
    sig = tuple(sigma)
    capv = int(cap)
    grid = [0] * N
    used = [False] * N
    out = []

    def fill(k):
        if k == N:
            out.append(tuple(grid))
            return capv > 0 and len(out) >= capv
        lo = grid[k - 1] + 1 if k % n else 0
        below = sig[grid[k - n]] if k >= n else -1
        for v in range(lo, N):
            if not used[v] and sig[v] > below:
                used[v] = True
                grid[k] = v
                if fill(k + 1):
                    return True
                used[v] = False
        return False

    fill(0)
    return out


def scan_configs(int n, counts, long long start=0, stop=None, long long limit=0):
    """Count stable placements for a lexicographic range of configurations.

    `counts` is a writable int64 buffer of length stop-start; entry j
    receives the count for the permutation of lexicographic rank start+j.
    """
    import math

    from . import _pyfallback

    cdef int N = n * n
    if N > 20:
        return _pyfallback.scan_configs(n, counts, start, stop, limit)
    cdef long long total = math.factorial(N)
    cdef long long hi
    if stop is None:
        hi = total
    else:
        hi = stop
    if not 0 <= start <= hi <= total:
        raise ValueError("bad rank range")
    cdef int64_t[::1] view = counts
    cdef long long span = hi - start
    if view.shape[0] < span:
        raise ValueError("counts buffer too small")
    if span == 0:
        return

    first = _pyfallback.perm_unrank(start, N)
    cdef int* perm = <int*> malloc(N * sizeof(int))
    cdef int* grid = <int*> malloc(N * sizeof(int))
    cdef unsigned char* used = <unsigned char*> malloc(N)
    if perm == NULL or grid == NULL or used == NULL:
        free(perm); free(grid); free(used)
        raise MemoryError()
    cdef int i, j, t
    cdef long long idx = 0
    try:
        for i in range(N):
            perm[i] = first[i]
        memset(used, 0, N)
        with nogil:
            while idx < span:
                view[idx] = _count_rec(0, N, n, perm, grid, used, limit)
                idx += 1
                # next_permutation, lexicographic
                i = N - 2
                while i >= 0 and perm[i] >= perm[i + 1]:
                    i -= 1
                if i < 0:
                    break
                j = N - 1
                while perm[j] <= perm[i]:
                    j -= 1
                t = perm[i]; perm[i] = perm[j]; perm[j] = t
                i += 1
                j = N - 1
                while i < j:
                    t = perm[i]; perm[i] = perm[j]; perm[j] = t
                    i += 1
                    j -= 1
    finally:
        free(perm); free(grid); free(used)


cdef int _window_ok(int c, int r, int k, int n, int* gx, int* gy,
                    unsigned char* table) nogil:
    # rank-reduce the k-by-k window whose top-right cell is (c, r) and
    # look its configuration up in the 0/1 uniqueness table
    cdef int kk = k * k
    cdef int pts_x[25]
    cdef int pts_y[25]
    cdef int order[25]
    cdef int pattern[25]
    cdef int idx = 0
    cdef int rr, cc, i, j, t, smaller
    cdef long long rank, f
    for rr in range(r - k + 1, r + 1):
        for cc in range(c - k + 1, c + 1):
            pts_x[idx] = gx[rr * n + cc]
            pts_y[idx] = gy[rr * n + cc]
            idx += 1
    # indices in ascending-x order (insertion sort; x values are distinct)
    for i in range(kk):
        order[i] = i
    for i in range(1, kk):
        t = order[i]
        j = i - 1
        while j >= 0 and pts_x[order[j]] > pts_x[t]:
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = t
    # pattern[i] = y-rank of the i-th point in x order
    for i in range(kk):
        smaller = 0
        for j in range(kk):
            if pts_y[order[j]] < pts_y[order[i]]:
                smaller += 1
        pattern[i] = smaller
    # lexicographic permutation rank (Lehmer code)
    f = 1
    for i in range(2, kk):
        f *= i
    rank = 0
    for i in range(kk):
        smaller = 0
        for j in range(i + 1, kk):
            if pattern[j] < pattern[i]:
                smaller += 1
        rank += smaller * f
        if kk - 1 - i > 0:
            f //= (kk - 1 - i)
    return table[rank]


cdef int _bc_fill(int cell, int n, int N, int* gx, int* gy,
                  unsigned char* xoff, unsigned char* yoff,
                  unsigned char** tables, list out) except -1:
    cdef int r, c, a, b, size, ok, i
    if cell == N:
        sigma = [0] * N
        for i in range(N):
            sigma[gx[i]] = gy[i]
        out.append(tuple(sigma))
        return 0
    r = cell // n
    c = cell % n
    for a in range(n):
        if xoff[c * n + a]:
            continue
        for b in range(n):
            if yoff[r * n + b]:
                continue
            gx[cell] = n * c + a
            gy[cell] = n * r + b
            ok = 1
            if c >= 1 and r >= 1:
                for size in range(2, n):
                    if c >= size - 1 and r >= size - 1:
                        if not _window_ok(c, r, size, n, gx, gy, tables[size]):
                            ok = 0
                            break
            if ok:
                xoff[c * n + a] = 1
                yoff[r * n + b] = 1
                _bc_fill(cell + 1, n, N, gx, gy, xoff, yoff, tables, out)
                xoff[c * n + a] = 0
                yoff[r * n + b] = 0
    return 0


def binned_candidates(int n, unique_tables):
    """Enumerate configurations whose canonical state is doubly binned and
    survives the proper-submatrix uniqueness filter.

    See the fallback module for the search description.  `unique_tables`
    maps window cell counts (k*k for 2 <= k < n) to 0/1 tables indexed by
    lexicographic permutation rank.
    """
    cdef int N = n * n
    if n < 3:
        raise ValueError("candidate generation applies for n >= 3")
    if n > 5:
        from . import _pyfallback
        return _pyfallback.binned_candidates(n, unique_tables)
    import numpy as np

    refs = []  # keep the table buffers alive during the search
    cdef unsigned char** tables = <unsigned char**> malloc(n * sizeof(unsigned char*))
    cdef int* gx = <int*> malloc(N * sizeof(int))
    cdef int* gy = <int*> malloc(N * sizeof(int))
    cdef unsigned char* xoff = <unsigned char*> malloc(N)
    cdef unsigned char* yoff = <unsigned char*> malloc(N)
    if tables == NULL or gx == NULL or gy == NULL or xoff == NULL or yoff == NULL:
        free(tables); free(gx); free(gy); free(xoff); free(yoff)
        raise MemoryError()
    cdef int k
    out = []
    try:
        for k in range(2, n):
            buf = np.ascontiguousarray(np.asarray(unique_tables[k * k], dtype=np.uint8))
            refs.append(buf)
            tables[k] = <unsigned char*> <size_t> buf.ctypes.data
        memset(xoff, 0, N)
        memset(yoff, 0, N)
        _bc_fill(0, n, N, gx, gy, xoff, yoff, tables, out)
    finally:
        free(tables); free(gx); free(gy); free(xoff); free(yoff)
    return out
