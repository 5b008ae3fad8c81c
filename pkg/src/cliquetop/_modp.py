"""Sparse column reduction over a prime field.

Left-to-right elimination with merge-based column subtraction: columns
arrive sorted by row, each reduced column is normalized to leading
coefficient 1 and parked in a flat growable pool keyed by its pivot row.
Pivots are always the smallest remaining row index of the column being
reduced, so the outcome is deterministic for a fixed column order.

The kernel is plain numpy loops so the same source runs under numba
(preferred) or as-is when numba is unavailable.
"""

import numpy as np

try:
    from numba import njit as _njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def _njit(**kwargs):
        def wrap(fn):
            return fn
        return wrap


@_njit(cache=True)
def _powmod(a, e, p):
    r = 1
    a = a % p
    while e > 0:
        if e & 1:
            r = (r * a) % p
        a = (a * a) % p
        e >>= 1
    return r


@_njit(cache=True)
def _rank_kernel(n_rows, colptr, rowidx, vals, p, stop_rank):
    """Rank of the matrix mod p; aborts once stop_rank is reached
    (stop_rank <= 0 disables the early exit).  Column slices must be
    sorted by row index."""
    pivot_slot = np.full(n_rows, -1, dtype=np.int64)
    cap = rowidx.size * 2 + 16
    pool_rows = np.empty(cap, dtype=np.int64)
    pool_vals = np.empty(cap, dtype=np.int64)
    pool_start = np.empty(n_rows + 2, dtype=np.int64)
    pool_start[0] = 0
    n_slots = 0
    used = 0
    rank = 0
    ncols = colptr.shape[0] - 1
    for j in range(ncols):
        a, b = colptr[j], colptr[j + 1]
        m0 = b - a
        cur_r = np.empty(m0, dtype=np.int64)
        cur_v = np.empty(m0, dtype=np.int64)
        w = 0
        for t in range(a, b):
            r = rowidx[t]
            v = vals[t] % p
            if w > 0 and cur_r[w - 1] == r:
                cur_v[w - 1] = (cur_v[w - 1] + v) % p
                if cur_v[w - 1] == 0:
                    w -= 1
            elif v != 0:
                cur_r[w] = r
                cur_v[w] = v
                w += 1
        cur_r = cur_r[:w]
        cur_v = cur_v[:w]
        while cur_r.shape[0] > 0:
            r0 = cur_r[0]
            s = pivot_slot[r0]
            if s < 0:
                inv = _powmod(cur_v[0], p - 2, p)
                need = cur_r.shape[0]
                while used + need > cap:
                    cap = cap * 2
                    nr = np.empty(cap, dtype=np.int64)
                    nv = np.empty(cap, dtype=np.int64)
                    nr[:used] = pool_rows[:used]
                    nv[:used] = pool_vals[:used]
                    pool_rows = nr
                    pool_vals = nv
                for t in range(need):
                    pool_rows[used + t] = cur_r[t]
                    pool_vals[used + t] = (cur_v[t] * inv) % p
                used += need
                pivot_slot[r0] = n_slots
                n_slots += 1
                pool_start[n_slots] = used
                rank += 1
                if rank == stop_rank:
                    return rank
                break
            pa, pb = pool_start[s], pool_start[s + 1]
            f = cur_v[0]
            out_r = np.empty(cur_r.shape[0] + (pb - pa), dtype=np.int64)
            out_v = np.empty(cur_r.shape[0] + (pb - pa), dtype=np.int64)
            i = 0
            t = pa
            w = 0
            while i < cur_r.shape[0] and t < pb:
                ri = cur_r[i]
                rt = pool_rows[t]
                if ri == rt:
                    nv = (cur_v[i] - f * pool_vals[t]) % p
                    if nv != 0:
                        out_r[w] = ri
                        out_v[w] = nv
                        w += 1
                    i += 1
                    t += 1
                elif ri < rt:
                    out_r[w] = ri
                    out_v[w] = cur_v[i]
                    w += 1
                    i += 1
                else:
                    nv = (-f * pool_vals[t]) % p
                    if nv != 0:
                        out_r[w] = rt
                        out_v[w] = nv
                        w += 1
                    t += 1
            while i < cur_r.shape[0]:
                out_r[w] = cur_r[i]
                out_v[w] = cur_v[i]
                w += 1
                i += 1
            while t < pb:
                nv = (-f * pool_vals[t]) % p
                if nv != 0:
                    out_r[w] = pool_rows[t]
                    out_v[w] = nv
                    w += 1
                t += 1
            cur_r = out_r[:w]
            cur_v = out_v[:w]
    return rank


def rank_modp(n_rows: int, colptr: np.ndarray, rowidx: np.ndarray,
              vals: np.ndarray, p: int, stop_rank: int = -1) -> int:
    """Rank of a CSC matrix over GF(p); entries within each column must
    be sorted by row index."""
    if n_rows == 0 or colptr.shape[0] <= 1:
        return 0
    return int(_rank_kernel(
        np.int64(n_rows),
        np.ascontiguousarray(colptr, dtype=np.int64),
        np.ascontiguousarray(rowidx, dtype=np.int64),
        np.ascontiguousarray(vals, dtype=np.int64),
        np.int64(p),
        np.int64(stop_rank),
    ))
