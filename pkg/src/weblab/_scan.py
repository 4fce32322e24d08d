"""Compiled kernels for the all-pairs dominance scan.

Profiles are bit-sliced: bit ``(k - 1) * n + (d - 1)`` of a tableau is set
when its depth right of point ``k`` is at least ``d``.  Pointwise dominance
then becomes a subset test on a few machine words.
"""

from __future__ import annotations

import warnings

import numba
import numpy as np
from numba import njit, prange

# old system TBB: numba falls back to another threading layer, which is fine
warnings.filterwarnings("ignore", message="The TBB threading layer")


def set_threads(k: int) -> None:
    numba.set_num_threads(max(1, min(int(k), numba.config.NUMBA_NUM_THREADS)))


@njit(cache=True, parallel=True)
def m_statistics(sym):
    """Nesting and crossing numbers of the M-diagram of every word (0=+, 1=0, 2=-)."""
    N, m = sym.shape
    half = m // 3
    nest = np.zeros(N, dtype=np.int32)
    cross = np.zeros(N, dtype=np.int32)
    for t in prange(N):
        ul = np.empty(half, dtype=np.int32)
        ur = np.empty(half, dtype=np.int32)
        ll = np.empty(half, dtype=np.int32)
        lr = np.empty(half, dtype=np.int32)
        up_stack = np.empty(half, dtype=np.int32)
        lo_stack = np.empty(half, dtype=np.int32)
        su = 0
        sl = 0
        nu = 0
        nl = 0
        for p in range(m):
            s = sym[t, p]
            if s == 0:
                up_stack[su] = p
                su += 1
            elif s == 1:
                su -= 1
                ul[nu] = up_stack[su]
                ur[nu] = p
                nu += 1
                lo_stack[sl] = p
                sl += 1
            else:
                sl -= 1
                ll[nl] = lo_stack[sl]
                lr[nl] = p
                nl += 1
        c = 0
        for x in range(nu):
            a = ul[x]
            b = ur[x]
            for y in range(nl):
                l = ll[y]
                r = lr[y]
                if (a < l and l < b and b < r) or (l < a and a < r and r < b):
                    c += 1
        k = 0
        for x in range(2 * half):
            if x < half:
                a = ul[x]
                b = ur[x]
            else:
                a = ll[x - half]
                b = lr[x - half]
            for y in range(2 * half):
                if y < half:
                    l = ul[y]
                    r = ur[y]
                else:
                    l = ll[y - half]
                    r = lr[y - half]
                if l < a and b < r:
                    k += 1
        nest[t] = k
        cross[t] = c
    return nest, cross


def threshold_bits(P: np.ndarray, n: int) -> np.ndarray:
    N, width = P.shape
    m = width - 1
    nbits = (m - 1) * n
    words = (nbits + 63) // 64
    out = np.zeros((N, words), dtype=np.uint64)
    for k in range(1, m):
        col = P[:, k]
        for d in range(1, n + 1):
            bit = (k - 1) * n + (d - 1)
            mask = np.uint64(1) << np.uint64(bit % 64)
            out[col >= d, bit // 64] |= mask
    return out


@njit(cache=True)
def _rank_starts(rank_sorted, max_rank):
    starts = np.zeros(max_rank + 2, dtype=np.int64)
    n = rank_sorted.shape[0]
    j = 0
    for r in range(max_rank + 2):
        while j < n and rank_sorted[j] < r:
            j += 1
        starts[r] = j
    return starts


@njit(cache=True)
def _lower_bound(arr, lo, hi, value):
    while lo < hi:
        mid = (lo + hi) // 2
        if arr[mid] < value:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(cache=True, parallel=True)
def _count(bits, rank, sums, cross, order):
    N, W = bits.shape
    rank_sorted = rank[order]
    sums_sorted = sums[order]
    max_rank = rank_sorted[N - 1]
    starts = _rank_starts(rank_sorted, max_rank)
    counts = np.zeros(N, dtype=np.int64)
    fcounts = np.zeros(N, dtype=np.int64)
    for b in prange(N):
        rb = rank[b]
        sb = sums[b]
        cb = cross[b]
        cnt = 0
        fcnt = 0
        for r in range(rb + 1, max_rank + 1):
            lo = starts[r]
            hi = _lower_bound(sums_sorted, lo, starts[r + 1], sb)
            for j in range(lo, hi):
                a = order[j]
                ok = True
                for w in range(W):
                    if bits[a, w] & ~bits[b, w]:
                        ok = False
                        break
                if ok:
                    cnt += 1
                    if cross[a] <= cb + 1:
                        fcnt += 1
        counts[b] = cnt
        fcounts[b] = fcnt
    return counts, fcounts


def count_pairs(bits, rank, sums, cross, order):
    return _count(bits, rank.astype(np.int64), sums.astype(np.int64), cross.astype(np.int64), order.astype(np.int64))


@njit(cache=True, parallel=True)
def _collect(bits, rank, sums, order, counts, offsets, out):
    N, W = bits.shape
    rank_sorted = rank[order]
    sums_sorted = sums[order]
    max_rank = rank_sorted[N - 1]
    starts = _rank_starts(rank_sorted, max_rank)
    for b in prange(N):
        if counts[b] == 0:
            continue
        pos = offsets[b]
        rb = rank[b]
        sb = sums[b]
        for r in range(rb + 1, max_rank + 1):
            lo = starts[r]
            hi = _lower_bound(sums_sorted, lo, starts[r + 1], sb)
            for j in range(lo, hi):
                a = order[j]
                ok = True
                for w in range(W):
                    if bits[a, w] & ~bits[b, w]:
                        ok = False
                        break
                if ok:
                    out[pos, 0] = a
                    out[pos, 1] = b
                    pos += 1


def collect_pairs(bits, rank, sums, order, counts):
    offsets = np.zeros(len(counts), dtype=np.int64)
    np.cumsum(counts[:-1], out=offsets[1:])
    out = np.zeros((int(counts.sum()), 2), dtype=np.int64)
    _collect(bits, rank.astype(np.int64), sums.astype(np.int64), order.astype(np.int64), counts, offsets, out)
    return out
