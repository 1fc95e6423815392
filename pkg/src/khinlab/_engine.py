"""Gray-code enumeration of sign hypercubes with incremental contraction.

The engine walks every sign assignment of a set of enumerated axes
(N_1 + ... + N_k bits, bit b set <=> sign -1) in reflected Gray-code order.
It maintains the contraction

    b_f = sum_q coef[f, q] * eta^(1)_{q_1} ... eta^(k)_{q_k}

for every row f of a coefficient matrix whose columns are the row-major
flattening of the enumerated axes.  Flipping one sign only touches the
slice of that axis, so each step costs F * P / N_axis.

Contractions are carried as double-double values.  Sums of doubles whose
exact value fits in ~106 bits are therefore exact, which makes the value at
each configuration independent of the path that reached it: exact
cancellations give exactly zero and chunked runs agree bit for bit.

Two reductions are supported:
  MODE_POWER_SUM  sum over configurations of |b_0|^r   (compensated)
  MODE_MAX_NORM   max over configurations of ||b||_r  (r may be inf)

The sign space is split on its top bits into chunks whose number depends
only on the bit count, never on the worker count, and chunk results are
combined in chunk order.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numba import njit

from .errors import BudgetExceededError

MODE_POWER_SUM = 0
MODE_MAX_NORM = 1

DEFAULT_BIT_BUDGET = 26
# chunks are only split off above this many bits, at most 2**MAX_CHUNK_BITS
SERIAL_BITS = 14
MAX_CHUNK_BITS = 8


@njit(cache=True, nogil=True)
def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@njit(cache=True, nogil=True)
def _dd_add(hi, lo, x):
    s, e = _two_sum(hi, x)
    e += lo
    h = s + e
    return h, e - (h - s)


@njit(cache=True, nogil=True)
def _reduce(b_hi, mode, r):
    if mode == MODE_POWER_SUM:
        v = abs(b_hi[0])
        if v == 0.0:
            return 0.0
        return v**r
    top = 0.0
    for f in range(b_hi.shape[0]):
        v = abs(b_hi[f])
        if v > top:
            top = v
    if top == 0.0 or r == np.inf:
        return top
    acc = 0.0
    comp = 0.0
    for f in range(b_hi.shape[0]):
        v = abs(b_hi[f])
        if v != 0.0:
            acc, e = _two_sum(acc, (v / top) ** r)
            comp += e
    return top * (acc + comp) ** (1.0 / r)


@njit(cache=True, nogil=True)
def _enumerate_chunk(coef, bit_axis, bit_index, axis_stride, slice_ptr,
                     slice_off, slice_bits, full_bits, start, count, mode, r):
    n_rows = coef.shape[0]
    n_cols = coef.shape[1]
    n_bits = bit_axis.shape[0]
    n_axes = full_bits.shape[1]
    width = slice_bits.shape[1]

    # eta[n_bits] is a permanent +1 used to pad slice_bits
    eta = np.ones(n_bits + 1, dtype=np.int64)
    word = start ^ (start >> 1)
    for b in range(n_bits):
        if (word >> b) & 1:
            eta[b] = -1

    b_hi = np.zeros(n_rows)
    b_lo = np.zeros(n_rows)
    for q in range(n_cols):
        sg = 1
        for a in range(n_axes):
            sg *= eta[full_bits[q, a]]
        for f in range(n_rows):
            b_hi[f], b_lo[f] = _dd_add(b_hi[f], b_lo[f], sg * coef[f, q])

    c_hi = np.zeros(n_rows)
    c_lo = np.zeros(n_rows)
    acc = 0.0
    comp = 0.0
    best = -1.0
    best_at = start
    for t in range(count):
        n = start + t
        v = _reduce(b_hi, mode, r)
        if mode == MODE_POWER_SUM:
            acc, e = _two_sum(acc, v)
            comp += e
        elif v > best:
            best = v
            best_at = n
        if t + 1 == count:
            break
        # gray(n) -> gray(n+1) flips the lowest set bit of n+1
        nxt = n + 1
        b = 0
        while not (nxt >> b) & 1:
            b += 1
        a = bit_axis[b]
        shift = bit_index[b] * axis_stride[a]
        for f in range(n_rows):
            c_hi[f] = 0.0
            c_lo[f] = 0.0
        for k in range(slice_ptr[a], slice_ptr[a + 1]):
            sg = 1
            for w in range(width):
                sg *= eta[slice_bits[k, w]]
            q = slice_off[k] + shift
            for f in range(n_rows):
                c_hi[f], c_lo[f] = _dd_add(c_hi[f], c_lo[f], sg * coef[f, q])
        step = -2.0 * eta[b]
        for f in range(n_rows):
            h, lo = _dd_add(b_hi[f], b_lo[f], step * c_hi[f])
            b_hi[f], b_lo[f] = _dd_add(h, lo, step * c_lo[f])
        eta[b] = -eta[b]
    if mode == MODE_POWER_SUM:
        return acc, comp, start
    return best, 0.0, best_at


def _tables(shape):
    """Index tables for the enumerated axes ``shape`` (row-major)."""
    shape = tuple(int(n) for n in shape)
    k = len(shape)
    n_bits = sum(shape)
    bit_base = np.concatenate([[0], np.cumsum(shape)[:-1]]).astype(np.int64)
    bit_axis = np.repeat(np.arange(k, dtype=np.int64), shape)
    bit_index = np.concatenate([np.arange(n, dtype=np.int64) for n in shape])
    axis_stride = np.array(
        [int(np.prod(shape[a + 1:], dtype=np.int64)) for a in range(k)], dtype=np.int64
    )
    idx = np.indices(shape).reshape(k, -1).T.astype(np.int64)
    full_bits = np.ascontiguousarray(idx + bit_base)
    cols = np.arange(idx.shape[0], dtype=np.int64)

    width = max(k - 1, 1)
    ptr = [0]
    offs, bits = [], []
    for a in range(k):
        rows = idx[:, a] == 0
        offs.append(cols[rows])
        other = np.delete(full_bits[rows], a, axis=1)
        if other.shape[1] == 0:
            other = np.full((other.shape[0], 1), n_bits, dtype=np.int64)
        bits.append(other)
        ptr.append(ptr[-1] + int(rows.sum()))
    slice_ptr = np.array(ptr, dtype=np.int64)
    slice_off = np.concatenate(offs).astype(np.int64)
    slice_bits = np.ascontiguousarray(np.concatenate(bits).astype(np.int64).reshape(-1, width))
    return bit_axis, bit_index, axis_stride, slice_ptr, slice_off, slice_bits, full_bits


def chunk_bits(n_bits: int) -> int:
    return max(0, min(MAX_CHUNK_BITS, n_bits - SERIAL_BITS))


def resolve_threads(threads=None) -> int:
    if threads is None:
        env = os.environ.get("KHINLAB_THREADS")
        threads = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(threads))


def check_budget(n_bits: int, bit_budget: int = DEFAULT_BIT_BUDGET) -> None:
    if n_bits > bit_budget:
        raise BudgetExceededError(n_bits, bit_budget)


def enumerate_signs(coef, shape, mode, r, bit_budget=DEFAULT_BIT_BUDGET, threads=None):
    """Run the enumeration over all 2**sum(shape) sign assignments.

    ``coef`` is an (F, prod(shape)) array.  Returns ``(total, argbest)``:
    for MODE_POWER_SUM the un-normalized sum of |b_0|^r, for MODE_MAX_NORM
    the maximal norm and the Gray index of the first maximizer.
    """
    n_bits = int(sum(shape))
    check_budget(n_bits, bit_budget)
    coef = np.ascontiguousarray(coef, dtype=np.float64)
    tables = _tables(shape)
    k = chunk_bits(n_bits)
    count = 1 << (n_bits - k)
    starts = [c * count for c in range(1 << k)]

    def run(start):
        return _enumerate_chunk(coef, *tables, start, count, mode, float(r))

    workers = min(resolve_threads(threads), len(starts))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, starts))
    else:
        parts = [run(s) for s in starts]

    if mode == MODE_POWER_SUM:
        total = math.fsum(x for hi, lo, _ in parts for x in (hi, lo))
        return total, 0
    best, _, at = parts[0]
    for value, _, where in parts[1:]:
        if value > best:
            best, at = value, where
    return best, int(at)


def gray_word(n: int) -> int:
    return n ^ (n >> 1)


def sign_rows(n_bits: int) -> np.ndarray:
    """(2**n_bits, n_bits) matrix of the signs of each Gray-ordered assignment."""
    words = np.arange(1 << n_bits, dtype=np.int64)
    words ^= words >> 1
    bits = (words[:, None] >> np.arange(n_bits, dtype=np.int64)) & 1
    return (1 - 2 * bits).astype(np.float64)
