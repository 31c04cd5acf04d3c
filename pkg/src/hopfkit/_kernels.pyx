# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: initializedcheck=False, language_level=3
"""Compiled inner loop for the packed associativity check.

Mirrors assoc_residuals_py from the kernels module: identical inputs in
pre-split integer form and identical residual output.  Base degrees 1
and 2 are supported; the caller's feasibility guard ensures that every
accumulated value fits a signed 64-bit word, that the high key half
combined with the target index fits a signed 64-bit word, and that the
low half fits an unsigned one (modular wraparound in intermediate low
sums is harmless because the true value fits).

The accumulator is an open-addressing hash table keyed by the two-word
product key, cleared between triples through a touched-slot list so the
table is allocated once.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

ctypedef long long i64
ctypedef unsigned long long u64


cdef struct Acc:
    i64* key_hi
    u64* key_lo
    i64* v0
    i64* v1
    unsigned char* used
    int* touched
    int cap
    int mask
    int count


cdef int _acc_init(Acc* a, int cap) except -1:
    a.cap = cap
    a.mask = cap - 1
    a.count = 0
    a.key_hi = <i64*>malloc(cap * sizeof(i64))
    a.key_lo = <u64*>malloc(cap * sizeof(u64))
    a.v0 = <i64*>malloc(cap * sizeof(i64))
    a.v1 = <i64*>malloc(cap * sizeof(i64))
    a.used = <unsigned char*>malloc(cap)
    a.touched = <int*>malloc(cap * sizeof(int))
    if (a.key_hi == NULL or a.key_lo == NULL or a.v0 == NULL
            or a.v1 == NULL or a.used == NULL or a.touched == NULL):
        raise MemoryError()
    memset(a.used, 0, cap)
    return 0


cdef void _acc_free(Acc* a) noexcept:
    free(a.key_hi)
    free(a.key_lo)
    free(a.v0)
    free(a.v1)
    free(a.used)
    free(a.touched)


cdef inline int _find(Acc* a, i64 skey, u64 lo) noexcept:
    cdef u64 h = (<u64>skey) * <u64>0x9E3779B97F4A7C15ULL
    h ^= lo * <u64>0xC2B2AE3D27D4EB4FULL
    h ^= h >> 29
    cdef int idx = <int>(h & <u64>a.mask)
    while a.used[idx] and (a.key_hi[idx] != skey or a.key_lo[idx] != lo):
        idx = (idx + 1) & a.mask
    return idx


cdef int _grow(Acc* a) except -1:
    cdef Acc b
    cdef int i, idx, slot
    _acc_init(&b, a.cap * 2)
    for i in range(a.count):
        idx = a.touched[i]
        slot = _find(&b, a.key_hi[idx], a.key_lo[idx])
        b.used[slot] = 1
        b.key_hi[slot] = a.key_hi[idx]
        b.key_lo[slot] = a.key_lo[idx]
        b.v0[slot] = a.v0[idx]
        b.v1[slot] = a.v1[idx]
        b.touched[b.count] = slot
        b.count += 1
    _acc_free(a)
    a[0] = b
    return 0


cdef inline int _bump(Acc* a, i64 skey, u64 lo, i64 p0, i64 p1) except -1:
    cdef int idx = _find(a, skey, lo)
    if a.used[idx]:
        a.v0[idx] += p0
        a.v1[idx] += p1
        return 0
    if a.count * 4 >= a.cap * 3:
        _grow(a)
        idx = _find(a, skey, lo)
    a.used[idx] = 1
    a.key_hi[idx] = skey
    a.key_lo[idx] = lo
    a.v0[idx] = p0
    a.v1[idx] = p1
    a.touched[a.count] = idx
    a.count += 1
    return 0


cdef int _half(Acc* acc, int sign, int r, int kbits,
               i64 base_hi, u64 base_lo, i64 e0, i64 e1,
               const i64[:] cell_start, const i64[:] entry_k,
               const i64[:] entry_start,
               const i64[:] keys_hi, const u64[:] keys_lo,
               const i64[:] coefs,
               int n, int left_cell, int right_row, int right_is_row
               ) except -1:
    """Accumulate sign * (left cell) * (right cells) into acc.

    right_is_row selects between right cell (m, right_row) for the
    first association order and (right_row, m) for the second.
    """
    cdef int e, e2, m, k2, rc
    cdef i64 p1s, p1e, p2s, p2e, p1, p2
    cdef i64 a0, a1, b0, b1, t, hi1, skey
    cdef u64 lo1, lo
    for e in range(cell_start[left_cell], cell_start[left_cell + 1]):
        m = <int>entry_k[e]
        if right_is_row:
            rc = m * n + right_row
        else:
            rc = right_row * n + m
        p1s = entry_start[e]
        p1e = entry_start[e + 1]
        for e2 in range(cell_start[rc], cell_start[rc + 1]):
            k2 = <int>entry_k[e2]
            p2s = entry_start[e2]
            p2e = entry_start[e2 + 1]
            if r == 1:
                for p1 in range(p1s, p1e):
                    a0 = sign * coefs[p1]
                    hi1 = ((keys_hi[p1] - base_hi) << kbits) | k2
                    lo1 = keys_lo[p1] - base_lo
                    for p2 in range(p2s, p2e):
                        _bump(acc, hi1 + (keys_hi[p2] << kbits),
                              lo1 + keys_lo[p2], a0 * coefs[p2], 0)
            else:
                for p1 in range(p1s, p1e):
                    a0 = sign * coefs[2 * p1]
                    a1 = sign * coefs[2 * p1 + 1]
                    hi1 = ((keys_hi[p1] - base_hi) << kbits) | k2
                    lo1 = keys_lo[p1] - base_lo
                    for p2 in range(p2s, p2e):
                        b0 = coefs[2 * p2]
                        b1 = coefs[2 * p2 + 1]
                        t = a1 * b1
                        _bump(acc, hi1 + (keys_hi[p2] << kbits),
                              lo1 + keys_lo[p2],
                              a0 * b0 + e0 * t,
                              a0 * b1 + a1 * b0 + e1 * t)
    return 0


def assoc_residuals(int n, int r, int kbits, i64 base_hi, u64 base_lo,
                    i64 e0, i64 e1,
                    const i64[:] cell_start, const i64[:] entry_k,
                    const i64[:] entry_start,
                    const i64[:] keys_hi, const u64[:] keys_lo,
                    const i64[:] coefs, int limit):
    """Triples whose association orders disagree, with packed residuals.

    Returns [(i, j, k, [(k2, mono_hi, mono_lo, (v0,) or (v0, v1)), ...])].
    """
    cdef Acc acc
    cdef int i, j, k, s, idx, k2
    cdef i64 skey
    cdef list failures = []
    cdef list terms
    _acc_init(&acc, 1 << 14)
    try:
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    _half(&acc, 1, r, kbits, base_hi, base_lo, e0, e1,
                          cell_start, entry_k, entry_start,
                          keys_hi, keys_lo, coefs, n, i * n + j, k, 1)
                    _half(&acc, -1, r, kbits, base_hi, base_lo, e0, e1,
                          cell_start, entry_k, entry_start,
                          keys_hi, keys_lo, coefs, n, j * n + k, i, 0)
                    terms = []
                    for s in range(acc.count):
                        idx = acc.touched[s]
                        if acc.v0[idx] != 0 or (r == 2 and acc.v1[idx] != 0):
                            skey = acc.key_hi[idx]
                            k2 = <int>(skey & ((<i64>1 << kbits) - 1))
                            if r == 1:
                                terms.append((k2, skey >> kbits,
                                              acc.key_lo[idx],
                                              (acc.v0[idx],)))
                            else:
                                terms.append((k2, skey >> kbits,
                                              acc.key_lo[idx],
                                              (acc.v0[idx], acc.v1[idx])))
                        acc.used[idx] = 0
                    acc.count = 0
                    if terms:
                        failures.append((i, j, k, terms))
                        if len(failures) >= limit:
                            return failures
    finally:
        _acc_free(&acc)
    return failures
