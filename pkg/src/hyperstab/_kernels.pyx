# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.

Every loop walks subsets in Gray-code order, so each step multiplies the
running product by exactly one generator.  Masks are single 64-bit words.
The heavy loops release the GIL so callers can partition across threads.
"""

import numpy as np

from libc.stdint cimport int64_t, uint64_t, uint8_t, int8_t


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int pc(uint64_t v) noexcept nogil:
    return __builtin_popcountll(v)


cdef inline int ctz(uint64_t v) noexcept nogil:
    return __builtin_ctzll(v)


def _as_u64(a):
    return np.ascontiguousarray(np.asarray(a, dtype=np.uint64))


def count_negative(gx, gz, gph, uint64_t start_x=0, uint64_t start_z=0, int start_ph=0):
    """Return ``(negatives, non_hermitian)`` over the 2**len(gx) products."""
    cdef const uint64_t[::1] vx = _as_u64(gx)
    cdef const uint64_t[::1] vz = _as_u64(gz)
    cdef int64_t[::1] vph = np.ascontiguousarray(np.asarray(gph, dtype=np.int64))
    cdef int k = vx.shape[0]
    if k > 63:
        raise OverflowError("at most 63 generators per kernel call")
    cdef int64_t gyy[64]
    cdef int j
    for j in range(k):
        gyy[j] = pc(vx[j] & vz[j]) + vph[j]
    cdef uint64_t x = start_x, z = start_z
    cdef int64_t ph = start_ph & 3
    cdef int64_t neg = (ph == 2), odd = (ph & 1)
    cdef uint64_t i, total = (<uint64_t>1) << k
    with nogil:
        for i in range(1, total):
            j = ctz(i)
            ph += pc(x & z) + gyy[j] + 2 * pc(z & vx[j])
            x ^= vx[j]
            z ^= vz[j]
            ph = (ph - pc(x & z)) & 3
            neg += (ph == 2)
            odd += (ph & 1)
    return int(neg), int(odd)


def enumerate_arrays(gx, gz, gph, uint64_t start_x=0, uint64_t start_z=0, int start_ph=0):
    """Products in Gray-code order as ``(subset, x, z, phase)`` arrays."""
    cdef const uint64_t[::1] vx = _as_u64(gx)
    cdef const uint64_t[::1] vz = _as_u64(gz)
    cdef int64_t[::1] vph = np.ascontiguousarray(np.asarray(gph, dtype=np.int64))
    cdef int k = vx.shape[0]
    if k > 40:
        raise OverflowError("refusing to materialise more than 2**40 elements")
    cdef uint64_t total = (<uint64_t>1) << k
    out_s = np.empty(total, dtype=np.uint64)
    out_x = np.empty(total, dtype=np.uint64)
    out_z = np.empty(total, dtype=np.uint64)
    out_p = np.empty(total, dtype=np.uint8)
    cdef uint64_t[::1] os_ = out_s
    cdef uint64_t[::1] ox = out_x
    cdef uint64_t[::1] oz = out_z
    cdef uint8_t[::1] op = out_p
    cdef uint64_t x = start_x, z = start_z, s = 0, i
    cdef int64_t ph = start_ph & 3
    cdef int j
    with nogil:
        os_[0] = 0
        ox[0] = x
        oz[0] = z
        op[0] = <uint8_t>ph
        for i in range(1, total):
            j = ctz(i)
            ph += pc(x & z) + pc(vx[j] & vz[j]) + vph[j] + 2 * pc(z & vx[j])
            x ^= vx[j]
            z ^= vz[j]
            ph = (ph - pc(x & z)) & 3
            s ^= (<uint64_t>1) << j
            os_[i] = s
            ox[i] = x
            oz[i] = z
            op[i] = <uint8_t>ph
    return out_s, out_x, out_z, out_p


def term_parities(x, z, uint64_t vx, uint64_t vy, uint64_t vz):
    """Parity of -1 assignments hit by each element (X, Y, Z letters)."""
    cdef const uint64_t[::1] ax = _as_u64(x)
    cdef const uint64_t[::1] az = _as_u64(z)
    cdef Py_ssize_t n = ax.shape[0], e
    out = np.empty(n, dtype=np.uint8)
    cdef uint8_t[::1] o = out
    cdef uint64_t a, b
    with nogil:
        for e in range(n):
            a = ax[e]
            b = az[e]
            o[e] = pc(((a & ~b) & vx) | ((a & b) & vy) | ((b & ~a) & vz)) & 1
    return out


def bell_sweep(gx, gz, gph, uint64_t vx, uint64_t vy, uint64_t vz):
    """Sum over the group of sign * product of assigned letter values."""
    cdef const uint64_t[::1] gxv = _as_u64(gx)
    cdef const uint64_t[::1] gzv = _as_u64(gz)
    cdef int64_t[::1] vph = np.ascontiguousarray(np.asarray(gph, dtype=np.int64))
    cdef int k = gxv.shape[0]
    if k > 63:
        raise OverflowError("at most 63 generators per kernel call")
    cdef uint64_t x = 0, z = 0, i, total = (<uint64_t>1) << k
    cdef int64_t ph = 0, acc = 1, odd = 0
    cdef int j, par
    with nogil:
        for i in range(1, total):
            j = ctz(i)
            ph += pc(x & z) + pc(gxv[j] & gzv[j]) + vph[j] + 2 * pc(z & gxv[j])
            x ^= gxv[j]
            z ^= gzv[j]
            ph = (ph - pc(x & z)) & 3
            odd += ph & 1
            par = (pc(((x & ~z) & vx) | ((x & z) & vy) | ((z & ~x) & vz)) + (ph >> 1)) & 1
            acc += 1 - 2 * par
    if odd:
        raise ArithmeticError("non-Hermitian element in group")
    return int(acc)


def lhv_exhaustive(terms, ptr, idx):
    """Max of sum(terms) over all sign flips of the free variables.

    ``terms`` are the per-element values under the starting assignment;
    variable ``v`` multiplies elements ``idx[ptr[v]:ptr[v+1]]``.
    Returns ``(best_value, best_gray_code)``.
    """
    cdef int8_t[::1] t = np.array(terms, dtype=np.int8)
    cdef const int64_t[::1] p = np.ascontiguousarray(np.asarray(ptr, dtype=np.int64))
    cdef const int64_t[::1] ix = np.ascontiguousarray(np.asarray(idx, dtype=np.int64))
    cdef int nfree = p.shape[0] - 1
    if nfree > 62:
        raise OverflowError("too many free variables")
    cdef int64_t val = 0, best, s, q
    cdef Py_ssize_t e
    for e in range(t.shape[0]):
        val += t[e]
    best = val
    cdef uint64_t i, total = (<uint64_t>1) << nfree, best_i = 0
    cdef int v
    with nogil:
        for i in range(1, total):
            v = ctz(i)
            s = 0
            for q in range(p[v], p[v + 1]):
                s += t[ix[q]]
                t[ix[q]] = -t[ix[q]]
            val -= 2 * s
            if val > best:
                best = val
                best_i = i
    return int(best), int(best_i ^ (best_i >> 1))
