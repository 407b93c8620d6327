"""NumPy implementation of the enumeration kernels.

Used when the compiled extension is unavailable or when
``HYPERSTAB_PURE_PYTHON`` is set.  Signatures match ``_kernels.pyx``.
Generator masks must fit in 64 bits.
"""

import numpy as np

# Low generators expanded as one vector; the rest are walked in a Gray loop.
_BLOCK_BITS = 16


def _pc(a):
    return np.bitwise_count(a).astype(np.int64)


def _mul_arrays(ax, az, aph, bx, bz, bph):
    x = ax ^ bx
    z = az ^ bz
    ph = aph + bph + _pc(ax & az) + _pc(bx & bz) + 2 * _pc(az & bx) - _pc(x & z)
    return x, z, ph & 3


def _binary_order(gx, gz, gph, start_x=0, start_z=0, start_ph=0):
    """All 2**k products, entry ``s`` holding the product over the bits of ``s``."""
    x = np.array([start_x], dtype=np.uint64)
    z = np.array([start_z], dtype=np.uint64)
    ph = np.array([start_ph & 3], dtype=np.int64)
    for j in range(len(gx)):
        nx, nz, nph = _mul_arrays(
            x, z, ph, np.uint64(gx[j]), np.uint64(gz[j]), np.int64(gph[j])
        )
        x = np.concatenate([x, nx])
        z = np.concatenate([z, nz])
        ph = np.concatenate([ph, nph])
    return x, z, ph


def _mul_scalar(ax, az, aph, bx, bz, bph):
    x = ax ^ bx
    z = az ^ bz
    ph = (
        aph + bph + (ax & az).bit_count() + (bx & bz).bit_count()
        + 2 * (az & bx).bit_count() - (x & z).bit_count()
    )
    return x, z, ph & 3


def count_negative(gx, gz, gph, start_x=0, start_z=0, start_ph=0):
    """Return ``(negatives, non_hermitian)`` over the 2**len(gx) products."""
    gx = [int(v) for v in gx]
    gz = [int(v) for v in gz]
    gph = [int(v) for v in gph]
    k = len(gx)
    low = min(k, _BLOCK_BITS)
    lx, lz, lph = _binary_order(gx[:low], gz[:low], gph[:low])
    hx, hz, hph = gx[low:], gz[low:], gph[low:]
    px, pz, pph = int(start_x), int(start_z), int(start_ph) & 3
    neg = odd = 0
    for i in range(1 << len(hx)):
        if i:
            j = (i & -i).bit_length() - 1
            px, pz, pph = _mul_scalar(px, pz, pph, hx[j], hz[j], hph[j])
        _, _, ph = _mul_arrays(
            np.uint64(px), np.uint64(pz), np.int64(pph), lx, lz, lph
        )
        neg += int(np.count_nonzero(ph == 2))
        odd += int(np.count_nonzero(ph & 1))
    return neg, odd


def enumerate_arrays(gx, gz, gph, start_x=0, start_z=0, start_ph=0):
    """Products in Gray-code order as ``(subset, x, z, phase)`` arrays."""
    x, z, ph = _binary_order(
        [int(v) for v in gx], [int(v) for v in gz], [int(v) for v in gph],
        int(start_x), int(start_z), int(start_ph),
    )
    i = np.arange(x.shape[0], dtype=np.uint64)
    gray = i ^ (i >> np.uint64(1))
    return gray, x[gray], z[gray], ph[gray].astype(np.uint8)


def term_parities(x, z, vx, vy, vz):
    """Parity of -1 assignments hit by each element (X, Y, Z letters)."""
    vx, vy, vz = np.uint64(vx), np.uint64(vy), np.uint64(vz)
    hit = ((x & ~z) & vx) | ((x & z) & vy) | ((z & ~x) & vz)
    return np.bitwise_count(hit) & 1


def bell_sweep(gx, gz, gph, vx, vy, vz):
    _, x, z, ph = enumerate_arrays(gx, gz, gph)
    if np.any(ph & 1):
        raise ArithmeticError("non-Hermitian element in group")
    sign = 1 - (ph.astype(np.int64) & 2)
    par = term_parities(x, z, vx, vy, vz).astype(np.int64)
    return int(np.sum(sign * (1 - 2 * par)))


def lhv_exhaustive(terms, ptr, idx):
    """Max of sum(terms) over all sign flips of the free variables.

    ``terms`` are the per-element values under the starting assignment;
    variable ``v`` multiplies elements ``idx[ptr[v]:ptr[v+1]]``.
    Returns ``(best_value, best_gray_code)``.
    """
    t = np.array(terms, dtype=np.int64)
    ptr = np.asarray(ptr, dtype=np.int64)
    idx = np.asarray(idx, dtype=np.int64)
    nfree = len(ptr) - 1
    val = int(t.sum())
    best, best_code = val, 0
    for i in range(1, 1 << nfree):
        v = (i & -i).bit_length() - 1
        sel = idx[ptr[v]:ptr[v + 1]]
        val -= 2 * int(t[sel].sum())
        t[sel] = -t[sel]
        if val > best:
            best, best_code = val, i ^ (i >> 1)
    return best, best_code
