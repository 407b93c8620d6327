"""Exact n-qubit Pauli strings with phase tracking.

A string is stored as two bit masks plus a power of ``i``::

    P = i**phase * prod_slots letter(x_j, z_j)

with letter(0,0)=I, (1,0)=X, (0,1)=Z and (1,1)=Y, where Y = iXZ (so
ZX = iY and XZ = -iY).  Slot ``j`` lives in bit ``j`` of each mask and is
character ``j`` of the text form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import CapacityError, DimensionError, NonHermitianError, ParseError

DENSE_MAX_QUBITS = 14

_PREFIXES = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}
_PHASE_TEXT = {0: "+", 1: "i", 2: "-", 3: "-i"}
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}

_I2 = np.array([[1, 0], [0, 1]], dtype=complex)
_X2 = np.array([[0, 1], [1, 0]], dtype=complex)
_Y2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z2 = np.array([[1, 0], [0, -1]], dtype=complex)
_LETTER_MATRIX = {(0, 0): _I2, (1, 0): _X2, (1, 1): _Y2, (0, 1): _Z2}


def _popcount(v: int) -> int:
    return v.bit_count()


@dataclass(frozen=True)
class PauliString:
    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise DimensionError(f"negative qubit count {self.n}")
        full = (1 << self.n) - 1
        if self.x & ~full or self.z & ~full or self.x < 0 or self.z < 0:
            raise DimensionError(f"masks exceed {self.n} slots")
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n)

    @classmethod
    def from_label(cls, text: str) -> PauliString:
        """Parse ``"-YYXX"``, ``"iZ"``, ``"+XI"`` and the like."""
        text = text.strip()
        body_start = len(text) - len(text.lstrip("+-i"))
        prefix, body = text[:body_start], text[body_start:]
        if prefix not in _PREFIXES:
            raise ParseError(f"bad phase prefix {prefix!r}", 0)
        x = z = 0
        for j, ch in enumerate(body):
            try:
                xb, zb = _LETTER_BITS[ch]
            except KeyError:
                raise ParseError(f"unknown Pauli letter {ch!r}", body_start + j) from None
            x |= xb << j
            z |= zb << j
        return cls(len(body), x, z, _PREFIXES[prefix])

    @property
    def letters(self) -> str:
        return "".join(
            "IXZY"[((self.x >> j) & 1) | (((self.z >> j) & 1) << 1)] for j in range(self.n)
        )

    def label(self, show_plus: bool = False) -> str:
        prefix = _PHASE_TEXT[self.phase]
        if prefix == "+" and not show_plus:
            prefix = ""
        return prefix + self.letters

    def __str__(self) -> str:
        return self.label()

    def __mul__(self, other: PauliString) -> PauliString:
        return multiply(self, other)

    def __matmul__(self, other: PauliString) -> PauliString:
        return tensor_concat(self, other)

    @property
    def support(self) -> int:
        return self.x | self.z

    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Operator product ``p @ q`` with exact phase accumulation."""
    if p.n != q.n:
        raise DimensionError(f"cannot multiply {p.n}-qubit and {q.n}-qubit strings")
    x = p.x ^ q.x
    z = p.z ^ q.z
    # Expand each Y as i*X*Z, move q's X's past p's Z's, then refold the Y's.
    phase = (
        p.phase
        + q.phase
        + _popcount(p.x & p.z)
        + _popcount(q.x & q.z)
        + 2 * _popcount(p.z & q.x)
        - _popcount(x & z)
    )
    return PauliString(p.n, x, z, phase)


def tensor_concat(p: PauliString, q: PauliString) -> PauliString:
    """``p (x) q``: q's slots are appended after p's."""
    return PauliString(p.n + q.n, p.x | (q.x << p.n), p.z | (q.z << p.n), p.phase + q.phase)


def symplectic_product(p: PauliString, q: PauliString) -> int:
    """0 if p and q commute, 1 if they anticommute."""
    if p.n != q.n:
        raise DimensionError(f"{p.n} != {q.n}")
    return (_popcount(p.x & q.z) + _popcount(p.z & q.x)) & 1


def commutes(p: PauliString, q: PauliString) -> bool:
    return symplectic_product(p, q) == 0


def hermitian_sign(p: PauliString) -> int:
    if p.phase == 0:
        return 1
    if p.phase == 2:
        return -1
    raise NonHermitianError(f"{p.label()} carries phase i**{p.phase}")


def weight(p: PauliString) -> int:
    return _popcount(p.x | p.z)


def to_dense(p: PauliString, max_qubits: int = DENSE_MAX_QUBITS) -> np.ndarray:
    """Kronecker-product matrix with slot 0 as the leftmost factor.

    Entries are exact Gaussian integers held in complex128.
    """
    if p.n > max_qubits:
        raise CapacityError(f"dense form of {p.n} qubits exceeds cap of {max_qubits}")
    factors = [_LETTER_MATRIX[((p.x >> j) & 1, (p.z >> j) & 1)] for j in range(p.n)]
    mat = reduce(np.kron, factors, np.ones((1, 1), dtype=complex))
    return (1j ** p.phase) * mat


def apply_to_vector(p: PauliString, vec: np.ndarray) -> np.ndarray:
    """Act with ``p`` on a length ``2**n`` vector without forming the matrix.

    Basis index bit ``n-1-j`` holds slot ``j`` (same layout as ``to_dense``).
    Integer input stays exact: the result dtype is complex128 but every entry
    is a Gaussian integer.
    """
    n = p.n
    if vec.shape != (1 << n,):
        raise DimensionError(f"vector length {vec.shape} does not match {n} qubits")
    xi = _slot_mask_to_index(p.x, n)
    zi = _slot_mask_to_index(p.z, n)
    idx = np.arange(1 << n, dtype=np.int64)
    zsign = 1 - 2 * (np.bitwise_count(idx & zi) & 1).astype(np.int64)
    scalar = 1j ** ((p.phase + _popcount(p.x & p.z)) % 4)
    out = np.zeros(1 << n, dtype=complex)
    out[idx ^ xi] = scalar * zsign * vec
    return out


def _slot_mask_to_index(mask: int, n: int) -> int:
    out = 0
    for j in range(n):
        if (mask >> j) & 1:
            out |= 1 << (n - 1 - j)
    return out
