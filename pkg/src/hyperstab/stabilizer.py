"""Stabilizer groups of products of GHZ blocks.

Each block of ``m`` qubits is ``|b> + |~b>`` where ``b`` is its parity mask.
Generators per block: the all-X string and the ``m - 1`` nearest-neighbour
ZZ pairs, a ZZ pair carrying sign -1 when the mask bits it touches differ.
Qubit encoding: H, omega_1 and the subscript-1 path are ``0``.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import kernels
from .errors import CapacityError, DimensionError, InvariantViolation, ParseError
from .pauli import PauliString, hermitian_sign, multiply

DEFAULT_GUARD_BITS = 34
STATE_VECTOR_MAX_QUBITS = 24
KERNEL_MAX_QUBITS = 64


@dataclass(frozen=True)
class GhzBlock:
    m: int
    parity_mask: int = 0
    dof_label: str = ""

    def __post_init__(self):
        if self.m < 2:
            raise ParseError(f"GHZ block needs at least 2 qubits, got {self.m}")
        if self.parity_mask < 0 or self.parity_mask >> self.m:
            raise ParseError(f"parity mask {self.parity_mask:#b} exceeds {self.m} qubits")
        if self.parity_mask & 1:
            raise ParseError("parity mask bit 0 must be 0")

    @classmethod
    def from_bits(cls, bits: str, dof_label: str = "") -> GhzBlock:
        """``"0101"`` means qubits 1 and 3 carry the flipped label."""
        if not bits or set(bits) - {"0", "1"}:
            raise ParseError(f"parity mask {bits!r} is not a bitstring")
        mask = sum(1 << j for j, ch in enumerate(bits) if ch == "1")
        return cls(len(bits), mask, dof_label)

    @property
    def bits(self) -> str:
        return "".join(str((self.parity_mask >> j) & 1) for j in range(self.m))


@dataclass(frozen=True)
class HyperState:
    blocks: tuple[GhzBlock, ...]
    n: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if not self.blocks:
            raise ParseError("a state needs at least one block")
        object.__setattr__(self, "n", sum(b.m for b in self.blocks))

    @classmethod
    def aligned(cls, *sizes: int) -> HyperState:
        return cls(tuple(GhzBlock(m) for m in sizes))

    @property
    def offsets(self) -> list[int]:
        out, pos = [], 0
        for b in self.blocks:
            out.append(pos)
            pos += b.m
        return out

    def spec_string(self) -> str:
        return ",".join(f"{b.m}:{b.bits}" for b in self.blocks)

    def to_json(self) -> dict:
        return {
            "blocks": [
                {"m": b.m, "parity_mask": b.bits, "dof_label": b.dof_label}
                for b in self.blocks
            ]
        }

    @classmethod
    def from_json(cls, doc: dict | list) -> HyperState:
        items = doc["blocks"] if isinstance(doc, dict) else doc
        blocks = []
        for pos, item in enumerate(items):
            try:
                block = GhzBlock.from_bits(str(item["parity_mask"]), item.get("dof_label", ""))
            except KeyError as exc:
                raise ParseError(f"block missing field {exc}", pos) from None
            except ParseError as exc:
                raise ParseError(str(exc), pos) from None
            if "m" in item and int(item["m"]) != block.m:
                raise ParseError(f"m={item['m']} but mask has {block.m} bits", pos)
            blocks.append(block)
        return cls(tuple(blocks))


@dataclass(frozen=True)
class StabilizerElement:
    pauli: PauliString
    subset: int
    sign: int

    def __str__(self) -> str:
        return self.pauli.label()


def generators(state: HyperState) -> list[StabilizerElement]:
    n = state.n
    out = []
    for block, off in zip(state.blocks, state.offsets):
        span = ((1 << block.m) - 1) << off
        out.append(PauliString(n, x=span))
        for j in range(block.m - 1):
            flip = ((block.parity_mask >> j) ^ (block.parity_mask >> (j + 1))) & 1
            out.append(PauliString(n, z=0b11 << (off + j), phase=2 * flip))
    return [
        StabilizerElement(p, 1 << k, hermitian_sign(p)) for k, p in enumerate(out)
    ]


def element_for_subset(state: HyperState, subset: int) -> StabilizerElement:
    if subset < 0 or subset >> state.n:
        raise DimensionError(f"subset {subset:#x} selects beyond {state.n} generators")
    acc = PauliString.identity(state.n)
    for k, g in enumerate(generators(state)):
        if (subset >> k) & 1:
            acc = multiply(acc, g.pauli)
    return StabilizerElement(acc, subset, hermitian_sign(acc))


def check_guard(state: HyperState, guard_bits: int) -> None:
    if state.n > guard_bits:
        raise CapacityError(
            f"group of 2**{state.n} elements exceeds the 2**{guard_bits} enumeration guard"
        )


def enumerate_group(
    state: HyperState, guard_bits: int = DEFAULT_GUARD_BITS
) -> Iterator[StabilizerElement]:
    """Yield all 2**n elements in Gray-code order over generator subsets."""
    check_guard(state, guard_bits)
    gens = generators(state)
    acc = PauliString.identity(state.n)
    subset = 0
    yield StabilizerElement(acc, 0, 1)
    for i in range(1, 1 << state.n):
        k = (i & -i).bit_length() - 1
        acc = multiply(acc, gens[k].pauli)
        subset ^= 1 << k
        yield StabilizerElement(acc, subset, hermitian_sign(acc))


def generator_arrays(state: HyperState) -> tuple[list[int], list[int], list[int]]:
    gens = generators(state)
    return (
        [g.pauli.x for g in gens],
        [g.pauli.z for g in gens],
        [g.pauli.phase for g in gens],
    )


def group_arrays(state: HyperState, guard_bits: int = 26):
    """``(subset, x, z, phase)`` NumPy arrays of the whole group, Gray order."""
    check_guard(state, guard_bits)
    if state.n > KERNEL_MAX_QUBITS:
        raise CapacityError("array form needs n <= 64")
    return kernels.impl.enumerate_arrays(*generator_arrays(state))


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("HYPERSTAB_THREADS", "1")))
    except ValueError:
        return 1


def count_negative(
    state: HyperState,
    guard_bits: int = DEFAULT_GUARD_BITS,
    partitions: int = 1,
    threads: int | None = None,
) -> int:
    """Number of group elements with sign -1, by full enumeration.

    ``partitions`` (a power of two) splits the subset space on its high
    generator bits; each part is counted from its own starting product.
    """
    check_guard(state, guard_bits)
    if state.n > KERNEL_MAX_QUBITS:
        raise CapacityError("kernel enumeration needs n <= 64")
    if partitions < 1 or partitions & (partitions - 1):
        raise ValueError("partitions must be a power of two")
    gx, gz, gph = generator_arrays(state)
    high = min(partitions.bit_length() - 1, state.n)
    low = state.n - high
    tasks = []
    for prefix in range(1 << high):
        start = PauliString.identity(state.n)
        for j in range(high):
            if (prefix >> j) & 1:
                start = multiply(start, PauliString(state.n, gx[low + j], gz[low + j], gph[low + j]))
        tasks.append((start.x, start.z, start.phase))

    def run(start):
        return kernels.impl.count_negative(gx[:low], gz[:low], gph[:low], *start)

    threads = threads or default_threads()
    if threads > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, tasks))
    else:
        results = [run(t) for t in tasks]
    if any(odd for _, odd in results):
        raise InvariantViolation("enumeration produced a non-Hermitian element")
    return sum(neg for neg, _ in results)


def _block_negatives(block: GhzBlock) -> int:
    from .closed_forms import c_binomial

    if block.parity_mask == 0:
        return c_binomial(block.m)
    return count_negative(HyperState((block,)))


def count_negative_closed(state: HyperState) -> int:
    """Composite count from per-block counts.

    An element is negative iff an odd number of its block factors are, so
    ``2**n - 2C = prod_k (2**m_k - 2 C_k)``.
    """
    prod = 1
    for block in state.blocks:
        prod *= (1 << block.m) - 2 * _block_negatives(block)
    return ((1 << state.n) - prod) // 2


def block_vector(block: GhzBlock) -> np.ndarray:
    """Unnormalised ``|b> + |~b>`` of one block; qubit 0 is the top index bit."""
    m = block.m
    index = sum(1 << (m - 1 - j) for j in range(m) if (block.parity_mask >> j) & 1)
    vec = np.zeros(1 << m, dtype=np.int64)
    vec[index] = 1
    vec[index ^ ((1 << m) - 1)] = 1
    return vec


def state_vector(state: HyperState, max_qubits: int = STATE_VECTOR_MAX_QUBITS) -> np.ndarray:
    """Unnormalised integer vector: the tensor product of the block GHZ states.

    Slot 0 is the top index bit, so the vector has ``2**len(blocks)``
    nonzero entries, all equal to 1.
    """
    if state.n > max_qubits:
        raise CapacityError(f"state vector of {state.n} qubits exceeds cap of {max_qubits}")
    vec = np.ones(1, dtype=np.int64)
    for block in state.blocks:
        vec = np.kron(vec, block_vector(block))
    return vec


def parse_state_spec(text: str) -> HyperState:
    """Parse ``"4:0000,4:0101,4:0000"`` (a bare mask such as ``"0101"`` also works)."""
    blocks = []
    pos = 0
    for item in text.split(","):
        raw = item.strip()
        if not raw:
            raise ParseError("empty block", pos)
        if ":" in raw:
            size_text, bits = (s.strip() for s in raw.split(":", 1))
            if not size_text.isdigit():
                raise ParseError(f"block size {size_text!r} is not an integer", pos)
            m = int(size_text)
            if len(bits) != m:
                raise ParseError(f"mask {bits!r} has {len(bits)} bits but m={m}", pos)
        else:
            bits = raw
        try:
            blocks.append(GhzBlock.from_bits(bits))
        except ParseError as exc:
            raise ParseError(str(exc), pos) from None
        pos += len(item) + 1
    return HyperState(tuple(blocks))


def load_state(text_or_path: str) -> HyperState:
    """Accept a spec string, a JSON document string or a path to a JSON file."""
    if os.path.exists(text_or_path):
        with open(text_or_path, encoding="utf-8") as fh:
            return HyperState.from_json(json.load(fh))
    stripped = text_or_path.lstrip()
    if stripped.startswith(("{", "[")):
        try:
            return HyperState.from_json(json.loads(stripped))
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    return parse_state_spec(text_or_path)


TWELVE_QUBIT_STATE = HyperState(
    (
        GhzBlock(4, 0b0000, "polarization"),
        GhzBlock.from_bits("0101", "frequency"),
        GhzBlock(4, 0b0000, "spatial"),
    )
)

