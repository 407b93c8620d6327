"""Bell operator B = sum of all stabilizer elements.

Quantum value, the all-plus local assignment value ``2**n - 2C`` and the
true maximum over deterministic local assignments (exhaustive search for
small n, seeded steepest-ascent local search beyond).  Variables are
indexed ``3 * slot + letter`` with letters ordered X, Y, Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .pauli import PauliString, apply_to_vector
from .errors import CapacityError, DimensionError, InvariantViolation
from .stabilizer import (
    DEFAULT_GUARD_BITS,
    HyperState,
    check_guard,
    count_negative,
    count_negative_closed,
    generator_arrays,
    group_arrays,
    state_vector,
)

LETTERS = "XYZ"
EXHAUSTIVE_MAX_FREE = 24
HEURISTIC_MAX_QUBITS = 16
DEFAULT_RESTARTS = 64


@dataclass(frozen=True)
class Assignment:
    """Predetermined +-1 value for every (slot, observable); identity is +1."""

    values: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        vals = tuple(tuple(int(v) for v in row) for row in self.values)
        for row in vals:
            if len(row) != 3 or any(v not in (1, -1) for v in row):
                raise ValueError(f"assignment row {row} must be three +-1 values")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)

    @classmethod
    def all_plus(cls, n: int) -> Assignment:
        return cls(((1, 1, 1),) * n)

    @classmethod
    def from_flips(cls, n: int, flips: int) -> Assignment:
        """Bit ``3*slot + letter`` of ``flips`` set means that value is -1."""
        return cls(
            tuple(
                tuple(-1 if (flips >> (3 * s + k)) & 1 else 1 for k in range(3))
                for s in range(n)
            )
        )

    def flips(self) -> int:
        out = 0
        for s, row in enumerate(self.values):
            for k, v in enumerate(row):
                if v < 0:
                    out |= 1 << (3 * s + k)
        return out

    def masks(self) -> tuple[int, int, int]:
        """Slot masks of the -1 values for X, Y and Z."""
        vx = vy = vz = 0
        for s, (a, b, c) in enumerate(self.values):
            vx |= (a < 0) << s
            vy |= (b < 0) << s
            vz |= (c < 0) << s
        return vx, vy, vz


def qm_expectation(state: HyperState) -> int:
    """Every element has eigenvalue +1 on the state, so <B> is the group order."""
    return 1 << state.n


def qm_expectation_oracle(state: HyperState) -> Fraction:
    """Sum of <v|S|v> / <v|v> over the group, acting on the explicit vector."""
    v = state_vector(state, max_qubits=14)
    norm = int(v @ v)
    _, x, z, ph = group_arrays(state)
    total = 0
    for xe, ze, pe in zip(x.tolist(), z.tolist(), ph.tolist()):
        w = apply_to_vector(PauliString(state.n, xe, ze, pe), v)
        total += complex(np.vdot(v, w))
    if total.imag:
        raise InvariantViolation("Bell operator expectation has an imaginary part")
    return Fraction(int(round(total.real)), norm)


def paper_lhvt_bound(state: HyperState, negatives: int | None = None) -> int:
    """Value of B when every local observable is +1: positives minus negatives."""
    if negatives is None:
        negatives = count_negative_closed(state)
    return (1 << state.n) - 2 * negatives


def bell_value(state: HyperState, a: Assignment) -> int:
    if a.n != state.n:
        raise DimensionError(f"assignment for {a.n} slots, state has {state.n}")
    check_guard(state, DEFAULT_GUARD_BITS)
    return kernels.impl.bell_sweep(*generator_arrays(state), *a.masks())


def _element_terms(state: HyperState):
    """Per-element sign and per-variable incidence lists."""
    _, x, z, ph = group_arrays(state)
    if np.any(ph & 1):
        raise InvariantViolation("non-Hermitian element in group")
    sign = (1 - (ph.astype(np.int8) & 2)).astype(np.int8)
    incidence = []
    for s in range(state.n):
        bit = np.uint64(1 << s)
        xs = (x & bit) != 0
        zs = (z & bit) != 0
        incidence.append(np.flatnonzero(xs & ~zs))
        incidence.append(np.flatnonzero(xs & zs))
        incidence.append(np.flatnonzero(zs & ~xs))
    return sign, incidence


def lhvt_max_exhaustive(
    state: HyperState, max_free: int = EXHAUSTIVE_MAX_FREE
) -> tuple[int, Assignment]:
    """Exact maximum of B over deterministic assignments, with a maximiser.

    Variables that multiply no element are pinned to +1 before the search.
    """
    sign, incidence = _element_terms(state)
    free = [v for v, idx in enumerate(incidence) if idx.size]
    if len(free) > max_free:
        raise CapacityError(
            f"{len(free)} free variables exceed the 2**{max_free} assignment guard"
        )
    ptr = np.zeros(len(free) + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([incidence[v].size for v in free])
    idx = np.concatenate([incidence[v] for v in free]) if free else np.zeros(0, np.int64)
    best, code = kernels.impl.lhv_exhaustive(sign, ptr, idx)
    flips = 0
    for k, v in enumerate(free):
        if (code >> k) & 1:
            flips |= 1 << v
    return best, Assignment.from_flips(state.n, flips)


def lhvt_max_heuristic(
    state: HyperState,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    steps: int | None = None,
) -> tuple[int, Assignment]:
    """Best value found by steepest-ascent single flips with random restarts.

    Restart 0 begins from the all-plus assignment, so the result is never
    below ``paper_lhvt_bound``.  The returned value is achieved by the
    returned assignment, hence a lower bound on the true maximum.
    """
    if state.n > HEURISTIC_MAX_QUBITS:
        raise CapacityError(f"heuristic search is capped at {HEURISTIC_MAX_QUBITS} qubits")
    sign, incidence = _element_terms(state)
    nvar = 3 * state.n
    steps = 10 * nvar if steps is None else steps
    inc = np.zeros((nvar, sign.size), dtype=np.int32)
    for v, idx in enumerate(incidence):
        inc[v, idx] = 1
    rng = np.random.default_rng(seed)
    best_val, best_flips = None, 0
    for r in range(max(1, restarts)):
        start = np.zeros(nvar, dtype=bool) if r == 0 else rng.random(nvar) < 0.5
        flips = start.copy()
        t = sign.astype(np.int32)
        for v in np.flatnonzero(flips):
            t[incidence[v]] *= -1
        val = int(t.sum())
        for _ in range(steps):
            gains = -2 * (inc @ t)
            v = int(np.argmax(gains))
            if gains[v] <= 0:
                break
            t[incidence[v]] *= -1
            flips[v] = not flips[v]
            val += int(gains[v])
        if best_val is None or val > best_val:
            best_val = val
            best_flips = sum(1 << int(v) for v in np.flatnonzero(flips))
    return best_val, Assignment.from_flips(state.n, best_flips)


def format_ratio(ratio: Fraction | None, places: int = 2) -> str:
    """Round half-up to ``places`` decimals using exact arithmetic."""
    if ratio is None:
        return "inf"
    scale = 10 ** places
    sign = "-" if ratio < 0 else ""
    scaled = abs(ratio) * scale
    q = int(scaled + Fraction(1, 2))
    return f"{sign}{q // scale}.{q % scale:0{places}d}"


def violation_ratio(qm: int, bound: int) -> Fraction | None:
    return Fraction(qm, bound) if bound else None


@dataclass(frozen=True)
class BellReport:
    n: int
    qm_value: int
    paper_bound: int
    exhaustive_max: int | None
    heuristic_max: int | None
    negatives: int
    negatives_enumerated: int | None

    @property
    def violation_ratio_paper(self) -> Fraction | None:
        return violation_ratio(self.qm_value, self.paper_bound)

    def to_dict(self) -> dict:
        ratio = self.violation_ratio_paper
        return {
            "n": self.n,
            "qm_value": self.qm_value,
            "negatives": self.negatives,
            "negatives_enumerated": self.negatives_enumerated,
            "paper_bound": self.paper_bound,
            "violation_ratio_paper": None if ratio is None else f"{ratio.numerator}/{ratio.denominator}",
            "violation_ratio_paper_2dp": format_ratio(ratio),
            "heuristic_max": self.heuristic_max,
            "exhaustive_max": self.exhaustive_max,
        }


def report(
    state: HyperState,
    exhaustive: bool = False,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    steps: int | None = None,
    heuristic: bool = True,
    max_free: int = EXHAUSTIVE_MAX_FREE,
    guard_bits: int = DEFAULT_GUARD_BITS,
) -> BellReport:
    closed = count_negative_closed(state)
    enumerated = None
    if state.n <= guard_bits:
        enumerated = count_negative(state, guard_bits)
        if enumerated != closed:
            raise InvariantViolation(f"enumerated C={enumerated} but closed form gives {closed}")
    bound = paper_lhvt_bound(state, closed)
    heur = None
    if heuristic and state.n <= HEURISTIC_MAX_QUBITS:
        heur, _ = lhvt_max_heuristic(state, seed=seed, restarts=restarts, steps=steps)
        if heur < bound:
            raise InvariantViolation("heuristic fell below the all-plus value")
    exh = None
    if exhaustive:
        exh, _ = lhvt_max_exhaustive(state, max_free=max_free)
        if exh < bound or (heur is not None and heur > exh):
            raise InvariantViolation("exhaustive maximum is not an upper bound")
    return BellReport(state.n, qm_expectation(state), bound, exh, heur, closed, enumerated)
