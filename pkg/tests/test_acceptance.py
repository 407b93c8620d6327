"""Acceptance checks, one per criterion.

Each test records a single ``PASS``/``FAIL`` line (printed in the pytest
terminal summary, or directly when run as a script) and then asserts the
criterion at its stated tolerance.  Nothing here is relaxed to make a
criterion pass on a given machine.
"""

from __future__ import annotations

import itertools
import os
import time
from fractions import Fraction

import numpy as np

from hyperstab import bell, closed_forms, kernels, photonic, reporting
from hyperstab.pauli import PauliString, apply_to_vector, commutes, multiply, to_dense
from hyperstab.stabilizer import (
    TWELVE_QUBIT_STATE,
    GhzBlock,
    HyperState,
    count_negative,
    count_negative_closed,
    element_for_subset,
    generators,
    group_arrays,
    state_vector,
)

RESULTS: list[str] = []


def record(name: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
    RESULTS.append(line)
    print(line)


def test_table1_prime_rows():
    t0 = time.perf_counter()
    doc = reporting.table1_document()
    elapsed = time.perf_counter() - t0
    rows = {r["state"]: r for r in doc["rows"]}
    p1, p2 = rows["psi_prime"], rows["psi_double_prime"]
    got = (p1["computed_all_plus_bound"], p2["computed_all_plus_bound"], p1["computed_D"], p2["computed_D"])
    ok = got == (1024, 1984, "4.00", "2.06") and elapsed < 1.0
    record("table1 psi' and psi'' rows", ok,
           f"bounds {got[0]}, {got[1]}; D {got[2]}, {got[3]}; {elapsed:.3f} s (< 1 s)")
    assert ok


def test_table1_psi_row_consistency():
    enumerated = count_negative(TWELVE_QUBIT_STATE)
    closed = count_negative_closed(TWELVE_QUBIT_STATE)
    expansion = 3 * 6 * 10**2 + 6**3
    row = reporting.table1_row(*reporting.TABLE1_ROWS[0], heuristic=False)
    flagged = not row["bound_matches_printed"] and row["printed_negatives"] == 1854
    ok = enumerated == closed == expansion == 2016 and flagged
    record("table1 psi row", ok,
           f"enumerated {enumerated} = closed {closed} = expansion {expansion}; "
           f"printed 1854/388 flagged as mismatch: {flagged}")
    assert ok


def test_closed_form_equivalence():
    t0 = time.perf_counter()
    bad = [
        m for m in range(2, 25)
        if not closed_forms.c_binomial(m) == closed_forms.c_cases(m) == count_negative(HyperState.aligned(m))
    ]
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30.0
    record("c_binomial == c_cases == enumeration, 2 <= m <= 24", ok,
           f"mismatches {bad or 'none'}; {elapsed:.2f} s (< 30 s)")
    assert ok


def test_example_stabilizer():
    label = element_for_subset(HyperState.aligned(4), 0b11).pauli.label()
    ok = label == "-YYXX"
    record("{X-string, first ZZ} on 4-qubit block", ok, f"got {label}")
    assert ok


def test_eigenstate_property():
    v = state_vector(TWELVE_QUBIT_STATE)
    _, x, z, ph = group_arrays(TWELVE_QUBIT_STATE)
    fixed = 0
    for xe, ze, pe in zip(x.tolist(), z.tolist(), ph.tolist()):
        w = apply_to_vector(PauliString(TWELVE_QUBIT_STATE.n, xe, ze, pe), v)
        fixed += bool(np.array_equal(w, v))
    ok = fixed == 4096 == x.size
    record("eigenstate property, all group elements", ok, f"{fixed}/{x.size} elements fix the state exactly")
    assert ok


def test_lhv_oracles():
    t0 = time.perf_counter()
    bell2, ghz3 = HyperState.aligned(2), HyperState.aligned(3)
    e2, _ = bell.lhvt_max_exhaustive(bell2)
    e3, _ = bell.lhvt_max_exhaustive(ghz3)
    elapsed = time.perf_counter() - t0
    b2, b3 = bell.paper_lhvt_bound(bell2), bell.paper_lhvt_bound(ghz3)
    heur = [
        (bell.lhvt_max_heuristic(bell2, seed=s, restarts=4)[0], bell.lhvt_max_heuristic(ghz3, seed=s, restarts=4)[0])
        for s in range(10)
    ]
    ok = (e2, e3) == (4, 6) and e2 > b2 and e3 > b3 and elapsed < 1.0 and all(h == (4, 6) for h in heur)
    record("LHV oracles", ok,
           f"exhaustive {e2}, {e3} vs all-plus {b2}, {b3}; {elapsed:.3f} s; "
           f"heuristic (4 restarts, seeds 0-9) recovers both: {all(h == (4, 6) for h in heur)}")
    assert ok


def test_protocol_certification():
    t0 = time.perf_counter()
    res = photonic.run_protocol()
    fid = photonic.fidelity(res.final, state_vector(TWELVE_QUBIT_STATE))
    xpm = {name: photonic.double_xpm_equivalence(d, q, dom) for name, d, q, dom in photonic.double_xpm_configs()}
    elapsed = time.perf_counter() - t0
    parts = {
        "fidelity == 1": fid == 1,
        "p_success == 1/4": res.p_success == Fraction(1, 4),
        "double-XPM path and frequency filters": all(xpm.values()) and len(xpm) == 2,
        "runtime < 1 s": elapsed < 1.0,
    }
    ok = all(parts.values())
    failed = [k for k, v in parts.items() if not v]
    record("protocol certification", ok,
           f"fidelity {fid}; p_success {res.p_success}; double-XPM {xpm}; {elapsed:.3f} s"
           + (f"; failing: {', '.join(failed)}" if failed else ""))
    assert ok


def test_ordering_claim():
    reps = {q: closed_forms.ordering_report(q) for q in (6, 12, 18, 24)}
    ordered = all(reps[q].ordered for q in (12, 18, 24))
    q12 = (reps[12].c1, reps[12].c2, reps[12].c3)
    exception = reps[6].c1 == 28 and reps[6].c2 == 30 and reps[6].c1 < reps[6].c2
    ok = ordered and q12 == (2016, 1536, 1056) and exception
    record("ordering C1 > C2 > C3", ok,
           f"q=12,18,24 ordered: {ordered}; q=12 {q12}; q=6 exception C1=28 < C2=30: {exception}")
    assert ok


PERF_STATE = HyperState.aligned(8, 8, 8)


def _timed_count(partitions, threads, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        c = count_negative(PERF_STATE, partitions=partitions, threads=threads)
        best = min(best, time.perf_counter() - t0)
    return c, best


def test_performance():
    c1, t1 = _timed_count(1, 1)
    c4, t4 = _timed_count(4, 4)
    rate = (1 << PERF_STATE.n) / t1
    speedup = t1 / t4
    ok = c1 == c4 == count_negative_closed(PERF_STATE) and rate >= 1e7 and speedup >= 3.0
    record("enumeration performance, n=24", ok,
           f"{rate:.3g} elements/s single-threaded (>= 1e7); 4-way speedup {speedup:.2f}x (>= 3x); "
           f"backend {kernels.BACKEND}; cores available {os.cpu_count()}")
    assert ok


def test_property_suites():
    rng = np.random.default_rng(0)

    def rp(n):
        return PauliString(n, int(rng.integers(0, 1 << n)), int(rng.integers(0, 1 << n)), int(rng.integers(0, 4)))

    dense_ok = assoc_ok = square_ok = comm_ok = True
    for _ in range(100):
        n = int(rng.integers(1, 7))
        p, q = rp(n), rp(n)
        dense_ok &= bool(np.array_equal(to_dense(multiply(p, q)), to_dense(p) @ to_dense(q)))
        a, b, c = rp(n), rp(n), rp(n)
        assoc_ok &= multiply(multiply(a, b), c) == multiply(a, multiply(b, c))
        h = PauliString(n, p.x, p.z, 0)
        square_ok &= multiply(h, h) == PauliString.identity(n)
    for _ in range(50):
        blocks = []
        for _ in range(int(rng.integers(1, 4))):
            m = int(rng.integers(2, 7))
            blocks.append(GhzBlock(m, 2 * int(rng.integers(0, 1 << (m - 1)))))
        gens = [g.pauli for g in generators(HyperState(tuple(blocks)))]
        comm_ok &= all(commutes(p, q) for p, q in itertools.combinations(gens, 2))
    ok = dense_ok and assoc_ok and square_ok and comm_ok
    record("property suites", ok,
           f"dense oracle (100 pairs) {dense_ok}; associativity (100 triples) {assoc_ok}; "
           f"p*p = I {square_ok}; generator commutation (50 states) {comm_ok}")
    assert ok


if __name__ == "__main__":
    failures = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failures += 1
    raise SystemExit(1 if failures else 0)
