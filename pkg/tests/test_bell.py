from fractions import Fraction

import pytest

from hyperstab.bell import (
    Assignment,
    bell_value,
    format_ratio,
    lhvt_max_exhaustive,
    lhvt_max_heuristic,
    paper_lhvt_bound,
    qm_expectation,
    qm_expectation_oracle,
    report,
    violation_ratio,
)
from hyperstab.errors import CapacityError, DimensionError
from hyperstab.stabilizer import TWELVE_QUBIT_STATE, HyperState, enumerate_group, parse_state_spec

BELL = HyperState.aligned(2)
GHZ3 = HyperState.aligned(3)


def naive_value(state, a):
    """Sum over elements of sign * product of the assigned local values."""
    total = 0
    for el in enumerate_group(state):
        v = el.sign
        for slot, letter in enumerate(el.pauli.letters):
            if letter != "I":
                v *= a.values[slot]["XYZ".index(letter)]
        total += v
    return total


def naive_max(state):
    return max(
        naive_value(state, Assignment.from_flips(state.n, f)) for f in range(1 << (3 * state.n))
    )


def test_qm_expectation():
    assert qm_expectation(TWELVE_QUBIT_STATE) == 4096
    assert qm_expectation_oracle(GHZ3) == 8
    assert qm_expectation_oracle(parse_state_spec("3:010,2:00")) == 32


def test_paper_bounds():
    assert paper_lhvt_bound(parse_state_spec("12:000000000000")) == 1984
    assert paper_lhvt_bound(parse_state_spec("6:000000,6:000000")) == 1024
    assert paper_lhvt_bound(TWELVE_QUBIT_STATE) == 64
    assert paper_lhvt_bound(BELL) == 2
    assert paper_lhvt_bound(GHZ3) == 2


def test_bell_value_hand_example():
    a = Assignment(((1, -1, 1), (1, 1, 1)))
    assert bell_value(BELL, a) == 4 == naive_value(BELL, a)


def test_bell_value_matches_naive():
    state = parse_state_spec("3:010,2:00")
    for f in range(0, 1 << 15, 997):
        a = Assignment.from_flips(state.n, f)
        assert bell_value(state, a) == naive_value(state, a)


def test_all_plus_value_is_paper_bound():
    for spec in ("4:0000,4:0101,4:0000", "6:010101", "5:00000"):
        state = parse_state_spec(spec)
        assert bell_value(state, Assignment.all_plus(state.n)) == paper_lhvt_bound(state)


def test_exhaustive_oracle():
    best, a = lhvt_max_exhaustive(BELL)
    assert best == 4 == naive_max(BELL)
    assert bell_value(BELL, a) == 4
    best, a = lhvt_max_exhaustive(GHZ3)
    assert best == 6 == naive_max(GHZ3)
    assert bell_value(GHZ3, a) == 6


def test_exhaustive_small_masks_match_naive():
    for spec in ("3:010", "2:00,2:00"):
        state = parse_state_spec(spec)
        assert lhvt_max_exhaustive(state)[0] == naive_max(state)


def test_exhaustive_guard():
    with pytest.raises(CapacityError):
        lhvt_max_exhaustive(TWELVE_QUBIT_STATE)


@pytest.mark.parametrize("seed", range(10))
def test_heuristic_recovers_optimum(seed):
    assert lhvt_max_heuristic(BELL, seed=seed, restarts=4)[0] == 4
    assert lhvt_max_heuristic(GHZ3, seed=seed, restarts=4)[0] == 6


def test_heuristic_value_is_achieved_and_at_least_bound():
    state = TWELVE_QUBIT_STATE
    best, a = lhvt_max_heuristic(state, seed=1, restarts=8)
    assert bell_value(state, a) == best
    assert best >= paper_lhvt_bound(state)


def test_heuristic_deterministic():
    assert lhvt_max_heuristic(TWELVE_QUBIT_STATE, seed=5, restarts=6) == lhvt_max_heuristic(
        TWELVE_QUBIT_STATE, seed=5, restarts=6
    )


def test_assignment_validation():
    with pytest.raises(ValueError):
        Assignment(((1, 0, 1),))
    with pytest.raises(DimensionError):
        bell_value(BELL, Assignment.all_plus(3))
    a = Assignment.from_flips(4, 0b101100100001)
    assert Assignment.from_flips(4, a.flips()) == a


@pytest.mark.parametrize(
    "num,den,text",
    [(4096, 1984, "2.06"), (4096, 1024, "4.00"), (4096, 64, "64.00"), (1, 8, "0.13"), (-1, 8, "-0.13")],
)
def test_format_ratio(num, den, text):
    assert format_ratio(Fraction(num, den)) == text


def test_zero_bound_ratio():
    assert violation_ratio(8, 0) is None
    assert format_ratio(None) == "inf"


def test_report():
    rep = report(GHZ3, exhaustive=True, seed=0, restarts=4)
    d = rep.to_dict()
    assert d["qm_value"] == 8 and d["paper_bound"] == 2
    assert d["exhaustive_max"] == 6 and d["heuristic_max"] == 6
    assert d["violation_ratio_paper_2dp"] == "4.00"


def test_true_maximum_exceeds_all_plus_everywhere_small():
    for spec in ("2:00", "3:000", "3:010"):
        state = parse_state_spec(spec)
        assert lhvt_max_exhaustive(state)[0] > paper_lhvt_bound(state)
