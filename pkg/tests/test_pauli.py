import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperstab.errors import CapacityError, DimensionError, NonHermitianError, ParseError
from hyperstab.pauli import (
    PauliString,
    apply_to_vector,
    commutes,
    hermitian_sign,
    multiply,
    symplectic_product,
    tensor_concat,
    to_dense,
    weight,
)


def random_pauli(rng, n):
    return PauliString(
        n,
        int(rng.integers(0, 1 << n)),
        int(rng.integers(0, 1 << n)),
        int(rng.integers(0, 4)),
    )


@st.composite
def paulis(draw, n=None):
    n = draw(st.integers(1, 6)) if n is None else n
    return PauliString(
        n,
        draw(st.integers(0, (1 << n) - 1)),
        draw(st.integers(0, (1 << n) - 1)),
        draw(st.integers(0, 3)),
    )


def test_single_qubit_products():
    Z, X, Y = (PauliString.from_label(c) for c in "ZXY")
    assert multiply(Z, X) == PauliString.from_label("iY")
    assert multiply(X, Z) == PauliString.from_label("-iY")
    assert multiply(X, Y) == PauliString.from_label("iZ")
    assert multiply(Y, Y) == PauliString.identity(1)


def test_xxxx_times_zzii_is_minus_yyxx():
    p = multiply(PauliString.from_label("XXXX"), PauliString.from_label("ZZII"))
    assert p.label() == "-YYXX"
    assert p.phase == 2
    assert hermitian_sign(p) == -1


def test_hermitian_sign_rejects_imaginary_phase():
    with pytest.raises(NonHermitianError):
        hermitian_sign(PauliString.from_label("iX"))


@pytest.mark.parametrize("label", ["I", "-YYXX", "iZXY", "-iIIY", "XZ"])
def test_label_round_trip(label):
    assert PauliString.from_label(label).label() == label


def test_from_label_errors_carry_position():
    with pytest.raises(ParseError) as info:
        PauliString.from_label("-XQZ")
    assert info.value.position == 2
    with pytest.raises(ParseError):
        PauliString.from_label("--X")


def test_mask_range_checked():
    with pytest.raises(DimensionError):
        PauliString(2, x=0b100)
    with pytest.raises(DimensionError):
        multiply(PauliString.identity(2), PauliString.identity(3))


def test_dense_oracle_100_random_pairs():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        n = int(rng.integers(1, 7))
        p, q = random_pauli(rng, n), random_pauli(rng, n)
        assert np.array_equal(to_dense(multiply(p, q)), to_dense(p) @ to_dense(q))


def test_associativity_100_triples():
    rng = np.random.default_rng(7)
    for _ in range(100):
        n = int(rng.integers(1, 9))
        a, b, c = (random_pauli(rng, n) for _ in range(3))
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


def test_hermitian_square_is_identity():
    rng = np.random.default_rng(3)
    for _ in range(100):
        n = int(rng.integers(1, 10))
        p = random_pauli(rng, n)
        sq = multiply(p, p)
        # p*p = i^(2*phase) * I, so Hermitian strings square to +I.
        assert sq.x == sq.z == 0
        assert sq.phase == (2 * p.phase) % 4
        if p.is_hermitian():
            assert sq == PauliString.identity(n)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_commutator_phase_matches_symplectic(data):
    n = data.draw(st.integers(1, 6))
    p, q = data.draw(paulis(n)), data.draw(paulis(n))
    pq, qp = multiply(p, q), multiply(q, p)
    assert (pq.x, pq.z) == (qp.x, qp.z)
    assert (pq.phase - qp.phase) % 4 == 2 * symplectic_product(p, q)
    dense_commute = np.array_equal(to_dense(p) @ to_dense(q), to_dense(q) @ to_dense(p))
    assert commutes(p, q) == dense_commute


@settings(max_examples=100, deadline=None)
@given(paulis(), paulis())
def test_tensor_concat_matches_kron(p, q):
    assert np.array_equal(to_dense(tensor_concat(p, q)), np.kron(to_dense(p), to_dense(q)))


@settings(max_examples=100, deadline=None)
@given(paulis())
def test_apply_to_vector_matches_dense(p):
    rng = np.random.default_rng(p.x * 131 + p.z)
    vec = rng.integers(-3, 4, size=1 << p.n)
    assert np.array_equal(apply_to_vector(p, vec), to_dense(p) @ vec)


def test_weight_and_support():
    p = PauliString.from_label("XIYZI")
    assert weight(p) == 3
    assert p.support == 0b01101


def test_dense_cap():
    with pytest.raises(CapacityError):
        to_dense(PauliString.identity(15))
