import numpy as np
import pytest
from hypothesis import given, strategies as st

from cohconc.errors import IndexOrderError, IndexOutOfRangeError
from cohconc.gellmann import (
    antisymmetric_ggm,
    diagonal_ggm,
    from_ggm_coefficients,
    ggm_basis,
    ggm_coefficients,
    symmetric_ggm,
)

SX = np.array([[0, 1], [1, 0]])
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1, -1])

pairs = st.integers(2, 7).flatmap(
    lambda d: st.tuples(st.just(d), st.integers(1, d - 1)).flatmap(
        lambda t: st.tuples(st.just(t[0]), st.just(t[1]), st.integers(t[1] + 1, t[0]))
    )
)


def test_qubit_generators_are_paulis():
    assert np.array_equal(symmetric_ggm(2, 1, 2).matrix, SX)
    assert np.array_equal(antisymmetric_ggm(2, 1, 2).matrix, SY)
    assert np.array_equal(diagonal_ggm(2, 1).matrix, SZ)
    assert [g.matrix.tolist() for g in ggm_basis(2)] == [SX.tolist(), SY.tolist(), SZ.tolist()]


def test_symmetric_qutrit_13():
    expected = np.zeros((3, 3))
    expected[0, 2] = expected[2, 0] = 1
    assert np.array_equal(symmetric_ggm(3, 1, 3).matrix, expected)


def test_diagonal_qutrit_l2():
    assert np.allclose(diagonal_ggm(3, 2).matrix, np.diag([1, 1, -2]) / np.sqrt(3))


@given(pairs)
def test_pair_generators(djk):
    d, j, k = djk
    s, a = symmetric_ggm(d, j, k).matrix, antisymmetric_ggm(d, j, k).matrix
    assert np.trace(s) == 0 and np.trace(a) == 0
    assert np.array_equal(a, a.conj().T) and np.array_equal(s, s.conj().T)
    span = np.zeros((d, d))
    span[j - 1, j - 1] = span[k - 1, k - 1] = 1
    assert np.allclose(a @ a, span)


@pytest.mark.parametrize("d", range(2, 7))
def test_diagonal_normalization(d):
    for l in range(1, d):
        m = diagonal_ggm(d, l).matrix
        assert np.trace(m) == pytest.approx(0, abs=1e-14)
        assert np.trace(m @ m).real == pytest.approx(2, abs=1e-14)


@pytest.mark.parametrize("d", range(2, 7))
def test_basis_is_orthogonal(d):
    basis = ggm_basis(d)
    assert len(basis) == d * d - 1
    m = np.array([g.matrix for g in basis])
    gram = np.einsum("aij,bji->ab", m, m)
    assert np.allclose(gram, 2 * np.eye(len(basis)), atol=1e-14)


def test_basis_order():
    kinds = [g.kind for g in ggm_basis(3)]
    assert kinds == ["symmetric"] * 3 + ["antisymmetric"] * 3 + ["diagonal"] * 2
    assert [g.indices for g in ggm_basis(3)[:3]] == [(1, 2), (1, 3), (2, 3)]


@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_coefficients_round_trip(d, seed):
    rng = np.random.default_rng(seed)
    h = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    h = h + h.conj().T
    h -= np.trace(h) / d * np.eye(d)
    assert np.allclose(from_ggm_coefficients(ggm_coefficients(h), d), h, atol=1e-12)


def test_index_errors():
    with pytest.raises(IndexOrderError):
        symmetric_ggm(3, 2, 1)
    with pytest.raises(IndexOrderError):
        antisymmetric_ggm(3, 1, 4)
    with pytest.raises(IndexOutOfRangeError):
        diagonal_ggm(3, 3)
    with pytest.raises(IndexOutOfRangeError):
        ggm_basis(1)
