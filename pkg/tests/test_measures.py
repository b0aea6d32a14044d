import numpy as np
import pytest
from hypothesis import given, strategies as st

from cohconc.errors import DimMismatchError, OutOfRangeError
from cohconc.measures import (
    EXACT,
    binary_entropy_of_concurrence,
    ggm_pair_eigenvalues,
    is_incoherent,
    is_mcs,
    l1_coherence,
    l1_coherence_via_ggm,
    measure_report,
    pure_coherence_concurrence,
    pure_intrinsic_randomness,
    qubit_coherence_concurrence,
    qubit_intrinsic_randomness,
    relative_entropy_coherence,
)
from cohconc.statespace import (
    PureState,
    basis_state,
    maximally_coherent_state,
    mcs_with_phases,
    pure_to_density,
    random_density,
    random_incoherent,
    validate_density,
)

from conftest import densities, ket, pures, seeds

H_09 = 0.4689955935892812  # -0.9 log2 0.9 - 0.1 log2 0.1


def qubit(r12, r11=0.5):
    return validate_density([[r11, r12], [np.conj(r12), 1 - r11]])


PLUS = pure_to_density(PureState(ket(1, 1)))


class TestL1:
    def test_diagonal(self):
        assert l1_coherence(validate_density(np.diag([0.1, 0.2, 0.7]))) == 0

    @pytest.mark.parametrize("d", range(2, 9))
    def test_mcs(self, d):
        assert l1_coherence(pure_to_density(maximally_coherent_state(d))) == pytest.approx(d - 1, abs=1e-12)

    def test_qubit(self):
        assert l1_coherence(qubit(0.3)) == pytest.approx(0.6)


class TestGellMannRoute:
    def test_pair_eigenvalues_match_closed_form(self):
        rho = random_density(4, None, 5)
        a = rho.data
        pairs, eta = ggm_pair_eigenvalues(rho)
        for (j, k), (e1, e2) in zip(pairs, eta):
            r, g = abs(a[j - 1, k - 1]), np.sqrt(a[j - 1, j - 1].real * a[k - 1, k - 1].real)
            assert e1 == pytest.approx((r + g) ** 2, abs=1e-12)
            assert e2 == pytest.approx((r - g) ** 2, abs=1e-12)

    def test_diagonal_gives_zero(self):
        assert l1_coherence_via_ggm(validate_density(np.diag([0.5, 0.3, 0.2]))) == pytest.approx(0, abs=1e-15)

    def test_random_qudit(self):
        rho = random_density(4, None, 0)
        assert abs(l1_coherence_via_ggm(rho) - l1_coherence(rho)) <= 1e-9

    @given(densities(st.integers(2, 8)))
    def test_agrees_with_direct_sum(self, rho):
        assert abs(l1_coherence_via_ggm(rho) - l1_coherence(rho)) <= 1e-9


class TestRelativeEntropy:
    def test_plus(self):
        assert relative_entropy_coherence(PLUS) == pytest.approx(1, abs=1e-12)

    def test_maximally_mixed(self):
        assert relative_entropy_coherence(validate_density(np.eye(3) / 3)) == pytest.approx(0, abs=1e-12)

    @pytest.mark.parametrize("d", [2, 3, 4, 7])
    def test_mcs(self, d):
        mcs = pure_to_density(maximally_coherent_state(d))
        assert relative_entropy_coherence(mcs) == pytest.approx(np.log2(d), abs=1e-12)


class TestPureForms:
    @pytest.mark.parametrize("d", range(1, 9))
    def test_mcs_concurrence(self, d):
        assert pure_coherence_concurrence(maximally_coherent_state(d)) == pytest.approx(d - 1, abs=1e-12)

    @pytest.mark.parametrize("p", [0.0, 0.1, 0.5, 0.64])
    def test_single_pair(self, p):
        psi = PureState([np.sqrt(p), np.sqrt(1 - p)])
        assert pure_coherence_concurrence(psi) == pytest.approx(2 * np.sqrt(p * (1 - p)), abs=1e-15)

    def test_basis_states(self):
        for i in range(1, 4):
            assert pure_coherence_concurrence(basis_state(3, i)) == 0
            assert pure_intrinsic_randomness(basis_state(3, i)) == 0

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_mcs_randomness(self, d):
        assert pure_intrinsic_randomness(maximally_coherent_state(d)) == pytest.approx(np.log2(d), abs=1e-12)

    @given(pures(st.integers(1, 16)))
    def test_concurrence_equals_l1(self, psi):
        assert abs(pure_coherence_concurrence(psi) - l1_coherence(pure_to_density(psi))) <= 1e-12

    @given(pures())
    def test_randomness_equals_relative_entropy(self, psi):
        rel = relative_entropy_coherence(pure_to_density(psi))
        assert pure_intrinsic_randomness(psi) == pytest.approx(rel, abs=1e-9)

    @given(pures())
    def test_concurrence_range(self, psi):
        c = pure_coherence_concurrence(psi)
        assert -1e-15 <= c <= psi.dim - 1 + 1e-12


class TestBinaryEntropy:
    def test_examples(self):
        assert binary_entropy_of_concurrence(1) == pytest.approx(1)
        assert binary_entropy_of_concurrence(0) == 0
        assert binary_entropy_of_concurrence(0.6) == pytest.approx(H_09, abs=1e-12)

    def test_out_of_range(self):
        with pytest.raises(OutOfRangeError):
            binary_entropy_of_concurrence(1.2)

    @given(st.floats(0, 1))
    def test_monotone_in_unit_interval(self, c):
        h = binary_entropy_of_concurrence(c)
        assert 0 <= h <= 1
        assert binary_entropy_of_concurrence(min(1.0, c + 1e-3)) >= h - 1e-12


class TestQubitClosedForms:
    def test_concurrence(self):
        assert qubit_coherence_concurrence(qubit(0.3)) == pytest.approx(0.6)
        assert qubit_coherence_concurrence(qubit(0.0, 0.3)) == 0
        assert qubit_coherence_concurrence(PLUS) == pytest.approx(1)

    def test_randomness(self):
        assert qubit_intrinsic_randomness(qubit(0.0)) == 0
        assert qubit_intrinsic_randomness(PLUS) == pytest.approx(1)
        assert qubit_intrinsic_randomness(qubit(0.3)) == pytest.approx(H_09, abs=1e-12)

    def test_qubit_only(self):
        with pytest.raises(DimMismatchError):
            qubit_coherence_concurrence(random_density(3, None, 0))


class TestPredicates:
    def test_incoherent(self):
        assert is_incoherent(validate_density(np.eye(4) / 4))
        assert not is_incoherent(PLUS)

    @given(seeds)
    def test_random_incoherent(self, seed):
        assert is_incoherent(random_incoherent(5, seed))

    @given(seeds, st.integers(1, 7))
    def test_mcs(self, seed, d):
        theta = np.random.default_rng(seed).uniform(0, 2 * np.pi, d)
        assert is_mcs(mcs_with_phases(d, theta))

    def test_not_mcs(self):
        assert not is_mcs(basis_state(3, 2))
        assert not is_mcs(PureState([np.sqrt(0.6), np.sqrt(0.4)]))


def test_measure_report():
    rep = measure_report("l1", pure_to_density(maximally_coherent_state(3)))
    assert rep.value == pytest.approx(2) and rep.certification == EXACT
    with pytest.raises(ValueError):
        measure_report("cc-pure", PLUS)
