import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cohconc.convexroof import (
    CoherenceConcurrence,
    EntanglementConcurrence,
    IntrinsicRandomness,
    RoofConfig,
    _polar,
    _polar_pullback,
    coherence_concurrence,
    convex_roof_minimize,
    decomposition_from_isometry,
    ensemble_value,
    intrinsic_randomness,
    mixed_concurrence_upper,
    reconstruction_error,
)
from cohconc.entanglement import pure_concurrence, wootters_concurrence
from cohconc.errors import BadObjectiveError, DimMismatchError, NotIsometryError
from cohconc.measures import (
    l1_coherence,
    pure_coherence_concurrence,
    pure_intrinsic_randomness,
    qubit_coherence_concurrence,
    qubit_intrinsic_randomness,
)
from cohconc.statespace import (
    BipartiteSplit,
    PureState,
    maximally_coherent_state,
    pure_to_density,
    pure_with_white_noise,
    random_density,
    random_incoherent,
    random_pure,
    spectral_ensemble,
    validate_density,
)

from conftest import ket, seeds

H_09 = 0.4689955935892812
QQ = BipartiteSplit(2, 2)
BELL = PureState(ket(1, 0, 0, 1))


def qubit(r12, r11=0.5):
    return validate_density([[r11, r12], [np.conj(r12), 1 - r11]])


class TestConfig:
    def test_defaults(self):
        c = RoofConfig()
        assert c.restarts == 5 and c.ensemble_size is None and c.seed == 0

    @pytest.mark.parametrize("kw", [{"restarts": 0}, {"tolerance": 0.0}, {"ensemble_size": 0}])
    def test_rejects(self, kw):
        with pytest.raises(ValueError):
            RoofConfig(**kw)


class TestIsometry:
    def test_identity_gives_spectral_ensemble(self):
        rho = random_density(3, None, 2)
        ens = decomposition_from_isometry(rho, np.eye(3))
        spec = spectral_ensemble(rho)
        assert np.allclose(np.sort(ens.probabilities), np.sort(spec.probabilities))

    @given(seeds, st.integers(3, 6))
    def test_reconstructs_state(self, seed, m):
        rng = np.random.default_rng(seed)
        rho = random_density(3, 3, rng)
        a = rng.standard_normal((3, m)) + 1j * rng.standard_normal((3, m))
        v = _polar(a)[0]
        assert reconstruction_error(decomposition_from_isometry(rho, v), rho) <= 1e-10

    def test_hadamard_on_maximally_mixed(self):
        ens = decomposition_from_isometry(validate_density(np.eye(2) / 2), np.array([[1, 1], [1, -1]]) / np.sqrt(2))
        assert np.allclose(ens.probabilities, [0.5, 0.5])
        overlaps = np.abs(ens.states @ np.array([ket(1, 1), ket(1, -1)]).conj().T)
        assert np.allclose(np.sort(overlaps.max(axis=1)), [1, 1])

    def test_not_isometry(self):
        with pytest.raises(NotIsometryError):
            decomposition_from_isometry(validate_density(np.eye(2) / 2), np.ones((2, 2)))
        with pytest.raises(NotIsometryError):
            decomposition_from_isometry(validate_density(np.eye(2) / 2), np.eye(3))


@pytest.mark.parametrize(
    "objective", [CoherenceConcurrence(), IntrinsicRandomness(), EntanglementConcurrence(BipartiteSplit(2, 2))]
)
def test_pullback_matches_finite_differences(objective):
    rng = np.random.default_rng(0)
    b = np.linalg.cholesky(random_density(4, None, 1).data)
    a = rng.standard_normal((4, 6)) + 1j * rng.standard_normal((4, 6))

    def f(aa):
        x = _polar(aa)[0]
        return objective.smoothed(b @ x, 1e-2)[0]

    x, u, s = _polar(a)
    g = _polar_pullback(a, x, u, s, b.conj().T @ objective.smoothed(b @ x, 1e-2)[1])
    h = 1e-6
    for idx in [(0, 0), (2, 3), (3, 5)]:
        e = np.zeros_like(a)
        e[idx] = 1
        d_re = (f(a + h * e) - f(a - h * e)) / (2 * h)
        d_im = (f(a + 1j * h * e) - f(a - 1j * h * e)) / (2 * h)
        assert g[idx] == pytest.approx(d_re + 1j * d_im, abs=1e-6)


class TestRoof:
    def test_pure_state_any_objective(self):
        psi = random_pure(4, 3)
        rho = pure_to_density(psi)
        assert convex_roof_minimize(rho, "cc").value == pytest.approx(pure_coherence_concurrence(psi), abs=1e-12)
        assert convex_roof_minimize(rho, "ri").value == pytest.approx(pure_intrinsic_randomness(psi), abs=1e-9)
        assert convex_roof_minimize(rho, "ce", split=QQ).value == pytest.approx(pure_concurrence(psi, QQ), abs=1e-12)

    def test_incoherent_state(self):
        rho = random_incoherent(4, 0)
        assert convex_roof_minimize(rho, "cc").value == pytest.approx(0, abs=1e-12)
        assert intrinsic_randomness(rho).value == pytest.approx(0, abs=1e-12)

    def test_noisy_plus(self):
        rho = pure_with_white_noise(maximally_coherent_state(2), 0.5)
        assert coherence_concurrence(rho).value == pytest.approx(0.5, abs=1e-4)

    def test_qubit_concurrence(self):
        res = coherence_concurrence(qubit(0.3), RoofConfig(seed=1))
        assert res.value == pytest.approx(0.6, abs=1e-4)
        assert res.detail["closed_form"] == pytest.approx(0.6)

    def test_mcs_qutrit(self):
        assert coherence_concurrence(pure_to_density(maximally_coherent_state(3))).value == pytest.approx(2)

    def test_qubit_randomness(self):
        assert intrinsic_randomness(qubit(0.3)).value == pytest.approx(H_09, abs=1e-3)

    def test_mcs_randomness(self):
        rho = pure_to_density(maximally_coherent_state(3))
        assert intrinsic_randomness(rho).value == pytest.approx(np.log2(3), abs=1e-12)

    def test_returned_ensemble_is_a_decomposition(self):
        rho = random_density(3, None, 6)
        res = coherence_concurrence(rho, RoofConfig(restarts=2))
        assert reconstruction_error(res.ensemble, rho) <= 1e-10
        assert ensemble_value(res.ensemble, "cc") == pytest.approx(res.value, abs=1e-12)
        assert res.value >= l1_coherence(rho) - 1e-6
        assert res.certification == "upper-bound"

    @settings(max_examples=15)
    @given(seeds)
    def test_upper_bound_on_l1(self, seed):
        rho = random_density(3, None, seed)
        assert coherence_concurrence(rho, RoofConfig(restarts=2, seed=seed)).value >= l1_coherence(rho) - 1e-6

    @settings(max_examples=10)
    @given(seeds)
    def test_qubit_closed_forms(self, seed):
        rho = random_density(2, None, seed)
        assert coherence_concurrence(rho).value == pytest.approx(qubit_coherence_concurrence(rho), abs=1e-4)
        assert intrinsic_randomness(rho).value == pytest.approx(qubit_intrinsic_randomness(rho), abs=1e-3)

    def test_deterministic(self):
        rho = random_density(3, None, 8)
        cfg = RoofConfig(restarts=3, seed=5, certify_gap=0.0)
        a, b = coherence_concurrence(rho, cfg), coherence_concurrence(rho, cfg)
        assert a.value == b.value and a.restart_values == b.restart_values

    def test_records_restarts(self):
        cfg = RoofConfig(restarts=3, certify_gap=0.0)
        res = coherence_concurrence(random_density(3, None, 1), cfg)
        assert len(res.restart_values) == 3
        assert res.value == pytest.approx(min(res.restart_values), abs=1e-12)
        assert res.restart_values[res.best_restart_index] == min(res.restart_values)

    @settings(max_examples=10)
    @given(seeds, st.integers(1, 4))
    def test_more_restarts_never_worse(self, seed, k):
        rho = random_density(3, None, seed)
        few = coherence_concurrence(rho, RoofConfig(restarts=k, seed=seed)).value
        more = coherence_concurrence(rho, RoofConfig(restarts=k + 2, seed=seed)).value
        assert more <= few

    def test_bad_inputs(self):
        with pytest.raises(BadObjectiveError):
            convex_roof_minimize(random_density(2, None, 0), "negativity")
        with pytest.raises(BadObjectiveError):
            convex_roof_minimize(random_density(4, None, 0), "ce")
        with pytest.raises(DimMismatchError):
            convex_roof_minimize(random_density(3, None, 0), "cc", RoofConfig(ensemble_size=2))


class TestEntanglementRoof:
    def test_diagonal_product_mixture(self):
        rho = validate_density(np.diag([0.1, 0.2, 0.3, 0.4]))
        assert mixed_concurrence_upper(rho, QQ).value == pytest.approx(0, abs=1e-12)

    def test_werner(self):
        rho = validate_density(0.9 * pure_to_density(BELL).data + 0.1 * np.eye(4) / 4)
        res = mixed_concurrence_upper(rho, QQ)
        assert res.value == pytest.approx(0.85, abs=1e-3)
        assert not res.detail["exceeds_closed_form"]

    def test_bell(self):
        assert mixed_concurrence_upper(pure_to_density(BELL), QQ).value == pytest.approx(1, abs=1e-12)

    @settings(max_examples=8)
    @given(seeds)
    def test_matches_wootters(self, seed):
        rho = random_density(4, None, seed)
        assert mixed_concurrence_upper(rho, QQ).value == pytest.approx(wootters_concurrence(rho), abs=1e-3)
