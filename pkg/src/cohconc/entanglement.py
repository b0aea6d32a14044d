"""Entanglement concurrence: pure bipartite states and the two-qubit Wootters formula."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DimMismatchError
from .statespace import BipartiteSplit, DensityMatrix, PureState, as_density, as_pure

PAULI_Y = np.array([[0, -1j], [1j, 0]])
SPIN_FLIP = np.kron(PAULI_Y, PAULI_Y)


def _coefficients(psi: PureState, split: BipartiteSplit) -> np.ndarray:
    v = as_pure(psi).amplitudes
    split.check(v.size)
    return v.reshape(split.dim_s, split.dim_a)


def pure_concurrence(psi: PureState, split: BipartiteSplit) -> float:
    """``sqrt(2 (1 - tr rho_S^2))`` of a bipartite pure state.

    Evaluated from the Schmidt coefficients as ``2 sqrt(sum_{a<b} s_a^2 s_b^2)``,
    which equals the purity form for unit vectors but does not cancel
    catastrophically near product states.
    """
    s2 = np.linalg.svd(_coefficients(psi, split), compute_uv=False) ** 2
    cross = float(sum(s2[a] * s2[b] for a, b in combinations(range(s2.size), 2)))
    upper = np.sqrt(2 * (1 - 1 / min(split.dim_s, split.dim_a)))
    return float(min(2 * np.sqrt(max(cross, 0.0)), upper))


def pure_concurrence_determinant_form(psi: PureState, split: BipartiteSplit) -> float:
    """``2 sqrt(sum |psi_ik psi_jl - psi_il psi_jk|^2)`` over i<j (S) and k<l (A)."""
    c = _coefficients(psi, split)
    total = 0.0
    for i, j in combinations(range(split.dim_s), 2):
        for k, l in combinations(range(split.dim_a), 2):
            total += abs(c[i, k] * c[j, l] - c[i, l] * c[j, k]) ** 2
    return float(2 * np.sqrt(total))


@dataclass(frozen=True)
class SpinFlipSpectrum:
    lambdas: tuple[float, float, float, float]

    def __post_init__(self):
        lam = self.lambdas
        if any(x < 0 for x in lam) or any(a < b for a, b in zip(lam, lam[1:])):
            raise ValueError(f"spin-flip spectrum must be nonnegative and nonincreasing: {lam}")


def _two_qubit(rho) -> np.ndarray:
    a = as_density(rho).data
    if a.shape != (4, 4):
        raise DimMismatchError(f"Wootters formula needs a 2x2 state (d=4), got d={a.shape[0]}")
    return a


def _sqrt_psd(a: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(a)
    w = np.where(w > 1e-14 * max(1.0, w.max()), w, 0.0)
    return (v * np.sqrt(w)) @ v.conj().T


def spin_flip_spectrum(rho: DensityMatrix) -> SpinFlipSpectrum:
    """Square roots of the eigenvalues of ``rho (Y x Y) rho* (Y x Y)``, largest first.

    That matrix is similar to ``sqrt(rho) (Y x Y) rho* (Y x Y) sqrt(rho) = R R^dag``
    with ``R = sqrt(rho) (Y x Y) conj(sqrt(rho))``; the square roots are the
    singular values of ``R``.
    """
    s = _sqrt_psd(_two_qubit(rho))
    sv = np.linalg.svd(s @ SPIN_FLIP @ s.conj(), compute_uv=False)
    return SpinFlipSpectrum(tuple(float(x) for x in np.sort(np.clip(sv, 0, None))[::-1]))


def wootters_concurrence(rho: DensityMatrix) -> float:
    l1, l2, l3, l4 = spin_flip_spectrum(rho).lambdas
    return float(min(max(l1 - l2 - l3 - l4, 0.0), 1.0))
