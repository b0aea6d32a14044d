"""Closed-form coherence quantifiers in the fixed reference basis.

All entropies are in bits.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimMismatchError, OutOfRangeError
from .gellmann import symmetric_pairs
from .statespace import (
    DensityMatrix,
    PureState,
    as_density,
    as_pure,
    dephase,
    shannon_entropy,
    von_neumann_entropy,
)

EXACT = "exact"
UPPER_BOUND = "upper-bound"
LOWER_BOUND = "lower-bound"


@dataclass(frozen=True)
class MeasureReport:
    measure: str
    value: float
    certification: str = EXACT
    detail: dict = field(default_factory=dict)


def l1_coherence(rho: DensityMatrix) -> float:
    a = as_density(rho).data
    return float(np.abs(a).sum() - np.abs(np.diag(a)).sum())


def _sqrt_psd(a: np.ndarray, floor: float = 1e-14) -> np.ndarray:
    w, v = np.linalg.eigh(a)
    # eigenvalues at the round-off level would enter as ~1e-8 after the root
    w = np.where(w > floor * max(1.0, w.max()), w, 0.0)
    return (v * np.sqrt(w)) @ v.conj().T


def ggm_pair_roots(rho: DensityMatrix) -> tuple[list[tuple[int, int]], np.ndarray]:
    """Square roots of the two nonzero eigenvalues of ``rho L rho* L`` per symmetric L.

    ``rho L rho* L`` is similar to the PSD matrix ``sqrt(rho) L rho* L sqrt(rho) = R R^dag``
    with ``R = sqrt(rho) L conj(sqrt(rho))``, so the roots are the singular values of
    ``R``; taking them directly avoids square-rooting a round-off-level eigenvalue.
    Returns the 1-based pairs and an array of shape (n_pairs, 2), largest first.
    """
    a = as_density(rho).data
    d = a.shape[0]
    pairs = symmetric_pairs(d)
    if not pairs:
        return pairs, np.zeros((0, 2))
    s = _sqrt_psd(a)
    sc = s.conj()
    factors = np.empty((len(pairs), d, d), dtype=np.complex128)
    for n, (j, k) in enumerate(pairs):
        j, k = j - 1, k - 1
        factors[n] = np.outer(s[:, j], sc[k]) + np.outer(s[:, k], sc[j])
    sv = np.linalg.svd(factors, compute_uv=False)
    return pairs, sv[:, :2]


def ggm_pair_eigenvalues(rho: DensityMatrix) -> tuple[list[tuple[int, int]], np.ndarray]:
    """The two nonzero eigenvalues ``eta1 >= eta2`` of ``rho L rho* L`` per symmetric L."""
    pairs, roots = ggm_pair_roots(rho)
    return pairs, roots**2


def l1_coherence_via_ggm(rho: DensityMatrix) -> float:
    """l1-norm of coherence as ``sum |sqrt(eta1) - sqrt(eta2)|`` over symmetric generators."""
    _, roots = ggm_pair_roots(rho)
    return float(np.abs(roots[:, 0] - roots[:, 1]).sum()) if roots.size else 0.0


def relative_entropy_coherence(rho: DensityMatrix) -> float:
    rho = as_density(rho)
    return max(0.0, von_neumann_entropy(dephase(rho)) - von_neumann_entropy(rho))


def pure_coherence_concurrence(psi: PureState) -> float:
    """Sum over j<k of ``|<psi| L_s^{jk} |psi*>| = 2 |a_j a_k|``."""
    v = as_pure(psi).amplitudes
    total = 0.0
    for j, k in symmetric_pairs(v.size):
        # <psi| L |psi*> = conj(a_j) conj(a_k) + conj(a_k) conj(a_j)
        total += abs(2 * np.conj(v[j - 1]) * np.conj(v[k - 1]))
    return float(total)


def pure_intrinsic_randomness(psi: PureState) -> float:
    v = as_pure(psi).amplitudes
    return shannon_entropy(np.abs(v) ** 2)


def binary_entropy(p: float) -> float:
    return shannon_entropy([p, 1 - p])


def binary_entropy_of_concurrence(c: float) -> float:
    """``H((1 + sqrt(1 - c^2)) / 2)`` in bits, for ``0 <= c <= 1``."""
    if not (-1e-12 <= c <= 1 + 1e-12) or np.isnan(c):
        raise OutOfRangeError(f"concurrence must lie in [0, 1], got {c}")
    c = min(max(c, 0.0), 1.0)
    return binary_entropy((1 + np.sqrt(1 - c * c)) / 2)


def _qubit(rho) -> np.ndarray:
    a = as_density(rho).data
    if a.shape != (2, 2):
        raise DimMismatchError(f"qubit closed form needs d=2, got d={a.shape[0]}")
    return a


def qubit_coherence_concurrence(rho: DensityMatrix) -> float:
    return float(2 * abs(_qubit(rho)[0, 1]))


def qubit_intrinsic_randomness(rho: DensityMatrix) -> float:
    return binary_entropy_of_concurrence(qubit_coherence_concurrence(rho))


def is_incoherent(rho: DensityMatrix, tol: float = 1e-9) -> bool:
    a = as_density(rho).data
    off = np.abs(a - np.diag(np.diag(a)))
    return bool(off.max(initial=0.0) <= tol)


def is_mcs(psi: PureState, tol: float = 1e-9) -> bool:
    v = as_pure(psi).amplitudes
    return bool(np.all(np.abs(np.abs(v) - 1 / np.sqrt(v.size)) <= tol))


CLOSED_FORMS = {
    "l1": l1_coherence,
    "relent": relative_entropy_coherence,
    "cc-pure": pure_coherence_concurrence,
    "ri-pure": pure_intrinsic_randomness,
    "qubit-cc": qubit_coherence_concurrence,
    "qubit-ri": qubit_intrinsic_randomness,
}
PURE_ONLY = {"cc-pure", "ri-pure"}


def measure_report(name: str, state) -> MeasureReport:
    """Evaluate a closed-form measure by its CLI tag."""
    try:
        fn = CLOSED_FORMS[name]
    except KeyError:
        raise OutOfRangeError(f"unknown measure {name!r}; choose from {sorted(CLOSED_FORMS)}") from None
    if name in PURE_ONLY and not isinstance(state, PureState):
        raise DimMismatchError(f"measure {name!r} needs a pure state")
    return MeasureReport(name, fn(state), EXACT)
