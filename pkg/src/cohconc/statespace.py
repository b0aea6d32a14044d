"""State representations in a fixed reference basis.

Basis labels are 1..d in the physics notation; arrays are indexed 0..d-1,
so label ``i`` lives at index ``i - 1``.  Composite systems use S-major
order: the basis vector |i>^S |j>^A sits at row ``(i - 1) * dA + (j - 1)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DimMismatchError,
    NotHermitianError,
    NotNormalizedError,
    NotPositiveError,
    RankOutOfRangeError,
    TraceNotOneError,
)

DEFAULT_TOL = 1e-8


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.complex128)
    arr.flags.writeable = False
    return arr


def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, PSD, unit-trace ``d x d`` matrix.

    Construct through :func:`validate_density` unless the invariants are
    guaranteed by construction.
    """

    data: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "data", _frozen(self.data))

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.data, dtype=dtype)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen(self.amplitudes)
        if amps.ndim != 1:
            raise DimMismatchError(f"amplitudes must be a vector, got shape {amps.shape}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)

    def __repr__(self):
        return f"PureState(dim={self.dim})"


@dataclass(frozen=True)
class BipartiteSplit:
    dim_s: int
    dim_a: int

    def __post_init__(self):
        if self.dim_s < 1 or self.dim_a < 1:
            raise DimMismatchError(f"subsystem dimensions must be positive: {self.dim_s}x{self.dim_a}")

    @property
    def dim(self) -> int:
        return self.dim_s * self.dim_a

    def check(self, dim: int) -> None:
        if dim != self.dim:
            raise DimMismatchError(
                f"state dimension {dim} does not match split {self.dim_s}x{self.dim_a}"
            )

    @classmethod
    def parse(cls, text: str) -> "BipartiteSplit":
        """Parse ``"dS,dA"``."""
        parts = text.split(",")
        if len(parts) != 2:
            raise DimMismatchError(f"split must look like 'dS,dA', got {text!r}")
        return cls(int(parts[0]), int(parts[1]))


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Probability-weighted pure states; ``states`` holds one state per row."""

    probabilities: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        p = np.array(self.probabilities, dtype=float)
        s = np.array(self.states, dtype=np.complex128)
        if s.ndim != 2 or p.shape != (s.shape[0],):
            raise DimMismatchError("ensemble needs one probability per state row")
        if np.any(p < -1e-12) or abs(p.sum() - 1) > 1e-8:
            raise NotNormalizedError(f"probabilities must be a distribution (sum={p.sum():.3g})")
        norms = np.einsum("ij,ij->i", s.conj(), s).real
        if np.any(np.abs(norms - 1) > 1e-8):
            raise NotNormalizedError("ensemble member is not a unit vector")
        p.flags.writeable = False
        s.flags.writeable = False
        object.__setattr__(self, "probabilities", p)
        object.__setattr__(self, "states", s)

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    @property
    def members(self) -> list[tuple[float, PureState]]:
        return [(float(p), PureState(v)) for p, v in zip(self.probabilities, self.states)]

    def __len__(self):
        return len(self.probabilities)

    @classmethod
    def from_members(cls, members: Sequence[tuple[float, PureState]]) -> "Ensemble":
        dims = {psi.dim for _, psi in members}
        if len(dims) != 1:
            raise DimMismatchError(f"ensemble members have mixed dimensions {sorted(dims)}")
        return cls([p for p, _ in members], [psi.amplitudes for _, psi in members])


def clipped_eigh(matrix: np.ndarray, tol: float = DEFAULT_TOL):
    """Eigen-decomposition of a Hermitian PSD matrix with eigenvalues in
    ``[-tol, 0)`` clipped to zero."""
    w, v = np.linalg.eigh(matrix)
    w = np.where((w < 0) & (w >= -tol), 0.0, w)
    return w, v


def validate_density(raw, tol: float = DEFAULT_TOL) -> DensityMatrix:
    a = np.asarray(raw, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimMismatchError(f"density matrix must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NotHermitianError("density matrix contains NaN or Inf")
    asym = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
    if asym >= tol:
        raise NotHermitianError(f"matrix is not Hermitian: max |A - A^dag| = {asym:.3e}")
    a = (a + a.conj().T) / 2
    lo = np.linalg.eigvalsh(a).min()
    if lo < -tol:
        raise NotPositiveError(f"matrix is not positive semidefinite: min eigenvalue {lo:.3e}")
    tr = np.trace(a).real
    if abs(tr - 1) > tol:
        raise TraceNotOneError(f"trace is {tr:.12g}, off by {abs(tr - 1):.3e}")
    return DensityMatrix(a)


def validate_pure(raw, tol: float = DEFAULT_TOL) -> PureState:
    v = np.asarray(raw, dtype=np.complex128)
    if v.ndim != 1 or v.size == 0:
        raise DimMismatchError(f"pure state must be a non-empty vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise NotNormalizedError("pure state contains NaN or Inf")
    n2 = np.vdot(v, v).real
    if abs(n2 - 1) > tol:
        raise NotNormalizedError(f"pure state has squared norm {n2:.12g}")
    return PureState(v)


def as_density(state, tol: float = DEFAULT_TOL) -> DensityMatrix:
    """Accept a DensityMatrix, PureState or raw square array."""
    if isinstance(state, DensityMatrix):
        return state
    if isinstance(state, PureState):
        return pure_to_density(state)
    return validate_density(state, tol)


def as_pure(state, tol: float = DEFAULT_TOL) -> PureState:
    if isinstance(state, PureState):
        return state
    return validate_pure(state, tol)


def pure_to_density(psi: PureState) -> DensityMatrix:
    v = np.asarray(psi.amplitudes if isinstance(psi, PureState) else psi)
    return DensityMatrix(np.outer(v, v.conj()))


def ensemble_to_density(ensemble: Ensemble) -> DensityMatrix:
    s = ensemble.states
    return DensityMatrix(np.einsum("i,ia,ib->ab", ensemble.probabilities, s, s.conj()))


def spectral_ensemble(rho: DensityMatrix, cutoff: float = 1e-14) -> Ensemble:
    """Eigen-ensemble of ``rho``, dropping weights below ``cutoff``."""
    w, v = clipped_eigh(as_density(rho).data)
    keep = w > cutoff
    return Ensemble(w[keep] / w[keep].sum(), v[:, keep].T)


def dephase(rho: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(np.diag(np.diag(as_density(rho).data)))


def _entropy_bits(probs: np.ndarray) -> float:
    p = probs[probs > 0]
    return float(-np.sum(p * np.log2(p))) if p.size else 0.0


def shannon_entropy(probs) -> float:
    """Shannon entropy in bits, ``0 log 0 := 0``."""
    return _entropy_bits(np.clip(np.asarray(probs, dtype=float), 0.0, None))


def von_neumann_entropy(rho: DensityMatrix, tol: float = DEFAULT_TOL) -> float:
    w = clipped_eigh(as_density(rho).data, tol)[0]
    return _entropy_bits(np.clip(w, 0.0, None))


def tensor(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(np.kron(as_density(a).data, as_density(b).data))


def partial_trace(rho: DensityMatrix, split: BipartiteSplit, keep: str = "S") -> DensityMatrix:
    """Reduced state of subsystem ``keep`` ("S" or "A")."""
    data = as_density(rho).data
    split.check(data.shape[0])
    t = data.reshape(split.dim_s, split.dim_a, split.dim_s, split.dim_a)
    if keep.upper() == "S":
        return DensityMatrix(np.einsum("iaja->ij", t))
    if keep.upper() == "A":
        return DensityMatrix(np.einsum("aiaj->ij", t))
    raise ValueError(f"keep must be 'S' or 'A', got {keep!r}")


def basis_state(d: int, label: int) -> PureState:
    """Basis vector |label>, with 1-based ``label``."""
    if not 1 <= label <= d:
        raise DimMismatchError(f"basis label {label} outside 1..{d}")
    v = np.zeros(d, dtype=np.complex128)
    v[label - 1] = 1.0
    return PureState(v)


def maximally_coherent_state(d: int) -> PureState:
    if d < 1:
        raise DimMismatchError("dimension must be >= 1")
    return PureState(np.full(d, 1 / np.sqrt(d), dtype=np.complex128))


def mcs_with_phases(d: int, theta) -> PureState:
    theta = np.asarray(theta, dtype=float)
    if d < 1 or theta.shape != (d,):
        raise DimMismatchError(f"need d >= 1 and {d} phases, got shape {theta.shape}")
    return PureState(np.exp(1j * theta) / np.sqrt(d))


def random_pure(d: int, seed=None) -> PureState:
    """Haar-random unit vector: normalized complex Gaussian."""
    if d < 1:
        raise DimMismatchError("dimension must be >= 1")
    rng = as_rng(seed)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState(v / np.linalg.norm(v))


def random_density(d: int, rank: int | None = None, seed=None) -> DensityMatrix:
    """Ginibre-induced state ``G G^dag / tr(G G^dag)`` with ``G`` of shape d x rank."""
    rank = d if rank is None else rank
    if not 1 <= rank <= d:
        raise RankOutOfRangeError(f"rank must be in 1..{d}, got {rank}")
    rng = as_rng(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(rho / np.trace(rho).real)


def random_incoherent(d: int, seed=None) -> DensityMatrix:
    if d < 1:
        raise DimMismatchError("dimension must be >= 1")
    w = as_rng(seed).dirichlet(np.ones(d))
    return DensityMatrix(np.diag(w))


def pure_with_white_noise(psi: PureState, p: float) -> DensityMatrix:
    """``p |psi><psi| + (1 - p) I / d``."""
    if not 0 <= p <= 1:
        raise ValueError(f"mixing weight must lie in [0, 1], got {p}")
    v = as_pure(psi).amplitudes
    return DensityMatrix(p * np.outer(v, v.conj()) + (1 - p) * np.eye(v.size) / v.size)


def top_eigenvector(rho: DensityMatrix) -> PureState:
    w, v = np.linalg.eigh(as_density(rho).data)
    return PureState(v[:, -1])


def is_pure(rho: DensityMatrix, tol: float = 1e-10) -> bool:
    w = np.linalg.eigvalsh(as_density(rho).data)
    return bool(w[-1] >= 1 - tol)
