"""Incoherent operations given by Kraus operators."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AncillaTooSmallError,
    DimMismatchError,
    NotCompleteError,
    ShapeMismatchError,
)
from .statespace import DensityMatrix, as_density, as_rng, validate_density

KRAUS_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """Completeness-checked Kraus set; ``kraus`` has shape (n, dim_out, dim_in)."""

    kraus: np.ndarray
    incoherent: bool

    def __post_init__(self):
        k = np.array(self.kraus, dtype=np.complex128)
        k.flags.writeable = False
        object.__setattr__(self, "kraus", k)

    @property
    def dim_in(self) -> int:
        return self.kraus.shape[2]

    @property
    def dim_out(self) -> int:
        return self.kraus.shape[1]

    def __len__(self):
        return self.kraus.shape[0]


@dataclass(frozen=True)
class OutcomeList:
    outcomes: list[tuple[float, DensityMatrix]]

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([p for p, _ in self.outcomes])


def column_certificate(k: np.ndarray, tol: float = KRAUS_TOL) -> bool:
    """True if every column of every Kraus operator has at most one entry above ``tol``."""
    return bool(np.all((np.abs(k) > tol).sum(axis=-2) <= 1))


def validate_icptp(kraus, tol: float = KRAUS_TOL) -> KrausChannel:
    mats = [np.asarray(m, dtype=np.complex128) for m in kraus]
    if not mats:
        raise ShapeMismatchError("channel needs at least one Kraus operator")
    shapes = {m.shape for m in mats}
    if len(shapes) != 1 or mats[0].ndim != 2:
        raise ShapeMismatchError(f"Kraus operators must share one 2-d shape, got {sorted(shapes)}")
    k = np.stack(mats)
    gram = np.einsum("nri,nrj->ij", k.conj(), k)
    err = np.abs(gram - np.eye(k.shape[2])).max()
    if err > tol:
        raise NotCompleteError(f"sum K^dag K differs from identity by {err:.3e}")
    return KrausChannel(k, column_certificate(k, tol))


def _check_dims(ch: KrausChannel, rho: DensityMatrix) -> np.ndarray:
    a = as_density(rho).data
    if a.shape[0] != ch.dim_in:
        raise DimMismatchError(f"channel expects d={ch.dim_in}, state has d={a.shape[0]}")
    return a


def apply_channel(ch: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    a = _check_dims(ch, rho)
    out = np.einsum("nij,jk,nlk->il", ch.kraus, a, ch.kraus.conj())
    return validate_density((out + out.conj().T) / 2)


def selective_outcomes(ch: KrausChannel, rho: DensityMatrix, cutoff: float = 1e-14) -> OutcomeList:
    a = _check_dims(ch, rho)
    outcomes = []
    for k in ch.kraus:
        s = k @ a @ k.conj().T
        p = float(np.trace(s).real)
        if p < cutoff:
            continue
        s = (s + s.conj().T) / (2 * p)
        outcomes.append((p, DensityMatrix(s)))
    return OutcomeList(outcomes)


def generalized_cnot(d: int, dim_a: int) -> KrausChannel:
    """Controlled modular addition: |i>|j> -> |i>|i (+) (j-1)> for j <= d, identity for j > d.

    With 0-based indices the target becomes ``(i + j) mod d``.
    """
    if dim_a < d:
        raise AncillaTooSmallError(f"ancilla dimension {dim_a} is smaller than system dimension {d}")
    u = np.zeros((d * dim_a, d * dim_a), dtype=np.complex128)
    for i in range(d):
        for j in range(dim_a):
            target = (i + j) % d if j < d else j
            u[i * dim_a + target, i * dim_a + j] = 1
    return KrausChannel(u[None], True)


def cnot_gate() -> KrausChannel:
    return generalized_cnot(2, 2)


def attach_ancilla(rho: DensityMatrix, dim_a: int) -> DensityMatrix:
    """``rho (x) |1><1|`` in S-major order."""
    if dim_a < 1:
        raise DimMismatchError("ancilla dimension must be >= 1")
    ref = np.zeros((dim_a, dim_a))
    ref[0, 0] = 1
    return DensityMatrix(np.kron(as_density(rho).data, ref))


def dephasing_channel(d: int) -> KrausChannel:
    return KrausChannel(np.stack([np.diag(np.eye(d)[i]) for i in range(d)]).astype(complex), True)


def _group_sizes(n: int, rng: np.random.Generator) -> list[int]:
    cuts = np.sort(rng.choice(np.arange(1, n), size=rng.integers(0, n), replace=False)) if n > 1 else []
    edges = [0, *cuts, n]
    return [b - a for a, b in zip(edges, edges[1:])]


def _column_map(d: int, max_class: int, rng: np.random.Generator) -> np.ndarray:
    for _ in range(200):
        f = rng.integers(0, d, size=d)
        if np.bincount(f, minlength=d).max() <= max_class:
            return f
    return rng.permutation(d)


def random_incoherent_channel(d: int, n_kraus: int, seed=None) -> KrausChannel:
    """Random Kraus set with one nonzero entry per column.

    Kraus operators come in groups sharing a column map ``f``; within a group of
    size M, columns landing on the same row get orthonormal amplitude vectors in
    C^M, which is what completeness needs when columns collide.  Group weights
    are Dirichlet, phases uniform.
    """
    if n_kraus < 1:
        raise ShapeMismatchError("n_kraus must be >= 1")
    rng = as_rng(seed)
    sizes = _group_sizes(n_kraus, rng)
    weights = rng.dirichlet(np.ones(len(sizes)))
    kraus = []
    for size, w in zip(sizes, weights):
        f = _column_map(d, size, rng)
        amps = np.zeros((size, d), dtype=np.complex128)
        for row in np.unique(f):
            cols = np.flatnonzero(f == row)
            g = rng.standard_normal((size, cols.size)) + 1j * rng.standard_normal((size, cols.size))
            q, r = np.linalg.qr(g)
            amps[:, cols] = q * (np.diag(r) / np.abs(np.diag(r)))
        for m in range(size):
            k = np.zeros((d, d), dtype=np.complex128)
            k[f, np.arange(d)] = np.sqrt(w) * amps[m]
            kraus.append(k)
    return validate_icptp(kraus)
