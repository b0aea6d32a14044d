"""Generalized Gell-Mann matrices, the d^2 - 1 generators of SU(d).

Indices are 1-based, as in ``symmetric_ggm(d, j, k)`` with ``1 <= j < k <= d``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import IndexOrderError, IndexOutOfRangeError

SYMMETRIC = "symmetric"
ANTISYMMETRIC = "antisymmetric"
DIAGONAL = "diagonal"


@dataclass(frozen=True, eq=False)
class GellMannOperator:
    dim: int
    kind: str
    indices: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def _check_pair(d: int, j: int, k: int) -> None:
    if not (1 <= j < k <= d):
        raise IndexOrderError(f"need 1 <= j < k <= d, got j={j}, k={k}, d={d}")


def symmetric_ggm(d: int, j: int, k: int) -> GellMannOperator:
    _check_pair(d, j, k)
    m = np.zeros((d, d), dtype=np.complex128)
    m[j - 1, k - 1] = m[k - 1, j - 1] = 1
    return GellMannOperator(d, SYMMETRIC, (j, k), m)


def antisymmetric_ggm(d: int, j: int, k: int) -> GellMannOperator:
    _check_pair(d, j, k)
    m = np.zeros((d, d), dtype=np.complex128)
    m[j - 1, k - 1] = -1j
    m[k - 1, j - 1] = 1j
    return GellMannOperator(d, ANTISYMMETRIC, (j, k), m)


def diagonal_ggm(d: int, l: int) -> GellMannOperator:
    if not 1 <= l <= d - 1:
        raise IndexOutOfRangeError(f"need 1 <= l <= d-1, got l={l}, d={d}")
    diag = np.zeros(d)
    diag[:l] = 1
    diag[l] = -l
    m = np.sqrt(2 / (l * (l + 1))) * np.diag(diag)
    return GellMannOperator(d, DIAGONAL, (l,), m.astype(np.complex128))


def symmetric_pairs(d: int) -> list[tuple[int, int]]:
    """1-based (j, k) pairs with j < k in lexicographic order."""
    return list(combinations(range(1, d + 1), 2))


def ggm_basis(d: int) -> list[GellMannOperator]:
    """All generators: symmetric pairs, then antisymmetric pairs, then diagonal by l."""
    if d < 2:
        raise IndexOutOfRangeError(f"SU(d) generators need d >= 2, got {d}")
    pairs = symmetric_pairs(d)
    return (
        [symmetric_ggm(d, j, k) for j, k in pairs]
        + [antisymmetric_ggm(d, j, k) for j, k in pairs]
        + [diagonal_ggm(d, l) for l in range(1, d)]
    )


def ggm_coefficients(h: np.ndarray) -> np.ndarray:
    """Expansion coefficients ``tr(h G) / 2`` of a traceless Hermitian ``h``."""
    h = np.asarray(h)
    return np.array([np.trace(h @ g.matrix).real / 2 for g in ggm_basis(h.shape[0])])


def from_ggm_coefficients(coeffs, d: int) -> np.ndarray:
    return sum(c * g.matrix for c, g in zip(coeffs, ggm_basis(d)))
