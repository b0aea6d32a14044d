"""Convex-roof minimization over pure-state decompositions.

Every decomposition of a rank-r state ``rho = B B^dag`` (``B`` = eigenvectors
scaled by root eigenvalues, d x r) into m unnormalized vectors is ``W = B X``
for an r x m matrix ``X`` with orthonormal rows.  ``X`` is parameterized by an
unconstrained complex matrix ``A`` through its polar factor
``X = (A A^dag)^{-1/2} A``, and each restart runs L-BFGS on a smoothed
version of the objective while the smoothing is annealed toward zero.  The
reported value is always the exact objective of the returned ensemble, so it
is a certified upper bound on the roof.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .entanglement import wootters_concurrence
from .errors import BadObjectiveError, DimMismatchError, NotIsometryError
from .measures import UPPER_BOUND, l1_coherence, relative_entropy_coherence
from .statespace import (
    BipartiteSplit,
    DensityMatrix,
    Ensemble,
    as_density,
    clipped_eigh,
    ensemble_to_density,
)

PRUNE = 1e-14
LN2 = math.log(2)
SMOOTHING = (1e-2, 1e-4, 1e-6, 1e-8)


@dataclass(frozen=True)
class RoofConfig:
    ensemble_size: int | None = None
    restarts: int = 5
    max_iterations: int = 400
    tolerance: float = 1e-10
    seed: int = 0
    # stop early once the value is this close to a proven lower bound
    certify_gap: float = 1e-9

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be > 0")
        if self.ensemble_size is not None and self.ensemble_size < 1:
            raise ValueError("ensemble_size must be >= 1")


@dataclass(frozen=True)
class RoofResult:
    value: float
    ensemble: Ensemble
    iterations_used: int
    restart_values: list[float]
    best_restart_index: int
    objective: str
    certification: str = UPPER_BOUND
    detail: dict = field(default_factory=dict)


# --- pure-state objectives on unnormalized columns -------------------------
#
# Each objective maps W (d x m, column i = sqrt(p_i) psi_i) to
# sum_i p_i f(psi_i) and, for the smoothed variant, its gradient
# G = df/dRe(W) + i df/dIm(W).


class Objective:
    name = ""

    def exact_terms(self, w: np.ndarray) -> np.ndarray:
        """Per-column p_i f(psi_i)."""
        raise NotImplementedError

    def smoothed(self, w: np.ndarray, eps: float) -> tuple[float, np.ndarray]:
        raise NotImplementedError

    def lower_bound(self, rho: DensityMatrix) -> float:
        return 0.0

    def pure_values(self, states: np.ndarray) -> np.ndarray:
        """f(psi) for unit rows."""
        return self.exact_terms(states.T)


class CoherenceConcurrence(Objective):
    """p C(psi) = (sum_a |w_a|)^2 - sum_a |w_a|^2."""

    name = "coherence-concurrence"

    def exact_terms(self, w):
        mag = np.abs(w)
        return np.clip(mag.sum(axis=0) ** 2 - (mag**2).sum(axis=0), 0, None)

    def smoothed(self, w, eps):
        mag = np.sqrt(np.abs(w) ** 2 + eps * eps)
        s = mag.sum(axis=0)
        value = float((s**2).sum() - (np.abs(w) ** 2).sum())
        grad = 2 * s * w / mag - 2 * w
        return value, grad

    def lower_bound(self, rho):
        return l1_coherence(rho)


class IntrinsicRandomness(Objective):
    """p H(|psi_a|^2), in bits."""

    name = "intrinsic-randomness"

    def exact_terms(self, w):
        q = np.abs(w) ** 2
        p = q.sum(axis=0)
        with np.errstate(divide="ignore", invalid="ignore"):
            ql = np.where(q > 0, q * np.log(np.where(q > 0, q, 1)), 0.0)
            pl = np.where(p > 0, p * np.log(np.where(p > 0, p, 1)), 0.0)
        return np.clip((pl - ql.sum(axis=0)) / LN2, 0, None)

    def smoothed(self, w, eps):
        e2 = eps * eps
        q = np.abs(w) ** 2
        p = q.sum(axis=0)
        qe = q + e2
        pl = np.where(p > 0, p * np.log(np.where(p > 0, p, 1)), 0.0)
        value = float((-(qe * np.log(qe)).sum() + q.size * e2 * math.log(e2) + pl.sum()) / LN2)
        logp = np.log(np.where(p > 0, p, 1))
        grad = 2 * w * (logp - np.log(qe)) / LN2
        return value, grad

    def lower_bound(self, rho):
        return relative_entropy_coherence(rho)


class EntanglementConcurrence(Objective):
    """p C_E(psi) = sqrt(2 (p^2 - tr M^2)), M the unnormalized reduced state of S."""

    name = "entanglement-concurrence"

    def __init__(self, split: BipartiteSplit):
        self.split = split

    def _blocks(self, w):
        m = w.shape[1]
        return w.T.reshape(m, self.split.dim_s, self.split.dim_a)

    def exact_terms(self, w):
        blocks = self._blocks(w)
        sv2 = np.linalg.svd(blocks, compute_uv=False) ** 2
        n = sv2.shape[1]
        cross = np.zeros(sv2.shape[0])
        for a in range(n):
            for b in range(a + 1, n):
                cross += sv2[:, a] * sv2[:, b]
        return 2 * np.sqrt(np.clip(cross, 0, None))

    def smoothed(self, w, eps):
        blocks = self._blocks(w)
        p = np.einsum("mst,mst->m", blocks.conj(), blocks).real
        red = blocks @ blocks.conj().transpose(0, 2, 1)
        u = np.clip(p**2 - np.einsum("mab,mba->m", red, red).real, 0, None)
        root = np.sqrt(2 * u + eps * eps)
        value = float((root - eps).sum())
        gb = 4 * (p[:, None, None] * blocks - red @ blocks) / root[:, None, None]
        return value, gb.reshape(gb.shape[0], -1).T

    def lower_bound(self, rho):
        if (self.split.dim_s, self.split.dim_a) == (2, 2):
            return wootters_concurrence(rho)
        return 0.0


OBJECTIVES = {
    "cc": CoherenceConcurrence,
    "coherence-concurrence": CoherenceConcurrence,
    "ri": IntrinsicRandomness,
    "intrinsic-randomness": IntrinsicRandomness,
    "ce": EntanglementConcurrence,
    "entanglement-concurrence": EntanglementConcurrence,
}


def make_objective(tag: str, split: BipartiteSplit | None = None) -> Objective:
    try:
        cls = OBJECTIVES[tag]
    except KeyError:
        raise BadObjectiveError(f"unknown objective {tag!r}; choose cc, ri or ce") from None
    if cls is EntanglementConcurrence:
        if split is None:
            raise BadObjectiveError("entanglement-concurrence objective needs a bipartite split")
        return cls(split)
    return cls()


# --- ensemble parameterization ---------------------------------------------


def _factor(rho: DensityMatrix) -> np.ndarray:
    """``B`` with ``rho = B B^dag``: eigenvectors times root eigenvalues, rank-truncated."""
    w, v = clipped_eigh(as_density(rho).data)
    keep = w > PRUNE * max(1.0, w.max())
    order = np.argsort(w[keep])[::-1]
    return (v[:, keep] * np.sqrt(w[keep]))[:, order]


def _ensemble_from_columns(w: np.ndarray) -> Ensemble:
    p = np.einsum("ai,ai->i", w.conj(), w).real
    keep = p >= PRUNE
    states = (w[:, keep] / np.sqrt(p[keep])).T
    return Ensemble(p[keep] / p[keep].sum(), states)


def decomposition_from_isometry(rho: DensityMatrix, v) -> Ensemble:
    """Ensemble with unnormalized members ``sum_k conj(V[k, i]) sqrt(l_k) |e_k>``.

    ``V`` is r x m with orthonormal rows, r the rank of ``rho`` and
    ``(l_k, e_k)`` its eigenpairs in decreasing order.
    """
    b = _factor(rho)
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim != 2 or v.shape[0] != b.shape[1]:
        raise NotIsometryError(f"isometry needs {b.shape[1]} rows (the rank), got shape {v.shape}")
    err = np.abs(v @ v.conj().T - np.eye(v.shape[0])).max()
    if err > 1e-10:
        raise NotIsometryError(f"rows are not orthonormal: max |V V^dag - I| = {err:.3e}")
    return _ensemble_from_columns(b @ v.conj())


def _polar(a: np.ndarray):
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    return u @ vh, u, s


def _polar_pullback(a, x, u, s, gx):
    """Gradient wrt ``A`` of f(X(A)) given the gradient ``gx`` wrt ``X``."""
    p_inv = (u / s) @ u.conj().T
    m = p_inv @ gx @ x.conj().T
    # solve P K + K P = M in the eigenbasis of P = u diag(s) u^dag
    mt = u.conj().T @ m @ u
    k = u @ (mt / (s[:, None] + s[None, :])) @ u.conj().T
    return p_inv @ gx - (k + k.conj().T) @ a


def _pack(a):
    return np.concatenate([a.real.ravel(), a.imag.ravel()])


def _unpack(vec, shape):
    n = vec.size // 2
    return (vec[:n] + 1j * vec[n:]).reshape(shape)


def _restart_rng(seed: int, k: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(k)]))


def _run_restart(objective, b, m, config, k):
    r = b.shape[1]
    if k == 0:
        a = np.eye(r, m, dtype=np.complex128)
    else:
        rng = _restart_rng(config.seed, k)
        a = rng.standard_normal((r, m)) + 1j * rng.standard_normal((r, m))
    shape = a.shape
    best_x, _, _ = _polar(a)
    best = float(objective.exact_terms(b @ best_x).sum())
    iterations = 0
    for eps in SMOOTHING:

        def fun(vec, eps=eps):
            aa = _unpack(vec, shape)
            x, u, s = _polar(aa)
            value, gw = objective.smoothed(b @ x, eps)
            gx = b.conj().T @ gw
            return value, _pack(_polar_pullback(aa, x, u, s, gx))

        res = minimize(
            fun,
            _pack(a),
            jac=True,
            method="L-BFGS-B",
            options={"maxiter": config.max_iterations, "ftol": config.tolerance, "gtol": 1e-12},
        )
        iterations += int(res.nit)
        x, _, _ = _polar(_unpack(res.x, shape))
        value = float(objective.exact_terms(b @ x).sum())
        if value < best:
            best, best_x = value, x
        # restart the next stage from the polar factor to keep A well conditioned
        a = x
    return best, best_x, iterations


def default_ensemble_size(d: int, rank: int) -> int:
    return min(rank * rank, d * rank)


def convex_roof_minimize(
    rho: DensityMatrix,
    objective: str | Objective,
    config: RoofConfig | None = None,
    split: BipartiteSplit | None = None,
) -> RoofResult:
    """Lowest average of ``objective`` found over decompositions of ``rho``.

    Restart 0 starts from the spectral decomposition, restart k > 0 from a
    Gaussian matrix drawn from a stream seeded by ``(config.seed, k)``.
    Restarts stop early once the value is within ``config.certify_gap`` of the
    objective's proven lower bound.
    """
    config = config or RoofConfig()
    rho = as_density(rho)
    obj = objective if isinstance(objective, Objective) else make_objective(objective, split)
    if isinstance(obj, EntanglementConcurrence):
        obj.split.check(rho.dim)
    b = _factor(rho)
    d, r = b.shape
    m = config.ensemble_size or default_ensemble_size(d, r)
    if m < r:
        raise DimMismatchError(f"ensemble size {m} is smaller than rank {r}")
    lower = obj.lower_bound(rho)

    if r == 1:
        ens = _ensemble_from_columns(b)
        value = float(np.dot(ens.probabilities, obj.pure_values(ens.states)))
        return RoofResult(value, ens, 0, [value], 0, obj.name, detail={"lower_bound": lower, "rank": 1})

    values, best_x, best_k, total_iter = [], None, 0, 0
    for k in range(config.restarts):
        value, x, iters = _run_restart(obj, b, m, config, k)
        values.append(value)
        total_iter += iters
        if best_x is None or value < values[best_k]:
            best_k, best_x = k, x
        if values[best_k] - lower <= config.certify_gap:
            break

    ens = _ensemble_from_columns(b @ best_x)
    value = float(np.dot(ens.probabilities, obj.pure_values(ens.states)))
    detail = {
        "lower_bound": lower,
        "rank": r,
        "ensemble_size": m,
        "certified_optimal": value - lower <= config.certify_gap,
    }
    return RoofResult(value, ens, total_iter, values, best_k, obj.name, detail=detail)


def coherence_concurrence(rho: DensityMatrix, config: RoofConfig | None = None) -> RoofResult:
    res = convex_roof_minimize(rho, CoherenceConcurrence(), config)
    rho = as_density(rho)
    if rho.dim == 2:
        res.detail["closed_form"] = 2 * abs(rho.data[0, 1])
    return res


def intrinsic_randomness(rho: DensityMatrix, config: RoofConfig | None = None) -> RoofResult:
    from .measures import qubit_intrinsic_randomness

    res = convex_roof_minimize(rho, IntrinsicRandomness(), config)
    rho = as_density(rho)
    if rho.dim == 2:
        res.detail["closed_form"] = qubit_intrinsic_randomness(rho)
    return res


def mixed_concurrence_upper(
    rho: DensityMatrix, split: BipartiteSplit, config: RoofConfig | None = None
) -> RoofResult:
    """Roof upper bound on entanglement concurrence; flagged against Wootters on 2x2."""
    config = config or RoofConfig()
    res = convex_roof_minimize(rho, EntanglementConcurrence(split), config, split)
    if (split.dim_s, split.dim_a) == (2, 2):
        exact = wootters_concurrence(rho)
        res.detail["closed_form"] = exact
        res.detail["exceeds_closed_form"] = res.value - exact > 1e-3
    return res


def ensemble_value(ensemble: Ensemble, objective: str | Objective, split: BipartiteSplit | None = None) -> float:
    """Average objective over an explicit ensemble."""
    obj = objective if isinstance(objective, Objective) else make_objective(objective, split)
    return float(np.dot(ensemble.probabilities, obj.pure_values(ensemble.states)))


def reconstruction_error(ensemble: Ensemble, rho: DensityMatrix) -> float:
    return float(np.abs(ensemble_to_density(ensemble).data - as_density(rho).data).max())
