"""Numerical checks of the coherence/entanglement identities and inequalities.

Every check yields a :class:`CheckRecord`.  Slack conventions:

* ``EXACT_SLACK`` (1e-9) when both sides are closed forms,
* ``BOUND_SLACK`` (1e-6) when a roof upper bound is compared with a true lower bound,
* ``ROOF_SLACK`` (1e-4) / ``ROOF_LOOSE_SLACK`` (1e-3) when a roof value is
  claimed equal to (or below) a closed form.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

from .channels import (
    KrausChannel,
    apply_channel,
    attach_ancilla,
    cnot_gate,
    generalized_cnot,
    random_incoherent_channel,
    selective_outcomes,
)
from .convexroof import (
    RoofConfig,
    coherence_concurrence,
    ensemble_value,
    intrinsic_randomness,
    mixed_concurrence_upper,
    reconstruction_error,
)
from .entanglement import pure_concurrence, wootters_concurrence
from .errors import ChannelNotIncoherentError, DimMismatchError
from .measures import (
    EXACT,
    LOWER_BOUND,
    UPPER_BOUND,
    binary_entropy_of_concurrence,
    is_mcs,
    l1_coherence,
    l1_coherence_via_ggm,
    pure_coherence_concurrence,
    pure_intrinsic_randomness,
    qubit_coherence_concurrence,
    relative_entropy_coherence,
)
from .statespace import (
    BipartiteSplit,
    DensityMatrix,
    Ensemble,
    PureState,
    as_density,
    as_pure,
    is_pure,
    mcs_with_phases,
    pure_to_density,
    pure_with_white_noise,
    random_density,
    random_incoherent,
    random_pure,
    top_eigenvector,
)

EXACT_SLACK = 1e-9
BOUND_SLACK = 1e-6
ROOF_SLACK = 1e-4
ROOF_LOOSE_SLACK = 1e-3
# "strictly positive" is encoded as lhs >= POSITIVE_FLOOR with zero slack
POSITIVE_FLOOR = 1e-12

LE, GE, EQ = "<=", ">=", "="


@dataclass(frozen=True)
class CheckRecord:
    check_name: str
    inputs_digest: str
    lhs: float
    rhs: float
    relation: str
    slack: float
    passed: bool
    lhs_certification: str = EXACT
    rhs_certification: str = EXACT
    detail: str = ""

    FIELDS = (
        "check_name",
        "inputs_digest",
        "lhs",
        "rhs",
        "relation",
        "slack",
        "passed",
        "lhs_certification",
        "rhs_certification",
        "detail",
    )

    def row(self) -> list:
        return [getattr(self, f) for f in self.FIELDS]


def holds(lhs: float, rhs: float, relation: str, slack: float) -> bool:
    if relation == LE:
        return lhs <= rhs + slack
    if relation == GE:
        return lhs >= rhs - slack
    if relation == EQ:
        return abs(lhs - rhs) <= slack
    raise ValueError(f"unknown relation {relation!r}")


def check(name, digest, lhs, rhs, relation, slack, lhs_cert=EXACT, rhs_cert=EXACT, detail="") -> CheckRecord:
    lhs, rhs = float(lhs), float(rhs)
    return CheckRecord(
        name, digest, lhs, rhs, relation, slack, holds(lhs, rhs, relation, slack), lhs_cert, rhs_cert, detail
    )


def sort_records(records: Iterable[CheckRecord]) -> list[CheckRecord]:
    return sorted(records, key=lambda r: (r.check_name, r.inputs_digest))


def digest(seed=None, **params) -> str:
    parts = [] if seed is None else [f"seed={seed}"]
    parts += [f"{k}={v}" for k, v in params.items()]
    return ";".join(parts)


def _cnot_output(psi: PureState, dim_a: int) -> PureState:
    v = as_pure(psi).amplitudes
    u = generalized_cnot(v.size, dim_a).kraus[0]
    ref = np.zeros(dim_a)
    ref[0] = 1
    return PureState(u @ np.kron(v, ref))


# --- single checks ----------------------------------------------------------


def verify_proposition(rho: DensityMatrix, tag: str = "") -> CheckRecord:
    return check("proposition", tag, l1_coherence(rho), l1_coherence_via_ggm(rho), EQ, EXACT_SLACK)


def verify_pure_l1_identity(psi: PureState, tag: str = "") -> CheckRecord:
    return check(
        "cc-equals-l1-pure", tag, pure_coherence_concurrence(psi), l1_coherence(pure_to_density(psi)), EQ, 1e-12
    )


def verify_theorem2_pure(psi: PureState, dim_a: int, tag: str = "") -> CheckRecord:
    psi = as_pure(psi)
    out = _cnot_output(psi, dim_a)
    ce = pure_concurrence(out, BipartiteSplit(psi.dim, dim_a))
    return check("theorem2-pure", tag, ce, pure_coherence_concurrence(psi), LE, EXACT_SLACK)


def _exact_or_roof_cc(rho: DensityMatrix, config: RoofConfig) -> tuple[float, str]:
    if rho.dim == 2:
        return qubit_coherence_concurrence(rho), EXACT
    if is_pure(rho):
        return pure_coherence_concurrence(top_eigenvector(rho)), EXACT
    res = coherence_concurrence(rho, config)
    return res.value, EXACT if res.detail.get("certified_optimal") else UPPER_BOUND


def verify_theorem2_channelled(
    rho: DensityMatrix, channel: KrausChannel, config: RoofConfig | None = None, tag: str = ""
) -> CheckRecord:
    """Entanglement produced by an incoherent channel on ``rho (x) |1><1|`` vs ``C(rho)``."""
    config = config or RoofConfig()
    rho = as_density(rho)
    if not channel.incoherent:
        raise ChannelNotIncoherentError("the entanglement bound needs an incoherent channel")
    d = rho.dim
    if channel.dim_in % d or channel.dim_out != channel.dim_in:
        raise DimMismatchError(f"channel of dimension {channel.dim_in} cannot act on S (d={d}) with an ancilla")
    dim_a = channel.dim_in // d
    out = apply_channel(channel, attach_ancilla(rho, dim_a))
    if (d, dim_a) == (2, 2):
        lhs, lhs_cert = wootters_concurrence(out), EXACT
    else:
        lhs, lhs_cert = mixed_concurrence_upper(out, BipartiteSplit(d, dim_a), config).value, UPPER_BOUND
    rhs, rhs_cert = _exact_or_roof_cc(rho, config)
    slack = EXACT_SLACK if lhs_cert == rhs_cert == EXACT else ROOF_LOOSE_SLACK
    return check("theorem2-channelled", tag, lhs, rhs, LE, slack, lhs_cert, rhs_cert)


def verify_corollary2(rho: DensityMatrix, tag: str = "") -> CheckRecord:
    rho = as_density(rho)
    if rho.dim != 2:
        raise DimMismatchError(f"CNOT saturation check needs a qubit, got d={rho.dim}")
    out = apply_channel(cnot_gate(), attach_ancilla(rho, 2))
    return check("corollary2", tag, wootters_concurrence(out), qubit_coherence_concurrence(rho), EQ, EXACT_SLACK)


def theorem3_factor(d: int) -> float:
    return float(np.sqrt(2 / (d * (d - 1))))


def verify_theorem3_pure(psi: PureState, dim_a: int, tag: str = "") -> CheckRecord:
    psi = as_pure(psi)
    if psi.dim < 2:
        raise DimMismatchError("the scaled lower bound needs d >= 2")
    ce = pure_concurrence(_cnot_output(psi, dim_a), BipartiteSplit(psi.dim, dim_a))
    bound = theorem3_factor(psi.dim) * pure_coherence_concurrence(psi)
    return check("theorem3-pure", tag, ce, bound, GE, EXACT_SLACK)


def verify_corollary3(psi: PureState, dim_a: int, tag: str = "") -> CheckRecord:
    """Saturation of the scaled lower bound on a maximally coherent state."""
    psi = as_pure(psi)
    ce = pure_concurrence(_cnot_output(psi, dim_a), BipartiteSplit(psi.dim, dim_a))
    bound = theorem3_factor(psi.dim) * pure_coherence_concurrence(psi)
    detail = "" if is_mcs(psi) else "input is not maximally coherent"
    return check("corollary3", tag, ce, bound, EQ, EXACT_SLACK, detail=detail)


def verify_corollary1(rho: DensityMatrix, config: RoofConfig | None = None, tag: str = "") -> CheckRecord:
    res = coherence_concurrence(rho, config)
    return check("corollary1", tag, res.value, l1_coherence(rho), GE, BOUND_SLACK, UPPER_BOUND, EXACT)


def verify_corollary1_white_noise(
    rho: DensityMatrix, config: RoofConfig | None = None, tag: str = ""
) -> CheckRecord:
    """For a pure state mixed with white noise the roof equals the l1-norm."""
    res = coherence_concurrence(rho, config)
    l1 = l1_coherence(rho)
    rec = check("corollary1-white-noise", tag, res.value, l1, EQ, ROOF_SLACK, UPPER_BOUND, EXACT)
    if res.value < l1 - BOUND_SLACK:
        return replace(rec, passed=False, detail="roof below l1 lower bound")
    return rec


# --- suites ------------------------------------------------------------------


def _stream(seed: int, tag: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), tag]))


def verify_requirements_suite(
    d: int, samples: int, seed: int = 0, config: RoofConfig | None = None
) -> list[CheckRecord]:
    """Sampled checks of the four coherence-measure requirements."""
    config = config or RoofConfig(restarts=2)
    if d < 2:
        raise DimMismatchError("requirements suite needs d >= 2")
    records = []
    for s in range(seed, seed + samples):
        rng = _stream(s, d)
        tag = digest(s, d=d)

        # (C1) vanishing on incoherent states
        delta = random_incoherent(d, rng)
        records.append(check("C1-zero-l1", tag, l1_coherence(delta), 0.0, EQ, 1e-12))
        records.append(check("C1-zero-relent", tag, relative_entropy_coherence(delta), 0.0, EQ, 1e-12))
        cc0 = coherence_concurrence(delta, config).value
        records.append(check("C1-zero-cc", tag, cc0, 0.0, EQ, EXACT_SLACK, UPPER_BOUND))
        ri0 = intrinsic_randomness(delta, config).value
        records.append(check("C1-zero-ri", tag, ri0, 0.0, EQ, EXACT_SLACK, UPPER_BOUND))

        # (C1) positivity on coherent states; the roof also feeds (C4) for mixed states
        rank = int(rng.integers(1, d + 1))
        rho = random_density(d, rank, rng)
        records.append(check("C1-positive-l1", tag, l1_coherence(rho), POSITIVE_FLOOR, GE, 0.0))
        records.append(check("C1-positive-relent", tag, relative_entropy_coherence(rho), POSITIVE_FLOOR, GE, 0.0))
        roof = coherence_concurrence(rho, config)
        # C >= C_l1, so the l1-norm certifies positivity of the roof
        records.append(
            check("C1-positive-cc", tag, l1_coherence(rho), POSITIVE_FLOOR, GE, 0.0, LOWER_BOUND, detail="C >= C_l1")
        )
        records.append(
            check("C1-cc-above-l1", tag, roof.value, l1_coherence(rho), GE, BOUND_SLACK, UPPER_BOUND)
        )

        # (C2a)/(C2b) exact for the l1-norm
        ch = random_incoherent_channel(d, int(rng.integers(1, 5)), rng)
        l1 = l1_coherence(rho)
        records.append(check("C2a-l1", tag, l1_coherence(apply_channel(ch, rho)), l1, LE, EXACT_SLACK))
        outs = selective_outcomes(ch, rho).outcomes
        avg = sum(p * l1_coherence(r) for p, r in outs)
        records.append(check("C2b-l1", tag, avg, l1, LE, EXACT_SLACK))

        # (C2b) for coherence concurrence on pure inputs: every outcome stays pure
        psi = random_pure(d, rng).amplitudes
        avg = 0.0
        for k in ch.kraus:
            phi = k @ psi
            p = float(np.vdot(phi, phi).real)
            if p > 1e-14:
                avg += p * pure_coherence_concurrence(PureState(phi / np.sqrt(p)))
        records.append(check("C2b-cc-pure", tag, avg, pure_coherence_concurrence(PureState(psi)), LE, EXACT_SLACK))
        if d == 2:
            c = qubit_coherence_concurrence(rho)
            records.append(check("C2a-cc-qubit", tag, qubit_coherence_concurrence(apply_channel(ch, rho)), c, LE, EXACT_SLACK))
            avg = sum(p * qubit_coherence_concurrence(r) for p, r in outs)
            records.append(check("C2b-cc-qubit", tag, avg, c, LE, EXACT_SLACK))

        # (C3) merged optimal ensembles of two pure states decompose the mixture
        psi1, psi2 = random_pure(d, rng), random_pure(d, rng)
        w = float(rng.uniform())
        merged = Ensemble([w, 1 - w], [psi1.amplitudes, psi2.amplitudes])
        mixture = DensityMatrix(w * pure_to_density(psi1).data + (1 - w) * pure_to_density(psi2).data)
        err = reconstruction_error(merged, mixture)
        lhs = ensemble_value(merged, "cc")
        rhs = w * pure_coherence_concurrence(psi1) + (1 - w) * pure_coherence_concurrence(psi2)
        independent = coherence_concurrence(mixture, config).value
        rec = check(
            "C3-cc", tag, lhs, rhs, LE, ROOF_SLACK, UPPER_BOUND, EXACT,
            detail=f"independent_roof={independent:.17g}",
        )
        if err > 1e-8:
            rec = replace(rec, passed=False, detail=f"merged ensemble error {err:.3e}")
        records.append(rec)

        # (C4) only maximally coherent states reach d - 1
        top = d - 1
        v = random_pure(d, rng)
        if is_mcs(v):
            records.append(check("C4-pure", tag, l1_coherence(pure_to_density(v)), top, EQ, EXACT_SLACK))
        else:
            records.append(check("C4-pure", tag, pure_coherence_concurrence(v), top - EXACT_SLACK, LE, 0.0))
        mcs = mcs_with_phases(d, rng.uniform(0, 2 * np.pi, d))
        records.append(check("C4-mcs", tag, pure_coherence_concurrence(mcs), top, EQ, EXACT_SLACK))
        if rank >= 2:
            records.append(check("C4-mixed", tag, roof.value, top - EXACT_SLACK, LE, 0.0, UPPER_BOUND))
    return sort_records(records)


@dataclass(frozen=True)
class Table1Report:
    regime: str
    values: dict[str, tuple[float, str]]
    checks: list[CheckRecord]

    def rows(self) -> list[list]:
        return [[name, value, cert] for name, (value, cert) in self.values.items()]


def table1_report(rho: DensityMatrix, config: RoofConfig | None = None, tag: str = "") -> Table1Report:
    """The four coherence measures of ``rho`` and the relations that hold in its regime."""
    config = config or RoofConfig()
    rho = as_density(rho)
    qubit = rho.dim == 2
    pure = is_pure(rho)
    regime = f"{'qubit' if qubit else 'qudit'}-{'pure' if pure else 'mixed'}"
    l1 = l1_coherence(rho)
    relent = relative_entropy_coherence(rho)
    if pure:
        psi = top_eigenvector(rho)
        cc, cc_cert = pure_coherence_concurrence(psi), EXACT
        ri, ri_cert = pure_intrinsic_randomness(psi), EXACT
    else:
        cc, cc_cert = coherence_concurrence(rho, config).value, UPPER_BOUND
        ri, ri_cert = intrinsic_randomness(rho, config).value, UPPER_BOUND
    values = {
        "C": (cc, cc_cert),
        "C_l1": (l1, EXACT),
        "R_I": (ri, ri_cert),
        "C_rel.ent": (relent, EXACT),
    }
    checks = []
    if regime == "qubit-pure":
        checks += [
            check("table1-l1-eq-C", tag, l1, cc, EQ, EXACT_SLACK),
            check("table1-RI-eq-H(C)", tag, ri, binary_entropy_of_concurrence(min(cc, 1.0)), EQ, EXACT_SLACK),
            check("table1-relent-eq-RI", tag, relent, ri, EQ, EXACT_SLACK),
        ]
    elif regime == "qubit-mixed":
        checks += [
            check("table1-l1-eq-C", tag, l1, cc, EQ, ROOF_SLACK, EXACT, cc_cert),
            check(
                "table1-RI-eq-H(C)", tag, ri, binary_entropy_of_concurrence(min(cc, 1.0)),
                EQ, ROOF_LOOSE_SLACK, ri_cert, cc_cert,
            ),
        ]
    elif regime == "qudit-pure":
        checks += [
            check("table1-l1-eq-C", tag, l1, cc, EQ, EXACT_SLACK),
            check("table1-relent-eq-RI", tag, relent, ri, EQ, EXACT_SLACK),
        ]
    else:
        checks.append(check("table1-l1-le-C", tag, l1, cc, LE, BOUND_SLACK, EXACT, cc_cert))
    return Table1Report(regime, values, checks)


SUITES = ("proposition", "thm2", "thm3", "cor1", "cor2", "requirements", "table1")


def run_suite(name: str, d: int, samples: int, seed: int = 0, config: RoofConfig | None = None) -> list[CheckRecord]:
    """Seeded population for one named suite; sample i uses seed ``seed + i``."""
    config = config or RoofConfig()
    records: list[CheckRecord] = []
    if name == "requirements":
        return verify_requirements_suite(d, samples, seed, config)
    for s in range(seed, seed + samples):
        rng = _stream(s, d)
        tag = digest(s, d=d)
        if name == "proposition":
            rho = random_density(d, int(rng.integers(1, d + 1)), rng)
            records.append(verify_proposition(rho, tag))
        elif name == "thm2":
            records.append(verify_theorem2_pure(random_pure(d, rng), d, tag))
            if d == 2:
                ch = random_incoherent_channel(4, int(rng.integers(1, 5)), rng)
                records.append(verify_theorem2_channelled(random_density(2, None, rng), ch, config, tag))
        elif name == "thm3":
            records.append(verify_theorem3_pure(random_pure(d, rng), d, tag))
            records.append(verify_corollary3(mcs_with_phases(d, rng.uniform(0, 2 * np.pi, d)), d, tag))
        elif name == "cor1":
            records.append(verify_corollary1(random_density(d, int(rng.integers(1, d + 1)), rng), config, tag))
            p = float(rng.uniform(0.1, 0.9))
            noisy = pure_with_white_noise(random_pure(d, rng), p)
            records.append(verify_corollary1_white_noise(noisy, config, digest(s, d=d, p=f"{p:.6g}")))
        elif name == "cor2":
            records.append(verify_corollary2(random_density(2, int(rng.integers(1, 3)), rng), digest(s, d=2)))
        elif name == "table1":
            rank = 1 if s % 2 == 0 else int(rng.integers(2, d + 1))
            records.extend(table1_report(random_density(d, rank, rng), config, tag).checks)
        else:
            raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return sort_records(records)
