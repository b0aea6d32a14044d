"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 bad input or usage.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import fileio
from .channels import apply_channel, selective_outcomes
from .convexroof import RoofConfig, convex_roof_minimize
from .entanglement import pure_concurrence, pure_concurrence_determinant_form, wootters_concurrence
from .errors import BadParamsError, CoherenceError
from .gellmann import antisymmetric_ggm, diagonal_ggm, symmetric_ggm
from .measures import measure_report
from .statespace import (
    BipartiteSplit,
    PureState,
    maximally_coherent_state,
    mcs_with_phases,
    pure_to_density,
    random_density,
    random_incoherent,
    random_pure,
)
from .theorems import SUITES, CheckRecord, run_suite, table1_report

U64_MAX = 2**64 - 1


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v <= U64_MAX:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text}")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # report usage errors through run() so they land on the caller's stream as one line
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument(
        "--tol", type=_positive_float, default=None,
        help="state validation tolerance (default 1e-8); for `roof`, the optimizer tolerance (default 1e-10)",
    )
    common.add_argument("--out", default=None, help="output path (default: standard output)")

    parser = _Parser(prog="cohconc", description="Coherence concurrence toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", parents=[common], help="closed-form coherence measure")
    p.add_argument("--state", required=True)
    p.add_argument("--measure", required=True, choices=["l1", "relent", "cc-pure", "ri-pure", "qubit-cc", "qubit-ri"])

    p = sub.add_parser("roof", parents=[common], help="convex-roof upper bound")
    p.add_argument("--state", required=True)
    p.add_argument("--objective", required=True, choices=["cc", "ri", "ce"])
    p.add_argument("--split", default=None, help="dS,dA (needed for ce)")
    p.add_argument("--restarts", type=_positive, default=5)
    p.add_argument("--ensemble-size", type=_positive, default=None)

    p = sub.add_parser("entangle", parents=[common], help="entanglement concurrence")
    p.add_argument("--state", required=True)
    p.add_argument("--split", required=True)
    p.add_argument("--wootters", action="store_true")

    p = sub.add_parser("channel", parents=[common], help="apply a Kraus channel")
    p.add_argument("--channel", required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--selective", action="store_true")
    p.add_argument("--outcome-dir", default=None, help="where selective outcome states are written")

    p = sub.add_parser("ggm", parents=[common], help="print a generalized Gell-Mann matrix")
    p.add_argument("--dim", type=_positive, required=True)
    p.add_argument("--kind", required=True, choices=["symmetric", "antisymmetric", "diagonal"])
    p.add_argument("--j", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)

    p = sub.add_parser("random", parents=[common], help="generate a state file")
    p.add_argument("--kind", required=True, choices=["pure", "density", "incoherent", "mcs"])
    p.add_argument("--dim", type=_positive, required=True)
    p.add_argument("--rank", type=_positive, default=None)
    p.add_argument("--theta", type=float, nargs="+", default=None, help="phases for --kind mcs")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--dim", type=_positive, default=2)
    p.add_argument("--samples", type=_positive, default=20)
    p.add_argument("--restarts", type=_positive, default=5)

    p = sub.add_parser("table1", parents=[common], help="all four coherence measures and their relations")
    p.add_argument("--state", required=True)
    p.add_argument("--restarts", type=_positive, default=5)
    return parser


def _read_state(args):
    return fileio.read_state(args.state, args.tol or 1e-8)


def _split(text: str | None) -> BipartiteSplit | None:
    if text is None:
        return None
    try:
        return BipartiteSplit.parse(text)
    except ValueError as exc:
        raise BadParamsError(f"bad --split {text!r}: {exc}") from None


def cmd_measure(args) -> tuple[str, int]:
    rep = measure_report(args.measure, _read_state(args))
    return fileio.csv_text(["measure", "value", "certification"], [[rep.measure, rep.value, rep.certification]]), 0


def cmd_roof(args) -> tuple[str, int]:
    split = _split(args.split)
    if args.objective == "ce" and split is None:
        raise BadParamsError("--objective ce needs --split dS,dA")
    config = RoofConfig(
        ensemble_size=args.ensemble_size, restarts=args.restarts, tolerance=args.tol or 1e-10, seed=args.seed
    )
    state = _read_state(args)
    res = convex_roof_minimize(state, args.objective, config, split)
    header = ["objective", "value", "certification", "restarts", "best_restart_index"]
    row = [args.objective, res.value, res.certification, len(res.restart_values), res.best_restart_index]
    return fileio.csv_text(header, [row]), 0


def cmd_entangle(args) -> tuple[str, int]:
    split = _split(args.split)
    state = _read_state(args)
    rows = []
    if isinstance(state, PureState):
        rows.append(["pure", pure_concurrence(state, split)])
        rows.append(["determinant", pure_concurrence_determinant_form(state, split)])
        state = pure_to_density(state)
    elif not args.wootters:
        raise BadParamsError("mixed states need --wootters (2x2 only) or the roof subcommand")
    if args.wootters:
        if (split.dim_s, split.dim_a) != (2, 2):
            raise BadParamsError("--wootters needs --split 2,2")
        split.check(state.dim)
        rows.append(["wootters", wootters_concurrence(state)])
    return fileio.csv_text(["form", "value"], rows), 0


def cmd_channel(args) -> tuple[str, int]:
    ch = fileio.read_channel(args.channel)
    state = _read_state(args)
    if isinstance(state, PureState):
        state = pure_to_density(state)
    if not args.selective:
        return fileio.dump_state(apply_channel(ch, state)), 0
    if args.outcome_dir is not None:
        outdir = Path(args.outcome_dir)
    elif args.out is not None:
        outdir = Path(args.out).parent
    else:
        outdir = Path(".")
    outdir.mkdir(parents=True, exist_ok=True)
    rows = []
    for n, (p, rho) in enumerate(selective_outcomes(ch, state).outcomes):
        path = outdir / f"outcome_{n}.json"
        path.write_text(fileio.dump_state(rho), encoding="utf-8", newline="\n")
        rows.append([p, str(path)])
    return fileio.csv_text(["p", "state_file"], rows), 0


def cmd_ggm(args) -> tuple[str, int]:
    if args.kind == "diagonal":
        if args.l is None:
            raise BadParamsError("--kind diagonal needs --l")
        g = diagonal_ggm(args.dim, args.l)
    else:
        if args.j is None or args.k is None:
            raise BadParamsError(f"--kind {args.kind} needs --j and --k")
        g = (symmetric_ggm if args.kind == "symmetric" else antisymmetric_ggm)(args.dim, args.j, args.k)
    return fileio.dump_matrix(g.matrix, kind="ggm", type=g.kind, indices=list(g.indices)), 0


def cmd_random(args) -> tuple[str, int]:
    d = args.dim
    if args.theta is not None and args.kind != "mcs":
        raise BadParamsError("--theta only applies to --kind mcs")
    if args.rank is not None and args.kind != "density":
        raise BadParamsError("--rank only applies to --kind density")
    if args.kind == "pure":
        state = random_pure(d, args.seed)
    elif args.kind == "density":
        state = random_density(d, args.rank, args.seed)
    elif args.kind == "incoherent":
        state = random_incoherent(d, args.seed)
    elif args.theta is None:
        state = maximally_coherent_state(d)
    else:
        if len(args.theta) != d:
            raise BadParamsError(f"--theta needs {d} phases, got {len(args.theta)}")
        state = mcs_with_phases(d, np.array(args.theta))
    return fileio.dump_state(state), 0


def _records_csv(records: list[CheckRecord]) -> str:
    return fileio.csv_text(CheckRecord.FIELDS, [r.row() for r in records])


def cmd_verify(args) -> tuple[str, int]:
    config = RoofConfig(restarts=args.restarts, seed=args.seed)
    records = run_suite(args.suite, args.dim, args.samples, args.seed, config)
    return _records_csv(records), 0 if all(r.passed for r in records) else 1


TABLE1_HEADER = ["regime", "item", "value", "reference", "relation", "slack", "certification", "passed"]


def cmd_table1(args) -> tuple[str, int]:
    config = RoofConfig(restarts=args.restarts, seed=args.seed)
    rep = table1_report(_read_state(args), config)
    rows = [[rep.regime, name, value, "", "", "", cert, ""] for name, (value, cert) in rep.values.items()]
    for c in rep.checks:
        cert = f"{c.lhs_certification}/{c.rhs_certification}"
        rows.append([rep.regime, c.check_name, c.lhs, c.rhs, c.relation, c.slack, cert, c.passed])
    return fileio.csv_text(TABLE1_HEADER, rows), 0 if all(c.passed for c in rep.checks) else 1


COMMANDS = {
    "measure": cmd_measure,
    "roof": cmd_roof,
    "entangle": cmd_entangle,
    "channel": cmd_channel,
    "ggm": cmd_ggm,
    "random": cmd_random,
    "verify": cmd_verify,
    "table1": cmd_table1,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        text, code = COMMANDS[args.command](args)
        fileio.write_text(text, args.out, stdout)
    except (CoherenceError, OSError, ValueError) as exc:
        print(f"cohconc {args.command}: error: {exc}", file=stderr)
        return 2
    return code


def main() -> None:
    sys.exit(run())
