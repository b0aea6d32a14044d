"""Coherence of a qudit versus the entanglement a generalized CNOT creates from it.

For random pure states and maximally coherent states of each dimension, prints
C(psi), C_E of the output, and the ratio C_E / C, which should lie between
sqrt(2/(d(d-1))) and 1.

    python scripts/conversion_experiment.py --dims 2 3 4 5 --samples 200
"""
import argparse
import sys

import numpy as np

from cohconc.fileio import csv_text
from cohconc.statespace import maximally_coherent_state, random_pure
from cohconc.theorems import theorem3_factor, verify_theorem2_pure


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4, 5, 6])
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    rows = []
    for d in args.dims:
        states = [("mcs", maximally_coherent_state(d))]
        states += [("random", random_pure(d, rng)) for _ in range(args.samples)]
        ratios = []
        for kind, psi in states:
            rec = verify_theorem2_pure(psi, d)
            ratio = rec.lhs / rec.rhs if rec.rhs > 0 else float("nan")
            if kind == "mcs":
                mcs_ratio = ratio
            else:
                ratios.append(ratio)
        rows.append([d, theorem3_factor(d), mcs_ratio, float(np.min(ratios)), float(np.max(ratios))])
    header = ["d", "lower_factor", "mcs_ratio", "min_ratio_random", "max_ratio_random"]
    sys.stdout.write(csv_text(header, rows))


if __name__ == "__main__":
    main()
