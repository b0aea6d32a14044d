"""Two-qubit Werner family: Wootters concurrence, roof upper bound, and the closed form.

    python scripts/werner_sweep.py --points 21 --restarts 5 > werner.csv
"""
import argparse
import sys

import numpy as np

from cohconc.convexroof import RoofConfig, mixed_concurrence_upper
from cohconc.entanglement import wootters_concurrence
from cohconc.fileio import csv_text
from cohconc.statespace import BipartiteSplit, validate_density


def werner(p: float):
    bell = np.zeros((4, 4))
    bell[np.ix_([0, 3], [0, 3])] = 0.5
    return validate_density(p * bell + (1 - p) * np.eye(4) / 4)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=11)
    ap.add_argument("--restarts", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    cfg = RoofConfig(restarts=args.restarts, seed=args.seed)
    rows = []
    for p in np.linspace(0, 1, args.points):
        rho = werner(float(p))
        roof = mixed_concurrence_upper(rho, BipartiteSplit(2, 2), cfg).value
        rows.append([float(p), max(0.0, (3 * p - 1) / 2), wootters_concurrence(rho), roof])
    sys.stdout.write(csv_text(["p", "closed_form", "wootters", "roof"], rows))


if __name__ == "__main__":
    main()
