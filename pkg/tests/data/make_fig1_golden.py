"""Regenerate fig1_golden.csv from the fixed-step oracle (not from the production solver).

Run from the repository root:  python tests/data/make_fig1_golden.py
"""
from pathlib import Path

import numpy as np

from fracqm.io.csvio import emit_csv
from fracqm.oracles import oracle_omega, oracle_slope

STEPS = (0.02, 0.01, 0.005)
X = [0.1, 0.3, 0.5, 1.0, 2.0, 3.0, 5.0, 7.0, 10.0]


def main():
    rows = []
    for alpha in (1.1, 1.5, 2.0):
        b, _, trajs = oracle_slope(alpha, steps=STEPS)
        w = oracle_omega(trajs, np.array(X))
        rows += [(alpha, x, float(v)) for x, v in zip(X, w)]
        print(f"alpha={alpha:g} b*={b!r}")
    emit_csv(("alpha", "x", "omega"), rows, Path(__file__).with_name("fig1_golden.csv"))


if __name__ == "__main__":
    main()
