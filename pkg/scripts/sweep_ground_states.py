#!/usr/bin/env python3
"""Sweep the Coulomb coupling and print ground-state (omega, energy) rows.

For each coupling value f on a grid, solve the ground state of the
Klein-Gordon oscillator with a Coulomb term, and optionally the variant
with an added linear scalar potential, then emit one CSV row per state.

Usage:
    python3 scripts/sweep_ground_states.py --mass 1 --l 1 \
        --f-min 0.05 --f-max 0.4 --points 20 [--nu 0.1] [--out sweep.csv]
"""

import argparse
import csv
import sys

import numpy as np

from kgheun import ModelConfig, ground_state_coulomb, ground_state_linear


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mass", type=float, default=1.0)
    ap.add_argument("--l", type=int, default=1)
    ap.add_argument("--f-min", type=float, default=0.05)
    ap.add_argument("--f-max", type=float, default=0.4)
    ap.add_argument("--points", type=int, default=20)
    ap.add_argument("--nu", type=float, default=0.0,
                    help="linear scalar coupling; 0 selects the pure Coulomb variant")
    ap.add_argument("--out", default=None, help="output CSV path (default: stdout)")
    args = ap.parse_args(argv)

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["variant", "f", "nu", "omega", "energy"])
    for f in np.linspace(args.f_min, args.f_max, args.points):
        cfg = ModelConfig(mass=args.mass, coulomb_f=float(f),
                          linear_nu=args.nu, angular_l=args.l)
        state = ground_state_linear(cfg) if args.nu else ground_state_coulomb(cfg)
        writer.writerow([state.variant, format(float(f), ".17g"), args.nu,
                         format(state.omega, ".17g"), format(state.energy, ".17g")])
    if args.out:
        fh.close()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
