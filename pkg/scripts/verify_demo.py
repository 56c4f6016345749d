#!/usr/bin/env python3
"""Solve a ground state analytically and certify it with the shooting oracle.

Builds the quantized ground state from the polynomial-truncation condition,
then independently recomputes the eigenvalue and eigenfunction with the
numerical shooting integrator and prints the comparison report.

Usage:
    python3 scripts/verify_demo.py --mass 1 --f 0.2 --l 1 [--nu 0.1]
"""

import argparse

from kgheun import ModelConfig, ground_state_coulomb, ground_state_linear, verify_state


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mass", type=float, default=1.0)
    ap.add_argument("--f", type=float, default=0.2)
    ap.add_argument("--nu", type=float, default=0.0)
    ap.add_argument("--l", type=int, default=1)
    args = ap.parse_args(argv)

    cfg = ModelConfig(mass=args.mass, coulomb_f=args.f,
                      linear_nu=args.nu, angular_l=args.l)
    state = ground_state_linear(cfg) if args.nu else ground_state_coulomb(cfg)
    print(f"analytic: omega = {state.omega:.15g}  energy = {state.energy:.15g}")

    report = verify_state(state)
    print(f"oracle:   energy = {report.oracle_energy:.15g}")
    print(f"energy delta (relative) = {report.energy_delta:.3e}")
    print(f"node count: oracle = {report.node_count_oracle}, "
          f"analytic = {report.node_count_analytic}")
    print(f"wavefunction L2 delta = {report.wavefunction_l2_delta:.3e}")
    print(f"matched = {bool(report.matched)}")
    return 0 if report.matched else 1


if __name__ == "__main__":
    raise SystemExit(main())
