"""Command-line interface.

Single JSON config document or flags; subcommands:

    ground-state   closed-form n = 1 pair (Coulomb or linear variant)
    spectrum       all bound states for n = 1..n_max
    verify         spectrum rows with oracle certification columns
    wavefunction   sampled (rho, R) curve of one state
    sweep          one spectrum per (f, nu) grid point

Output is CSV or JSON, byte-for-byte deterministic for a fixed config;
JSON output embeds the config and can be re-ingested via --config.
Exit codes: 0 success, 1 config error, 2 domain error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any

from .core import Branch, ModelConfig
from .errors import DomainError, KGHeunError, NumericalError
from .oracle import verify_state
from .spectrum import (
    BoundState,
    ground_state_coulomb,
    ground_state_linear,
    solve_frequency,
    solve_frequency_linear,
)
from .wavefunction import build_wavefunction

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DOMAIN = 2
EXIT_NUMERICAL = 3

COMMANDS = ("ground-state", "spectrum", "verify", "wavefunction", "sweep")

BASE_COLUMNS = ("variant", "n", "l", "f", "nu", "omega", "energy", "branch", "method", "residual")
VERIFY_COLUMNS = BASE_COLUMNS + ("oracle_energy", "energy_delta", "nodes", "l2_delta", "matched")


class ConfigError(KGHeunError):
    pass


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def load_config(args: argparse.Namespace) -> dict:
    """Merge --config file (possibly a previous JSON output) with flags."""
    doc: dict = {}
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
        # A previous JSON output embeds its config; accept it directly.
        doc = data.get("config", data) if isinstance(data, dict) else {}
        if not isinstance(doc, dict):
            raise ConfigError("config file must hold a JSON object")
    flag_map = {
        "mass": args.mass,
        "f": args.f,
        "nu": args.nu,
        "l": args.l,
        "branch": args.branch,
        "n_max": args.n_max,
        "omega_max": args.omega_max,
        "format": args.format,
        "out": args.out,
    }
    for key, val in flag_map.items():
        if val is not None:
            doc[key] = val
    if args.command:
        doc["command"] = args.command
    if args.f_grid is not None or args.nu_grid is not None:
        doc.setdefault("grid", {})
        if args.f_grid is not None:
            doc["grid"]["f"] = [float(v) for v in args.f_grid.split(",")]
        if args.nu_grid is not None:
            doc["grid"]["nu"] = [float(v) for v in args.nu_grid.split(",")]

    doc.setdefault("f", 0.0)
    doc.setdefault("nu", 0.0)
    doc.setdefault("l", 0)
    doc.setdefault("branch", "positive")
    doc.setdefault("n_max", 1)
    doc.setdefault("omega_max", 10.0)
    doc.setdefault("format", "csv")
    doc.setdefault("out", None)

    if doc.get("command") not in COMMANDS:
        raise ConfigError(f"command must be one of {COMMANDS}, got {doc.get('command')!r}")
    if "mass" not in doc:
        raise ConfigError("mass is required")
    if doc["format"] not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {doc['format']!r}")
    if doc["command"] == "sweep" and not doc.get("grid"):
        raise ConfigError("sweep requires a grid of f and/or nu values")
    if doc["branch"] not in ("positive", "negative"):
        raise ConfigError(f"branch must be positive or negative, got {doc['branch']!r}")
    return doc


def _model(doc: dict, f: float | None = None, nu: float | None = None) -> ModelConfig:
    return ModelConfig(
        mass=float(doc["mass"]),
        coulomb_f=float(doc["f"] if f is None else f),
        linear_nu=float(doc["nu"] if nu is None else nu),
        angular_l=int(doc["l"]),
        branch=Branch(doc["branch"]),
    )


def _state_row(state: BoundState) -> dict:
    cfg = state.config
    return {
        "variant": state.variant,
        "n": state.n,
        "l": state.l,
        "f": cfg.coulomb_f,
        "nu": cfg.linear_nu,
        "omega": state.omega,
        "energy": state.energy,
        "branch": cfg.branch.value,
        "method": state.method,
        "residual": state.residual,
    }


def _spectrum_states(model: ModelConfig, n_max: int, omega_max: float) -> list[BoundState]:
    states: list[BoundState] = []
    for n in range(1, n_max + 1):
        if model.linear_nu == 0.0:
            states.extend(solve_frequency(model, n, omega_max))
        else:
            states.extend(solve_frequency_linear(model, n, omega_max))
    return states


def _ground_state(model: ModelConfig) -> BoundState:
    if model.linear_nu == 0.0:
        return ground_state_coulomb(model)
    return ground_state_linear(model)


def run(doc: dict) -> str:
    """Execute a validated config document; returns the emitted artifact text."""
    command = doc["command"]
    n_max = int(doc["n_max"])
    omega_max = float(doc["omega_max"])

    if command == "wavefunction":
        model = _model(doc)
        if n_max <= 1:
            state = _ground_state(model)
        else:
            states = _spectrum_states(model, n_max, omega_max)
            states = [s for s in states if s.n == n_max]
            if not states:
                raise DomainError(f"no bound state found at n = {n_max}")
            state = states[0]
        w = build_wavefunction(state)
        meta = {k: (v.value if isinstance(v, Branch) else v) for k, v in _state_row(state).items()}
        if doc["format"] == "json":
            payload = {
                "config": doc,
                "state": meta,
                "samples": [[r, v] for r, v in zip(w.rho.tolist(), w.values.tolist())],
            }
            return json.dumps(payload, sort_keys=True, indent=1) + "\n"
        buf = io.StringIO()
        buf.write("# " + json.dumps(meta, sort_keys=True) + "\n")
        buf.write("rho,R\n")
        for r, v in zip(w.rho, w.values):
            buf.write(f"{_fmt(float(r))},{_fmt(float(v))}\n")
        return buf.getvalue()

    if command == "ground-state":
        model = _model(doc)
        rows = [_state_row(_ground_state(model))]
        columns = BASE_COLUMNS
    elif command == "spectrum":
        model = _model(doc)
        rows = [_state_row(s) for s in _spectrum_states(model, n_max, omega_max)]
        columns = BASE_COLUMNS
    elif command == "verify":
        model = _model(doc)
        rows = []
        for s in _spectrum_states(model, n_max, omega_max):
            rep = verify_state(s)
            row = _state_row(s)
            row.update(
                oracle_energy=rep.oracle_energy,
                energy_delta=rep.energy_delta,
                nodes=rep.node_count_oracle,
                l2_delta=rep.wavefunction_l2_delta,
                matched=rep.matched,
            )
            rows.append(row)
        columns = VERIFY_COLUMNS
    elif command == "sweep":
        grid = doc["grid"]
        f_values = [float(v) for v in grid.get("f", [doc["f"]])]
        nu_values = [float(v) for v in grid.get("nu", [doc["nu"]])]
        points = [(f, nu) for f in f_values for nu in nu_values]
        max_workers = int(os.environ.get("KGH_THREADS", "0")) or min(len(points), os.cpu_count() or 1)

        def one(point):
            f, nu = point
            return [_state_row(s) for s in _spectrum_states(_model(doc, f, nu), n_max, omega_max)]

        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            chunks = list(pool.map(one, points))
        rows = [row for chunk in chunks for row in chunk]
        columns = BASE_COLUMNS
    else:  # pragma: no cover - guarded by load_config
        raise ConfigError(f"unknown command {command!r}")

    if doc["format"] == "json":
        return json.dumps({"config": doc, "rows": rows}, sort_keys=True, indent=1) + "\n"
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(row[c]) for c in columns) + "\n")
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgh",
        description="Quantized (frequency, energy) pairs of the Klein-Gordon "
        "oscillator with Coulomb and linear scalar potentials.",
    )
    parser.add_argument("command", nargs="?", choices=COMMANDS)
    parser.add_argument("--config", help="JSON config file (or a previous JSON output)")
    parser.add_argument("--mass", type=float)
    parser.add_argument("--f", type=float, help="Coulomb strength")
    parser.add_argument("--nu", type=float, help="linear scalar potential strength")
    parser.add_argument("--l", type=int, help="angular momentum quantum number")
    parser.add_argument("--branch", choices=("positive", "negative"))
    parser.add_argument("--n-max", dest="n_max", type=int)
    parser.add_argument("--omega-max", dest="omega_max", type=float)
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--out", help="output path (default stdout)")
    parser.add_argument("--f-grid", help="comma-separated f values for sweep")
    parser.add_argument("--nu-grid", help="comma-separated nu values for sweep")
    return parser


def _emit_error(kind: str, exc: Exception) -> str:
    return json.dumps(
        {"error": {"type": type(exc).__name__, "kind": kind, "message": str(exc)}},
        sort_keys=True,
    ) + "\n"


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = load_config(args)
    except (ConfigError, OSError, json.JSONDecodeError, ValueError) as exc:
        sys.stdout.write(_emit_error("config", exc))
        return EXIT_CONFIG
    try:
        artifact = run(doc)
    except DomainError as exc:
        sys.stdout.write(_emit_error("domain", exc))
        return EXIT_DOMAIN
    except NumericalError as exc:
        sys.stdout.write(_emit_error("numerical", exc))
        return EXIT_NUMERICAL
    if doc.get("out"):
        with open(doc["out"], "w") as fh:
            fh.write(artifact)
    else:
        sys.stdout.write(artifact)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
