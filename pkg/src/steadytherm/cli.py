"""Command-line front end.

Subcommands: ``steady`` (single solve, JSON dump), ``sweep`` (grid sweep,
CSV), ``populations`` (eigenbasis populations, JSON), ``presets`` (list the
named parameter sets). Exit codes: 0 success, 2 usage or config error,
3 solver error.

Settings are resolved in order: built-in preset values, then config-file
keys, then command-line flags; later wins.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import numkernel
from .errors import ConfigError, InvalidParams, SteadyThermError
from .liouville import apply_rhs
from .models import PRESETS, build_model
from .steady import solve_steady_state
from .sweep import (
    PRESET_SWEEPS,
    SweepSpec,
    parse_axis,
    parse_outputs,
    read_config,
    run_sweep,
    TAIL_TOL,
)
from .thermo import eigenbasis_populations, internal_energy, von_neumann_entropy

_MODEL_FLAGS = ("omega", "omega1", "omega2", "j", "gamma", "big_gamma", "cutoff")


def _add_model_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--preset", help="named parameter set (see the presets subcommand)")
    parser.add_argument(
        "--model", choices=("two_level", "coupled_qubits", "oscillator"), help="model kind"
    )
    parser.add_argument("--omega", type=float, help="level splitting / oscillator frequency")
    parser.add_argument("--omega1", type=float, help="qubit 1 splitting")
    parser.add_argument("--omega2", type=float, help="qubit 2 splitting")
    parser.add_argument("--j", type=float, help="qubit-qubit coupling")
    parser.add_argument("--gamma", type=float, help="bath 1 base rate")
    parser.add_argument("--big-gamma", dest="big_gamma", type=float, help="bath 2 base rate")
    parser.add_argument("--cutoff", type=int, help="oscillator Fock cutoff")
    parser.add_argument("--t1", type=float, help="bath 1 temperature")
    parser.add_argument("--t2", type=float, help="bath 2 temperature")
    parser.add_argument("--config", help="flat key = value config file")
    parser.add_argument("--out", help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steadytherm",
        description="Steady states and thermodynamics of open systems in two thermal baths.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_steady = sub.add_parser("steady", help="solve one steady state, dump JSON")
    _add_model_arguments(p_steady)
    p_steady.set_defaults(func=cmd_steady)

    p_sweep = sub.add_parser("sweep", help="sweep a temperature/coupling grid, write CSV")
    _add_model_arguments(p_sweep)
    p_sweep.add_argument("--axis1", help="first axis, NAME:START:STOP:POINTS")
    p_sweep.add_argument("--axis2", help="optional second axis, NAME:START:STOP:POINTS")
    p_sweep.add_argument("--outputs", help="comma list from U,S,C_T1,C_T2,F_T1,F_T2,populations")
    p_sweep.add_argument("--workers", type=int, default=1, help="parallel solver processes")
    p_sweep.set_defaults(func=cmd_sweep)

    p_pop = sub.add_parser("populations", help="steady-state eigenbasis populations, JSON")
    _add_model_arguments(p_pop)
    p_pop.set_defaults(func=cmd_populations)

    p_presets = sub.add_parser("presets", help="list named presets")
    p_presets.set_defaults(func=cmd_presets)

    return parser


def _merge_settings(args) -> dict:
    """Preset values, then config-file keys, then flags; later wins."""
    cfg = read_config(args.config) if getattr(args, "config", None) else {}
    merged: dict = {}

    preset_name = args.preset if args.preset is not None else cfg.get("preset")
    if preset_name is not None:
        if preset_name not in PRESETS:
            raise InvalidParams(
                f"unknown preset '{preset_name}'; available: {', '.join(sorted(PRESETS))}"
            )
        preset = PRESETS[preset_name]
        merged["model"] = preset.model
        merged.update(preset.params)
        merged["t1"] = preset.t1
        merged["t2"] = preset.t2
        layout = PRESET_SWEEPS[preset_name]
        merged["axis1"] = layout["axis1"]
        merged["axis2"] = layout["axis2"]
        merged["outputs"] = layout["outputs"]

    for key, value in cfg.items():
        if key != "preset":
            merged[key] = value

    for key in ("model", "t1", "t2") + _MODEL_FLAGS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    if getattr(args, "axis1", None) is not None:
        merged["axis1"] = parse_axis(args.axis1)
    if getattr(args, "axis2", None) is not None:
        merged["axis2"] = parse_axis(args.axis2)
    if getattr(args, "outputs", None) is not None:
        merged["outputs"] = parse_outputs(args.outputs)
    if getattr(args, "out", None) is not None:
        merged["out_path"] = args.out
    return merged


def _require(merged: dict, keys: tuple[str, ...], hint: str) -> None:
    missing = [k for k in keys if merged.get(k) is None]
    if missing:
        raise _UsageError(f"missing required setting(s) {', '.join(missing)}; {hint}")


class _UsageError(Exception):
    pass


def _model_params(merged: dict) -> dict:
    return {k: merged[k] for k in _MODEL_FLAGS if k in merged}


def _solve_single(merged: dict):
    _require(merged, ("model",), "pass --model or --preset")
    _require(merged, ("t1", "t2"), "pass --t1/--t2 or use a preset")
    model = build_model(merged["model"], _model_params(merged), merged["t1"], merged["t2"])
    rho = solve_steady_state(model)
    if merged["model"] == "oscillator":
        tail = float(rho.matrix[-1, -1].real)
        if tail > TAIL_TOL:
            print(
                f"warning: top Fock-level population {tail:.3e} exceeds {TAIL_TOL:g}; "
                "increase the cutoff",
                file=sys.stderr,
            )
    return model, rho


def _write_output(merged: dict, text: str) -> None:
    path = merged.get("out_path")
    if path is None:
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")


def cmd_steady(args) -> int:
    merged = _merge_settings(args)
    model, rho = _solve_single(merged)
    residual = numkernel.linf_norm(apply_rhs(model, rho.matrix))
    dump = {
        "model": merged["model"],
        "dim": model.dim,
        "rho": [[float(z.real), float(z.imag)] for z in rho.matrix.reshape(-1)],
        "U": internal_energy(rho, model.hamiltonian),
        "S": von_neumann_entropy(rho),
        "residual": residual,
    }
    _write_output(merged, json.dumps(dump, indent=2))
    return 0


def cmd_populations(args) -> int:
    merged = _merge_settings(args)
    model, rho = _solve_single(merged)
    pops = eigenbasis_populations(rho, model.hamiltonian)
    dump = {
        "model": merged["model"],
        "dim": model.dim,
        "populations": [{"eigenvalue": e, "population": p} for e, p in pops],
    }
    _write_output(merged, json.dumps(dump, indent=2))
    return 0


def cmd_sweep(args) -> int:
    merged = _merge_settings(args)
    _require(merged, ("model",), "pass --model or --preset")
    _require(merged, ("t1", "t2"), "pass --t1/--t2 or use a preset")
    _require(merged, ("axis1",), "pass --axis1 NAME:START:STOP:POINTS or use a preset")
    spec = SweepSpec(
        model=merged["model"],
        params=_model_params(merged),
        t1=merged["t1"],
        t2=merged["t2"],
        axis1=merged["axis1"],
        axis2=merged.get("axis2"),
        outputs=merged.get("outputs", parse_outputs("U,S")),
        out_path=merged.get("out_path"),
    )
    ok, failed = run_sweep(spec, workers=max(1, args.workers))
    if ok == 0:
        print("error: every grid point failed", file=sys.stderr)
        return 3
    if failed:
        print(f"note: {failed} of {ok + failed} grid points failed", file=sys.stderr)
    return 0


def cmd_presets(args) -> int:
    for name in sorted(PRESETS):
        preset = PRESETS[name]
        layout = PRESET_SWEEPS[name]
        params = " ".join(f"{k}={v:g}" for k, v in preset.params.items())
        axes = ",".join(a.name for a in (layout["axis1"], layout["axis2"]) if a is not None)
        outputs = ",".join(sorted(layout["outputs"]))
        print(f"{name:7s} {preset.model:15s} {params}  T1={preset.t1:g} T2={preset.t2:g}  "
              f"axes={axes} outputs={outputs}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (_UsageError, ConfigError, InvalidParams) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SteadyThermError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
