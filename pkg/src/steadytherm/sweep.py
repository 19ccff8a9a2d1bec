"""Parameter sweeps over temperature/coupling grids with CSV output.

Grid points are independent solves, so they parallelize across processes;
results are merged in row-major grid order, which makes the CSV
byte-identical across runs and worker counts. A failed point leaves its
output fields empty and emits a warning instead of aborting the sweep.

CSV schema: header ``model,T1,T2,J,U,S,C_T1,C_T2,F_gibbs_T1,F_gibbs_T2``
plus ``p1..pN`` when populations are requested; 12 significant digits,
LF line endings, UTF-8.
"""

from __future__ import annotations

import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Mapping, TextIO

import numpy as np

from .errors import ConfigError, InvalidParams, SteadyThermError
from .models import PRESETS, MODEL_KINDS, build_model, model_dim, model_family
from .steady import solve_steady_state
from .thermo import (
    eigenbasis_populations,
    gibbs_state,
    internal_energy,
    specific_heat,
    uhlmann_fidelity,
    von_neumann_entropy,
)

AXIS_NAMES = ("T1", "T2", "J")
OUTPUT_NAMES = ("U", "S", "C_T1", "C_T2", "F_T1", "F_T2", "populations")
BASE_COLUMNS = ("model", "T1", "T2", "J", "U", "S", "C_T1", "C_T2", "F_gibbs_T1", "F_gibbs_T2")

# Fock tail population above this means the cutoff is too small to trust.
TAIL_TOL = 1e-6

_PARAM_KEYS = ("omega", "omega1", "omega2", "j", "gamma", "big_gamma", "cutoff")
CONFIG_KEYS = ("model", "preset") + _PARAM_KEYS + ("t1", "t2", "axis1", "axis2", "outputs", "out_path")


@dataclass(frozen=True)
class Axis:
    """One sweep axis: evenly spaced values of T1, T2, or J."""

    name: str
    start: float
    stop: float
    points: int

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise InvalidParams(f"axis name must be one of {AXIS_NAMES}, got '{self.name}'")
        if self.points < 2:
            raise InvalidParams(f"axis needs at least 2 points, got {self.points}")
        if not self.start < self.stop:
            raise InvalidParams(f"axis start {self.start} must be below stop {self.stop}")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepSpec:
    """A sweep: model family, base temperatures, one or two axes, outputs."""

    model: str
    params: dict
    t1: float
    t2: float
    axis1: Axis
    axis2: Axis | None
    outputs: frozenset
    out_path: str | None = None

    def __post_init__(self):
        if self.model not in MODEL_KINDS:
            raise InvalidParams(f"unknown model '{self.model}'")
        unknown = set(self.outputs) - set(OUTPUT_NAMES)
        if unknown:
            raise InvalidParams(f"unknown outputs {sorted(unknown)}; choose from {OUTPUT_NAMES}")
        for axis in self.axes():
            if axis.name == "J" and self.model != "coupled_qubits":
                raise InvalidParams("the J axis applies only to the coupled_qubits model")
        names = [axis.name for axis in self.axes()]
        if len(set(names)) != len(names):
            raise InvalidParams("axis1 and axis2 must sweep different quantities")

    def axes(self) -> tuple[Axis, ...]:
        return (self.axis1,) if self.axis2 is None else (self.axis1, self.axis2)


def parse_axis(text: str) -> Axis:
    """Parse 'NAME:START:STOP:POINTS' into an Axis."""
    parts = text.split(":")
    if len(parts) != 4:
        raise InvalidParams(f"axis must look like NAME:START:STOP:POINTS, got '{text}'")
    name, start, stop, points = parts
    try:
        return Axis(name.strip(), float(start), float(stop), int(points))
    except ValueError as exc:
        raise InvalidParams(f"malformed axis '{text}': {exc}") from exc


def parse_outputs(text: str) -> frozenset:
    names = [tok.strip() for tok in text.split(",") if tok.strip()]
    for tok in names:
        if tok not in OUTPUT_NAMES:
            raise InvalidParams(f"unknown output '{tok}'; choose from {OUTPUT_NAMES}")
    return frozenset(names)


def read_config(path: str) -> dict:
    """Read a flat 'key = value' config file with '#' comments.

    Returns a dict keyed by config key; values are already parsed (floats,
    Axis, frozenset of outputs, or strings). Unknown keys and malformed
    values raise ConfigError naming the offending line.
    """
    values: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, _, text = line.partition("=")
            key = key.strip()
            text = text.strip()
            if key not in CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key '{key}'")
            try:
                if key in ("model", "preset", "out_path"):
                    values[key] = text
                elif key in ("axis1", "axis2"):
                    values[key] = parse_axis(text)
                elif key == "outputs":
                    values[key] = parse_outputs(text)
                elif key == "cutoff":
                    values[key] = int(text)
                else:
                    values[key] = float(text)
            except (InvalidParams, ValueError) as exc:
                raise ConfigError(f"{path}:{lineno}: malformed value for '{key}': {exc}") from exc
    if "model" in values and values["model"] not in MODEL_KINDS:
        raise ConfigError(f"{path}: unknown model '{values['model']}'")
    if "preset" in values and values["preset"] not in PRESETS:
        raise ConfigError(f"{path}: unknown preset '{values['preset']}'")
    return values


# Default sweep layout per preset: the axes and outputs behind each figure.
PRESET_SWEEPS: Mapping[str, dict] = {
    "fig2": {
        "axis1": Axis("T1", 0.05, 10.0, 50),
        "axis2": Axis("T2", 0.05, 10.0, 50),
        "outputs": parse_outputs("U,S,C_T1,C_T2"),
    },
    "fig3": {
        "axis1": Axis("T1", 0.05, 10.0, 50),
        "axis2": Axis("T2", 0.05, 10.0, 50),
        "outputs": parse_outputs("C_T1,C_T2"),
    },
    "fig4a": {
        "axis1": Axis("T1", 0.05, 10.0, 50),
        "axis2": Axis("J", 0.0, 3.0, 50),
        "outputs": parse_outputs("C_T1,C_T2"),
    },
    "fig4b": {
        "axis1": Axis("T2", 0.05, 10.0, 50),
        "axis2": Axis("J", 0.0, 3.0, 50),
        "outputs": parse_outputs("C_T1,C_T2"),
    },
    "fig5": {
        "axis1": Axis("T1", 0.05, 5.0, 50),
        "axis2": Axis("T2", 0.05, 5.0, 50),
        "outputs": parse_outputs("U,S,C_T1,C_T2"),
    },
    "fig6a": {
        "axis1": Axis("T1", 1.0, 50.0, 25),
        "axis2": Axis("T2", 1.0, 50.0, 25),
        "outputs": parse_outputs("F_T1,F_T2"),
    },
    "fig6b": {
        "axis1": Axis("T1", 1.0, 50.0, 25),
        "axis2": Axis("T2", 1.0, 50.0, 25),
        "outputs": parse_outputs("F_T1,F_T2"),
    },
    "fig6c": {
        "axis1": Axis("T1", 0.05, 5.0, 25),
        "axis2": None,
        "outputs": parse_outputs("F_T1"),
    },
    "fig6d": {
        "axis1": Axis("T1", 0.05, 5.0, 25),
        "axis2": None,
        "outputs": parse_outputs("F_T1"),
    },
    "fig7": {
        "axis1": Axis("T2", 0.05, 10.0, 50),
        "axis2": None,
        "outputs": parse_outputs("populations"),
    },
}


def spec_from_preset(name: str) -> SweepSpec:
    """Default SweepSpec for a named preset."""
    if name not in PRESETS:
        raise InvalidParams(f"unknown preset '{name}'; available: {', '.join(sorted(PRESETS))}")
    preset = PRESETS[name]
    layout = PRESET_SWEEPS[name]
    return SweepSpec(
        model=preset.model,
        params=dict(preset.params),
        t1=preset.t1,
        t2=preset.t2,
        axis1=layout["axis1"],
        axis2=layout["axis2"],
        outputs=layout["outputs"],
    )


def grid_points(spec: SweepSpec) -> list[tuple[float, float, float]]:
    """(t1, t2, j) per grid point, in row-major axis order."""
    base = {"T1": spec.t1, "T2": spec.t2, "J": float(spec.params.get("j", 0.0))}
    points = []
    outer = spec.axis1.values()
    inner = spec.axis2.values() if spec.axis2 is not None else [None]
    for x in outer:
        for y in inner:
            coord = dict(base)
            coord[spec.axis1.name] = float(x)
            if spec.axis2 is not None:
                coord[spec.axis2.name] = float(y)
            points.append((coord["T1"], coord["T2"], coord["J"]))
    return points


def _format(value: float) -> str:
    return f"{value:.12g}"


def header_columns(spec: SweepSpec) -> list[str]:
    columns = list(BASE_COLUMNS)
    if "populations" in spec.outputs:
        columns += [f"p{i + 1}" for i in range(model_dim(spec.model, spec.params))]
    return columns


def evaluate_point(
    task: tuple[SweepSpec, float, float, float],
) -> tuple[list[str], str | None, str | None]:
    """Solve one grid point.

    Returns (csv fields, error message or None, warning or None). On error
    the coordinate fields are kept and the output fields left empty.
    """
    spec, t1, t2, j = task
    params = dict(spec.params)
    if spec.model == "coupled_qubits":
        params["j"] = j
    coords = [spec.model, _format(t1), _format(t2), _format(j)]
    try:
        model = build_model(spec.model, params, t1, t2)
        rho = solve_steady_state(model)
        warning = None
        if spec.model == "oscillator":
            tail = float(rho.matrix[-1, -1].real)
            if tail > TAIL_TOL:
                warning = (
                    f"grid point (T1={t1:g}, T2={t2:g}): top Fock-level population "
                    f"{tail:.3e} exceeds {TAIL_TOL:g}; increase the cutoff"
                )
        fields = list(coords)
        fields.append(_format(internal_energy(rho, model.hamiltonian)) if "U" in spec.outputs else "")
        fields.append(_format(von_neumann_entropy(rho)) if "S" in spec.outputs else "")
        family = model_family(spec.model, params)
        fields.append(_format(specific_heat(family, 1, t1, t2)) if "C_T1" in spec.outputs else "")
        fields.append(_format(specific_heat(family, 2, t1, t2)) if "C_T2" in spec.outputs else "")
        fields.append(
            _format(uhlmann_fidelity(rho, gibbs_state(model.hamiltonian, t1)))
            if "F_T1" in spec.outputs
            else ""
        )
        fields.append(
            _format(uhlmann_fidelity(rho, gibbs_state(model.hamiltonian, t2)))
            if "F_T2" in spec.outputs
            else ""
        )
        if "populations" in spec.outputs:
            fields += [_format(p) for _, p in eigenbasis_populations(rho, model.hamiltonian)]
        return fields, None, warning
    except SteadyThermError as exc:
        message = f"grid point (T1={t1:g}, T2={t2:g}, J={j:g}) failed: {type(exc).__name__}: {exc}"
        fields = coords + [""] * (len(header_columns(spec)) - 4)
        return fields, message, None


def run_sweep(
    spec: SweepSpec,
    workers: int = 1,
    stream: TextIO | None = None,
    warn_stream: TextIO | None = None,
) -> tuple[int, int]:
    """Run the sweep and write CSV rows to ``stream`` (or spec.out_path).

    Returns (succeeded, failed) point counts. Rows appear in row-major grid
    order regardless of worker scheduling.
    """
    warn = warn_stream if warn_stream is not None else sys.stderr
    tasks = [(spec, t1, t2, j) for t1, t2, j in grid_points(spec)]
    if workers > 1 and len(tasks) > 1:
        chunk = max(1, len(tasks) // (8 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(evaluate_point, tasks, chunksize=chunk))
    else:
        results = [evaluate_point(task) for task in tasks]

    close_me = None
    if stream is None:
        if spec.out_path is None:
            stream = sys.stdout
        else:
            close_me = open(spec.out_path, "w", encoding="utf-8", newline="\n")
            stream = close_me
    try:
        stream.write(",".join(header_columns(spec)) + "\n")
        ok = failed = 0
        for fields, message, warning in results:
            stream.write(",".join(fields) + "\n")
            if message is None:
                ok += 1
            else:
                failed += 1
                print(f"warning: {message}", file=warn)
            if warning is not None:
                print(f"warning: {warning}", file=warn)
        return ok, failed
    finally:
        if close_me is not None:
            close_me.close()
