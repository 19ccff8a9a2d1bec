"""Model factories for the example systems.

Three parameterized families, each coupled to a first thermal bath through
raising/lowering channels and to a second bath through a quadrature-like
channel:

* a two-level atom, H = (Omega/2) sigma_z;
* two coupled qubits, H = Omega1 |e><e|_1 + Omega2 |e><e|_2 + J sx_1 sx_2;
* a damped harmonic oscillator, H = omega a^dag a, in a truncated Fock space.

Basis conventions are fixed so matrix dumps are reproducible: the qubit
basis is (|g>, |e>) with the excited state at index 1, the two-qubit basis
is qubit-1 major (|gg>, |ge>, |eg>, |ee>), and the oscillator basis is
|0> .. |cutoff-1>.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .errors import AllRatesZero, InvalidParams
from .liouville import DensityMatrix, DissipationChannel, LindbladModel
from .thermo import mean_occupation

ID2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
# |e><e| - |g><g| in the (|g>, |e>) ordering, so the excited state sits higher.
SIGMA_Z = np.array([[-1.0, 0.0], [0.0, 1.0]], dtype=complex)
SIGMA_PLUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


def destroy(cutoff: int) -> np.ndarray:
    """Truncated annihilation operator, a|n> = sqrt(n)|n-1>.

    The creation operator is its conjugate transpose, so the top Fock level
    is annihilated by a^dag as well; the resulting commutation defect at the
    cutoff is monitored through the tail population.
    """
    if cutoff < 2:
        raise InvalidParams(f"cutoff must be at least 2, got {cutoff}")
    return np.diag(np.sqrt(np.arange(1.0, cutoff)), k=1).astype(complex)


def _check_rates(**values: float) -> None:
    for name, value in values.items():
        if value < 0.0:
            raise InvalidParams(f"{name} must be nonnegative, got {value}")


def _check_positive(**values: float) -> None:
    for name, value in values.items():
        if value <= 0.0:
            raise InvalidParams(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class TwoLevelParams:
    omega: float
    gamma: float
    big_gamma: float
    t1: float
    t2: float

    def __post_init__(self):
        _check_positive(omega=self.omega)
        _check_rates(gamma=self.gamma, big_gamma=self.big_gamma, t1=self.t1, t2=self.t2)


@dataclass(frozen=True)
class CoupledQubitsParams:
    omega1: float
    omega2: float
    j: float
    gamma: float
    big_gamma: float
    t1: float
    t2: float

    def __post_init__(self):
        _check_positive(omega1=self.omega1, omega2=self.omega2)
        _check_rates(gamma=self.gamma, big_gamma=self.big_gamma, t1=self.t1, t2=self.t2)


@dataclass(frozen=True)
class OscillatorParams:
    omega: float
    gamma: float
    big_gamma: float
    t1: float
    t2: float
    cutoff: int

    def __post_init__(self):
        _check_positive(omega=self.omega)
        _check_rates(gamma=self.gamma, big_gamma=self.big_gamma, t1=self.t1, t2=self.t2)
        if self.cutoff < 2:
            raise InvalidParams(f"cutoff must be at least 2, got {self.cutoff}")


def make_two_level(p: TwoLevelParams) -> LindbladModel:
    """Two-level atom with thermal raising/lowering on bath 1 and a sigma_x
    channel on bath 2."""
    nbar1 = mean_occupation(p.t1, p.omega)
    nbar2 = mean_occupation(p.t2, p.omega)
    channels = (
        DissipationChannel(p.gamma * nbar1, SIGMA_PLUS),
        DissipationChannel(p.gamma * (nbar1 + 1.0), SIGMA_MINUS),
        DissipationChannel(p.big_gamma * (2.0 * nbar2 + 1.0), SIGMA_X),
    )
    return LindbladModel(0.5 * p.omega * SIGMA_Z, channels)


def make_coupled_qubits(p: CoupledQubitsParams) -> LindbladModel:
    """Two qubits coupled by J sx_1 sx_2; bath 1 damps qubit 1 thermally,
    bath 2 drives qubit 2 through sigma_x. Occupation factors use each
    qubit's own splitting."""
    nbar1 = mean_occupation(p.t1, p.omega1)
    nbar2 = mean_occupation(p.t2, p.omega2)
    excited = np.diag([0.0, 1.0]).astype(complex)
    h = (
        p.omega1 * np.kron(excited, ID2)
        + p.omega2 * np.kron(ID2, excited)
        + p.j * np.kron(SIGMA_X, SIGMA_X)
    )
    channels = (
        DissipationChannel(p.gamma * (nbar1 + 1.0), np.kron(SIGMA_MINUS, ID2)),
        DissipationChannel(p.gamma * nbar1, np.kron(SIGMA_PLUS, ID2)),
        DissipationChannel(p.big_gamma * (2.0 * nbar2 + 1.0), np.kron(ID2, SIGMA_X)),
    )
    return LindbladModel(h, channels)


def make_damped_oscillator(p: OscillatorParams) -> LindbladModel:
    """Damped oscillator with thermal a/a^dag channels on bath 1 and an
    (a + a^dag) channel on bath 2, truncated at p.cutoff Fock levels."""
    nbar1 = mean_occupation(p.t1, p.omega)
    nbar2 = mean_occupation(p.t2, p.omega)
    a = destroy(p.cutoff)
    ad = a.conj().T
    channels = (
        DissipationChannel(p.gamma * nbar1, ad),
        DissipationChannel(p.gamma * (nbar1 + 1.0), a),
        DissipationChannel(p.big_gamma * (2.0 * nbar2 + 1.0), a + ad),
    )
    return LindbladModel(p.omega * (ad @ a), channels)


def two_level_closed_form(p: TwoLevelParams) -> DensityMatrix:
    """Analytic two-level steady state.

    The populations balance at rho_ee/rho_gg = (up rate)/(down rate) with
    up = gamma nbar1 + Gamma(2 nbar2 + 1) and down = gamma (nbar1 + 1) +
    Gamma(2 nbar2 + 1); coherences decay to zero.
    """
    nbar1 = mean_occupation(p.t1, p.omega)
    nbar2 = mean_occupation(p.t2, p.omega)
    up = p.gamma * nbar1 + p.big_gamma * (2.0 * nbar2 + 1.0)
    down = p.gamma * (nbar1 + 1.0) + p.big_gamma * (2.0 * nbar2 + 1.0)
    if down == 0.0:
        raise AllRatesZero("every dissipation rate vanishes")
    rho_ee = up / (up + down)
    return DensityMatrix(np.diag([1.0 - rho_ee, rho_ee]).astype(complex))


MODEL_KINDS = ("two_level", "coupled_qubits", "oscillator")

# Parameter names accepted by each model kind (beyond t1/t2).
MODEL_PARAM_NAMES: Mapping[str, tuple[str, ...]] = {
    "two_level": ("omega", "gamma", "big_gamma"),
    "coupled_qubits": ("omega1", "omega2", "j", "gamma", "big_gamma"),
    "oscillator": ("omega", "gamma", "big_gamma", "cutoff"),
}


def model_dim(kind: str, params: Mapping[str, float]) -> int:
    """Hilbert-space dimension of a model kind without building it."""
    if kind == "two_level":
        return 2
    if kind == "coupled_qubits":
        return 4
    if kind == "oscillator":
        return int(params.get("cutoff", 100))
    raise InvalidParams(f"unknown model kind '{kind}'")


def build_model(kind: str, params: Mapping[str, float], t1: float, t2: float) -> LindbladModel:
    """Construct a model of the given kind at temperatures (t1, t2)."""
    if kind == "two_level":
        return make_two_level(
            TwoLevelParams(
                omega=params.get("omega", 1.0),
                gamma=params.get("gamma", 0.0),
                big_gamma=params.get("big_gamma", 0.0),
                t1=t1,
                t2=t2,
            )
        )
    if kind == "coupled_qubits":
        return make_coupled_qubits(
            CoupledQubitsParams(
                omega1=params.get("omega1", 1.0),
                omega2=params.get("omega2", 1.0),
                j=params.get("j", 0.0),
                gamma=params.get("gamma", 0.0),
                big_gamma=params.get("big_gamma", 0.0),
                t1=t1,
                t2=t2,
            )
        )
    if kind == "oscillator":
        return make_damped_oscillator(
            OscillatorParams(
                omega=params.get("omega", 1.0),
                gamma=params.get("gamma", 0.0),
                big_gamma=params.get("big_gamma", 0.0),
                t1=t1,
                t2=t2,
                cutoff=int(params.get("cutoff", 100)),
            )
        )
    raise InvalidParams(f"unknown model kind '{kind}'")


def model_family(kind: str, params: Mapping[str, float]) -> Callable[[float, float], LindbladModel]:
    """Temperature-parameterized family (t1, t2) -> LindbladModel."""
    frozen = dict(params)

    def family(t1: float, t2: float) -> LindbladModel:
        return build_model(kind, frozen, t1, t2)

    return family


@dataclass(frozen=True)
class ModelPreset:
    """Named parameter set; temperatures are defaults, overridable."""

    model: str
    params: dict = field(default_factory=dict)
    t1: float = 1.0
    t2: float = 1.0


_QUBIT_PAIR = {"omega1": 1.0, "omega2": 1.0, "j": 0.2, "gamma": 0.2, "big_gamma": 0.3}
_OSC = {"omega": 1.0, "gamma": 0.3, "big_gamma": 0.2, "cutoff": 100}

PRESETS: Mapping[str, ModelPreset] = {
    "fig2": ModelPreset("two_level", {"omega": 1.0, "gamma": 0.2, "big_gamma": 0.3}),
    "fig3": ModelPreset("coupled_qubits", dict(_QUBIT_PAIR)),
    "fig4a": ModelPreset("coupled_qubits", dict(_QUBIT_PAIR), t2=1.5),
    "fig4b": ModelPreset("coupled_qubits", dict(_QUBIT_PAIR), t1=1.5),
    "fig5": ModelPreset("oscillator", dict(_OSC)),
    "fig6a": ModelPreset("oscillator", dict(_OSC)),
    "fig6b": ModelPreset("coupled_qubits", dict(_QUBIT_PAIR)),
    "fig6c": ModelPreset("oscillator", {**_OSC, "big_gamma": 0.0}),
    "fig6d": ModelPreset("coupled_qubits", {**_QUBIT_PAIR, "big_gamma": 0.0}),
    "fig7": ModelPreset("coupled_qubits", dict(_QUBIT_PAIR)),
}
