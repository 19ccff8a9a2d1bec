import numpy as np
import pytest

from steadytherm import (
    DensityMatrix,
    NonUniqueSteadyState,
    NotConverged,
    apply_rhs,
    build_superoperator,
    make_coupled_qubits,
    make_damped_oscillator,
    make_two_level,
    propagate,
    propagate_to_steady,
    solve_steady_state,
    trace_distance,
    two_level_closed_form,
    vectorize,
)
from steadytherm.models import CoupledQubitsParams, OscillatorParams, TwoLevelParams, destroy
from steadytherm.numkernel import linf_norm
from steadytherm.steady import default_t_max, default_time_step

from conftest import random_density_matrix


def zoo_models_at(t1, t2, cutoff=10):
    return [
        make_two_level(TwoLevelParams(omega=1.0, gamma=0.2, big_gamma=0.3, t1=t1, t2=t2)),
        make_coupled_qubits(
            CoupledQubitsParams(omega1=1.0, omega2=1.0, j=0.2, gamma=0.2, big_gamma=0.3, t1=t1, t2=t2)
        ),
        make_damped_oscillator(
            OscillatorParams(omega=1.0, gamma=0.3, big_gamma=0.2, t1=t1, t2=t2, cutoff=cutoff)
        ),
    ]


class TestSolveSteadyState:
    def test_two_level_closed_form(self):
        p = TwoLevelParams(omega=1.0, gamma=0.2, big_gamma=0.3, t1=1.0, t2=1.0)
        rho = solve_steady_state(make_two_level(p))
        assert rho.matrix[1, 1].real == pytest.approx(0.4422353553424988, abs=1e-12)
        # Coherences vanish in the steady state of this model.
        assert abs(rho.matrix[0, 1]) <= 1e-14

    def test_single_bath_detailed_balance(self):
        # Gamma = 0 leaves one thermal bath; the population ratio is the
        # Boltzmann factor exp(-Omega/T1).
        for t1 in (0.5, 1.0, 3.0):
            p = TwoLevelParams(omega=1.0, gamma=0.2, big_gamma=0.0, t1=t1, t2=1.0)
            rho = solve_steady_state(make_two_level(p))
            ratio = rho.matrix[1, 1].real / rho.matrix[0, 0].real
            assert ratio == pytest.approx(np.exp(-1.0 / t1), rel=1e-12)

    def test_oscillator_thermalizes_without_second_bath(self):
        p = OscillatorParams(omega=1.0, gamma=0.3, big_gamma=0.0, t1=1.0, t2=2.0, cutoff=60)
        rho = solve_steady_state(make_damped_oscillator(p))
        a = destroy(60)
        nbar = 1.0 / (np.e - 1.0)
        assert abs(np.trace(rho.matrix @ (a.conj().T @ a)).real - nbar) <= 1e-6
        # Geometric thermal populations.
        diag = np.real(np.diag(rho.matrix))
        expected = (nbar / (nbar + 1.0)) ** np.arange(10) / (nbar + 1.0)
        np.testing.assert_allclose(diag[:10], expected, atol=1e-10)

    @pytest.mark.parametrize("idx", [0, 1, 2])
    def test_residual_bound_holds(self, idx):
        model = zoo_models_at(1.0, 2.0)[idx]
        rho = solve_steady_state(model)
        lmat = build_superoperator(model).matrix
        residual = linf_norm(lmat @ vectorize(rho.matrix))
        assert residual <= 1e-9 * linf_norm(lmat)

    def test_degenerate_model_detected(self):
        # J = 0 and Gamma = 0 leave qubit 2 undamped: no unique steady state.
        model = make_coupled_qubits(
            CoupledQubitsParams(omega1=1.0, omega2=1.0, j=0.0, gamma=0.2, big_gamma=0.0, t1=1.0, t2=1.0)
        )
        with pytest.raises(NonUniqueSteadyState):
            solve_steady_state(model)

    def test_closed_system_detected(self):
        model = make_two_level(TwoLevelParams(omega=1.0, gamma=0.0, big_gamma=0.0, t1=1.0, t2=1.0))
        with pytest.raises(NonUniqueSteadyState):
            solve_steady_state(model)


class TestPropagate:
    def test_analytic_decay(self):
        # T1 = 0 and Gamma = 0: pure decay at rate gamma; the excited
        # population is exp(-gamma t).
        gamma = 0.2
        model = make_two_level(TwoLevelParams(omega=1.0, gamma=gamma, big_gamma=0.0, t1=0.0, t2=0.0))
        rho0 = np.diag([0.0, 1.0]).astype(complex)
        out = propagate(model, rho0, t_final=1.0 / gamma, dt=0.002)
        assert out[1, 1].real == pytest.approx(0.36787944117144233, abs=1e-9)

    def test_trace_and_hermiticity_preserved(self, rng):
        model = zoo_models_at(1.0, 2.0)[1]
        rho = random_density_matrix(rng, 4).matrix
        elapsed = 0.0
        for chunk in (1.0, 4.0, 5.0):
            rho = propagate(model, rho, t_final=chunk, dt=0.005)
            elapsed += chunk
            assert abs(np.trace(rho).real - 1.0) <= 1e-9 * elapsed
            assert linf_norm(rho - rho.conj().T) <= 1e-10

    def test_fixed_point_returned_unchanged(self):
        model = zoo_models_at(1.0, 2.0)[0]
        rho = solve_steady_state(model)
        again = propagate_to_steady(model, rho)
        assert np.max(np.abs(again.matrix - rho.matrix)) <= 1e-10

    @pytest.mark.parametrize("idx", [0, 1, 2])
    def test_cross_method_agreement(self, idx, rng):
        # RK4 and the null-space solve must land on the same state.
        model = zoo_models_at(1.0, 2.0)[idx]
        target = solve_steady_state(model)
        dt = 0.02 if model.dim >= 10 else None
        for _ in range(3):
            rho0 = random_density_matrix(rng, model.dim)
            final = propagate_to_steady(model, rho0, t_max=2000.0, dt=dt)
            assert trace_distance(final, target) <= 1e-6

    def test_not_converged_carries_state(self):
        gamma = 0.2
        model = make_two_level(TwoLevelParams(omega=1.0, gamma=gamma, big_gamma=0.0, t1=0.0, t2=0.0))
        rho0 = DensityMatrix(np.diag([0.0, 1.0]).astype(complex))
        with pytest.raises(NotConverged) as excinfo:
            propagate_to_steady(model, rho0, t_max=0.5, dt=0.01)
        state = excinfo.value.state
        assert state is not None
        assert state[1, 1].real == pytest.approx(np.exp(-gamma * 0.5), abs=1e-6)


class TestDefaults:
    def test_time_step_scales_inversely_with_rates(self):
        slow = make_two_level(TwoLevelParams(omega=1.0, gamma=0.1, big_gamma=0.0, t1=0.0, t2=0.0))
        fast = make_two_level(TwoLevelParams(omega=1.0, gamma=100.0, big_gamma=0.0, t1=0.0, t2=0.0))
        assert default_time_step(fast) < default_time_step(slow)

    def test_t_max_uses_smallest_nonzero_rate(self):
        model = make_two_level(TwoLevelParams(omega=1.0, gamma=0.5, big_gamma=0.0, t1=0.0, t2=0.0))
        # Only the decay channel is active at rate 0.5.
        assert default_t_max(model) == pytest.approx(100.0)
