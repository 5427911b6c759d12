import numpy as np
import pytest
from scipy.signal import argrelextrema

from src.errors import ConfigError, DarkStateUndefinedError, StepGuardError, WellsMergedError
from src.potentials import COUNTER_INTUITIVE, INTUITIVE, GuideProfile
from src.three_level import (
    Pulse, PulseSchedule, ThreeLevelState, adiabaticity_metric, build_schedule, coupling_from_separation,
    dark_state, double_well_states, evolve, finite_difference_levels, hamiltonian, mixing_angle,
)


def _run(ordering, initial=0, mirrored=False, dt=0.0005):
    schedule = build_schedule(peak=50.0, width=1.0, separation=1.2, ordering=ordering)
    if mirrored:
        schedule = schedule.mirrored()
    return evolve(ThreeLevelState.basis(initial), schedule, t_final=8.0, dt=dt, t_start=-8.0)


@pytest.mark.parametrize("shape", ["gaussian", "box", "sin2"])
def test_pulse_peak_at_center(shape):
    pulse = Pulse(3.0, 1.0, 0.5, shape)
    assert pulse.value(1.0) == pytest.approx(3.0)
    assert pulse.value(5.0) == pytest.approx(0.0)


@pytest.mark.parametrize("shape", ["gaussian", "sin2"])
def test_pulse_derivative_matches_finite_difference(shape):
    pulse = Pulse(3.0, 1.0, 0.5, shape)
    t = np.linspace(0.6, 1.4, 9)
    h = 1e-6
    numeric = (pulse.value(t + h) - pulse.value(t - h)) / (2 * h)
    assert np.allclose(pulse.derivative(t), numeric, atol=1e-5)


def test_pulse_validation():
    with pytest.raises(ConfigError):
        Pulse(1.0, 0.0, 0.0)
    with pytest.raises(ConfigError):
        Pulse(1.0, 0.0, 1.0, "triangle")
    with pytest.raises(ConfigError):
        build_schedule(ordering="sideways")


def test_schedule_ordering_and_scaling():
    ci = build_schedule(ordering=COUNTER_INTUITIVE)
    assert ci.stokes.center < ci.pump.center
    assert ci.is_counter_intuitive
    assert not build_schedule(ordering=INTUITIVE).is_counter_intuitive
    assert ci.scaled(2.0).max_coupling == pytest.approx(2.0 * ci.max_coupling)


def test_dark_state_is_a_zero_eigenvector():
    schedule = build_schedule(peak=50.0)
    for t in np.linspace(-3.0, 3.0, 13):
        residual = hamiltonian(schedule, t) @ dark_state(schedule, t).amplitudes
        assert np.max(np.abs(residual)) < 1e-13


def test_dark_state_undefined_without_couplings():
    with pytest.raises(DarkStateUndefinedError):
        mixing_angle(0.0, 0.0)
    schedule = build_schedule(shape="box", width=1.0, separation=1.0)
    with pytest.raises(DarkStateUndefinedError):
        dark_state(schedule, 10.0)


def test_counter_intuitive_transfer():
    populations = _run(COUNTER_INTUITIVE).populations
    assert populations[-1, 2] >= 0.999
    assert populations[:, 1].max() <= 0.02


def test_intuitive_order_goes_through_intermediate_state():
    trajectory = _run(INTUITIVE)
    assert trajectory.populations[:, 1].max() > 0.3
    p3 = trajectory.populations[:, 2]
    assert len(argrelextrema(p3, np.greater)[0]) + len(argrelextrema(p3, np.less)[0]) >= 2
    assert trajectory.final_state.norm() == pytest.approx(1.0, abs=1e-6)


def test_mirrored_schedule_from_final_state():
    forward = _run(COUNTER_INTUITIVE).populations
    backward = _run(COUNTER_INTUITIVE, initial=2, mirrored=True).populations
    assert np.max(np.abs(forward - backward[:, ::-1])) < 1e-10


def test_step_guard():
    schedule = build_schedule(peak=50.0)
    with pytest.raises(StepGuardError):
        evolve(ThreeLevelState.basis(0), schedule, t_final=1.0, dt=0.01)


def test_state_validation():
    with pytest.raises(ConfigError):
        ThreeLevelState([1.0, 0.0])


def test_adiabaticity_metric_is_small_where_gap_is_open():
    trajectory = _run(COUNTER_INTUITIVE)
    gap = np.sqrt(trajectory.omega_p ** 2 + trajectory.omega_s ** 2)
    assert np.all(trajectory.metric[gap >= 5.0] < 0.05)
    schedule = build_schedule(peak=50.0)
    assert adiabaticity_metric(schedule, 0.0) == pytest.approx(trajectory.metric[16000], rel=1e-9)


def test_harmonic_levels_from_finite_differences():
    x = np.linspace(-10.0, 10.0, 2001)
    energies, vectors = finite_difference_levels(x, 0.5 * x ** 2, count=2)
    assert energies == pytest.approx([0.5, 1.5], abs=1e-4)
    assert np.sum(vectors[:, 0] ** 2) * (x[1] - x[0]) == pytest.approx(1.0)


def test_coupling_decreases_with_separation():
    profile = GuideProfile(20.0, 0.5)
    couplings = [coupling_from_separation(profile, d) for d in (2.0, 2.5, 4.5)]
    assert couplings[0] > couplings[1] > couplings[2] > 0
    far = coupling_from_separation(profile, 40.0)
    assert 0.0 <= far < 1e-8


def test_merged_wells_have_no_coupling():
    with pytest.raises(WellsMergedError):
        coupling_from_separation(GuideProfile(20.0, 0.5), 0.1)


def test_intuitive_order_transfers_less():
    intuitive = _run(INTUITIVE).populations[-1, 2]
    counter_intuitive = _run(COUNTER_INTUITIVE).populations[-1, 2]
    assert intuitive <= counter_intuitive - 0.5


def test_dark_state_over_random_couplings():
    rng = np.random.default_rng(5)
    for p, s in rng.uniform(0.0, 50.0, size=(1000, 2)):
        schedule = PulseSchedule(Pulse(p, 0.0, 1.0, "box"), Pulse(s, 0.0, 1.0, "box"))
        residual = hamiltonian(schedule, 0.0) @ dark_state(schedule, 0.0).amplitudes
        assert np.max(np.abs(residual)) < 1e-13


def test_counter_intuitive_transfer_grows_with_pulse_area():
    finals = []
    for peak in (0.2, 1.0, 3.0, 10.0, 50.0):
        schedule = build_schedule(peak=peak, width=1.0, separation=1.2)
        trajectory = evolve(ThreeLevelState.basis(0), schedule, t_final=8.0, dt=0.0005, t_start=-8.0)
        finals.append(trajectory.populations[-1, 2])
    assert np.all(np.diff(finals) > -1e-3)
    assert finals[-1] - finals[0] > 0.9


def test_adiabaticity_metric_scales_inversely_with_coupling():
    schedule = build_schedule(peak=10.0, width=1.0, separation=1.2)
    t = np.linspace(-2.0, 2.0, 41)
    base = adiabaticity_metric(schedule, t)
    for factor in (0.5, 3.0, 20.0):
        np.testing.assert_allclose(adiabaticity_metric(schedule.scaled(factor), t), base / factor, rtol=1e-12)


def test_adiabaticity_metric_vanishes_for_a_constant_pulse_ratio():
    schedule = PulseSchedule(Pulse(2.0, 0.0, 1.0), Pulse(5.0, 0.0, 1.0))
    assert np.max(adiabaticity_metric(schedule, np.linspace(-3.0, 3.0, 61))) < 1e-12


def test_double_well_states_have_definite_parity():
    states = double_well_states(GuideProfile(20.0, 0.5), 2.5)
    even, odd = states.vectors[:, 0], states.vectors[:, 1]
    scale = np.abs(states.vectors).max()
    np.testing.assert_allclose(even[::-1], even, atol=1e-8 * scale)
    np.testing.assert_allclose(odd[::-1], -odd, atol=1e-8 * scale)
    assert states.energies[0] < states.energies[1]
