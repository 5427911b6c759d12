import numpy as np
import pytest

from src.config import GAUSS, MU_B
from src.errors import ConfigError, SingularityError, WellsMergedError
from src.grid import Grid2D
from src.potentials import (
    COUNTER_INTUITIVE, INTUITIVE, Atom, ChipLayout, Wire, build_chip_layout, field_at,
    field_magnitude, locate_minimum, minima_energies, potential_field_at_time, single_wire_frequency,
    single_wire_height, trap_bottom, transverse_zeros, tune_middle_current, with_left_wire_at,
    with_schedule,
)

MICRON = 1e-6


@pytest.fixture
def single_wire():
    return ChipLayout(wires=(Wire(0.0, 1.0),), bias_field=100 * GAUSS, ioffe_field=1 * GAUSS,
                      atom=Atom.from_species("li6"))


@pytest.fixture
def reference_layout():
    return build_chip_layout()


@pytest.fixture
def resolvable_layout():
    return build_chip_layout(outer_current=2e-4, middle_current=1.5e-4, bias_gauss=0.2, ioffe_gauss=1.0)


def test_lithium_moment_is_one_bohr_magneton():
    assert Atom.from_species("li6").mu == pytest.approx(MU_B)
    with pytest.raises(ConfigError):
        Atom.from_species("unobtainium")
    with pytest.raises(ConfigError):
        Atom(mass=1e-26, m_F=-1.0, g_F=0.5)


def test_single_wire_height():
    assert single_wire_height(1.0, 100 * GAUSS) == pytest.approx(20 * MICRON)


def test_single_wire_minimum(single_wire):
    x, h = locate_minimum(single_wire, 1 * MICRON, 18 * MICRON)
    assert x / MICRON == pytest.approx(0.0, abs=1e-3)
    assert h / MICRON == pytest.approx(20.0, abs=1e-3)
    assert field_magnitude(single_wire, 0.0, 20 * MICRON) == pytest.approx(1 * GAUSS, rel=1e-9)


def test_single_wire_frequency_matches_curvature(single_wire):
    atom = single_wire.atom
    r0 = single_wire_height(1.0, 100 * GAUSS)
    delta = 1e-9
    b = [field_magnitude(single_wire, 0.0, r0 + s * delta) for s in (-1, 0, 1)]
    curvature = atom.mu * (b[0] - 2 * b[1] + b[2]) / delta ** 2
    omega = np.sqrt(curvature / atom.mass)
    expected = single_wire_frequency(1.0, 100 * GAUSS, 1 * GAUSS, atom)
    assert omega == pytest.approx(expected, rel=1e-3)


def test_field_on_wire_raises(single_wire):
    with pytest.raises(SingularityError):
        field_at(single_wire, 0.0, 0.0)


def test_layout_validation(reference_layout):
    with pytest.raises(ConfigError):
        build_chip_layout(bias_gauss=0.0)
    with pytest.raises(ConfigError):
        build_chip_layout(ioffe_gauss=-1.0)
    with pytest.raises(ConfigError):
        minima_energies(build_chip_layout(ioffe_gauss=0.0))


def test_reference_layout_has_three_symmetric_wells(reference_layout):
    wells = minima_energies(reference_layout)
    assert len(wells) == 3
    left, middle, right = wells
    assert left.x == pytest.approx(-right.x, rel=1e-9)
    assert left.h == pytest.approx(right.h, rel=1e-9)
    assert middle.x == pytest.approx(0.0, abs=1e-12)
    assert middle.h > left.h
    assert left.ground_energy == pytest.approx(right.ground_energy, rel=1e-9)
    for well in wells:
        assert field_magnitude(reference_layout, well.x, well.h) == pytest.approx(1 * GAUSS, rel=1e-6)
        assert well.potential == pytest.approx(trap_bottom(reference_layout), rel=1e-6)
        assert well.omega > 0


def test_wells_merge_when_middle_current_vanishes(reference_layout):
    with pytest.raises(WellsMergedError):
        minima_energies(reference_layout.with_middle_current(0.0))


def test_tuned_current_equalizes_well_energies(reference_layout):
    result = tune_middle_current(reference_layout)
    assert 0.0 < result.current < 1.0
    assert result.spread * 5 <= result.reference_spread
    assert result.reached
    tuned = minima_energies(reference_layout.with_middle_current(result.current))
    energies = [w.ground_energy for w in tuned]
    assert max(energies) - min(energies) == pytest.approx(result.spread)


def test_tuning_needs_equal_outer_currents(reference_layout):
    left, middle, right = reference_layout.wires
    lopsided = ChipLayout((left, middle, Wire(right.x_position, 0.5)), reference_layout.bias_field,
                          reference_layout.ioffe_field, reference_layout.atom)
    with pytest.raises(ConfigError):
        tune_middle_current(lopsided)


@pytest.mark.parametrize("ordering", [COUNTER_INTUITIVE, INTUITIVE])
def test_schedule_ordering(reference_layout, ordering):
    scheduled = with_schedule(reference_layout, closest_um=4.5, t_mid=1.0, offset=0.2,
                              approach_duration=0.1, ordering=ordering)
    left, middle, right = scheduled.wires
    if ordering == COUNTER_INTUITIVE:
        assert right.trajectory.t_center < left.trajectory.t_center
    else:
        assert left.trajectory.t_center < right.trajectory.t_center
    assert middle.trajectory is None

    far = scheduled.at_time(100.0)
    assert far.wires[0].x_position == pytest.approx(-9 * MICRON)
    assert far.wires[2].x_position == pytest.approx(9 * MICRON)
    near = scheduled.at_time(right.trajectory.t_center)
    assert near.wires[2].x_position == pytest.approx(4.5 * MICRON)


def test_schedule_rejects_unknown_ordering(reference_layout):
    with pytest.raises(ConfigError):
        with_schedule(reference_layout, ordering="sideways")


def test_potential_field_needs_positive_heights(reference_layout):
    with pytest.raises(SingularityError):
        potential_field_at_time(reference_layout, 0.0, Grid2D(32, 32, -16.0, 16.0, 0.0, 32.0))


def test_potential_field_is_referenced_to_trap_bottom(reference_layout):
    grid = Grid2D(32, 32, -16.0, 16.0, 0.25, 64.25)
    field = potential_field_at_time(reference_layout, 0.0, grid)
    assert field.provenance == "chip"
    assert field.offset == pytest.approx(trap_bottom(reference_layout))
    assert field.values.min() >= -1e-6

    capped = potential_field_at_time(reference_layout, 0.0, grid, cap=50.0)
    assert capped.values.max() <= 50.0
    assert np.array_equal(capped.values, np.minimum(field.values, 50.0))


def test_left_wire_closest_approach_is_static_and_asymmetric(resolvable_layout):
    scheduled = with_schedule(resolvable_layout, closest_um=4.5, offset=0.2, approach_duration=0.1)
    closest = with_left_wire_at(scheduled, 4.5)
    left, middle, right = closest.wires
    assert left.x_position == pytest.approx(-4.5 * MICRON)
    assert middle.x_position == 0.0
    assert right.x_position == pytest.approx(9 * MICRON)
    assert all(w.trajectory is None for w in closest.wires)
    assert closest.at_time(123.0) == closest

    wells = minima_energies(closest)
    assert abs(wells[0].x) < abs(wells[2].x)
    assert wells[0].ground_energy != pytest.approx(wells[2].ground_energy, rel=1e-3)


def test_wire_fields_superpose(reference_layout):
    rng = np.random.default_rng(3)
    x = rng.uniform(-30, 30, 200) * MICRON
    h = rng.uniform(0.5, 60, 200) * MICRON
    total = np.array(field_at(reference_layout, x, h))
    summed = np.zeros_like(total)
    for wire in reference_layout.wires:
        alone = ChipLayout((wire,), reference_layout.bias_field, reference_layout.ioffe_field,
                           reference_layout.atom)
        summed += np.array(field_at(alone, x, h))
    # every single-wire layout carries the uniform fields once
    summed[0] -= 2 * reference_layout.bias_field
    summed[2] -= 2 * reference_layout.ioffe_field
    scale = np.abs(total).max()
    np.testing.assert_allclose(summed, total, rtol=0, atol=1e-14 * scale)


def test_field_is_nonzero_and_mirror_symmetric_on_the_grid(reference_layout):
    grid = Grid2D(64, 64, -16.0, 16.0, 0.25, 64.25)
    X, H = grid.mesh
    b = field_magnitude(reference_layout, X * MICRON, H * MICRON)
    assert b.min() >= reference_layout.ioffe_field * (1 - 1e-12)
    mirrored = field_magnitude(reference_layout, -X * MICRON, H * MICRON)
    np.testing.assert_allclose(mirrored, b, rtol=1e-12)


def test_single_wire_height_over_random_currents_and_fields():
    rng = np.random.default_rng(11)
    atom = Atom.from_species("li6")
    for current, bias in zip(rng.uniform(0.5, 2.0, 10), rng.uniform(20.0, 200.0, 10)):
        layout = ChipLayout((Wire(0.0, current),), bias * GAUSS, 1 * GAUSS, atom)
        r0 = single_wire_height(current, bias * GAUSS)
        _, h = locate_minimum(layout, 0.05 * r0, 0.9 * r0)
        assert h == pytest.approx(r0, rel=1e-3)


def test_transverse_zeros_are_field_zeros(reference_layout):
    for w0 in transverse_zeros(reference_layout):
        if w0.imag <= 0:
            continue
        bx, bh, _ = field_at(reference_layout, w0.real, w0.imag)
        assert np.hypot(bx, bh) < 1e-9 * reference_layout.bias_field
