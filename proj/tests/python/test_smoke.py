import cmath
import math

import pytest

import ecs_sim


def test_overlap_values():
    assert ecs_sim.overlap(1.0, 1.0) == pytest.approx(1.0, abs=1e-14)
    assert ecs_sim.overlap(1.0, -1.0).real == pytest.approx(math.exp(-2.0), abs=1e-12)
    v = ecs_sim.overlap(1.0, 1.0j)
    assert v == pytest.approx(cmath.exp(-1.0) * cmath.exp(1.0j), abs=1e-12)


def test_bell_concurrence_independent_of_p():
    for p in (0.1, 0.5, 0.8):
        alpha = math.sqrt(-math.log(p))
        state = ecs_sim.make_ecs("qubit", alpha, coeffs=[-1.0, 1.0])
        assert ecs_sim.two_mode_concurrence(state) == pytest.approx(1.0, abs=1e-10)


def test_decohered_negativity_matches_oracle():
    alpha = math.sqrt(-math.log(0.5))
    state = ecs_sim.make_ecs("qubit", alpha, coeffs=[-1.0, 1.0])
    noisy = ecs_sim.lossy_channel(state, [0, 1], 0.5)
    rho = ecs_sim.trace_out(noisy, [0, 1])
    rho.validate()
    gram = ecs_sim.negativity(rho, [1])
    cutoff = ecs_sim.cutoff_for(alpha, 1e-12)
    fock = ecs_sim.oracle_negativity(noisy, [0, 1], [1], cutoff)
    assert gram == pytest.approx(fock, abs=1e-8)
    assert gram == pytest.approx(0.0935921354681, abs=1e-10)


def test_monotone_in_eta():
    values = [ecs_sim.family_measure("qutrit", "negativity", 0.5, eta)
              for eta in (0.2, 0.5, 0.8, 1.0)]
    assert values == sorted(values)


def test_generate_optimal_weights():
    pairs = ecs_sim.generate_coefficients([-0.8200, 2.1184, -0.4720], 1.0)
    weights = [w for (_, w) in pairs]
    assert weights[0] == pytest.approx(1.0)
    assert weights[1].real == pytest.approx(1.35, abs=5e-4)
    assert weights[2].real == pytest.approx(1.0, abs=5e-4)


def test_violation_pair():
    lhs, rhs = ecs_sim.qutrit_violation_example()
    assert lhs == pytest.approx(2.0, abs=1e-9)
    assert rhs == pytest.approx(4.0 / 3.0, abs=1e-9)


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ecs_sim.Error):
        ecs_sim.orthonormalize([1e-7, -1e-7])
    with pytest.raises(ecs_sim.Error):
        ecs_sim.lossy_channel(ecs_sim.product([1.0]), [0], 1.5)
