import math

import numpy as np
import pytest

import thermobound as tb


def random_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


def test_gibbs_state_of_two_levels():
    state = tb.gibbs_state(np.diag([0.0, 1.0]), 1.0)
    z = 1.0 + math.exp(-1.0)
    p = np.array([1.0, math.exp(-1.0)]) / z
    assert state["Z"] == pytest.approx(z, abs=1e-14)
    assert state["S"] == pytest.approx(-(p * np.log(p)).sum(), abs=1e-14)
    assert np.allclose(state["rho"], np.diag(p), atol=1e-14)


def test_identical_specs_give_zero_bounds():
    h = random_hermitian(np.random.default_rng(1), 4)
    b = tb.delta_s_bounds(h, 2.0, h, 2.0)
    assert (b.lower, b.exact, b.upper) == pytest.approx((0.0, 0.0, 0.0), abs=1e-12)


def test_random_pairs_are_sandwiched():
    rng = np.random.default_rng(7)
    for _ in range(50):
        dim = int(rng.integers(2, 7))
        h1, h2 = random_hermitian(rng, dim), random_hermitian(rng, dim)
        t1, t2 = np.exp(rng.uniform(np.log(0.1), np.log(100.0), size=2))
        for bound in (tb.delta_s_bounds, tb.helmholtz_bounds, tb.log_z_ratio_bounds):
            assert bound(h1, t1, h2, t2).sandwiched()


def test_grand_gap_vanishes_at_the_grand_state():
    rng = np.random.default_rng(3)
    h, n = random_hermitian(rng, 3), random_hermitian(rng, 3)
    rho = tb.grand_gibbs_state(h, n, 1.5, 0.4)["rho"]
    assert abs(tb.grand_entropy_gap(rho, h, n, 1.5, 0.4)) < 1e-10
    assert tb.grand_delta_s_bounds(h, n, 1.5, 0.4, h, n, 2.0, -0.3).sandwiched()


def test_errors_map_to_python_exceptions():
    with pytest.raises(tb.DomainError):
        tb.gibbs_state(np.eye(2), 0.0)
    with pytest.raises(ValueError):
        tb.gibbs_state(np.array([[0.0, 1.0], [0.0, 0.0]]), 1.0)
    with pytest.raises(tb.DimensionError):
        tb.delta_s_bounds(np.eye(2), 1.0, np.eye(3), 1.0)
    with pytest.raises(tb.NumericalError):
        tb.oscillator.fock_truncated_oracle(3.0, 0.5, 50.0, 60)


def test_qubit_sweep_lower_bound_extrema():
    rows = tb.qubit.sweep_theta(math.sqrt(61.0), math.sqrt(17.0), 10.0, 15.0)
    assert rows.shape == (200, 4)
    assert int(np.argmax(rows[:, 1])) == 0
    assert int(np.argmin(rows[:, 1])) == 199


def test_franck_condon_modes():
    levels1, levels2 = np.array([0.0, 1.0, 2.0]), np.array([0.5, 1.5, 2.5])
    shared = tb.fc.delta_s_bounds(levels1, levels2, 1.0, 2.0)
    assert shared.guaranteed and shared.sandwiched()
    k = np.array([[0.9, 0.1, 0.0], [0.1, 0.8, 0.1], [0.0, 0.1, 0.9]])
    supplied = tb.fc.delta_s_bounds(levels1, levels2, 1.0, 2.0, k)
    assert not supplied.guaranteed
    assert supplied.exact == pytest.approx(shared.exact, abs=1e-14)


def test_oscillator_closed_forms():
    osc = tb.oscillator
    w, wp, t = 1.7, 1.2, 2.5
    closed = (w * w + wp * wp) / (4.0 * wp) / math.tanh(wp / (2.0 * t))
    assert osc.cross_mean_physical(w, wp, t) == pytest.approx(closed, rel=1e-14)
    assert osc.fock_truncated_oracle(w, wp, t)["cross_mean"] == pytest.approx(closed, abs=1e-6)

    trap = osc.FrequencyProfile.paul_trap(1.0, 0.5, 2.0)
    sol = osc.solve_classical(trap, 10.0)
    assert abs(sol.wronskian(7.3) - 2j) < 1e-8
    assert osc.f_factor(sol, 4.2, 4.2) == pytest.approx(2.0, abs=1e-9)
    z = osc.partition_function_via_disentangling(sol, 3.0, 6.0, 2.0)
    assert z == pytest.approx(osc.partition_function_closed(trap.omega(6.0), 2.0), abs=1e-9)
