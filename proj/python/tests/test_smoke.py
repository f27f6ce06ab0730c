"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import spinbath as sb


def test_operator_shapes_and_hermiticity():
    h = sb.h_xy(4, anisotropy=0.8, field=0.5)
    assert h.shape == (16, 16)
    assert np.abs(h - h.conj().T).max() < 1e-14

    z = sb.pauli_on_site(2, 1, "z")
    assert np.allclose(np.diag(z), [1, 1, -1, -1])

    mz = sb.m_z(2)
    assert np.allclose(np.diag(mz), [2, 0, 0, -2])


def test_magnetization_conservation():
    assert sb.commutator_norm(sb.h_xy(4, field=0.7), sb.m_z(4)) == 0.0
    assert sb.commutator_norm(sb.h_xy(4, anisotropy=0.8), sb.m_z(4)) > 0.0


def test_eigh_and_thermal_state():
    h = sb.h_s(0.2, 0.1)
    w, v = sb.eigh(h)
    assert w[0] == pytest.approx(-math.sqrt(0.02), abs=1e-13)
    rho = sb.thermal_state(sb.h_xy(3, field=0.4), beta=2.0)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)


def test_free_limit_across_engines():
    for engine, kwargs in [
        ("jw_exact", dict(n_sites=8)),
        ("ed", dict(n_sites=2)),
        ("meanfield", dict()),
    ]:
        r = sb.transition_probability(engine, gap=0.2, tunneling=0.1, strength=0.0,
                                      h=0.5, beta=40.0, **kwargs)
        assert r["p_tr"] == pytest.approx(0.5, abs=1e-10), engine


def test_zero_temperature_renormalization():
    for engine, kwargs in [
        ("jw_exact", dict(n_sites=8)),
        ("ed", dict(n_sites=8)),
        ("meanfield", dict()),
    ]:
        r = sb.transition_probability(engine, gap=0.2, tunneling=0.1, strength=0.05,
                                      h=2.0, beta=5000.0, **kwargs)
        assert r["p_tr"] == pytest.approx(0.64, abs=1e-4), engine


def test_occupation_weights_normalize():
    w = np.asarray(sb.occupation_weights(8, field=0.5, beta=10.0))
    assert w.shape == (9,)
    assert w.sum() == pytest.approx(1.0, abs=1e-12)
    assert (w >= 0).all()


def test_ground_state_occupation():
    n, degenerate = sb.ground_state_occupation(8, field=2.0)
    assert n == 0
    n, _ = sb.ground_state_occupation(8, field=0.0)
    assert n == 4


def test_magnetization_limits():
    assert sb.magnetization(0.0, 0.0, 40.0) == pytest.approx(0.0, abs=1e-12)
    assert sb.magnetization(2.0, 0.0, 5000.0) == pytest.approx(1.0, abs=1e-8)
    assert sb.magnetization(0.5, 0.0, 5000.0) == pytest.approx(1.0 / 3.0, abs=1e-6)


def test_evolution_round_trip():
    h = sb.h_total(0.2, 0.1, n_sites=2, strength=0.05, field=0.5)
    bath = sb.thermal_state(sb.h_xy(2, field=0.5), beta=10.0)
    rho0 = np.zeros((8, 8), dtype=complex)
    rho0[4:, 4:] = bath  # system starts in |down>
    states = sb.evolve_reduced(h, rho0, [0.0, 5.0])
    assert states[0][1, 1].real == pytest.approx(1.0, abs=1e-12)
    assert np.trace(states[1]).real == pytest.approx(1.0, abs=1e-10)


def test_run_preset_fig3():
    records = sb.run_preset("fig3", workers=2)
    assert len(records) == 160
    assert all(r["status"] == "ok" for r in records)
    assert all(r["n_sites"] is None for r in records)
    assert all("m_z" in r for r in records)


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        sb.pauli_on_site(2, 5, "z")
    with pytest.raises(ValueError):
        sb.magnetization(0.5, 0.0, -1.0)
