import math

import numpy as np
import pytest

import aqs_redfield as aqs


def test_grover_gap():
    p = aqs.make_grover(10)
    assert p.size == 1024
    assert p.gap(0.0) == pytest.approx(1.0)
    assert p.gap(0.5) == pytest.approx(1 / 32)
    table = aqs.gap_table(p, [0.0, 0.5, 1.0])
    assert table.shape == (3, 4)
    assert table[1, 2] == pytest.approx(0.484375)


def test_closed_run():
    p = aqs.make_grover(4)
    tr = aqs.integrate(p, 20.0)
    assert tr["t"].shape == (201,)
    assert tr["p0"][0] == 1.0
    assert 0.0 < tr["final_success"] <= 1.0
    assert tr["final_success"] == tr["p0"][-1]
    unitary = aqs.integrate(p, 20.0, formulation="closed_unitary")
    assert abs(unitary["final_success"] - tr["final_success"]) < 1e-6


def test_thermal_run_lowers_success():
    p = aqs.make_grover(6)
    T = 0.3 * aqs.linear_time(p)
    closed = aqs.integrate(p, T)["final_success"]
    bath = aqs.OhmicBath(eta=0.05, omega_c=0.25)
    tr = aqs.integrate(p, T, bath=bath)
    assert tr["final_success"] < closed
    assert np.all(np.isfinite(tr["rho_x"]))
    assert tr["diagnostics"]["tau_c"] > 0


def test_correlation_and_rates():
    b = aqs.OhmicBath(eta=0.05, omega_c=0.25)
    assert aqs.correlation(b, 0.0) == pytest.approx(3.125e-3)
    assert aqs.correlation(b, 4.0) == pytest.approx(-1.5625e-3j)
    r = aqs.rates(b, 0.0, 0.3)
    assert r["g01"] == 0
    s = aqs.StructuredBath(eta=0.1, omega0=0.25, delta_L=0.2)
    assert aqs.spectral_density(s, 0.1) == 0.0
    assert aqs.rates(s, 30.0, 0.3, mode="real")["g10"].imag == 0.0


def test_sweep_rows():
    p = aqs.make_grover(4)
    rows = aqs.sweep_total_time(p, [10.0, 20.0], aqs.OhmicBath(omega_c=0.25), [("complex", 0.05), ("real", 0.05)])
    assert len(rows) == 6
    assert [r["mode"] for r in rows[:3]] == ["closed", "complex", "real"]
    d = aqs.sweep_detuning(p, [0.1, 0.3], aqs.StructuredBath(), [("complex", 0.1)], T=10.0)
    assert len(d) == 4
    assert d[0]["success"] == d[2]["success"]


def test_calibration():
    c = aqs.calibrate_schedule(aqs.make_grover(10))
    assert c["chosen"] == "linear"
    assert abs(c["linear_success"] - 0.55) <= 0.1


def test_errors():
    with pytest.raises(aqs.ConfigError):
        aqs.make_grover(0)
    with pytest.raises(ValueError):
        aqs.integrate(aqs.make_grover(4), -1.0)
    with pytest.raises(aqs.ConfigError):
        aqs.make_schedule(aqs.make_grover(4), "cubic", 1.0)
    assert math.isfinite(aqs.make_single_site(0.6).gap(0.3))
