import math

import numpy as np
import pytest

import qfric


def rb_au(v):
    return qfric.Scenario(qfric.AtomParams.from_boundary(47.28, 1.3, 86.9), qfric.Material.drude_ev(9.0, 0.035, "gold"),
                          5e-9, v)


def test_presets_and_reference():
    assert set(qfric.preset_names()) == {"rb-au-fig2", "li-na"}
    assert "`scenario.za_nm`" in qfric.config_reference()
    s = qfric.Scenario.from_preset("li-na", ["scenario.za_nm=6"])
    assert s.za == pytest.approx(6e-9)
    assert not s.material.is_drude


def test_config_errors_raise_value_error():
    with pytest.raises(ValueError):
        qfric.Scenario.from_preset("li-na", ["scenario.za_nm=abc"])
    with pytest.raises(ValueError):
        qfric.Scenario.from_preset("nope")


def test_lowv_coefficients():
    c = qfric.lowv_coefficients()
    assert c.translational == pytest.approx(-63 / math.pi**3, rel=1e-6)
    assert c.rotational == pytest.approx(45 / math.pi**3, rel=1e-6)


def test_asymptotic_observables():
    o = qfric.evaluate_asymptotic(rb_au(1e4))
    assert o.provenance == qfric.Provenance.asymptotic
    assert o.F_t < 0 < o.F_r
    assert o.F_r / abs(o.F_t) == pytest.approx(5 / 7)
    assert o.Omega < 0


def test_spectrum_is_hermitian_psd():
    s = rb_au(1e4)
    S = qfric.spectrum(s, 1.3 * qfric.eV)
    assert S.shape == (3, 3)
    assert np.allclose(S, S.conj().T, rtol=0, atol=1e-12 * np.abs(S).max())
    assert np.linalg.eigvalsh(S).min() >= -1e-6 * np.trace(S).real
    s.v = 0.0
    assert np.abs(qfric.spectrum(s, -1e14)).max() == 0.0


def test_k_integral_at_rest_matches_closed_form():
    gold = qfric.Material.drude_ev(9.0, 0.035)
    w, z = 2e15, 5e-9
    K = qfric.k_integral(gold, w, 0.0, z)
    r = gold.reflection_p(w)
    assert K[2, 2] == pytest.approx(r / (16 * math.pi * qfric.eps0 * z**3))
    K1 = qfric.k_integral(gold, w, 1e-12, z, 1e-8)
    assert np.allclose(K1, K, rtol=1e-6)


def test_sweep_csv_roundtrip():
    text = qfric.run_sweep("rb-au-fig2", ["sweep.provenance=asymptotic", "sweep.points=4"])
    lines = text.splitlines()
    assert lines[0].split(",") == ["v_m_per_s", "za_m", "F_t_N", "F_r_N", "F_total_N", "a_m_per_s2",
                                   "Omega_rad_per_s", "L_y_Js", "mode", "provenance", "max_quad_err"]
    assert len(lines) == 5
    assert qfric.roundtrip_csv(text) == text


def test_full_pipeline_ohmic():
    s = qfric.Scenario.from_preset("li-na")
    f = qfric.friction_forces(s)
    a = qfric.friction_asymptotic(s)
    assert f.converged
    assert f.translational == pytest.approx(a.translational, rel=0.02)


def test_acceptance_criterion_one():
    r = qfric.run_criterion(1)
    assert r["pass"], r["summary"]
    assert r["number"] == 1
