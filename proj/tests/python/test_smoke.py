"""End-to-end checks of the Python bindings against known closed forms."""

import math

import numpy as np
import pytest

import qgeom


EQUATOR = [math.pi / 2.0, 0.0]


def z_povm():
    p0 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    p1 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
    return [p0, p1]


def test_pure_chart_curvature():
    rep = qgeom.report(qgeom.pure_bloch(), EQUATOR)
    assert rep["branch"] == "low"
    assert rep["curvature"][0][1] == pytest.approx(-0.5)
    assert rep["qfi"][0][0] == pytest.approx(1.0)
    assert rep["qfi"][1][1] == pytest.approx(1.0)


def test_cubic_radius_scaling():
    for r in (0.2, 0.5, 0.9):
        rep = qgeom.report(qgeom.mixed_bloch(r), EQUATOR)
        assert rep["branch"] == "full"
        assert rep["curvature"][0][1] == pytest.approx(-0.5 * r**3, rel=1e-9)


def test_model_metadata_and_evaluation():
    model = qgeom.mixed_bloch(0.5)
    assert model.name == "mixed-bloch"
    assert model.dim == 2
    assert list(model.param_names) == ["theta", "phi"]
    rho = model.evaluate(EQUATOR)
    assert rho.shape == (2, 2)
    assert np.trace(rho) == pytest.approx(1.0)
    assert rho[0, 1] == pytest.approx(0.25)


def test_validation_raises_value_error():
    bad = np.array([[0.6, 0.2], [0.2, 0.5]], dtype=complex)  # trace 1.1
    with pytest.raises(ValueError):
        qgeom.validate_density(bad)


def test_sld_routes_agree():
    rho = np.diag([0.5, 0.3, 0.2]).astype(complex)
    drho = np.zeros((3, 3), dtype=complex)
    drho[0, 1] = 0.2 + 0.1j
    drho[1, 0] = 0.2 - 0.1j
    drho[0, 0] = 0.1
    drho[1, 1] = -0.1
    a = qgeom.solve_sld(rho, drho)
    b = qgeom.sld_vec_solve(rho, drho)
    assert np.linalg.norm(a - b) <= 1e-9
    # defining equation holds
    recon = 0.5 * (a @ rho + rho @ a)
    assert np.linalg.norm(recon - drho) <= 1e-10


def test_fidelity_identity():
    rho = np.diag([0.7, 0.3]).astype(complex)
    assert qgeom.bures_fidelity(rho, rho) == pytest.approx(1.0)
    sigma = np.diag([0.4, 0.6]).astype(complex)
    expect = math.sqrt(0.7 * 0.4) + math.sqrt(0.3 * 0.6)
    assert qgeom.bures_fidelity(rho, sigma) == pytest.approx(expect)


def test_tradeoff_audit_keys_and_bounds():
    audit = qgeom.tradeoff(qgeom.pure_bloch(), z_povm(), [1.1, 0.3])
    assert set(audit.keys()) == {
        "qfi", "cfi", "regret", "c2", "curvature", "eq1", "eq17", "eq18_slack",
    }
    for form in ("eq1", "eq17"):
        assert set(audit[form].keys()) == {"lhs", "rhs", "slack"}
        assert audit[form]["slack"] >= -1e-9
    assert audit["eq18_slack"] >= -1e-9
    assert audit["c2"] == pytest.approx(1.0)
    # polar measurement saturates the regret inequality on the pure chart
    assert audit["eq1"]["lhs"] == pytest.approx(audit["eq1"]["rhs"], abs=1e-7)


def test_chern_number_integration():
    assert qgeom.chern_number(qgeom.mixed_bloch(0.0), resolution=4) == 0.0
    assert qgeom.chern_number(qgeom.pure_bloch(), resolution=24) == pytest.approx(
        -1.0, abs=5e-3
    )


def test_unitary_family_from_numpy():
    rho0 = np.diag([0.6, 0.4]).astype(complex)
    gx = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    gz = np.diag([1.0, -1.0]).astype(complex)
    model = qgeom.unitary_family(rho0, gx, gz)
    rep = qgeom.report(model, [0.3, -0.2])
    assert rep["qfi"][0][0] > 0.0
    assert abs(rep["curvature"][0][1]) <= 0.5


def test_selftest_entries():
    results = qgeom.selftest(trials=2)
    assert len(results) >= 20
    names = {r["name"] for r in results}
    assert "sld_residual" in names
    for r in results:
        assert r["passed"], f"{r['name']} residual {r['max_residual']}"
