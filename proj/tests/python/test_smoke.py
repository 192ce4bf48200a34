"""Smoke tests for the python bindings.

Runs standalone (``python3 test_smoke.py``) with the built module on
PYTHONPATH and the fixture directory in THETANULL_FIXTURE_DIR; each check is
an assert, so a nonzero exit means failure.
"""

import cmath
import json
import math
import os
import pathlib

import numpy as np

import thetanull as tn


def load_fixture(name):
    root = pathlib.Path(os.environ["THETANULL_FIXTURE_DIR"])
    doc = json.loads((root / name).read_text())
    return np.array(doc["re"], dtype=float) + 1j * np.array(doc["im"], dtype=float)


def test_characteristics():
    for g in range(1, 6):
        even = tn.characteristics(g, "even")
        odd = tn.characteristics(g, "odd")
        assert len(even) == 2 ** (g - 1) * (2**g + 1)
        assert len(odd) == 2 ** (g - 1) * (2**g - 1)
        assert len(tn.characteristics(g)) == 4**g
    assert tn.sign("1/1") == -1
    assert tn.sign("10010/10110") == +1
    assert tn.is_even("00/00") and not tn.is_even("11/10")


def test_theta_reference_value():
    tau = np.array([[1j]])
    out = tn.theta("0/0", np.zeros(1, dtype=complex), tau, target_error=1e-13)
    direct = 1.0 + 2.0 * sum(math.exp(-math.pi * n * n) for n in range(1, 40))
    assert abs(out["value"] - direct) < 1e-12
    assert abs(out["value"].imag) <= out["error_bound"] + 1e-15
    assert out["terms"] > 0 and out["radius"] > 0


def test_jet_parity():
    tau = tn.random_siegel(2, seed=5, spread=0.4)
    jet = tn.theta_jet("00/00", np.zeros(2, dtype=complex), tau)
    assert np.linalg.norm(jet["gradient"]) <= 2 * jet["gradient_error"] + 1e-12
    assert np.allclose(jet["hessian"], jet["hessian"].T)
    odd = tn.theta_jet("01/01", np.zeros(2, dtype=complex), tau)
    assert abs(odd["value"]) <= odd["value_error"] + 1e-12


def test_quasi_periodicity():
    tau = tn.random_siegel(2, seed=9, spread=0.5)
    z = np.array([0.3 + 1.1j, -0.2 + 0.7j])
    z_red, cocycle = tn.reduce_argument("01/10", z, tau)
    a = tn.theta("01/10", z, tau, target_error=1e-12)
    b = tn.theta("01/10", z_red, tau, target_error=1e-12)
    slack = a["error_bound"] + abs(cocycle) * b["error_bound"] + 1e-10 * max(
        1.0, abs(cocycle)
    )
    assert abs(a["value"] - cocycle * b["value"]) <= slack


def test_vanishing_nulls_identity_tau():
    tau = 1j * np.eye(2)
    assert tn.vanishing_nulls(tau) == ["11/11"]
    h, report = tn.stratum(tau)
    assert h == 2
    assert report["verdict"] == "IN_THETA_NULL_RANK_LE_3"
    (cand,) = report["candidates"]
    assert cand["char"] == "11/11" and cand["rank"] == 2
    assert report["scale"] > 0.5 and len(report["constants"]) == 10


def test_genus5_fixture():
    tau = load_fixture("tau_star.json")
    report = tn.genus5_verdict(tau)
    assert report["verdict"] == "IN_THETA_NULL_RANK_LE_3"
    assert report["min_stratum"] == 3
    (cand,) = report["candidates"]
    assert cand["char"] == "10010/10110" and cand["rank"] == 3
    sv = cand["singular_values"]
    assert sv[3] / sv[0] < 1e-3


def test_boundary_gauss():
    tau = np.array([[1j]])
    z = np.array([(1 + 1j) / 2])
    out = tn.bordered_gauss(tau, z)
    assert out["rank"] == 2 and out["matrix"][1][1] == 0
    assert tn.boundary_stratum_check(tau, z, 2)
    assert not tn.boundary_stratum_check(tau, z, 1)
    direction = tn.gauss_map(tau, z)
    assert abs(abs(direction[0]) - 1.0) < 1e-12

    tau2 = tn.random_siegel(2, seed=3, spread=0.4)
    z2 = tn.find_divisor_point(tau2, seed=12)
    assert tn.bordered_gauss(tau2, z2)["rank"] == 3
    assert tn.gauss_diff_rank(tau2, z2) == 1


def test_two_torsion_round_trip():
    tau = tn.random_siegel(3, seed=21, spread=0.4)
    for m in tn.characteristics(3, "odd")[:5]:
        z = tn.two_torsion_point(m, tau)
        out = tn.theta("000/000", z, tau, target_error=1e-11)
        assert abs(out["value"]) <= out["error_bound"] + 1e-10


def test_errors():
    try:
        tn.characteristics(0)
        raise AssertionError("genus 0 accepted")
    except ValueError:
        pass
    try:
        tn.validate_period_matrix(np.eye(2, dtype=complex))
        raise AssertionError("real matrix accepted")
    except ValueError as e:
        assert "NotPositiveDefinite" in str(e)
    try:
        tn.gauss_map(np.array([[1j]]), np.zeros(1, dtype=complex))
        raise AssertionError("off-divisor point accepted")
    except ArithmeticError as e:
        assert "NotOnDivisor" in str(e)


def main():
    checks = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for check in checks:
        check()
        print(f"ok {check.__name__}")
    print(f"{len(checks)} python smoke checks passed "
          f"(module version {tn.__version__})")


if __name__ == "__main__":
    main()
