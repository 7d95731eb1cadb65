import json
import math

import pytest

import smectic


def test_q_tensor_and_densities():
    q11, q12 = smectic.q_from_angle(0.0)
    assert q11 == pytest.approx(1 / (2 * math.sqrt(2)))
    assert abs(q12) < 1e-16
    assert smectic.q_distance(math.pi / 2, 0.0) == pytest.approx(1.0)
    assert smectic.phi(math.pi / 2, 0.0, math.pi / 4, 0.5) == pytest.approx(1.0)
    assert smectic.phi(math.pi / 2, 0.0, math.pi / 2, 0.5) == pytest.approx(math.sqrt(2))
    assert math.isinf(smectic.zeta(math.pi / 2, 0.0, math.pi / 2, 0.5))
    with pytest.raises(ValueError):
        smectic.phi(1.0, 0.0, 0.0, 1.0)


def test_zigzag_energies():
    for n in (1, 4, 16, 64):
        assert smectic.zigzag_energy(1.0, n) == pytest.approx(math.sqrt(2), abs=1e-12)
    assert math.isinf(smectic.zigzag_energy(1.0, 0, kind="singular"))
    assert smectic.zigzag_energy(1.0, 0, kind="envelope") == pytest.approx(math.sqrt(2))


def test_quarter_energy_constant_profile():
    e = smectic.quarter_energy([0.0] * 101, boundary_form="pointwise")
    assert e["elastic"] == 0.0
    assert e["jump_boundary"] == pytest.approx(math.sqrt(2))
    assert e["total"] == pytest.approx(e["elastic"] + e["jump_interior"] + e["jump_boundary"])


def test_solve_rectangle():
    r = smectic.solve_rectangle(mesh=[200])
    assert r["converged"]
    assert r["linf_error"] <= 1e-3
    for th, rho in zip(r["theta"], r["rho"]):
        assert abs(rho - 1 / (1 + math.sin(th))) <= 1e-3


def test_solve_quarter():
    r1 = smectic.solve_quarter(mu=1.0)
    r2 = smectic.solve_quarter(mu=2.0)
    assert r1["converged"] and r2["converged"]
    assert r1["fit"]["max_deviation"] <= 0.02
    assert sum(r2["rho"]) < sum(r1["rho"])
    seeded = smectic.solve_quarter(seed=3)
    assert max(abs(a - b) for a, b in zip(seeded["rho"], r1["rho"])) <= 1e-3


def test_probe():
    assert smectic.probe(math.pi / 2, 0.0, math.pi / 2, kind="envelope")["verdict"] == "flat_optimal_within_family"
    assert smectic.probe(math.pi / 2, 0.0, math.pi / 2, kind="singular")["verdict"].startswith("beaten_by(")


def test_run_cli(tmp_path):
    code, out, _ = smectic.run_cli(["zigzag", "--out", str(tmp_path)])
    assert code == 0
    assert out.startswith("shape,n_teeth")
    meta = json.loads((tmp_path / "metadata.json").read_text())
    assert meta["subcommand"] == "zigzag"
    code, _, err = smectic.run_cli(["density", "--alpha", "1.0", "--out", str(tmp_path)])
    assert code == 2
    assert "(0, 1)" in err
