import cmath
import math

import pytest

import coldgate as cg


def test_kinetic_phase_matches_adiabatic_integral():
    tr = cg.Trajectory.sin2_round_trip(1.0, 20 * math.pi)
    approx = cg.kinetic_phase(tr, exact=False)
    assert approx == pytest.approx(math.pi**2 / (8 * 20 * math.pi), rel=1e-9)
    assert cg.kinetic_phase(tr) == pytest.approx(approx, rel=1e-2)


def test_cm_overlap_quarter_period():
    assert cg.cm_overlap(2.0, 1.0, math.pi / 2) == pytest.approx(0.8, abs=1e-12)


def test_perturbative_phase_is_positive():
    p = cg.perturbative_phase_per_period(cg.SwitchingConfig.rb87_benchmark())
    assert 0 < p["saddle_point"] < math.pi


def test_thermal_occupations_sum_to_one():
    assert sum(cg.thermal_occupations(1.0, 0.3)) == pytest.approx(1.0, abs=1e-12)


def test_phase_gate_fidelity():
    ideal = [1, 1, 1, -1]
    assert cg.phase_gate_fidelity(ideal, ideal) == pytest.approx(1.0, abs=1e-12)
    off = [1, 1, 1, -cmath.exp(0.5j)]
    assert cg.phase_gate_fidelity(ideal, off) == pytest.approx(math.cos(0.25) ** 2, abs=1e-8)


def test_ramsey_pair():
    r = cg.LatticeRegister(2)
    r.ramsey(math.pi)
    assert [complex(a) for a in r.state] == pytest.approx([0.5, 0.5, -0.5, 0.5], abs=1e-12)


def test_syndrome_table_has_every_error():
    rows = cg.syndrome_table()
    assert len(rows) == 28
    assert rows[0]["syndrome"] == "000 00 000"
    assert all(r["residual_fidelity"] == pytest.approx(1.0) for r in rows)


def test_sweep_constructions():
    assert cg.ghz_fidelity(4) == pytest.approx(1.0, abs=1e-12)
    q = cg.sweep_qft([1, 0, 1])
    assert q["target"] == pytest.approx(q["expected"], abs=1e-12)
    m = cg.ft_cnot_logical()
    assert abs(m[3][1]) == pytest.approx(1.0)


def test_small_mott_lattice():
    r = cg.mott_loading(lx=9, ly=9)
    assert r["converged"]
    assert set(r["labels"]) <= {"MI(0)", "MI(1)"}


def test_validation_error_maps_to_value_error(tmp_path):
    with pytest.raises(ValueError):
        cg.run_scenario("qc-ghz", "bogus=1\n", str(tmp_path))
    assert cg.run_scenario("qc-qft", "", str(tmp_path)) == 0
    assert (tmp_path / "qft_check.csv").exists()
