import json
import math

import numpy as np
import pytest

from rindler_teleport.cli import main, read_config
from rindler_teleport.fock import loads


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fidelity_csv_header_and_rows(capsys):
    code, out, _ = run(capsys, "fidelity", "--r-stop", "1", "--r-step", "0.25", "--n-max", "8")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# rindler-teleport")
    assert any(line.startswith("# columns: r,fidelity,fidelity_closed") for line in lines)
    rows = [line for line in lines if not line.startswith("#")][1:]
    assert len(rows) == 5
    first = rows[0].split(",")
    assert float(first[1]) == pytest.approx(1.0)


def test_fermionic_endpoint_row(capsys):
    code, out, _ = run(capsys, "fidelity", "--statistics", "fermionic", "--r-step", "0.1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema_version"] == 1
    last = doc["rows"][-1]
    assert last[0] == pytest.approx(math.pi / 4) and last[1] == pytest.approx(0.5, abs=1e-12)


def test_deterministic_bytes(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert main(["entropy", "--r-stop", "0.6", "--r-step", "0.2", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_timestamp_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    _, out, _ = run(capsys, "entropy", "--statistics", "fermionic", "--r-step", "0.5")
    assert "# timestamp: 1970-01-01T00:00:00+00:00" in out


def test_entropy_fermionic_column(capsys):
    code, out, _ = run(capsys, "entropy", "--statistics", "fermionic", "--r-step", "0.05", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    for row in doc["rows"]:
        assert row[1] == pytest.approx(math.cos(row[0]) ** 2, abs=1e-10)


def test_entropy_bosonic_monotone(capsys):
    code, out, _ = run(capsys, "entropy", "--r-stop", "1.5", "--r-step", "0.25", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["summary"]["monotone_non_increasing"]
    assert doc["rows"][0][1] == pytest.approx(1.0)


def test_parallel_rows_match_serial(capsys):
    _, serial, _ = run(capsys, "entropy", "--r-stop", "0.5", "--r-step", "0.25")
    _, parallel, _ = run(capsys, "entropy", "--r-stop", "0.5", "--r-step", "0.25", "--jobs", "2")
    assert serial.replace("jobs", "") == parallel.replace("jobs", "")


def test_dump_roundtrip_and_structure(tmp_path):
    path = tmp_path / "rho.json"
    assert main(["dump", "--r", "0.5", "--n-max", "4", "--alpha", "0.6", "--beta", "0.8j",
                 "--out", str(path)]) == 0
    text = path.read_text()
    doc = json.loads(text)
    rho = loads(text)
    assert np.array_equal(loads(json.dumps(doc)).matrix, rho.matrix)
    mask = np.array(doc["block_tridiagonal_mask"], dtype=bool)
    assert np.all(rho.matrix[~mask] == 0)
    assert [s["n"] for s in doc["sectors"]] == [0, 1, 2, 3, 4]


def test_dump_zero_acceleration_single_block(capsys):
    code, out, _ = run(capsys, "dump", "--r", "0", "--n-max", "3")
    rho = loads(out)
    nz = np.argwhere(np.abs(rho.matrix) > 0)
    assert code == 0 and len({tuple(x) for x in nz}) == 4
    idx = sorted({int(i) for i in nz.ravel()})
    assert [rho.basis[i] for i in idx] == [(0, 1), (1, 0)]


def test_pdc_identity(capsys):
    code, out, _ = run(capsys, "pdc", "--s11", "1", "--s21", "0", "--format", "json")
    doc = json.loads(out)
    values = {row[0]: row[1] for row in doc["rows"]}
    assert code == 0 and values["vacuum_amplitude_0"] == 1.0 and values["temperature_thermal"] == 0.0


def test_pdc_rindler_identification(capsys):
    big_omega, omega = 0.3, 2.0
    r = math.atanh(math.exp(-math.pi * big_omega))
    code, out, _ = run(capsys, "pdc", "--s11", repr(math.cosh(r)), "--s21", repr(math.sinh(r)),
                       "--omega", str(omega), "--natural", "--format", "json")
    values = {row[0]: row[1] for row in json.loads(out)["rows"]}
    assert code == 0
    assert values["rindler_Omega"] == pytest.approx(big_omega, rel=1e-10)
    # hbar a / (2 pi c k_B) with a = omega c / Omega
    assert values["temperature_thermal"] == pytest.approx(omega / big_omega / (2 * math.pi), rel=1e-10)


def test_pdc_rejects_non_normalizable(capsys):
    code, _, err = run(capsys, "pdc", "--s11", "1", "--s21", "1.5")
    assert code == 1 and "non-normalizable" in err


def test_pdc_reports_residual_failure(capsys):
    code, out, _ = run(capsys, "pdc", "--s11", "1", "--s21", "0.5")
    assert code == 2 and "residual_signal_norm,0.25" in out


def test_convert_terrestrial(capsys):
    code, out, _ = run(capsys, "convert", "--a", "10", "--omega", "3e15", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["a_over_c"] == pytest.approx(3.3e-8, rel=0.02)
    assert doc["r_bosonic"] == 0.0 and doc["log10_r_bosonic"] < -1e20


def test_convert_zero_and_roundtrip(capsys):
    code, out, _ = run(capsys, "convert", "--a", "0", "--omega", "1")
    assert code == 0 and "r_bosonic = 0.0" in out and "T_U_kelvin = 0.0" in out
    code, out, _ = run(capsys, "convert", "--a", "1", "--omega", "0.7", "--natural", "--format", "json")
    assert code == 0 and json.loads(out)["roundtrip_rel_error"] < 1e-10


def test_convert_negative_input(capsys):
    code, _, _ = run(capsys, "convert", "--a", "-1", "--omega", "1")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["fidelity", "--r-start", "2", "--r-stop", "1"],
    ["fidelity", "--r-step", "0"],
    ["fidelity", "--outcome", "21"],
    ["nonsense"],
    ["entropy", "--format", "xml"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        code = main(argv)
        raise SystemExit(code)
    assert info.value.code == 1


def test_unwritable_output(capsys):
    code, _, err = run(capsys, "entropy", "--statistics", "fermionic", "--out", "/nonexistent/dir/x.csv")
    assert code == 1 and "cannot write" in err


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep\nstatistics = fermionic\nr-step = 0.25\nformat=json\n")
    assert read_config(cfg)["r_step"] == "0.25"
    code, out, _ = run(capsys, "--config", str(cfg), "entropy")
    doc = json.loads(out)
    assert code == 0 and doc["parameters"]["statistics"] == "fermionic" and doc["parameters"]["r_step"] == 0.25
    code, out, _ = run(capsys, "--config", str(cfg), "entropy", "--r-step", "0.5")
    assert json.loads(out)["parameters"]["r_step"] == 0.5


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("wavelength = 3\n")
    code, _, err = run(capsys, "--config", str(cfg), "entropy")
    assert code == 1 and "unknown config keys" in err
