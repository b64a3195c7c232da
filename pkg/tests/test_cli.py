import json
import math

import pytest

from emzi.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_visibility_stdout_line(capsys):
    code, out, _ = run(capsys, "visibility", "--preset", "ghz_fock",
                       "--n", "10,10,10", "--mode", "ideal")
    assert code == 0
    assert out.strip() == "tau3=1.000000, V=0.500000, Phi=0.000000, A=1.000000"


def test_scan_csv_schema_and_sqrt_law(tmp_path, capsys):
    out_path = tmp_path / "curve.csv"
    code, _, _ = run(capsys, "scan", "--preset", "ghz_fock",
                     "--tau3", "0:1:0.25", "--mode", "ideal", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "tau3,visibility,phase,amplitude"
    for line in lines[1:]:
        t, v, _, _ = (float(x) for x in line.split(","))
        assert v == pytest.approx(math.sqrt(t) / 2, abs=1e-12)
    meta = json.loads((tmp_path / "curve.meta.json").read_text())
    assert meta["config"]["preset"] == "ghz_fock"
    assert "coefficient_path" in meta["derived"]
    assert "timing_seconds" in meta


def test_fringe_csv_schema(tmp_path, capsys):
    out_path = tmp_path / "fr.csv"
    code, _, _ = run(capsys, "fringe", "--preset", "ghz_fock",
                     "--points", "8", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "vartheta,intensity"
    assert len(lines) == 9
    first = [float(x) for x in lines[1].split(",")]
    assert first == [0.0, pytest.approx(0.75, abs=1e-12)]


def test_csv_byte_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "scan", "--preset", "class_2_2", "--tau3", "0:1:0.1", "--out", str(a))
    run(capsys, "scan", "--preset", "class_2_2", "--tau3", "0:1:0.1", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"preset": "ghz_fock", "n": "6,6,6", "mode": "ideal"}))
    code, out, _ = run(capsys, "visibility", "--config", str(cfg))
    assert code == 0 and "V=0.500000" in out
    # flag overrides the file value
    code, out, _ = run(capsys, "visibility", "--config", str(cfg),
                       "--preset", "separable_fock")
    assert code == 0 and "V=0.000000" in out


def test_unknown_config_key_is_config_error(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"presett": "ghz_fock"}))
    code, _, err = run(capsys, "visibility", "--config", str(cfg))
    assert code == 1
    assert "presett" in err


def test_exit_code_1_on_bad_flag(capsys):
    assert run(capsys, "visibility", "--preset", "nope")[0] == 1
    assert run(capsys, "visibility", "--n", "1,2")[0] == 1
    assert run(capsys, "scan", "--tau3", "0:1:-0.1")[0] == 1


def test_exit_code_2_on_domain_error(capsys):
    code, _, err = run(capsys, "visibility", "--preset", "ghz_superposed",
                       "--n", "1,1,1")
    assert code == 2
    assert "domain error" in err


def test_optimize_command(tmp_path, capsys):
    out_path = tmp_path / "opt.csv"
    code, _, _ = run(capsys, "optimize", "--preset", "ghz_superposed",
                     "--tau3", "1", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "tau3,visibility,phase,amplitude"
    assert float(lines[1].split(",")[1]) >= 9 / 16 - 1e-12
    meta = json.loads((tmp_path / "opt.meta.json").read_text())
    assert meta["derived"]["results"][0]["evaluations"] > 0


def test_selftest_command(capsys):
    code, out, _ = run(capsys, "selftest", "--cases", "25")
    assert code == 0
    assert "unitarity: pass" in out
    assert "backend_equivalence: pass" in out
