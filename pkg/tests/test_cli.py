import subprocess
import sys

import pytest

from fracqm.io.cli import UsageError, main, parse_config, read_config_file
from fracqm.io.csvio import read_csv


def test_defaults():
    cfg = parse_config(["solve"])
    assert cfg.alpha == [2.0] and cfg.x_max == 400.0 and cfg.closure == "printed"


def test_flags_beat_file_beat_defaults():
    text = "alpha = 1.5\nx_max = 200  # shorter run\nz = 3\n"
    cfg = parse_config(["energy", "--z", "5"], config_text=text)
    assert cfg.alpha == [1.5]
    assert cfg.x_max == 200.0
    assert cfg.z == 5.0
    assert cfg.n_grid == 400


def test_config_file_read_from_disk(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("slope_bracket = -3, -1\nclosure = variational\n")
    cfg = parse_config(["solve", "--config", str(path)])
    assert cfg.slope_bracket == (-3.0, -1.0)
    assert cfg.closure == "variational"


@pytest.mark.parametrize(
    "text, match",
    [
        ("bogus_key = 1\n", "bogus_key"),
        ("z = 1\nz = 2\n", "twice"),
        ("z = heavy\n", "z"),
        ("closure = magic\n", "closure"),
        ("just words\n", "key = value"),
    ],
)
def test_bad_config_files(text, match):
    with pytest.raises(UsageError, match=match):
        read_config_file(text)


def test_unknown_config_key_exits_2(capsys):
    assert main(["solve"], config_text="colour = red\n") == 2
    err = capsys.readouterr().err
    assert err.startswith("error:") and "colour" in err and err.count("\n") == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--alpha", "3"],
        ["solve", "--alpha", "1"],
        ["energy", "--alpha", "1.5", "--alpha", "2"],
        ["solve", "--csv", "a.out", "--svg", "a.out"],
        ["solve", "--no-such-flag"],
        ["launch"],
        [],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_domain_error_exits_2(capsys):
    assert main(["count", "--e-f", "1e9"]) == 2
    assert "R_max" in capsys.readouterr().err


def test_bracket_error_exits_3(capsys):
    assert main(["solve", "--slope-bracket", "0", "1"]) == 3
    assert capsys.readouterr().err.startswith("error:")


def test_unwritable_output_exits_2(tmp_path, capsys):
    assert main(["eos", "--csv", str(tmp_path / "missing" / "eos.csv")]) == 2
    assert "cannot write" in capsys.readouterr().err


def test_solve_writes_csv_per_alpha_and_svg(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("FRACQM_OUTPUT_DIR", str(tmp_path))
    assert main(["solve", "--alpha", "1.5", "--alpha", "2", "--csv", "w.csv", "--svg", "fig.svg"]) == 0
    out = capsys.readouterr().out
    assert "b_shoot" in out and "tail_exponent" in out
    for a in ("1.5", "2"):
        header, rows = read_csv(tmp_path / f"w_alpha{a}.csv")
        assert header == ["x", "omega", "omega_prime"]
        assert rows[0][1] == pytest.approx(1.0, abs=1e-4)
    assert (tmp_path / "fig.svg").read_text().count("<polyline") == 2


def test_profile_and_energy_outputs(tmp_path, capsys):
    assert main(["profile", "--n-grid", "200", "--csv", str(tmp_path / "p.csv")]) == 0
    header, rows = read_csv(tmp_path / "p.csv")
    assert header == ["r", "rho", "phi"] and len(rows) == 200
    assert main(["energy", "--csv", str(tmp_path / "e.csv")]) == 0
    out = capsys.readouterr().out
    header, rows = read_csv(tmp_path / "e.csv")
    assert header[:4] == ["t_kin", "v_ne", "j_hartree", "e_total"]
    assert len(rows) == 1
    assert "virial" in out


def test_count_and_eos_outputs(tmp_path, capsys):
    assert main(["count", "--csv", str(tmp_path / "c.csv")]) == 0
    header, rows = read_csv(tmp_path / "c.csv")
    assert header[:2] == ["n_exact", "u_exact"]
    assert rows[0][0] == 1023552
    assert main(["eos", "--points", "3", "--csv", str(tmp_path / "eos.csv")]) == 0
    header, rows = read_csv(tmp_path / "eos.csv")
    assert header == ["rho", "e_f", "pressure", "u_density"]
    assert [r[0] for r in rows] == pytest.approx([0.01, 1.0, 100.0])
    assert capsys.readouterr().out.count("\n") >= 4


def test_dm_check_passes(capsys):
    assert main(["dm-check"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and out.count("PASS") >= 9


def test_validate_eos_passes(capsys):
    assert main(["validate-eos"]) == 0
    assert "FAIL" not in capsys.readouterr().out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "fracqm", "eos", "--points", "2"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[0] == "rho,e_f,pressure,u_density"
