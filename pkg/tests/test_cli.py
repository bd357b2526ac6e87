import csv
import io
import json
import re
import subprocess
import sys

import pytest

from cmvirial import cli
from cmvirial.errors import ConvergenceError


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), stdout=out)
    return code, out.getvalue()


def pairs(text):
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["quantity", "value"]
    return {k: v for k, v in rows[1:]}


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_variational_beta_one():
    code, out = run("variational", "--beta", "1")
    assert code == 0
    vals = pairs(out)
    assert float(vals["w_rel"]) == pytest.approx(1.0816872, abs=1e-7)
    assert float(vals["w_lab"]) == pytest.approx(1.7170714, abs=1e-7)
    assert float(vals["lab_t_cm"]) == pytest.approx(0.5723571, abs=1e-7)
    assert float(vals["lab_virial_relative_only"]) < 0
    assert abs(float(vals["lab_virial_total"])) <= 1e-8
    assert float(vals["rel_numeric_gap"]) <= 1e-9
    # nine significant digits
    assert vals["w_rel"] == "1.08168718"


def test_variational_json_has_same_numbers():
    _, text = run("variational", "--beta", "1")
    code, js = run("variational", "--beta", "1", "--format", "json")
    assert code == 0
    data = json.loads(js)
    for key, value in pairs(text).items():
        assert data[key] == pytest.approx(float(value), rel=1e-15)


@pytest.mark.parametrize("argv", [("variational", "--beta", "0"), ("exact", "--beta", "-1")])
def test_domain_errors_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == 2
    assert "beta" in capsys.readouterr().err


def test_exact_values():
    code, out = run("exact", "--beta", "1", "--tol", "1e-9")
    assert code == 0
    vals = pairs(out)
    assert float(vals["e0"]) == pytest.approx(1.06036209, abs=1e-8)
    assert float(vals["scaled_e0"]) == pytest.approx(1.06036209, abs=1e-8)
    _, out3 = run("exact", "--beta", "3")
    assert float(pairs(out3)["e0"]) == pytest.approx(1.6832199, abs=1e-7)


def test_convergence_error_exit_3(monkeypatch):
    def boom(*args, **kwargs):
        raise ConvergenceError("no luck")

    monkeypatch.setattr(cli, "ground_state_energy", boom)
    assert run("exact", "--beta", "1")[0] == 3


def test_sweep_files(tmp_path):
    code, _ = run("sweep", "--output-dir", str(tmp_path), "--emit-plots")
    assert code == 0
    fig2 = read_csv(tmp_path / "fig2.csv")
    fig3 = read_csv(tmp_path / "fig3.csv")
    assert fig2[0] == ["beta", "w_rel", "w_lab", "e0_exact"]
    assert fig3[0] == ["beta", "beta_over_1p_beta", "delta_w"]
    assert len(fig2) == len(fig3) == 51
    for _, w_rel, w_lab, e0 in fig2[1:]:
        assert float(w_lab) > float(w_rel) > float(e0)
    last = fig3[-1]
    assert float(last[0]) == 1.0
    assert float(last[2]) == pytest.approx(0.635384, abs=1e-6)
    raw = (tmp_path / "fig2.csv").read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")

    svg2 = (tmp_path / "fig2.svg").read_text()
    assert svg2.count("<polyline") == 2
    assert svg2.count('<g class="markers"') == 1
    assert svg2.count("<circle") == 50
    svg3 = (tmp_path / "fig3.svg").read_text()
    assert svg3.count("<polyline") == 1


def test_sweep_grid_points_flag(tmp_path):
    assert run("sweep", "--output-dir", str(tmp_path), "--grid-points", "7")[0] == 0
    assert len(read_csv(tmp_path / "fig2.csv")) == 8
    assert not (tmp_path / "fig2.svg").exists()


def test_sweep_rejects_single_point():
    assert run("sweep", "--grid-points", "1")[0] == 2


def test_molecules_default(tmp_path):
    code, out = run("molecules", "--output-dir", str(tmp_path), "--emit-plots")
    assert code == 0
    vals = pairs(out)
    assert set(vals) == {"slope", "intercept", "r_squared"}
    assert float(vals["r_squared"]) == pytest.approx(0.935665798, abs=1e-9)
    table = read_csv(tmp_path / "table1.csv")
    assert len(table) == 7
    h2 = dict(zip(table[0], table[1]))
    assert float(h2["delta_w"]) == pytest.approx(0.111654, abs=5e-7)
    fig1 = read_csv(tmp_path / "fig1.csv")
    assert fig1[0] == ["inv_mass_number", "delta_w", "fit_prediction"]
    assert len(fig1) == 7
    assert (tmp_path / "fig1.svg").exists()


def test_molecules_custom_input(tmp_path):
    src = tmp_path / "custom.csv"
    src.write_text("name,w_reference,w_test,mass_number\nA,-1.0,-0.9,2\nB,-1.0,-0.95,4\n")
    code, out = run("molecules", "--input", str(src), "--output-dir", str(tmp_path / "out"))
    assert code == 0
    assert float(pairs(out)["r_squared"]) == 1.0


def test_molecules_malformed_line(tmp_path, capsys):
    src = tmp_path / "bad.csv"
    src.write_text("name,w_reference,w_test,mass_number\nA,-1.0,-0.9,2\nB,-1.0,oops,4\n")
    code, _ = run("molecules", "--input", str(src), "--output-dir", str(tmp_path))
    assert code == 2
    assert "line 3" in capsys.readouterr().err
    assert not (tmp_path / "table1.csv").exists()


def test_molecules_too_few_rows(tmp_path):
    src = tmp_path / "one.csv"
    src.write_text("name,w_reference,w_test,mass_number\nA,-1.0,-0.9,2\n")
    assert run("molecules", "--input", str(src), "--output-dir", str(tmp_path))[0] == 2


def test_missing_input_is_io_error(tmp_path):
    assert run("molecules", "--input", str(tmp_path / "nope.csv"))[0] == 4


def test_unwritable_output_is_io_error(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert run("molecules", "--output-dir", str(blocker / "sub"))[0] == 4


def test_report_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run("report", "--output-dir", str(a))[0] == 0
    assert run("report", "--output-dir", str(b))[0] == 0
    text = (a / "report.md").read_bytes()
    assert text == (b / "report.md").read_bytes()
    doc = text.decode()
    assert "all ordering checks passed" in doc
    assert "| H2 | 2 |" in doc
    assert "r^2" in doc
    assert sorted(p.name for p in a.iterdir()) == ["report.md"]


def test_report_tolerance_semantics(tmp_path):
    run("report", "--output-dir", str(tmp_path / "loose"), "--tol", "1e-6")
    run("report", "--output-dir", str(tmp_path / "tight"), "--tol", "1e-9")

    def e0(path):
        m = re.search(r"e0 \(basis, \d+ functions\): (\S+)", (path / "report.md").read_text())
        return float(m.group(1))

    assert e0(tmp_path / "loose") == pytest.approx(e0(tmp_path / "tight"), abs=1e-6)


def test_config_file_and_flag_precedence(tmp_path, monkeypatch):
    conf = tmp_path / "run.conf"
    conf.write_text("# defaults\ngrid_points = 5\noutput_dir = %s\nemit_plots = true\n" % (tmp_path / "fromfile"))
    assert run("sweep", "--config", str(conf))[0] == 0
    assert len(read_csv(tmp_path / "fromfile" / "fig2.csv")) == 6
    assert (tmp_path / "fromfile" / "fig2.svg").exists()
    assert run("sweep", "--config", str(conf), "--grid-points", "3", "--output-dir", str(tmp_path / "flag"))[0] == 0
    assert len(read_csv(tmp_path / "flag" / "fig2.csv")) == 4


def test_env_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path / "env"))
    assert run("sweep", "--grid-points", "2")[0] == 0
    assert (tmp_path / "env" / "fig3.csv").exists()
    assert run("sweep", "--grid-points", "2", "--output-dir", str(tmp_path / "flag"))[0] == 0
    assert (tmp_path / "flag" / "fig3.csv").exists()


def test_bad_config_key(tmp_path):
    conf = tmp_path / "bad.conf"
    conf.write_text("colour = blue\n")
    assert run("sweep", "--config", str(conf))[0] == 2


def test_module_entry_point_exit_code():
    proc = subprocess.run(
        [sys.executable, "-m", "cmvirial", "variational", "--beta", "-2"], capture_output=True, text=True
    )
    assert proc.returncode == 2
    proc = subprocess.run([sys.executable, "-m", "cmvirial", "bogus"], capture_output=True, text=True)
    assert proc.returncode == 2
