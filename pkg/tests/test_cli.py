import csv
import io
import json
import os
import subprocess
import sys

import pytest

from qcat import cli


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


# ------------------------------------------------------------------ report

def test_report_vacuum(capsys):
    code, out, _ = run(["report", "--q", "1", "--alpha-re", "0", "--kind", "coherent"], capsys)
    assert code == 0
    assert "var_X                   0.25" in out
    assert "undefined_at_vacuum" in out


def test_report_json_cat(capsys):
    code, out, _ = run(["report", "--q", "0.9", "--alpha-re", "2.1", "--kind", "cat-even",
                        "--format", "json"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert isinstance(rep["quadratures"]["y_squeezed"], bool)
    p = rep["distribution"]["p_head"]
    assert len(p) == cli.REPORT_LEVELS and all(v == 0.0 for v in p[1::2])
    for key in ("var_n_paper", "var_n_derived", "mandel_paper", "mandel_derived"):
        assert key in rep["number"]
    assert rep["flags"]["sub_poissonian"] is True


@pytest.mark.parametrize("argv,name", [
    (["report", "--q", "0.9", "--alpha-re", "2.4", "--kind", "coherent"], "NonNormalizable"),
    (["report", "--q", "0.9", "--alpha-re", "0", "--kind", "cat-odd"], "NullState"),
    (["report", "--q", "1.5", "--alpha-re", "0.3"], "q must lie"),
    (["report", "--alpha-re", "0.3"], "needs --q"),
])
def test_report_domain_errors(argv, name, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and name in err


def test_bad_flag_exit_2(capsys):
    code, _, _ = run(["report", "--kind", "squeezed"], capsys)
    assert code == 2


# ------------------------------------------------------------------- sweep

def test_sweep_two_steps(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(["sweep", "--var", "alpha", "--from", "0.1", "--to", "1", "--steps", "2",
                      "--q", "0.9", "--kind", "cat-even", "--out", str(out)], capsys)
    assert code == 0
    rows = read_csv(out)
    assert rows[0][0] == "alpha" and "mandel_derived" in rows[0]
    assert len(rows) == 3


def test_sweep_deterministic_lf_and_roundtrip(tmp_path, capsys):
    args = ["sweep", "--var", "alpha", "--from", "0.01", "--to", "3", "--steps", "37", "--q", "0.9",
            "--kind", "cat-even", "--outputs", "var_y,gur_rhs,mandel_paper"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(args + ["--out", str(a)], capsys)
    run(args + ["--out", str(b)], capsys)
    raw = a.read_bytes()
    assert raw == b.read_bytes()
    assert b"\r" not in raw
    rows = read_csv(a)
    assert rows[0] == ["alpha", "var_y", "gur_rhs_sq", "mandel_paper"]
    for row in rows[1:]:
        for cell in row:
            if cell != cli.NON_NORMALIZABLE:
                assert cli.format_cell(float(cell)) == cell
    # |alpha|^2 >= 1/(1 - 0.81) beyond alpha ~ 2.294
    last = rows[-1]
    assert last[1:] == [cli.NON_NORMALIZABLE] * 3
    assert "nan" not in raw.decode().lower()


def test_sweep_q(capsys):
    code, out, _ = run(["sweep", "--var", "q", "--from", "0.5", "--to", "1.0", "--steps", "6",
                        "--alpha-re", "0.8", "--kind", "cat-even", "--outputs", "gur_lhs_sq,gur_rhs_sq"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 7 and rows[0][0] == "q"
    assert all(float(r[1]) >= float(r[2]) for r in rows[1:])


def test_sweep_reason_codes(capsys):
    code, out, _ = run(["sweep", "--var", "alpha", "--from", "0", "--to", "1", "--steps", "3", "--q", "0.9",
                        "--kind", "cat-odd", "--outputs", "var_x,mandel_derived"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[1][1:] == [cli.NULL_STATE, cli.NULL_STATE]
    code, out, _ = run(["sweep", "--var", "alpha", "--from", "0", "--to", "1", "--steps", "3", "--q", "0.9",
                        "--kind", "coherent", "--outputs", "var_x,mandel_derived,p_3"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[1][2] == cli.UNDEFINED_AT_VACUUM and float(rows[1][1]) == 0.25


@pytest.mark.parametrize("extra", [
    ["--steps", "1"], ["--from", "2", "--to", "1"], ["--outputs", "bogus"], ["--var", "q", "--to", "1.2"],
])
def test_sweep_invalid(extra, capsys):
    base = {"--var": "alpha", "--from": "0.1", "--to": "1", "--steps": "5", "--q": "0.9", "--alpha-re": "0.5"}
    for k, v in zip(extra[::2], extra[1::2]):
        base[k] = v
    argv = ["sweep"] + [x for kv in base.items() for x in kv]
    code, _, _ = run(argv, capsys)
    assert code == 2


def test_sweep_formats(capsys):
    base = ["sweep", "--from", "0.1", "--to", "0.5", "--steps", "3", "--q", "0.8", "--outputs", "var_x,y_squeezed"]
    code, out, _ = run(base + ["--format", "json"], capsys)
    data = json.loads(out)
    assert data["columns"] == ["alpha", "var_x", "y_squeezed"] and len(data["rows"]) == 3
    code, out, _ = run(base + ["--format", "text"], capsys)
    assert code == 0 and out.splitlines()[0].split() == ["alpha", "var_x", "y_squeezed"]


def test_no_partial_file(tmp_path, monkeypatch):
    target = tmp_path / "out.csv"

    def boom(src, dst):
        raise OSError("disk full")

    monkeypatch.setattr(cli.os, "replace", boom)
    with pytest.raises(OSError):
        cli.write_output("a,b\n1,2\n", str(target))
    assert list(tmp_path.iterdir()) == []


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"steps": 3, "q": 0.8, "from": 0.1, "to": 0.9, "outputs": "var_x"}))
    code, out, _ = run(["--config", str(cfg), "sweep"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4 and rows[0] == ["alpha", "var_x"]
    code, out, _ = run(["--config", str(cfg), "sweep", "--steps", "5"], capsys)
    assert len(list(csv.reader(io.StringIO(out)))) == 6
    code, _, err = run(["--config", str(tmp_path / "missing.json"), "sweep"], capsys)
    assert code == 2 and "config" in err


# ------------------------------------------------------------------ figure

def test_figure_unknown(capsys):
    code, _, err = run(["figure", "--preset", "fig9"], capsys)
    assert code == 2 and "unknown preset" in err


@pytest.mark.parametrize("preset", sorted(cli.FIGURES))
def test_figure_presets_write(preset, tmp_path, capsys):
    out = tmp_path / f"{preset}.csv"
    assert cli.main(["figure", "--preset", preset, "--out", str(out)]) == 0
    rows = read_csv(out)
    assert len(rows) > 10 and len({len(r) for r in rows}) == 1


def test_figure_q_list(capsys):
    code, out, _ = run(["figure", "--preset", "fig5b", "--q-list", "0.7,0.95"], capsys)
    header = out.splitlines()[0].split(",")
    assert header == ["alpha", "mandel_derived_q0.7", "mandel_derived_q0.95", "mandel_paper_q0.7",
                      "mandel_paper_q0.95", "mandel_ordinary"]


# ------------------------------------------------------------------ verify

def test_verify_default(capsys):
    code, out, _ = run(["verify"], capsys)
    assert code == 0
    section = out.split("paper discrepancies", 1)[1]
    assert "mean_AdagAAdagA_paper" in section and "E_q(-2|alpha|^2)" in section
    assert "status: PASS" in out


def test_verify_tight_tolerance_fails(capsys):
    code, out, _ = run(["verify", "--rel-tol", "1e-15", "--grid-only"], capsys)
    assert code == 1 and "status: FAIL" in out


def test_verify_grid_q1(capsys):
    code, out, _ = run(["verify", "--grid", "q=1", "--grid-only", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    names = {r["quantity_name"] for r in data["paper_discrepancies"]}
    # at q = 1 only the cat fourth-moment family still differs
    assert names == {"mean_AdagAAdagA_paper", "var_n_paper", "mandel_paper"}
    contexts = {r["context"].split()[-1] for r in data["paper_discrepancies"]}
    assert "coherent" not in contexts


@pytest.mark.parametrize("argv", [["verify", "--grid", "z=1"], ["verify", "--rel-tol", "1e-20"],
                                  ["verify", "--grid", "q=1.4"]])
def test_verify_config_errors(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "qcat", "sweep", "--from", "0.1", "--to", "0.2",
                           "--steps", "2", "--q", "0.9", "--outputs", "var_x"],
                          capture_output=True, text=True, cwd=tmp_path)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "alpha,var_x"
    proc = subprocess.run([sys.executable, "-m", "qcat", "report", "--q", "0.9", "--alpha-re", "2.4"],
                          capture_output=True, text=True, cwd=tmp_path)
    assert proc.returncode == 2
