import csv
import io
import subprocess
import sys

import pytest

from mangoldt_twists.cli import main, parse_int_list, parse_real, parse_real_list
from mangoldt_twists.zeros import ZEROS_ENV, fixture_path


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def body(text):
    return "".join(line + "\n" for line in text.splitlines() if not line.startswith("#"))


def rows(text):
    return list(csv.DictReader(io.StringIO(body(text))))


def test_parsers():
    assert parse_real("1e6") == 1e6
    assert parse_real("1/3") == 1 / 3
    assert parse_real_list("1e4..1e6:3") == pytest.approx([1e4, 1e5, 1e6])
    assert parse_real_list("") == []
    assert parse_int_list("1..4") == [1, 2, 3, 4]
    assert parse_int_list("2,5") == [2, 5]


def test_sum(capsys):
    code, out, _ = run(["sum", "--x", "1000", "--k", "1", "--alpha", "1", "--theta", "0.5"], capsys)
    assert code == 0
    assert out.startswith("# ")
    assert "# theta=0.5" in out
    (row,) = rows(out)
    assert float(row["abs"]) <= float(row["psi_mass"])
    assert float(row["abs"]) == pytest.approx(abs(complex(float(row["re"]), float(row["im"]))))


def test_sum_usage_errors(capsys):
    assert run(["sum", "--x", "1000", "--k", "1", "--theta", "0.5"], capsys)[0] == 2
    code, _, err = run(["sum", "--x", "1000", "--k", "1", "--alpha", "0", "--theta", "0.5"], capsys)
    assert code == 2 and "degenerate" in err
    assert run(["sum", "--x", "1000", "--k", "1", "--alpha", "0", "--theta", "0.5",
                "--degenerate-ok"], capsys)[0] == 0
    assert run(["sum", "--x", "1000", "--k", "1.5", "--alpha", "1", "--theta", "0.5"], capsys)[0] == 2
    assert run(["sum", "--x", "1000", "--k", "1", "--alpha", "1", "--theta", "1/0"], capsys)[0] == 2
    assert run(["sum", "--x", "1000", "--k", "1", "--alpha", "1", "--theta", "2"], capsys)[0] == 2


def test_sum_resource_limit(capsys):
    code, _, err = run(["sum", "--x", "1e6", "--k", "1", "--alpha", "1", "--theta", "0.5",
                        "--max-width", "1000"], capsys)
    assert code == 3 and "max_width" in err


def test_theta_fraction_is_exact(capsys):
    _, a, _ = run(["sum", "--x", "1e4", "--k", "1", "--alpha", "1", "--theta", "1/3"], capsys)
    assert "# theta=1/3" in a
    assert float(rows(a)[0]["theta"]) == 1 / 3


def test_psi(capsys):
    code, out, _ = run(["psi", "--x", "10"], capsys)
    assert code == 0
    assert float(rows(out)[0]["psi"]) == pytest.approx(7.8320141, abs=1e-7)


def test_zeros_info(capsys):
    code, out, _ = run(["zeros-info", "--zeros", str(fixture_path())], capsys)
    assert code == 0
    (row,) = rows(out)
    assert row["count"] == "100"
    assert float(row["first"]) == pytest.approx(14.134725, abs=1e-6)
    assert float(row["max_rvm_residual"]) < 3


def test_zeros_info_missing_table(capsys, monkeypatch, tmp_path):
    monkeypatch.delenv(ZEROS_ENV, raising=False)
    assert run(["zeros-info"], capsys)[0] == 2
    assert run(["zeros-info", "--zeros", str(tmp_path / "none.txt")], capsys)[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("14.1\n12.0\n")
    code, _, err = run(["zeros-info", "--zeros", str(bad)], capsys)
    assert code == 4 and "line 2" in err


def test_explicit_coverage_and_empty(capsys, monkeypatch):
    monkeypatch.setenv(ZEROS_ENV, str(fixture_path()))
    base = ["explicit", "--x", "1000", "--k", "1", "--alpha", "1", "--theta", "1/3"]
    code, _, err = run(base + ["--T", "100,1000"], capsys)
    assert code == 4 and "236.52" in err
    code, out, _ = run(base + ["--T", ""], capsys)
    assert code == 0
    assert body(out) == "T,direct_re,direct_im,approx_re,approx_im,abs_diff,error_scale,ratio\n"
    code, out, _ = run(base + ["--T", "50,200"], capsys)
    assert code == 0 and len(rows(out)) == 2


def test_sweep(capsys):
    code, out, _ = run(["sweep", "--x-grid", "1e4..1e6:3", "--k-grid", "1", "--theta", "1/3"], capsys)
    assert code == 0
    table = rows(out)
    assert len(table) == 3
    for r in table:
        assert float(r["abs_S"]) <= float(r["psi_mass"])
        assert float(r["ratio_theorem_1_1"]) == pytest.approx(float(r["abs_S"]) / float(r["theorem_1_1"]))


def test_sweep_out_of_range_marking(capsys):
    code, out, _ = run(["sweep", "--x-grid", "1e4", "--k-grid", "1", "--theta", "0.45"], capsys)
    (r,) = rows(out)
    assert code == 0
    assert r["theorem_1_1"] == "out-of-range" and r["ratio_theorem_1_1"] == "out-of-range"


def test_bounds_all(capsys):
    code, out, _ = run(["bounds", "--x", "1e6", "--k", "1", "--theta", "0.3333", "--all"], capsys)
    assert code == 0
    names = [r["name"] for r in rows(out)]
    assert names == ["ren_general", "ren_small_theta", "ren_zdh", "theorem_1_1", "theorem_1_2_zdh",
                     "murty_srinivas", "vinogradov"]


def test_bounds_single_name_precondition(capsys):
    code, _, err = run(["bounds", "--x", "1e6", "--k", "1", "--theta", "0.3333", "--name", "vinogradov"],
                       capsys)
    assert code == 2 and "theta = 1/2" in err


def test_out_file(tmp_path, capsys):
    dest = tmp_path / "psi.csv"
    assert run(["psi", "--x", "100", "--out", str(dest)], capsys)[0] == 0
    assert dest.read_text().startswith("# mangoldt-twists")


@pytest.mark.parametrize("argv", [
    ["sum", "--x", "3e5", "--k", "2", "--alpha", "0.7", "--theta", "1/3"],
    ["psi", "--x", "2e5"],
    ["sweep", "--x-grid", "1e4,1e5", "--k-grid", "1..2", "--theta", "0.3"],
])
def test_bodies_identical_across_threads(argv, capsys):
    _, one, _ = run(argv + ["--threads", "1"], capsys)
    _, four, _ = run(argv + ["--threads", "4"], capsys)
    assert body(one) == body(four)
    assert one != four  # the header echoes the thread count


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "mangoldt_twists", "psi", "--x", "10"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert "7.83201418" in res.stdout
