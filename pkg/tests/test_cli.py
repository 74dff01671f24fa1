import json
import math

import pytest

from cekit.cli import main
from cekit.measures import named_measures
from cekit.states import dicke


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    lines = [line for line in text.strip().splitlines() if line]
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


def test_compute_ghz3_named(capsys):
    code, out, _ = run_cli(capsys, "compute", "--state", "ghz:3", "--s", "1,2,3", "--named")
    assert code == 0
    row = parse_csv(out)[0]
    assert float(row["value"]) == pytest.approx(0.75, abs=1e-12)
    assert float(row["e"]) == pytest.approx(0.75, abs=1e-12)
    assert float(row["r2"]) == pytest.approx(0.75, abs=1e-12)
    assert float(row["t3"]) == pytest.approx(0.28125, abs=1e-12)
    assert float(row["c"]) == pytest.approx(0.375, abs=1e-12)


def test_compute_product_state_zero(capsys):
    code, out, _ = run_cli(capsys, "compute", "--state", "product:2x2x2:5")
    assert code == 0
    assert float(parse_csv(out)[0]["value"]) == pytest.approx(0.0, abs=1e-12)


def test_compute_dicke42_matches_library(capsys):
    code, out, _ = run_cli(capsys, "compute", "--state", "dicke:4:2", "--named")
    assert code == 0
    row = parse_csv(out)[0]
    nm = named_measures(dicke(4, 2), (1, 2, 3, 4))
    assert float(row["e"]) == pytest.approx(nm.e, abs=1e-12)
    assert float(row["c"]) == pytest.approx(nm.c, abs=1e-12)


def test_compute_alpha_grid(capsys):
    code, out, _ = run_cli(capsys, "compute", "--state", "ghz:3", "--alpha", "1:3:3", "--beta", "1")
    assert code == 0
    rows = parse_csv(out)
    assert [float(r["alpha"]) for r in rows] == [1.0, 2.0, 3.0]
    values = [float(r["value"]) for r in rows]
    assert values[0] >= values[1] >= values[2]


def test_ghz_w_sweep_separation(capsys):
    code, out, _ = run_cli(capsys, "ghz-w-sweep", "--nmin", "2", "--nmax", "5")
    assert code == 0
    rows = parse_csv(out)
    for row in rows:
        if int(row["n"]) >= 3:
            assert float(row["delta"]) > 0.0
        else:
            assert abs(float(row["delta"])) < 1e-10
    assert {row["measure"] for row in rows} == {"e", "r2", "t3", "c"}


def test_ghz_w_sweep_closed_form_path(capsys):
    code, out, _ = run_cli(capsys, "ghz-w-sweep", "--nmin", "12", "--nmax", "12", "--sizes", "1,6,12")
    assert code == 0
    rows = parse_csv(out)
    assert len(rows) == 12
    for row in rows:
        assert float(row["delta"]) > 0.0
    full = [r for r in rows if r["size"] == "12" and r["measure"] == "e"][0]
    assert float(full["ghz"]) == pytest.approx(1 - 2**-11, abs=1e-12)


def test_star_sweep_structure(capsys):
    code, out, _ = run_cli(capsys, "star-sweep", "--grid", f"0:{math.pi/2}:21")
    assert code == 0
    rows = parse_csv(out)
    assert len(rows) == 21
    assert float(rows[0]["e"]) == pytest.approx(0.0, abs=1e-12)
    assert float(rows[-1]["e"]) == pytest.approx(0.0, abs=1e-10)
    mid = rows[10]
    assert float(mid["e"]) == pytest.approx(1.5, abs=1e-10)
    for row in rows:
        assert float(row["e"]) >= float(row["r2"]) - 1e-10
        assert float(row["r2"]) >= float(row["c"]) - 1e-10
        assert float(row["c"]) >= float(row["t3"]) - 1e-10


def test_dicke_table_symmetry(capsys):
    code, out, _ = run_cli(capsys, "dicke-table")
    assert code == 0
    rows = parse_csv(out)
    assert len(rows) == 5
    for measure in ("e", "r2", "t3", "c"):
        vals = [float(r[measure]) for r in rows]
        assert vals[0] == pytest.approx(vals[4], abs=1e-10)
        assert vals[1] == pytest.approx(vals[3], abs=1e-10)
        assert max(vals) == pytest.approx(vals[2], abs=1e-12)


def test_verify_quick_suites(capsys):
    assert run_cli(capsys, "verify", "schur", "--trials", "50")[0] == 0
    assert run_cli(capsys, "verify", "ordering", "--trials", "5")[0] == 0
    assert run_cli(capsys, "verify", "swap-consistency", "--trials", "2")[0] == 0
    assert run_cli(capsys, "verify", "tensor-id", "--trials", "5")[0] == 0


def test_verify_unknown_suite_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "not-a-suite"])
    assert exc.value.code == 2


def test_verify_failing_suite_exits_3(capsys, monkeypatch):
    import cekit.suites as suites
    from cekit.suites import SuiteResult

    def broken(seed=0, trials=1):
        return SuiteResult("schur", trials, ["trial 0 seed 0: synthetic failure"])

    monkeypatch.setitem(suites.SUITES, "schur", broken)
    code, out, _ = run_cli(capsys, "verify", "schur", "--trials", "1")
    assert code == 3
    assert "FAIL" in out


def test_swaptest_command(capsys):
    code, out, _ = run_cli(
        capsys, "swaptest", "--state", "ghz:3", "--shots", "20000", "--seed", "7"
    )
    assert code == 0
    assert "exact C = 0.375" in out
    assert "estimate C" in out
    assert "E lower bound" in out


def test_swaptest_resource_guard(capsys):
    code, _, err = run_cli(capsys, "swaptest", "--state", "ghz:6")
    assert code == 4
    assert "resource guard" in err


def test_swaptest_rejects_non_qubit(capsys):
    code, _, err = run_cli(capsys, "swaptest", "--state", "star:0.5")
    assert code == 2
    assert "qubit" in err


def test_compute_rejects_bad_recipe(capsys):
    code, _, err = run_cli(capsys, "compute", "--state", "nope:3")
    assert code == 2


def test_compute_enumeration_guard_exits_4(capsys):
    code, _, err = run_cli(capsys, "compute", "--state", "product:" + "x".join(["2"] * 21))
    assert code == 4


def test_csv_determinism(tmp_path, capsys):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    for out in (out1, out2):
        code = main(
            ["star-sweep", "--grid", "0:1.5:11", "--out", str(out), "--format", "csv"]
        )
        assert code == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_json_roundtrip_precision(tmp_path, capsys):
    out = tmp_path / "table.json"
    code = main(["compute", "--state", "haar:2x2x2:3", "--named", "--format", "json", "--out", str(out)])
    assert code == 0
    capsys.readouterr()
    data = json.loads(out.read_text())
    assert data["columns"][0] == "state"
    row = data["rows"][0]
    from cekit.states import haar_random

    nm = named_measures(haar_random((2, 2, 2), seed=3), (1, 2, 3))
    assert row["e"] == nm.e  # exact float round trip
    assert row["c"] == nm.c


def test_csv_fifteen_significant_digits(capsys):
    code, out, _ = run_cli(capsys, "compute", "--state", "haar:2x2:9")
    assert code == 0
    value = parse_csv(out)[0]["value"]
    mantissa = value.replace(".", "").replace("-", "").lstrip("0")
    assert len(mantissa) >= 14


def test_threads_env_parallel_output_identical(tmp_path, capsys, monkeypatch):
    out1 = tmp_path / "serial.csv"
    out2 = tmp_path / "threaded.csv"
    main(["star-sweep", "--grid", "0:1.5:16", "--out", str(out1)])
    monkeypatch.setenv("CEKIT_THREADS", "4")
    main(["star-sweep", "--grid", "0:1.5:16", "--out", str(out2)])
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
