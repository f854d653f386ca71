import json
import os

import pytest

from mirahall import cache, cli
from mirahall.config import RunConfig, read_config_file, resolve
from mirahall.errors import UsageError
from mirahall.laurent import LaurentPoly, QPoly

GOLDEN_PI_CSV = """\
,(2)|(),(1)|(1),"(1,1)|()",()|(2),"()|(1,1)"
(2)|(),1,0,0,0,0
(1)|(1),v^-1,1,0,0,0
"(1,1)|()",v^-2,v^-1,1,0,0
()|(2),v^-2,v^-1,0,1,0
"()|(1,1)",v^-4,v^-3 + v^-1,v^-2,v^-2,1
"""


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("MIRAHALL_CACHE_DIR", str(tmp_path / "cache"))


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_pi_csv_golden(capsys):
    code, out = run(capsys, "pi", "--n", "2", "--N", "2", "--format", "csv")
    assert code == 0
    assert out == GOLDEN_PI_CSV
    assert out.splitlines()[0].count("|") == 5


def test_pi_json_round_trip(capsys):
    code, out = run(capsys, "pi", "--n", "2", "--N", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "pi"
    from mirahall.bimodule import pi_table

    table = pi_table(2, 2)
    seen = 0
    for cell in payload["calibrated"]:
        poly = LaurentPoly.from_json(cell["coeff"])
        row = cli.parse_bipartition(cell["row"])
        col = cli.parse_bipartition(cell["col"])
        assert table.value(row, col) == poly
        seen += 1
    assert seen == 14


def test_pi_latex_standalone(capsys):
    code, out = run(capsys, "pi", "--n", "2", "--N", "2", "--format", "latex")
    assert code == 0
    assert out.startswith("\\documentclass{article}")
    assert out.rstrip().endswith("\\end{document}")
    assert "v^{-4}" in out


def test_pi_negative_size_is_usage_error(capsys):
    code, _ = run(capsys, "pi", "--n", "-1")
    assert code == 2


def test_bad_subcommand_and_flag(capsys):
    assert cli.main(["frobnicate"]) == 2
    assert cli.main(["pi", "--window-dressing", "9"]) == 2


def test_module_error_maps_to_exit_one(capsys):
    code, out = run(capsys, "trace", "--n", "1", "--q", "2",
                    "--out", "/nonexistent-dir/x.json")
    assert code == 1 and out == ""


def test_failed_check_maps_to_exit_one(capsys, monkeypatch):
    broken = [{"suite": "rho", "name": "mirror", "passed": False, "detail": "x"}]
    monkeypatch.setitem(cli._SUITE_RUNNERS, "rho", lambda cfg: broken)
    code, out = run(capsys, "verify", "--suite", "rho")
    assert code == 1
    assert json.loads(out)["passed"] is False


def test_cold_and_cached_runs_identical(capsys):
    _, cold = run(capsys, "trace", "--n", "2", "--q", "2")
    _, warm = run(capsys, "trace", "--n", "2", "--q", "2")
    assert cold == warm
    payload = json.loads(warm)
    cells = {(c["row"], c["col"]): QPoly.from_json(c["plain"]) for c in payload["cells"]}
    assert cells[("()|(1,1)", "(1)|(1)")] == QPoly.q_power(1) + 1


def test_cache_entries_land_in_env_dir(tmp_path, capsys):
    run(capsys, "pi", "--n", "1", "--N", "1")
    entries = list((tmp_path / "cache").glob("pi-*.json"))
    assert len(entries) == 1
    # flag beats the environment
    other = tmp_path / "elsewhere"
    run(capsys, "pi", "--n", "1", "--N", "1", "--cache-dir", str(other))
    assert list(other.glob("pi-*.json"))


def test_stale_cache_entry_is_ignored(tmp_path, capsys):
    _, first = run(capsys, "pi", "--n", "1", "--N", "1")
    (entry,) = (tmp_path / "cache").glob("pi-*.json")
    data = json.loads(entry.read_text())
    data["tag"] = "0.0.0-stale"
    entry.write_text(json.dumps(data))
    _, second = run(capsys, "pi", "--n", "1", "--N", "1")
    assert first == second


def test_config_file_flags_win(tmp_path, capsys):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("n = 1\nformat = csv  # comment\nseed = 5\n")
    values = read_config_file(str(cfgfile))
    cfg = resolve(values, {"fmt": "json"})
    assert cfg.n == 1 and cfg.seed == 5
    assert cfg.fmt == "json"
    # through the CLI the file's format=csv and n=1 hold (no overriding flag)
    code, out = run(capsys, "--config", str(cfgfile), "pi", "--N", "1")
    assert code == 0
    assert out.splitlines()[0] == ",(1)|(),()|(1)"
    bad = tmp_path / "bad.cfg"
    bad.write_text("frobs = 2\n")
    assert cli.main(["--config", str(bad), "pi"]) == 2


def test_config_validation():
    with pytest.raises(UsageError):
        RunConfig(primes=()).validate()
    with pytest.raises(UsageError):
        RunConfig(primes=(2, 2)).validate()
    with pytest.raises(UsageError):
        RunConfig(fmt="yaml").validate()
    with pytest.raises(UsageError):
        RunConfig(window=0).validate()
    assert resolve({}, {}).primes == (2, 3)


def test_hall_product(capsys):
    code, out = run(capsys, "hall", "--x", "1", "--y", "1", "--N", "2")
    assert code == 0
    terms = {t["label"]: LaurentPoly.from_json(t["coeff"])
             for t in json.loads(out)["terms"]}
    assert terms["(2)"] == LaurentPoly.one()
    assert terms["(1,1)"] == LaurentPoly.v_power(2) + 1


def test_mirabolic_golden_column(capsys):
    code, out = run(capsys, "mirabolic", "--src", "|1", "--r", "1")
    assert code == 0
    terms = {t["label"]: QPoly.from_json(t["coeff"])
             for t in json.loads(out)["terms"]}
    assert terms["()|(1,1)"] == QPoly.q_power(1) + 1
    assert terms["(1)|(1)"] == QPoly.one()


def test_green_csv(capsys):
    code, out = run(capsys, "green", "--n", "1", "--q", "2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "field,value"
    assert "passed,True" in lines


def test_iwahori_mult_cases(capsys):
    code, out = run(capsys, "iwahori", "mult", "--N", "2", "--window", "1",
                    "--qs", "2,3")
    assert code == 0
    payload = json.loads(out)
    assert payload["qs"] == [2, 3]
    cases = {p["case"] for p in payload["products"]}
    assert cases <= {1, 2, 3, 4, 5}
    for prod in payload["products"]:
        assert prod["terms"], prod
    _, again = run(capsys, "iwahori", "mult", "--N", "2", "--window", "1",
                   "--qs", "2,3")
    assert out == again


def test_verify_single_suite_deterministic(capsys):
    code, first = run(capsys, "verify", "--suite", "rho")
    assert code == 0
    code2, second = run(capsys, "verify", "--suite", "rho")
    assert code2 == 0
    assert first == second
    payload = json.loads(first)
    assert payload["passed"] is True
    assert all(c["passed"] for c in payload["checks"])


def test_verify_unknown_suite(capsys):
    assert cli.main(["verify", "--suite", "nonsense"]) == 2


def test_verify_seed_recorded(capsys):
    _, out = run(capsys, "verify", "--suite", "hall", "--seed", "7")
    assert json.loads(out)["seed"] == 7


def test_out_file(tmp_path, capsys):
    target = tmp_path / "table.csv"
    code, out = run(capsys, "pi", "--n", "1", "--N", "1", "--format", "csv",
                    "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().splitlines()[0] == ",(1)|(),()|(1)"


def test_partition_parsing():
    assert cli.parse_partition("2,1") == (2, 1)
    assert cli.parse_partition("()") == ()
    assert cli.parse_partition("") == ()
    assert cli.parse_bipartition("2,1|1") == ((2, 1), (1,))
    with pytest.raises(UsageError):
        cli.parse_partition("1,2")
    with pytest.raises(UsageError):
        cli.parse_bipartition("2,1")


def test_cache_round_trip_api(tmp_path):
    directory = str(tmp_path)
    assert cache.load("thing", {"a": 1}, directory) is None
    cache.store("thing", {"a": 1}, {"rows": [1, 2]}, directory)
    assert cache.load("thing", {"a": 1}, directory) == {"rows": [1, 2]}
    assert cache.load("thing", {"a": 2}, directory) is None
