import json

from tracelab.cli import main as cli_main


def run(args, tmp_path, name="out.json"):
    out = tmp_path / name
    code = cli_main(list(args) + ["--out", str(out)])
    payload = json.loads(out.read_bytes()) if out.exists() else None
    return code, payload


def test_zeta_command(tmp_path):
    code, payload = run(["zeta", "--curve", "ell:q=3;a=1;b=0"], tmp_path)
    assert code == 0
    assert payload["schema"] == "tracelab/1"
    assert payload["pass"] is True
    assert payload["rows"][0]["numerator"] == [1, 0, 3]


def test_zeta_p1(tmp_path):
    code, payload = run(["zeta", "--curve", "p1:q=5"], tmp_path)
    assert code == 0
    assert payload["rows"][0]["numerator"] == [1]


def test_parse_error_exit_2():
    assert cli_main(["zeta", "--curve", "ell:q=4;a=1;b=0"]) == 2
    assert cli_main(["zeta", "--curve", "nonsense"]) == 2
    assert cli_main(["zeta"]) == 2  # missing --curve
    assert cli_main(["bogus_command"]) == 2


def test_cap_exit_3():
    assert cli_main(["lfun", "--curve", "ell:q=3;a=1;b=0", "--dmax", "40", "--cap", "50"]) == 3


def test_unsupported_exit_4():
    assert cli_main(["hitchin_strata", "--curve", "ell2:q=2;f=x^3", "--d", "1", "--tower", "2"]) == 4
    assert cli_main(["torus_compare", "--curve", "p1:q=5"]) == 4


def test_missing_output_dir_exit_2(tmp_path):
    code = cli_main(["zeta", "--curve", "p1:q=3", "--out", str(tmp_path / "no" / "dir" / "r.json")])
    assert code == 2


def test_lfun_rows_schema(tmp_path):
    code, payload = run(["lfun", "--curve", "ell:q=3;a=1;b=0"], tmp_path)
    assert code == 0
    row = payload["rows"][0]
    for key in ("curve", "chi_id", "m", "d", "lhs", "rhs", "equal"):
        assert key in row
    assert payload["pass"] is True


def test_lfun_tsv_format(tmp_path):
    out = tmp_path / "rows.tsv"
    code = cli_main(["lfun", "--curve", "p1:q=3", "--format", "tsv", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    header = lines[0].split("\t")
    for key in ("curve", "chi_id", "m", "d", "lhs", "rhs", "equal"):
        assert key in header
    assert len(lines) > 2


def test_strata_tsv(tmp_path):
    out = tmp_path / "strata.tsv"
    code = cli_main([
        "hitchin_strata", "--curve", "p1:q=3", "--d", "1", "--tower", "3",
        "--format", "tsv", "--out", str(out),
    ])
    assert code == 0
    header = out.read_text().splitlines()[0].split("\t")
    for key in ("q", "d", "delta", "count", "est_dim"):
        assert key in header


def test_gl1_trace_command(tmp_path):
    code, payload = run(["gl1_trace", "--curve", "ell2:q=2;f=x^3"], tmp_path)
    assert code == 0
    assert payload["rows"][0]["value"] == 1


def test_seed_echoed(tmp_path):
    code, payload = run(["zeta", "--curve", "p1:q=3", "--seed", "99"], tmp_path)
    assert code == 0
    assert payload["config"]["seed"] == 99
