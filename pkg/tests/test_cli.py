import json

import pytest

from qsim.cli import main


def test_validate_ok(capsys):
    assert main(["validate", "fixtures/hom.json"]) == 0
    assert "ok" in capsys.readouterr().out


def test_validate_reports_pointer(tmp_path, capsys):
    obj = json.loads(open("fixtures/hom.json").read())
    obj["devices"][2]["parameters"]["theta"] = "diagonal"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    assert main(["validate", str(path)]) == 1
    err = capsys.readouterr().err
    assert "/devices/2/parameters/theta" in err


def test_hom_sweep_prints_table_and_exports(tmp_path, capsys):
    out = tmp_path / "res"
    code = main(["hom-sweep", "--delays=-2:2:3", "--out", str(out)])
    assert code == 0
    text = capsys.readouterr().out
    assert "p_coincidence" in text
    assert (out / "hom_sweep.csv").exists()
    rows = (out / "hom_sweep.csv").read_text().splitlines()
    assert rows[0] == "delay,lambda,p_coincidence"
    assert len(rows) == 4


def test_hom_sweep_comma_delays(tmp_path):
    out = tmp_path / "res"
    assert main(["hom-sweep", "--delays=0,1.5", "--out", str(out)]) == 0
    rows = (out / "hom_sweep.csv").read_text().splitlines()
    assert len(rows) == 3


def test_run_fixture(tmp_path, capsys):
    out = tmp_path / "run"
    assert main(["run", "fixtures/hom.json", "--out", str(out)]) == 0
    names = sorted(p.name for p in out.iterdir())
    assert "hom_sweep.csv" in names and "trace.jsonl" in names and "metadata.json" in names


def test_run_cutoff_flag_only_fills_blank(tmp_path):
    # fixture pins cutoff 4; the flag must not override it
    out = tmp_path / "run"
    assert main(["run", "fixtures/hom.json", "--cutoff", "8", "--out", str(out)]) == 0
    meta = json.loads((out / "metadata.json").read_text())
    assert meta["cutoff"] == 4

    spec = json.loads(open("fixtures/hom.json").read())
    spec["sim"]["cutoff"] = None
    loose = tmp_path / "loose.json"
    loose.write_text(json.dumps(spec))
    out2 = tmp_path / "run2"
    assert main(["run", str(loose), "--cutoff", "8", "--out", str(out2)]) == 0
    meta2 = json.loads((out2 / "metadata.json").read_text())
    assert meta2["cutoff"] == 8


def test_jdr_command(tmp_path, capsys):
    out = tmp_path / "jdr"
    code = main([
        "jdr", "--message", "3", "--pulses", "3", "--no-wigner", "--out", str(out),
    ])
    assert code == 0
    text = capsys.readouterr().out
    assert "declared" in text and "011" in text
    csv_rows = (out / "jdr_transcript.csv").read_text().splitlines()
    assert csv_rows[0] == "round,guess,p_yes,mismatches,outcome"
    assert len(csv_rows) == 9  # header + 8 candidate rows


def test_bad_delays_spec(capsys):
    with pytest.raises(SystemExit):
        main(["hom-sweep", "--delays=1:2"])


def test_missing_file_is_an_error(capsys):
    assert main(["run", "no_such_file.json"]) == 1
    assert "error" in capsys.readouterr().err.lower()
