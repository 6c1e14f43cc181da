"""Tests for the command-line front end."""

import json
import pytest
from hesslab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_orbits(capsys):
    """Test the orbit table command."""
    code, out = run(capsys, "orbits", "--n", "2")
    payload = json.loads(out)
    assert code == 0
    assert payload["command"] == "orbits"
    assert len(payload["results"]) == 5
    assert payload["results"][0]["partition"] == [3, 2]


def test_orbits_rejects_zero(capsys):
    """Test argument validation exits with status 2."""
    with pytest.raises(SystemExit) as exc:
        main(["orbits", "--n", "0"])
    assert exc.value.code == 2


def test_decompose(capsys):
    """Test decompositions and their oracle comparison."""
    code, out = run(capsys, "decompose", "--n", "2", "--m", "2")
    results = json.loads(out)["results"]
    assert code == 0
    assert (results["total"], results["oracle"], results["match"]) == (5, 5, True)

    code, out = run(capsys, "decompose", "--n", "2", "--m", "2", "--tilde")
    assert json.loads(out)["results"]["total"] == 16


def test_decompose_out_of_range(capsys):
    """Test bad input exits with status 2 and a message on stderr."""
    code = main(["decompose", "--n", "2", "--m", "9"])
    captured = capsys.readouterr()
    assert code == 2
    assert captured.out == ""
    assert "hesslab: error" in captured.err


def test_bad_prime(capsys):
    """Test q must be an odd prime."""
    assert main(["fiber", "--n", "2", "--m", "1", "--partition", "2,1,1,1", "--q", "4"]) == 2


def test_catalog(capsys):
    """Test catalog sizes."""
    code, out = run(capsys, "catalog", "--n", "3")
    results = json.loads(out)["results"]
    assert code == 0
    assert results["size"] == results["from_decompositions"] == 13
    assert len(results["identifications"]) == 10


def test_fiber_with_oracle(capsys):
    """Test a fiber polynomial evaluated and brute-forced at q = 3."""
    code, out = run(capsys, "fiber", "--n", "2", "--m", "2", "--flavor", "O",
                    "--partition", "2,1,1,1", "--q", "3", "--oracle")
    results = json.loads(out)["results"]
    assert code == 0
    assert results["coeffs"] == [1, 1]
    assert results["value"] == results["oracle"] == 4


def test_fiber_oracle_needs_q(capsys):
    """Test --oracle without --q."""
    assert main(["fiber", "--n", "2", "--m", "2", "--partition", "2+1+1+1", "--oracle"]) == 2


def test_output_independent_of_threads(capsys):
    """Test stdout is byte-identical for different thread counts."""
    argv = ["fiber", "--n", "3", "--m", "2", "--partition", "2,2,1,1,1", "--q", "3", "--oracle"]
    _, single = run(capsys, *argv, "--threads", "1")
    _, pooled = run(capsys, *argv, "--threads", "3")
    _, again = run(capsys, *argv, "--threads", "1")
    assert single == pooled == again


def test_counts(capsys):
    """Test point counts on a seeded tuple."""
    code, out = run(capsys, "counts", "--n", "2", "--m", "2", "--q", "7", "--seed", "11")
    results = json.loads(out)["results"]
    assert code == 0
    assert results["X"]["primitive"] == 5
    assert results["Xtilde"]["primitive"] == 21
    assert results["double_cover"] and results["torsor"]


def test_springer(capsys):
    """Test the consistency report command."""
    code, out = run(capsys, "springer", "--n", "4")
    results = json.loads(out)["results"]
    assert code == 0
    assert results["n"] == 4
    assert {c["name"] for c in results["checks"]} >= {"support", "parity", "trichotomy"}


def test_verify_springer(capsys):
    """Test the Springer verification suite."""
    code, out = run(capsys, "verify", "springer", "--n-max", "4")
    rows = json.loads(out)["results"]
    assert code == 0
    assert "unknown_index[n=4]" in {row["name"] for row in rows}
    assert all(row["status"] != "fail" for row in rows)


def test_verify_dims(capsys):
    """Test the dimension verification suite."""
    code, out = run(capsys, "verify", "dims", "--n-max", "3")
    rows = json.loads(out)["results"]
    assert code == 0
    assert all(row["status"] == "pass" for row in rows)


def test_csv_output(capsys):
    """Test CSV rendering of the orbit table."""
    code, out = run(capsys, "orbits", "--n", "1", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "dim,gaps,order3,parity,partition,systems"
    assert len(lines) == 4


def test_text_output(capsys):
    """Test text rendering."""
    code, out = run(capsys, "orbits", "--n", "1", "--format", "text")
    assert out.splitlines()[0] == "# orbits"


def test_config_echo(capsys):
    """Test the effective configuration is echoed without the thread count."""
    _, out = run(capsys, "orbits", "--n", "1", "--seed", "5", "--json")
    config = json.loads(out)["config"]
    assert config["seed"] == 5
    assert config["n"] == 1
    assert "threads" not in config
