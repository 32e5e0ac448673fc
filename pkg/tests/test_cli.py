import json

import pytest

from pfsp_pils.cli import build_parser, main
from pfsp_pils.io import read_run_record


@pytest.fixture
def two_job_file(tmp_path):
    path = tmp_path / "two.txt"
    path.write_text("2 1\n1\n2\nduedates:\n0 0\n")
    return path


def test_solve_two_job(tmp_path, two_job_file):
    out = tmp_path / "run.json"
    for algo in ("pils", "mos"):
        assert main(["solve", "--instance", str(two_job_file), "--algorithm", algo, "--budget", "100",
                     "--seed", "1", "--out", str(out)]) == 0
        rec = read_run_record(out)
        assert [e["objectives"] for e in rec.archive] == [[3, 4]]
        assert [e["permutation"] for e in rec.archive] == [[1, 2]]


def test_solve_generates_due_dates(tmp_path):
    inst = tmp_path / "inst.txt"
    assert main(["generate", "--jobs", "6", "--machines", "2", "--seed", "4", "--out", str(inst)]) == 0
    out = tmp_path / "run.json"
    assert main(["solve", "--instance", str(inst), "--tf", "1.2", "--budget", "500", "--out", str(out)]) == 0
    assert read_run_record(out).evaluations == 500


def test_solve_uses_output_dir_env(tmp_path, two_job_file, monkeypatch):
    monkeypatch.setenv("PFSP_PILS_OUTPUT_DIR", str(tmp_path / "outdir"))
    assert main(["solve", "--instance", str(two_job_file), "--budget", "10"]) == 0
    assert list((tmp_path / "outdir").iterdir())


def test_oracle_and_metrics(tmp_path, two_job_file, capsys):
    front = tmp_path / "front.json"
    assert main(["oracle", "--instance", str(two_job_file), "--out", str(front)]) == 0
    capsys.readouterr()
    assert main(["metrics", "--approx", str(front), "--reference", str(front)]) == 0
    assert capsys.readouterr().out.strip() == "D1=0 D2=0"


def test_metrics_on_tabular_files(tmp_path, capsys):
    ref = tmp_path / "ref.tsv"
    ref.write_text("0 10\n10 0\n")
    approx = tmp_path / "approx.tsv"
    approx.write_text("0 10\n5 5\n")
    assert main(["metrics", "--approx", str(approx), "--reference", str(ref)]) == 0
    assert capsys.readouterr().out.strip() == "D1=0.25 D2=0.5"


def test_oracle_refuses_large_instance(tmp_path, capsys):
    inst = tmp_path / "big.txt"
    main(["generate", "--jobs", "12", "--machines", "2", "--out", str(inst)])
    assert main(["oracle", "--instance", str(inst), "--tf", "1.5"]) != 0
    assert "exceeds" in capsys.readouterr().err


def test_sample(tmp_path, two_job_file):
    out = tmp_path / "s.tsv"
    assert main(["sample", "--instance", str(two_job_file), "--count", "1", "--out", str(out)]) == 0
    rows = [ln for ln in out.read_text().splitlines() if not ln.startswith("#")]
    assert len(rows) == 1


def test_experiment(tmp_path, capsys):
    cfg = {
        "instances": [{"generate": {"jobs": 5, "machines": 2, "seed": 1}, "tf": 1.5, "name": "g5"}],
        "algorithms": ["pils", "mos"], "runs": 2, "budget": 2000,
        "descent_cost": {"samples": 2},
    }
    path = tmp_path / "exp.json"
    path.write_text(json.dumps(cfg))
    out = tmp_path / "exp_out"
    assert main(["experiment", "--config", str(path), "--out", str(out)]) == 0
    assert "g5" in capsys.readouterr().out
    assert {p.name for p in out.iterdir()} == {"report.json", "means.tsv", "runs.tsv", "descent_cost.tsv"}


@pytest.mark.parametrize("argv", [
    ["solve", "--instance", "missing.txt"],
    ["solve", "--bogus"],
    ["solve", "--instance", "x", "--objectives", "cmax"],
    ["metrics", "--approx", "a"],
    [],
])
def test_usage_errors(argv):
    assert main(argv) != 0


def test_every_subcommand_documents_its_flags():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    for name, p in sub.choices.items():
        for action in p._actions:
            if action.option_strings and action.dest != "help":
                assert action.help, (name, action.dest)


def test_solve_is_deterministic(tmp_path, two_job_file):
    inst = tmp_path / "inst.txt"
    main(["generate", "--jobs", "7", "--machines", "3", "--seed", "2", "--tf", "1.5", "--out", str(inst)])
    outs = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        main(["solve", "--instance", str(inst), "--budget", "3000", "--seed", "5", "--out", str(out)])
        outs.append(read_run_record(out).archive)
    assert outs[0] == outs[1]
