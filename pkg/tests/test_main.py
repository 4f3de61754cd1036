from main import main
import csv
import json
import pytest


@pytest.fixture(autouse=True)
def clean_env(monkeypatch, tmp_path):
    for name in ("DATABASE_URL", "DCOPT_SEED", "DCOPT_TSP_EXACT_LIMIT"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)


def write(path, text: str) -> str:
    path.write_text(text)
    return str(path)


def test_generate_then_solve_full(tmp_path, capsys):
    spec = write(tmp_path / "dkp.spec", "problem = dkp\nn = 10\nd = 2\ntightness = 0.5\nseed = 4\n")
    instance = str(tmp_path / "dkp.txt")
    assert main(["generate", spec, instance]) == 0
    assert (tmp_path / "dkp.txt").read_text().startswith("dkp 10 2")

    assert main(["solve", instance]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["method"] == "full"
    assert summary["oracle"] == "exact"
    assert summary["objective"] > 0
    assert len(summary["solution"]["chosen"]) == 10


def test_solve_dc_on_tsp(tmp_path, capsys):
    instance = write(
        tmp_path / "tsp.txt",
        "tsp 6 sym metric\n"
        "0 0.61 0.10 1.08 0.46 0.11\n"
        "0.61 0 0.53 0.71 0.17 0.54\n"
        "0.10 0.53 0 0.98 0.39 0.12\n"
        "1.08 0.71 0.98 0 0.83 1.07\n"
        "0.46 0.17 0.39 0.83 0 0.38\n"
        "0.11 0.54 0.12 1.07 0.38 0\n",
    )
    assert main(["solve", instance, "--method", "dc"]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["method"] == "dc"
    assert summary["depth"] == 1
    assert sorted(summary["solution"]["order"]) == list(range(6))
    assert summary["wall_time"] == pytest.approx(summary["t_left"] + summary["t_right"])


def test_solve_bpp_with_named_algorithm(tmp_path, capsys):
    instance = write(tmp_path / "bpp.txt", "bpp 6\n0.5 0.7 0.25 0.1 0.85 0.31\n")
    assert main(["solve", instance, "--oracle", "nfd"]) == 0
    assert json.loads(capsys.readouterr().out)["objective"] == 4


def test_solve_reports_format_errors(tmp_path, capsys):
    instance = write(tmp_path / "bad.txt", "bpp 3\n0.5 0.5\n")
    assert main(["solve", instance]) == 2
    assert "expected 3 values" in capsys.readouterr().err


def test_solve_rejects_unknown_oracle(tmp_path):
    instance = write(tmp_path / "bpp.txt", "bpp 2\n0.5 0.7\n")
    assert main(["solve", instance, "--oracle", "exact"]) == 2


def test_experiment_then_report(tmp_path, capsys):
    spec = write(tmp_path / "bpp.spec", "problem = bpp\nn = 20, 50\ntrials = 4\nseed = 1\n")
    out = tmp_path / "run"
    assert main(["experiment", spec, "--out", str(out)]) == 0
    experiment_id = capsys.readouterr().out.strip()
    assert (out / "experiment.db").exists()
    for name in ("report.csv", "report.txt", "report.plot"):
        assert (out / name).exists()

    assert main(["report", str(out), "--format", "csv"]) == 0
    csv_text = capsys.readouterr().out
    assert csv_text == (out / "report.csv").read_text()

    assert main(["report", str(out), "--format", "table", "--experiment", experiment_id, "--output", "table.txt"]) == 0
    assert (tmp_path / "table.txt").read_text() == (out / "report.txt").read_text()


def test_experiment_rejects_infeasible_spec(tmp_path, capsys):
    spec = write(tmp_path / "tsp.spec", "problem = tsp-ms\nn = 8, 40\noracle = exact\ntrials = 2\n")
    assert main(["experiment", spec, "--out", str(tmp_path / "run")]) == 2
    assert "exact TSP oracle" in capsys.readouterr().err


def test_report_without_experiments(tmp_path, capsys):
    assert main(["report", str(tmp_path / "empty")]) == 2
    assert "No experiment found" in capsys.readouterr().err
    assert not (tmp_path / "empty").exists()


def test_unknown_preset_or_missing_spec(tmp_path):
    assert main(["experiment", "no-such-preset", "--out", str(tmp_path / "run")]) == 2


def s_f_columns(path) -> list:
    with open(path, newline="") as f:
        return [
            (r["n"], r["oracle"], r["s_f_mean"], r["s_f_variance"], r["s_f_ci_low"], r["s_f_ci_high"])
            for r in csv.DictReader(f)
        ]


def test_experiment_twice_gives_identical_solution_fractions(tmp_path):
    spec = write(tmp_path / "dkp.spec", "problem = dkp\nn = 6, 10\nd = 2\ntightness = 0.5\ntrials = 5\nseed = 9\n")
    for run in ("first", "second"):
        assert main(["experiment", spec, "--out", str(tmp_path / run)]) == 0
    first = s_f_columns(tmp_path / "first" / "report.csv")
    assert len(first) == 2
    assert first == s_f_columns(tmp_path / "second" / "report.csv")
