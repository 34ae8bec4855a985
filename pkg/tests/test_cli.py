import io

import pandas as pd
import pytest

from drift_pipeline.drift_config import REPORT_COLUMNS
from drift_pipeline.drift_runner import main
from drift_pipeline.evaluation.reports import DIFFERENCE_COLUMNS, SWEEP_COLUMNS

QUIET = ["--log-file", "", "--log-level", "WARNING"]
SEA = "sea;length=1200;drifts=600"


def error_line(err):
    """The one-line error record main writes after any log output"""
    return next(line for line in err.splitlines() if line.startswith("error\t"))


def sections(text):
    return [pd.read_csv(io.StringIO(chunk), sep="\t") for chunk in text.split("\n\n") if chunk.strip()]


# ---------------------------------------------------------------------------
# recompute
# ---------------------------------------------------------------------------

def test_recompute_reproduces_published_hadam(capsys):
    assert main(["recompute"] + QUIET) == 0
    cells, averages, _ = sections(capsys.readouterr().out)
    poker = cells[(cells["dataset"] == "Poker") & (cells["method"] == "D3")]["hadam"].iloc[0]
    assert abs(poker - 0.8272) <= 0.0005
    airlines = cells[(cells["dataset"] == "Airlines") & (cells["method"] == "OCDD")]["hadam"].iloc[0]
    assert abs(airlines - 0.0016) <= 0.0005
    assert cells["dataset"].nunique() == 19
    assert len(cells) == 76
    assert (averages["avg_diff"] >= 0).all()


@pytest.mark.parametrize("group, expected", [
    ("all", {"D3": 3.60, "D3(SUDS)": 7.16, "OCDD(SUDS)": 8.84}),
    ("real_world", {"D3": 2.94, "D3(SUDS)": 4.48, "OCDD(SUDS)": 3.37}),
])
def test_recompute_average_difference(capsys, group, expected):
    assert main(["recompute", "--group", group] + QUIET) == 0
    _, averages, _ = sections(capsys.readouterr().out)
    points = dict(zip(averages["method"], averages["avg_diff_points"]))
    for method, value in expected.items():
        assert abs(points[method] - value) <= 0.05


def test_recompute_matches_every_consistent_published_cell(capsys):
    assert main(["recompute"] + QUIET) == 0
    cells = sections(capsys.readouterr().out)[0]
    known_typo = (cells["dataset"] == "Chessweka") & (cells["method"] == "OCDD")
    assert int(known_typo.sum()) == 1
    assert (cells.loc[~known_typo, "deviation"].abs() <= 0.001).all()
    assert abs(cells.loc[known_typo, "hadam"].iloc[0] - 0.7384) <= 0.0005


def test_recompute_annotated_percentage_per_method(capsys):
    assert main(["recompute"] + QUIET) == 0
    annotated = sections(capsys.readouterr().out)[2]
    assert list(annotated.columns) == ["method", "annotated_pct_mean", "annotated_pct_std"]
    rows = annotated.set_index("method")
    expected = {"D3": (5.03, 3.49), "D3(SUDS)": (1.68, 1.04), "OCDD": (92.59, 19.78), "OCDD(SUDS)": (14.45, 19.64)}
    for method, (mean, std) in expected.items():
        assert abs(rows.loc[method, "annotated_pct_mean"] - mean) <= 0.05
        assert abs(rows.loc[method, "annotated_pct_std"] - std) <= 0.05


def test_recompute_markdown(capsys):
    assert main(["recompute", "--format", "md"] + QUIET) == 0
    out = capsys.readouterr().out
    assert "### hadam" in out
    assert "### avg_diff" in out
    assert "### annotated" in out


def test_recompute_rejects_malformed_table(tmp_path, capsys):
    table = tmp_path / "bad.tsv"
    table.write_text("dataset\tmethod\taccuracy\nA\tD3\t0.5\n", encoding="utf-8")
    assert main(["recompute", "--tables", str(table)] + QUIET) == 2
    assert error_line(capsys.readouterr().err).startswith("error\tDatasetFormatError\t")


# ---------------------------------------------------------------------------
# run
# ---------------------------------------------------------------------------

def run_args(out, *extra):
    return ["run", "--generate", SEA, "--w", "50", "--rho", "0.2", "--workers", "1", "--out", str(out)] + QUIET + list(extra)


def test_run_writes_a_report(tmp_path):
    out = tmp_path / "run.tsv"
    assert main(run_args(out)) == 0
    runs, summary = sections(out.read_text(encoding="utf-8"))
    assert list(runs.columns) == REPORT_COLUMNS
    assert len(runs) == 1
    assert runs.loc[0, "total"] == 1200
    assert runs.loc[0, "detector"] == "d3"
    assert summary["repeat"].tolist() == ["mean", "std"]


def test_run_is_byte_identical_across_invocations(tmp_path):
    first, second = tmp_path / "a.tsv", tmp_path / "b.tsv"
    assert main(run_args(first, "--selector", "suds")) == 0
    assert main(run_args(second, "--selector", "suds")) == 0
    assert first.read_bytes() == second.read_bytes()


@pytest.mark.slow
def test_run_output_does_not_depend_on_worker_count(tmp_path):
    serial, pooled = tmp_path / "serial.tsv", tmp_path / "pooled.tsv"
    assert main(run_args(serial, "--selector", "suds", "--repeats", "4")) == 0
    assert main(run_args(pooled, "--selector", "suds", "--repeats", "4", "--workers", "4")) == 0
    assert serial.read_bytes() == pooled.read_bytes()


def test_run_repeats(tmp_path):
    out = tmp_path / "repeats.tsv"
    assert main(run_args(out, "--repeats", "2")) == 0
    runs, _ = sections(out.read_text(encoding="utf-8"))
    assert runs["repeat"].tolist() == [0, 1]


def test_run_ocdd_with_trace(tmp_path):
    out, trace = tmp_path / "ocdd.tsv", tmp_path / "trace.csv"
    args = ["run", "--generate", SEA, "--detector", "ocdd", "--w", "100", "--rho", "0.3", "--nu", "0.1",
            "--workers", "1", "--out", str(out), "--trace", str(trace)] + QUIET
    assert main(args) == 0
    runs, _ = sections(out.read_text(encoding="utf-8"))
    assert runs.loc[0, "detector"] == "ocdd"
    assert len(pd.read_csv(trace)) == 1200


def test_run_from_csv_input(tmp_path, rng):
    data = tmp_path / "stream.csv"
    rows = [f"{a:.4f},{b:.4f},{'yes' if a + b > 1 else 'no'}" for a, b in rng.uniform(size=(400, 2))]
    data.write_text("\n".join(rows) + "\n", encoding="utf-8")
    out = tmp_path / "csv.tsv"
    args = ["run", "--input", str(data), "--w", "50", "--rho", "0.2", "--workers", "1", "--out", str(out)] + QUIET
    assert main(args) == 0
    runs, _ = sections(out.read_text(encoding="utf-8"))
    assert runs.loc[0, "dataset"] == "stream"
    assert runs.loc[0, "total"] == 400


@pytest.mark.parametrize("args, error", [
    (["run", "--workers", "1"], "ConfigError"),
    (["run", "--generate", SEA, "--tau", "0.8", "--detector", "ocdd"], "ConfigError"),
    (["run", "--generate", SEA, "--rho", "1.5"], "ConfigError"),
    (["run", "--generate", "sea;length=100;drifts=500"], "ScheduleError"),
    (["run", "--generate", "sea;length=300;seed=x"], "ConfigError"),
    (["run", "--generate", "sea;length=300;noise=abc"], "ConfigError"),
    (["run", "--generate", "sea;length=300;thresholds=8,x"], "ConfigError"),
    (["run", "--generate", "rbf_switch;length=300;sigma=wide"], "ConfigError"),
    (["run", "--input", "does-not-exist.csv"], "FileNotFoundError"),
])
def test_run_errors_exit_with_code_two(capsys, args, error):
    assert main(args + QUIET) == 2
    err = capsys.readouterr().err
    assert error_line(err).startswith(f"error\t{error}\t")


# ---------------------------------------------------------------------------
# sweep, list, config files
# ---------------------------------------------------------------------------

@pytest.mark.slow
def test_sweep_single_combination(tmp_path):
    out = tmp_path / "sweep.tsv"
    args = ["sweep", "--generate", SEA, "--w-grid", "50", "--rho-grid", "0.2", "--tau-grid", "0.7",
            "--repeats", "1", "--workers", "1", "--out", str(out)] + QUIET
    assert main(args) == 0
    summary, difference = sections(out.read_text(encoding="utf-8"))
    assert list(summary.columns) == SWEEP_COLUMNS
    assert summary["selector"].tolist() == ["baseline", "suds"]
    assert list(difference.columns) == DIFFERENCE_COLUMNS
    assert len(difference) == 1


def test_sweep_rejects_foreign_grid(capsys):
    args = ["sweep", "--generate", SEA, "--nu-grid", "0.5", "--workers", "1"] + QUIET
    assert main(args) == 2
    assert "ConfigError" in capsys.readouterr().err


def test_list_commands(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    for name in ("run", "sweep", "recompute"):
        assert f"{name}:" in out


def test_no_command_prints_help(capsys):
    assert main([]) == 0
    assert "drift_runner" in capsys.readouterr().out


def test_config_file_sets_defaults(tmp_path):
    config = tmp_path / "run.conf"
    config.write_text(
        "# sea run\n"
        f"generator={SEA}\n"
        "w=50\n"
        "rho=0.2\n"
        "workers=1\n"
        "log-file=\n",
        encoding="utf-8",
    )
    out = tmp_path / "conf.tsv"
    assert main(["run", "--config", str(config), "--rho", "0.1", "--out", str(out), "--log-level", "WARNING"]) == 0
    runs, _ = sections(out.read_text(encoding="utf-8"))
    assert runs.loc[0, "w"] == 50
    assert runs.loc[0, "rho"] == 0.1


def test_config_file_unknown_key(tmp_path, capsys):
    config = tmp_path / "bad.conf"
    config.write_text("window=50\n", encoding="utf-8")
    assert main(["run", "--config", str(config)] + QUIET) == 2
    assert error_line(capsys.readouterr().err).startswith("error\tConfigError\t")
