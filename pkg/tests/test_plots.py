import pandas as pd
import pytest

from data_utils import load_trace_frame
from drift_pipeline.detectors import D3Config
from drift_pipeline.evaluation import HarnessConfig, run_prequential
from drift_pipeline.evaluation.plots import accuracy_trace_figure, hadam_difference_heatmap
from drift_pipeline.evaluation.reports import DIFFERENCE_COLUMNS
from drift_pipeline.streams import DriftPoint, StreamSpec, make_stream, strip_tags
from drift_pipeline.suds import SelectorConfig


def shift_trace():
    spec = StreamSpec("rbf_switch", 1000, 1, {"mode": "shift"}, (DriftPoint(500),))
    config = HarnessConfig(detector=D3Config(w=100, rho=0.1), selector=SelectorConfig("baseline_d3", 0), trace=True)
    return run_prequential(list(strip_tags(make_stream(spec))), config).per_step_trace


def test_accuracy_trace_marks_every_drift():
    trace = shift_trace()
    fig = accuracy_trace_figure(trace, window=100)
    assert len(fig.data) == 1
    assert len(fig.data[0].x) == int(trace["scored"].sum())
    assert len(fig.layout.shapes) == int(trace["fired"].sum())
    assert all(0.0 <= v <= 1.0 for v in fig.data[0].y)


def test_trace_file_loads_back(tmp_path):
    trace = shift_trace()
    path = tmp_path / "trace.csv"
    trace.to_csv(path, index=False)
    loaded = load_trace_frame(str(path))
    assert loaded["fired"].tolist() == trace["fired"].tolist()
    assert len(accuracy_trace_figure(loaded).layout.shapes) == int(trace["fired"].sum())


def test_trace_loader_rejects_other_files(tmp_path):
    path = tmp_path / "other.csv"
    path.write_text("a,b\n1,2\n", encoding="utf-8")
    with pytest.raises(ValueError, match="missing columns"):
        load_trace_frame(str(path))


def test_difference_heatmap_has_a_panel_per_window():
    difference = pd.DataFrame(
        [["sea", "d3", w, rho, 0.7, 0.6, 0.62, 0.02] for w in (50, 100) for rho in (0.1, 0.25)],
        columns=DIFFERENCE_COLUMNS,
    )
    fig = hadam_difference_heatmap(difference)
    assert len(fig.data) == 2
    assert fig.layout.coloraxis.cmid == 0.0
