import numpy as np
import pytest

from drift_pipeline.exceptions import ConfigError, DatasetFormatError, ScheduleError, UnsupportedFormatError
from drift_pipeline.learners import logistic_fit
from drift_pipeline.streams import (
    DatasetFile,
    DriftPoint,
    StreamSpec,
    format_generator_spec,
    drift_weights,
    gen_hyperplane,
    gen_rbf_switch,
    gen_sea,
    hyperplane_label,
    load_arff,
    load_csv,
    load_dataset,
    make_stream,
    parse_generator_spec,
    parse_schedule,
    strip_tags,
)


# ---------------------------------------------------------------------------
# SEA
# ---------------------------------------------------------------------------

def test_sea_noiseless_labels_follow_the_rule():
    stream = list(gen_sea(StreamSpec("sea", 2000, 1, {"noise": 0.0})))
    for tagged in stream:
        x = tagged.sample.features
        assert tagged.sample.label == int(x[0] + x[1] <= 8.0)
        assert not tagged.is_noise
        assert tagged.concept_id == 0
    assert all(0.0 <= v <= 10.0 for t in stream for v in t.sample.features)


@pytest.mark.slow
def test_sea_noise_rate_and_tags():
    stream = list(gen_sea(StreamSpec("sea", 100000, 2, {"noise": 0.1})))
    noise = np.array([t.is_noise for t in stream])
    assert abs(noise.mean() - 0.1) <= 0.005
    for tagged in stream[:5000]:
        x = tagged.sample.features
        clean = int(x[0] + x[1] <= 8.0)
        assert (tagged.sample.label != clean) == tagged.is_noise


def test_sea_thresholds_cycle_over_segments():
    schedule = tuple(DriftPoint(at) for at in (100, 200, 300, 400))
    stream = list(gen_sea(StreamSpec("sea", 500, 0, {"noise": 0.0}, schedule)))
    thresholds = [8.0, 9.0, 7.0, 9.5, 8.0]
    for t, tagged in enumerate(stream):
        concept = t // 100
        x = tagged.sample.features
        assert tagged.concept_id == concept
        assert tagged.sample.label == int(x[0] + x[1] <= thresholds[concept])


def test_gradual_transition_mixes_concepts():
    spec = StreamSpec("sea", 1000, 4, {"noise": 0.0}, (DriftPoint(500, 200),))
    concepts = [t.concept_id for t in gen_sea(spec)]
    assert set(concepts[:500]) == {0}
    assert set(concepts[700:]) == {1}
    assert set(concepts[500:700]) == {0, 1}
    early, late = concepts[500:550], concepts[650:700]
    assert sum(early) < sum(late)


def test_same_seed_same_stream():
    spec = StreamSpec("sea", 300, 9)
    first = [t.sample.features.tolist() for t in make_stream(spec)]
    again = [t.sample.features.tolist() for t in make_stream(spec)]
    other = [t.sample.features.tolist() for t in make_stream(StreamSpec("sea", 300, 10))]
    assert first == again
    assert first != other


# ---------------------------------------------------------------------------
# rotating hyperplane
# ---------------------------------------------------------------------------

def test_hyperplane_points_on_the_plane_are_positive():
    assert hyperplane_label(np.array([1.0, 1.0]), np.array([0.5, 0.5])) == 1
    assert hyperplane_label(np.array([1.0, 1.0]), np.array([0.4, 0.5])) == 0


def test_static_hyperplane_is_linearly_separable():
    spec = StreamSpec("hyperplane", 2000, 3, {"n_features": 5, "mag_change": 0.0})
    samples = list(strip_tags(gen_hyperplane(spec)))
    X = np.vstack([s.features for s in samples])
    y = np.array([s.label for s in samples])
    model = logistic_fit(X, y)
    assert np.mean((model.score_many(X) >= 0.5) == y) >= 0.95


def test_hyperplane_checkpoints_start_new_concepts():
    spec = StreamSpec("hyperplane", 300, 0, {"mag_change": 0.01}, (DriftPoint(100), DriftPoint(200)))
    concepts = [t.concept_id for t in gen_hyperplane(spec)]
    assert concepts == [0] * 100 + [1] * 100 + [2] * 100


def test_hyperplane_weights_reflect_off_the_bounds():
    weights, directions = drift_weights(np.array([0.95, 0.02, 0.5]), np.array([1.0, -1.0, 1.0]), 0.1)
    assert np.allclose(weights, [0.95, 0.08, 0.6])
    assert directions.tolist() == [-1.0, 1.0, 1.0]


def test_fast_hyperplane_stays_bounded_and_balanced():
    spec = StreamSpec("hyperplane", 20000, 4, {"n_features": 4, "mag_change": 0.01})
    labels = np.array([s.label for s in strip_tags(gen_hyperplane(spec))])
    # each weight crosses [0, 1] many times, yet the classes stay balanced
    for block in labels.reshape(20, 1000):
        assert 0.35 <= block.mean() <= 0.65


def test_hyperplane_rejects_gradual_checkpoints():
    spec = StreamSpec("hyperplane", 300, 0, {}, (DriftPoint(100, 50),))
    with pytest.raises(ScheduleError):
        list(gen_hyperplane(spec))


# ---------------------------------------------------------------------------
# rbf_switch
# ---------------------------------------------------------------------------

def test_rbf_swap_rotates_labels_between_centers():
    spec = StreamSpec("rbf_switch", 2000, 5, {"mode": "swap"}, (DriftPoint(1000),))
    centers = np.array([[0.0, 0.0], [2.0, 0.0]])
    hits = []
    for tagged in gen_rbf_switch(spec):
        x = tagged.sample.features
        nearest = int(np.argmin(((centers - x) ** 2).sum(axis=1)))
        hits.append(tagged.sample.label == (nearest + tagged.concept_id) % 2)
    assert np.mean(hits) >= 0.999


def test_rbf_shift_moves_the_input_distribution():
    spec = StreamSpec("rbf_switch", 2000, 5, {"mode": "shift", "shift": 2.0}, (DriftPoint(1000),))
    stream = list(gen_rbf_switch(spec))
    before = np.mean([t.sample.features[1] for t in stream[:1000]])
    after = np.mean([t.sample.features[1] for t in stream[1000:]])
    assert abs(before) < 0.05
    assert abs(after - 2.0) < 0.05


# ---------------------------------------------------------------------------
# specs and schedules
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("schedule", [
    (DriftPoint(0),),
    (DriftPoint(1000),),
    (DriftPoint(100, -1),),
    (DriftPoint(100, 200), DriftPoint(250)),
])
def test_invalid_schedules_are_rejected(schedule):
    with pytest.raises(ScheduleError):
        StreamSpec("sea", 1000, 0, {}, schedule)


def test_stream_spec_rejects_unknown_kind_and_parameters():
    with pytest.raises(ConfigError):
        StreamSpec("agrawal", 100)
    with pytest.raises(ConfigError):
        StreamSpec("sea", 100, 0, {"sigma": 1.0})
    with pytest.raises(ConfigError):
        StreamSpec("sea", 0)


def test_generator_spec_text():
    text = "sea;length=20000;seed=3;noise=0.2;drifts=5000,12000@500"
    spec = parse_generator_spec(text)
    assert spec.kind == "sea"
    assert spec.length == 20000
    assert spec.seed == 3
    assert spec.params == {"noise": 0.2}
    assert spec.drift_schedule == (DriftPoint(5000, 0), DriftPoint(12000, 500))
    assert format_generator_spec(spec) == text
    assert parse_generator_spec(text, seed=8).seed == 8


def test_generator_spec_errors():
    with pytest.raises(ConfigError):
        parse_generator_spec("sea;noise=0.1")
    with pytest.raises(ConfigError):
        parse_generator_spec("sea;length=10;noise")
    with pytest.raises(ScheduleError):
        parse_schedule("10@x")


def test_generator_spec_threshold_list():
    spec = parse_generator_spec("sea;length=100;thresholds=8,9")
    assert spec.params["thresholds"] == (8.0, 9.0)


@pytest.mark.parametrize("text", [
    "sea;length=100;seed=x",
    "sea;length=100;noise=abc",
    "sea;length=100;thresholds=8,nine",
    "hyperplane;length=100;n_features=many",
    "rbf_switch;length=100;mode=1",
])
def test_malformed_generator_values_fail_at_parse_time(text):
    with pytest.raises(ConfigError):
        parse_generator_spec(text)


def test_programmatic_parameters_are_type_checked():
    with pytest.raises(ConfigError):
        StreamSpec("sea", 100, 0, {"noise": "abc"})
    with pytest.raises(ConfigError):
        StreamSpec("sea", 100, 0, {"noise": (0.1, 0.2)})
    with pytest.raises(ConfigError):
        StreamSpec("rbf_switch", 100, 0, {"mode": 2})
    assert StreamSpec("sea", 100, 0, {"thresholds": [8, 9]}).param("thresholds") == [8, 9]


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------

def test_csv_labels_are_dense_in_first_seen_order(write_file):
    path = write_file("tiny.csv", "1.0,2.0,a\n3.0,4.0,b\n5.0,6.0,a\n")
    stream = load_csv(path)
    assert [s.label for s in stream] == [0, 1, 0]
    assert [s.index for s in stream] == [0, 1, 2]
    assert stream.class_map == {"a": 0, "b": 1}
    assert stream.n_features == 2
    assert stream.name == "tiny"
    assert stream.samples[1].features.tolist() == [3.0, 4.0]


def test_csv_with_header(write_file):
    path = write_file("head.csv", "x,y,label\n1,2,UP\n3,4,DOWN\n")
    stream = load_csv(DatasetFile(path, "csv", header=True))
    assert len(stream) == 2
    assert stream.class_map == {"UP": 0, "DOWN": 1}


def test_csv_electricity_like_rows(rng, write_file):
    rows = []
    for i in range(50):
        values = ",".join(f"{v:.6f}" for v in rng.uniform(size=8))
        rows.append(f"{values},{'UP' if i % 3 else 'DOWN'}")
    stream = load_csv(write_file("elec.csv", "\n".join(rows) + "\n"))
    assert stream.n_features == 8
    assert len(stream) == 50
    assert stream.class_map == {"DOWN": 0, "UP": 1}


def test_csv_missing_value_names_the_row(write_file):
    path = write_file("gap.csv", "1,2,a\n3,,b\n")
    with pytest.raises(DatasetFormatError, match="row 2"):
        load_csv(path)


def test_csv_non_numeric_feature(write_file):
    with pytest.raises(DatasetFormatError, match="not numeric"):
        load_csv(write_file("text.csv", "1,2,a\n3,abc,b\n"))


def test_csv_empty_file(write_file):
    with pytest.raises(DatasetFormatError):
        load_csv(write_file("empty.csv", ""))


# ---------------------------------------------------------------------------
# ARFF
# ---------------------------------------------------------------------------

MINIMAL_ARFF = """@relation tiny
@attribute a numeric
@attribute b numeric
@attribute class {no,yes}
@data
1.0,2.0,yes
3.0,4.0,no
"""


def test_arff_minimal(write_file):
    stream = load_arff(write_file("tiny.arff", MINIMAL_ARFF))
    assert [s.label for s in stream] == [1, 0]
    assert stream.class_map == {"no": 0, "yes": 1}
    assert stream.samples[0].features.tolist() == [1.0, 2.0]


def test_arff_nominal_features_are_one_hot(write_file):
    text = """@relation colours
@attribute colour {red,green,blue}
@attribute size numeric
@attribute class {a,b}
@data
green,1.5,a
blue,2.5,b
"""
    stream = load_arff(write_file("colours.arff", text))
    assert stream.n_features == 4
    assert stream.samples[0].features.tolist() == [0.0, 1.0, 0.0, 1.5]
    assert stream.samples[1].features.tolist() == [0.0, 0.0, 1.0, 2.5]


def test_arff_sparse_rows_are_unsupported(write_file):
    text = MINIMAL_ARFF.replace("1.0,2.0,yes", "{0 1.0, 2 yes}")
    with pytest.raises(UnsupportedFormatError):
        load_arff(write_file("sparse.arff", text))


def test_arff_string_attribute_is_unsupported(write_file):
    text = MINIMAL_ARFF.replace("@attribute b numeric", "@attribute b string")
    with pytest.raises(UnsupportedFormatError):
        load_arff(write_file("string.arff", text))


def test_arff_numeric_class_is_rejected(write_file):
    text = MINIMAL_ARFF.replace("@attribute class {no,yes}", "@attribute class numeric")
    text = text.replace(",yes", ",1").replace(",no", ",0")
    with pytest.raises(DatasetFormatError):
        load_arff(write_file("numeric.arff", text))


def test_arff_without_data_section(write_file):
    text = MINIMAL_ARFF.split("@data")[0]
    with pytest.raises(DatasetFormatError):
        load_arff(write_file("nodata.arff", text))


def test_load_dataset_dispatches_on_extension(write_file):
    arff_path = write_file("tiny.arff", MINIMAL_ARFF)
    csv_path = write_file("tiny.csv", "1,2,a\n")
    assert DatasetFile.from_path(arff_path).format == "arff"
    assert len(load_dataset(DatasetFile.from_path(arff_path))) == 2
    assert len(load_dataset(DatasetFile.from_path(csv_path))) == 1
    with pytest.raises(UnsupportedFormatError):
        load_dataset(DatasetFile(csv_path, "parquet"))
