from drift_pipeline.streams.generators import (
    DriftPoint, StreamSpec, GENERATORS, GENERATOR_DEFAULTS, SEA_THRESHOLDS,
    gen_sea, gen_hyperplane, gen_rbf_switch, make_stream, strip_tags,
    parse_generator_spec, format_generator_spec, parse_schedule, hyperplane_label, drift_weights,
)
from drift_pipeline.streams.loaders import (
    DatasetFile, LoadedStream, load_csv, load_arff, load_dataset,
)
