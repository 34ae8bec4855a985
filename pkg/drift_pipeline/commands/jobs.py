"""
Experiment jobs shared by the run and sweep commands.

A job is one harness run: a stream source, a HarnessConfig and a repeat
index. Jobs are independent; a process pool runs them and the results are
merged in (combination, repeat) order so output never depends on scheduling.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

from drift_pipeline.drift_config import logger
from drift_pipeline.drift_utils import derive_seed
from drift_pipeline.exceptions import ConfigError
from drift_pipeline.detectors import D3Config, OCDDConfig
from drift_pipeline.learners.kernels import KernelSpec
from drift_pipeline.streams.generators import StreamSpec, make_stream, parse_generator_spec, strip_tags
from drift_pipeline.streams.loaders import DatasetFile, load_dataset
from drift_pipeline.suds.selectors import SelectorConfig
from drift_pipeline.evaluation.harness import HarnessConfig, run_prequential
from drift_pipeline.evaluation.reports import report_row


@dataclass(frozen=True)
class StreamSource:
    """Either a generator spec (re-seeded per repeat) or a dataset file"""
    name: str
    spec: Optional[StreamSpec] = None
    dataset: Optional[DatasetFile] = None

    def samples(self, seed):
        if self.spec is not None:
            # the spec text seed offsets the run seed
            spec = StreamSpec(self.spec.kind, self.spec.length, self.spec.seed + seed, self.spec.params, self.spec.drift_schedule)
            return strip_tags(make_stream(spec))
        return iter(_cached_dataset(self.dataset))


@lru_cache(maxsize=4)
def _cached_dataset(dataset):
    return load_dataset(dataset).samples


@dataclass(frozen=True)
class Job:
    combination: int
    repeat: int
    source: StreamSource
    config: HarnessConfig
    keep_trace: bool = False


def resolve_source(input_path=None, generate=None, header=False):
    """Build the stream source from exactly one of --input / --generate"""
    if bool(input_path) == bool(generate):
        raise ConfigError("Exactly one of --input or --generate is required")
    if generate:
        spec = parse_generator_spec(generate)
        return StreamSource(name=spec.kind, spec=spec)
    if not os.path.isfile(input_path):
        raise FileNotFoundError(f"Input file not found: {input_path}")
    dataset = DatasetFile.from_path(input_path, header)
    return StreamSource(name=os.path.splitext(os.path.basename(input_path))[0], dataset=dataset)


def detector_config(detector, w=None, rho=None, tau=None, nu=None, gamma=None, standardize=False, auc_folds=None):
    """Detector config from CLI values; unset values keep the defaults"""
    if detector == "d3":
        if nu is not None or gamma is not None:
            raise ConfigError("--nu and --gamma apply to the ocdd detector only")
        values = {"w": w, "rho": rho, "tau": tau, "auc_folds": auc_folds}
        return D3Config(standardize=standardize, **{k: v for k, v in values.items() if v is not None})
    if detector == "ocdd":
        if tau is not None or standardize or auc_folds is not None:
            raise ConfigError("--tau, --standardize and --auc-folds apply to the d3 detector only")
        values = {"w": w, "rho": rho, "nu": nu}
        return OCDDConfig(kernel=KernelSpec(gamma=gamma), **{k: v for k, v in values.items() if v is not None})
    raise ConfigError(f"Unknown detector: {detector}")


def harness_config(detector_cfg, selector, update_mode, seed, trace=False):
    kind = "d3" if isinstance(detector_cfg, D3Config) else "ocdd"
    if selector not in ("baseline", "suds"):
        raise ConfigError(f"Unknown selector: {selector}")
    return HarnessConfig(
        detector=detector_cfg,
        selector=SelectorConfig(kind=f"{selector}_{kind}", seed=seed),
        update_mode=update_mode,
        seed=seed,
        trace=trace,
    )


def run_job(job):
    """Run one job; the selector, D3 fold and generator seeds are seed + repeat"""
    seed = derive_seed(job.config.seed, job.repeat)
    detector = job.config.detector
    if isinstance(detector, D3Config):
        detector = replace(detector, seed=seed)
    config = HarnessConfig(
        detector=detector,
        selector=SelectorConfig(job.config.selector.kind, seed),
        classifier=job.config.classifier,
        update_mode=job.config.update_mode,
        seed=seed,
        trace=job.keep_trace,
    )
    report = run_prequential(job.source.samples(seed), config)
    row = report_row(report, job.source.name, config, job.repeat)
    return job.combination, job.repeat, row, report.per_step_trace


def default_workers():
    return os.cpu_count() or 1


def run_jobs(jobs, workers=None):
    """
    Run jobs in-process (workers=1) or on a process pool.

    Returns:
        list of (combination, repeat, row, trace) sorted by combination, then repeat
    """
    workers = workers or default_workers()
    if workers < 1:
        raise ConfigError(f"--workers must be >= 1, got {workers}")
    logger.info(f"🔄 Running {len(jobs)} experiment(s) on {min(workers, max(len(jobs), 1))} worker(s)")
    if workers == 1 or len(jobs) <= 1:
        results = [run_job(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_job, jobs))
    return sorted(results, key=lambda result: (result[0], result[1]))
