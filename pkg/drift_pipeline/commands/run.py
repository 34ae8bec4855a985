"""
run: repeated harness runs of one configuration.
"""

from dataclasses import dataclass
from typing import Optional

from drift_pipeline.drift_config import logger, HARNESS_CONFIG, REPORT_COLUMNS
from drift_pipeline.drift_utils import records_frame, render_sections, write_output
from drift_pipeline.exceptions import ConfigError
from drift_pipeline.evaluation.reports import summarize_rows
from drift_pipeline.commands.jobs import Job, detector_config, harness_config, resolve_source, run_jobs


@dataclass(frozen=True)
class RunConfig:
    input: Optional[str] = None
    generate: Optional[str] = None
    header: bool = False
    detector: str = "d3"
    selector: str = "baseline"
    w: Optional[int] = None
    rho: Optional[float] = None
    tau: Optional[float] = None
    nu: Optional[float] = None
    gamma: Optional[float] = None
    standardize: bool = False
    auc_folds: Optional[int] = None
    update_mode: str = HARNESS_CONFIG["update_mode"]
    repeats: int = 1
    seed: int = HARNESS_CONFIG["seed"]
    out: Optional[str] = None
    format: str = "tsv"
    workers: Optional[int] = None
    trace: Optional[str] = None

    def __post_init__(self):
        if self.repeats < 1:
            raise ConfigError(f"--repeats must be >= 1, got {self.repeats}")
        if bool(self.input) == bool(self.generate):
            raise ConfigError("Exactly one of --input or --generate is required")


def build_jobs(config):
    source = resolve_source(config.input, config.generate, config.header)
    detector_cfg = detector_config(config.detector, config.w, config.rho, config.tau, config.nu, config.gamma,
                                   config.standardize, config.auc_folds)
    harness = harness_config(detector_cfg, config.selector, config.update_mode, config.seed)
    return [
        Job(0, repeat, source, harness, keep_trace=bool(config.trace) and repeat == 0)
        for repeat in range(config.repeats)
    ]


def cmd_run(config):
    """
    Execute `repeats` runs and emit per-run rows plus mean/std rows.

    Returns:
        str: the rendered report
    """
    try:
        logger.info(f"🚀 Starting run: detector={config.detector}, selector={config.selector}, repeats={config.repeats}")
        results = run_jobs(build_jobs(config), config.workers)
        rows = [row for _, _, row, _ in results]

        runs = records_frame(rows, REPORT_COLUMNS)
        text = render_sections([("runs", runs), ("summary", summarize_rows(rows))], config.format)
        write_output(text, config.out)

        if config.trace:
            trace = results[0][3]
            trace.to_csv(config.trace, index=False, lineterminator='\n')
            logger.info(f"📌 Trace of repeat 0 written to {config.trace}")

        logger.info(f"✅ Run completed: {len(rows)} row(s)")
        return text
    except Exception as e:
        logger.error(f"❌ Run failed: {e}")
        raise
