"""
sweep: hyperparameter grid over one detector, both selectors by default.
"""

import itertools
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from drift_pipeline.drift_config import logger, D3_SWEEP_GRID, OCDD_SWEEP_GRID, HARNESS_CONFIG
from drift_pipeline.drift_utils import render_sections, write_output
from drift_pipeline.exceptions import ConfigError
from drift_pipeline.evaluation.reports import summarize_sweep, hadam_difference
from drift_pipeline.commands.jobs import Job, detector_config, harness_config, resolve_source, run_jobs

GRID_PARAMETERS = {
    "d3": ("w", "rho", "tau"),
    "ocdd": ("w", "rho", "nu"),
}

DEFAULT_GRIDS = {
    "d3": D3_SWEEP_GRID,
    "ocdd": OCDD_SWEEP_GRID,
}


@dataclass(frozen=True)
class SweepGrid:
    detector: str
    values: Dict[str, Tuple] = field(default_factory=dict)
    repeats: int = 1

    def __post_init__(self):
        if self.detector not in GRID_PARAMETERS:
            raise ConfigError(f"Unknown detector: {self.detector}")
        expected = set(GRID_PARAMETERS[self.detector])
        if set(self.values) != expected:
            raise ConfigError(f"{self.detector} grid needs exactly {sorted(expected)}, got {sorted(self.values)}")
        for name, values in self.values.items():
            if not values:
                raise ConfigError(f"Grid list for {name} is empty")
        if self.repeats < 1:
            raise ConfigError(f"--repeats must be >= 1, got {self.repeats}")

    @classmethod
    def default(cls, detector, overrides=None, repeats=None):
        """Default grid for a detector with some lists replaced"""
        if detector not in DEFAULT_GRIDS:
            raise ConfigError(f"Unknown detector: {detector}")
        base = DEFAULT_GRIDS[detector]
        overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
        foreign = set(overrides) - set(GRID_PARAMETERS[detector])
        if foreign:
            raise ConfigError(f"Grid parameters {sorted(foreign)} do not apply to {detector}")
        values = {name: tuple(overrides.get(name, base[name])) for name in GRID_PARAMETERS[detector]}
        return cls(detector, values, repeats or base["repeats"])

    def combinations(self):
        names = GRID_PARAMETERS[self.detector]
        return [dict(zip(names, combo)) for combo in itertools.product(*(self.values[n] for n in names))]

    @property
    def total_runs(self):
        return len(self.combinations()) * self.repeats


@dataclass(frozen=True)
class SweepConfig:
    grid: SweepGrid
    input: Optional[str] = None
    generate: Optional[str] = None
    header: bool = False
    selectors: Tuple[str, ...] = ("baseline", "suds")
    gamma: Optional[float] = None
    standardize: bool = False
    auc_folds: Optional[int] = None
    update_mode: str = HARNESS_CONFIG["update_mode"]
    seed: int = HARNESS_CONFIG["seed"]
    out: Optional[str] = None
    format: str = "tsv"
    workers: Optional[int] = None
    plot: Optional[str] = None


def build_jobs(config):
    source = resolve_source(config.input, config.generate, config.header)
    jobs = []
    combination = 0
    for values in config.grid.combinations():
        detector_cfg = detector_config(config.grid.detector, gamma=config.gamma, standardize=config.standardize,
                                       auc_folds=config.auc_folds, **values)
        for selector in config.selectors:
            harness = harness_config(detector_cfg, selector, config.update_mode, config.seed)
            jobs.extend(Job(combination, repeat, source, harness) for repeat in range(config.grid.repeats))
            combination += 1
    return jobs


def cmd_sweep(config):
    """
    Run every grid combination with every selector and summarise.

    Returns:
        str: rendered sweep table and, with both selectors, the HADAM difference table
    """
    try:
        grid = config.grid
        logger.info(f"🚀 Starting {grid.detector} sweep: {len(grid.combinations())} combinations x "
                    f"{grid.repeats} repeats x {len(config.selectors)} selector(s)")
        results = run_jobs(build_jobs(config), config.workers)
        summary = summarize_sweep([row for _, _, row, _ in results])

        sections = [("sweep", summary)]
        if set(config.selectors) == {"baseline", "suds"}:
            difference = hadam_difference(summary)
            sections.append(("hadam_difference", difference))
            logger.info(f"📊 Mean HADAM difference (SUDS - baseline): {difference['difference'].mean():.4f}")
            if config.plot:
                from drift_pipeline.evaluation.plots import hadam_difference_heatmap
                hadam_difference_heatmap(difference).write_html(config.plot)
                logger.info(f"📌 Heatmap written to {config.plot}")
        elif config.plot:
            logger.warning("⚠️ --plot needs both selectors; no heatmap written")

        text = render_sections(sections, config.format)
        write_output(text, config.out)
        logger.info(f"✅ Sweep completed: {len(results)} run(s)")
        return text
    except Exception as e:
        logger.error(f"❌ Sweep failed: {e}")
        raise
