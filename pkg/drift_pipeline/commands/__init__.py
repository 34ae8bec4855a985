from drift_pipeline.commands.run import RunConfig, cmd_run
from drift_pipeline.commands.sweep import SweepConfig, SweepGrid, cmd_sweep
from drift_pipeline.commands.recompute import annotation_summary, cmd_recompute, load_tables, recompute_tables
