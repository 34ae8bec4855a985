from drift_pipeline.suds.selectors import (
    SELECTOR_KINDS, COMPATIBLE_SELECTORS, SelectionResult, SelectorConfig, check_compatible,
    select_baseline_d3, select_suds_d3, select_baseline_ocdd, select_suds_ocdd, select,
)
