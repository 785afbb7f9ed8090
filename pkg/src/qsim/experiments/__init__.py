"""Experiment files, runners, result export, and the HTTP service."""

from .graph_io import (
    CUTOFF_ENV_VAR,
    DEFAULT_CUTOFF_DIM,
    SCHEMA_VERSION,
    DeviceEntry,
    ExperimentSpec,
    SimSettings,
    build_graph,
    default_cutoff_dim,
    dump_experiment,
    load_experiment,
    parse_experiment,
    save_experiment,
    validate_graph_dict,
)
from .hom import HOM_DEFAULT_CUTOFF_DIM, build_hom_spec, run_hom_point, run_hom_sweep
from .jdr_run import JDR_DEFAULT_CUTOFF_DIM, run_jdr, transcript_table
from .results import CSV_SIGNIFICANT_DIGITS, ResultSet, Table, export_results, grid_payload
from .runner import run_experiment, sweep_envelope_center

__all__ = [
    "CSV_SIGNIFICANT_DIGITS",
    "CUTOFF_ENV_VAR",
    "DEFAULT_CUTOFF_DIM",
    "DeviceEntry",
    "ExperimentSpec",
    "HOM_DEFAULT_CUTOFF_DIM",
    "JDR_DEFAULT_CUTOFF_DIM",
    "ResultSet",
    "SCHEMA_VERSION",
    "SimSettings",
    "Table",
    "build_graph",
    "build_hom_spec",
    "default_cutoff_dim",
    "dump_experiment",
    "export_results",
    "grid_payload",
    "load_experiment",
    "parse_experiment",
    "run_experiment",
    "run_hom_point",
    "run_hom_sweep",
    "run_jdr",
    "save_experiment",
    "sweep_envelope_center",
    "transcript_table",
    "validate_graph_dict",
]
