"""CGC IO - job and suite configuration, environment settings and artifact writers."""

from .config import (
    JobConfig,
    Settings,
    from_mapping,
    load_job,
    load_settings,
    load_suite_config,
    parse_config,
    parse_suite_config,
    suite_from_mapping,
)
from .emit import csv_text, emit_csv, emit_mesh, emit_report, fmt, obj_text, ply_text, read_csv
from .errors import ConfigError, OutputError

__all__ = [
    "JobConfig",
    "Settings",
    "from_mapping",
    "load_job",
    "load_settings",
    "load_suite_config",
    "parse_config",
    "parse_suite_config",
    "suite_from_mapping",
    "csv_text",
    "emit_csv",
    "emit_mesh",
    "emit_report",
    "fmt",
    "obj_text",
    "ply_text",
    "read_csv",
    "ConfigError",
    "OutputError",
]
