from pytanner.io.alist import load_alist, read_alist, save_alist, write_alist
from pytanner.io.config import (
    RunConfig,
    load_run_config,
    load_run_sections,
    parse_run_config,
    parse_run_sections,
)
from pytanner.io.degrees import (
    degrees_from_gamma,
    normalize_gamma,
    parse_gamma,
    read_degrees,
)
from pytanner.io.reports import (
    CodeAnalysis,
    analysis_of,
    analyze_columns,
    ensemble_columns,
    ensemble_rows,
    render_csv,
    simulate_rows,
    write_csv,
)

__all__ = [
    "CodeAnalysis",
    "RunConfig",
    "analysis_of",
    "analyze_columns",
    "degrees_from_gamma",
    "ensemble_columns",
    "ensemble_rows",
    "load_alist",
    "load_run_config",
    "load_run_sections",
    "normalize_gamma",
    "parse_gamma",
    "parse_run_config",
    "parse_run_sections",
    "read_alist",
    "read_degrees",
    "render_csv",
    "save_alist",
    "simulate_rows",
    "write_csv",
]
