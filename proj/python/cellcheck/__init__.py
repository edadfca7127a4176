"""Spreadsheet inspection: best-practice rules, test scenarios and reports.

Reports come back as strings, JSON by default; pass ``format="table"`` for
the plain-text layout.
"""

import json

from ._core import (
    REPORT_SCHEMA_VERSION,
    Error,
    FormatError,
    IoError,
    ParseError,
    Workbook,
    compare,
    inspect,
    load,
    metrics,
    nesting_depth,
    normalize_formula,
    operation_count,
    parse_fixture,
    presets,
    r1c1,
    run_cli,
    run_scenarios,
)


def inspect_json(workbook, preset="config1", config_file=None):
    """inspect() parsed into a dict."""
    return json.loads(inspect(workbook, preset=preset, config_file=config_file))


__all__ = [
    "REPORT_SCHEMA_VERSION",
    "Error",
    "FormatError",
    "IoError",
    "ParseError",
    "Workbook",
    "compare",
    "inspect",
    "inspect_json",
    "load",
    "metrics",
    "nesting_depth",
    "normalize_formula",
    "operation_count",
    "parse_fixture",
    "presets",
    "r1c1",
    "run_cli",
    "run_scenarios",
]
