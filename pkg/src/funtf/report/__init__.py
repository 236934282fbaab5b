"""
Reporting module for funtf.

Human-readable and machine-readable output for command results.

Output formats:
    - Console: rich panels and tables with pass/fail icons
    - JSON: plain dicts with a versioned header, strict JSON numbers
    - CSV: FramePath samples and eigensteps tables, ready for plotting

Example:
    from funtf.report import path_report_dict, print_path, write_path_csv

    print_path(console, path, report)
    write_path_csv(path, "morph.csv")
"""

from funtf.report.console import (
    print_eigensteps,
    print_frame,
    print_fullspark,
    print_funtf_report,
    print_header,
    print_path,
    print_spark,
)
from funtf.report.csv import write_eigensteps_csv, write_path_csv
from funtf.report.json import connect_dict, dumps, error_dict, fullspark_dict, path_report_dict

__all__ = [
    "connect_dict",
    "dumps",
    "error_dict",
    "fullspark_dict",
    "path_report_dict",
    "print_eigensteps",
    "print_frame",
    "print_fullspark",
    "print_funtf_report",
    "print_header",
    "print_path",
    "print_spark",
    "write_eigensteps_csv",
    "write_path_csv",
]
