"""improlms/improlms/io/__init__.py.

io.
I - `load_config`, shipped presets.
O - `emit_csv`.
"""

from improlms.io import config, ioutils, report
from improlms.io.config import load_config, parse_config
from improlms.io.report import emit_csv

__all__ = [
    "config",
    "ioutils",
    "report",
    "load_config",
    "parse_config",
    "emit_csv",
]
