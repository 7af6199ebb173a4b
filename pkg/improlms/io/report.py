"""improlms/improlms/io/report.py.

CSV output of experiments and sweeps. Floats are printed with
`settings.CSV_SIGNIFICANT_DIGITS` significant digits, so that same results
give byte-identical files.
"""
import csv
import io

import numpy as np

from improlms import settings
from improlms.io import ioutils
from improlms.utils import log

CURVE_COLUMNS = (
    "iter",
    "mc_mse",
    "mc_stderr",
    "proposed_mse",
    "independence_mse",
    "j_min",
)

REPORT_COLUMNS = (
    "model",
    "steady_state",
    "rel_err_pct",
    "k_norm2",
    "j_min",
    "mu",
    "mu_max",
    "trace_r",
    "lambda_max",
)


def format_value(value):
    """CSV cell of a value.

    Parameters
    ----------
    value: object

    Returns
    -------
    cell: str
    """
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if np.isnan(value):
            return "nan"
        digits = settings.CSV_SIGNIFICANT_DIGITS
        formatted = f"{value:.{digits}g}"
        # no negative zero
        return "0" if formatted == "-0" else formatted
    return str(value)


def parse_value(cell):
    """Inverse of format_value() for numbers. Other cells stay str, empty
    cells become None.

    Parameters
    ----------
    cell: str

    Returns
    -------
    value: int, float, str or None
    """
    if cell == "":
        return None
    try:
        return int(cell)
    except ValueError:
        pass
    try:
        return float(cell)
    except ValueError:
        return cell


def table_text(columns, rows):
    """Comma separated text with header row, "\\n" line endings.

    Parameters
    ----------
    columns: list
    rows: iterable
      dicts keyed by column names. Missing keys give empty cells.

    Returns
    -------
    text: str
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(c, None)) for c in columns])

    return buffer.getvalue()


def write_table(fname, columns, rows):
    """Writes a CSV table atomically.

    Parameters
    ----------
    fname: str
    columns: list
    rows: iterable

    Returns
    -------
    fname: str
      absolute path.
    """
    fname = ioutils.atomic_write(fname, table_text(columns, rows))
    log.debug("io.report.write_table() -", f"wrote {fname}")

    return fname


def read_csv(fname):
    """Reads a CSV file written by this module.

    Parameters
    ----------
    fname: str

    Returns
    -------
    rows: list
      dicts keyed by the header.
    """
    with open(ioutils.abs_fname(fname), encoding="utf-8", newline="") as f:
        return [
            {key: parse_value(cell) for key, cell in row.items()}
            for row in csv.DictReader(f)
        ]


def curve_rows(curve, trajectories, j_min):
    """Rows of the learning curve table. Row `iter` holds the ensemble
    average of |e|^2 computed with the weights after `iter` updates, next
    to the model values J(iter).

    Parameters
    ----------
    curve: MseCurve
    trajectories: dict
      variant -> TheoryTrajectory.
    j_min: float

    Returns
    -------
    columns: tuple
    rows: list
    """
    model_columns = [
        f"{variant}_mse"
        for variant in ("proposed", "independence")
        if variant in trajectories
    ]
    columns = ("iter", "mc_mse", "mc_stderr", *model_columns, "j_min")

    rows = []
    for n in range(len(curve)):
        row = dict(
            iter=n,
            mc_mse=curve.mean_sq_error[n],
            mc_stderr=curve.stderr[n],
            j_min=j_min,
        )
        for variant, trajectory in trajectories.items():
            # a diverged model has no value beyond its last finite step
            row[f"{variant}_mse"] = (
                trajectory.j[n] if n < len(trajectory) else np.nan
            )
        rows.append(row)

    return columns, rows


def emit_csv(results, prefix):
    """Writes `<prefix>_curves.csv` and `<prefix>_report.csv` of an
    experiment.

    Parameters
    ----------
    results: experiment.ExperimentResult
    prefix: str

    Returns
    -------
    fnames: tuple
      (curves: str, report: str) absolute paths.
    """
    columns, rows = curve_rows(
        results.curve, results.trajectories, results.report.j_min
    )
    curves = write_table(f"{prefix}_curves.csv", columns, rows)
    report = write_table(
        f"{prefix}_report.csv", REPORT_COLUMNS, results.report.rows()
    )
    log.info("io.report.emit_csv() -", f"wrote {curves} and {report}")

    return curves, report
