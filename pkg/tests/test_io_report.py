import os
import stat
from types import SimpleNamespace

import numpy as np
import pytest

from improlms import simulator
from improlms.io import report


@pytest.mark.parametrize(
    "value, cell",
    [
        (None, ""),
        (True, "true"),
        (np.bool_(False), "false"),
        (3, "3"),
        (np.int64(-2), "-2"),
        (0.30180000001, "0.3018"),
        (np.float64(1234567.0), "1.23457e+06"),
        (-0.0, "0"),
        (-1e-30, "-1e-30"),
        (np.nan, "nan"),
        ("unstable", "unstable"),
    ],
)
def test_format_value(value, cell):
    assert report.format_value(value) == cell


@pytest.mark.parametrize(
    "cell, value",
    [
        ("", None),
        ("3", 3),
        ("0.3018", 0.3018),
        ("not applicable", "not applicable"),
    ],
)
def test_parse_value(cell, value):
    assert report.parse_value(cell) == value


def test_parse_value_nan():
    assert np.isnan(report.parse_value("nan"))


def test_table_text():
    text = report.table_text(
        ("a", "b"), [dict(a=1, b=0.5), dict(a=2), dict(b="x, y")]
    )
    assert text == 'a,b\n1,0.5\n2,\n,"x, y"\n'


def test_write_and_read(tmp_path):
    fname = report.write_table(
        tmp_path / "sub" / "table.csv",
        ("model", "steady_state"),
        [dict(model="proposed", steady_state=0.3018)],
    )

    assert fname.endswith("table.csv")
    assert report.read_csv(fname) == [
        dict(model="proposed", steady_state=0.3018)
    ]
    # no temporary files left behind
    assert [p.name for p in (tmp_path / "sub").iterdir()] == ["table.csv"]


@pytest.mark.skipif(os.name != "posix", reason="posix permissions")
def test_written_file_follows_umask(tmp_path):
    umask = os.umask(0o022)
    try:
        fname = report.write_table(
            tmp_path / "table.csv", ("model",), [dict(model="proposed")]
        )
    finally:
        os.umask(umask)

    assert stat.S_IMODE(os.stat(fname).st_mode) == 0o644


def test_curve_rows_without_models():
    curve = simulator.MseCurve([0.9, 0.5, 0.3], [0.1, 0.05, 0.01], runs=2)
    columns, rows = report.curve_rows(curve, dict(), 0.151)

    assert columns == ("iter", "mc_mse", "mc_stderr", "j_min")
    assert len(rows) == 3
    assert rows[2]["iter"] == 2
    assert rows[2]["mc_mse"] == pytest.approx(0.3)


def test_curve_rows_with_truncated_model():
    curve = simulator.MseCurve([0.9, 0.5, 0.3], [0.0] * 3, runs=1)
    columns, rows = report.curve_rows(
        curve, dict(proposed=_Trajectory([0.9, 4.0])), 0.1
    )

    assert columns == ("iter", "mc_mse", "mc_stderr", "proposed_mse", "j_min")
    assert rows[1]["proposed_mse"] == 4.0
    assert np.isnan(rows[2]["proposed_mse"])


class _Trajectory:
    def __init__(self, j):
        self.j = np.asarray(j)

    def __len__(self):
        return len(self.j)


def test_emit_csv(tmp_path):
    curve = simulator.MseCurve([0.9, 0.5], [0.1, 0.1], runs=2)
    results = SimpleNamespace(
        curve=curve,
        trajectories=dict(independence=_Trajectory([0.9, 0.4])),
        report=SimpleNamespace(
            j_min=0.1,
            rows=lambda: [dict(model="monte_carlo", steady_state=0.5)],
        ),
    )
    curves, table = report.emit_csv(results, str(tmp_path / "out"))

    assert report.read_csv(curves)[1] == dict(
        iter=1, mc_mse=0.5, mc_stderr=0.1, independence_mse=0.4, j_min=0.1
    )
    with open(table, encoding="utf-8") as f:
        header = f.readline().strip()
    assert header == ",".join(report.REPORT_COLUMNS)
    assert report.read_csv(table)[0]["model"] == "monte_carlo"
