import json
import logging
import os

import numpy as np
import pytest

from improlms import cli, settings
from improlms.io import report
from improlms.utils import log


def test_presets(capsys):
    assert cli.main(["presets"]) == cli.EXIT_OK

    out = capsys.readouterr().out
    for name in ("fig2", "fig3", "fig4"):
        assert f"{name}: " in out


def test_bounds(capsys):
    assert cli.main(["bounds", "fig2"]) == cli.EXIT_OK

    out = capsys.readouterr().out
    assert "mse_bound (2/tr[R]): 2.5" in out
    assert "case_a_bound: 2" in out


def test_run(tmp_path, capsys):
    prefix = str(tmp_path / "small")
    code = cli.main(["run", "fig2", "--runs", "20", "--out", prefix])

    assert code == cli.EXIT_OK
    assert os.path.isfile(f"{prefix}_curves.csv")
    rows = report.read_csv(f"{prefix}_report.csv")
    assert rows[0]["model"] == "monte_carlo"
    assert "proposed" in capsys.readouterr().out


def test_run_restores_threads(tmp_path):
    threads = settings.NTHREADS
    code = cli.main(
        [
            "run",
            "fig2",
            "--runs",
            "8",
            "--threads",
            "2",
            "--out",
            str(tmp_path / "t"),
        ]
    )

    assert code == cli.EXIT_OK
    assert settings.NTHREADS == threads


def test_inapplicable_model(tmp_path):
    code = cli.main(
        [
            "run",
            "fig4",
            "--runs",
            "5",
            "--models",
            "proposed,case_a",
            "--out",
            str(tmp_path / "eq"),
        ]
    )
    assert code == cli.EXIT_INAPPLICABLE


@pytest.mark.parametrize(
    "extra",
    [["--models", "proposed,fancy"], ["--threads", "0"], ["--runs", "0"]],
)
def test_invalid_overrides(tmp_path, extra):
    argv = ["run", "fig2", "--out", str(tmp_path / "x"), *extra]
    assert cli.main(argv) == cli.EXIT_CONFIG


def test_invalid_config_file(tmp_path):
    fname = tmp_path / "bad.json"
    fname.write_text(json.dumps(dict(mu=1.0)), encoding="utf-8")

    assert cli.main(["bounds", str(fname)]) == cli.EXIT_CONFIG


def test_missing_config_file(tmp_path):
    fname = str(tmp_path / "missing.json")
    assert cli.main(["bounds", fname]) == cli.EXIT_IO


def test_sweep_rho(tmp_path, capsys):
    prefix = str(tmp_path / "rho")
    code = cli.main(["sweep-rho", "fig3", "--rho", "0,0.8", "--out", prefix])

    assert code == cli.EXIT_OK
    rows = report.read_csv(f"{prefix}_sweep_rho.csv")
    assert [r["rho_abs"] for r in rows] == [0.0, 0.8]
    assert rows[1]["k_norm2"] == pytest.approx(0.00300672, rel=1e-5)
    assert capsys.readouterr().out.strip().endswith("rho_sweep_rho.csv")


def test_sweep_mu(tmp_path):
    prefix = str(tmp_path / "mu")
    code = cli.main(
        ["sweep-mu", "fig2", "--mu", "1,3", "--steps", "300", "--out", prefix]
    )

    assert code == cli.EXIT_OK
    rows = report.read_csv(f"{prefix}_sweep_mu.csv")
    assert rows[0]["general"] == pytest.approx(0.276667)
    assert np.isnan(rows[1]["general"])


def test_logfile(tmp_path):
    logfile = str(tmp_path / "improlms.log")
    argv = ["--verbose", "--logfile", logfile, "run", "fig3", "--runs", "4"]
    argv += ["--out", str(tmp_path / "logged")]
    try:
        assert cli.main(argv) == cli.EXIT_OK
    finally:
        logger = logging.getLogger(log.LOGGER_NAME)
        for handler in list(logger.handlers):
            if isinstance(handler, logging.FileHandler):
                logger.removeHandler(handler)
                handler.close()

    with open(logfile, encoding="utf-8") as f:
        text = f.read()
    assert "improlms [INFO]" in text
    assert "improlms [DEBUG]" in text
