import os
import subprocess
import sys

import pytest

import improlms

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


@pytest.mark.parametrize(
    "module",
    [
        "improlms",
        "improlms._base",
        "improlms.utils.tictoc",
        "improlms.helpers.data",
        "improlms.cli",
    ],
)
def test_fresh_interpreter_import(module):
    completed = subprocess.run(
        [sys.executable, "-c", f"import {module}"],
        cwd=REPO,
        capture_output=True,
        text=True,
    )
    assert completed.returncode == 0, completed.stderr


def test_console_entry(capsys):
    from improlms import cli

    assert improlms.utils.Tic is improlms.utils.tictoc.Tic
    assert cli.main(["presets"]) == cli.EXIT_OK
    assert "fig4: " in capsys.readouterr().out


def test_module_entry():
    completed = subprocess.run(
        [sys.executable, "-m", "improlms.cli", "presets"],
        cwd=REPO,
        capture_output=True,
        text=True,
    )
    assert completed.returncode == 0, completed.stderr
    assert "fig2: " in completed.stdout
