# utils first, utils.tictoc and _base import each other through it
from improlms import utils  # isort: skip
from improlms import (
    _version,
    experiment,
    helpers,
    io,
    numerics,
    settings,
    signals,
    simulator,
    statistics,
    theory,
)
from improlms.experiment import run_experiment
from improlms.signals import (
    ChannelEqualization,
    ImproperWhiteSpec,
    SystemIdentification,
)
from improlms.statistics import SecondOrderStats, wiener_solution

__version__ = _version.version

__all__ = [
    "__version__",
    "settings",
    "numerics",
    "signals",
    "statistics",
    "theory",
    "simulator",
    "experiment",
    "utils",
    "io",
    "helpers",
    "ImproperWhiteSpec",
    "SystemIdentification",
    "ChannelEqualization",
    "SecondOrderStats",
    "wiener_solution",
    "run_experiment",
]
