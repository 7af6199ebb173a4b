"""improlms/improlms/io/config.py.

JSON experiment configurations and the shipped presets.

Complex numbers are given as JSON numbers, as `[re, im]` pairs or as
strings understood by `complex()`, e.g. "-0.7j". Vectors are lists of those.
"""
import json
import pathlib

import numpy as np

from improlms import signals
from improlms._base import ImproLmsBase
from improlms.helpers import raise_if
from improlms.helpers.options import (
    Option,
    make_valid_options,
    validate_section,
)
from improlms.helpers.raise_if import ConfigError
from improlms.io import ioutils

PRESET_DIR = pathlib.Path(__file__).resolve().parent / "presets"

MODEL_NAMES = (
    "proposed",
    "independence",
    "case_a",
    "case_b",
    "general_steady_state",
)

SCENARIO_KINDS = ("sysid", "equalization")


def _positive(value):
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"has to be finite and positive. Given {value}.")
    return float(value)


def _nonnegative(value):
    if not np.isfinite(value) or value < 0:
        raise ValueError(f"has to be finite and >= 0. Given {value}.")
    return float(value)


def _at_least(minimum):
    def check(value):
        if value < minimum:
            raise ValueError(f"has to be >= {minimum}. Given {value}.")
        return int(value)

    return check


def _correlation(value):
    if not np.isfinite(value) or abs(value) > 1:
        raise ValueError(f"has to be in [-1, 1]. Given {value}.")
    return float(value)


def _kind(value):
    if value not in SCENARIO_KINDS:
        raise ValueError(
            f"Unknown scenario kind `{value}`. Valid kinds are "
            f"{SCENARIO_KINDS}."
        )
    return value


def _models(value):
    unknown = [v for v in value if v not in MODEL_NAMES]
    if unknown or not all(isinstance(v, str) for v in value):
        raise ValueError(
            f"Unknown model(s) {unknown}. Valid models are {MODEL_NAMES}."
        )
    # keep canonical order, drop duplicates
    return tuple(m for m in MODEL_NAMES if m in value)


def parse_complex(value, path=""):
    """Complex number from a JSON value.

    Parameters
    ----------
    value: int, float, str or list
      number, "[re, im]" pair or string like "0.5-1j".
    path: str

    Returns
    -------
    number: complex
    """
    if isinstance(value, bool):
        raise ConfigError("bool is not a complex number.", path=path)
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, str):
        try:
            return complex(value.replace(" ", ""))
        except ValueError as err:
            raise ConfigError(
                f"`{value}` is not a complex number.", path=path
            ) from err
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(
            isinstance(v, (int, float)) and not isinstance(v, bool)
            for v in value
        )
    ):
        return complex(value[0], value[1])

    raise ConfigError(
        "Expected a number, a [re, im] pair or a string like `0.5j`.",
        path=path,
    )


def parse_complex_vector(value, path=""):
    """Complex vector from a JSON list.

    Parameters
    ----------
    value: list
    path: str

    Returns
    -------
    vector: (n,) np.ndarray
    """
    if not isinstance(value, list) or len(value) == 0:
        raise ConfigError("Expected a non-empty list.", path=path)
    return np.array(
        [parse_complex(v, f"{path}[{i}]") for i, v in enumerate(value)],
        dtype=complex,
    )


valid_options = make_valid_options(
    Option(
        "experiment",
        "scenario",
        "Scenario object with `kind` in {sysid, equalization}.",
        (dict,),
        required=True,
    ),
    Option(
        "experiment",
        "mu",
        "LMS step size mu > 0.",
        (int, float),
        required=True,
        validator=_positive,
    ),
    Option(
        "experiment",
        "steps",
        "Number of LMS iterations.",
        (int,),
        required=True,
        validator=_at_least(1),
    ),
    Option(
        "experiment",
        "runs",
        "Monte Carlo ensemble size.",
        (int,),
        default=1000,
        validator=_at_least(1),
    ),
    Option(
        "experiment",
        "seed",
        "Base seed of the ensemble.",
        (int,),
        default=0,
        validator=_at_least(0),
    ),
    Option(
        "experiment",
        "tail_from",
        "First iteration of the steady state window. Default 2 * steps // 3.",
        (int,),
        validator=_at_least(0),
    ),
    Option(
        "experiment",
        "outputs",
        "Output path prefix of the CSV files.",
        (str,),
        default="improlms",
    ),
    Option(
        "experiment",
        "models",
        f"Subset of {MODEL_NAMES}. Default: every applicable model.",
        (list,),
        validator=_models,
    ),
    Option(
        "experiment",
        "w0",
        "Initial weights. Default zeros.",
        (list,),
    ),
    Option(
        "experiment",
        "description",
        "Free text provenance of the configuration.",
        (str,),
        default="",
    ),
    Option(
        "scenario",
        "kind",
        f"One of {SCENARIO_KINDS}.",
        (str,),
        required=True,
        validator=_kind,
    ),
    Option(
        "scenario",
        "input",
        "Input signal {r_uu, r_vv, rho_uv}.",
        (dict,),
        required=True,
    ),
    Option(
        "scenario",
        "noise_var",
        "Measurement (sysid) or channel (equalization) noise variance.",
        (int, float),
        default=0.0,
        validator=_nonnegative,
    ),
    Option(
        "scenario",
        "filter_len",
        "Adaptive filter length N. Default len(f) for sysid.",
        (int,),
        validator=_at_least(1),
    ),
    Option("scenario", "f", "sysid: linear part of the plant.", (list,)),
    Option("scenario", "g", "sysid: conjugate part of the plant.", (list,)),
    Option(
        "scenario",
        "channel_taps",
        "equalization: weights of the last M symbols, oldest first. The "
        "impulse response is this list reversed.",
        (list,),
    ),
    Option(
        "scenario",
        "delay",
        "equalization: training delay.",
        (int,),
        validator=_at_least(0),
    ),
    Option(
        "input",
        "r_uu",
        "Variance of the real part.",
        (int, float),
        required=True,
        validator=_nonnegative,
    ),
    Option(
        "input",
        "r_vv",
        "Variance of the imaginary part.",
        (int, float),
        required=True,
        validator=_nonnegative,
    ),
    Option(
        "input",
        "rho_uv",
        "Correlation coefficient of real and imaginary part.",
        (int, float),
        default=0.0,
        validator=_correlation,
    ),
)

_KIND_KEYS = {
    "sysid": ("f", "g"),
    "equalization": ("channel_taps", "delay"),
}


def _parse_scenario(given, path="scenario"):
    fields = validate_section(valid_options, "scenario", given, path)
    kind = fields["kind"]

    for other_kind, keys in _KIND_KEYS.items():
        for key in keys:
            present = key in given
            if other_kind == kind and not present:
                raise ConfigError(
                    f"Missing required key for {kind}.", path=f"{path}.{key}"
                )
            if other_kind != kind and present:
                raise ConfigError(
                    f"Key is not valid for {kind}.", path=f"{path}.{key}"
                )

    inputs = validate_section(
        valid_options, "input", fields["input"], f"{path}.input"
    )
    try:
        input_spec = signals.ImproperWhiteSpec(**inputs)
        signals.moments_of_spec(input_spec)
    except (raise_if.StructureError, raise_if.DegenerateSignalError) as err:
        raise ConfigError(str(err), path=f"{path}.input") from err

    try:
        if kind == "sysid":
            f = parse_complex_vector(fields["f"], f"{path}.f")
            g = parse_complex_vector(fields["g"], f"{path}.g")
            filter_len = fields["filter_len"] or len(f)
            return signals.SystemIdentification(
                f, g, input_spec, fields["noise_var"], filter_len
            )

        if fields["filter_len"] is None:
            raise ConfigError(
                "Missing required key for equalization.",
                path=f"{path}.filter_len",
            )
        taps = parse_complex_vector(
            fields["channel_taps"], f"{path}.channel_taps"
        )
        return signals.ChannelEqualization(
            taps,
            fields["delay"],
            input_spec,
            fields["noise_var"],
            fields["filter_len"],
        )
    except raise_if.StructureError as err:
        raise ConfigError(str(err), path=path) from err


class ExperimentConfig(ImproLmsBase):
    """Validated experiment configuration. Immutable."""

    __slots__ = (
        "_scenario",
        "_mu",
        "_steps",
        "_runs",
        "_base_seed",
        "_tail_from",
        "_outputs",
        "_models",
        "_w0",
        "_description",
    )

    def __init__(
        self,
        scenario,
        mu,
        steps,
        runs=1000,
        base_seed=0,
        tail_from=None,
        outputs="improlms",
        models=None,
        w0=None,
        description="",
    ):
        """
        Parameters
        ----------
        scenario: signals.Scenario
        mu: float
        steps: int
        runs: int
        base_seed: int
        tail_from: int
          (Optional) default 2 * steps // 3.
        outputs: str
          path prefix of the CSV files.
        models: tuple
          (Optional) subset of MODEL_NAMES. None selects every model that
          applies to the scenario.
        w0: (N,) array-like
          (Optional) default zeros.
        description: str
        """
        self._scenario = scenario
        self._mu = float(mu)
        self._steps = int(steps)
        self._runs = int(runs)
        self._base_seed = int(base_seed)
        self._tail_from = (
            2 * self._steps // 3 if tail_from is None else int(tail_from)
        )
        self._outputs = str(outputs)
        self._models = None
        self._description = str(description)

        if not (np.isfinite(self._mu) and self._mu > 0):
            raise ConfigError(f"has to be positive. Given {mu}.", path="mu")
        if self._runs < 1:
            raise ConfigError(f"has to be >= 1. Given {runs}.", path="runs")
        if self._base_seed < 0:
            raise ConfigError(
                f"has to be >= 0. Given {base_seed}.", path="seed"
            )
        if not (0 <= self._tail_from < self._steps):
            raise ConfigError(
                f"has to be in [0, steps) = [0, {self._steps}). Given "
                f"{self._tail_from}.",
                path="tail_from",
            )
        if models is not None:
            try:
                self._models = _models(list(models))
            except ValueError as err:
                raise ConfigError(str(err), path="models") from err

        if w0 is None:
            self._w0 = None
        else:
            try:
                self._w0 = np.array(w0, dtype=complex)
                raise_if.length_mismatch(
                    scenario.filter_len, self._w0.size, "w0"
                )
            except raise_if.StructureError as err:
                raise ConfigError(str(err), path="w0") from err
            self._w0.flags.writeable = False

    @property
    def scenario(self):
        return self._scenario

    @property
    def mu(self):
        return self._mu

    @property
    def steps(self):
        return self._steps

    @property
    def runs(self):
        return self._runs

    @property
    def base_seed(self):
        return self._base_seed

    @property
    def tail_from(self):
        return self._tail_from

    @property
    def outputs(self):
        return self._outputs

    @property
    def models(self):
        """Requested models, or None for every applicable model."""
        return self._models

    @property
    def w0(self):
        return self._w0

    @property
    def description(self):
        return self._description

    def _init_kwargs(self):
        # replace() goes through here, e.g. for command line overrides
        return dict(
            scenario=self._scenario,
            mu=self._mu,
            steps=self._steps,
            runs=self._runs,
            base_seed=self._base_seed,
            tail_from=self._tail_from,
            outputs=self._outputs,
            models=self._models,
            w0=self._w0,
            description=self._description,
        )

    def to_dict(self):
        """JSON friendly description. parse_config() accepts it.

        Returns
        -------
        description: dict
        """
        description = dict(
            scenario=self._scenario.to_dict(),
            mu=self._mu,
            steps=self._steps,
            runs=self._runs,
            seed=self._base_seed,
            tail_from=self._tail_from,
            outputs=self._outputs,
            description=self._description,
        )
        if self._models is not None:
            description["models"] = list(self._models)
        if self._w0 is not None:
            description["w0"] = [[w.real, w.imag] for w in self._w0]
        return description


def parse_config(text):
    """Parses and validates a JSON experiment configuration.

    Parameters
    ----------
    text: str

    Returns
    -------
    config: ExperimentConfig
    """
    try:
        given = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(f"Invalid JSON: {err}") from err

    fields = validate_section(valid_options, "experiment", given)
    scenario = _parse_scenario(fields["scenario"])
    w0 = (
        None
        if fields["w0"] is None
        else parse_complex_vector(fields["w0"], "w0")
    )

    return ExperimentConfig(
        scenario=scenario,
        mu=fields["mu"],
        steps=fields["steps"],
        runs=fields["runs"],
        base_seed=fields["seed"],
        tail_from=fields["tail_from"],
        outputs=fields["outputs"],
        models=fields["models"],
        w0=w0,
        description=fields["description"],
    )


def list_presets():
    """Names of the shipped presets.

    Returns
    -------
    names: list
    """
    return sorted(p.stem for p in PRESET_DIR.glob("*.json"))


def preset_path(name):
    """Path of a shipped preset.

    Parameters
    ----------
    name: str
      e.g. "fig2".

    Returns
    -------
    path: pathlib.Path
    """
    path = PRESET_DIR / f"{pathlib.Path(name).stem}.json"
    if not path.is_file():
        raise ConfigError(
            f"Unknown preset `{name}`. Shipped presets are {list_presets()}."
        )
    return path


def load_config(fname):
    """Loads a configuration file. If fname is not a file but the name of a
    shipped preset, loads the preset.

    Parameters
    ----------
    fname: str or pathlib.Path

    Returns
    -------
    config: ExperimentConfig
    """
    path = pathlib.Path(ioutils.abs_fname(fname))
    if not path.exists() and pathlib.Path(fname).stem in list_presets():
        path = preset_path(fname)

    with open(path, encoding="utf-8") as f:
        return parse_config(f.read())
