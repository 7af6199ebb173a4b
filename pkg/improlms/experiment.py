"""improlms/improlms/experiment.py.

Runs a configured experiment: Monte Carlo learning curve, both model
recursions and the steady state closed forms, compared in one report.
Also sweeps over the impropriety of the input and over the step size.
"""
from collections import namedtuple

import numpy as np

from improlms import settings, simulator, statistics, theory
from improlms._base import ImproLmsBase
from improlms.helpers import raise_if
from improlms.io import report
from improlms.io.config import MODEL_NAMES
from improlms.utils import log
from improlms.utils.tictoc import Tic

NOT_APPLICABLE = "not applicable"
UNSTABLE = "unstable"

MONTE_CARLO = "monte_carlo"

SWEEP_MU_COLUMNS = (
    "mu",
    "proposed",
    "independence",
    "general",
    "case_a",
    "case_b",
    "misadjustment",
)

SWEEP_RHO_COLUMNS = ("rho_abs", "k_norm2")

KNormSweep = namedtuple("KNormSweep", ["rho_abs", "k_norm2"])
KNormSweep.__doc__ = """
namedtuple to hold k^H k as a function of the impropriety |rho_x| of the
input.
"""


class ComparisonReport(ImproLmsBase):
    """Steady state MSE of the Monte Carlo ensemble next to the model
    predictions and their relative errors 100 (pred - mc) / mc.
    """

    __slots__ = (
        "_mc_tail",
        "_mc_readout",
        "_readout_iteration",
        "_predictions",
        "_j_min",
        "_k_norm2",
        "_bounds",
        "_mu",
    )

    def __init__(
        self,
        mc_tail,
        mc_readout,
        readout_iteration,
        predictions,
        j_min,
        k_norm2,
        bounds,
        mu,
    ):
        """
        Parameters
        ----------
        mc_tail: TailEstimate
          window average of the learning curve.
        mc_readout: float
          single-sample value of the learning curve at readout_iteration.
        readout_iteration: int
        predictions: dict
          model name -> SteadyStateReport, or NOT_APPLICABLE / UNSTABLE.
        j_min: float
        k_norm2: float
        bounds: StepSizeReport
        mu: float
        """
        self._mc_tail = mc_tail
        self._mc_readout = float(mc_readout)
        self._readout_iteration = int(readout_iteration)
        self._predictions = dict(predictions)
        self._j_min = float(j_min)
        self._k_norm2 = float(k_norm2)
        self._bounds = bounds
        self._mu = float(mu)

    @property
    def mc_tail(self):
        return self._mc_tail

    @property
    def mc_readout(self):
        return self._mc_readout

    @property
    def readout_iteration(self):
        return self._readout_iteration

    @property
    def predictions(self):
        return self._predictions

    @property
    def j_min(self):
        return self._j_min

    @property
    def k_norm2(self):
        return self._k_norm2

    @property
    def bounds(self):
        return self._bounds

    @property
    def mu(self):
        return self._mu

    @property
    def inapplicable(self):
        """Models whose closed form does not apply to the statistics."""
        return [
            m for m, p in self._predictions.items() if p == NOT_APPLICABLE
        ]

    def steady_state(self, model):
        """Predicted steady state MSE of a model, None unless available.

        Parameters
        ----------
        model: str

        Returns
        -------
        j_inf: float or None
        """
        prediction = self._predictions[model]
        if isinstance(prediction, str):
            return None
        return float(prediction.j_inf)

    def relative_error(self, model):
        """100 (pred - mc) / mc in percent. Negative if the model
        underestimates the ensemble.

        Parameters
        ----------
        model: str

        Returns
        -------
        rel_err_pct: float or None
        """
        predicted = self.steady_state(model)
        if predicted is None:
            return None
        return 100.0 * (predicted - self._mc_tail.mean) / self._mc_tail.mean

    def rows(self):
        """Rows of the report table, keyed by `io.report.REPORT_COLUMNS`.

        Returns
        -------
        rows: list
        """
        common = dict(
            k_norm2=self._k_norm2,
            j_min=self._j_min,
            mu=self._mu,
            mu_max=self._bounds.mse_bound,
            trace_r=self._bounds.trace_r,
            lambda_max=self._bounds.lambda_max,
        )
        rows = [
            dict(
                model=MONTE_CARLO,
                steady_state=self._mc_tail.mean,
                rel_err_pct=0.0,
                **common,
            ),
            dict(
                model=f"{MONTE_CARLO}_at_{self._readout_iteration}",
                steady_state=self._mc_readout,
                rel_err_pct=100.0
                * (self._mc_readout - self._mc_tail.mean)
                / self._mc_tail.mean,
                **common,
            ),
        ]
        for model, prediction in self._predictions.items():
            if isinstance(prediction, str):
                rows.append(
                    dict(
                        model=model,
                        steady_state=prediction,
                        rel_err_pct=prediction,
                        **common,
                    )
                )
            else:
                rows.append(
                    dict(
                        model=model,
                        steady_state=prediction.j_inf,
                        rel_err_pct=self.relative_error(model),
                        **common,
                    )
                )

        return rows

    def __repr__(self):
        lines = [
            f"{type(self).__qualname__}",
            f"  monte carlo tail: {self._mc_tail.mean:.6g} "
            f"+- {self._mc_tail.stderr:.2g}",
        ]
        for model in self._predictions:
            value = self.steady_state(model)
            if value is None:
                lines.append(f"  {model}: {self._predictions[model]}")
            else:
                lines.append(
                    f"  {model}: {value:.6g} "
                    f"({self.relative_error(model):+.3f} %)"
                )
        return "\n".join(lines)


class ExperimentResult(ImproLmsBase):
    """Everything an experiment computed."""

    __slots__ = (
        "config",
        "stats",
        "wiener",
        "curve",
        "trajectories",
        "report",
        "files",
    )

    def __init__(
        self, config, stats, wiener, curve, trajectories, report, files
    ):
        self.config = config
        self.stats = stats
        self.wiener = wiener
        self.curve = curve
        self.trajectories = trajectories
        self.report = report
        self.files = files


def _closed_form(model, stats, wiener, mu):
    """SteadyStateReport of a closed form model or a marker."""
    compute = {
        "case_a": theory.case_a_report,
        "case_b": theory.case_b_report,
        "general_steady_state": theory.steady_state_general,
    }[model]
    try:
        return compute(stats, wiener, mu)
    except raise_if.InstabilityError as err:
        log.warning("experiment -", f"{model}: {err}")
        return UNSTABLE
    except (raise_if.StructureError, raise_if.RankError) as err:
        log.debug("experiment -", f"{model} does not apply: {err}")
        return NOT_APPLICABLE


def _recursion(trajectory, **window):
    if trajectory.diverged:
        return UNSTABLE
    return theory.recursion_limit(trajectory, **window)


def run_experiment(config, write=True):
    """Runs a configured experiment.

    Parameters
    ----------
    config: ExperimentConfig
    write: bool
      Writes `<outputs>_curves.csv` and `<outputs>_report.csv`. Default is
      True.

    Returns
    -------
    result: ExperimentResult
    """
    tic = Tic("run_experiment", log_level="info")
    scenario = config.scenario
    stats = statistics.stats_of(scenario)
    wiener = statistics.wiener_solution(stats)
    bounds = theory.step_bounds(stats, config.mu)
    tic.toc("statistics")

    log.info(
        "experiment.run_experiment() -",
        f"{scenario.variant}: J_min={wiener.j_min:.6g}, "
        f"k^H k={wiener.k_norm2:.6g}, mu={config.mu}, "
        f"mu_max={bounds.mse_bound:.6g}",
    )
    if config.mu >= bounds.mse_bound:
        log.warning(
            "experiment.run_experiment() -",
            f"mu ({config.mu}) is at or beyond mu_max "
            f"({bounds.mse_bound:.6g}).",
        )

    explicit = config.models is not None
    models = config.models if explicit else MODEL_NAMES

    trajectories = dict()
    for variant in theory.VARIANTS:
        if variant in models:
            trajectories[variant] = theory.model_trajectory(
                stats,
                wiener,
                config.mu,
                w0=config.w0,
                steps=config.steps,
                variant=variant,
            )
    tic.toc("model recursions")

    # same iterations as the Monte Carlo tail estimate
    window = dict(from_iter=config.tail_from, to_iter=config.steps)
    predictions = dict()
    for model in models:
        if model in trajectories:
            predictions[model] = _recursion(trajectories[model], **window)
            continue
        prediction = _closed_form(model, stats, wiener, config.mu)
        # the default model set silently skips closed forms that don't apply
        if prediction == NOT_APPLICABLE and not explicit:
            continue
        predictions[model] = prediction
    tic.toc("closed forms")

    curve = simulator.monte_carlo_mse(
        scenario,
        config.mu,
        config.steps,
        config.runs,
        base_seed=config.base_seed,
        w0=config.w0,
    )
    tic.toc("monte carlo")

    comparison = ComparisonReport(
        mc_tail=simulator.tail_estimate(curve, config.tail_from),
        mc_readout=curve.at(settings.READOUT_ITERATION),
        readout_iteration=settings.READOUT_ITERATION,
        predictions=predictions,
        j_min=wiener.j_min,
        k_norm2=wiener.k_norm2,
        bounds=bounds,
        mu=config.mu,
    )
    log.info(comparison)

    result = ExperimentResult(
        config, stats, wiener, curve, trajectories, comparison, ()
    )
    if write:
        result.files = report.emit_csv(result, config.outputs)
        tic.toc("csv")
    tic.summary(log=True)

    return result


def k_norm_sweep(scenario, rho_values):
    """k^H k of a scenario for several correlation coefficients rho_uv of
    the input. For equal variances of real and imaginary part,
    |rho_x| = |rho_uv|.

    Parameters
    ----------
    scenario: signals.Scenario
    rho_values: (n,) array-like
      rho_uv values in [-1, 1].

    Returns
    -------
    k_norm_sweep: KNormSweep
    """
    rho_abs = []
    k_norm2 = []
    for rho_uv in np.asarray(rho_values, dtype=settings.FLOAT_DTYPE):
        swept = scenario.replace(
            input_spec=scenario.input.with_impropriety(rho_uv)
        )
        wiener = statistics.wiener_solution(statistics.stats_of(swept))
        rho_abs.append(abs(swept.input.moments()[2]))
        k_norm2.append(wiener.k_norm2)

    return KNormSweep(np.array(rho_abs), np.array(k_norm2))


def mu_sweep(scenario, mus, steps=1000, w0=None):
    """Theoretical steady states over step sizes. Recursions that diverge
    and closed forms that are unstable or do not apply give NaN.

    Parameters
    ----------
    scenario: signals.Scenario
    mus: (n,) array-like
    steps: int
      length of the model recursions.
    w0: (N,) array-like
      (Optional) default zeros.

    Returns
    -------
    rows: list
      dicts keyed by SWEEP_MU_COLUMNS.
    """
    stats = statistics.stats_of(scenario)
    wiener = statistics.wiener_solution(stats)

    def value(prediction):
        if isinstance(prediction, str):
            return np.nan
        return prediction.j_inf

    rows = []
    for mu in np.asarray(mus, dtype=settings.FLOAT_DTYPE):
        row = dict(mu=mu)
        proposed = None
        for variant in theory.VARIANTS:
            trajectory = theory.model_trajectory(
                stats, wiener, mu, w0=w0, steps=steps, variant=variant
            )
            prediction = _recursion(trajectory, tail=1)
            row[variant] = value(prediction)
            if variant == theory.PROPOSED:
                proposed = prediction
        row["general"] = value(
            _closed_form("general_steady_state", stats, wiener, mu)
        )
        row["case_a"] = value(_closed_form("case_a", stats, wiener, mu))
        row["case_b"] = value(_closed_form("case_b", stats, wiener, mu))
        row["misadjustment"] = (
            np.nan if isinstance(proposed, str) else proposed.misadjustment
        )
        rows.append(row)

    log.debug("experiment.mu_sweep() -", f"{len(rows)} step sizes")

    return rows
