"""improlms/improlms/simulator.py.

Complex LMS on synthesized streams and Monte Carlo learning curves.

    e(n) = d(n) + m(n) - w^H(n-1) x(n)
    w(n) = w(n-1) + mu e^*(n) x(n)

Runs of an ensemble are vectorized in chunks of `settings.MC_CHUNK_SIZE`
and reduced in chunk order, so a curve does not depend on the number of
worker threads.
"""

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from improlms import settings, signals
from improlms._base import ImproLmsBase
from improlms.helpers import raise_if
from improlms.helpers.data import TailEstimate, make_readonly_array
from improlms.utils import arr, log
from improlms.utils.tictoc import Tic


class LmsRunResult(ImproLmsBase):
    """Squared error |e(n)|^2 of a single run and its final weights. Entry
    i of `sq_error` belongs to the (i + 1)-th sample, computed with the
    weights after i updates.
    """

    __slots__ = ("_sq_error", "_final_weights", "_diverged_at")

    def __init__(self, sq_error, final_weights, diverged_at=None):
        self._sq_error = make_readonly_array(sq_error, settings.FLOAT_DTYPE)
        self._final_weights = make_readonly_array(
            final_weights, settings.COMPLEX_DTYPE
        )
        self._diverged_at = None if diverged_at is None else int(diverged_at)

    @property
    def sq_error(self):
        return self._sq_error

    @property
    def final_weights(self):
        return self._final_weights

    @property
    def diverged(self):
        return self._diverged_at is not None

    @property
    def diverged_at(self):
        """Index of the first non-finite error or weight. None if the run
        stayed finite.
        """
        return self._diverged_at

    def __len__(self):
        return len(self._sq_error)


class MseCurve(ImproLmsBase):
    """Ensemble average of |e(n)|^2 over the runs that stayed finite, with
    the standard error of the mean. Also holds the ensemble mean of the
    final weights.
    """

    __slots__ = (
        "_mean_sq_error",
        "_stderr",
        "_runs",
        "_diverged_runs",
        "_mean_final_weights",
        "_final_weights_stderr",
    )

    def __init__(
        self,
        mean_sq_error,
        stderr,
        runs,
        diverged_runs=0,
        mean_final_weights=None,
        final_weights_stderr=None,
    ):
        """
        Parameters
        ----------
        mean_sq_error: (T,) array-like
        stderr: (T,) array-like
        runs: int
          number of runs in the average.
        diverged_runs: int
        mean_final_weights: (N,) array-like
        final_weights_stderr: (N,) array-like
        """
        self._mean_sq_error = make_readonly_array(
            mean_sq_error, settings.FLOAT_DTYPE
        )
        self._stderr = make_readonly_array(stderr, settings.FLOAT_DTYPE)
        if self._mean_sq_error.shape != self._stderr.shape:
            raise raise_if.StructureError(
                "mean_sq_error and stderr should have the same length."
            )
        if int(runs) < 1:
            raise raise_if.StructureError(
                f"runs has to be >= 1. Given {runs}."
            )
        if np.any(self._mean_sq_error < 0) or np.any(self._stderr < 0):
            raise raise_if.StructureError(
                "mean_sq_error and stderr have to be nonnegative."
            )
        self._runs = int(runs)
        self._diverged_runs = int(diverged_runs)
        self._mean_final_weights = (
            None
            if mean_final_weights is None
            else make_readonly_array(
                mean_final_weights, settings.COMPLEX_DTYPE
            )
        )
        self._final_weights_stderr = (
            None
            if final_weights_stderr is None
            else make_readonly_array(
                final_weights_stderr, settings.FLOAT_DTYPE
            )
        )

    @property
    def mean_sq_error(self):
        return self._mean_sq_error

    @property
    def stderr(self):
        return self._stderr

    @property
    def runs(self):
        return self._runs

    @property
    def diverged_runs(self):
        return self._diverged_runs

    @property
    def mean_final_weights(self):
        return self._mean_final_weights

    @property
    def final_weights_stderr(self):
        """Standard error of the mean final weights, taken over the
        magnitude of the deviation from their mean.
        """
        return self._final_weights_stderr

    def at(self, iteration):
        """Single-sample readout of the curve.

        Parameters
        ----------
        iteration: int

        Returns
        -------
        value: float
          NaN if the curve is shorter.
        """
        if 0 <= int(iteration) < len(self._mean_sq_error):
            return float(self._mean_sq_error[int(iteration)])
        return np.nan

    def __len__(self):
        return len(self._mean_sq_error)

    def __repr__(self):
        return (
            f"{type(self).__qualname__}(steps={len(self)}, runs={self._runs}"
            f", diverged_runs={self._diverged_runs})"
        )


def _lms_batch(x_vectors, desired, mu, w0):
    """Runs LMS on a batch of streams at once.

    Parameters
    ----------
    x_vectors: (B, T, N) np.ndarray
    desired: (B, T) np.ndarray
      d(n) + m(n).
    mu: float
    w0: (N,) np.ndarray

    Returns
    -------
    sq_error: (B, T) np.ndarray
    weights: (B, N) np.ndarray
    diverged_at: (B,) np.ndarray
      -1 for runs that stayed finite.
    """
    n_batch, n_steps, _ = x_vectors.shape
    weights = np.tile(w0, (n_batch, 1))
    sq_error = np.empty((n_batch, n_steps), dtype=settings.FLOAT_DTYPE)
    diverged_at = np.full(n_batch, -1, dtype=settings.INT_DTYPE)

    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(n_steps):
            x = x_vectors[:, n]
            error = desired[:, n] - np.sum(weights.conj() * x, axis=1)
            weights = weights + mu * error.conj()[:, None] * x
            sq_error[:, n] = error.real**2 + error.imag**2

            bad = ~(
                np.isfinite(sq_error[:, n])
                & np.all(np.isfinite(weights), axis=1)
            )
            newly = bad & (diverged_at < 0)
            diverged_at[newly] = n

    return sq_error, weights, diverged_at


def _check_run_arguments(scenario, mu, steps, w0):
    mu = float(mu)
    if not np.isfinite(mu) or mu <= 0:
        raise raise_if.StructureError(
            f"Step size mu has to be finite and positive. Given {mu}."
        )
    steps = int(steps)
    if steps < 1:
        raise raise_if.StructureError(f"steps has to be >= 1. Given {steps}.")
    n_taps = scenario.filter_len
    if w0 is None:
        w0 = np.zeros(n_taps, dtype=settings.COMPLEX_DTYPE)
    else:
        w0 = arr.complex_vector(w0, length=n_taps, name="w0")

    return mu, steps, w0


def _stream_length(scenario, steps):
    # synthesize_stream needs at least filter_len samples
    return max(steps, scenario.filter_len)


def lms_run(scenario, mu, steps, seed, w0=None):
    """One LMS run on `synthesize_stream(scenario, steps, seed)`.

    Parameters
    ----------
    scenario: signals.Scenario
    mu: float
    steps: int
    seed: int or np.random.SeedSequence
    w0: (N,) array-like
      (Optional) default is zeros.

    Returns
    -------
    lms_run_result: LmsRunResult
    """
    mu, steps, w0 = _check_run_arguments(scenario, mu, steps, w0)
    stream = signals.synthesize_stream(
        scenario, _stream_length(scenario, steps), seed
    )

    sq_error, weights, diverged_at = _lms_batch(
        stream.x_vectors[None, :steps],
        (stream.d + stream.m)[None, :steps],
        mu,
        w0,
    )
    diverged_at = int(diverged_at[0])
    if diverged_at >= 0:
        log.debug(
            "simulator.lms_run() -", f"run diverged at sample {diverged_at}"
        )

    return LmsRunResult(
        sq_error[0], weights[0], None if diverged_at < 0 else diverged_at
    )


def _chunk_moments(scenario, mu, steps, w0, base_seed, runs):
    """Count, mean and summed squared deviation (Chan et al.) of |e(n)|^2
    and of the final weights over the finite runs of one chunk.
    """
    length = _stream_length(scenario, steps)
    streams = [
        signals.synthesize_stream(
            scenario, length, signals.run_seed(base_seed, r)
        )
        for r in runs
    ]
    x_vectors = np.stack([s.x_vectors[:steps] for s in streams])
    desired = np.stack([(s.d + s.m)[:steps] for s in streams])

    sq_error, weights, diverged_at = _lms_batch(x_vectors, desired, mu, w0)
    finite = diverged_at < 0
    count = int(np.sum(finite))
    if count == 0:
        return 0, None, None, None, None, len(runs)

    sq_error = sq_error[finite]
    weights = weights[finite]
    mean = np.mean(sq_error, axis=0)
    m2 = np.sum((sq_error - mean) ** 2, axis=0)
    weights_mean = np.mean(weights, axis=0)
    weights_m2 = np.sum(np.abs(weights - weights_mean) ** 2, axis=0)

    return count, mean, m2, weights_mean, weights_m2, len(runs) - count


def _merge(total, chunk):
    """Pairwise update of (count, mean, m2) triplets."""
    count_a, mean_a, m2_a = total
    count_b, mean_b, m2_b = chunk
    if count_b == 0:
        return total
    if count_a == 0:
        return chunk
    count = count_a + count_b
    delta = mean_b - mean_a
    mean = mean_a + delta * (count_b / count)
    m2 = m2_a + m2_b + np.abs(delta) ** 2 * (count_a * count_b / count)

    return count, mean, m2


def monte_carlo_mse(scenario, mu, steps, runs, base_seed=0, w0=None):
    """Ensemble learning curve. Run r uses seed `run_seed(base_seed, r)`.

    Parameters
    ----------
    scenario: signals.Scenario
    mu: float
    steps: int
    runs: int
    base_seed: int
    w0: (N,) array-like
      (Optional) default is zeros.

    Returns
    -------
    mse_curve: MseCurve
    """
    mu, steps, w0 = _check_run_arguments(scenario, mu, steps, w0)
    runs = int(runs)
    if runs < 1:
        raise raise_if.StructureError(f"runs has to be >= 1. Given {runs}.")

    tic = Tic("monte_carlo_mse")
    chunk_size = max(1, int(settings.MC_CHUNK_SIZE))
    chunks = [
        range(begin, min(begin + chunk_size, runs))
        for begin in range(0, runs, chunk_size)
    ]

    def work(chunk):
        return _chunk_moments(scenario, mu, steps, w0, base_seed, chunk)

    n_threads = max(1, int(settings.NTHREADS))
    if n_threads == 1 or len(chunks) == 1:
        results = [work(chunk) for chunk in chunks]
    else:
        with ThreadPoolExecutor(max_workers=n_threads) as executor:
            # map keeps chunk order
            results = list(executor.map(work, chunks))
    tic.toc(f"{runs} runs in {len(chunks)} chunk(s)")

    curve_total = (0, None, None)
    weights_total = (0, None, None)
    diverged_runs = 0
    for count, mean, m2, w_mean, w_m2, n_diverged in results:
        curve_total = _merge(curve_total, (count, mean, m2))
        weights_total = _merge(weights_total, (count, w_mean, w_m2))
        diverged_runs += n_diverged

    count, mean, m2 = curve_total
    if count == 0:
        raise raise_if.AggregateError(
            f"All {runs} runs diverged (mu={mu})."
        )
    if diverged_runs > 0:
        log.warning(
            "simulator.monte_carlo_mse() -",
            f"{diverged_runs} of {runs} runs diverged and are excluded.",
        )

    if count > 1:
        stderr = np.sqrt(m2 / (count - 1) / count)
        weights_stderr = np.sqrt(weights_total[2] / (count - 1) / count)
    else:
        stderr = np.zeros_like(mean)
        weights_stderr = np.zeros(scenario.filter_len)
    tic.toc("reduction")
    tic.summary(log=True)

    return MseCurve(
        mean,
        stderr,
        count,
        diverged_runs=diverged_runs,
        mean_final_weights=weights_total[1],
        final_weights_stderr=weights_stderr,
    )


def tail_estimate(curve, from_iter):
    """Mean of a learning curve over indices >= from_iter and its standard
    error, treating the window samples as independent.

    Parameters
    ----------
    curve: MseCurve
    from_iter: int

    Returns
    -------
    tail_estimate: TailEstimate
    """
    from_iter = int(from_iter)
    if from_iter < 0 or from_iter >= len(curve):
        raise raise_if.StructureError(
            f"Empty window: from_iter ({from_iter}) has to be in "
            f"[0, {len(curve)})."
        )
    window = curve.mean_sq_error[from_iter:]
    if window.size > 1:
        stderr = float(np.std(window, ddof=1) / np.sqrt(window.size))
    else:
        stderr = 0.0

    return TailEstimate(float(np.mean(window)), stderr)
