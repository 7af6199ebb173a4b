"""improlms/improlms/signals.py.

Improper white Gaussian sequences and the two scenario signal streams,
widely linear system identification and channel equalization.

Delay line convention: x(n) = [in(n), in(n-1), ..., in(n-N+1)]. Inputs are
pre-rolled so that the first emitted regressor is fully populated.
Sampling: numpy `Generator` (PCG64) seeded through `SeedSequence`; the
input and the noise use separate child sequences, so a stream of length T
is a prefix of the stream with the same seed and any length T' > T.
"""

import numpy as np

from improlms import settings, statistics
from improlms._base import ImproLmsBase
from improlms.helpers import raise_if
from improlms.helpers.data import make_readonly_array
from improlms.utils import arr, log


class ImproperWhiteSpec(ImproLmsBase):
    """Second order description of a white complex Gaussian x = u + jv by the
    variances of its real and imaginary parts and their correlation
    coefficient.
    """

    __slots__ = ("_r_uu", "_r_vv", "_rho_uv")

    def __init__(self, r_uu=0.1, r_vv=0.1, rho_uv=0.0):
        """
        Parameters
        ----------
        r_uu: float
          variance of the real part.
        r_vv: float
          variance of the imaginary part.
        rho_uv: float
          correlation coefficient of real and imaginary part in [-1, 1].
        """
        r_uu, r_vv, rho_uv = float(r_uu), float(r_vv), float(rho_uv)
        if not np.all(np.isfinite((r_uu, r_vv, rho_uv))):
            raise raise_if.StructureError(
                "ImproperWhiteSpec entries have to be finite."
            )
        if r_uu < 0 or r_vv < 0:
            raise raise_if.StructureError(
                f"Variances have to be nonnegative. Given r_uu={r_uu}, "
                f"r_vv={r_vv}."
            )
        if abs(rho_uv) > 1:
            raise raise_if.StructureError(
                f"rho_uv has to be in [-1, 1]. Given {rho_uv}."
            )

        self._r_uu = r_uu
        self._r_vv = r_vv
        self._rho_uv = rho_uv

    @property
    def r_uu(self):
        return self._r_uu

    @property
    def r_vv(self):
        return self._r_vv

    @property
    def rho_uv(self):
        return self._rho_uv

    def moments(self):
        """Covariance r_x, pseudo-covariance q_x and impropriety coefficient
        rho_x = q_x / r_x.

        Returns
        -------
        moments: tuple
          (r_x: float, q_x: complex, rho_x: complex)
        """
        return moments_of_spec(self)

    def covariance_matrix(self):
        """2x2 covariance of z = [u, v]^T.

        Returns
        -------
        r_zz: (2, 2) np.ndarray
        """
        cross = np.sqrt(self._r_uu) * np.sqrt(self._r_vv) * self._rho_uv
        return np.array(
            [[self._r_uu, cross], [cross, self._r_vv]],
            dtype=settings.FLOAT_DTYPE,
        )

    def with_impropriety(self, rho_uv):
        """Same variances, different correlation coefficient.

        Parameters
        ----------
        rho_uv: float

        Returns
        -------
        spec: ImproperWhiteSpec
        """
        return self.replace(rho_uv=rho_uv)

    def _init_kwargs(self):
        return dict(r_uu=self._r_uu, r_vv=self._r_vv, rho_uv=self._rho_uv)

    def to_dict(self):
        return self._init_kwargs()

    def __repr__(self):
        return (
            f"{type(self).__qualname__}(r_uu={self._r_uu}, "
            f"r_vv={self._r_vv}, rho_uv={self._rho_uv})"
        )


def moments_of_spec(spec):
    """r_x = r_uu + r_vv, q_x = r_uu - r_vv + 2j sqrt(r_uu) sqrt(r_vv) rho_uv
    and rho_x = q_x / r_x.

    Parameters
    ----------
    spec: ImproperWhiteSpec

    Returns
    -------
    moments: tuple
      (r_x: float, q_x: complex, rho_x: complex)
    """
    r_x = spec.r_uu + spec.r_vv
    if r_x <= 0:
        raise raise_if.DegenerateSignalError(
            "Signal has zero power (r_uu + r_vv = 0)."
        )
    q_x = complex(
        spec.r_uu - spec.r_vv,
        2.0 * np.sqrt(spec.r_uu) * np.sqrt(spec.r_vv) * spec.rho_uv,
    )

    return r_x, q_x, q_x / r_x


def run_seed(base_seed, run):
    """Seed of run `run` of an ensemble. Hashes (base_seed, run) with numpy's
    SeedSequence, so neighboring runs get independent streams.

    Parameters
    ----------
    base_seed: int
    run: int

    Returns
    -------
    seed: np.random.SeedSequence
    """
    return np.random.SeedSequence(int(base_seed), spawn_key=(int(run),))


def _seed_sequence(seed):
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(int(seed))


def _child_generators(seed, n_children):
    """Independent generators derived from seed. Unlike
    `SeedSequence.spawn()`, this does not mutate the given sequence.
    """
    sequence = _seed_sequence(seed)
    return [
        np.random.default_rng(
            np.random.SeedSequence(
                sequence.entropy, spawn_key=(*sequence.spawn_key, i)
            )
        )
        for i in range(n_children)
    ]


def _draw_improper(spec, count, generator):
    """Draws count samples with the 2x2 Cholesky factor of R_zz."""
    normal = generator.standard_normal((count, 2))
    rho = spec.rho_uv
    u = np.sqrt(spec.r_uu) * normal[:, 0]
    v = np.sqrt(spec.r_vv) * (
        rho * normal[:, 0] + np.sqrt(max(0.0, 1.0 - rho * rho)) * normal[:, 1]
    )

    return u + 1j * v


def _draw_circular(variance, count, generator):
    """Circular white Gaussian noise with E|m|^2 = variance."""
    normal = generator.standard_normal((count, 2))
    return np.sqrt(variance / 2.0) * (normal[:, 0] + 1j * normal[:, 1])


def gen_improper_white(spec, count, seed):
    """i.i.d. zero mean complex Gaussian samples whose real and imaginary
    parts have covariance R_zz of spec. Deterministic given
    (spec, count, seed).

    Parameters
    ----------
    spec: ImproperWhiteSpec
    count: int
    seed: int or np.random.SeedSequence

    Returns
    -------
    samples: (count,) np.ndarray
    """
    count = int(count)
    if count < 1:
        raise raise_if.StructureError(f"count has to be >= 1. Given {count}.")
    # validates r_x > 0
    moments_of_spec(spec)

    generator = np.random.default_rng(_seed_sequence(seed))
    return make_readonly_array(
        _draw_improper(spec, count, generator), copy=False
    )


class Scenario(ImproLmsBase):
    """Experiment description shared by all scenarios: input signal model,
    noise variance and adaptive filter length. Immutable.
    """

    kind = "scenario"
    variant = None

    __slots__ = ("_input", "_noise_var", "_filter_len")

    def __init__(self, input_spec, noise_var, filter_len):
        if not isinstance(input_spec, ImproperWhiteSpec):
            raise TypeError(
                "input_spec should be an ImproperWhiteSpec. "
                f"Given {type(input_spec)}."
            )
        noise_var = float(noise_var)
        if not np.isfinite(noise_var) or noise_var < 0:
            raise raise_if.StructureError(
                f"noise_var has to be finite and >= 0. Given {noise_var}."
            )
        filter_len = int(filter_len)
        if filter_len < 1:
            raise raise_if.StructureError(
                f"filter_len has to be >= 1. Given {filter_len}."
            )

        self._input = input_spec
        self._noise_var = noise_var
        self._filter_len = filter_len

    @property
    def input(self):
        return self._input

    @property
    def noise_var(self):
        return self._noise_var

    @property
    def filter_len(self):
        return self._filter_len

    def _init_kwargs(self):
        return dict(
            input_spec=self._input,
            noise_var=self._noise_var,
            filter_len=self._filter_len,
        )

    def to_dict(self):
        """JSON friendly description, complex numbers as [re, im].

        Returns
        -------
        description: dict
        """
        return dict(
            kind=self.kind,
            input=self._input.to_dict(),
            noise_var=self._noise_var,
            filter_len=self._filter_len,
        )

    def second_order_stats(self):
        """Exact second order statistics of this scenario.

        Returns
        -------
        stats: statistics.SecondOrderStats
        """
        raise NotImplementedError

    def _synthesize(self, length, generators):
        raise NotImplementedError


def _pairs(vector):
    return [[float(v.real), float(v.imag)] for v in vector]


class SystemIdentification(Scenario):
    """Widely linear plant d(n) = f^H x(n) + g^H x^*(n) driven by improper
    white input, observed in circular white noise of variance noise_var.
    """

    kind = "sysid"
    variant = "SysIdWL"

    __slots__ = ("_f", "_g")

    def __init__(self, f, g, input_spec, noise_var=0.0, filter_len=None):
        """
        Parameters
        ----------
        f: (N,) array-like
        g: (N,) array-like
        input_spec: ImproperWhiteSpec
        noise_var: float
        filter_len: int
          (Optional) defaults to len(f).
        """
        f = arr.complex_vector(f, name="f")
        filter_len = f.size if filter_len is None else filter_len
        super().__init__(input_spec, noise_var, filter_len)
        self._f = arr.complex_vector(f, length=self._filter_len, name="f")
        self._g = arr.complex_vector(g, length=self._filter_len, name="g")

    @property
    def f(self):
        return self._f

    @property
    def g(self):
        return self._g

    def _init_kwargs(self):
        kwargs = super()._init_kwargs()
        kwargs.update(f=self._f, g=self._g)
        return kwargs

    def to_dict(self):
        description = super().to_dict()
        description.update(f=_pairs(self._f), g=_pairs(self._g))
        return description

    def second_order_stats(self):
        return statistics.stats_sysid(
            self._f, self._g, self._input, self._noise_var
        )

    def _synthesize(self, length, generators):
        input_generator, noise_generator = generators
        n_taps = self._filter_len

        samples = _draw_improper(
            self._input, length + n_taps - 1, input_generator
        )
        x_vectors = arr.delay_line(samples, n_taps)
        d = x_vectors @ self._f.conj() + x_vectors.conj() @ self._g.conj()
        m = _draw_circular(self._noise_var, length, noise_generator)

        return x_vectors, d, m


class ChannelEqualization(Scenario):
    """FIR channel that weights the last M transmitted symbols
    [u(n - M + 1), ..., u(n)] with channel_taps, oldest symbol first. The
    impulse response h is therefore channel_taps reversed and the received
    signal is r(n) = sum_k h[k] u(n - k) + nu(n), with circular white noise
    nu of variance noise_var. The equalizer is trained on d(n) = u(n - delay).
    """

    kind = "equalization"
    variant = "ChannelEq"

    __slots__ = ("_channel_taps", "_delay")

    def __init__(self, channel_taps, delay, input_spec, noise_var, filter_len):
        """
        Parameters
        ----------
        channel_taps: (M,) array-like
          weights of the symbol window, oldest symbol first.
        delay: int
          0 <= delay < filter_len + M
        input_spec: ImproperWhiteSpec
          transmitted symbols u(n).
        noise_var: float
          channel noise variance.
        filter_len: int
        """
        super().__init__(input_spec, noise_var, filter_len)
        self._channel_taps = arr.complex_vector(
            channel_taps, name="channel_taps"
        )
        delay = int(delay)
        if delay < 0 or delay >= self._filter_len + self._channel_taps.size:
            raise raise_if.StructureError(
                f"delay ({delay}) has to be in [0, filter_len + "
                f"len(channel_taps)) = [0, "
                f"{self._filter_len + self._channel_taps.size})."
            )
        self._delay = delay

    @property
    def channel_taps(self):
        return self._channel_taps

    @property
    def impulse_response(self):
        """h[k], the weight of u(n - k)."""
        return self._channel_taps[::-1]

    @property
    def delay(self):
        return self._delay

    def _init_kwargs(self):
        kwargs = super()._init_kwargs()
        kwargs.update(channel_taps=self._channel_taps, delay=self._delay)
        return kwargs

    def to_dict(self):
        description = super().to_dict()
        description.update(
            channel_taps=_pairs(self._channel_taps), delay=self._delay
        )
        return description

    def second_order_stats(self):
        return statistics.stats_equalization(
            self._channel_taps,
            self._delay,
            self._filter_len,
            self._input,
            self._noise_var,
        )

    def _synthesize(self, length, generators):
        input_generator, noise_generator = generators
        n_taps = self._filter_len
        n_channel = self._channel_taps.size

        # history needed by the first regressor
        span = n_taps + n_channel - 2
        pre_roll = max(span, self._delay)

        symbols = _draw_improper(
            self._input, length + pre_roll, input_generator
        )
        # received[j] belongs to absolute time j + n_channel - 1
        received = np.convolve(symbols, self.impulse_response, mode="valid")
        received = received + _draw_circular(
            self._noise_var, received.size, noise_generator
        )

        offset = pre_roll - span
        x_vectors = arr.delay_line(received, n_taps)[offset : offset + length]
        start = pre_roll - self._delay
        d = symbols[start : start + length]
        m = np.zeros(length, dtype=settings.COMPLEX_DTYPE)

        return x_vectors, d, m


class SampleStream(ImproLmsBase):
    """Regressors x(n), desired samples d(n) and measurement noise m(n) of
    one realization. Immutable.
    """

    __slots__ = ("_x_vectors", "_d", "_m")

    def __init__(self, x_vectors, d, m):
        """
        Parameters
        ----------
        x_vectors: (T, N) array-like
        d: (T,) array-like
        m: (T,) array-like
        """
        x_vectors = make_readonly_array(x_vectors, settings.COMPLEX_DTYPE)
        d = make_readonly_array(d, settings.COMPLEX_DTYPE)
        m = make_readonly_array(m, settings.COMPLEX_DTYPE)

        arr.is_shape(x_vectors, (-1, -1), strict=True)
        arr.is_shape(d, (-1,), strict=True)
        arr.is_shape(m, (-1,), strict=True)
        if not (len(x_vectors) == len(d) == len(m)):
            raise raise_if.StructureError(
                "x_vectors, d and m should have the same length. Given "
                f"({len(x_vectors)}, {len(d)}, {len(m)})."
            )

        self._x_vectors = x_vectors
        self._d = d
        self._m = m

    @property
    def x_vectors(self):
        return self._x_vectors

    @property
    def d(self):
        return self._d

    @property
    def m(self):
        return self._m

    @property
    def filter_len(self):
        return self._x_vectors.shape[1]

    def __len__(self):
        return len(self._d)


def synthesize_stream(scenario, length, seed):
    """One realization of a scenario. Deterministic given
    (scenario, length, seed), and a prefix of any longer realization with
    the same seed.

    Parameters
    ----------
    scenario: Scenario
    length: int
      number of emitted samples T >= filter_len.
    seed: int or np.random.SeedSequence

    Returns
    -------
    stream: SampleStream
    """
    length = int(length)
    if length < scenario.filter_len:
        raise raise_if.StructureError(
            f"Stream length ({length}) has to be >= filter_len "
            f"({scenario.filter_len})."
        )
    # validates r_x > 0
    moments_of_spec(scenario.input)

    x_vectors, d, m = scenario._synthesize(
        length, _child_generators(seed, 2)
    )

    return SampleStream(x_vectors, d, m)


def sample_second_order_stats(stream):
    """Empirical second order statistics of a stream. The empirical oracle
    for the analytic statistics.

    Parameters
    ----------
    stream: SampleStream
      length T >= 10 N.

    Returns
    -------
    stats: statistics.SecondOrderStats
    """
    n_samples, n_taps = stream.x_vectors.shape
    if n_samples < 10 * n_taps:
        raise raise_if.StructureError(
            f"sample_second_order_stats needs at least {10 * n_taps} "
            f"samples. Given {n_samples}."
        )

    x = stream.x_vectors
    r_hat = arr.hermitian_part(x.T @ x.conj() / n_samples)
    c_hat = arr.symmetric_part(x.T @ x / n_samples)
    p_hat = x.T @ stream.d.conj() / n_samples
    q_hat = x.T @ stream.d / n_samples
    sigma_d2 = float(np.mean(np.abs(stream.d) ** 2))
    sigma_m2 = float(np.mean(np.abs(stream.m) ** 2))

    log.debug(
        "signals.sample_second_order_stats() -",
        f"{n_samples} samples, {n_taps} taps",
    )

    return statistics.SecondOrderStats(
        r_hat, c_hat, p_hat, q_hat, sigma_d2, sigma_m2, validate=False
    )
