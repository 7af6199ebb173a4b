"""improlms/improlms/statistics.py.

Exact second order statistics of the scenarios, the Wiener solution, the
minimum MSE and the pseudo-cross-correlation vector k = q - C w^*.
"""

import numpy as np

from improlms import numerics, settings
from improlms._base import ImproLmsBase
from improlms.helpers import raise_if
from improlms.helpers.data import (
    ComputedData,
    OrthogonalityResidual,
    make_readonly_array,
)
from improlms.utils import arr, log


class SecondOrderStats(ImproLmsBase):
    """Augmented second order description of a regressor / desired signal
    pair: R = E{x x^H}, C = E{x x^T}, p = E{x d^*}, q = E{x d},
    sigma_d2 = E|d|^2 and sigma_m2 = E|m|^2. Immutable.
    """

    __slots__ = (
        "_r",
        "_c",
        "_p",
        "_q",
        "_sigma_d2",
        "_sigma_m2",
        "_computed",
    )

    def __init__(self, r, c, p, q, sigma_d2, sigma_m2, validate=True):
        """
        Parameters
        ----------
        r: (N, N) array-like
          hermitian, positive semidefinite.
        c: (N, N) array-like
          complex symmetric.
        p: (N,) array-like
        q: (N,) array-like
        sigma_d2: float
        sigma_m2: float
        validate: bool
          Checks positive semidefiniteness of R and of the augmented
          covariance. Default is True. Empirical statistics skip it.
        """
        self._r = numerics.as_matrix(r, hermitian=True, name="R")
        n_taps = self._r.shape[0]
        self._c = numerics.as_matrix(c, symmetric=True, name="C")
        arr.is_shape(self._c, (n_taps, n_taps), strict=True)
        self._p = numerics.as_vector(p, length=n_taps, name="p")
        self._q = numerics.as_vector(q, length=n_taps, name="q")

        sigma_d2, sigma_m2 = float(sigma_d2), float(sigma_m2)
        if not (np.isfinite(sigma_d2) and np.isfinite(sigma_m2)):
            raise raise_if.StructureError(
                "sigma_d2 and sigma_m2 have to be finite."
            )
        if sigma_d2 < 0 or sigma_m2 < 0:
            raise raise_if.StructureError(
                f"sigma_d2 ({sigma_d2}) and sigma_m2 ({sigma_m2}) have to "
                "be nonnegative."
            )
        self._sigma_d2 = sigma_d2
        self._sigma_m2 = sigma_m2

        self._computed = ComputedData()

        if validate:
            self._validate_psd()

    def _validate_psd(self):
        scale = max(1.0, arr.max_abs(self._r))
        smallest = float(self.eig().values[-1])
        if smallest < -settings.PSD_TOLERANCE * scale:
            raise raise_if.RankError(
                f"R is not positive semidefinite (smallest eigenvalue "
                f"{smallest:.3e}).",
                smallest_eigenvalue=smallest,
            )
        smallest = self.smallest_augmented_eigenvalue()
        if smallest < -settings.PSD_TOLERANCE * scale:
            raise raise_if.RankError(
                "Augmented covariance [[R, C], [C^*, R^*]] is not positive "
                f"semidefinite (smallest eigenvalue {smallest:.3e}).",
                smallest_eigenvalue=smallest,
            )

    @property
    def r(self):
        """R = E{x x^H}."""
        return self._r

    @property
    def c(self):
        """C = E{x x^T}."""
        return self._c

    @property
    def p(self):
        return self._p

    @property
    def q(self):
        return self._q

    @property
    def sigma_d2(self):
        return self._sigma_d2

    @property
    def sigma_m2(self):
        return self._sigma_m2

    @property
    def filter_len(self):
        return self._r.shape[0]

    @ComputedData.compute_once
    def eig(self):
        """Eigenpairs of R, eigenvalues descending.

        Returns
        -------
        eigen_pairs: EigenPairs
        """
        self._logd("computing eigendecomposition of R")
        return numerics.hermitian_eig(self._r)

    @ComputedData.compute_once
    def takagi(self):
        """Takagi factorization of C.

        Returns
        -------
        takagi_pairs: TakagiPairs
        """
        self._logd("computing Takagi factorization of C")
        return numerics.takagi_factorize(self._c)

    @ComputedData.compute_once
    def trace_r(self):
        """tr[R], the total input power.

        Returns
        -------
        trace_r: float
        """
        return float(np.trace(self._r).real)

    @ComputedData.compute_once
    def augmented_covariance(self):
        """[[R, C], [C^*, R^*]], the covariance of [x; x^*].

        Returns
        -------
        augmented: (2N, 2N) np.ndarray
        """
        return np.block(
            [[self._r, self._c], [self._c.conj(), self._r.conj()]]
        )

    @ComputedData.compute_once
    def smallest_augmented_eigenvalue(self):
        eigen_pairs = numerics.hermitian_eig(self.augmented_covariance())
        return float(eigen_pairs.values[-1])

    def scaled_desired(self, factor):
        """Statistics of the same regressors with d and m scaled by a real
        factor.

        Parameters
        ----------
        factor: float

        Returns
        -------
        scaled: SecondOrderStats
        """
        factor = float(factor)
        return type(self)(
            self._r,
            self._c,
            factor * self._p,
            factor * self._q,
            factor**2 * self._sigma_d2,
            factor**2 * self._sigma_m2,
            validate=False,
        )

    def __repr__(self):
        return (
            f"{type(self).__qualname__}(N={self.filter_len}, "
            f"trace_r={self.trace_r():.6g}, sigma_d2={self._sigma_d2:.6g}, "
            f"sigma_m2={self._sigma_m2:.6g})"
        )


class WienerQuantities(ImproLmsBase):
    """Optimal strictly linear filter w_inf = R^{-1} p, its minimum MSE and
    the pseudo-cross-correlation k = q - C w_inf^* between regressor and
    optimal error.
    """

    __slots__ = ("_w_inf", "_j_min", "_k")

    def __init__(self, w_inf, j_min, k):
        self._w_inf = make_readonly_array(w_inf, settings.COMPLEX_DTYPE)
        self._j_min = float(j_min)
        self._k = make_readonly_array(k, settings.COMPLEX_DTYPE)

    @property
    def w_inf(self):
        return self._w_inf

    @property
    def j_min(self):
        return self._j_min

    @property
    def k(self):
        return self._k

    @property
    def k_norm2(self):
        """k^H k."""
        return float(np.vdot(self._k, self._k).real)

    def __repr__(self):
        return (
            f"{type(self).__qualname__}(j_min={self._j_min:.6g}, "
            f"k_norm2={self.k_norm2:.6g})"
        )


def stats_sysid(f, g, spec, noise_var):
    """Statistics of the widely linear plant d(n) = f^H x(n) + g^H x^*(n)
    with white input: R = r_x I, C = q_x I, p = R f + C g,
    q = C f^* + R g^*.

    Parameters
    ----------
    f: (N,) array-like
    g: (N,) array-like
    spec: ImproperWhiteSpec
    noise_var: float

    Returns
    -------
    stats: SecondOrderStats
    """
    f = numerics.as_vector(f, name="f")
    g = numerics.as_vector(g, length=f.size, name="g")
    r_x, q_x, _ = spec.moments()

    eye = np.eye(f.size, dtype=settings.COMPLEX_DTYPE)
    r = r_x * eye
    c = q_x * eye
    p = r @ f + c @ g
    q = c @ f.conj() + r @ g.conj()

    sigma_d2 = (
        np.vdot(f, r @ f)
        + np.vdot(f, c @ g)
        + np.vdot(g, c.conj() @ f)
        + np.vdot(g, r.T @ g)
    )
    if abs(sigma_d2.imag) > settings.TOLERANCE * max(1.0, abs(sigma_d2)):
        raise raise_if.NumericalError(
            f"E|d|^2 has an imaginary residue of {sigma_d2.imag:.3e}.",
            residual=abs(sigma_d2.imag),
        )

    log.debug(
        "statistics.stats_sysid() -",
        f"N={f.size}, r_x={r_x:.6g}, q_x={q_x:.6g}",
    )

    return SecondOrderStats(r, c, p, q, sigma_d2.real, noise_var)


def _tap_correlation(taps, lag, conjugate):
    """sum_k h[k] h[k + lag] (conjugated second factor if conjugate), with
    out of range taps being zero.
    """
    n_channel = taps.size
    begin = max(0, -lag)
    end = min(n_channel, n_channel - lag)
    if begin >= end:
        return 0.0
    shifted = taps[begin + lag : end + lag]
    if conjugate:
        shifted = shifted.conj()

    return np.sum(taps[begin:end] * shifted)


def _tap_at(taps, index):
    if 0 <= index < taps.size:
        return taps[index]
    return 0.0


def stats_equalization(channel_taps, delay, filter_len, spec, noise_var):
    """Statistics of the equalizer regressor x_i(n) = r(n - i) of the
    received signal r(n) = sum_k h[k] u(n - k) + nu(n), trained on
    d(n) = u(n - delay). channel_taps weight the symbol window oldest first,
    so the impulse response h is channel_taps reversed.

    R[i, j] = r_u sum_k h[k] h^*[k + i - j] + noise_var delta_ij,
    C[i, j] = q_u sum_k h[k] h[k + i - j], p[i] = r_u h[delay - i] and
    q[i] = q_u h[delay - i]. Taps out of range are zero.

    Parameters
    ----------
    channel_taps: (M,) array-like
      weights of [u(n - M + 1), ..., u(n)].
    delay: int
    filter_len: int
    spec: ImproperWhiteSpec
      transmitted symbols.
    noise_var: float
      channel noise variance.

    Returns
    -------
    stats: SecondOrderStats
    """
    # impulse response
    taps = numerics.as_vector(channel_taps, name="channel_taps")[::-1]
    delay, filter_len = int(delay), int(filter_len)
    if filter_len < 1:
        raise raise_if.StructureError(
            f"filter_len has to be >= 1. Given {filter_len}."
        )
    if delay < 0 or delay >= filter_len + taps.size:
        raise raise_if.StructureError(
            f"delay ({delay}) has to be in [0, {filter_len + taps.size})."
        )
    r_u, q_u, _ = spec.moments()

    r = np.empty((filter_len, filter_len), dtype=settings.COMPLEX_DTYPE)
    c = np.empty_like(r)
    for i in range(filter_len):
        for j in range(filter_len):
            r[i, j] = r_u * _tap_correlation(taps, i - j, conjugate=True)
            c[i, j] = q_u * _tap_correlation(taps, i - j, conjugate=False)
    r += float(noise_var) * np.eye(filter_len)

    aligned = np.array(
        [_tap_at(taps, delay - i) for i in range(filter_len)],
        dtype=settings.COMPLEX_DTYPE,
    )
    p = r_u * aligned
    q = q_u * aligned

    log.debug(
        "statistics.stats_equalization() -",
        f"N={filter_len}, M={taps.size}, delay={delay}, r_u={r_u:.6g}, "
        f"q_u={q_u:.6g}",
    )

    return SecondOrderStats(r, c, p, q, r_u, 0.0)


def stats_of(scenario):
    """Exact statistics of any scenario.

    Parameters
    ----------
    scenario: signals.Scenario

    Returns
    -------
    stats: SecondOrderStats
    """
    return scenario.second_order_stats()


def wiener_solution(stats):
    """w_inf = R^{-1} p, J_min = sigma_d2 + sigma_m2 - Re(p^H w_inf) and
    k = q - C w_inf^*.

    Parameters
    ----------
    stats: SecondOrderStats
      R has to be positive definite.

    Returns
    -------
    wiener: WienerQuantities
    """
    w_inf = numerics.solve_hermitian(stats.r, stats.p)

    j_min = (
        stats.sigma_d2 + stats.sigma_m2 - float(np.vdot(stats.p, w_inf).real)
    )
    if j_min < 0:
        scale = max(1.0, stats.sigma_d2 + stats.sigma_m2)
        if j_min < -settings.TOLERANCE * scale:
            raise raise_if.NumericalError(
                f"J_min evaluated negative ({j_min:.3e}).", residual=-j_min
            )
        # rounding
        j_min = 0.0

    k = stats.q - stats.c @ w_inf.conj()

    log.debug(
        "statistics.wiener_solution() -",
        f"J_min={j_min:.6g}, k^H k={float(np.vdot(k, k).real):.6g}",
    )

    return WienerQuantities(w_inf, j_min, k)


def schur_complement(stats):
    """R - C R^{-*} C^*, the error covariance of estimating x from x^*.

    Parameters
    ----------
    stats: SecondOrderStats

    Returns
    -------
    schur: (N, N) np.ndarray
    """
    r_conj = stats.r.conj()
    c_conj = stats.c.conj()
    solved = np.column_stack(
        [
            numerics.solve_hermitian(r_conj, c_conj[:, j])
            for j in range(stats.filter_len)
        ]
    )

    return make_readonly_array(stats.r - stats.c @ solved, copy=False)


def augmented_covariance(stats):
    """[[R, C], [C^*, R^*]].

    Parameters
    ----------
    stats: SecondOrderStats

    Returns
    -------
    augmented: (2N, 2N) np.ndarray
    """
    return stats.augmented_covariance()


def k_sysid_closed_form(stats, g):
    """k = (R - C R^{-*} C^*) g^* of a widely linear plant. For white input
    this is r_x (1 - |rho_x|^2) g^*.

    Parameters
    ----------
    stats: SecondOrderStats
    g: (N,) array-like
      conjugate part of the plant.

    Returns
    -------
    k: (N,) np.ndarray
    """
    g = numerics.as_vector(g, length=stats.filter_len, name="g")
    return make_readonly_array(schur_complement(stats) @ g.conj(), copy=False)


def orthogonality_residual(stats, wiener, stream):
    """Sample check of E{x e_o^*} = 0 and E{x e_o} = k, where e_o is the
    error of the Wiener filter.

    Parameters
    ----------
    stats: SecondOrderStats
    wiener: WienerQuantities
    stream: signals.SampleStream
      at least 10^4 samples.

    Returns
    -------
    residual: OrthogonalityResidual
    """
    n_samples = len(stream)
    if n_samples < 10_000:
        raise raise_if.StructureError(
            f"orthogonality_residual needs at least 10000 samples. Given "
            f"{n_samples}."
        )
    raise_if.length_mismatch(
        stats.filter_len, stream.filter_len, "stream regressor"
    )

    x = stream.x_vectors
    e_o = stream.d + stream.m - x @ wiener.w_inf.conj()
    r1 = np.linalg.norm(x.T @ e_o.conj() / n_samples)
    r2 = np.linalg.norm(x.T @ e_o / n_samples - wiener.k)

    return OrthogonalityResidual(float(r1), float(r2))
