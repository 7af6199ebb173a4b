"""improlms/improlms/theory.py.

Analytical behavior of the complex LMS filter. Mean weight recursion,
convergence modes and step size bounds, the MSE model recursions (with and
without the pseudo-cross-correlation terms) and steady state closed forms.

The model recursion propagates the mean weight error v(n) = E{w(n)} - w_inf
and the weight error correlation V(n):

    v(n) = (I - mu R) v(n-1)
    V(n) = V - mu (R V + V R)
           + mu^2 (J R + R V R + k k^H - k v^T C^* - C v^* k^H + C V^* C^*)
    J(n) = J_min + tr[R V(n)]

where every right hand side term is evaluated at step n-1. The independence
model drops the three terms carrying k.
"""

import numpy as np
import scipy.optimize

from improlms import numerics, settings, statistics
from improlms._base import ImproLmsBase
from improlms.helpers import raise_if
from improlms.helpers.data import (
    ModeReport,
    SteadyStateReport,
    StepSizeReport,
    make_readonly_array,
)
from improlms.utils import arr, log

PROPOSED = "proposed"
INDEPENDENCE = "independence"
VARIANTS = (PROPOSED, INDEPENDENCE)

GENERAL_FORMULA = "GeneralFormula"
CASE_A_CLOSED_FORM = "CaseAClosedForm"
CASE_B_CLOSED_FORM = "CaseBClosedForm"
RECURSION_LIMIT = "RecursionLimit"


def _check_mu(mu, allow_zero=False):
    mu = float(mu)
    if not np.isfinite(mu) or mu < 0 or (mu == 0 and not allow_zero):
        raise raise_if.StructureError(
            f"Step size mu has to be finite and positive. Given {mu}."
        )
    return mu


def _initial_weights(w0, n_taps):
    if w0 is None:
        return np.zeros(n_taps, dtype=settings.COMPLEX_DTYPE)
    return arr.complex_vector(w0, length=n_taps, name="w0")


def _trace_r(stats):
    trace_r = stats.trace_r()
    if trace_r <= 0:
        raise raise_if.DegenerateSignalError(
            f"tr[R] has to be positive. Given {trace_r}."
        )
    return trace_r


def _misadjustments(j_ex_inf, j_min, mu, trace_r, k_norm2):
    """Exact j_ex / j_min and the small step size approximation
    mu (tr[R] + k^H k / J_min) / 2.
    """
    if j_min > 0:
        return j_ex_inf / j_min, 0.5 * mu * (trace_r + k_norm2 / j_min)
    return np.inf, np.inf


def _steady_state_report(j_min, j_ex_inf, mu, trace_r, k_norm2, source):
    xi, xi_small_mu = _misadjustments(j_ex_inf, j_min, mu, trace_r, k_norm2)
    return SteadyStateReport(
        j_inf=j_min + j_ex_inf,
        j_ex_inf=j_ex_inf,
        misadjustment=xi,
        misadjustment_small_mu=xi_small_mu,
        source=source,
        j_min=j_min,
        mu=mu,
    )


def mean_weight_trajectory(stats, mu, w0=None, steps=100):
    """E{w(n)} = (I - mu R) E{w(n-1)} + mu p, starting at w0.

    Parameters
    ----------
    stats: SecondOrderStats
    mu: float
      mu >= 0. mu = 0 keeps w0.
    w0: (N,) array-like
      (Optional) default is zeros.
    steps: int

    Returns
    -------
    weights: (steps + 1, N) np.ndarray
      row n is E{w(n)}.
    """
    mu = _check_mu(mu, allow_zero=True)
    n_taps = stats.filter_len
    weights = np.empty((int(steps) + 1, n_taps), dtype=settings.COMPLEX_DTYPE)
    weights[0] = _initial_weights(w0, n_taps)

    contraction = np.eye(n_taps) - mu * stats.r
    drive = mu * stats.p
    for n in range(1, weights.shape[0]):
        weights[n] = contraction @ weights[n - 1] + drive

    return make_readonly_array(weights, copy=False)


def mean_error_modes(stats, mu):
    """Contraction factors 1 - mu lambda_i of the mean weight error in the
    eigenbasis of R and their time constants. Exact time constants are
    -1 / ln|1 - mu lambda_i|, the approximation is 1 / (mu lambda_i). Modes
    with |1 - mu lambda_i| >= 1 are flagged divergent and get NaN.

    Parameters
    ----------
    stats: SecondOrderStats
    mu: float

    Returns
    -------
    mode_report: ModeReport
    """
    mu = _check_mu(mu)
    eigenvalues = stats.eig().values
    modes = 1.0 - mu * eigenvalues
    magnitude = np.abs(modes)
    divergent = magnitude >= 1.0

    with np.errstate(divide="ignore", invalid="ignore"):
        taus = np.where(divergent, np.nan, -1.0 / np.log(magnitude))
        taus_approx = np.where(
            eigenvalues > 0, 1.0 / (mu * eigenvalues), np.inf
        )

    if np.any(divergent):
        log.debug(
            "theory.mean_error_modes() -",
            f"{int(np.sum(divergent))} divergent mode(s) at mu={mu}",
        )

    return ModeReport(
        make_readonly_array(modes, settings.FLOAT_DTYPE, copy=False),
        make_readonly_array(taus, settings.FLOAT_DTYPE, copy=False),
        make_readonly_array(taus_approx, settings.FLOAT_DTYPE, copy=False),
        make_readonly_array(divergent, bool, copy=False),
    )


def step_bounds(stats, mu=None):
    """Step size bounds 0 < mu < 1 / tr[R] (mean weights, conservative) and
    mu < 2 / tr[R] (MSE). Statistics of closed form shape also get the
    approximate bound of their case.

    Parameters
    ----------
    stats: SecondOrderStats
    mu: float
      (Optional) step size to evaluate time constants at.

    Returns
    -------
    step_size_report: StepSizeReport
    """
    trace_r = _trace_r(stats)
    eigenvalues = stats.eig().values

    scale = 1.0 if mu is None else _check_mu(mu)
    with np.errstate(divide="ignore"):
        time_constants = np.where(
            eigenvalues > 0, 1.0 / (scale * eigenvalues), np.inf
        )

    case, case_bound = None, None
    try:
        sigma2, circ_coeffs = _case_a_shape(stats)[:2]
        case = "case_a"
        case_bound = 2.0 / (
            sigma2 * (stats.filter_len + 1 + float(np.max(circ_coeffs)) ** 2)
        )
    except raise_if.StructureError:
        try:
            sigmas2, circ_coeff = _case_b_shape(stats)[:2]
            case = "case_b"
            case_bound = 2.0 / (
                float(np.max(sigmas2))
                * (stats.filter_len + 1 + circ_coeff**2)
            )
        except (raise_if.StructureError, raise_if.NumericalError):
            pass

    return StepSizeReport(
        lambda_max=float(eigenvalues[0]),
        trace_r=trace_r,
        mean_bound=1.0 / trace_r,
        mse_bound=2.0 / trace_r,
        time_constants=make_readonly_array(
            time_constants, settings.FLOAT_DTYPE, copy=False
        ),
        case_bound=case_bound,
        case=case,
        mu=mu,
    )


class TheoryTrajectory(ImproLmsBase):
    """Output of a model recursion. Holds J(n), v(n) and V(n) for
    n = 0 .. last_finite. If the recursion diverged, `diverged` is True and
    the arrays end at the last finite step.
    """

    __slots__ = (
        "_j",
        "_vbar",
        "_v",
        "_variant",
        "_j_min",
        "_mu",
        "_trace_r",
        "_k_norm2",
        "_diverged",
    )

    def __init__(
        self, j, vbar, v, variant, j_min, mu, trace_r, k_norm2, diverged
    ):
        self._j = make_readonly_array(j, settings.FLOAT_DTYPE)
        self._vbar = make_readonly_array(vbar, settings.COMPLEX_DTYPE)
        self._v = make_readonly_array(v, settings.COMPLEX_DTYPE)
        self._variant = variant
        self._j_min = float(j_min)
        self._mu = float(mu)
        self._trace_r = float(trace_r)
        self._k_norm2 = float(k_norm2)
        self._diverged = bool(diverged)

    @property
    def j(self):
        """J(n), n = 0 .. last_finite."""
        return self._j

    @property
    def j_ex(self):
        """J(n) - J_min."""
        return self._j - self._j_min

    @property
    def vbar(self):
        return self._vbar

    @property
    def v(self):
        """V(n) stacked as (n, N, N)."""
        return self._v

    @property
    def variant(self):
        return self._variant

    @property
    def j_min(self):
        return self._j_min

    @property
    def mu(self):
        return self._mu

    @property
    def trace_r(self):
        return self._trace_r

    @property
    def k_norm2(self):
        return self._k_norm2

    @property
    def diverged(self):
        return self._diverged

    @property
    def last_finite(self):
        return len(self._j) - 1

    def tail_mean(self, from_iter, to_iter=None):
        """Mean of J(n) for from_iter <= n < to_iter.

        Parameters
        ----------
        from_iter: int
        to_iter: int
          (Optional) default is the end of the trajectory.

        Returns
        -------
        tail_mean: float
        """
        stop = None if to_iter is None else int(to_iter)
        tail = self._j[int(from_iter) : stop]
        if tail.size == 0:
            raise raise_if.StructureError(
                f"Empty window [{from_iter}, {to_iter}) of a trajectory "
                f"with last index {self.last_finite}."
            )
        return float(np.mean(tail))

    def __len__(self):
        return len(self._j)

    def __repr__(self):
        return (
            f"{type(self).__qualname__}(variant={self._variant}, "
            f"steps={self.last_finite}, diverged={self._diverged})"
        )


def _model_step(r, c, k, j_min, mu, vbar, v, proposed):
    """One step of the model recursion. Returns (vbar, V) at step n from the
    state at step n-1.
    """
    j_rhs = j_min + np.trace(r @ v).real
    rv = r @ v
    vr = v @ r

    fluctuation = j_rhs * r + rv @ r + c @ v.conj() @ c.conj()
    if proposed:
        k_vbar = np.outer(k, vbar) @ c.conj()
        fluctuation = fluctuation + (
            np.outer(k, k.conj()) - k_vbar - k_vbar.conj().T
        )

    v_next = v - mu * (rv + vr) + mu * mu * fluctuation
    vbar_next = vbar - mu * (r @ vbar)

    return vbar_next, v_next


def model_trajectory(stats, wiener, mu, w0=None, steps=300, variant=PROPOSED):
    """Runs the MSE model recursion from the deterministic start
    v(0) = w0 - w_inf, V(0) = v(0) v(0)^H.

    Parameters
    ----------
    stats: SecondOrderStats
    wiener: WienerQuantities
    mu: float
    w0: (N,) array-like
      (Optional) default is zeros.
    steps: int
    variant: str
      "proposed" or "independence". The latter drops the terms carrying k.

    Returns
    -------
    trajectory: TheoryTrajectory
    """
    mu = _check_mu(mu)
    steps = int(steps)
    if steps < 1:
        raise raise_if.StructureError(f"steps has to be >= 1. Given {steps}.")
    variant = str(variant).lower()
    if variant not in VARIANTS:
        raise raise_if.StructureError(
            f"Unknown model variant `{variant}`. Valid options are "
            f"{VARIANTS}."
        )

    n_taps = stats.filter_len
    r, c, k, j_min = stats.r, stats.c, wiener.k, wiener.j_min

    j = np.empty(steps + 1, dtype=settings.FLOAT_DTYPE)
    vbars = np.empty((steps + 1, n_taps), dtype=settings.COMPLEX_DTYPE)
    vs = np.empty((steps + 1, n_taps, n_taps), dtype=settings.COMPLEX_DTYPE)

    vbars[0] = _initial_weights(w0, n_taps) - wiener.w_inf
    vs[0] = np.outer(vbars[0], vbars[0].conj())
    j[0] = j_min + np.trace(r @ vs[0]).real

    floor = j_min - settings.TOLERANCE * max(1.0, j_min)
    last = steps
    diverged = False
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(1, steps + 1):
            vbar, v = _model_step(
                r,
                c,
                k,
                j_min,
                mu,
                vbars[n - 1],
                vs[n - 1],
                variant == PROPOSED,
            )

            scale = max(1.0, arr.max_abs(v))
            drift = arr.max_abs(v - v.conj().T)
            if np.isfinite(scale) and drift > settings.DRIFT_TOLERANCE * scale:
                raise raise_if.NumericalError(
                    f"V({n}) drifted from hermitian by {drift:.3e}.",
                    residual=drift,
                )
            v = arr.hermitian_part(v)
            j_n = j_min + np.trace(r @ v).real

            if not (np.isfinite(j_n) and np.all(np.isfinite(v))) or (
                j_n < floor
            ):
                diverged = True
                last = n - 1
                break

            vbars[n] = vbar
            vs[n] = v
            j[n] = j_n

    if diverged:
        log.warning(
            "theory.model_trajectory() -",
            f"{variant} model diverged at step {last + 1} (mu={mu}).",
        )
    else:
        log.debug(
            "theory.model_trajectory() -",
            f"{variant} model, {steps} steps, J({steps})={j[steps]:.6g}",
        )

    return TheoryTrajectory(
        j=j[: last + 1],
        vbar=vbars[: last + 1],
        v=vs[: last + 1],
        variant=variant,
        j_min=j_min,
        mu=mu,
        trace_r=stats.trace_r(),
        k_norm2=wiener.k_norm2,
        diverged=diverged,
    )


def steady_state_general(stats, wiener, mu):
    """Closed form steady state for arbitrary statistics,
    J_inf = J_min (1 + mu tr[R] / (2 - mu tr[R])) + mu k^H k / (2 - mu tr[R]).
    It neglects the trace terms of order mu^2 in V and therefore
    underestimates the recursion limit at large step sizes.

    Parameters
    ----------
    stats: SecondOrderStats
    wiener: WienerQuantities
    mu: float
      0 < mu tr[R] < 2.

    Returns
    -------
    steady_state_report: SteadyStateReport
    """
    mu = _check_mu(mu)
    trace_r = _trace_r(stats)
    mu_max = 2.0 / trace_r
    if mu >= mu_max:
        raise raise_if.InstabilityError(
            f"mu ({mu}) has to be below mu_max = 2 / tr[R] = {mu_max:.6g}.",
            bound=mu_max,
        )

    j_min, k_norm2 = wiener.j_min, wiener.k_norm2
    gap = 2.0 - mu * trace_r
    j_inf = j_min * (1.0 + mu * trace_r / gap) + mu * k_norm2 / gap

    return _steady_state_report(
        j_min, j_inf - j_min, mu, trace_r, k_norm2, GENERAL_FORMULA
    )


def misadjustment(stats, wiener, mu):
    """Misadjustment of the general steady state formula and its small step
    size approximation.

    Parameters
    ----------
    stats: SecondOrderStats
    wiener: WienerQuantities
    mu: float

    Returns
    -------
    misadjustments: tuple
      (xi: float, xi_small_mu: float)
    """
    report = steady_state_general(stats, wiener, mu)
    return report.misadjustment, report.misadjustment_small_mu


def _case_excess_mse(mu, sigmas2, circ_coeffs, k_abs2, j_min, bound, case):
    """Shared closed form of both cases,
    [mu sum_i (J_min s_i + |k_i|^2) / D_i] / [1 - sum_i mu s_i / D_i]
    with D_i = 2 - mu s_i (1 + l_i^2).
    """
    denominators = 2.0 - mu * sigmas2 * (1.0 + circ_coeffs**2)
    if np.any(denominators <= 0):
        raise raise_if.InstabilityError(
            f"{case}: mu ({mu}) is beyond the pole of a mode. Approximate "
            f"bound is {bound:.6g}.",
            bound=bound,
        )
    outer = 1.0 - np.sum(mu * sigmas2 / denominators)
    if outer <= 0:
        raise raise_if.InstabilityError(
            f"{case}: steady state is not finite at mu ({mu}). Approximate "
            f"bound is {bound:.6g}.",
            bound=bound,
        )

    return float(
        mu * np.sum((j_min * sigmas2 + k_abs2) / denominators) / outer
    )


def case_a_steady_state(sigma2, circ_coeffs, k_tilde, j_min, mu):
    """Steady state for white-power input, R = sigma2 I, with circularity
    coefficients circ_coeffs from the Takagi factorization
    C = Q (sigma2 diag(circ_coeffs)) Q^T and k_tilde = Q^H k.

    Parameters
    ----------
    sigma2: float
    circ_coeffs: (N,) array-like
    k_tilde: (N,) array-like
    j_min: float
    mu: float

    Returns
    -------
    steady_state_report: SteadyStateReport
    """
    mu = _check_mu(mu)
    sigma2 = float(sigma2)
    if sigma2 <= 0:
        raise raise_if.DegenerateSignalError(
            f"sigma2 has to be positive. Given {sigma2}."
        )
    circ_coeffs = np.asarray(circ_coeffs, dtype=settings.FLOAT_DTYPE)
    k_tilde = arr.complex_vector(
        k_tilde, length=circ_coeffs.size, name="k_tilde"
    )
    n_taps = circ_coeffs.size
    bound = 2.0 / (sigma2 * (n_taps + 1 + float(np.max(circ_coeffs)) ** 2))

    k_abs2 = np.abs(k_tilde) ** 2
    j_ex = _case_excess_mse(
        mu,
        np.full(n_taps, sigma2),
        circ_coeffs,
        k_abs2,
        float(j_min),
        bound,
        "Case A",
    )

    return _steady_state_report(
        float(j_min),
        j_ex,
        mu,
        n_taps * sigma2,
        float(np.sum(k_abs2)),
        CASE_A_CLOSED_FORM,
    )


def case_b_steady_state(sigmas2, circ_coeff, k_tilde, j_min, mu):
    """Steady state for uniformly non-circular input, R = U S U^H and
    C = circ_coeff U S U^T with S = diag(sigmas2), and k_tilde = U^H k.

    Parameters
    ----------
    sigmas2: (N,) array-like
    circ_coeff: float
    k_tilde: (N,) array-like
    j_min: float
    mu: float

    Returns
    -------
    steady_state_report: SteadyStateReport
    """
    mu = _check_mu(mu)
    sigmas2 = np.asarray(sigmas2, dtype=settings.FLOAT_DTYPE)
    if sigmas2.ndim != 1 or sigmas2.size < 1 or np.any(sigmas2 <= 0):
        raise raise_if.DegenerateSignalError(
            "sigmas2 has to be a non-empty sequence of positive values."
        )
    k_tilde = arr.complex_vector(k_tilde, length=sigmas2.size, name="k_tilde")
    circ_coeff = float(circ_coeff)
    n_taps = sigmas2.size
    bound = 2.0 / (float(np.max(sigmas2)) * (n_taps + 1 + circ_coeff**2))

    k_abs2 = np.abs(k_tilde) ** 2
    j_ex = _case_excess_mse(
        mu,
        sigmas2,
        np.full(n_taps, circ_coeff),
        k_abs2,
        float(j_min),
        bound,
        "Case B",
    )

    return _steady_state_report(
        float(j_min),
        j_ex,
        mu,
        float(np.sum(sigmas2)),
        float(np.sum(k_abs2)),
        CASE_B_CLOSED_FORM,
    )


def case_a_exact_bound(sigma2, circ_coeffs):
    """Largest mu for which the Case A steady state stays finite, i.e., the
    root of 1 - sum_i mu sigma2 / (2 - mu sigma2 (1 + l_i^2)) in front of the
    first pole. Never below 2 / (sigma2 (N + 1 + max(l)^2)).

    Parameters
    ----------
    sigma2: float
    circ_coeffs: (N,) array-like

    Returns
    -------
    bound: float
    """
    sigma2 = float(sigma2)
    if sigma2 <= 0:
        raise raise_if.DegenerateSignalError(
            f"sigma2 has to be positive. Given {sigma2}."
        )
    circ_coeffs = np.asarray(circ_coeffs, dtype=settings.FLOAT_DTYPE)
    pole = 2.0 / (sigma2 * (1.0 + float(np.max(circ_coeffs)) ** 2))

    def finiteness(mu):
        return 1.0 - np.sum(
            mu * sigma2 / (2.0 - mu * sigma2 * (1.0 + circ_coeffs**2))
        )

    upper = pole * (1.0 - 1e-12)
    if finiteness(upper) > 0:
        return upper

    return float(scipy.optimize.brentq(finiteness, 0.0, upper, xtol=1e-15))


def _case_a_shape(stats):
    """sigma2 and circularity coefficients if R = sigma2 I."""
    sigma2 = stats.trace_r() / stats.filter_len
    deviation = arr.max_abs(stats.r - sigma2 * np.eye(stats.filter_len))
    if sigma2 <= 0 or deviation > settings.TOLERANCE * sigma2:
        raise raise_if.StructureError(
            "Case A requires R = sigma^2 I, which these statistics are not."
        )
    takagi = stats.takagi()

    return sigma2, takagi.sigma / sigma2, takagi.vectors


def case_a_from_stats(stats, wiener=None):
    """Case A parameters of statistics with R = sigma2 I: sigma2, the
    circularity coefficients sigma_i(C) / sigma2 and k_tilde = Q^H k with Q
    from the Takagi factorization of C.

    Parameters
    ----------
    stats: SecondOrderStats
    wiener: WienerQuantities
      (Optional) computed if not given.

    Returns
    -------
    case_a: tuple
      (sigma2: float, circ_coeffs: np.ndarray, k_tilde: np.ndarray)
    """
    sigma2, circ_coeffs, basis = _case_a_shape(stats)
    if wiener is None:
        wiener = statistics.wiener_solution(stats)

    return sigma2, circ_coeffs, basis.conj().T @ wiener.k


def _hermitian_sqrt(eigen_pairs, inverse=False):
    values, vectors = eigen_pairs
    roots = np.sqrt(values)
    if inverse:
        roots = 1.0 / roots
    return (vectors * roots) @ vectors.conj().T


def _case_b_shape(stats):
    """sigmas2, circ_coeff and unitary basis U if R = U S U^H and
    C = circ_coeff U S U^T.
    """
    eigen_pairs = stats.eig()
    largest, smallest = eigen_pairs.values[0], eigen_pairs.values[-1]
    if largest <= 0 or smallest <= settings.RANK_TOLERANCE * largest:
        raise raise_if.RankError(
            "Case B requires a positive definite R.",
            smallest_eigenvalue=float(smallest),
        )

    inverse_root = _hermitian_sqrt(eigen_pairs, inverse=True)
    coherence = inverse_root @ stats.c @ inverse_root.T
    # rounding may leave a tiny antisymmetric part
    takagi = numerics.takagi_factorize(arr.symmetric_part(coherence))
    circ_coeff = float(np.mean(takagi.sigma))
    spread = float(np.max(takagi.sigma) - np.min(takagi.sigma))
    if spread > settings.TAKAGI_TOLERANCE * max(1.0, circ_coeff):
        raise raise_if.StructureError(
            "Case B requires uniform circularity coefficients. Given spread "
            f"{spread:.3e}."
        )

    if circ_coeff <= settings.TAKAGI_TOLERANCE:
        # proper: any eigenbasis of R
        sigmas2 = np.asarray(eigen_pairs.values, dtype=settings.FLOAT_DTYPE)
        basis = eigen_pairs.vectors
    else:
        # Takagi basis is unique up to a real rotation, which diagonalizes R
        projected = takagi.vectors.conj().T @ stats.r @ takagi.vectors
        scale = max(1.0, arr.max_abs(projected))
        if arr.max_abs(projected.imag) > settings.TAKAGI_TOLERANCE * scale:
            raise raise_if.StructureError(
                "Case B basis could not be aligned with R."
            )
        values, rotation = np.linalg.eigh(projected.real)
        sigmas2 = values[::-1].copy()
        basis = takagi.vectors @ rotation[:, ::-1]

    scale = max(1.0, arr.max_abs(stats.r))
    residual = max(
        arr.max_abs((basis * sigmas2) @ basis.conj().T - stats.r),
        arr.max_abs(circ_coeff * (basis * sigmas2) @ basis.T - stats.c),
    )
    if residual > settings.TAKAGI_TOLERANCE * scale:
        raise raise_if.StructureError(
            f"Statistics are not Case B shaped (residual {residual:.3e})."
        )

    return sigmas2, circ_coeff, basis


def case_b_from_stats(stats, wiener=None):
    """Case B parameters of statistics with R = U S U^H and
    C = circ_coeff U S U^T for a unitary U: the diagonal of S, circ_coeff
    and k_tilde = U^H k. All canonical correlations of R^{-1/2} C R^{-T/2}
    have to coincide.

    Parameters
    ----------
    stats: SecondOrderStats
      R positive definite.
    wiener: WienerQuantities
      (Optional) computed if not given.

    Returns
    -------
    case_b: tuple
      (sigmas2: np.ndarray, circ_coeff: float, k_tilde: np.ndarray)
    """
    sigmas2, circ_coeff, basis = _case_b_shape(stats)
    if wiener is None:
        wiener = statistics.wiener_solution(stats)

    return sigmas2, circ_coeff, basis.conj().T @ wiener.k


def case_a_report(stats, wiener, mu):
    """Case A steady state straight from statistics.

    Parameters
    ----------
    stats: SecondOrderStats
    wiener: WienerQuantities
    mu: float

    Returns
    -------
    steady_state_report: SteadyStateReport
    """
    sigma2, circ_coeffs, k_tilde = case_a_from_stats(stats, wiener)
    return case_a_steady_state(sigma2, circ_coeffs, k_tilde, wiener.j_min, mu)


def case_b_report(stats, wiener, mu):
    """Case B steady state straight from statistics.

    Parameters
    ----------
    stats: SecondOrderStats
    wiener: WienerQuantities
    mu: float

    Returns
    -------
    steady_state_report: SteadyStateReport
    """
    sigmas2, circ_coeff, k_tilde = case_b_from_stats(stats, wiener)
    return case_b_steady_state(sigmas2, circ_coeff, k_tilde, wiener.j_min, mu)


def recursion_limit(trajectory, tail=1, from_iter=None, to_iter=None):
    """Steady state read off a model recursion, the mean of its last `tail`
    values of J(n). If from_iter is given, the mean over
    from_iter <= n < to_iter is used instead, which matches the window of
    `simulator.tail_estimate` for to_iter = steps.

    Parameters
    ----------
    trajectory: TheoryTrajectory
    tail: int
    from_iter: int
      (Optional) first iteration of the window.
    to_iter: int
      (Optional) end of the window, exclusive.

    Returns
    -------
    steady_state_report: SteadyStateReport
    """
    if trajectory.diverged:
        raise raise_if.InstabilityError(
            f"{trajectory.variant} model diverged at step "
            f"{trajectory.last_finite + 1} (mu={trajectory.mu}).",
            bound=2.0 / trajectory.trace_r if trajectory.trace_r > 0 else None,
        )
    if from_iter is not None:
        j_inf = trajectory.tail_mean(from_iter, to_iter)
    else:
        tail = int(tail)
        if tail < 1 or tail > len(trajectory):
            raise raise_if.StructureError(
                f"tail has to be in [1, {len(trajectory)}]. Given {tail}."
            )
        j_inf = float(np.mean(trajectory.j[-tail:]))

    return _steady_state_report(
        trajectory.j_min,
        j_inf - trajectory.j_min,
        trajectory.mu,
        trajectory.trace_r,
        trajectory.k_norm2,
        RECURSION_LIMIT,
    )
