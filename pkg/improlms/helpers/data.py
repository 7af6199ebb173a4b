"""improlms/improlms/helpers/data.py.

Read-only arrays, a small cache for values computed from immutable
objects and the namedtuples returned by improlms functions.
"""

from collections import namedtuple
from functools import wraps

import numpy as np

from improlms._base import ImproLmsBase


def make_readonly_array(array, dtype=None, copy=True):
    """Contiguous np.ndarray with the writeable flag switched off. improlms
    objects are immutable after construction and hold their arrays this way.

    Parameters
    ------------
    array: array-like object
    dtype: np.dtype
      Which dtype to use for the array
    copy: bool
      Default is True. copy if True.

    Returns
    ------------
    readonly: np.ndarray
    """
    if array is None:
        array = []
    readonly = np.ascontiguousarray(array, dtype=dtype)
    if copy:
        readonly = readonly.copy()
    readonly.flags.writeable = False

    return readonly


class ComputedData(ImproLmsBase):
    """Values computed from an immutable helpee, keyed by the name of the
    helpee's method that computes them. The helpee holds an instance as
    `_computed`.
    """

    __slots__ = ("_saved",)

    def __init__(self):
        self._saved = dict()

    @staticmethod
    def compute_once(func):
        """Decorator for argument-free methods of a helpee. Returns the saved
        value if there is one, else computes and saves. Arrays are saved
        read-only.

        Parameters
        -----------
        func: callable
        """

        @wraps(func)
        def compute_or_return_saved(self):
            saved = self._computed._saved.get(func.__name__, None)
            if saved is not None:
                return saved

            computed = func(self)
            if isinstance(computed, np.ndarray):
                computed.flags.writeable = False
            self._computed._saved[func.__name__] = computed

            return computed

        return compute_or_return_saved


EigenPairs = namedtuple("EigenPairs", ["values", "vectors"])
EigenPairs.__doc__ = """
namedtuple to hold a hermitian eigendecomposition M = Q diag(values) Q^H.
"""
EigenPairs.values.__doc__ = """`(n,) np.ndarray`
    real eigenvalues, descending. Field number 0"""
EigenPairs.vectors.__doc__ = """`(n, n) np.ndarray`
    unitary Q, column i belongs to values[i]. Field number 1"""

TakagiPairs = namedtuple("TakagiPairs", ["vectors", "sigma"])
TakagiPairs.__doc__ = """
namedtuple to hold a Takagi factorization C = Q diag(sigma) Q^T.
"""
TakagiPairs.vectors.__doc__ = """`(n, n) np.ndarray`
    unitary Q. Field number 0"""
TakagiPairs.sigma.__doc__ = """`(n,) np.ndarray`
    nonnegative, descending. Field number 1"""

ModeReport = namedtuple(
    "ModeReport", ["modes", "taus", "taus_approx", "divergent"]
)
ModeReport.__doc__ = """
namedtuple to hold convergence modes of the mean weight error vector.
`taus[i]` is NaN where `divergent[i]` is True.
"""

OrthogonalityResidual = namedtuple("OrthogonalityResidual", ["r1", "r2"])
OrthogonalityResidual.__doc__ = """
namedtuple to hold ||avg x e_o*|| (r1) and ||avg x e_o - k|| (r2).
"""

TailEstimate = namedtuple("TailEstimate", ["mean", "stderr"])
TailEstimate.__doc__ = """
namedtuple to hold window mean of a learning curve and its standard error.
"""

StepSizeReport = namedtuple(
    "StepSizeReport",
    [
        "lambda_max",
        "trace_r",
        "mean_bound",
        "mse_bound",
        "time_constants",
        "case_bound",
        "case",
        "mu",
    ],
)
StepSizeReport.__doc__ = """
namedtuple to hold step size bounds of a set of second order statistics.
`case_bound` and `case` are None unless the statistics have one of the
closed form shapes. `time_constants` are 1 / (mu lambda_i) at `mu`, or
1 / lambda_i if `mu` is None.
"""

SteadyStateReport = namedtuple(
    "SteadyStateReport",
    [
        "j_inf",
        "j_ex_inf",
        "misadjustment",
        "misadjustment_small_mu",
        "source",
        "j_min",
        "mu",
    ],
)
SteadyStateReport.__doc__ = """
namedtuple to hold a steady state MSE prediction and where it came from.
`source` is one of {"GeneralFormula", "CaseAClosedForm", "CaseBClosedForm",
"RecursionLimit"}.
"""
