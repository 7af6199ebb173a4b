"""improlms/improlms/utils/arr.py.

Useful functions for complex vector / matrix bookkeeping. Named `arr`, since
`array` is python library and it sounds funny.
"""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from improlms import settings
from improlms.helpers import raise_if


def make_c_contiguous(array, dtype=None):
    """Make given array like object a c contiguous np.ndarray. dtype is
    optional. If None is given, just returns None.

    Parameters
    -----------
    array: array-like
    dtype: type or str
      (Optional) `numpy` interpretable type or str, describing type.

    Returns
    --------
    c_contiguous_array: np.ndarray
    """
    if array is None:
        return None

    if isinstance(array, np.ndarray):
        if array.flags.c_contiguous:
            if dtype is not None and array.dtype != dtype:
                return array.astype(dtype)

            return array

    if dtype:
        return np.ascontiguousarray(array, dtype=dtype)

    else:
        return np.ascontiguousarray(array)


def is_shape(arr, shape, strict=False):
    """Checks if arr matches given shape. shape can have negative numbers.

    Parameters
    -----------
    arr: np.ndarray
    shape: tuple
    strict: bool
      raises StructureError if shapes do not match

    Returns
    --------
    matches: bool
    """
    arr = np.asanyarray(arr)

    if arr.ndim != len(shape):
        if strict:
            raise raise_if.StructureError(
                f"array should be {len(shape)}D, but is {arr.ndim}D"
            )
        return False

    for i, (a, s) in enumerate(zip(arr.shape, shape)):
        if s < 0:
            continue
        if a != s:
            if strict:
                raise raise_if.StructureError(
                    f"array should have {s} shape in {i}-D"
                )
            return False

    return True


def complex_vector(values, length=None, name="vector"):
    """Returns a read-only, c contiguous complex vector. Checks that it is
    1D, non-empty and finite. If length is given, checks that too.

    Parameters
    ----------
    values: array-like
    length: int
      (Optional) expected length.
    name: str
      Used in error messages.

    Returns
    -------
    vector: (n,) np.ndarray
    """
    vector = np.array(values, dtype=settings.COMPLEX_DTYPE, copy=True)
    if vector.ndim != 1 or vector.size < 1:
        raise raise_if.StructureError(
            f"{name} should be a non-empty 1D array. Given shape: "
            f"{vector.shape}"
        )
    if length is not None:
        raise_if.length_mismatch(length, vector.size, name)
    raise_if.not_finite(vector, name)
    vector.flags.writeable = False

    return vector


def max_abs(arr):
    """Largest entry magnitude, 0 for empty arrays.

    Parameters
    ----------
    arr: array-like

    Returns
    -------
    max_abs: float
    """
    arr = np.asanyarray(arr)
    if arr.size == 0:
        return 0.0
    return float(np.max(np.abs(arr)))


def hermitian_part(arr):
    """(M + M^H) / 2.

    Parameters
    ----------
    arr: (n, n) np.ndarray

    Returns
    -------
    hermitian: (n, n) np.ndarray
    """
    return 0.5 * (arr + arr.conj().T)


def symmetric_part(arr):
    """(M + M^T) / 2.

    Parameters
    ----------
    arr: (n, n) np.ndarray

    Returns
    -------
    symmetric: (n, n) np.ndarray
    """
    return 0.5 * (arr + arr.T)


def delay_line(samples, n_taps):
    """Regressors of a tapped delay line. Row n is
    `[s(n + n_taps - 1), s(n + n_taps - 2), ..., s(n)]`, i.e., the newest
    sample first. The first row is the first fully populated regressor.

    Parameters
    ----------
    samples: (t,) array-like
    n_taps: int

    Returns
    -------
    regressors: (t - n_taps + 1, n_taps) np.ndarray
    """
    samples = make_c_contiguous(samples)
    if samples.ndim != 1 or samples.size < n_taps:
        raise raise_if.StructureError(
            f"delay_line needs at least {n_taps} samples in a 1D array."
        )

    return np.ascontiguousarray(
        sliding_window_view(samples, n_taps)[:, ::-1]
    )
