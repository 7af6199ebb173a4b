"""improlms/improlms/helpers/raise_if.py.

Exceptions of improlms and a collection of guard functions that raise them
with consistent messages.
"""
import numpy as np


class ImproLmsError(Exception):
    """Root of all improlms errors."""


class StructureError(ImproLmsError, ValueError):
    """Wrong shape, length, symmetry or non-finite entries."""


class NumericalError(ImproLmsError, ArithmeticError):
    """A numerical routine did not reach its accuracy contract.

    Parameters
    ----------
    message: str
    residual: float
      Residual that violated the contract. Optional.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class RankError(NumericalError):
    """Singular or indefinite matrix.

    Parameters
    ----------
    message: str
    smallest_eigenvalue: float
    """

    def __init__(self, message, smallest_eigenvalue=None):
        super().__init__(message)
        self.smallest_eigenvalue = smallest_eigenvalue


class AggregateError(NumericalError):
    """Every run of an ensemble diverged."""


class DegenerateSignalError(ImproLmsError, ValueError):
    """Signal or matrix carries no power, e.g. r_x = 0 or tr[R] = 0."""


class InstabilityError(ImproLmsError, ArithmeticError):
    """Step size at or beyond a stability bound.

    Parameters
    ----------
    message: str
    bound: float
      The violated upper bound for the step size.
    """

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class ConfigError(ImproLmsError, ValueError):
    """Invalid experiment configuration.

    Parameters
    ----------
    message: str
    path: str
      Dotted path to the offending field, e.g. `scenario.input.rho_uv`.
    """

    def __init__(self, message, path=""):
        if path:
            message = f"{path}: {message}"
        super().__init__(message)
        self.path = path


def not_finite(arr, name="array"):
    """Raises StructureError if any entry is NaN or Inf.

    Parameters
    ----------
    arr: np.ndarray
    name: str

    Returns
    -------
    None
    """
    if not np.all(np.isfinite(arr)):
        raise StructureError(f"{name} contains non-finite entries.")


def not_square(arr, name="matrix"):
    """Raises StructureError unless arr is a (n, n) matrix with n >= 1.

    Parameters
    ----------
    arr: np.ndarray
    name: str

    Returns
    -------
    None
    """
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise StructureError(
            f"{name} should be a non-empty square matrix. "
            f"Given shape: {arr.shape}"
        )


def not_hermitian(arr, tolerance, name="matrix"):
    """Raises StructureError if max|M - M^H| > tolerance * max|M|.

    Parameters
    ----------
    arr: (n, n) np.ndarray
    tolerance: float
    name: str

    Returns
    -------
    None
    """
    not_square(arr, name)
    # not_square guarantees a non-empty matrix
    deviation = float(np.max(np.abs(arr - arr.conj().T)))
    if deviation > tolerance * float(np.max(np.abs(arr))):
        raise StructureError(
            f"{name} is not hermitian. max|M - M^H| = {deviation:.3e}"
        )


def not_symmetric(arr, tolerance, name="matrix"):
    """Raises StructureError if max|M - M^T| > tolerance * max|M|.

    Parameters
    ----------
    arr: (n, n) np.ndarray
    tolerance: float
    name: str

    Returns
    -------
    None
    """
    not_square(arr, name)
    deviation = float(np.max(np.abs(arr - arr.T)))
    if deviation > tolerance * float(np.max(np.abs(arr))):
        raise StructureError(
            f"{name} is not symmetric. max|M - M^T| = {deviation:.3e}"
        )


def length_mismatch(expected, given, name="vector"):
    """Raises StructureError if lengths differ.

    Parameters
    ----------
    expected: int
    given: int
    name: str

    Returns
    -------
    None
    """
    if int(expected) != int(given):
        raise StructureError(
            f"Invalid {name} length ({given}). Expected length is "
            f"({expected})."
        )
