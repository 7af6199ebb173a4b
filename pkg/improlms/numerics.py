"""improlms/improlms/numerics.py.

Dense complex vector / matrix kernel. Hermitian eigendecomposition, Takagi
factorization of complex symmetric matrices and hermitian linear solve.
Matrices here are tiny (N <= ~16) and well scaled, so accuracy is checked
after every factorization instead of trusting the backend silently.
"""

import numpy as np
import scipy.linalg

from improlms import settings
from improlms.helpers import raise_if
from improlms.helpers.data import EigenPairs, TakagiPairs, make_readonly_array
from improlms.utils import arr, log


def as_vector(values, length=None, name="vector"):
    """Validated, read-only complex vector (finite, 1D, non-empty).

    Parameters
    ----------
    values: array-like
    length: int
      (Optional) expected length.
    name: str

    Returns
    -------
    vector: (n,) np.ndarray
    """
    return arr.complex_vector(values, length=length, name=name)


def as_matrix(values, hermitian=False, symmetric=False, name="matrix"):
    """Validated, read-only complex matrix. Structural hints are checked
    within `settings.HERMITIAN_TOLERANCE` / `settings.SYMMETRIC_TOLERANCE`
    relative to max|M| and then enforced exactly.

    Parameters
    ----------
    values: (n, m) array-like
    hermitian: bool
    symmetric: bool
    name: str

    Returns
    -------
    matrix: (n, m) np.ndarray
    """
    matrix = np.array(values, dtype=settings.COMPLEX_DTYPE, copy=True)
    if matrix.ndim != 2 or matrix.size == 0:
        raise raise_if.StructureError(
            f"{name} should be a non-empty 2D array. Given shape: "
            f"{matrix.shape}"
        )
    raise_if.not_finite(matrix, name)

    if hermitian:
        raise_if.not_hermitian(matrix, settings.HERMITIAN_TOLERANCE, name)
        matrix = arr.hermitian_part(matrix)
    if symmetric:
        raise_if.not_symmetric(matrix, settings.SYMMETRIC_TOLERANCE, name)
        matrix = arr.symmetric_part(matrix)

    return make_readonly_array(matrix, copy=False)


def hermitian_eig(matrix):
    """Eigendecomposition of a hermitian matrix, M = Q diag(values) Q^H, with
    eigenvalues sorted descending. Degenerate eigenvalues get an arbitrary
    orthonormal basis.

    Parameters
    ----------
    matrix: (n, n) array-like
      hermitian within `settings.HERMITIAN_TOLERANCE`.

    Returns
    -------
    eigen_pairs: EigenPairs
    """
    matrix = as_matrix(matrix, hermitian=True, name="hermitian_eig input")

    try:
        values, vectors = np.linalg.eigh(matrix)
    except np.linalg.LinAlgError as err:
        raise raise_if.NumericalError(
            f"hermitian_eig did not converge: {err}"
        ) from err

    # eigh sorts ascending
    values = values[::-1].copy()
    vectors = vectors[:, ::-1].copy()

    scale = arr.max_abs(matrix)
    tolerance = settings.EIG_TOLERANCE * max(scale, np.finfo(float).tiny)
    reconstructed = (vectors * values) @ vectors.conj().T
    residual = arr.max_abs(reconstructed - matrix)
    if residual > tolerance:
        raise raise_if.NumericalError(
            f"hermitian_eig reconstruction residual ({residual:.3e}) exceeds "
            f"tolerance ({tolerance:.3e}).",
            residual=residual,
        )

    return EigenPairs(
        make_readonly_array(values, settings.FLOAT_DTYPE, copy=False),
        make_readonly_array(vectors, copy=False),
    )


def _degenerate_groups(sigma, tolerance):
    """Groups indices of descending values whose neighbors are closer than
    tolerance.
    """
    groups = [[0]]
    for i in range(1, len(sigma)):
        if sigma[i - 1] - sigma[i] <= tolerance:
            groups[-1].append(i)
        else:
            groups.append([i])

    return groups


def takagi_factorize(matrix):
    """Takagi factorization of a complex symmetric matrix,
    C = Q diag(sigma) Q^T, with unitary Q and nonnegative sigma sorted
    descending. sigma are the singular values of C.

    Uses the SVD C = V S W^H. For each block of (numerically) equal singular
    values, Z = V_b^T W_b is unitary and symmetric, and V_b sqrt(Z)^* is a
    Takagi basis of that block.

    Parameters
    ----------
    matrix: (n, n) array-like
      complex symmetric within `settings.SYMMETRIC_TOLERANCE`.

    Returns
    -------
    takagi_pairs: TakagiPairs
    """
    matrix = as_matrix(matrix, symmetric=True, name="takagi_factorize input")
    scale = max(1.0, arr.max_abs(matrix))

    try:
        left, sigma, right_h = np.linalg.svd(matrix)
    except np.linalg.LinAlgError as err:
        raise raise_if.NumericalError(
            f"takagi_factorize SVD did not converge: {err}"
        ) from err

    right = right_h.conj().T
    blocks = []
    for group in _degenerate_groups(sigma, settings.TAKAGI_TOLERANCE * scale):
        z = left[:, group].T @ right[:, group]
        blocks.append(scipy.linalg.sqrtm(z))

    vectors = left @ scipy.linalg.block_diag(*blocks).conj()

    residual = arr.max_abs((vectors * sigma) @ vectors.T - matrix)
    if residual > settings.TAKAGI_TOLERANCE * scale:
        raise raise_if.NumericalError(
            f"takagi_factorize reconstruction residual ({residual:.3e}) "
            f"exceeds tolerance ({settings.TAKAGI_TOLERANCE * scale:.3e}).",
            residual=residual,
        )

    log.debug(
        "numerics.takagi_factorize() -",
        f"{len(blocks)} singular value block(s), residual {residual:.2e}",
    )

    return TakagiPairs(
        make_readonly_array(vectors, copy=False),
        make_readonly_array(sigma, settings.FLOAT_DTYPE, copy=False),
    )


def solve_hermitian(matrix, rhs):
    """Solves R x = b for hermitian positive definite R.

    Parameters
    ----------
    matrix: (n, n) array-like
      hermitian positive definite. Smallest eigenvalue has to exceed
      `settings.RANK_TOLERANCE` times the largest.
    rhs: (n,) array-like

    Returns
    -------
    solution: (n,) np.ndarray
    """
    matrix = as_matrix(matrix, hermitian=True, name="solve_hermitian matrix")
    rhs = as_vector(rhs, length=matrix.shape[0], name="solve_hermitian rhs")

    eigenvalues = scipy.linalg.eigvalsh(matrix)
    smallest, largest = float(eigenvalues[0]), float(eigenvalues[-1])
    if largest <= 0.0 or smallest <= settings.RANK_TOLERANCE * largest:
        raise raise_if.RankError(
            "solve_hermitian requires a positive definite matrix. "
            f"Smallest eigenvalue: {smallest:.3e}, largest: {largest:.3e}",
            smallest_eigenvalue=smallest,
        )

    factor = scipy.linalg.cho_factor(matrix, lower=True)
    solution = scipy.linalg.cho_solve(factor, rhs)

    rhs_norm = float(np.linalg.norm(rhs))
    residual = float(np.linalg.norm(matrix @ solution - rhs))
    if residual > settings.SOLVE_TOLERANCE * rhs_norm:
        # one step of iterative refinement
        solution = solution + scipy.linalg.cho_solve(
            factor, rhs - matrix @ solution
        )
        residual = float(np.linalg.norm(matrix @ solution - rhs))
        if residual > settings.SOLVE_TOLERANCE * rhs_norm:
            raise raise_if.NumericalError(
                f"solve_hermitian residual ({residual:.3e}) exceeds "
                f"tolerance ({settings.SOLVE_TOLERANCE * rhs_norm:.3e}).",
                residual=residual,
            )

    return make_readonly_array(solution, settings.COMPLEX_DTYPE, copy=False)
