"""improlms/improlms/settings.py.

Global variables/constants that's used throughout `improlms`.
Values are module attributes, so they can be adjusted at runtime, for example
`improlms.settings.NTHREADS = 4`.
"""

TOLERANCE = 1e-10

# structural checks: max|M - M^H| <= HERMITIAN_TOLERANCE * max|M|
HERMITIAN_TOLERANCE = 1e-12
SYMMETRIC_TOLERANCE = 1e-12

# factorization / solve acceptance
EIG_TOLERANCE = 1e-10
TAKAGI_TOLERANCE = 1e-9
SOLVE_TOLERANCE = 1e-10

# smallest eigenvalue must exceed RANK_TOLERANCE * largest eigenvalue
RANK_TOLERANCE = 1e-12

# smallest eigenvalue of augmented covariance may dip this far below zero
PSD_TOLERANCE = 1e-10

# V(n) may drift this far from hermitian before symmetrization complains
DRIFT_TOLERANCE = 1e-10

COMPLEX_DTYPE = "complex128"
FLOAT_DTYPE = "float64"
INT_DTYPE = "int64"

# Monte Carlo workers. Results do not depend on this value.
NTHREADS = 1

# runs per Monte Carlo work unit. Changing this changes the summation order.
MC_CHUNK_SIZE = 512

CSV_SIGNIFICANT_DIGITS = 6

# iteration at which reports read off the learning curves
READOUT_ITERATION = 100
