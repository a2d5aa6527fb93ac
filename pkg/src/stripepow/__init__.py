"""Analytic integer powers of symmetric (0,1) stride-banded matrices.

The n x n symmetric matrix with ones exactly at |i - j| = d is raised to
nonnegative integer powers three ways: a second-kind-Chebyshev spectral
closed form (d = 3, n a multiple of 3), an exact residue-class block
decomposition (any d), and a big-integer binary-exponentiation oracle that
the other paths are verified against.
"""

from .chebyshev import (
    charpoly_value,
    cheb_u_eval,
    cheb_u_roots,
    cheb_u_sequence,
    delta_rec,
)
from .core import (
    BlockDecomposition,
    DenseIntMatrix,
    DenseRealMatrix,
    StripeMatrix,
    dense_det_shifted,
    dense_mul,
    dense_pow_binary,
    make_stripe,
    max_abs_diff,
    recompose,
    residue_decompose,
    to_dense,
)
from .power import (
    PowerQuery,
    RoundingFailure,
    delta_selector,
    entry_power_canonical,
    entry_power_signed,
    matrix_power_blocked,
    matrix_power_closed,
    round_to_int,
    sigma_selector,
)
from .spectral import (
    Spectrum,
    TransformPair,
    build_P,
    build_Pinv,
    eigenvalues,
    jordan_diag,
    norm_constants,
    reconstruct,
    transform_pair,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BlockDecomposition",
    "DenseIntMatrix",
    "DenseRealMatrix",
    "PowerQuery",
    "RoundingFailure",
    "Spectrum",
    "StripeMatrix",
    "TransformPair",
    "build_P",
    "build_Pinv",
    "charpoly_value",
    "cheb_u_eval",
    "cheb_u_roots",
    "cheb_u_sequence",
    "delta_rec",
    "delta_selector",
    "dense_det_shifted",
    "dense_mul",
    "dense_pow_binary",
    "eigenvalues",
    "entry_power_canonical",
    "entry_power_signed",
    "jordan_diag",
    "make_stripe",
    "matrix_power_blocked",
    "matrix_power_closed",
    "max_abs_diff",
    "norm_constants",
    "recompose",
    "reconstruct",
    "residue_decompose",
    "round_to_int",
    "sigma_selector",
    "to_dense",
    "transform_pair",
]
