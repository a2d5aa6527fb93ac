"""Eigensystem of the stride-3 stripe matrix for orders n = 3p.

Everything is closed form. The eigenvalues are 2*cos(3*k*pi/(n+3)), each
with multiplicity 3 (one copy per residue class). The diagonalizing
transform is assembled from second-kind Chebyshev values: column j of P
carries U-values of the eigenvalue with index ceil(j/3) in the rows of j's
residue class, with the degree ascending for odd eigenvalue indices and
descending for even ones. The rows of P^-1 carry the same ascending
U-values scaled by the signed normalization constants; the sign exactly
absorbs the degree reversal, since U_{p-1-r} = (-1)^(k+1) * U_r at the
k-th eigenvalue.

Two conventions for the normalization constants are kept side by side:

* ``h_canonical``: 3*(4 - lambda_k^2)/(2n+6), always positive, the weight
  that makes the Chebyshev vector system orthonormal.
* ``h_signed``: (-1)^(k+1) times the canonical value, stated for p even as
  a single expression and for p odd as a three-branch piecewise form whose
  index arithmetic is kept literal (the reflected eigenvalue satisfies
  lambda_j^2 = 4 - lambda_k^2, which the tests assert rather than assume).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .chebyshev import cheb_u_sequence
from .core import DenseRealMatrix

__all__ = [
    "Spectrum",
    "TransformPair",
    "eigenvalues",
    "norm_constants",
    "build_P",
    "build_Pinv",
    "transform_pair",
    "jordan_diag",
    "reconstruct",
]


def _block_order(n: int) -> int:
    if n < 3 or n % 3:
        raise ValueError(f"order must be a positive multiple of 3, got {n}")
    return n // 3


def _lambda_values(n: int) -> tuple[float, ...]:
    p = n // 3
    return tuple(2.0 * math.cos(3 * k * math.pi / (n + 3)) for k in range(1, p + 1))


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues (strictly decreasing, each of multiplicity 3) and weights."""

    n: int
    p: int
    lambdas: tuple[float, ...]
    h_canonical: tuple[float, ...]
    h_signed: tuple[float, ...]
    multiplicity: int = 3


@dataclass(frozen=True)
class TransformPair:
    """The diagonalizing matrix and its explicit closed-form inverse."""

    P: DenseRealMatrix
    Pinv: DenseRealMatrix


def norm_constants(n: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Both normalization-constant conventions, (canonical, signed).

    The signed values follow one expression for p = n/3 even and a
    three-branch piecewise form for p odd; either way they must equal
    (-1)^(k+1) times the canonical constants, which the tests enforce.
    """
    p = _block_order(n)
    lams = _lambda_values(n)
    scale = 2 * n + 6
    canonical = tuple(3.0 * (4.0 - lam * lam) / scale for lam in lams)

    signed = []
    if p % 2 == 0:
        for k in range(1, p + 1):
            lam = lams[k - 1]
            signed.append(3.0 * (-1.0) ** k * (lam * lam - 4.0) / scale)
    else:
        for k in range(1, p + 1):
            sign = (-1.0) ** (k + 1)
            if k <= (n - 3) // 6:
                lam = lams[(n + 6 * k + 3) // 6 - 1]
                signed.append(3.0 * sign * lam * lam / scale)
            elif k == (n + 3) // 6:
                signed.append(6.0 * sign / (n + 3))
            else:
                lam = lams[(n - 2 * k + 3) // 2 - 1]
                signed.append(3.0 * sign * lam * lam / scale)
    return canonical, tuple(signed)


def eigenvalues(n: int) -> Spectrum:
    """Full spectrum of the order-n stride-3 stripe matrix (n = 3p)."""
    p = _block_order(n)
    canonical, signed = norm_constants(n)
    return Spectrum(n=n, p=p, lambdas=_lambda_values(n), h_canonical=canonical, h_signed=signed)


def _u_tables(spec: Spectrum) -> list[list[float]]:
    """U_0..U_{p-1} evaluated at every lambda_k / 2."""
    return [cheb_u_sequence(spec.p - 1, lam / 2.0) for lam in spec.lambdas]


def build_P(n: int) -> DenseRealMatrix:
    """Assemble the diagonalizing matrix column by column.

    Column j is supported on rows congruent to j mod 3 and holds the
    Chebyshev values of eigenvalue ceil(j/3): ascending degrees for odd
    eigenvalue indices, descending for even ones.
    """
    spec = eigenvalues(n)
    p = spec.p
    tables = _u_tables(spec)
    rows = [[0.0] * n for _ in range(n)]
    for j in range(1, n + 1):
        k = (j + 2) // 3
        s = (j - 1) % 3
        table = tables[k - 1]
        ascending = k % 2 == 1
        for c in range(p):
            value = table[c] if ascending else table[p - 1 - c]
            rows[3 * c + s][j - 1] = value
    return DenseRealMatrix(rows)


def build_Pinv(n: int) -> DenseRealMatrix:
    """Closed-form inverse of the diagonalizing matrix.

    Row i belongs to eigenvalue ceil(i/3) and carries its signed weight
    times ascending Chebyshev degrees along columns of i's residue class.
    The sign in the weight is what inverts the descending columns of P.
    """
    spec = eigenvalues(n)
    p = spec.p
    tables = _u_tables(spec)
    rows = [[0.0] * n for _ in range(n)]
    for i in range(1, n + 1):
        k = (i + 2) // 3
        s = (i - 1) % 3
        weight = spec.h_signed[k - 1]
        table = tables[k - 1]
        row = rows[i - 1]
        for c in range(p):
            row[3 * c + s] = weight * table[c]
    return DenseRealMatrix(rows)


def transform_pair(n: int) -> TransformPair:
    return TransformPair(P=build_P(n), Pinv=build_Pinv(n))


def jordan_diag(n: int) -> DenseRealMatrix:
    """diag(l_1, l_1, l_1, ..., l_p, l_p, l_p).

    The matrix is real symmetric, so the similarity target is strictly
    diagonal; the repeated eigenvalues never produce off-diagonal cells.
    """
    spec = eigenvalues(n)
    rows = [[0.0] * n for _ in range(n)]
    for t in range(n):
        rows[t][t] = spec.lambdas[t // 3]
    return DenseRealMatrix(rows)


def reconstruct(n: int) -> DenseRealMatrix:
    """P * J * P^-1; must reproduce the stripe matrix itself."""
    pair = transform_pair(n)
    return pair.P @ jordan_diag(n) @ pair.Pinv
