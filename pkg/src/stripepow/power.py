"""Closed-form and exact integer powers of stripe matrices.

The closed form exists for stride 3 and order n = 3p. An entry (i, j) is
nonzero only when i and j share a residue class mod 3; the delta selector
recovers the class representative in {1, 2, 3} and maps (i, j) onto block
positions a = (i - delta)/3 and b = (j - delta)/3. Two equivalent
evaluations are provided:

* ``entry_power_canonical`` sums lambda_k^m * h_canonical_k * U_a * U_b over
  all eigenvalues in ascending k. This is the production path.
* ``entry_power_signed`` keeps the signed weights and pairs consecutive
  eigenvalue indices, evaluating the even-index factor at the reversed
  degree (n - sigma)/3 instead of a; for odd p a lone unpaired term remains.
  The reversal and the sign cancel, so both forms agree, which the tests
  assert rather than assume.

Sums are accumulated in fixed ascending eigenvalue order, so repeated runs
are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chebyshev import cheb_u_sequence
from .core import (
    DenseIntMatrix,
    DenseRealMatrix,
    StripeMatrix,
    dense_pow_binary,
    recompose,
    residue_decompose,
)
from .spectral import Spectrum, eigenvalues

__all__ = [
    "PowerQuery",
    "RoundingFailure",
    "delta_selector",
    "sigma_selector",
    "entry_power_signed",
    "entry_power_canonical",
    "matrix_power_closed",
    "matrix_power_blocked",
    "round_to_int",
]


class RoundingFailure(ArithmeticError):
    """A floating matrix strayed farther than the tolerance from integers.

    Signals numerical breakdown of the closed form (entries approaching
    2**53 lose integer resolution). Carries the worst offender.
    """

    def __init__(self, i: int, j: int, residual: float) -> None:
        super().__init__(
            f"entry ({i}, {j}) is {residual:.6e} from the nearest integer"
        )
        self.i = i
        self.j = j
        self.residual = residual


@dataclass(frozen=True)
class PowerQuery:
    """A single-entry power request: ({H^m})_{i,j} with 1-based indices."""

    n: int
    m: int
    i: int
    j: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"order must be at least 1, got {self.n}")
        if self.m < 0:
            raise ValueError(f"exponent must be nonnegative, got {self.m}")
        for idx in (self.i, self.j):
            if not 1 <= idx <= self.n:
                raise ValueError(
                    f"index {idx} out of range for order {self.n} (indices are 1-based)"
                )


def delta_selector(i: int, j: int) -> int:
    """Residue-class representative in {1, 2, 3} keyed on (i + j) mod 3."""
    if i < 1 or j < 1:
        raise ValueError("indices must be at least 1")
    r = (i + j) % 3
    if r == 2:
        return 1
    if r == 1:
        return 2
    return 3


def sigma_selector(i: int, j: int) -> int:
    """Reversed-degree selector: i+2, i+1 or i keyed on (i + j) mod 3."""
    if i < 1 or j < 1:
        raise ValueError("indices must be at least 1")
    r = (i + j) % 3
    if r == 2:
        return i + 2
    if r == 1:
        return i + 1
    return i


def _require_closed_form(n: int) -> int:
    if n < 3 or n % 3:
        raise ValueError(
            f"closed form needs a positive multiple of 3, got order {n}"
        )
    return n // 3


def _block_positions(q: PowerQuery) -> tuple[int, int]:
    delta = delta_selector(q.i, q.j)
    return (q.i - delta) // 3, (q.j - delta) // 3


def entry_power_signed(q: PowerQuery) -> float:
    """Entry of H^m from the paired, signed-weight form of the closed sum."""
    p = _require_closed_form(q.n)
    if (q.i - q.j) % 3:
        return 0.0
    spec = eigenvalues(q.n)
    a, b = _block_positions(q)
    rev = (q.n - sigma_selector(q.i, q.j)) // 3
    tables = [cheb_u_sequence(p - 1, lam / 2.0) for lam in spec.lambdas]
    acc = 0.0
    for k in range(1, p // 2 + 1):
        lam_odd = spec.lambdas[2 * k - 2]
        lam_even = spec.lambdas[2 * k - 1]
        t_odd = tables[2 * k - 2]
        t_even = tables[2 * k - 1]
        acc += lam_odd**q.m * spec.h_signed[2 * k - 2] * t_odd[a] * t_odd[b]
        acc += lam_even**q.m * spec.h_signed[2 * k - 1] * t_even[rev] * t_even[b]
    if p % 2:
        lam_last = spec.lambdas[p - 1]
        t_last = tables[p - 1]
        acc += lam_last**q.m * spec.h_signed[p - 1] * t_last[a] * t_last[b]
    return acc


def _closed_entry(weights: list[float], tables: list[list[float]], a: int, b: int) -> float:
    acc = 0.0
    for w, table in zip(weights, tables):
        # group the U-product first so the sum is bitwise symmetric in (a, b)
        acc += w * (table[a] * table[b])
    return acc


def _closed_weights(spec: Spectrum, m: int) -> list[float]:
    return [lam**m * h for lam, h in zip(spec.lambdas, spec.h_canonical)]


def entry_power_canonical(q: PowerQuery) -> float:
    """Entry of H^m from the plain orthonormal sum; exact 0 off the classes."""
    p = _require_closed_form(q.n)
    if (q.i - q.j) % 3:
        return 0.0
    spec = eigenvalues(q.n)
    a, b = _block_positions(q)
    tables = [cheb_u_sequence(p - 1, lam / 2.0) for lam in spec.lambdas]
    return _closed_entry(_closed_weights(spec, m=q.m), tables, a, b)


def matrix_power_closed(n: int, m: int) -> DenseRealMatrix:
    """Full H^m from the canonical closed form.

    All three residue classes share one p x p block of values, evaluated
    once entry by entry (same accumulation as entry_power_canonical, so the
    matrix is exactly symmetric and exactly zero off the classes).
    """
    p = _require_closed_form(n)
    if m < 0:
        raise ValueError(f"exponent must be nonnegative, got {m}")
    spec = eigenvalues(n)
    tables = [cheb_u_sequence(p - 1, lam / 2.0) for lam in spec.lambdas]
    weights = _closed_weights(spec, m)
    block = [
        [_closed_entry(weights, tables, a, b) for b in range(p)] for a in range(p)
    ]
    rows = [[0.0] * n for _ in range(n)]
    for s in range(3):
        for a in range(p):
            target = rows[3 * a + s]
            source = block[a]
            for b in range(p):
                target[3 * b + s] = source[b]
    return DenseRealMatrix(rows)


def matrix_power_blocked(stripe: StripeMatrix, m: int) -> DenseIntMatrix:
    """Exact H^m through the residue-class decoupling (any order, any stride)."""
    if m < 0:
        raise ValueError(f"exponent must be nonnegative, got {m}")
    decomp = residue_decompose(stripe)
    powered = [dense_pow_binary(block, m) for block in decomp.tridiagonal_blocks()]
    return recompose(decomp, powered)


def round_to_int(matrix: DenseRealMatrix, tol: float) -> DenseIntMatrix:
    """Round every entry to the nearest integer, or fail loudly.

    Raises RoundingFailure carrying the worst offending (i, j, residual)
    when any entry sits farther than tol from an integer.
    """
    if not 0.0 < tol < 0.5:
        raise ValueError(f"tolerance must lie in (0, 0.5), got {tol}")
    worst = -1.0
    worst_at = (0, 0)
    rows = []
    for i, row in enumerate(matrix.row_lists(), start=1):
        line = []
        for j, v in enumerate(row, start=1):
            r = round(v)
            residual = abs(v - r)
            if residual > worst:
                worst = residual
                worst_at = (i, j)
            line.append(r)
        rows.append(line)
    if worst > tol:
        raise RoundingFailure(worst_at[0], worst_at[1], worst)
    return DenseIntMatrix(rows)
