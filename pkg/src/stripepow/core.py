"""Matrix representations and the exact arithmetic engine.

The implicit stripe form stores only the order and the stride. Dense integer
matrices carry Python ints, so repeated multiplication never overflows; dense
real matrices carry the floating output of the spectral path. All public
indices are 1-based.

Every type here is immutable after construction and safe to share across
threads; every operation is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "StripeMatrix",
    "DenseIntMatrix",
    "DenseRealMatrix",
    "BlockDecomposition",
    "make_stripe",
    "to_dense",
    "residue_decompose",
    "recompose",
    "dense_mul",
    "dense_pow_binary",
    "dense_det_shifted",
    "max_abs_diff",
]


def _check_index(n: int, *indices: int) -> None:
    for k in indices:
        if not 1 <= k <= n:
            raise IndexError(f"index {k} out of range for order {n} (indices are 1-based)")


@dataclass(frozen=True)
class StripeMatrix:
    """Implicit n x n symmetric (0,1) matrix with ones exactly at |i - j| = d."""

    n: int
    d: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"order must be at least 1, got {self.n}")
        if self.d < 1:
            raise ValueError(f"stride must be at least 1, got {self.d}")

    def entry(self, i: int, j: int) -> int:
        """1-based entry query: 1 iff |i - j| equals the stride."""
        _check_index(self.n, i, j)
        return 1 if abs(i - j) == self.d else 0


def make_stripe(n: int, d: int = 3) -> StripeMatrix:
    """Build the implicit stride-banded matrix of order n."""
    return StripeMatrix(n, d)


class DenseIntMatrix:
    """Square row-major matrix of arbitrary-precision integers."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable[int]]) -> None:
        self._rows = tuple(tuple(row) for row in rows)
        n = len(self._rows)
        if any(len(row) != n for row in self._rows):
            raise ValueError("rows must form a square matrix")

    @classmethod
    def identity(cls, n: int) -> "DenseIntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self._rows)

    def entry(self, i: int, j: int) -> int:
        _check_index(self.n, i, j)
        return self._rows[i - 1][j - 1]

    def row_lists(self) -> list[list[int]]:
        """Copy of the entries as nested lists."""
        return [list(row) for row in self._rows]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DenseIntMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __matmul__(self, other: "DenseIntMatrix") -> "DenseIntMatrix":
        return dense_mul(self, other)

    def __repr__(self) -> str:
        return f"DenseIntMatrix(n={self.n})"


class DenseRealMatrix:
    """Square row-major matrix of finite doubles."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable[float]]) -> None:
        self._rows = tuple(tuple(float(v) for v in row) for row in rows)
        n = len(self._rows)
        for row in self._rows:
            if len(row) != n:
                raise ValueError("rows must form a square matrix")
            for v in row:
                if not math.isfinite(v):
                    raise ValueError("entries must be finite")

    @classmethod
    def identity(cls, n: int) -> "DenseRealMatrix":
        return cls([[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self._rows)

    def entry(self, i: int, j: int) -> float:
        _check_index(self.n, i, j)
        return self._rows[i - 1][j - 1]

    def row_lists(self) -> list[list[float]]:
        return [list(row) for row in self._rows]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DenseRealMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __matmul__(self, other: "DenseRealMatrix") -> "DenseRealMatrix":
        if not isinstance(other, DenseRealMatrix):
            return NotImplemented
        if self.n != other.n:
            raise ValueError(f"orders differ: {self.n} vs {other.n}")
        cols = list(zip(*other._rows))
        out = []
        for arow in self._rows:
            line = []
            for col in cols:
                acc = 0.0
                for a, b in zip(arow, col):
                    acc += a * b
                line.append(acc)
            out.append(line)
        return DenseRealMatrix(out)

    def __repr__(self) -> str:
        return f"DenseRealMatrix(n={self.n})"


@dataclass(frozen=True)
class BlockDecomposition:
    """Permutation similarity splitting a stride-d matrix into d tridiagonal blocks.

    Residue class r (r = 1..d) collects the original indices r, r + d,
    r + 2d, ...; within a class, consecutive indices differ by exactly the
    stride, so each diagonal block is the (0,1) tridiagonal matrix of the
    class size and everything off the blocks vanishes.
    """

    n: int
    d: int
    permutation: tuple[int, ...]
    blocks: tuple[int, ...]

    def original_index(self, r: int, a: int) -> int:
        """Original 1-based index of in-block position a (1-based) in class r."""
        return r + (a - 1) * self.d

    def tridiagonal_blocks(self) -> list[DenseIntMatrix]:
        """The (0,1) zero-diagonal tridiagonal block of each residue class."""
        return [_tridiagonal(p) for p in self.blocks]


def _tridiagonal(p: int) -> DenseIntMatrix:
    return DenseIntMatrix(
        [[1 if abs(i - j) == 1 else 0 for j in range(p)] for i in range(p)]
    )


def to_dense(stripe: StripeMatrix) -> DenseIntMatrix:
    """Materialize the stripe matrix as an explicit 0/1 integer matrix."""
    n, d = stripe.n, stripe.d
    return DenseIntMatrix(
        [[1 if abs(i - j) == d else 0 for j in range(n)] for i in range(n)]
    )


def residue_decompose(stripe: StripeMatrix) -> BlockDecomposition:
    """Group indices by residue class mod d, decoupling the stripe matrix."""
    groups = [list(range(r, stripe.n + 1, stripe.d)) for r in range(1, stripe.d + 1)]
    perm = tuple(i for group in groups for i in group)
    return BlockDecomposition(stripe.n, stripe.d, perm, tuple(len(g) for g in groups))


def recompose(
    decomp: BlockDecomposition, powered_blocks: Sequence[DenseIntMatrix]
) -> DenseIntMatrix:
    """Scatter per-block entries back to original index pairs.

    Entry (i, j) of the result is zero whenever i and j fall in different
    residue classes mod d.
    """
    if len(powered_blocks) != len(decomp.blocks):
        raise ValueError(
            f"expected {len(decomp.blocks)} blocks, got {len(powered_blocks)}"
        )
    for block, order in zip(powered_blocks, decomp.blocks):
        if block.n != order:
            raise ValueError(f"block order {block.n} does not match expected {order}")
    out = [[0] * decomp.n for _ in range(decomp.n)]
    for r, block in enumerate(powered_blocks, start=1):
        for a in range(block.n):
            target = out[r - 1 + a * decomp.d]
            source = block._rows[a]
            for b in range(block.n):
                v = source[b]
                if v:
                    target[r - 1 + b * decomp.d] = v
    return DenseIntMatrix(out)


def dense_mul(a: DenseIntMatrix, b: DenseIntMatrix) -> DenseIntMatrix:
    """Exact integer matrix product.

    Zero entries of both operands are skipped; powers of stripe matrices
    stay 2/3 sparse (residue classes never mix), which keeps the oracle
    usable at orders in the hundreds.
    """
    if a.n != b.n:
        raise ValueError(f"orders differ: {a.n} vs {b.n}")
    n = a.n
    b_nonzeros = [
        tuple((j, v) for j, v in enumerate(row) if v) for row in b._rows
    ]
    out = []
    for arow in a._rows:
        acc = [0] * n
        for k, av in enumerate(arow):
            if not av:
                continue
            if av == 1:
                for j, bv in b_nonzeros[k]:
                    acc[j] += bv
            else:
                for j, bv in b_nonzeros[k]:
                    acc[j] += av * bv
        out.append(acc)
    return DenseIntMatrix(out)


def dense_pow_binary(a: DenseIntMatrix, m: int) -> DenseIntMatrix:
    """Exact A**m by repeated squaring; A**0 is the identity.

    Negative exponents are rejected: the stripe matrices this serves are
    frequently singular, and only nonnegative powers are meaningful here.
    """
    if m < 0:
        raise ValueError(f"exponent must be nonnegative, got {m}")
    result = DenseIntMatrix.identity(a.n)
    base = a
    e = m
    while e:
        if e & 1:
            result = dense_mul(result, base)
        e >>= 1
        if e:
            base = dense_mul(base, base)
    return result


def dense_det_shifted(stripe: StripeMatrix, lam: float) -> float:
    """det(lam*I - H) by Gaussian elimination with partial pivoting.

    Desk-scale determinant oracle; near-singular shifts simply return values
    near zero.
    """
    n, d = stripe.n, stripe.d
    a = [
        [(lam if i == j else 0.0) - (1.0 if abs(i - j) == d else 0.0) for j in range(n)]
        for i in range(n)
    ]
    det = 1.0
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[pivot][col] == 0.0:
            return 0.0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        pv = a[col][col]
        det *= pv
        for r in range(col + 1, n):
            f = a[r][col] / pv
            if f:
                arow = a[r]
                prow = a[col]
                for c in range(col + 1, n):
                    arow[c] -= f * prow[c]
    return det


def max_abs_diff(a, b) -> float:
    """Largest entrywise |a - b| between two dense matrices of equal order."""
    if a.n != b.n:
        raise ValueError(f"orders differ: {a.n} vs {b.n}")
    worst = 0.0
    for ra, rb in zip(a._rows, b._rows):
        for x, y in zip(ra, rb):
            diff = abs(x - y)
            if diff > worst:
                worst = diff
    return float(worst)
