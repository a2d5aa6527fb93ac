"""Second-kind Chebyshev polynomials and the determinant recurrence.

Evaluation always goes through the three-term recurrence, which is defined
for every real argument; the trigonometric quotient form only exists on
(-1, 1) and is used by the test suite as an independent oracle there.
"""

from __future__ import annotations

import math

__all__ = [
    "cheb_u_eval",
    "cheb_u_sequence",
    "cheb_u_roots",
    "delta_rec",
    "charpoly_value",
]


def cheb_u_eval(k: int, x: float) -> float:
    """U_k(x) via U_k = 2x*U_{k-1} - U_{k-2}, U_0 = 1, U_1 = 2x."""
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")
    if k == 0:
        return 1.0
    prev, cur = 1.0, 2.0 * x
    for _ in range(k - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


def cheb_u_sequence(k: int, x: float) -> list[float]:
    """Values U_0(x)..U_k(x), one recurrence pass."""
    if k < 0:
        raise ValueError(f"degree must be nonnegative, got {k}")
    values = [1.0]
    if k == 0:
        return values
    values.append(2.0 * x)
    for _ in range(k - 1):
        values.append(2.0 * x * values[-1] - values[-2])
    return values


def cheb_u_roots(k: int) -> list[float]:
    """Roots of U_k: cos(j*pi/(k+1)) for j = 1..k, strictly decreasing."""
    if k < 1:
        raise ValueError(f"degree must be at least 1, got {k}")
    return [math.cos(j * math.pi / (k + 1)) for j in range(1, k + 1)]


def delta_rec(p: int, alpha: float) -> float:
    """Tridiagonal determinant by the recurrence D_p = alpha*D_{p-1} - D_{p-2}.

    D_0 = 1 and D_1 = alpha; D_p(alpha) equals U_p(alpha/2) identically.
    """
    if p < 0:
        raise ValueError(f"order must be nonnegative, got {p}")
    if p == 0:
        return 1.0
    prev, cur = 1.0, float(alpha)
    for _ in range(p - 1):
        prev, cur = cur, alpha * cur - prev
    return cur


def charpoly_value(n: int, lam: float) -> float:
    """Characteristic polynomial of the stride-3 stripe matrix at lam.

    det(lam*I - H) factors through the residue-class decoupling into the
    cube of the block determinant, i.e. (U_{n/3}(lam/2))**3.
    """
    if n < 3 or n % 3:
        raise ValueError(f"order must be a positive multiple of 3, got {n}")
    u = cheb_u_eval(n // 3, lam / 2.0)
    return u * u * u
