"""The five polynomial families C, P, Q, R, H and the psi coefficient table.

Each family is generated by iterating its first-order differential recurrence
from the base polynomial 1:

* ``C_{n+1} = [n(1+y) + y^2 d/dy] C_n``                       (univariate in y)
* ``P_{n+1} = [x + n + y(n + y d/dy)] P_n``                   (in x, y)
* ``Q_{n+1} = [x + nz + (y+t)(n + y d/dy)] Q_n``              (in x, y, z, t)
* ``R_n    = Q_n(x, y+1, z, t-1)``, equivalently
  ``R_{n+1} = [x + nz + (y+t)(n + (y+1) d/dy)] R_n``
* ``H_1 = 1``, ``H_{n+1} = Q_n(1, y+1, 1, 0)``                (univariate in y)

H also satisfies ``H_{n+1} = (2n-1+(n-1)y) H_n + (1+y)^2 H_n'``, which is
implemented separately as a cross-check; see :func:`seq_H_via_recurrence`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .poly import ONE, MultiPoly, T, X, Y, Z


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"family index must be a positive integer, got {n!r}")


@lru_cache(maxsize=None)
def seq_C(n: int) -> MultiPoly:
    """n-th tree polynomial C_n (univariate in y); C_n(1) = n^(n-1)."""
    _check_n(n)
    if n == 1:
        return ONE
    c = seq_C(n - 1)
    k = n - 1
    return k * (1 + Y) * c + Y * Y * c.derive("y")


@lru_cache(maxsize=None)
def seq_P(n: int) -> MultiPoly:
    """n-th two-variable polynomial P_n; P_n(0, y) = C_n(y)."""
    _check_n(n)
    if n == 1:
        return ONE
    p = seq_P(n - 1)
    k = n - 1
    return (X + k) * p + Y * (k * p + Y * p.derive("y"))


@lru_cache(maxsize=None)
def seq_Q(n: int) -> MultiPoly:
    """n-th four-variable polynomial Q_n; Q_n(x, y, 0, 1) = P_n(x, y)."""
    _check_n(n)
    if n == 1:
        return ONE
    q = seq_Q(n - 1)
    k = n - 1
    return (X + k * Z) * q + (Y + T) * (k * q + Y * q.derive("y"))


@lru_cache(maxsize=None)
def seq_R(n: int) -> MultiPoly:
    """n-th shifted polynomial R_n = Q_n(x, y+1, z, t-1)."""
    _check_n(n)
    return seq_Q(n).subst_many({"y": Y + 1, "t": T - 1})


@lru_cache(maxsize=None)
def seq_R_via_recurrence(n: int) -> MultiPoly:
    """R_n computed by its own recurrence; must agree with :func:`seq_R`."""
    _check_n(n)
    if n == 1:
        return ONE
    r = seq_R_via_recurrence(n - 1)
    k = n - 1
    return (X + k * Z) * r + (Y + T) * (k * r + (Y + 1) * r.derive("y"))


@lru_cache(maxsize=None)
def seq_H(n: int) -> MultiPoly:
    """n-th Greg tree polynomial H_n = Q_{n-1}(1, y+1, 1, 0) (H_1 = 1).

    H_n(1) counts Greg trees of size n rooted at 1; the coefficient of y^k
    counts those with k unlabelled vertices.
    """
    _check_n(n)
    if n == 1:
        return ONE
    return seq_Q(n - 1).subst_many({"x": 1, "y": Y + 1, "z": 1, "t": 0})


def seq_H_via_recurrence(n: int, y_coeff_shift: int = -1) -> MultiPoly:
    """H_n from the recurrence H_{k+1} = (2k-1+(k+s)y) H_k + (1+y)^2 H_k'.

    The shift ``s`` selects the coefficient multiplying y; ``s = -1`` is the
    value consistent with the substitution definition and with tree counts.
    ``s = +1`` reproduces a known-bad variant (it already disagrees at n = 2)
    and is kept selectable so the discrepancy can be demonstrated.
    """
    _check_n(n)
    h = ONE
    for k in range(1, n):
        h = (2 * k - 1 + (k + y_coeff_shift) * Y) * h + (1 + Y) ** 2 * h.derive("y")
    return h


@dataclass(frozen=True)
class PsiTable:
    """Univariate polynomials psi_1(r, .) .. psi_{r+1}(r, .) in x."""

    r: int
    entries: tuple[MultiPoly, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.r + 1:
            raise ValueError(f"psi table for r={self.r} must have {self.r + 1} entries")

    def entry(self, k: int) -> MultiPoly:
        """psi_k(r, x) for 1 <= k <= r+1."""
        if not 1 <= k <= self.r + 1:
            raise ValueError(f"k must be in 1..{self.r + 1}, got {k}")
        return self.entries[k - 1]

    def eval_entry(self, k: int, x0: int | Fraction) -> Fraction:
        return self.entry(k).eval((Fraction(x0), 0, 0, 0))


def psi_extract(r: int) -> PsiTable:
    """Extract psi_{k+1}(r, x) as the y^k coefficient of P_{r+1}(x-(r+1), y)."""
    if not isinstance(r, int) or r < 0:
        raise ValueError(f"r must be a nonnegative integer, got {r!r}")
    shifted = seq_P(r + 1).subst("x", X - (r + 1))
    by_y = shifted.coefficients_in("y")
    entries = tuple(by_y.get(k, MultiPoly.zero()) for k in range(r + 1))
    return PsiTable(r, entries)
