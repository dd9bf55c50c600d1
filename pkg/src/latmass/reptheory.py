"""Partitions, O(n)-representations and exact character evaluation.

Irreducible representations W_lambda of the real orthogonal group O(n) are
indexed by the n-permissible partitions, those whose first two dual columns
total at most n.  For an element g with characteristic polynomial P, the
trace of g on W_lambda is an integer depending only on P; it is computed
here by two independent determinantal formulas (one in the elementary
symmetric coefficients e_i of det(1+tg), one in the complete homogeneous
coefficients p_i of det(1-tg)^-1), which must agree and cross-check each
other in the tests.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .cycpoly import (
    Coeffs,
    CycloProduct,
    expand,
)

Partition = tuple[int, ...]

EMPTY: Partition = ()


class NotPermissible(ValueError):
    """Raised when a partition does not index a representation of O(n)."""


def _check_partition(lam: Partition) -> None:
    for i, part in enumerate(lam):
        if part < 1:
            raise ValueError("parts must be positive")
        if i and lam[i - 1] < part:
            raise ValueError("parts must be weakly decreasing")


def weight(lam: Partition) -> int:
    return sum(lam)


def dual(lam: Partition) -> Partition:
    """Transpose diagram: mu_i = #{j : lam_j >= i}."""
    _check_partition(lam)
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= i) for i in range(1, lam[0] + 1))


def is_permissible(lam: Partition, n: int) -> bool:
    """True iff the first two dual columns hold at most n boxes."""
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_partition(lam)
    c1 = len(lam)
    c2 = sum(1 for p in lam if p >= 2)
    return c1 + c2 <= n


def is_positive(lam: Partition, n: int) -> bool:
    """True iff the first dual column holds at most n/2 boxes."""
    return 2 * len(lam) <= n


def associate(lam: Partition, n: int) -> Partition:
    """Replace the first dual column length c by n - c; an involution."""
    if not is_permissible(lam, n):
        raise NotPermissible(f"{lam} is not {n}-permissible")
    mu = list(dual(lam))
    if not mu:
        mu = [0]
    mu[0] = n - mu[0]
    return dual(tuple(p for p in mu if p > 0))


def enumerate_permissible(
    n: int,
    lambda1_max: int,
    even_only: bool = False,
    positive_only: bool = False,
) -> list[Partition]:
    """All n-permissible partitions with lam_1 <= lambda1_max.

    With even_only, keep only even weights; with positive_only, keep one
    partition per associate pair (the one with at most n/2 rows).
    """
    out: list[Partition] = []

    def rec(acc: list[int], maxpart: int) -> None:
        lam = tuple(acc)
        if is_permissible(lam, n):
            if (not even_only or weight(lam) % 2 == 0) and (
                not positive_only or is_positive(lam, n)
            ):
                out.append(lam)
        else:
            return
        if len(acc) >= n:
            return
        for p in range(min(maxpart, lambda1_max), 0, -1):
            acc.append(p)
            rec(acc, p)
            acc.pop()

    rec([], lambda1_max)
    out.sort(key=lambda lam: (weight(lam), lam))
    return out


def format_partition(lam: Partition) -> str:
    """Compact notation with descending parts, e.g. "3^8 2^4"."""
    if not lam:
        return "0"
    parts = []
    i = 0
    while i < len(lam):
        j = i
        while j < len(lam) and lam[j] == lam[i]:
            j += 1
        mult = j - i
        parts.append(str(lam[i]) if mult == 1 else f"{lam[i]}^{mult}")
        i = j
    return " ".join(parts)


def parse_partition(s: str) -> Partition:
    """Inverse of format_partition."""
    s = s.strip()
    if s in ("", "0"):
        return ()
    parts: list[int] = []
    for tok in s.split():
        if "^" in tok:
            ps, ms = tok.split("^", 1)
            p, mult = int(ps), int(ms)
        else:
            p, mult = int(tok), 1
        if p < 1 or mult < 0:
            raise ValueError(f"malformed token {tok!r}")
        parts.extend([p] * mult)
    lam = tuple(sorted(parts, reverse=True))
    _check_partition(lam)
    return lam


# ---------------------------------------------------------------------------
# character coefficients


def char_coeffs(P: CycloProduct, N: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Coefficients e of det(1+tg) and p of det(1-tg)^-1 up to degree N.

    Here g is any matrix with characteristic polynomial expand(P); both
    series depend only on P.  Writing P = sum a_i t^i of degree n, the
    coefficient of t^k in det(1-tg) is a_{n-k}, so e_k = (-1)^k a_{n-k},
    and p is the truncated multiplicative inverse of the reversed
    coefficient vector.
    """
    a = expand(P)
    n = len(a) - 1
    rev = tuple(a[n - k] for k in range(n + 1))
    e = tuple((-1) ** k * rev[k] for k in range(n + 1))
    p = [1] + [0] * N
    for k in range(1, N + 1):
        s = 0
        for j in range(1, min(k, n) + 1):
            s += rev[j] * p[k - j]
        p[k] = -s
    return e, tuple(p)


def _det_int(mat: list[list[int]]) -> int:
    """Fraction-free Bareiss elimination; exact integer determinant."""
    n = len(mat)
    if n == 0:
        return 1
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@lru_cache(maxsize=None)
def _trace_kt_cached(P: CycloProduct, lam: Partition) -> int:
    n = P.degree
    mu = dual(lam)
    size = lam[0] if lam else 0
    e, _ = char_coeffs(P, 0)

    def E(k: int) -> int:
        return e[k] if 0 <= k <= n else 0

    mat = []
    for i in range(1, size + 1):
        mi = mu[i - 1] if i <= len(mu) else 0
        row = []
        for j in range(1, size + 1):
            v = E(mi - i + j)
            if j > 1:
                v += E(mi - i - j + 2)
            row.append(v)
        mat.append(row)
    return _det_int(mat)


def trace_KT(P: CycloProduct, lam: Partition) -> int:
    """Trace of any g with characteristic polynomial P on W_lambda.

    Determinant of (e_{mu_i-i+j} + delta_j e_{mu_i-i-j+2}) over
    1 <= i,j <= lam_1, with mu the dual partition, delta_1 = 0 and
    delta_j = 1 for j > 1.
    """
    if not is_permissible(lam, P.degree):
        raise NotPermissible(f"{lam} is not {P.degree}-permissible")
    return _trace_kt_cached(P, lam)


def trace_Weyl(P: CycloProduct, lam: Partition) -> int:
    """Same trace via det(p_{lam_i-i+j} - p_{lam_i-i-j}) over the dual size."""
    n = P.degree
    if not is_permissible(lam, n):
        raise NotPermissible(f"{lam} is not {n}-permissible")
    size = len(lam)
    lam1 = lam[0] if lam else 0
    N = lam1 + size + n
    _, p = char_coeffs(P, N)

    def PP(k: int) -> int:
        return p[k] if k >= 0 else 0

    mat = []
    for i in range(1, size + 1):
        row = []
        for j in range(1, size + 1):
            row.append(PP(lam[i - 1] - i + j) - PP(lam[i - 1] - i - j))
        mat.append(row)
    return _det_int(mat)


@lru_cache(maxsize=None)
def dim_W(lam: Partition, n: int) -> int:
    """Dimension of W_lambda, the trace at the identity element."""
    ident = CycloProduct(((1, n),))
    return trace_KT(ident, lam)
