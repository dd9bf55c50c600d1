"""Dimensions of invariant subspaces and genus-level dimension tables.

For a finite subgroup of O(n) with mass map m, the dimension of the
invariants in the irreducible representation W_lambda is the exact
rational sum over polynomials P of m(P) times the trace of P on W_lambda;
it must reduce to a nonnegative integer, which makes the computation a
stringent consistency check of every upstream rational.  The module also
provides the Bernoulli-number mass constants mu_n of the even (uni)modular
genus and the resulting asymptotic dimension estimate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from math import lcm

from .reptheory import (
    NotPermissible,
    Partition,
    associate,
    char_coeffs,
    dim_W,
    dual,
    enumerate_permissible,
    format_partition,
    is_permissible,
    trace_KT,
    weight,
)
from .weylmass import MassMap, DegreeMismatch


class NonIntegralResult(ArithmeticError):
    """The invariant-dimension sum did not reduce to an integer."""


class BadResidue(ValueError):
    """Raised for ranks outside -1, 0, 1 mod 8."""


@dataclass(frozen=True)
class DimEntry:
    lam: Partition
    d: int
    d_ass: int

    def label(self) -> str:
        return format_partition(self.lam)


@lru_cache(maxsize=8)
def _prepared(m: MassMap):
    """Integer numerators over a common denominator, plus e-vectors per key.

    Clearing denominators once lets the per-partition sum run in pure
    integer arithmetic, which is an order of magnitude faster than the
    naive Fraction accumulation over tens of thousands of entries.
    """
    den = lcm(*(v.denominator for _, v in m.entries)) if m.entries else 1
    items = []
    for p, v in m.entries:
        num = v.numerator * (den // v.denominator)
        items.append((char_coeffs(p, 0)[0], num, p))
    return den, tuple(items)


def _weighted_trace_sum(m: MassMap, lam: Partition) -> Fraction:
    den, items = _prepared(m)
    size = lam[0] if lam else 0
    mu = dual(lam)
    mus = [mu[i] if i < len(mu) else 0 for i in range(size)]
    total = 0
    if size <= 3:
        # unrolled determinants of the trace matrix for narrow partitions
        for e, num, _ in items:
            n = len(e) - 1

            def E(k: int) -> int:
                return e[k] if 0 <= k <= n else 0

            if size == 0:
                t = 1
            elif size == 1:
                t = E(mus[0])
            elif size == 2:
                t = (E(mus[0]) * (E(mus[1]) + E(mus[1] - 2))
                     - (E(mus[0] + 1) + E(mus[0] - 1)) * E(mus[1] - 1))
            else:
                m0, m1, m2 = mus
                r0 = (E(m0), E(m0 + 1) + E(m0 - 1), E(m0 + 2) + E(m0 - 2))
                r1 = (E(m1 - 1), E(m1) + E(m1 - 2), E(m1 + 1) + E(m1 - 3))
                r2 = (E(m2 - 2), E(m2 - 1) + E(m2 - 3), E(m2) + E(m2 - 4))
                t = (r0[0] * (r1[1] * r2[2] - r1[2] * r2[1])
                     - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
                     + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]))
            if t:
                total += num * t
    else:
        for _, num, p in items:
            t = trace_KT(p, lam)
            if t:
                total += num * t
    return Fraction(total, den)


def dim_invariants(m: MassMap, lam: Partition) -> int:
    """dim of the invariants of W_lambda under a group with mass map m."""
    if not is_permissible(lam, m.degree):
        raise NotPermissible(f"{lam} is not {m.degree}-permissible")
    total = _weighted_trace_sum(m, lam)
    if total.denominator != 1 or total < 0:
        raise NonIntegralResult(f"dimension sum {total} for lambda={lam}")
    return int(total)


@lru_cache(maxsize=8)
def _combine_cached(maps: tuple[MassMap, ...]) -> MassMap:
    degrees = {m.degree for m in maps}
    if len(degrees) != 1:
        raise DegreeMismatch("need a nonempty list of maps of equal degree")
    acc: dict = {}
    for m in maps:
        for p, v in m.entries:
            acc[p] = acc.get(p, Fraction(0)) + v
    return MassMap.from_dict(degrees.pop(), acc)


def combine(maps: list[MassMap]) -> MassMap:
    """Key-wise sum of mass maps of equal degree (total = number of maps)."""
    return _combine_cached(tuple(maps))


def dim_genus(maps: list[MassMap], lam: Partition) -> int:
    """Sum of invariant dimensions over a genus of lattices."""
    if len(maps) == 1:
        return dim_invariants(maps[0], lam)
    return dim_invariants(combine(maps), lam)


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """Bernoulli number B_k (B_1 = -1/2 convention; only even k needed)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return Fraction(1)
    # sum_{j=0}^{m} binom(m+1, j) B_j = 0 for m >= 1
    s = Fraction(0)
    for j in range(k):
        s += comb(k + 1, j) * bernoulli(j)
    return -s / (k + 1)


@lru_cache(maxsize=None)
def mu(n: int) -> Fraction:
    """Mass constant of the genus of even (uni)modular rank-n lattices.

    For n = 0 mod 8 this is |B_{n/2}/n * prod_{j<n/2} B_{2j}/(4j)|; for
    n = +-1 mod 8 the first factor is dropped and the product runs to
    (n-1)/2.
    """
    r = n % 8
    if r == 0:
        val = bernoulli(n // 2) / n
        for j in range(1, n // 2):
            val *= bernoulli(2 * j) / (4 * j)
        return abs(val)
    if r in (1, 7):
        val = Fraction(1)
        for j in range(1, (n - 1) // 2 + 1):
            val *= bernoulli(2 * j) / (4 * j)
        return abs(val)
    raise BadResidue(f"n={n} is not -1, 0 or 1 mod 8")


def asymptotic_estimate(lam: Partition, n: int) -> Fraction:
    """Leading term 2 * mu_n * dim W_lambda of the genus dimension sum."""
    if weight(lam) % 2 != 0:
        raise ValueError("weight of lambda must be even")
    return 2 * mu(n) * dim_W(lam, n)


def dim_table(maps: list[MassMap], n: int, lambda1_max: int) -> list[DimEntry]:
    """Nonzero genus dimensions for even lambda with lam_1 <= lambda1_max.

    One entry per associate pair, keyed by the representative with at most
    n/2 rows; self-associate partitions have d = d_ass.
    """
    entries = []
    for lam in enumerate_permissible(n, lambda1_max, even_only=True, positive_only=True):
        d = dim_genus(maps, lam)
        ass = associate(lam, n)
        d_ass = d if ass == lam else dim_genus(maps, ass)
        if d or d_ass:
            entries.append(DimEntry(lam, d, d_ass))
    return entries


def render_dim_table(entries: list[DimEntry], n: int) -> str:
    """Aligned text rows "lambda  d : d_ass" (single value if self-paired)."""
    rows = []
    for e in entries:
        label = e.label()
        if associate(e.lam, n) == e.lam:
            rows.append((label, str(e.d)))
        else:
            rows.append((label, f"{e.d} : {e.d_ass}"))
    width = max((len(r[0]) for r in rows), default=0)
    return "\n".join(f"{r[0]:<{width}}  {r[1]}" for r in rows)
