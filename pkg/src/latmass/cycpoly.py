"""Exact arithmetic with products of cyclotomic polynomials.

Monic integer polynomials whose complex roots all lie on the unit circle
are exactly the products of cyclotomic polynomials; in degree n these are
the characteristic polynomials of lattice-preserving isometries of R^n.
This module represents such a product by its exponent multiset
{m: a_m} (meaning prod_m Phi_m^{a_m}) and provides enumeration of all
degree-n products, expansion to coefficient vectors, the inverse
factorization, and the variable substitutions t -> t^l and t -> -t.

Plain integer polynomials are coefficient tuples in ascending degree
order with no trailing zeros; () is the zero polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

Coeffs = tuple[int, ...]

ONE: Coeffs = (1,)


class NotCyclotomicProduct(ValueError):
    """Raised when a polynomial is not a product of cyclotomic polynomials."""


# ---------------------------------------------------------------------------
# plain integer polynomials


def poly_trim(c: Iterable[int]) -> Coeffs:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul(a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return poly_trim(out)


def poly_divmod(a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs]:
    """Euclidean division; requires b monic (or at least exact leading divisions)."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(r) >= len(b) and any(r):
        if r[-1] == 0:
            r.pop()
            continue
        if r[-1] % b[-1] != 0:
            break
        f = r[-1] // b[-1]
        k = len(r) - len(b)
        q[k] = f
        for i, bi in enumerate(b):
            r[k + i] -= f * bi
        r.pop()
    return poly_trim(q), poly_trim(r)


def poly_eval(a: Coeffs, x: int) -> int:
    out = 0
    for c in reversed(a):
        out = out * x + c
    return out


def poly_pow(a: Coeffs, k: int) -> Coeffs:
    out: Coeffs = ONE
    for _ in range(k):
        out = poly_mul(out, a)
    return out


def poly_substitute_power(a: Coeffs, l: int) -> Coeffs:
    """Return a(t^l)."""
    if l < 1:
        raise ValueError("l must be positive")
    if not a:
        return ()
    out = [0] * ((len(a) - 1) * l + 1)
    for i, c in enumerate(a):
        out[i * l] = c
    return tuple(out)


def poly_negate_variable(a: Coeffs) -> Coeffs:
    """Return (-1)^deg(a) * a(-t), monic when a is monic."""
    n = len(a) - 1
    return tuple(c if (n - i) % 2 == 0 else -c for i, c in enumerate(a))


# ---------------------------------------------------------------------------
# cyclotomic polynomials


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError("m must be positive")
    out, rem, p = 1, m, 2
    while p * p <= rem:
        if rem % p == 0:
            out *= p - 1
            rem //= p
            while rem % p == 0:
                out *= p
                rem //= p
        p += 1
    if rem > 1:
        out *= rem - 1
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> Coeffs:
    """The m-th cyclotomic polynomial Phi_m, monic of degree phi(m)."""
    if m < 1:
        raise ValueError("m must be positive")
    # divide t^m - 1 by Phi_d for all proper divisors d of m
    num: Coeffs = tuple([-1] + [0] * (m - 1) + [1])
    for d in range(1, m):
        if m % d == 0:
            num, r = poly_divmod(num, cyclotomic_poly(d))
            assert not r
    return num


@lru_cache(maxsize=None)
def cyclo_indices(max_degree: int) -> tuple[int, ...]:
    """All m with phi(m) <= max_degree, ascending."""
    # phi(m) >= sqrt(m/2), so m <= 2*max_degree^2 suffices
    bound = 2 * max_degree * max_degree + 1
    return tuple(m for m in range(1, bound + 1) if euler_phi(m) <= max_degree)


# ---------------------------------------------------------------------------
# products of cyclotomic polynomials


@dataclass(frozen=True, order=True)
class CycloProduct:
    """A product of cyclotomic polynomials, stored as an exponent multiset.

    `exponents` is a tuple of (m, a_m) pairs with a_m >= 1, ascending in m.
    The empty product is the constant polynomial 1.
    """

    exponents: tuple[tuple[int, int], ...]
    degree: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        last = 0
        deg = 0
        for m, a in self.exponents:
            if m <= last:
                raise ValueError("exponents must be ascending in m")
            if a < 1:
                raise ValueError("multiplicities must be >= 1")
            last = m
            deg += a * euler_phi(m)
        object.__setattr__(self, "degree", deg)

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> "CycloProduct":
        return cls(tuple(sorted((m, a) for m, a in d.items() if a != 0)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.exponents)

    def __mul__(self, other: "CycloProduct") -> "CycloProduct":
        d = self.as_dict()
        for m, a in other.exponents:
            d[m] = d.get(m, 0) + a
        return CycloProduct.from_dict(d)

    def __str__(self) -> str:
        return format_notation(self)


CYCLO_ONE = CycloProduct(())


def expand(p: CycloProduct) -> Coeffs:
    """Coefficient vector of the product; monic of degree p.degree."""
    out: Coeffs = ONE
    for m, a in p.exponents:
        out = poly_mul(out, poly_pow(cyclotomic_poly(m), a))
    return out


def factor_cyclo(q: Coeffs) -> CycloProduct:
    """Factor a monic integer polynomial as a product of cyclotomics.

    Trial division by Phi_m for ascending m with phi(m) not exceeding the
    remaining degree; raises NotCyclotomicProduct if the quotient is not
    exhausted.
    """
    if not q or q[-1] != 1:
        raise NotCyclotomicProduct("polynomial must be monic")
    exps: dict[int, int] = {}
    rem = q
    for m in cyclo_indices(len(q) - 1):
        if len(rem) == 1:
            break
        phi = euler_phi(m)
        while phi <= len(rem) - 1:
            quo, r = poly_divmod(rem, cyclotomic_poly(m))
            if r:
                break
            exps[m] = exps.get(m, 0) + 1
            rem = quo
    if rem != ONE:
        raise NotCyclotomicProduct(f"not a product of cyclotomic polynomials: {q}")
    return CycloProduct.from_dict(exps)


def enumerate_car(n: int) -> list[CycloProduct]:
    """All products of cyclotomic polynomials of total degree n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    ms = cyclo_indices(n)
    phis = [euler_phi(m) for m in ms]
    out: list[CycloProduct] = []
    acc: list[tuple[int, int]] = []

    def rec(i: int, rem: int) -> None:
        if rem == 0:
            out.append(CycloProduct(tuple(acc)))
            return
        if i == len(ms):
            return
        phi = phis[i]
        if phi > rem:
            # indices are not sorted by phi, so keep scanning
            rec(i + 1, rem)
            return
        rec(i + 1, rem)
        top = rem // phi
        acc.append((ms[i], 0))
        for a in range(1, top + 1):
            acc[-1] = (ms[i], a)
            rec(i + 1, rem - a * phi)
        acc.pop()

    rec(0, n)
    out.sort()
    return out


@lru_cache(maxsize=None)
def _substitute_cyclo(m: int, l: int) -> tuple[tuple[int, int], ...]:
    # Phi_m(t^l) = prod of Phi_{m*g} over divisors g of l with gcd(m*g, l) = g
    import math

    factors = []
    for g in range(1, l + 1):
        if l % g == 0 and math.gcd(m * g, l) == g:
            factors.append((m * g, 1))
    assert sum(euler_phi(d) for d, _ in factors) == l * euler_phi(m)
    return tuple(sorted(factors))


def substitute_power(p: CycloProduct, l: int) -> CycloProduct:
    """The product whose expansion is expand(p) evaluated at t^l."""
    if l < 1:
        raise ValueError("l must be positive")
    d: dict[int, int] = {}
    for m, a in p.exponents:
        for dm, _ in _substitute_cyclo(m, l):
            d[dm] = d.get(dm, 0) + a
    return CycloProduct.from_dict(d)


def _negate_index(m: int) -> int:
    # Phi_m(-t) up to sign is Phi_{m'} with m' as follows
    if m == 1:
        return 2
    if m == 2:
        return 1
    if m % 2 == 1:
        return 2 * m
    if m % 4 == 2:
        return m // 2
    return m


def negate_variable(p: CycloProduct) -> CycloProduct:
    """The product whose expansion is (-1)^deg * expand(p)(-t); an involution."""
    d: dict[int, int] = {}
    for m, a in p.exponents:
        mm = _negate_index(m)
        d[mm] = d.get(mm, 0) + a
    return CycloProduct.from_dict(d)


# ---------------------------------------------------------------------------
# text notation


def format_notation(p: CycloProduct) -> str:
    """Compact notation "1^{a_1} 2^{a_2} ...", omitting exponent 1."""
    if not p.exponents:
        return "1^0"
    parts = []
    for m, a in p.exponents:
        parts.append(str(m) if a == 1 else f"{m}^{a}")
    return " ".join(parts)


def parse_notation(s: str) -> CycloProduct:
    """Inverse of format_notation; accepts tokens "m" and "m^a"."""
    s = s.strip()
    if s in ("", "1^0"):
        return CYCLO_ONE
    d: dict[int, int] = {}
    for tok in s.split():
        if "^" in tok:
            ms, as_ = tok.split("^", 1)
        else:
            ms, as_ = tok, "1"
        try:
            m, a = int(ms), int(as_)
        except ValueError as exc:
            raise ValueError(f"malformed token {tok!r}") from exc
        if m < 1 or a < 0:
            raise ValueError(f"malformed token {tok!r}")
        if a:
            d[m] = d.get(m, 0) + a
    return CycloProduct.from_dict(d)


def charpoly_coeffs_to_product(coeffs: Coeffs) -> CycloProduct:
    """Convenience alias used by the lattice census code."""
    return factor_cyclo(coeffs)
