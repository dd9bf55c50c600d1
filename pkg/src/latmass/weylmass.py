"""Characteristic masses of Weyl-group cosets in ADE root lattices.

For a finite set S of isometries of R^n, its mass map sends each degree-n
product of cyclotomic polynomials P to the fraction of elements of S whose
characteristic polynomial is P.  For S = tau * W(R) with R irreducible of
type A, D or E and tau of order 1, 2 or 3 in the diagram-automorphism
group, the map has a closed form (types A and D, via cycle types of
symmetric and hyperoctahedral groups) or is a fixed published table (types
E6/E7/E8 and the order-3 coset of D4), shipped here as package data and
regenerated by brute force where feasible.  Masses of reducible systems
and of components permuted in cycles are obtained by convolution and
variable substitution.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import factorial
from typing import Iterable, Iterator, Sequence

from .cycpoly import (
    CYCLO_ONE,
    Coeffs,
    CycloProduct,
    expand,
    factor_cyclo,
    format_notation,
    parse_notation,
    substitute_power,
    negate_variable,
)

IrredKind = tuple[str, int]

CosetCycle = tuple[IrredKind, int, int]  # (kind, cycle length l, coset order d)


class IllegalCoset(ValueError):
    """Raised for a coset order not realized by the diagram automorphisms."""


class DegreeMismatch(ValueError):
    pass


class TooLarge(ValueError):
    """Raised when an exhaustive enumeration would exceed the bound."""


def check_kind(kind: IrredKind) -> IrredKind:
    fam, n = kind
    if fam == "A" and n >= 1:
        return kind
    if fam == "D" and n >= 3:
        return kind
    if fam == "E" and n in (6, 7, 8):
        return kind
    raise ValueError(f"not an irreducible ADE kind: {kind}")


def outer_orders(kind: IrredKind) -> tuple[int, ...]:
    """Element orders realized in the diagram-automorphism group of kind."""
    fam, n = check_kind(kind)
    if (fam, n) == ("D", 4):
        return (1, 2, 3)
    if fam == "A" and n == 1:
        return (1,)
    if fam == "E" and n in (7, 8):
        return (1,)
    return (1, 2)


# ---------------------------------------------------------------------------
# mass maps


@dataclass(frozen=True)
class MassMap:
    """Exact distribution of characteristic polynomials over a finite set."""

    degree: int
    entries: tuple[tuple[CycloProduct, Fraction], ...]

    def __post_init__(self) -> None:
        for p, v in self.entries:
            if p.degree != self.degree:
                raise DegreeMismatch(f"key {p} has degree {p.degree}, map {self.degree}")
            if v <= 0:
                raise ValueError("masses must be positive")
        # maps can hold tens of thousands of entries, so precompute the hash
        # once instead of rehashing the entry tuple on every cache lookup
        object.__setattr__(self, "_hash", hash((self.degree, self.entries)))

    def __hash__(self) -> int:
        return self._hash

    @classmethod
    def from_dict(cls, degree: int, d: dict[CycloProduct, Fraction]) -> "MassMap":
        return cls(degree, tuple(sorted(d.items())))

    def as_dict(self) -> dict[CycloProduct, Fraction]:
        return dict(self.entries)

    def total(self) -> Fraction:
        return sum((v for _, v in self.entries), Fraction(0))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, p: CycloProduct) -> Fraction:
        for q, v in self.entries:
            if q == p:
                return v
        return Fraction(0)

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "entries": {format_notation(p): f"{v.numerator}/{v.denominator}" for p, v in self.entries},
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "MassMap":
        entries = {parse_notation(k): Fraction(v) for k, v in obj["entries"].items()}
        return cls.from_dict(int(obj["degree"]), entries)


def _census(degree: int, polys: Iterable[CycloProduct]) -> MassMap:
    counts: dict[CycloProduct, int] = {}
    total = 0
    for p in polys:
        counts[p] = counts.get(p, 0) + 1
        total += 1
    return MassMap.from_dict(degree, {p: Fraction(c, total) for p, c in counts.items()})


# ---------------------------------------------------------------------------
# cycle types of S_{n+1} and H_n


def _partition_mults(n: int) -> Iterator[dict[int, int]]:
    """Multiplicity maps {part: count} of all partitions of n."""

    def rec(rem: int, maxpart: int, acc: dict[int, int]) -> Iterator[dict[int, int]]:
        if rem == 0:
            yield dict(acc)
            return
        for part in range(min(rem, maxpart), 0, -1):
            for cnt in range(rem // part, 0, -1):
                acc[part] = cnt
                yield from rec(rem - part * cnt, part - 1, acc)
                del acc[part]

    yield from rec(n, n, {})


def _poly_tminus(i: int) -> dict[int, int]:
    # cyclotomic exponents of t^i - 1
    return {d: 1 for d in range(1, i + 1) if i % d == 0}


def _poly_tplus(i: int) -> dict[int, int]:
    # cyclotomic exponents of t^i + 1 = (t^{2i}-1)/(t^i-1)
    return {d: 1 for d in range(1, 2 * i + 1) if (2 * i) % d == 0 and i % d != 0}


def _accumulate(dst: dict[int, int], src: dict[int, int], mult: int) -> None:
    for m, a in src.items():
        dst[m] = dst.get(m, 0) + a * mult


@lru_cache(maxsize=None)
def mass_irreducible(kind: IrredKind, order: int = 1) -> MassMap:
    """The mass map of tau*W(kind) for tau of the given order.

    A and D come from the cycle-type formulas; E6/E7/E8 order 1 and D4
    order 3 are embedded published tables; A_n and E6 order 2 are the
    sign-twisted images of order 1 (the coset is -W).
    """
    fam, n = check_kind(kind)
    if order not in outer_orders(kind):
        raise IllegalCoset(f"no order-{order} coset for {kind}")

    if fam == "A":
        if order == 2:
            return negate_map(mass_irreducible(kind, 1))
        out: dict[CycloProduct, Fraction] = {}
        for mults in _partition_mults(n + 1):
            exps: dict[int, int] = {}
            weight = 1
            for i, mi in mults.items():
                _accumulate(exps, _poly_tminus(i), mi)
                weight *= factorial(mi) * i**mi
            exps[1] -= 1
            key = CycloProduct.from_dict(exps)
            out[key] = out.get(key, Fraction(0)) + Fraction(1, weight)
        return MassMap.from_dict(n, out)

    if fam == "D":
        if order == 3:
            return _embedded_table("cwd4")
        want_sign = 1 if order == 1 else -1
        out = {}
        for k in range(n + 1):
            for mp in _partition_mults(k):
                for mm in _partition_mults(n - k):
                    if (-1) ** sum(mm.values()) != want_sign:
                        continue
                    exps = {}
                    weight = 1
                    for i, mi in mp.items():
                        _accumulate(exps, _poly_tminus(i), mi)
                        weight *= factorial(mi) * (2 * i) ** mi
                    for i, mi in mm.items():
                        _accumulate(exps, _poly_tplus(i), mi)
                        weight *= factorial(mi) * (2 * i) ** mi
                    key = CycloProduct.from_dict(exps)
                    out[key] = out.get(key, Fraction(0)) + Fraction(1, weight)
        total = sum(out.values())
        # each coset carries half of H_n, so the raw weights sum to 1/2
        return MassMap.from_dict(n, {p: v / total for p, v in out.items()})

    if order == 2:
        return negate_map(mass_irreducible(kind, 1))
    return _embedded_table(f"we{n}")


def negate_map(m: MassMap) -> MassMap:
    """Mass map of -S from the map of S."""
    return MassMap.from_dict(
        m.degree, {negate_variable(p): v for p, v in m.entries}
    )


@lru_cache(maxsize=None)
def _embedded_table(name: str) -> MassMap:
    text = resources.files("latmass.data").joinpath(f"{name}.json").read_text()
    return MassMap.from_json_dict(json.loads(text))


# ---------------------------------------------------------------------------
# signed cycle index normal form (used by property tests)


SignedCycleIndex = tuple[tuple[int, ...], tuple[int, ...]]  # (m_i^+), (m_i^-), 1-indexed


def sci_weight(m: SignedCycleIndex) -> int:
    mp, mm = m
    w = 1
    for i, c in enumerate(mp, start=1):
        w *= factorial(c) * (2 * i) ** c
    for i, c in enumerate(mm, start=1):
        w *= factorial(c) * (2 * i) ** c
    return w


def sci_poly(m: SignedCycleIndex) -> CycloProduct:
    mp, mm = m
    exps: dict[int, int] = {}
    for i, c in enumerate(mp, start=1):
        _accumulate(exps, _poly_tminus(i), c)
    for i, c in enumerate(mm, start=1):
        _accumulate(exps, _poly_tplus(i), c)
    return CycloProduct.from_dict(exps)


def sci_phi(m: SignedCycleIndex) -> SignedCycleIndex:
    """One rewriting step (t^j-1)(t^j+1) -> (t^{2j}-1) at the smallest j."""
    mp, mm = list(m[0]), list(m[1])
    for j0, (a, b) in enumerate(zip(mp, mm)):
        if a and b:
            j = j0 + 1
            size = max(len(mp), 2 * j)
            mp += [0] * (size - len(mp))
            mm += [0] * (size - len(mm))
            mp[j - 1] -= 1
            mm[j - 1] -= 1
            mp[2 * j - 1] += 1
            return tuple(mp), tuple(mm)
    return m


def sci_psi(m: SignedCycleIndex) -> SignedCycleIndex:
    """Iterate sci_phi to its fixed point in the reduced set."""
    while True:
        nxt = sci_phi(m)
        if nxt == m:
            return m
        m = nxt


# ---------------------------------------------------------------------------
# brute-force coset enumeration


def charpoly_int(mat: Sequence[Sequence[int]]) -> Coeffs:
    """Monic characteristic polynomial det(t*I - A), exact over Z.

    Faddeev-LeVerrier recursion; the divisions by k are exact.
    """
    n = len(mat)
    a = [list(map(int, row)) for row in mat]
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    for k in range(1, n + 1):
        m = [
            [sum(a[i][l] * m[l][j] for l in range(n)) for j in range(n)]
            for i in range(n)
        ]
        c = -sum(m[i][i] for i in range(n)) // k
        assert sum(m[i][i] for i in range(n)) % k == 0
        coeffs[n - k] = c
        for i in range(n):
            m[i][i] += c
    return tuple(coeffs)


def _simple_roots_coords(kind: IrredKind) -> tuple[list[list[int]], list[list[int]]]:
    """Cartan matrix and ambient coordinates of simple roots for brute force."""
    fam, n = kind
    if fam == "A":
        basis = [[0] * (n + 1) for _ in range(n)]
        for i in range(n):
            basis[i][i] = 1
            basis[i][i + 1] = -1
    elif fam == "D":
        basis = [[0] * n for _ in range(n)]
        for i in range(n - 1):
            basis[i][i] = 1
            basis[i][i + 1] = -1
        basis[n - 1][n - 2] = 1
        basis[n - 1][n - 1] = 1
    else:
        raise ValueError(kind)
    cartan = [
        [sum(x * y for x, y in zip(bi, bj)) for bj in basis] for bi in basis
    ]
    return cartan, basis


def cartan_matrix(kind: IrredKind) -> list[list[int]]:
    """Cartan (= Gram of simple roots) matrix, Bourbaki-style chain ordering."""
    fam, n = check_kind(kind)
    if fam in ("A", "D"):
        return _simple_roots_coords(kind)[0]
    # E_n: chain 1-2-...-(n-1) with node n attached to node 3
    c = [[0] * n for _ in range(n)]
    edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    for i in range(n):
        c[i][i] = 2
    for i, j in edges:
        c[i][j] = c[j][i] = -1
    return c


def _weyl_group_root_basis(kind: IrredKind) -> "np.ndarray":
    """All elements of W(kind) as matrices in the simple-root basis."""
    import numpy as np

    c = cartan_matrix(kind)
    n = len(c)
    gens = []
    for i in range(n):
        s = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        for j in range(n):
            s[i][j] -= c[i][j]
        gens.append(np.array(s, dtype=np.int64))
    ident = np.eye(n, dtype=np.int64)
    seen = {ident.tobytes()}
    frontier = ident[None, :, :]
    chunks = [frontier]
    while len(frontier):
        new = []
        for g in gens:
            prod = frontier @ g
            for mat in prod:
                key = mat.tobytes()
                if key not in seen:
                    seen.add(key)
                    new.append(mat)
        if not new:
            break
        frontier = np.array(new, dtype=np.int64)
        chunks.append(frontier)
    return np.concatenate(chunks, axis=0)


def charpolys_batch(mats: "np.ndarray") -> "np.ndarray":
    """Monic characteristic polynomials of a batch of integer matrices.

    Returns an array of shape (len(mats), n+1), coefficients in ascending
    degree order; exact as long as intermediates fit in int64, which is
    checked.
    """
    import numpy as np

    mats = mats.astype(np.int64)
    b, n, _ = mats.shape
    m = np.broadcast_to(np.eye(n, dtype=np.int64), mats.shape).copy()
    out = np.zeros((b, n + 1), dtype=np.int64)
    out[:, n] = 1
    idx = np.arange(n)
    for k in range(1, n + 1):
        m = mats @ m
        assert np.abs(m).max() < (1 << 55), "int64 overflow in charpoly batch"
        tr = m[:, idx, idx].sum(axis=1)
        assert np.all(tr % k == 0)
        c = -tr // k
        out[:, n - k] = c
        m[:, idx, idx] += c[:, None]
    return out


def _coset_polys_signed(n: int, want_sign: int) -> Iterator[Coeffs]:
    """Characteristic polynomials over one sign-coset of H_n, one per element."""
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            if signs.count(-1) % 2 != (0 if want_sign == 1 else 1):
                continue
            mat = [[0] * n for _ in range(n)]
            for j in range(n):
                mat[perm[j]][j] = signs[j]
            yield charpoly_int(mat)


def brute_force_coset_mass(kind: IrredKind, order: int = 1, bound: int = 10**7) -> MassMap:
    """Census of characteristic polynomials over every element of the coset."""
    import numpy as np

    fam, n = check_kind(kind)
    if order not in outer_orders(kind):
        raise IllegalCoset(f"no order-{order} coset for {kind}")

    if fam == "A":
        size = factorial(n + 1)
        if size > bound:
            raise TooLarge(f"{size} elements exceed bound {bound}")
        polys = []
        for perm in itertools.permutations(range(n + 1)):
            mat = [[0] * (n + 1) for _ in range(n + 1)]
            for j in range(n + 1):
                mat[perm[j]][j] = 1
            full = charpoly_int(mat)
            if order == 2:
                full = tuple(c if (n + 1 - i) % 2 == 0 else -c for i, c in enumerate(full))
            # restrict to the sum-zero hyperplane: quotient acts by +-1
            from .cycpoly import poly_divmod

            quo, rem = poly_divmod(full, (-1, 1) if order == 1 else (1, 1))
            assert not rem
            polys.append(factor_cyclo(quo))
        return _census(n, polys)

    if fam == "D":
        size = 2 ** (n - 1) * factorial(n)
        if order == 3:
            if size > bound:
                raise TooLarge(f"{size} elements exceed bound {bound}")
            # order-3 coset: sigma_0 * W(D4) with the explicit half-integer sigma_0;
            # work with 2*sigma_0*w over Z and rescale the coefficients
            sigma2 = [
                [-1, -1, -1, -1],
                [1, 1, -1, -1],
                [1, -1, 1, -1],
                [1, -1, -1, 1],
            ]
            polys = []
            for perm in itertools.permutations(range(4)):
                for signs in itertools.product((1, -1), repeat=4):
                    if signs.count(-1) % 2 != 0:
                        continue
                    w = [[0] * 4 for _ in range(4)]
                    for j in range(4):
                        w[perm[j]][j] = signs[j]
                    m2 = [
                        [sum(sigma2[i][l] * w[l][j] for l in range(4)) for j in range(4)]
                        for i in range(4)
                    ]
                    b = charpoly_int(m2)
                    # char poly of m2/2: b_k * 2^(k-4) must be integral
                    coeffs = []
                    for k, bk in enumerate(b):
                        num = bk * 2**k
                        assert num % 16 == 0
                        coeffs.append(num // 16)
                    polys.append(factor_cyclo(tuple(coeffs)))
            return _census(4, polys)
        if size > bound:
            raise TooLarge(f"{size} elements exceed bound {bound}")
        want_sign = 1 if order == 1 else -1
        return _census(n, (factor_cyclo(p) for p in _coset_polys_signed(n, want_sign)))

    # E series: breadth-first closure over the simple reflections
    sizes = {6: 51840, 7: 2903040, 8: 696729600}
    if sizes[n] > bound:
        raise TooLarge(f"{sizes[n]} elements exceed bound {bound}")
    mats = _weyl_group_root_basis(kind)
    assert len(mats) == sizes[n]
    if order == 2:
        mats = -mats
    polys = []
    step = 200000
    for start in range(0, len(mats), step):
        for row in charpolys_batch(mats[start : start + step]):
            polys.append(factor_cyclo(tuple(int(x) for x in row)))
    return _census(n, polys)


# ---------------------------------------------------------------------------
# combination machinery


POINT_MASS_EMPTY = MassMap.from_dict(0, {CYCLO_ONE: Fraction(1)})


def point_mass(p: CycloProduct) -> MassMap:
    return MassMap.from_dict(p.degree, {p: Fraction(1)})


def convolve(a: MassMap, b: MassMap) -> MassMap:
    """Mass map of a product set S_a x S_b acting block-diagonally."""
    out: dict[CycloProduct, Fraction] = {}
    for p, v in a.entries:
        for q, w in b.entries:
            key = p * q
            out[key] = out.get(key, Fraction(0)) + v * w
    return MassMap.from_dict(a.degree + b.degree, out)


def substitute_map(m: MassMap, l: int) -> MassMap:
    """Image of a mass map under P(t) -> P(t^l); keys stay distinct."""
    return MassMap.from_dict(
        m.degree * l, {substitute_power(p, l): v for p, v in m.entries}
    )


def coset_mass(cycles: Sequence[CosetCycle], complement_poly: CycloProduct = CYCLO_ONE) -> MassMap:
    """Mass map of a Weyl coset described by component cycles.

    Each (kind, l, d) contributes the order-d irreducible mass map with the
    variable raised to the l-th power; the fixed complement polynomial
    multiplies every key.
    """
    out = point_mass(complement_poly)
    for kind, l, d in cycles:
        out = convolve(out, substitute_map(mass_irreducible(kind, d), l))
    return out


def average(weighted: Sequence[tuple[MassMap, Fraction]]) -> MassMap:
    """Weight-normalized sum of mass maps of equal degree."""
    if not weighted:
        raise ValueError("empty average")
    degree = weighted[0][0].degree
    total = Fraction(0)
    out: dict[CycloProduct, Fraction] = {}
    for m, w in weighted:
        if m.degree != degree:
            raise DegreeMismatch("mixed degrees in average")
        if w <= 0:
            raise ValueError("weights must be positive")
        total += w
        for p, v in m.entries:
            out[p] = out.get(p, Fraction(0)) + w * v
    return MassMap.from_dict(degree, {p: v / total for p, v in out.items()})
