"""Lattice-side computation from a Gram matrix.

Short vectors, root systems with their Dynkin components and Weyl vector,
automorphism and stabilizer enumeration by basis-image backtracking, and
the two mass algorithms: a direct census over the full isometry group
(algorithm A) and the much cheaper route through the Weyl-vector
stabilizer and per-component coset masses (algorithm B).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np

from .cycpoly import (
    CYCLO_ONE,
    Coeffs,
    CycloProduct,
    factor_cyclo,
    poly_divmod,
    poly_mul,
)
from .weylmass import (
    CosetCycle,
    IrredKind,
    MassMap,
    _census,
    average,
    cartan_matrix,
    charpoly_int,
    charpolys_batch,
    check_kind,
    coset_mass,
    outer_orders,
)

Gram = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


class NotPositiveDefinite(ValueError):
    pass


class EnumerationTooLarge(RuntimeError):
    """A group or search exceeded the configured enumeration bound."""


class StabilizerTooLarge(EnumerationTooLarge):
    pass


# ---------------------------------------------------------------------------
# Gram matrices


def as_gram(rows) -> Gram:
    """Validate and freeze a symmetric positive-definite integer matrix."""
    g = tuple(tuple(int(x) for x in row) for row in rows)
    n = len(g)
    if any(len(row) != n for row in g):
        raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i):
            if g[i][j] != g[j][i]:
                raise ValueError("matrix is not symmetric")
    _ldl(g)
    return g


def is_even(g: Gram) -> bool:
    return all(g[i][i] % 2 == 0 for i in range(len(g)))


@lru_cache(maxsize=None)
def _ldl(g: Gram) -> tuple[tuple[Fraction, ...], tuple[tuple[Fraction, ...], ...]]:
    """G = L D L^T with unit lower-triangular L; positive pivots required."""
    n = len(g)
    d: list[Fraction] = []
    low = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for i in range(n):
        piv = Fraction(g[i][i]) - sum(d[k] * low[i][k] ** 2 for k in range(i))
        if piv <= 0:
            raise NotPositiveDefinite(f"pivot {i} is {piv}")
        d.append(piv)
        for j in range(i + 1, n):
            s = Fraction(g[j][i]) - sum(low[j][k] * low[i][k] * d[k] for k in range(i))
            low[j][i] = s / piv
    return tuple(d), tuple(tuple(row) for row in low)


def gram_irreducible(kind: IrredKind) -> Gram:
    """Gram matrix of the simple roots of an ADE root lattice."""
    return as_gram(cartan_matrix(check_kind(kind)))


def gram_identity(n: int) -> Gram:
    return as_gram([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def direct_sum(*blocks: Gram) -> Gram:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return as_gram(out)


def gram_named(name: str) -> Gram:
    """Built-in Gram by name: "A2", "D5", "E8", "I4", or sums like "A2+A2"."""
    blocks = []
    for tok in name.replace(" ", "").split("+"):
        if len(tok) < 2 or tok[0] not in "ADEI" or not tok[1:].isdigit():
            raise ValueError(f"unknown lattice name {tok!r}")
        fam, n = tok[0], int(tok[1:])
        blocks.append(gram_identity(n) if fam == "I" else gram_irreducible((fam, n)))
    return direct_sum(*blocks)


def load_gram(text: str) -> Gram:
    """Parse a Gram matrix file: JSON rows, or "n" then n*n whitespace ints."""
    stripped = text.lstrip()
    if stripped.startswith("["):
        return as_gram(json.loads(stripped))
    toks = stripped.split()
    if not toks:
        raise ValueError("empty Gram matrix file")
    n = int(toks[0])
    vals = [int(t) for t in toks[1:]]
    if len(vals) != n * n:
        raise ValueError(f"expected {n * n} entries, got {len(vals)}")
    return as_gram([vals[i * n:(i + 1) * n] for i in range(n)])


# ---------------------------------------------------------------------------
# short vectors


def _norm(g: Gram, v) -> int:
    return sum(v[i] * g[i][j] * v[j] for i in range(len(g)) for j in range(len(g)))


def short_vectors(g: Gram, bound: int) -> list[Vector]:
    """All nonzero v with v.G.v <= bound, one per +-pair.

    Fincke-Pohst enumeration through the LDL decomposition; the returned
    representatives have positive first nonzero coordinate and are sorted
    by (norm, coordinates).
    """
    n = len(g)
    d, low = _ldl(g)
    x = [0] * n
    found: list[tuple[int, Vector]] = []

    def rec(i: int, rem: Fraction) -> None:
        if i < 0:
            v = tuple(x)
            if any(v):
                for c in v:
                    if c:
                        if c > 0:
                            found.append((_norm(g, v), v))
                        break
            return
        c = sum(low[j][i] * x[j] for j in range(i + 1, n))
        t = rem / d[i]
        # integer window for (x_i + c)^2 <= t, with float guess + exact check
        half = math.sqrt(float(t)) + 1
        lo = math.floor(-c - half)
        hi = math.ceil(-c + half)
        for xi in range(lo, hi + 1):
            if (xi + c) ** 2 <= t:
                x[i] = xi
                rec(i - 1, rem - d[i] * (xi + c) ** 2)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    return [v for _, v in sorted(found)]


# ---------------------------------------------------------------------------
# root data


@dataclass(frozen=True)
class Component:
    kind: IrredKind
    simple: tuple[Vector, ...]
    positive_count: int


@dataclass(frozen=True)
class RootDatum:
    roots: tuple[Vector, ...]
    positive: tuple[Vector, ...]
    weyl_vector_times_2: Vector
    components: tuple[Component, ...]

    @property
    def simple_roots(self) -> tuple[Vector, ...]:
        return tuple(a for c in self.components for a in c.simple)


def _component_kind(rank: int, positive_count: int) -> IrredKind:
    if positive_count == rank * (rank + 1) // 2:
        return ("A", rank)
    if rank >= 4 and positive_count == rank * (rank - 1):
        return ("D", rank)
    if (rank, positive_count) in ((6, 36), (7, 63), (8, 120)):
        return ("E", rank)
    raise ValueError(f"no ADE kind with rank {rank} and {positive_count} positive roots")


def root_datum(g: Gram) -> RootDatum:
    """Roots, positive system, simple components and Weyl vector of g."""
    n = len(g)
    pos = [v for v in short_vectors(g, 2) if _norm(g, v) == 2]
    pos_set = set(pos)

    def ip(a, b) -> int:
        return sum(a[i] * g[i][j] * b[j] for i in range(n) for j in range(n))

    def negate(v):
        return tuple(-c for c in v)

    simple = []
    for a in pos:
        decomposable = False
        for b in pos:
            if b != a:
                diff = tuple(x - y for x, y in zip(a, b))
                if diff in pos_set:
                    decomposable = True
                    break
        if not decomposable:
            simple.append(a)

    # connected components of the Dynkin graph
    comp_of = {}
    comps: list[list[Vector]] = []
    for a in simple:
        if a in comp_of:
            continue
        stack, members = [a], []
        comp_of[a] = len(comps)
        while stack:
            cur = stack.pop()
            members.append(cur)
            for b in simple:
                if b not in comp_of and ip(cur, b) != 0:
                    comp_of[b] = len(comps)
                    stack.append(b)
        comps.append(members)

    components = []
    for members in comps:
        count = 0
        for v in pos:
            if any(ip(v, a) != 0 for a in members):
                count += 1
        components.append(
            Component(_component_kind(len(members), count), tuple(members), count)
        )

    weyl2 = tuple(sum(col) for col in zip(*pos)) if pos else (0,) * n
    for c in components:
        for a in c.simple:
            assert ip(a, weyl2) == 2, "simple root fails alpha.rho = 1"

    roots = tuple(pos) + tuple(negate(v) for v in pos)
    return RootDatum(roots, tuple(pos), weyl2, tuple(components))


# ---------------------------------------------------------------------------
# automorphism search


def automorphism_group(
    g: Gram, fix: Vector | None = None, bound: int = 10**7
) -> list[np.ndarray]:
    """All isometries of the lattice (optionally fixing a vector).

    Basis-image backtracking: the image of basis vector i is drawn from
    the pool of lattice vectors of norm g[i][i] (and matching inner
    product with the fixed vector), with forward filtering of the
    remaining pools through every partial assignment.  Each returned
    matrix m has the image coordinates in its columns, so m.T @ g @ m == g.
    """
    n = len(g)
    gm = np.array(g, dtype=np.int64)
    max_norm = max(g[i][i] for i in range(n))
    reps = short_vectors(g, max_norm)
    vs = [v for v in reps] + [tuple(-c for c in v) for v in reps]
    varr = np.array(vs, dtype=np.int64)
    wg = varr @ gm  # row k = Gram functional of vector k
    norms = (wg * varr).sum(axis=1)

    pools: list[np.ndarray] = []
    if fix is not None:
        fx = np.array(fix, dtype=np.int64)
        vdotf = wg @ fx
        bdotf = gm @ fx
    for i in range(n):
        sel = norms == g[i][i]
        if fix is not None:
            sel &= vdotf == bdotf[i]
        pools.append(np.nonzero(sel)[0])

    order = sorted(range(n), key=lambda i: len(pools[i]))
    results: list[np.ndarray] = []
    images = np.zeros((n, n), dtype=np.int64)

    def rec(depth: int, cur: list[np.ndarray]) -> None:
        if depth == n:
            m = images.copy()
            if len(results) >= bound:
                raise EnumerationTooLarge(f"more than {bound} isometries")
            assert np.array_equal(m.T @ gm @ m, gm)
            results.append(m)
            return
        i = order[depth]
        for idx in cur[depth]:
            v = varr[idx]
            nxt = []
            ok = True
            for e in range(depth + 1, n):
                j = order[e]
                keep = cur[e][wg[cur[e]] @ v == g[j][i]]
                if not len(keep):
                    ok = False
                    break
                nxt.append(keep)
            if ok:
                images[:, i] = v
                rec(depth + 1, cur[:depth + 1] + nxt)
        images[:, i] = 0

    rec(0, [pools[i] for i in order])
    return results


# ---------------------------------------------------------------------------
# the two mass algorithms


def algorithm_A(g: Gram, bound: int = 10**7) -> MassMap:
    """Characteristic-polynomial census over the full isometry group."""
    elems = automorphism_group(g, None, bound)
    mats = np.stack(elems)
    coeffs = charpolys_batch(mats)
    polys = [factor_cyclo(tuple(int(c) for c in row)) for row in coeffs]
    return _census(len(g), polys)


def _perm_cycles(perm: list[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    cycles = []
    for s in range(len(perm)):
        if not seen[s]:
            cyc = []
            cur = s
            while not seen[cur]:
                seen[cur] = True
                cyc.append(cur)
                cur = perm[cur]
            cycles.append(cyc)
    return cycles


def _perm_order(perm: list[int], support: list[int]) -> int:
    return lcm(*(len(c) for c in _perm_cycles(perm) if c[0] in set(support))) if support else 1


def algorithm_B(g: Gram, bound: int = 10**7) -> MassMap:
    """Masses through the Weyl-vector stabilizer.

    Every isometry is a Weyl-group element times a unique stabilizer
    element, so the mass map is the size-weighted average, over stabilizer
    elements grouped by their invariant, of the coset mass built from the
    induced component cycles and the characteristic polynomial on the
    orthogonal complement of the root span.
    """
    rd = root_datum(g)
    if not rd.roots:
        return algorithm_A(g, bound)
    try:
        stab = automorphism_group(g, rd.weyl_vector_times_2, bound)
    except EnumerationTooLarge as exc:
        raise StabilizerTooLarge(str(exc)) from exc

    simple = list(rd.simple_roots)
    index = {v: k for k, v in enumerate(simple)}
    comp_of = {}
    for ci, comp in enumerate(rd.components):
        for a in comp.simple:
            comp_of[index[a]] = ci

    groups: dict[tuple[CycloProduct, tuple[CosetCycle, ...]], int] = {}
    for m in stab:
        # a stabilizer element permutes the simple roots
        perm = []
        for a in simple:
            img = tuple(int(c) for c in m @ np.array(a, dtype=np.int64))
            perm.append(index[img])

        # complement charpoly = charpoly(m) / charpoly of the permutation
        span_poly: Coeffs = (1,)
        for cyc in _perm_cycles(perm):
            span_poly = poly_mul(span_poly, (-1,) + (0,) * (len(cyc) - 1) + (1,))
        quot, rem = poly_divmod(charpoly_int(m.tolist()), span_poly)
        assert not any(rem), "root-span charpoly does not divide"
        comp_poly = factor_cyclo(quot)

        # cycles of components, each with its induced twist order
        cperm = [comp_of[perm[index[comp.simple[0]]]] for comp in rd.components]
        cycles: list[CosetCycle] = []
        for cyc in _perm_cycles(cperm):
            first = cyc[0]
            kinds = {rd.components[ci].kind for ci in cyc}
            assert len(kinds) == 1, "mixed kinds in a component cycle"
            l = len(cyc)
            # order of the diagram automorphism induced on the first component
            p = list(range(len(simple)))
            for _ in range(l):
                p = [perm[k] for k in p]
            support = [index[a] for a in rd.components[first].simple]
            d = _perm_order(p, support)
            if d not in outer_orders(rd.components[first].kind):
                raise ValueError(f"twist order {d} impossible for {rd.components[first].kind}")
            cycles.append((rd.components[first].kind, l, d))

        key = (comp_poly, tuple(sorted(cycles)))
        groups[key] = groups.get(key, 0) + 1

    weighted = [
        (coset_mass(list(cycles), comp_poly), Fraction(count))
        for (comp_poly, cycles), count in groups.items()
    ]
    return average(weighted)
