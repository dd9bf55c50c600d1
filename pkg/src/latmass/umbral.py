"""Signed-permutation type calculus and the rank-24 isometry-class catalog.

The isometry group of an even unimodular rank-24 lattice with roots splits
as W(R) by a small complement group realized inside the product of
diagram-automorphism wreath products: S_N, the hyperoctahedral group
H_N = {+-1}^N x| S_N, or S_3 wr S_N over D4 factors.  A conjugacy class of
the complement is recorded by a colored cycle type per isotypic factor:
one partition per element order (1, 2, 3) of the power of each cycle.
The catalog of the 23 root-full rank-24 lattices ships as data, together
with the mass table of the rootless one; masses are assembled by the
Weyl-coset combination machinery.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .cycpoly import CYCLO_ONE, CycloProduct
from .weylmass import (
    CosetCycle,
    IrredKind,
    MassMap,
    _accumulate,
    _embedded_table,
    _poly_tminus,
    _poly_tplus,
    average,
    check_kind,
    coset_mass,
    outer_orders,
)
from .reptheory import Partition, parse_partition


# ---------------------------------------------------------------------------
# signed permutations and types


@dataclass(frozen=True)
class SignedPermutation:
    """Element of {+-1}^n x| S_n; perm maps position i to perm[i] (0-based)."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)) or len(self.signs) != n:
            raise ValueError("inconsistent signed permutation")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +-1")

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)), (1,) * n)

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        # matrix convention: (self*other)(x) = self(other(x))
        perm = tuple(self.perm[other.perm[i]] for i in range(len(self.perm)))
        signs = tuple(
            self.signs[other.perm[i]] * other.signs[i] for i in range(len(self.perm))
        )
        return SignedPermutation(perm, signs)

    def __neg__(self) -> "SignedPermutation":
        return SignedPermutation(self.perm, tuple(-s for s in self.signs))


@dataclass(frozen=True)
class ColoredType:
    """Cycle type split by the order (1, 2 or 3) of the cycle's full power."""

    black: Partition = ()
    cyan: Partition = ()
    magenta: Partition = ()

    def weight(self) -> int:
        return sum(self.black) + sum(self.cyan) + sum(self.magenta)

    def __str__(self) -> str:
        return format_type(self)


def type_of(w: SignedPermutation) -> ColoredType:
    """Conjugacy invariant in H_n: cycle lengths with per-cycle sign."""
    n = len(w.perm)
    seen = [False] * n
    black: list[int] = []
    cyan: list[int] = []
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        sign = 1
        i = start
        while not seen[i]:
            seen[i] = True
            sign *= w.signs[i]
            length += 1
            i = w.perm[i]
        (black if sign == 1 else cyan).append(length)
    return ColoredType(
        tuple(sorted(black, reverse=True)), tuple(sorted(cyan, reverse=True))
    )


def format_type(t: ColoredType) -> str:
    """Suffix notation: plain for order 1, "-" for order 2, "~" for order 3."""
    toks: list[tuple[int, int, str]] = []
    for part, suffix in ((t.black, ""), (t.cyan, "-"), (t.magenta, "~")):
        i = 0
        while i < len(part):
            j = i
            while j < len(part) and part[j] == part[i]:
                j += 1
            toks.append((part[i], j - i, suffix))
            i = j
    toks.sort(key=lambda x: (x[0], x[2]))
    out = []
    for m, a, suffix in toks:
        out.append((str(m) if a == 1 else f"{m}^{a}") + suffix)
    return " ".join(out)


def parse_type(s: str) -> ColoredType:
    """Inverse of format_type."""
    parts: dict[str, list[int]] = {"": [], "-": [], "~": []}
    for tok in s.split():
        suffix = ""
        if tok[-1] in "-~":
            suffix = tok[-1]
            tok = tok[:-1]
        if "^" in tok:
            ms, as_ = tok.split("^", 1)
            m, a = int(ms), int(as_)
        else:
            m, a = int(tok), 1
        if m < 1 or a < 1:
            raise ValueError(f"malformed token {tok!r}")
        parts[suffix].extend([m] * a)
    return ColoredType(
        tuple(sorted(parts[""], reverse=True)),
        tuple(sorted(parts["-"], reverse=True)),
        tuple(sorted(parts["~"], reverse=True)),
    )


def charpoly_of_type(t: ColoredType) -> CycloProduct:
    """prod (t^i-1) over black cycles times prod (t^i+1) over cyan cycles.

    This is the characteristic polynomial of any element of H_n of this
    type acting on R^n; order-3 cycles have no H_n meaning and are
    rejected.
    """
    if t.magenta:
        raise ValueError("order-3 cycles have no hyperoctahedral characteristic polynomial")
    exps: dict[int, int] = {}
    for i in t.black:
        _accumulate(exps, _poly_tminus(i), 1)
    for i in t.cyan:
        _accumulate(exps, _poly_tplus(i), 1)
    return CycloProduct.from_dict(exps)


def _type_census(elements: list[SignedPermutation]) -> dict[ColoredType, Fraction]:
    out: dict[ColoredType, Fraction] = {}
    unit = Fraction(1, len(elements))
    for w in elements:
        t = type_of(w)
        out[t] = out.get(t, Fraction(0)) + unit
    return out


# ---------------------------------------------------------------------------
# brute-force censuses of the two hand-published subgroups


def verify_gl2z3() -> dict[ColoredType, Fraction]:
    """Types of GL_2(Z/3) embedded in H_4 via its action on 4 lines.

    The four lines of (Z/3)^2 have representatives v_1..v_4; each g sends
    v_i to +-v_j, defining a signed permutation.
    """
    reps = [(0, 1), (1, 0), (1, 1), (1, -1)]
    elements = []
    for a, b, c, d in itertools.product(range(3), repeat=4):
        if (a * d - b * c) % 3 == 0:
            continue
        perm = [0] * 4
        signs = [0] * 4
        for i, (x, y) in enumerate(reps):
            gx, gy = (a * x + b * y) % 3, (c * x + d * y) % 3
            for j, (u, v) in enumerate(reps):
                if (gx - u) % 3 == 0 and (gy - v) % 3 == 0:
                    perm[i], signs[i] = j, 1
                    break
                if (gx + u) % 3 == 0 and (gy + v) % 3 == 0:
                    perm[i], signs[i] = j, -1
                    break
            else:
                raise AssertionError("line action not found")
        # perm maps position i to position perm[i]
        img = [0] * 4
        sgn = [1] * 4
        for i in range(4):
            img[i] = perm[i]
            sgn[i] = signs[i]
        elements.append(SignedPermutation(tuple(img), tuple(sgn)))
    assert len(elements) == 48
    return _type_census(elements)


def verify_2s5() -> dict[ColoredType, Fraction]:
    """Types of GL_2(Z/5)/{+-1} embedded in H_6 via the six pairs {x, 2x}.

    X = ((Z/5)^2 - 0)/{+-1} has 12 elements grouped in 6 pairs {x, 2x};
    the sign of g at a pair is + when g maps the representative to the
    representative of the image pair, - when it maps it to twice that.
    """

    def normalize(v):
        x, y = v[0] % 5, v[1] % 5
        if x in (3, 4) or (x == 0 and y in (3, 4)):
            x, y = (-x) % 5, (-y) % 5
        return x, y

    points = sorted({normalize((x, y)) for x in range(5) for y in range(5) if (x, y) != (0, 0)})
    assert len(points) == 12
    pair_rep: dict[tuple[int, int], tuple[int, int]] = {}
    reps: list[tuple[int, int]] = []
    for p in points:
        q = normalize((2 * p[0], 2 * p[1]))
        if p in pair_rep or q in pair_rep:
            continue
        pair_rep[p] = p
        pair_rep[q] = p
        reps.append(p)
    assert len(reps) == 6

    elements = []
    seen = set()
    for a, b, c, d in itertools.product(range(5), repeat=4):
        if (a * d - b * c) % 5 == 0:
            continue
        perm = [0] * 6
        signs = [0] * 6
        for i, (x, y) in enumerate(reps):
            g = normalize((a * x + b * y, c * x + d * y))
            rep = pair_rep[g]
            perm[i] = reps.index(rep)
            signs[i] = 1 if g == rep else -1
        key = (tuple(perm), tuple(signs))
        if key in seen:
            continue
        seen.add(key)
        elements.append(SignedPermutation(*key))
    assert len(elements) == 240
    return _type_census(elements)


# ---------------------------------------------------------------------------
# the rank-24 catalog


COXETER = {"A": lambda n: n + 1, "D": lambda n: 2 * n - 2, "E": lambda n: {6: 12, 7: 18, 8: 30}[n]}


@dataclass(frozen=True)
class UmbralClass:
    types: tuple[ColoredType, ...]
    size: Fraction


@dataclass(frozen=True)
class NiemeierRecord:
    name: str
    factors: tuple[tuple[IrredKind, int], ...]  # (kind, multiplicity)
    classes: tuple[UmbralClass, ...]
    mass_table: str | None = None


def _validate_record(rec: NiemeierRecord) -> None:
    if rec.mass_table is not None:
        return
    rank = sum(kind[1] * mult for kind, mult in rec.factors)
    if rank != 24:
        raise ValueError(f"{rec.name}: total rank {rank} != 24")
    coxeters = {COXETER[fam](n) for (fam, n), _ in rec.factors}
    if len(coxeters) != 1:
        raise ValueError(f"{rec.name}: not equi-Coxeter")
    total = Fraction(0)
    for cls in rec.classes:
        total += cls.size
        if len(cls.types) != len(rec.factors):
            raise ValueError(f"{rec.name}: type/factor count mismatch")
        for t, (kind, mult) in zip(cls.types, rec.factors):
            if t.weight() != mult:
                raise ValueError(f"{rec.name}: type {t} weight != {mult}")
            if t.magenta and kind != ("D", 4):
                raise ValueError(f"{rec.name}: order-3 cycles outside D4")
            if t.cyan and 2 not in outer_orders(kind):
                raise ValueError(f"{rec.name}: order-2 cycles over {kind}")
    if total != 1:
        raise ValueError(f"{rec.name}: class sizes sum to {total}")


@lru_cache(maxsize=None)
def catalog() -> tuple[NiemeierRecord, ...]:
    """The 24 isometry-class records of even unimodular rank-24 lattices."""
    text = resources.files("latmass.data").joinpath("niemeier.json").read_text()
    records = []
    for obj in json.loads(text):
        factors = tuple(
            (check_kind((f["family"], f["rank"])), f["mult"]) for f in obj["factors"]
        )
        classes = tuple(
            UmbralClass(
                tuple(parse_type(s) for s in cls["types"]), Fraction(cls["size"])
            )
            for cls in obj.get("classes", [])
        )
        rec = NiemeierRecord(obj["name"], factors, classes, obj.get("mass_table"))
        _validate_record(rec)
        records.append(rec)
    if len(records) != 24:
        raise ValueError(f"expected 24 records, got {len(records)}")
    return tuple(records)


def get_record(name: str) -> NiemeierRecord:
    for rec in catalog():
        if rec.name == name:
            return rec
    raise KeyError(name)


def class_to_cycles(record: NiemeierRecord, cls: UmbralClass) -> list[CosetCycle]:
    """One coset cycle (kind, length, order) per cycle of each factor type."""
    if cls not in record.classes:
        raise ValueError("class does not belong to record")
    out: list[CosetCycle] = []
    for t, (kind, _) in zip(cls.types, record.factors):
        for length in t.black:
            out.append((kind, length, 1))
        for length in t.cyan:
            out.append((kind, length, 2))
        for length in t.magenta:
            out.append((kind, length, 3))
    return out


@lru_cache(maxsize=None)
def niemeier_mass(record: NiemeierRecord) -> MassMap:
    """Characteristic masses of the full isometry group of the record."""
    if record.mass_table is not None:
        return _embedded_table(record.mass_table)
    weighted = [
        (coset_mass(class_to_cycles(record, cls), CYCLO_ONE), cls.size)
        for cls in record.classes
    ]
    return average(weighted)
