"""Self-verification suites shared by the CLI `verify` command and the tests.

Each check function returns normally on success and raises AssertionError
(or a library exception) on failure.  run_all executes the fast suite; the
long flag adds the multi-minute Weyl-group enumerations.
"""

from __future__ import annotations

import time
from fractions import Fraction
from math import isqrt

from .cycpoly import (
    CYCLO_ONE,
    CycloProduct,
    enumerate_car,
    expand,
    poly_eval,
)
from .reptheory import enumerate_permissible, trace_KT, trace_Weyl
from .weylmass import (
    MassMap,
    _embedded_table,
    brute_force_coset_mass,
    convolve,
    mass_irreducible,
    outer_orders,
)
from .umbral import catalog, get_record, niemeier_mass, verify_gl2z3, verify_2s5
from .lattice import algorithm_A, algorithm_B, gram_named
from .dims import combine, dim_genus, dim_invariants, mu

CAR_COUNTS = {1: 2, 2: 6, 8: 224, 24: 115966, 26: 217962}


def _ident(n: int) -> CycloProduct:
    return CycloProduct.from_dict({1: n})


def check_car_counts() -> None:
    """Cardinalities of Car_n, enumerated in bounded time."""
    start = time.monotonic()
    for n, count in CAR_COUNTS.items():
        assert len(enumerate_car(n)) == count, f"Car_{n} count"
    assert time.monotonic() - start < 10, "Car enumeration too slow"


def check_irreducible_masses(long: bool = False) -> None:
    """Closed-form irreducible mass maps against exhaustive enumeration."""
    for fam, top in (("A", 6), ("D", 6)):
        for n in range(1 if fam == "A" else 3, top + 1):
            for d in outer_orders((fam, n)):
                if (fam, n, d) == ("D", 4, 3):
                    continue
                assert mass_irreducible((fam, n), d) == brute_force_coset_mass(
                    (fam, n), d
                ), f"{fam}{n} order {d}"
    assert mass_irreducible(("D", 4), 3) == brute_force_coset_mass(("D", 4), 3)
    for d in (1, 2):
        assert mass_irreducible(("E", 6), d) == brute_force_coset_mass(("E", 6), d)
    if long:
        assert mass_irreducible(("E", 7)) == brute_force_coset_mass(("E", 7))


def check_embedded_tables() -> None:
    """Entry counts, total mass, and identity masses of the shipped tables."""
    expected = {
        "cwd4": (4, 7, None),
        "we6": (6, 25, Fraction(1, 51840)),
        "we7": (7, 54, Fraction(1, 2903040)),
        "we8": (8, 106, Fraction(1, 696729600)),
        "leech": (24, 160, Fraction(1, 8315553613086720000)),
    }
    for name, (degree, count, ident_mass) in expected.items():
        m = _embedded_table(name)
        assert m.degree == degree and len(m) == count, name
        assert m.total() == 1, name
        if ident_mass is not None:
            assert m[_ident(degree)] == ident_mass, name


def check_leech_identity() -> None:
    """Sum of mass * polynomial over the Leech table has five terms."""
    total = [0] * 25
    for p, v in _embedded_table("leech").entries:
        for i, c in enumerate(expand(p)):
            total[i] += v * c
    want = [0] * 25
    for i in (0, 8, 12, 16, 24):
        want[i] = 1
    assert total == want, "Leech mass-weighted polynomial identity"


def check_umbral_censuses() -> None:
    """Brute-force signed-permutation censuses against the catalog data."""
    for census, rec_name in ((verify_gl2z3(), "4E6"), (verify_2s5(), "6A4")):
        rec = get_record(rec_name)
        want = {cls.types[0]: cls.size for cls in rec.classes}
        assert census == want, rec_name


def check_mass_closure() -> None:
    """Smith-Minkowski-Siegel closure of the shipped genus data."""
    assert mu(8) == _embedded_table("we8")[_ident(8)]
    e8e8 = convolve(_embedded_table("we8"), _embedded_table("we8"))
    d16 = mass_irreducible(("D", 16))
    assert mu(16) == Fraction(1, 2) * e8e8[_ident(16)] + d16[_ident(16)]
    total = sum(
        (niemeier_mass(rec)[_ident(24)] for rec in catalog()), Fraction(0)
    )
    assert total == mu(24)


def check_trace_formulas(max_degree: int = 6) -> None:
    """The two determinantal trace formulas agree on every Car polynomial."""
    for n in range(1, max_degree + 1):
        lams = enumerate_permissible(n, 3)
        for p in enumerate_car(n):
            for lam in lams:
                assert trace_KT(p, lam) == trace_Weyl(p, lam), (p, lam)


def check_algorithms() -> None:
    """The census and stabilizer mass algorithms agree."""
    for name in ("A2", "A3", "D4", "D5", "E6", "A2+A2", "A1+A1+A1"):
        g = gram_named(name)
        assert algorithm_A(g) == algorithm_B(g), name
    assert algorithm_B(gram_named("E8")) == _embedded_table("we8")


def _is_square(x: int) -> bool:
    return x >= 0 and isqrt(x) ** 2 == x


def check_square_condition() -> None:
    """Writing P = (t-1)^a (t+1)^b Q: a = 0 forces Q(1) to be a square
    and b = 0 forces Q(-1) to be a square, on every catalog polynomial."""
    for rec in catalog():
        for p, _ in niemeier_mass(rec).entries:
            exps = dict(p.exponents)
            a = exps.pop(1, 0)
            b = exps.pop(2, 0)
            q = expand(CycloProduct.from_dict(exps))
            if a == 0:
                assert _is_square(poly_eval(q, 1)), (rec.name, p)
            if b == 0:
                assert _is_square(poly_eval(q, -1)), (rec.name, p)


def check_dim_integrality() -> None:
    """Invariant dimensions vanish in odd weight and are integers in even."""
    maps = [niemeier_mass(rec) for rec in catalog()]
    total = combine(maps)
    odd = [(1,), (3,), (2, 1), (1, 1, 1), (3, 1, 1)]
    even = [(), (2,), (1, 1), (3, 1), (2, 2), (2, 1, 1)]
    for lam in odd:
        assert dim_invariants(total, lam) == 0, lam
    for m in maps[:3]:
        for lam in odd:
            assert dim_invariants(m, lam) == 0, lam
        for lam in even:
            dim_invariants(m, lam)  # raises NonIntegralResult on failure
    spots = {(): 24, (2,): 9, (3, 1): 1, (2, 2, 2, 2, 2, 1, 1, 1, 1): 1,
             (3,) * 12: 74, (3,) * 8 + (2,) * 4: 346}
    for lam, want in spots.items():
        assert dim_genus(maps, lam) == want, lam


ALL_CHECKS = [
    check_car_counts,
    check_embedded_tables,
    check_leech_identity,
    check_umbral_censuses,
    check_irreducible_masses,
    check_trace_formulas,
    check_algorithms,
    check_mass_closure,
    check_square_condition,
    check_dim_integrality,
]


def run_all(long: bool = False, report=print) -> bool:
    ok = True
    for fn in ALL_CHECKS:
        name = fn.__name__
        start = time.monotonic()
        try:
            if fn is check_irreducible_masses:
                fn(long)
            else:
                fn()
        except Exception as exc:  # report and continue
            ok = False
            report(f"FAIL  {name}: {exc!r}")
        else:
            report(f"ok    {name} ({time.monotonic() - start:.1f}s)")
    return ok
