from fractions import Fraction

import pytest

from latmass.cycpoly import CycloProduct
from latmass.umbral import (
    COXETER,
    ColoredType,
    SignedPermutation,
    catalog,
    charpoly_of_type,
    class_to_cycles,
    format_type,
    get_record,
    niemeier_mass,
    parse_type,
    type_of,
)


def test_signed_permutation_algebra():
    g = SignedPermutation((1, 0, 2), (1, 1, -1))
    e = SignedPermutation.identity(3)
    assert g * e == g
    assert (-g).signs == (-1, -1, 1)


def test_type_of_examples():
    # a plain 3-cycle and a sign-flipped fixed point
    g = SignedPermutation((1, 2, 0, 3), (1, 1, 1, -1))
    t = type_of(g)
    assert t.black == (3,) and t.cyan == (1,) and t.magenta == ()


def test_type_notation_roundtrip():
    for s in ("1^4", "1^2- 2", "1 1- 2", "1~ 5~", "1- 3-", "2^2 6"):
        assert format_type(parse_type(s)) == s


def test_charpoly_of_type():
    # black j-cycle contributes t^j - 1, cyan contributes t^j + 1
    t = parse_type("1 2-")
    assert charpoly_of_type(t) == CycloProduct.from_dict({1: 1, 4: 1})
    with pytest.raises(ValueError):
        charpoly_of_type(parse_type("1~"))


def test_catalog_shape():
    recs = catalog()
    assert len(recs) == 24
    names = [r.name for r in recs]
    assert names[0] == "D24" and names[-1] == "leech"
    assert len(set(names)) == 24
    for rec in recs:
        if rec.name == "leech":
            continue
        assert sum(n * mult for (_, n), mult in rec.factors) == 24
        assert sum(cls.size for cls in rec.classes) == 1
        coxeters = {COXETER[fam](n) for (fam, n), _ in rec.factors}
        assert len(coxeters) == 1


def test_class_to_cycles_3e8():
    rec = get_record("3E8")
    cycles = [sorted(class_to_cycles(rec, cls)) for cls in rec.classes]
    assert cycles == [
        [(("E", 8), 1, 1)] * 3,
        [(("E", 8), 1, 1), (("E", 8), 2, 1)],
        [(("E", 8), 3, 1)],
    ]


def test_niemeier_masses_normalized():
    for name in ("D24", "3E8", "leech"):
        m = niemeier_mass(get_record(name))
        assert m.degree == 24 and m.total() == 1


def test_d24_is_irreducible_mass():
    from latmass.weylmass import mass_irreducible

    assert niemeier_mass(get_record("D24")) == mass_irreducible(("D", 24))


def test_unknown_record():
    with pytest.raises(KeyError):
        get_record("D23")
