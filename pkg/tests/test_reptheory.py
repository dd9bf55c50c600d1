import pytest

from latmass.cycpoly import CycloProduct, enumerate_car
from latmass.reptheory import (
    NotPermissible,
    associate,
    dim_W,
    dual,
    enumerate_permissible,
    format_partition,
    is_permissible,
    is_positive,
    parse_partition,
    trace_KT,
    trace_Weyl,
    weight,
)


def test_dual_involution():
    assert dual((3, 1)) == (2, 1, 1)
    assert dual(dual((4, 2, 2, 1))) == (4, 2, 2, 1)
    assert dual(()) == ()


def test_permissibility():
    # first two dual columns together must fit in n boxes
    assert is_permissible((3, 1), 24)
    assert not is_permissible((2, 2), 3)
    assert is_permissible((2, 1), 3)
    assert is_permissible((), 1)


def test_associate_involution_and_example():
    assert associate((3, 1), 24) == (3,) + (1,) * 21
    assert associate((3,) + (1,) * 21, 24) == (3, 1)
    for lam in enumerate_permissible(10, 3):
        ass = associate(lam, 10)
        assert is_permissible(ass, 10)
        assert associate(ass, 10) == lam
    with pytest.raises(NotPermissible):
        associate((2, 2), 3)


def test_partition_notation():
    assert format_partition((3, 3, 2, 1, 1, 1)) == "3^2 2 1^3"
    assert parse_partition("3^2 2 1^3") == (3, 3, 2, 1, 1, 1)
    assert parse_partition("0") == ()
    assert format_partition(()) == "0"


def test_enumerate_permissible_filters():
    all10 = enumerate_permissible(10, 2)
    assert all(lam[0] <= 2 for lam in all10 if lam)
    even = enumerate_permissible(10, 2, even_only=True)
    assert all(weight(lam) % 2 == 0 for lam in even)
    pos = enumerate_permissible(10, 2, positive_only=True)
    assert all(is_positive(lam, 10) for lam in pos)


def test_dim_W_values():
    ident = CycloProduct.from_dict({1: 24})
    assert dim_W((), 24) == 1
    assert dim_W((1,), 24) == 24
    assert dim_W((2,), 24) == 299  # traceless symmetric square
    assert dim_W((1, 1), 24) == 276  # exterior square
    assert trace_KT(ident, (2,)) == 299


def test_trace_at_minus_identity():
    # -1 acts on W_lambda by (-1)^{|lambda|}
    minus = CycloProduct.from_dict({2: 6})
    for lam in enumerate_permissible(6, 3):
        expect = (-1) ** weight(lam) * dim_W(lam, 6)
        assert trace_KT(minus, lam) == expect


def test_trace_formulas_agree_small():
    for n in (2, 4):
        lams = enumerate_permissible(n, 3)
        for p in enumerate_car(n):
            for lam in lams:
                assert trace_KT(p, lam) == trace_Weyl(p, lam)


def test_trace_rejects_impermissible():
    with pytest.raises(NotPermissible):
        trace_KT(CycloProduct.from_dict({1: 3}), (2, 2))
