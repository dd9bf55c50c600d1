from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from latmass.cycpoly import (
    CYCLO_ONE,
    CycloProduct,
    NotCyclotomicProduct,
    cyclotomic_poly,
    enumerate_car,
    euler_phi,
    expand,
    factor_cyclo,
    format_notation,
    negate_variable,
    parse_notation,
    poly_divmod,
    poly_eval,
    poly_mul,
    substitute_power,
)


def test_euler_phi_small():
    assert [euler_phi(m) for m in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


def test_cyclotomic_poly_values():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    # product over divisors of 12 gives t^12 - 1
    prod = (1,)
    for d in (1, 2, 3, 4, 6, 12):
        prod = poly_mul(prod, cyclotomic_poly(d))
    assert prod == (-1,) + (0,) * 11 + (1,)


def test_expand_factor_roundtrip():
    p = CycloProduct.from_dict({1: 2, 3: 1, 8: 2})
    assert factor_cyclo(expand(p)) == p
    assert expand(CYCLO_ONE) == (1,)


def test_factor_rejects_non_cyclotomic():
    with pytest.raises(NotCyclotomicProduct):
        factor_cyclo((2, 1))
    # 1 + t + t^2 + t^3 = Phi_2 Phi_4 is fine, but t^2 - t - 1 is not
    assert factor_cyclo((1, 1, 1, 1)) == CycloProduct.from_dict({2: 1, 4: 1})
    with pytest.raises(NotCyclotomicProduct):
        factor_cyclo((-1, -1, 1))


def test_notation_roundtrip():
    p = CycloProduct.from_dict({1: 3, 2: 1, 12: 2})
    assert format_notation(p) == "1^3 2 12^2"
    assert parse_notation("1^3 2 12^2") == p
    assert parse_notation("1^0") == CYCLO_ONE
    assert format_notation(CYCLO_ONE) == "1^0"


def test_substitute_power_matches_expansion():
    p = CycloProduct.from_dict({1: 1, 6: 1})
    for l in (1, 2, 3, 4, 6):
        coeffs = expand(p)
        subbed = [0] * (l * (len(coeffs) - 1) + 1)
        for i, c in enumerate(coeffs):
            subbed[l * i] = c
        assert expand(substitute_power(p, l)) == tuple(subbed)


def test_negate_variable_cases():
    # Phi_1 <-> Phi_2, odd m > 1 -> 2m, m = 2 mod 4 -> m/2, m = 0 mod 4 fixed
    assert negate_variable(CycloProduct.from_dict({1: 1})) == CycloProduct.from_dict({2: 1})
    assert negate_variable(CycloProduct.from_dict({3: 1})) == CycloProduct.from_dict({6: 1})
    assert negate_variable(CycloProduct.from_dict({6: 1})) == CycloProduct.from_dict({3: 1})
    assert negate_variable(CycloProduct.from_dict({4: 1})) == CycloProduct.from_dict({4: 1})
    p = CycloProduct.from_dict({1: 2, 5: 1, 12: 1})
    assert negate_variable(negate_variable(p)) == p
    # matches substituting -t in the expansion
    n = p.degree
    want = tuple(c if (n - i) % 2 == 0 else -c for i, c in enumerate(expand(p)))
    assert expand(negate_variable(p)) == want


def test_enumerate_car_small():
    assert [format_notation(p) for p in enumerate_car(1)] == ["1", "2"]
    car2 = {format_notation(p) for p in enumerate_car(2)}
    assert car2 == {"1^2", "1 2", "2^2", "3", "4", "6"}
    for p in enumerate_car(5):
        assert p.degree == 5


def test_poly_divmod_exact():
    num = poly_mul((1, 1), (-1, 0, 1))
    q, r = poly_divmod(num, (1, 1))
    assert q == (-1, 0, 1) and not any(r)


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(st.integers(1, 20), st.integers(1, 3), max_size=4))
def test_roundtrip_property(d):
    p = CycloProduct.from_dict(d)
    assert factor_cyclo(expand(p)) == p
    assert parse_notation(format_notation(p)) == p
    assert negate_variable(negate_variable(p)) == p
    assert poly_eval(expand(p), 1) == 0 if 1 in d else True


def test_cyclotomic_poly_against_sympy():
    sympy = pytest.importorskip("sympy")
    x = sympy.symbols("x")
    for m in (1, 2, 3, 4, 6, 8, 12, 15, 24, 36, 105):
        want = tuple(
            int(c)
            for c in reversed(sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs())
        )
        assert cyclotomic_poly(m) == want


def test_degree_is_phi_sum():
    p = CycloProduct.from_dict({3: 2, 8: 1})
    assert p.degree == 2 * euler_phi(3) + euler_phi(8)
    assert len(expand(p)) == p.degree + 1
