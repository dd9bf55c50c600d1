from fractions import Fraction

import numpy as np
import pytest

from latmass.cycpoly import CycloProduct
from latmass.lattice import (
    EnumerationTooLarge,
    NotPositiveDefinite,
    algorithm_A,
    algorithm_B,
    as_gram,
    automorphism_group,
    direct_sum,
    gram_identity,
    gram_irreducible,
    gram_named,
    is_even,
    load_gram,
    root_datum,
    short_vectors,
)
from latmass.weylmass import _embedded_table, mass_irreducible, negate_map


def test_gram_validation():
    with pytest.raises(ValueError):
        as_gram([[2, 1], [0, 2]])
    with pytest.raises(NotPositiveDefinite):
        as_gram([[1, 2], [2, 1]])
    with pytest.raises(NotPositiveDefinite):
        as_gram([[0]])
    assert is_even(gram_named("E8")) and not is_even(gram_identity(3))


def test_load_gram_formats():
    assert load_gram("[[2, -1], [-1, 2]]") == gram_named("A2")
    assert load_gram("2\n2 -1\n-1 2\n") == gram_named("A2")
    with pytest.raises(ValueError):
        load_gram("2\n1 0 0\n")


def test_short_vectors_examples():
    assert len(short_vectors(as_gram([[2]]), 2)) == 1
    assert len(short_vectors(gram_named("A2"), 2)) == 3
    assert len(short_vectors(gram_named("E8"), 2)) == 120
    assert len(short_vectors(gram_named("D4"), 2)) == 12
    # deterministic: sorted by (norm, coordinates), first coordinate positive
    vs = short_vectors(gram_identity(2), 2)
    assert vs == [(0, 1), (1, 0), (1, -1), (1, 1)]


def test_root_datum_components():
    rd = root_datum(direct_sum(gram_irreducible(("A", 2)), gram_irreducible(("A", 1))))
    assert sorted(c.kind for c in rd.components) == [("A", 1), ("A", 2)]
    rd = root_datum(gram_named("D4"))
    assert [c.kind for c in rd.components] == [("D", 4)]
    assert rd.components[0].positive_count == 12
    # every simple root pairs to 1 with the Weyl vector
    for a in rd.simple_roots:
        g = gram_named("D4")
        n = len(g)
        ip = sum(a[i] * g[i][j] * rd.weyl_vector_times_2[j] for i in range(n) for j in range(n))
        assert ip == 2


def test_rootless_gram():
    rd = root_datum(as_gram([[4]]))
    assert rd.roots == () and rd.components == ()


def test_automorphism_groups():
    assert len(automorphism_group(gram_identity(2))) == 8
    assert len(automorphism_group(gram_named("A2"))) == 12
    rd = root_datum(gram_named("E8"))
    assert len(automorphism_group(gram_named("E8"), rd.weyl_vector_times_2)) == 1
    for m in automorphism_group(gram_named("A3")):
        g = np.array(gram_named("A3"))
        assert np.array_equal(m.T @ g @ m, g)


def test_enumeration_bound():
    with pytest.raises(EnumerationTooLarge):
        automorphism_group(gram_named("D4"), bound=10)


def test_algorithm_A_E6_is_folded_weyl_table():
    # the full isometry group is W union -W, so the mass map is the
    # half-sum of the Weyl table and its variable-negated image
    we6 = _embedded_table("we6")
    a = algorithm_A(gram_named("E6"))
    folded = {p: v / 2 for p, v in we6.entries}
    for p, v in negate_map(we6).entries:
        folded[p] = folded.get(p, Fraction(0)) + v / 2
    assert dict(a.entries) == folded


def test_algorithms_agree_beyond_acceptance():
    g = direct_sum(gram_irreducible(("A", 1)), gram_irreducible(("A", 2)))
    assert algorithm_A(g) == algorithm_B(g)


def test_algorithm_B_change_of_basis_invariance():
    rng = np.random.default_rng(11)
    base = gram_named("A2+A2")
    want = algorithm_B(base)
    n = len(base)
    found = 0
    while found < 3:
        u = rng.integers(-2, 3, size=(n, n))
        if round(float(np.linalg.det(u))) not in (1, -1):
            continue
        g = as_gram((u.T @ np.array(base) @ u).tolist())
        assert algorithm_B(g) == want
        found += 1


def test_identity_lattice_masses():
    # O(Z^2) is the dihedral group of order 8
    m = algorithm_A(gram_identity(2))
    assert m[CycloProduct.from_dict({1: 2})] == Fraction(1, 8)
    assert m.total() == 1
    assert algorithm_A(gram_identity(2)) == algorithm_B(gram_identity(2))
