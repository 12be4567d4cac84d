# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

from itertools import product as cartesian

import pytest
from cayley.core import all_semigroups_of_order, direct_product, is_aperiodic, is_idempotent_semigroup, rees_quotient, validate
from cayley.enumeration import (
    cayley_aperiodicity_index,
    enumerate_cayley,
    enumerate_right,
    find_cayley_isomorphism,
    free_growth_witness,
    induced_morphism,
    monoid_identity_checks,
    nilpotent_checks,
    product_embedding,
    sub_division_check,
)
from cayley.errors import IncompleteEnumerationError, NotAMorphismError, NotClosedError, PreconditionViolatedError
from cayley.machine import apply, canonicalize, compose, full_alphabet, ideal_alphabet


@pytest.mark.parametrize('key', ['S1', 'S2', 'S3', 'S4', 'trivial'])
def test_small_catalog_is_its_own_cayley(catalog, key):
    entry = catalog[key]
    S = entry.semigroup
    E = enumerate_cayley(full_alphabet(S))
    assert E.complete
    assert E.size == entry.expected['cayley_size']
    iso = find_cayley_isomorphism(E, S)
    assert iso is not None
    assert sorted(iso) == list(range(S.order))


def test_cyclic_group_grows_freely(s5):
    E = enumerate_cayley(full_alphabet(s5), max_elements=62)
    assert E.status == 'exceeded'
    assert E.size == 62
    assert list(E.growth) == [2, 4, 8, 16, 32]
    with pytest.raises(IncompleteEnumerationError):
        E.require_complete()
    with pytest.raises(IncompleteEnumerationError):
        cayley_aperiodicity_index(E)

    growth = free_growth_witness(s5, max_len=5)
    assert growth.holds
    assert growth.checked == 62


def test_free_growth_needs_a_group(s3):
    with pytest.raises(PreconditionViolatedError):
        free_growth_witness(s3)


def test_shortlex_witnesses(m5):
    E = enumerate_cayley(full_alphabet(m5))
    assert E.complete
    lengths = [len(e.witness) for e in E.elements]
    assert lengths == sorted(lengths)
    assert E.generator_map == {s: s for s in m5.elements}
    assert E.closure_depth == len(E.growth)
    for i, e in enumerate(E.elements):
        assert E.index_of(e) == i


def test_table_is_the_composition(m5):
    E = enumerate_cayley(full_alphabet(m5))
    S = E.as_semigroup()   # validates associativity
    assert S.order == E.size
    for i, j in cartesian(range(E.size), repeat=2):
        assert E.elements[E.table[i][j]] == compose(E.elements[i], E.elements[j])


def test_left_and_right_closures_agree(catalog):
    for key in ('S1', 'S3', 'S4', 'M5'):
        A = full_alphabet(catalog[key].semigroup)
        assert enumerate_right(A) == set(enumerate_cayley(A).elements)


def test_cayley_aperiodicity(catalog):
    E = enumerate_cayley(full_alphabet(catalog['S4'].semigroup))
    assert cayley_aperiodicity_index(E) == 2
    data = E.to_data()
    assert data['status'] == 'complete'
    assert data['aperiodicity_index'] == 2
    assert data['table'] == [list(row) for row in E.table]


def test_ideal_mode(m5):
    A = ideal_alphabet(m5, {2, 3, 4})
    E = enumerate_cayley(A)
    assert E.complete
    assert all(e.alphabet == A for e in E.elements)


@pytest.mark.parametrize('order', [1, 2, 3])
def test_idempotent_semigroups_are_their_own_cayley(order):
    for S in all_semigroups_of_order(order):
        if is_idempotent_semigroup(S):
            E = enumerate_cayley(full_alphabet(S))
            assert find_cayley_isomorphism(E, S) is not None


def test_nilpotent_bounds(s4, m5):
    assert nilpotent_checks(s4)
    assert nilpotent_checks(m5)
    nil3 = validate([[2, 2, 2], [2, 2, 2], [2, 2, 2]], ["x", "y", "0"])
    assert nilpotent_checks(nil3)


def test_nilpotent_bounds_need_nilpotent(s1):
    with pytest.raises(PreconditionViolatedError):
        nilpotent_checks(s1)


@pytest.mark.parametrize('order', [1, 2, 3])
def test_monoid_identity(order):
    monoids = [S for S in all_semigroups_of_order(order) if S.identity is not None]
    assert monoids
    for S in monoids:
        verdict = monoid_identity_checks(S)
        assert verdict, verdict.counterexample


def test_monoid_identity_needs_monoid(s1):
    with pytest.raises(PreconditionViolatedError):
        monoid_identity_checks(s1)


def test_sub_division(s3, m5):
    assert sub_division_check(s3, {0})
    assert sub_division_check(m5, {1, 3, 4})
    with pytest.raises(NotClosedError):
        sub_division_check(m5, {0})


def test_product_embedding(s1, s3, s4):
    assert product_embedding(s1, s3)
    assert product_embedding(s3, s4)


def test_product_embedding_left_by_right_zero(s1, s2):
    verdict = product_embedding(s1, s2)
    assert verdict, verdict.counterexample

    P = direct_product(s1, s2)
    A_P, A_1, A_2 = full_alphabet(P), full_alphabet(s1), full_alphabet(s2)
    # a 2x2 rectangular band is idempotent, so Cayley(P) is P again
    assert enumerate_cayley(A_P).size == 4
    for p in P.elements:
        s, t = divmod(p, s2.order)
        for w in cartesian(P.elements, repeat=3):
            ws, wt = zip(*(divmod(x, s2.order) for x in w), strict=True)
            out = apply(A_P, [p], w)
            assert [divmod(x, s2.order) for x in out] == list(zip(apply(A_1, [s], ws), apply(A_2, [t], wt), strict=True))


def test_induced_morphism_onto_rees_quotient(m5):
    Q, qmap = rees_quotient(m5, {2, 3, 4})   # x^3, x^4, x^5 collapse to 0
    assert qmap == (0, 1, 2, 2, 2)
    E_S, E_T = enumerate_cayley(full_alphabet(m5)), enumerate_cayley(full_alphabet(Q))
    fmap = induced_morphism(qmap, E_S, E_T)
    assert sorted(set(fmap)) == list(range(E_T.size))
    assert E_T.size < E_S.size

    def generator(E, s):
        return E.index_of(canonicalize(E.alphabet, [s]))

    zero = generator(E_T, Q.zero)
    for s in m5.elements:
        assert fmap[generator(E_S, s)] == generator(E_T, qmap[s])
    assert [fmap[generator(E_S, s)] for s in (2, 3, 4)] == [zero] * 3
    assert fmap[generator(E_S, 0)] != zero


def test_induced_morphism(s1, s3, trivial):
    E_S = enumerate_cayley(full_alphabet(s1))
    E_T = enumerate_cayley(full_alphabet(trivial))
    fmap = induced_morphism((0, 0), E_S, E_T)
    assert fmap == (0, 0)
    with pytest.raises(NotAMorphismError):
        induced_morphism((0,), E_S, E_T)
    # 1·0 = 0 in S3 but b·a = b in S1
    with pytest.raises(NotAMorphismError):
        induced_morphism((0, 1), enumerate_cayley(full_alphabet(s3)), E_S)


def test_generator_images(m5):
    A = full_alphabet(m5)
    E = enumerate_cayley(A)
    for s in m5.elements:
        for j in range(E.size):
            assert E.elements[E.left_mul(s, j)] == compose(canonicalize(A, [s]), E.elements[j])


@pytest.mark.slow
def test_aperiodic_order3_cayley_is_finite(order3):
    for S in order3:
        if is_aperiodic(S):
            E = enumerate_cayley(full_alphabet(S), max_elements=1000)
            assert E.complete
            assert cayley_aperiodicity_index(E) is not None
