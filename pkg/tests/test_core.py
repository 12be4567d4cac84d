# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

import pytest
from cayley.core import (
    FiniteSemigroup,
    adjoin_identity,
    adjoin_zero,
    aperiodicity_index,
    all_semigroups_of_order,
    canonical_form,
    count_up_to_anti_isomorphism,
    direct_product,
    dual,
    element_index_and_period,
    find_isomorphism,
    ideal_generated,
    is_closed,
    is_ideal,
    is_idempotent_semigroup,
    is_monoid,
    is_morphism,
    monogenic,
    nilpotency_index,
    normalize,
    power,
    product,
    rees_quotient,
    restrict_to,
    subsemigroup_generated,
    validate,
)
from cayley.errors import (
    BoundExceededError,
    FormatError,
    NotAnIdealError,
    NotAssociativeError,
    OutOfRangeEntryError,
)


def test_validate_detects_markers(s3, s4, s5):
    assert (s3.identity, s3.zero) == (1, 0)
    assert (s4.identity, s4.zero) == (None, 0)
    assert (s5.identity, s5.zero) == (0, None)


def test_first_associativity_violation():
    with pytest.raises(NotAssociativeError) as e:
        validate([[1, 0], [0, 0]])
    assert e.value.triple == (0, 0, 1)


def test_magma_allowed_on_request():
    M = validate([[1, 0], [0, 0]], allow_magma=True)
    assert M.order == 2


@pytest.mark.parametrize(('table', 'error'), [
    ([[0, 2], [0, 0]], OutOfRangeEntryError),
    ([[0, -1], [0, 0]], OutOfRangeEntryError),
    ([[0, 0], [0]], FormatError),
    ([], FormatError),
])
def test_malformed_tables(table, error):
    with pytest.raises(error):
        validate(table)


def test_names():
    with pytest.raises(FormatError):
        validate([[0, 0], [0, 0]], ["a"])
    with pytest.raises(FormatError):
        validate([[0, 0], [0, 0]], ["a", "a"])
    S = validate([[0, 0], [0, 0]], ["z", "x"])
    assert S.id_of("x") == 1
    with pytest.raises(FormatError):
        S.id_of("y")


def test_from_table_matches_validate(s1):
    assert FiniteSemigroup.from_table(s1.table, s1.names) == validate(s1.table, s1.names)


@pytest.mark.parametrize(('key', 'index'), [
    ('S1', 1), ('S2', 1), ('S3', 1), ('S4', 2), ('S5', None), ('M5', 5), ('trivial', 1),
])
def test_aperiodicity_index(catalog, key, index):
    assert aperiodicity_index(catalog[key].semigroup) == index
    assert catalog[key].expected['aperiodicity_index'] == index


def test_monogenic(m5):
    assert m5.order == 5
    assert m5.names == ("x", "x^2", "x^3", "x^4", "x^5")
    assert power(m5, 0, 6) == m5.id_of("x^5")
    assert product(m5, [0, 1]) == m5.id_of("x^3")
    assert element_index_and_period(m5, 0) == (5, 1)
    assert nilpotency_index(m5) == 5


def test_monogenic_with_period():
    C = monogenic(2, 3)   # x^2 = x^5
    assert C.order == 4
    assert element_index_and_period(C, 0) == (2, 3)
    assert aperiodicity_index(C) is None
    with pytest.raises(FormatError):
        monogenic(0)


def test_predicates(s1, s3, s4, s5):
    assert is_idempotent_semigroup(s1)
    assert not is_idempotent_semigroup(s4)
    assert is_monoid(s5)
    assert not is_monoid(s1)
    assert nilpotency_index(s4) == 2
    assert nilpotency_index(s3) is None
    assert nilpotency_index(s5) is None


def test_ideals(m5):
    assert is_ideal(m5, {2, 3, 4})
    assert not is_ideal(m5, {0})
    assert ideal_generated(m5, {2}) == {2, 3, 4}
    assert subsemigroup_generated(m5, {1}) == {1, 3, 4}
    assert is_closed(m5, {1, 3, 4})
    assert not is_closed(m5, {0})


def test_restrict_to(m5):
    sub, new_id = restrict_to(m5, {2, 3, 4})
    assert sub.order == 3
    assert new_id == {2: 0, 3: 1, 4: 2}
    assert sub.zero == 2


def test_rees_quotient(m5):
    Q, qmap = rees_quotient(m5, {2, 3, 4})
    assert Q.order == 3
    assert qmap == (0, 1, 2, 2, 2)
    assert Q.zero == 2
    assert Q.names == ("x", "x^2", "0")
    assert Q.mul(0, 0) == 1
    assert Q.mul(0, 1) == 2
    assert is_morphism(m5, Q, qmap)


def test_rees_quotient_errors(m5):
    with pytest.raises(NotAnIdealError) as e:
        rees_quotient(m5, {0})
    assert e.value.witness[1] == 0
    with pytest.raises(FormatError):
        rees_quotient(m5, set())


def test_adjoin(s1, s5):
    S1_1 = adjoin_identity(s1)
    assert S1_1.order == 3
    assert S1_1.identity == 2
    assert S1_1.names[2] == "1"
    assert adjoin_identity(s5) is s5

    S5_0 = adjoin_zero(s5)
    assert S5_0.zero == 2
    assert S5_0.names[2] == "0"


def test_adjoin_avoids_taken_names():
    S = validate([[0, 0], [0, 0]], ["1", "0"])   # zero named "1"
    ext = adjoin_identity(S)
    assert ext.names[2] == "e"


def test_normalize(s1, s3):
    N = normalize(s1)
    assert N.order == 4
    assert (N.zero, N.identity) == (2, 3)
    assert normalize(s3) is s3


def test_dual_and_isomorphism(s1, s2):
    assert find_isomorphism(dual(s1), s2) is not None
    assert find_isomorphism(s1, s2) is None
    perm = find_isomorphism(s2, s2)
    assert perm == (0, 1)


def test_direct_product(s3):
    P = direct_product(s3, s3)
    assert P.order == 4
    assert is_idempotent_semigroup(P)
    assert P.names[3] == "(1,1)"
    assert P.identity == 3


@pytest.mark.parametrize(('order', 'count'), [(1, 1), (2, 5), (3, 24)])
def test_census(order, count):
    census = all_semigroups_of_order(order)
    assert len(census) == count
    # pairwise non-isomorphic
    for i, S in enumerate(census):
        for T in census[i + 1:]:
            assert find_isomorphism(S, T) is None


@pytest.mark.slow
def test_census_order4():
    assert len(all_semigroups_of_order(4)) == 188


@pytest.mark.parametrize(('order', 'count'), [(1, 1), (2, 4), (3, 18)])
def test_anti_isomorphism_count(order, count):
    assert count_up_to_anti_isomorphism(order) == count


def test_census_bound():
    with pytest.raises(BoundExceededError):
        all_semigroups_of_order(5)


def test_census_contains_catalog(catalog, order2):
    for key in ('S1', 'S2', 'S3', 'S4', 'S5'):
        S = catalog[key].semigroup
        assert sum(find_isomorphism(S, T) is not None for T in order2) == 1


def test_canonical_form_is_stable(order3):
    for S in order3:
        assert canonical_form(S).table == S.table
