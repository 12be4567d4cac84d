# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

from itertools import product as cartesian

import pytest
from cayley.core import aperiodicity_index, is_aperiodic, normalize
from cayley.errors import NotAChainError, PreconditionViolatedError
from cayley.expansions import (
    ExpansionWord,
    MemElement,
    chain_from_letters,
    division_check,
    mem_aperiodicity_index,
    mem_elements,
    mem_mul,
    mem_power,
    mem_project,
    mem_summary,
    phi_mem,
    r_below,
    r_equivalent,
    rhodes_mul,
    rhodes_one_step,
    rhodes_reduce,
)
from cayley.green import zero_minimal_ideals
from cayley.testing.oracles import random_word, small_semigroups


def test_mem_mul_formula(s3):
    x = MemElement(1, 0b01)
    y = MemElement(0, 0b10)
    # (1, {0})(0, {1}) = (0, {0·0} ∪ {0} ∪ {1})
    assert mem_mul(s3, x, y) == MemElement(0, 0b11)
    assert x.members() == [0]
    assert x.describe(s3) == "(1, {0})"


@pytest.mark.parametrize('order', [1, 2])
def test_mem_is_a_semigroup(order):
    for S in small_semigroups(order):
        elements = list(mem_elements(S))
        assert len(elements) == S.order * 2 ** S.order
        for x, y, z in cartesian(elements, repeat=3):
            assert mem_mul(S, mem_mul(S, x, y), z) == mem_mul(S, x, mem_mul(S, y, z))
        for x, y in cartesian(elements, repeat=2):
            assert mem_project(mem_mul(S, x, y)) == S.mul(mem_project(x), mem_project(y))


def test_mem_power_formula(m5):
    # (s, α)^n = (s^n, α ∪ α{s, ..., s^(n-1)} ∪ {s, ..., s^(n-1)})
    x = MemElement(0, 0b00010)   # (x, {x^2})
    p = mem_power(m5, x, 3)
    assert p.element == 2
    assert set(p.members()) == {1, 2, 3} | {0}


def test_phi_mem(m5):
    assert phi_mem(m5, [1]) == MemElement(1, 0)
    w = (0, 1, 0)
    assert phi_mem(m5, w) == MemElement(3, 0b00101)   # (x^4, {x^3, x})
    with pytest.raises(PreconditionViolatedError):
        phi_mem(m5, [])


def test_phi_mem_is_multiplicative(rng):
    for S in small_semigroups(3):
        for _ in range(20):
            u = random_word(rng, list(S.elements), 4, min_len=1)
            v = random_word(rng, list(S.elements), 4, min_len=1)
            assert phi_mem(S, u + v) == mem_mul(S, phi_mem(S, u), phi_mem(S, v))


def test_mem_aperiodicity_examples(s3, s5):
    assert mem_aperiodicity_index(s3) == 2
    assert mem_aperiodicity_index(s5) is None
    assert mem_summary(s3) == {'order': 8, 'aperiodicity_index': 2}


def test_mem_aperiodic_iff_aperiodic():
    for S in small_semigroups(3):
        index = aperiodicity_index(S)
        mem_index = mem_aperiodicity_index(S)
        assert (mem_index is None) == (index is None)
        if index is not None:
            assert mem_index is not None
            assert index <= mem_index <= index + 1


def test_r_order(s1, s3):
    assert r_below(s3, 0, 1)
    assert not r_below(s3, 1, 0)
    assert r_equivalent(s3, 1, 1)
    assert not r_equivalent(s1, 0, 1)


def test_rhodes_reduce(s3):
    w = chain_from_letters(s3, [1, 1, 0])
    assert w == (1, 1, 0)
    assert rhodes_one_step(s3, w, 1) == (1, 0)
    assert rhodes_one_step(s3, w, 2) is None
    assert rhodes_one_step(s3, w, 0) is None
    reduced = rhodes_reduce(s3, w)
    assert reduced == ExpansionWord((1, 0))
    assert reduced.describe(s3) == "[1, 0]"


def test_rhodes_rejects_non_chains(s3):
    with pytest.raises(NotAChainError):
        rhodes_reduce(s3, (0, 1))
    with pytest.raises(NotAChainError):
        rhodes_reduce(s3, ())


def test_rhodes_mul(s3):
    assert rhodes_mul(s3, (1,), (1, 0)) == ExpansionWord((1, 0))
    assert rhodes_mul(s3, ExpansionWord((0,)), (1,)) == ExpansionWord((0,))


def test_rhodes_reduction_is_confluent(rng):
    for S in small_semigroups(3):
        for _ in range(30):
            w = chain_from_letters(S, random_word(rng, list(S.elements), 6, min_len=1))
            expected = rhodes_reduce(S, w).chain
            current = w
            while True:
                steps = [r for i in range(1, len(current)) if (r := rhodes_one_step(S, current, i)) is not None]
                if not steps:
                    break
                current = rng.choice(steps)
            assert current == expected


def test_division_on_semilattice(s3):
    verdict = division_check(s3, {0, 1}, max_len=3)
    assert verdict.holds
    assert verdict.checked == 2 + 4 + 8


def test_division_preconditions(s1, s3, s5):
    with pytest.raises(PreconditionViolatedError):
        division_check(s1, {0, 1})        # no identity or zero
    with pytest.raises(PreconditionViolatedError):
        division_check(normalize(s5), {2})  # not aperiodic
    with pytest.raises(PreconditionViolatedError):
        division_check(s3, {0})           # not above a regular J-class


def _division_cases(max_order):
    for S in small_semigroups(max_order):
        if not is_aperiodic(S):
            continue
        N = normalize(S)
        for J, regular in zero_minimal_ideals(N):
            if regular:
                yield N, J | {N.zero}


def test_division_order2():
    cases = list(_division_cases(2))
    assert cases
    for N, I in cases:
        verdict = division_check(N, I, max_len=4)
        assert verdict, verdict.counterexample


@pytest.mark.slow
def test_division_order3():
    for N, I in _division_cases(3):
        verdict = division_check(N, I, max_len=4)
        assert verdict, verdict.counterexample
