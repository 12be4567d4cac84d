# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

"""Slow reference evaluators and seeded instance generators for tests."""

import random
from collections.abc import Sequence
from functools import cache

from cayley.catalog import catalog
from cayley.core import FiniteSemigroup, Word, all_semigroups_of_order
from cayley.machine import Alphabet


def naive_apply(alphabet: Alphabet, gen_word: Sequence[int], w: Sequence[int]) -> Word:
    ''' φ_s(a_1...a_m) = [s a_1, s a_1 a_2, ..., s a_1...a_m], applied
    generator by generator (s_1 first), with products formed left to right
    through the alphabet's action. '''
    word = tuple(w)
    for s in reversed(gen_word):
        out = []
        q = s
        for a in word:
            q = alphabet.act(q, a)
            out.append(q)
        word = tuple(out)
    return word


@cache
def small_semigroups(max_order: int = 3) -> tuple[FiniteSemigroup, ...]:
    """Every semigroup of order <= max_order, census order, smallest first."""
    return tuple(S for n in range(1, max_order + 1) for S in all_semigroups_of_order(n))


def random_word(rng: random.Random, letters: Sequence[int], max_len: int, min_len: int = 0) -> Word:
    return tuple(rng.choice(letters) for _ in range(rng.randint(min_len, max_len)))


def random_catalog_semigroup(rng: random.Random) -> FiniteSemigroup:
    return rng.choice(catalog()).semigroup


def random_instance(rng: random.Random, alphabet: Alphabet, max_gen_len: int = 4, max_input_len: int = 6) -> tuple[Word, Word]:
    """A random (generator word, input word) pair over an alphabet."""
    gen_word = random_word(rng, list(alphabet.generators), max_gen_len, min_len=1)
    return gen_word, random_word(rng, alphabet.letters, max_input_len)
