# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

"""The memory semigroup mem(S) and the Rhodes expansion word arithmetic."""

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Any

from .core import FiniteSemigroup, Word, is_aperiodic, is_ideal, product
from .errors import NotAChainError, PreconditionViolatedError
from .green import green
from .machine import CanonicalElement, canonicalize, ideal_alphabet
from .verdict import Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class MemElement:
    element: int
    memory: int  # bitset over element ids

    def members(self) -> list[int]:
        return [s for s in range(self.memory.bit_length()) if self.memory >> s & 1]

    def describe(self, S: FiniteSemigroup) -> str:
        return f"({S.names[self.element]}, {{{', '.join(S.names[s] for s in self.members())}}})"


def _bits(ids: Iterable[int]) -> int:
    mask = 0
    for s in ids:
        mask |= 1 << s
    return mask


def _times(S: FiniteSemigroup, memory: int, t: int) -> int:
    """The set product αt, scattered bit by bit."""
    out = 0
    s = 0
    while memory:
        if memory & 1:
            out |= 1 << S.mul(s, t)
        memory >>= 1
        s += 1
    return out


def mem_mul(S: FiniteSemigroup, x: MemElement, y: MemElement) -> MemElement:
    """(s, α)(t, β) = (st, αt ∪ {t} ∪ β)."""
    t = y.element
    return MemElement(S.mul(x.element, t), _times(S, x.memory, t) | (1 << t) | y.memory)


def mem_elements(S: FiniteSemigroup) -> Iterator[MemElement]:
    for s in S.elements:
        for memory in range(1 << S.order):
            yield MemElement(s, memory)


def mem_power(S: FiniteSemigroup, x: MemElement, n: int) -> MemElement:
    result = x
    for _ in range(n - 1):
        result = mem_mul(S, result, x)
    return result


def mem_project(x: MemElement) -> int:
    return x.element


def phi_mem(S: FiniteSemigroup, gen_word: Sequence[int]) -> MemElement:
    ''' [s_n, ..., s_1] -> (s_n...s_1, {s_{n-1}...s_1, ..., s_2 s_1, s_1}).

    The memory holds the products of the proper right factors of the word.
    '''
    if not gen_word:
        raise PreconditionViolatedError("phi_mem needs a nonempty word")
    suffixes = [product(S, gen_word[k:]) for k in range(1, len(gen_word))]
    return MemElement(product(S, gen_word), _bits(suffixes))


def mem_aperiodicity_index(S: FiniteSemigroup) -> int | None:
    """Least k with m^k = m^(k+1) for every m in mem(S), or None."""
    index = 1
    for x in mem_elements(S):
        seen: dict[MemElement, int] = {}
        power, k = x, 1
        while power not in seen:
            seen[power] = k
            power, k = mem_mul(S, power, x), k + 1
        m = seen[power]
        if k - m > 1:
            return None
        index = max(index, m)
    return index


### Rhodes expansion

def r_below(S: FiniteSemigroup, b: int, a: int) -> bool:
    """b <=_R a, i.e. b in aS¹."""
    return b == a or any(S.mul(a, s) == b for s in S.elements)


def r_equivalent(S: FiniteSemigroup, a: int, b: int) -> bool:
    return r_below(S, a, b) and r_below(S, b, a)


@dataclass(frozen=True)
class ExpansionWord:
    ''' A reduced chain [s_1, s_1 s_2, ..., s_1...s_n] of the Rhodes expansion;
    no two consecutive entries are R-equivalent. '''
    chain: Word

    def describe(self, S: FiniteSemigroup) -> str:
        return '[' + ', '.join(S.names[x] for x in self.chain) + ']'


def chain_from_letters(S: FiniteSemigroup, letters: Sequence[int]) -> Word:
    """[s_1, s_1 s_2, ..., s_1...s_n]."""
    chain = [letters[0]]
    for s in letters[1:]:
        chain.append(S.mul(chain[-1], s))
    return tuple(chain)


def _check_chain(S: FiniteSemigroup, w: Sequence[int]) -> None:
    if not w:
        raise NotAChainError("a chain must be nonempty")
    for i in range(1, len(w)):
        if not r_below(S, w[i], w[i - 1]):
            raise NotAChainError(f"entry {i} ({S.names[w[i]]}) is not R-below {S.names[w[i - 1]]}")


def rhodes_one_step(S: FiniteSemigroup, w: Sequence[int], i: int) -> Word | None:
    """Delete entry i-1 if entry i is R-equivalent to it; None if that
    reduction does not apply."""
    if not 1 <= i < len(w) or not r_equivalent(S, w[i], w[i - 1]):
        return None
    return (*w[:i - 1], *w[i:])


def rhodes_reduce(S: FiniteSemigroup, w: Sequence[int]) -> ExpansionWord:
    _check_chain(S, w)
    current = tuple(w)
    while True:
        step = next(
            (r for i in range(1, len(current)) if (r := rhodes_one_step(S, current, i)) is not None),
            None,
        )
        if step is None:
            return ExpansionWord(current)
        current = step


def rhodes_mul(S: FiniteSemigroup, u: ExpansionWord | Sequence[int], v: ExpansionWord | Sequence[int]) -> ExpansionWord:
    """red(u · v): v's entries are shifted by the last entry of u."""
    u_chain = u.chain if isinstance(u, ExpansionWord) else tuple(u)
    v_chain = v.chain if isinstance(v, ExpansionWord) else tuple(v)
    _check_chain(S, u_chain)
    _check_chain(S, v_chain)
    last = u_chain[-1]
    return rhodes_reduce(S, (*u_chain, *(S.mul(last, x) for x in v_chain)))


### Division of Cayley(S, I) by mem(S)

def _check_division_preconditions(S: FiniteSemigroup, I: frozenset[int]) -> None:
    if S.identity is None or S.zero is None:
        raise PreconditionViolatedError("S needs an identity and a zero; normalize it first")
    if not is_aperiodic(S):
        raise PreconditionViolatedError("S is not aperiodic")
    if S.zero not in I or not is_ideal(S, I):
        raise PreconditionViolatedError(f"{sorted(I)} is not an ideal containing the zero")
    structure = green(S)
    J = I - {S.zero}
    if J not in structure.j_classes or not structure.regular[structure.j_classes.index(J)]:
        raise PreconditionViolatedError(f"{sorted(I)} is not a regular 0-minimal ideal")


def generator_words(S: FiniteSemigroup, max_len: int) -> Iterator[Word]:
    for length in range(1, max_len + 1):
        yield from cartesian(S.elements, repeat=length)


def division_check(S: FiniteSemigroup, I: Iterable[int], max_len: int = 4) -> Verdict:
    ''' For every pair of generator words of length <= max_len,
    phi_mem(v1) = phi_mem(v2) implies v1 = v2 in Cayley(S, I).

    Words are grouped by their mem(S) image and each group is checked against
    its first member, so the reported counterexample is the first in scan
    order.
    '''
    name = 'mem division'
    I = frozenset(I)
    _check_division_preconditions(S, I)
    alphabet = ideal_alphabet(S, I)

    groups: dict[MemElement, tuple[Word, CanonicalElement]] = {}
    checked = 0
    for word in generator_words(S, max_len):
        checked += 1
        key = phi_mem(S, word)
        element = canonicalize(alphabet, word)
        if key not in groups:
            groups[key] = (word, element)
        elif groups[key][1] != element:
            first = groups[key][0]
            return Verdict.failed(name, checked, {
                'mem': key.describe(S),
                'first': alphabet.names_of(first),
                'second': alphabet.names_of(word),
            })
    logger.info(f"{checked} words in {len(groups)} mem classes, no counterexample")
    return Verdict.passed(name, checked)


def mem_summary(S: FiniteSemigroup) -> dict[str, Any]:
    return {
        'order': S.order * (1 << S.order),
        'aperiodicity_index': mem_aperiodicity_index(S),
    }
