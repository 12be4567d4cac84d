# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

"""Enumeration of Cayley(S) and its restrictions as abstract semigroups."""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import Any, Literal, TypeAlias

from .core import (
    FiniteSemigroup,
    Word,
    direct_product,
    element_index_and_period,
    is_closed,
    is_idempotent_semigroup,
    is_morphism,
    nilpotency_index,
    restrict_to,
    table_aperiodicity_index,
    validate,
)
from .errors import (
    IncompleteEnumerationError,
    NotAMorphismError,
    NotClosedError,
    PreconditionViolatedError,
    WitnessMismatchError,
)
from .machine import (
    DEFAULT_STATE_BUDGET,
    UNDEFINED,
    Alphabet,
    CanonicalElement,
    canonicalize,
    compose,
    full_alphabet,
)
from .verdict import Verdict

logger = logging.getLogger(__name__)

Status: TypeAlias = Literal['complete', 'exceeded']

DEFAULT_MAX_ELEMENTS = 100_000


class _CapReached(Exception):
    pass


@dataclass(frozen=True)
class EnumResult:
    ''' Elements of the semigroup generated by {φ_s} over one alphabet.

    elements are in shortest-lex witness order.  left[k][j] is the index of
    φ_s ∘ elements[j] for the k-th generator s (UNDEFINED if never computed,
    which only happens when the enumeration was cut off).
    '''
    alphabet: Alphabet
    generators: tuple[int, ...]
    elements: tuple[CanonicalElement, ...]
    left: tuple[tuple[int, ...], ...]
    generator_map: dict[int, int]     # s -> index of φ_s
    growth: tuple[int, ...]           # new elements per witness length
    status: Status
    bound: int

    @property
    def complete(self) -> bool:
        return self.status == 'complete'

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def closure_depth(self) -> int:
        return len(self.growth)

    @cached_property
    def _index(self) -> dict[CanonicalElement, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def index_of(self, element: CanonicalElement) -> int | None:
        return self._index.get(element)

    def left_mul(self, s: int, j: int) -> int:
        return self.left[self.generators.index(s)][j]

    def require_complete(self) -> None:
        if not self.complete:
            raise IncompleteEnumerationError(f"enumeration stopped after {self.size} elements (bound {self.bound})")

    @cached_property
    def table(self) -> tuple[tuple[int, ...], ...]:
        """table[i][j] is the index of elements[i] ∘ elements[j]."""
        self.require_complete()
        rows = []
        for e in self.elements:
            row = []
            for j in range(self.size):
                x = j
                for s in reversed(e.witness):
                    x = self.left_mul(s, x)
                row.append(x)
            rows.append(tuple(row))
        return tuple(rows)

    def as_semigroup(self) -> FiniteSemigroup:
        names = [f"φ[{'.'.join(self.alphabet.names_of(e.witness))}]" for e in self.elements]
        return validate(self.table, names, f"Cayley({self.alphabet.base.name})")

    def to_data(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            'alphabet': self.alphabet.describe(),
            'status': self.status,
            'bound': self.bound,
            'size': self.size,
            'growth': list(self.growth),
            'closure_depth': self.closure_depth,
            'elements': [self.alphabet.names_of(e.witness) for e in self.elements],
            'generator_map': {self.alphabet.name_of(s): i for s, i in self.generator_map.items()},
        }
        if self.complete:
            data['table'] = [list(row) for row in self.table]
            data['aperiodicity_index'] = cayley_aperiodicity_index(self)
        return data


def enumerate_cayley(
    alphabet: Alphabet,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    state_budget: int = DEFAULT_STATE_BUDGET,
    generators: Iterable[int] | None = None,
) -> EnumResult:
    ''' Breadth-first closure of {φ_s} under left multiplication by generators.

    Level k holds the elements whose shortest witness has length k+1.  Within a
    level, candidates are formed with s ascending (outer) and the previous
    level in order (inner), so the first witness found is shortest-lex.

    The result is 'exceeded' when more than max_elements elements would be
    needed; only fully enumerated levels are kept in that case.
    '''
    base = alphabet.base
    gens = tuple(sorted(set(base.elements if generators is None else generators)))
    gen_elements = [canonicalize(alphabet, [s], state_budget) for s in gens]

    index: dict[CanonicalElement, int] = {}
    elements: list[CanonicalElement] = []
    left: list[list[int]] = [[] for _ in gens]
    generator_map: dict[int, int] = {}
    growth: list[int] = []
    status: Status = 'complete'

    level = []
    for s, g in zip(gens, gen_elements, strict=True):
        if g not in index:
            index[g] = len(elements)
            elements.append(g)
            level.append(index[g])
        generator_map[s] = index[g]
    growth.append(len(level))

    if len(elements) > max_elements:
        status = 'exceeded'
        level = []

    while level:
        kept = len(elements)
        new_level: list[int] = []
        try:
            for k, g in enumerate(gen_elements):
                for j in level:
                    e = compose(g, elements[j], state_budget)
                    if e not in index:
                        if len(elements) >= max_elements:
                            raise _CapReached
                        index[e] = len(elements)
                        elements.append(e)
                        new_level.append(index[e])
                    _set(left[k], j, index[e])
        except _CapReached:
            status = 'exceeded'
            for e in elements[kept:]:
                del index[e]
            del elements[kept:]
            break
        logger.debug(f"level {len(growth) + 1}: {len(new_level)} new elements")
        if new_level:
            growth.append(len(new_level))
        level = new_level

    size = len(elements)
    left_rows = tuple(
        tuple(row[j] if j < len(row) and row[j] < size else UNDEFINED for j in range(size))
        for row in left
    )
    logger.info(f"Cayley({base.name or 'S'}) over the {alphabet.mode} alphabet: {size} elements, {status}")
    return EnumResult(alphabet, gens, tuple(elements), left_rows, generator_map, tuple(growth), status, max_elements)


def _set(row: list[int], j: int, value: int) -> None:
    if len(row) <= j:
        row.extend([UNDEFINED] * (j + 1 - len(row)))
    row[j] = value


def enumerate_right(alphabet: Alphabet, max_elements: int = DEFAULT_MAX_ELEMENTS, state_budget: int = DEFAULT_STATE_BUDGET) -> frozenset[CanonicalElement]:
    """The same closure built by right multiplication (new = old ∘ φ_s)."""
    gens = [canonicalize(alphabet, [s], state_budget) for s in alphabet.base.elements]
    found = set(gens)
    frontier = list(dict.fromkeys(gens))
    while frontier:
        new = []
        for e in frontier:
            for g in gens:
                x = compose(e, g, state_budget)
                if x not in found:
                    found.add(x)
                    new.append(x)
        if len(found) > max_elements:
            raise IncompleteEnumerationError(f"right closure passed {max_elements} elements")
        frontier = new
    return frozenset(found)


def cayley_aperiodicity_index(E: EnumResult) -> int | None:
    E.require_complete()
    return table_aperiodicity_index(E.table)


def find_cayley_isomorphism(E: EnumResult, S: FiniteSemigroup) -> tuple[int, ...] | None:
    """The map s -> index of φ_s, if it is an isomorphism S -> Cayley(S)."""
    E.require_complete()
    fmap = tuple(E.generator_map[s] for s in S.elements)
    if E.size != S.order or len(set(fmap)) != S.order:
        return None
    if all(E.table[fmap[a]][fmap[b]] == fmap[S.mul(a, b)] for a in S.elements for b in S.elements):
        return fmap
    return None


def _image(E_T: EnumResult, word: Sequence[int]) -> int:
    """Index in E_T of the element with generator word `word`."""
    x = E_T.index_of(canonicalize(E_T.alphabet, word))
    if x is None:
        raise WitnessMismatchError(f"{E_T.alphabet.names_of(word)} is missing from a complete enumeration")
    return x


def induced_morphism(F: Sequence[int], E_S: EnumResult, E_T: EnumResult) -> tuple[int, ...]:
    ''' The map Cayley(S) -> Cayley(T) induced by a surjective morphism F: S -> T.

    φ_{s_n}...φ_{s_1} goes to φ_{F(s_n)}...φ_{F(s_1)}, computed on witnesses.
    The map is checked to commute with every generator step (so it is well
    defined on all words), to be multiplicative and to be onto.

    Raises:
        NotAMorphismError: F itself is not a surjective morphism.
        WitnessMismatchError: the induced map fails a check.
    '''
    S, T = E_S.alphabet.base, E_T.alphabet.base
    if len(F) != S.order or not is_morphism(S, T, F):
        raise NotAMorphismError("the given map is not a morphism")
    if set(F) != set(T.elements):
        raise NotAMorphismError("the given map is not surjective")
    E_S.require_complete()
    E_T.require_complete()

    fmap = tuple(_image(E_T, [F[s] for s in e.witness]) for e in E_S.elements)
    for s in S.elements:
        for j in range(E_S.size):
            if fmap[E_S.left_mul(s, j)] != E_T.left_mul(F[s], fmap[j]):
                raise WitnessMismatchError(f"induced map is not well defined at φ_{S.names[s]} ∘ element {j}")
    for i, j in cartesian(range(E_S.size), repeat=2):
        if fmap[E_S.table[i][j]] != E_T.table[fmap[i]][fmap[j]]:
            raise WitnessMismatchError(f"induced map is not multiplicative on ({i}, {j})")
    if set(fmap) != set(range(E_T.size)):
        raise WitnessMismatchError("induced map is not onto")
    return fmap


def sub_division_check(S: FiniteSemigroup, T: Iterable[int], max_elements: int = DEFAULT_MAX_ELEMENTS) -> Verdict:
    ''' For a subsemigroup T of S, the subsemigroup of Cayley(S) generated by
    {φ_t : t in T}, restricted to words over T¹, maps onto Cayley(T).

    Restriction happens on witnesses: each element's generator word over T is
    re-evaluated over T's own alphabet.
    '''
    name = 'subsemigroup division'
    T = frozenset(T)
    if not T or not is_closed(S, T):
        raise NotClosedError(f"{sorted(T)} is not closed under the product")
    sub, new_id = restrict_to(S, T)

    E_sub = enumerate_cayley(full_alphabet(S), max_elements, generators=T)
    E_T = enumerate_cayley(full_alphabet(sub), max_elements)
    E_sub.require_complete()
    E_T.require_complete()

    image = [_image(E_T, [new_id[t] for t in e.witness]) for e in E_sub.elements]
    checked = 0
    for t in sorted(T):
        for j in range(E_sub.size):
            checked += 1
            if image[E_sub.left_mul(t, j)] != E_T.left_mul(new_id[t], image[j]):
                return Verdict.failed(name, checked, {
                    'generator': S.names[t],
                    'element': E_sub.alphabet.names_of(E_sub.elements[j].witness),
                })
    missing = set(range(E_T.size)) - set(image)
    if missing:
        return Verdict.failed(name, checked, {'not_covered': [E_T.alphabet.names_of(E_T.elements[k].witness) for k in sorted(missing)]})
    return Verdict.passed(name, checked)


def product_embedding(S: FiniteSemigroup, T: FiniteSemigroup, max_elements: int = DEFAULT_MAX_ELEMENTS) -> Verdict:
    ''' Cayley(S × T) embeds in Cayley(S) × Cayley(T) via
    Π φ_(s_i, t_i) -> (Π φ_s_i, Π φ_t_i).

    Checked well defined (commutes with generator steps), multiplicative and
    injective on the enumerated Cayley(S × T).
    '''
    name = 'product embedding'
    P = direct_product(S, T)
    E_P = enumerate_cayley(full_alphabet(P), max_elements)
    E_S = enumerate_cayley(full_alphabet(S), max_elements)
    E_T = enumerate_cayley(full_alphabet(T), max_elements)
    for E in (E_P, E_S, E_T):
        E.require_complete()

    def split(word: Word) -> tuple[list[int], list[int]]:
        pairs = [divmod(p, T.order) for p in word]
        return [s for s, _ in pairs], [t for _, t in pairs]

    phi = []
    for e in E_P.elements:
        ws, wt = split(e.witness)
        phi.append((_image(E_S, ws), _image(E_T, wt)))

    checked = 0
    for p in P.elements:
        s, t = divmod(p, T.order)
        for j in range(E_P.size):
            checked += 1
            a, b = phi[j]
            if phi[E_P.left_mul(p, j)] != (E_S.left_mul(s, a), E_T.left_mul(t, b)):
                return Verdict.failed(name, checked, {'generator': P.names[p], 'element': j})
    for i, j in cartesian(range(E_P.size), repeat=2):
        checked += 1
        (a1, b1), (a2, b2) = phi[i], phi[j]
        if phi[E_P.table[i][j]] != (E_S.table[a1][a2], E_T.table[b1][b2]):
            return Verdict.failed(name, checked, {'pair': [i, j], 'law': 'multiplicative'})
    if len(set(phi)) != len(phi):
        return Verdict.failed(name, checked, {'law': 'injective'})
    return Verdict.passed(name, checked)


def free_growth_witness(S: FiniteSemigroup, max_len: int = 5, state_budget: int = DEFAULT_STATE_BUDGET) -> Verdict:
    ''' All generator words of length <= max_len over the elements of a
    nontrivial cyclic subgroup are pairwise distinct elements of Cayley(S).

    The subgroup used is the cyclic group of the smallest element id with
    period > 1.
    '''
    name = 'free growth'
    periodic = [s for s in S.elements if element_index_and_period(S, s)[1] > 1]
    if not periodic:
        raise PreconditionViolatedError(f"{S.name or 'semigroup'} has no nontrivial subgroup")
    s = periodic[0]
    m, p = element_index_and_period(S, s)
    group = [s]
    for _ in range(m + p - 2):
        group.append(S.mul(group[-1], s))
    group = sorted(set(group[m - 1:]))

    alphabet = full_alphabet(S)
    seen: dict[CanonicalElement, Word] = {}
    checked = 0
    for length in range(1, max_len + 1):
        for word in cartesian(group, repeat=length):
            checked += 1
            e = canonicalize(alphabet, word, state_budget)
            if e in seen:
                return Verdict.failed(name, checked, {
                    'first': alphabet.names_of(seen[e]),
                    'second': alphabet.names_of(word),
                })
            seen[e] = word
    logger.info(f"{checked} words over {alphabet.names_of(group)} are pairwise distinct")
    return Verdict.passed(name, checked)


def _identity_element(alphabet: Alphabet) -> CanonicalElement:
    letters = alphabet.letters
    return CanonicalElement((tuple(0 for _ in letters),), (letters,), (), alphabet)


def monoid_identity_checks(S: FiniteSemigroup, max_elements: int = 200) -> Verdict:
    ''' For a monoid S:
    φ_1 idempotent <=> φ_1 regular <=> S is an idempotent monoid, and
    Cayley(S) contains the identity map of words <=> S = {1}.

    When Cayley(S) is cut off, regularity of φ_1 is searched among the
    enumerated elements only.
    '''
    name = 'monoid identity'
    if S.identity is None:
        raise PreconditionViolatedError(f"{S.name or 'semigroup'} is not a monoid")
    alphabet = full_alphabet(S)
    E = enumerate_cayley(alphabet, max_elements)
    one = E.generator_map[S.identity]
    phi_one = E.elements[one]

    idempotent = compose(phi_one, phi_one) == phi_one
    regular = any(compose(compose(phi_one, g), phi_one) == phi_one for g in E.elements)
    idempotent_monoid = is_idempotent_semigroup(S)
    has_identity_map = _identity_element(alphabet) in set(E.elements)

    facts = {
        'phi_1_idempotent': idempotent,
        'phi_1_regular': regular,
        'idempotent_monoid': idempotent_monoid,
        'identity_map_present': has_identity_map,
        'trivial': S.order == 1,
    }
    if not (idempotent == regular == idempotent_monoid) or has_identity_map != (S.order == 1):
        return Verdict.failed(name, E.size, facts)
    return Verdict.passed(name, E.size)


def nilpotent_checks(S: FiniteSemigroup, max_elements: int = DEFAULT_MAX_ELEMENTS) -> Verdict:
    ''' For nilpotent S of index n: every product of n generators is φ_0, and
    |Cayley(S)| <= (|S|^n - 1)/(|S| - 1) + 1. '''
    name = 'nilpotent bounds'
    n = nilpotency_index(S)
    if n is None or S.zero is None:
        raise PreconditionViolatedError(f"{S.name or 'semigroup'} is not nilpotent")
    alphabet = full_alphabet(S)
    phi_zero = canonicalize(alphabet, [S.zero])
    checked = 0
    for word in cartesian(S.elements, repeat=n):
        checked += 1
        if canonicalize(alphabet, word) != phi_zero:
            return Verdict.failed(name, checked, {'word': alphabet.names_of(word)})

    E = enumerate_cayley(alphabet, max_elements)
    E.require_complete()
    bound = sum(S.order ** k for k in range(n)) + 1
    checked += 1
    if E.size > bound:
        return Verdict.failed(name, checked, {'size': E.size, 'bound': bound})
    return Verdict.passed(name, checked)
