# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

"""Finite semigroups as multiplication tables.

Element ids are dense integers 0..order-1; names are presentation metadata
only.  Every FiniteSemigroup produced by this module has been checked for
associativity over all triples.
"""

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import reduce
from itertools import permutations, product as cartesian
from typing import TypeAlias

import numpy as np
import numpy.typing as npt
from typing_extensions import Self

from .errors import (
    BoundExceededError,
    FormatError,
    NotAnIdealError,
    NotAssociativeError,
    OutOfRangeEntryError,
)

logger = logging.getLogger(__name__)

ElementId: TypeAlias = int
Word: TypeAlias = tuple[int, ...]
Table: TypeAlias = tuple[tuple[int, ...], ...]

MAX_CENSUS_ORDER = 4


@dataclass(frozen=True)
class FiniteSemigroup:
    table: Table
    names: tuple[str, ...]
    identity: ElementId | None = None
    zero: ElementId | None = None
    name: str = ''
    _ids: dict[str, int] = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        self._ids.update({n: i for i, n in enumerate(self.names)})

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], names: Sequence[str] | None = None, name: str = '') -> Self:
        """ Validate a candidate table; see validate(). """
        return cls(**_validated_fields(table, names, name))  # type: ignore[arg-type]

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: ElementId, b: ElementId) -> ElementId:
        return self.table[a][b]

    def id_of(self, name: str) -> ElementId:
        try:
            return self._ids[name]
        except KeyError:
            raise FormatError(f"unknown element name '{name}' in {self.name or 'semigroup'}") from None

    def name_of(self, ident: ElementId) -> str:
        return self.names[ident]

    def as_array(self) -> npt.NDArray[np.int64]:
        return np.array(self.table, dtype=np.int64)

    def with_name(self, name: str) -> "FiniteSemigroup":
        return FiniteSemigroup(self.table, self.names, self.identity, self.zero, name)


def _first_associativity_violation(arr: npt.NDArray[np.int64]) -> tuple[int, int, int] | None:
    # arr[arr][i,j,k] = (ij)k and arr[:, arr][i,j,k] = i(jk)
    bad = np.argwhere(arr[arr] != arr[:, arr])
    if len(bad) == 0:
        return None
    i, j, k = (int(x) for x in bad[0])
    return i, j, k


def _detect_identity(arr: npt.NDArray[np.int64]) -> int | None:
    ids = np.arange(len(arr))
    for e in ids:
        if (arr[e] == ids).all() and (arr[:, e] == ids).all():
            return int(e)
    return None


def _detect_zero(arr: npt.NDArray[np.int64]) -> int | None:
    for z in range(len(arr)):
        if (arr[z] == z).all() and (arr[:, z] == z).all():
            return z
    return None


def _validated_fields(table: Sequence[Sequence[int]], names: Sequence[str] | None, name: str, *, allow_magma: bool = False) -> dict[str, object]:
    n = len(table)
    if n == 0:
        raise FormatError("a semigroup needs at least one element")
    if any(len(row) != n for row in table):
        raise FormatError("multiplication table is not square")
    for i, row in enumerate(table):
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                raise OutOfRangeEntryError(f"entry [{i}][{j}] = {x!r} is not an element id in [0, {n})")

    arr = np.array(table, dtype=np.int64)
    if not allow_magma:
        violation = _first_associativity_violation(arr)
        if violation is not None:
            raise NotAssociativeError(*violation)

    if names is None:
        names = [str(i) for i in range(n)]
    if len(names) != n:
        raise FormatError(f"{len(names)} element names given for a table of order {n}")
    if len(set(names)) != n:
        raise FormatError("element names must be distinct")

    return {
        'table': tuple(tuple(int(x) for x in row) for row in table),
        'names': tuple(names),
        'identity': _detect_identity(arr),
        'zero': _detect_zero(arr),
        'name': name,
    }


def validate(table: Sequence[Sequence[int]], names: Sequence[str] | None = None, name: str = '', *, allow_magma: bool = False) -> FiniteSemigroup:
    ''' Check a candidate multiplication table and build a FiniteSemigroup.

    table[i][j] is the product of element i (left) and element j (right).
    Identity and zero markers are detected automatically.

    Raises:
        OutOfRangeEntryError: an entry is not a valid element id.
        NotAssociativeError: carries the lexicographically first failing triple.

    allow_magma skips the associativity check; it exists so error messages of
    the file parser can be exercised and must not be used for real work.
    '''
    return FiniteSemigroup(**_validated_fields(table, names, name, allow_magma=allow_magma))  # type: ignore[arg-type]


def fresh_name(preferred: Sequence[str], taken: Iterable[str]) -> str:
    taken = set(taken)
    for cand in preferred:
        if cand not in taken:
            return cand
    i = 0
    while f"{preferred[0]}_{i}" in taken:
        i += 1
    return f"{preferred[0]}_{i}"


def adjoin_identity(S: FiniteSemigroup) -> FiniteSemigroup:
    """Return S¹: S itself if it is already a monoid."""
    if S.identity is not None:
        return S
    n = S.order
    rows = [[*row, i] for i, row in enumerate(S.table)]
    rows.append(list(range(n + 1)))
    names = [*S.names, fresh_name(["1", "e", "id"], S.names)]
    return validate(rows, names, f"{S.name}^1" if S.name else '')


def adjoin_zero(S: FiniteSemigroup) -> FiniteSemigroup:
    """Return S⁰: S itself if it already has a zero."""
    if S.zero is not None:
        return S
    n = S.order
    rows = [[*row, n] for row in S.table]
    rows.append([n] * (n + 1))
    names = [*S.names, fresh_name(["0", "θ", "z"], S.names)]
    return validate(rows, names, f"{S.name}^0" if S.name else '')


def normalize(S: FiniteSemigroup) -> FiniteSemigroup:
    """Adjoin a zero and then an identity, each only if missing."""
    return adjoin_identity(adjoin_zero(S))


def dual(S: FiniteSemigroup) -> FiniteSemigroup:
    """The opposite semigroup: a*b in dual(S) is b*a in S."""
    transposed = [[S.table[j][i] for j in S.elements] for i in S.elements]
    return validate(transposed, S.names, f"{S.name}^op" if S.name else '')


def direct_product(S: FiniteSemigroup, T: FiniteSemigroup) -> FiniteSemigroup:
    """Componentwise product; element (s, t) has id s*|T| + t."""
    m = T.order
    pairs = list(cartesian(S.elements, T.elements))
    rows = [
        [S.table[s1][s2] * m + T.table[t1][t2] for (s2, t2) in pairs]
        for (s1, t1) in pairs
    ]
    names = [f"({S.names[s]},{T.names[t]})" for (s, t) in pairs]
    label = f"{S.name}x{T.name}" if S.name and T.name else ''
    return validate(rows, names, label)


def product(S: FiniteSemigroup, word: Iterable[ElementId]) -> ElementId:
    """Left-to-right product of a nonempty sequence of elements."""
    return reduce(S.mul, word)


def power(S: FiniteSemigroup, s: ElementId, k: int) -> ElementId:
    assert k >= 1
    result = s
    for _ in range(k - 1):
        result = S.mul(result, s)
    return result


def element_index_and_period(S: FiniteSemigroup, s: ElementId) -> tuple[int, int]:
    """Return (m, p) with s^(m+p) = s^m, m and p minimal."""
    return _index_and_period(S.table, s)


def _index_and_period(table: Sequence[Sequence[int]], s: int) -> tuple[int, int]:
    seen: dict[int, int] = {}
    x, k = s, 1
    while x not in seen:
        seen[x] = k
        x, k = table[x][s], k + 1
    m = seen[x]
    return m, k - m


def table_aperiodicity_index(table: Sequence[Sequence[int]]) -> int | None:
    """aperiodicity_index() for a bare multiplication table."""
    index = 1
    for s in range(len(table)):
        m, p = _index_and_period(table, s)
        if p > 1:
            return None
        index = max(index, m)
    return index


def aperiodicity_index(S: FiniteSemigroup) -> int | None:
    """Smallest n >= 1 with s^n = s^(n+1) for every s, or None when some
    element generates a nontrivial cyclic group."""
    return table_aperiodicity_index(S.table)


def is_aperiodic(S: FiniteSemigroup) -> bool:
    return aperiodicity_index(S) is not None


def is_monoid(S: FiniteSemigroup) -> bool:
    return S.identity is not None


def is_idempotent_semigroup(S: FiniteSemigroup) -> bool:
    return all(S.mul(s, s) == s for s in S.elements)


def nilpotency_index(S: FiniteSemigroup) -> int | None:
    ''' Least n such that every product of n elements is the zero.

    Returns None when S has no zero or no such n <= order + 1 exists.
    '''
    if S.zero is None:
        return None
    products = set(S.elements)
    for n in range(1, S.order + 2):
        if products == {S.zero}:
            return n
        products = {S.mul(p, s) for p in products for s in S.elements}
    return None


def is_ideal(S: FiniteSemigroup, X: Iterable[ElementId]) -> bool:
    return ideal_violation(S, frozenset(X)) is None


def ideal_violation(S: FiniteSemigroup, X: frozenset[int]) -> tuple[int, int, int] | None:
    for i in sorted(X):
        for s in S.elements:
            for p in (S.mul(s, i), S.mul(i, s)):
                if p not in X:
                    return s, i, p
    return None


def ideal_generated(S: FiniteSemigroup, X: Iterable[ElementId]) -> frozenset[int]:
    """S¹XS¹."""
    X = set(X)
    left = X | {S.mul(s, x) for s in S.elements for x in X}
    return frozenset(left | {S.mul(y, s) for y in left for s in S.elements})


def subsemigroup_generated(S: FiniteSemigroup, X: Iterable[ElementId]) -> frozenset[int]:
    closure = set(X)
    frontier = list(closure)
    while frontier:
        new = {S.mul(a, b) for a in frontier for b in closure} | {S.mul(b, a) for a in frontier for b in closure}
        frontier = list(new - closure)
        closure |= new
    return frozenset(closure)


def is_closed(S: FiniteSemigroup, X: Iterable[ElementId]) -> bool:
    X = set(X)
    return all(S.mul(a, b) in X for a in X for b in X)


def restrict_to(S: FiniteSemigroup, X: Iterable[ElementId]) -> tuple[FiniteSemigroup, dict[int, int]]:
    """The subsemigroup on a closed subset X, renumbered in ascending id order.
    Returns it with the old-id -> new-id map."""
    old = sorted(set(X))
    new_id = {x: i for i, x in enumerate(old)}
    rows = [[new_id[S.mul(a, b)] for b in old] for a in old]
    return validate(rows, [S.names[x] for x in old]), new_id


def rees_quotient(S: FiniteSemigroup, I: Iterable[ElementId]) -> tuple[FiniteSemigroup, tuple[int, ...]]:
    ''' Collapse the ideal I to a single zero.

    Elements outside I keep their relative order and come first; the new zero
    is the last element.  Returns the quotient and the quotient map as a tuple
    indexed by old element id.

    Raises NotAnIdealError with a witness (s, i) when S¹IS¹ is not inside I.
    '''
    ideal = frozenset(I)
    if not ideal:
        raise FormatError("an ideal must be nonempty")
    violation = ideal_violation(S, ideal)
    if violation is not None:
        raise NotAnIdealError(*violation)

    kept = [x for x in S.elements if x not in ideal]
    zero = len(kept)
    new_id = {x: i for i, x in enumerate(kept)}
    qmap = tuple(new_id.get(x, zero) for x in S.elements)
    rows = [[qmap[S.mul(a, b)] for b in [*kept, min(ideal)]] for a in [*kept, min(ideal)]]
    zero_name = S.names[min(ideal)] if len(ideal) == 1 else fresh_name(["0", "θ"], [S.names[x] for x in kept])
    quotient = validate(rows, [*(S.names[x] for x in kept), zero_name], f"{S.name}/I" if S.name else '')
    return quotient, qmap


def is_morphism(S: FiniteSemigroup, T: FiniteSemigroup, fmap: Sequence[int]) -> bool:
    return all(fmap[S.mul(a, b)] == T.mul(fmap[a], fmap[b]) for a in S.elements for b in S.elements)


def monogenic(index: int, period: int = 1) -> FiniteSemigroup:
    ''' The monogenic semigroup <x | x^index = x^(index+period)>.

    Elements are x, x^2, ..., x^(index+period-1) with ids 0, 1, ...
    period=1 gives the aperiodic case x^m = x^(m+1).
    '''
    if index < 1 or period < 1:
        raise FormatError("monogenic semigroups need index >= 1 and period >= 1")
    top = index + period - 1

    def reduce_exp(e: int) -> int:
        return e if e <= top else index + (e - index) % period

    names = ["x" if e == 1 else f"x^{e}" for e in range(1, top + 1)]
    rows = [[reduce_exp(a + b) - 1 for b in range(1, top + 1)] for a in range(1, top + 1)]
    return validate(rows, names, f"<x|x^{index}=x^{index + period}>")


### Isomorphism and the small-order census

def _permuted_flat(table: Table, perm: Sequence[int]) -> tuple[int, ...]:
    n = len(table)
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    return tuple(perm[table[inv[i]][inv[j]]] for i in range(n) for j in range(n))


def canonical_table(table: Table) -> Table:
    """Lexicographically minimal table over all relabelings."""
    n = len(table)
    best = min(_permuted_flat(table, perm) for perm in permutations(range(n)))
    return tuple(best[i * n:(i + 1) * n] for i in range(n))


def canonical_form(S: FiniteSemigroup) -> FiniteSemigroup:
    return validate(canonical_table(S.table))


def find_isomorphism(S: FiniteSemigroup, T: FiniteSemigroup) -> tuple[int, ...] | None:
    """A bijection p with p(a*b) = p(a)*p(b), as a tuple indexed by S's ids."""
    if S.order != T.order:
        return None
    n = S.order
    for perm in permutations(range(n)):
        if all(T.table[perm[i]][perm[j]] == perm[S.table[i][j]] for i in range(n) for j in range(n)):
            return perm
    return None


def _associative_tables(n: int) -> Iterator[list[int]]:
    ''' Backtracking over row-major cell assignments.

    After each assignment every triple whose four lookups are all defined is
    checked, so dead branches are cut as soon as they appear.
    '''
    size = n * n
    t = [-1] * size

    def consistent(i: int, j: int) -> bool:
        v = t[i * n + j]
        for c in range(n):
            # (i j) c == i (j c)
            jc = t[j * n + c]
            left = t[v * n + c]
            if jc >= 0 and left >= 0:
                right = t[i * n + jc]
                if right >= 0 and left != right:
                    return False
        for a in range(n):
            # (a i) j == a (i j)
            ai = t[a * n + i]
            right = t[a * n + v]
            if ai >= 0 and right >= 0:
                left = t[ai * n + j]
                if left >= 0 and left != right:
                    return False
        for a in range(n):
            for b in range(n):
                # (a b) j with ab == i, and (i b) c with bc == j
                if t[a * n + b] == i:
                    bj = t[b * n + j]
                    if bj >= 0:
                        right = t[a * n + bj]
                        if right >= 0 and right != v:
                            return False
                if t[a * n + b] == j:
                    ia = t[i * n + a]
                    if ia >= 0:
                        left = t[ia * n + b]
                        if left >= 0 and left != v:
                            return False
        return True

    def fill(cell: int) -> Iterator[list[int]]:
        if cell == size:
            yield list(t)
            return
        i, j = divmod(cell, n)
        for v in range(n):
            t[cell] = v
            if consistent(i, j):
                yield from fill(cell + 1)
        t[cell] = -1

    yield from fill(0)


def all_semigroups_of_order(n: int) -> list[FiniteSemigroup]:
    ''' Every semigroup of order n up to isomorphism (not anti-isomorphism).

    Each class is represented by its canonical (lexicographically minimal)
    table, and the list is sorted by that table.  Orders above 4 are refused.
    '''
    if n < 1:
        raise FormatError("order must be positive")
    if n > MAX_CENSUS_ORDER:
        raise BoundExceededError(f"exhaustive generation is limited to order <= {MAX_CENSUS_ORDER}")

    classes: set[Table] = set()
    labeled = 0
    for flat in _associative_tables(n):
        labeled += 1
        table = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        classes.add(canonical_table(table))
    logger.debug(f"order {n}: {labeled} associative tables, {len(classes)} isomorphism classes")
    return [validate(t, name=f"n{n}#{k}") for k, t in enumerate(sorted(classes))]


def count_up_to_anti_isomorphism(n: int) -> int:
    census = all_semigroups_of_order(n)
    orbits = {min(S.table, canonical_table(dual(S).table)) for S in census}
    return len(orbits)
