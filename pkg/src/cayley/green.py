# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

"""Green's relations and the structure of J-classes.

Classes are always listed in ascending order of their smallest element id,
so every output here is deterministic.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from itertools import product as cartesian

import numpy as np
import numpy.typing as npt

from .core import FiniteSemigroup, fresh_name, ideal_violation, is_aperiodic, is_ideal, validate
from .errors import (
    InconsistentActionError,
    NoZeroError,
    NotAnIdealError,
    NotAperiodicError,
    NotRegularError,
    PreconditionViolatedError,
)
from .verdict import Verdict

logger = logging.getLogger(__name__)

Partition = tuple[frozenset[int], ...]

# left_action value for "sent to zero"
ROW_ZERO = -1


def _incidence(arr: npt.NDArray[np.int64]) -> npt.NDArray[np.bool_]:
    """inc[s, t] is True iff t is in s·S¹."""
    n = len(arr)
    inc = np.zeros((n, n), dtype=bool)
    inc[np.arange(n)[:, None], arr] = True
    inc[np.arange(n), np.arange(n)] = True
    return inc


def _partition_by_rows(inc: npt.NDArray[np.bool_]) -> Partition:
    groups: dict[bytes, set[int]] = {}
    for s, row in enumerate(inc):
        groups.setdefault(row.tobytes(), set()).add(s)
    return tuple(sorted((frozenset(g) for g in groups.values()), key=min))


@dataclass(frozen=True)
class GreenStructure:
    r_classes: Partition
    l_classes: Partition
    h_classes: Partition
    j_classes: Partition
    j_order: frozenset[tuple[int, int]]  # (lower, upper) pairs of j_classes indices, strict
    regular: tuple[bool, ...]            # per j_classes index
    principal_series: tuple[int, ...]    # j_classes indices, bottom first

    def j_index(self, s: int) -> int:
        return next(i for i, J in enumerate(self.j_classes) if s in J)

    def r_class_of(self, s: int) -> frozenset[int]:
        return next(R for R in self.r_classes if s in R)

    def l_class_of(self, s: int) -> frozenset[int]:
        return next(L for L in self.l_classes if s in L)

    def is_below(self, lower: int, upper: int) -> bool:
        return (lower, upper) in self.j_order

    def series_classes(self) -> list[frozenset[int]]:
        return [self.j_classes[i] for i in self.principal_series]


def green(S: FiniteSemigroup) -> GreenStructure:
    ''' Compute Green's relations from principal ideals.

    R: equal right ideals sS¹; L: equal left ideals S¹s; J: equal S¹sS¹.
    The principal series is a topological sort of the J-order from the bottom,
    ties going to the class with the smallest element id.
    '''
    arr = S.as_array()
    right = _incidence(arr)
    left = _incidence(arr.T)
    # two[s, u]: u in S¹sS¹, i.e. u in tS¹ for some t in S¹s
    two = (left.astype(np.int64) @ right.astype(np.int64)) > 0

    r_classes = _partition_by_rows(right)
    l_classes = _partition_by_rows(left)
    j_classes = _partition_by_rows(two)
    h_classes = tuple(sorted(
        (R & L for R in r_classes for L in l_classes if R & L),
        key=min,
    ))

    reps = [min(J) for J in j_classes]
    j_order = frozenset(
        (lo, hi)
        for lo, hi in cartesian(range(len(j_classes)), repeat=2)
        if lo != hi and two[reps[hi], reps[lo]]
    )
    regular = tuple(any(S.mul(s, s) == s for s in J) for J in j_classes)

    # Kahn's algorithm, bottom up
    placed: list[int] = []
    remaining = set(range(len(j_classes)))
    while remaining:
        ready = [c for c in remaining if all(lo in placed for (lo, hi) in j_order if hi == c)]
        nxt = min(ready)  # classes are sorted by min element
        placed.append(nxt)
        remaining.remove(nxt)

    logger.debug(f"{S.name or 'S'}: {len(j_classes)} J-classes, series {placed}")
    return GreenStructure(r_classes, l_classes, h_classes, j_classes, j_order, regular, tuple(placed))


def h_classes(S: FiniteSemigroup) -> Partition:
    return green(S).h_classes


def is_aperiodic_by_h(S: FiniteSemigroup) -> bool:
    """A finite semigroup is aperiodic iff every H-class is a singleton."""
    return all(len(H) == 1 for H in green(S).h_classes)


def _require_j_class(S: FiniteSemigroup, J: Iterable[int]) -> tuple[GreenStructure, frozenset[int]]:
    structure = green(S)
    J = frozenset(J)
    if J not in structure.j_classes:
        raise PreconditionViolatedError(f"{sorted(J)} is not a J-class of {S.name or 'S'}")
    return structure, J


def zero_minimal_ideals(S: FiniteSemigroup) -> list[tuple[frozenset[int], bool]]:
    """Every J-class J with J ∪ {0} an ideal, with its regularity flag."""
    if S.zero is None:
        raise NoZeroError(f"{S.name or 'semigroup'} has no zero")
    structure = green(S)
    return [
        (J, structure.regular[i])
        for i, J in enumerate(structure.j_classes)
        if S.zero not in J and is_ideal(S, J | {S.zero})
    ]


@dataclass(frozen=True)
class ReesData:
    j_class: frozenset[int]
    a_index: Partition                  # R-classes of J: rows A
    b_index: Partition                  # L-classes of J: columns B
    c_matrix: tuple[tuple[int, ...], ...]  # c_matrix[b][a] over {0, 1}
    coordinates: dict[int, tuple[int, int]]  # element -> (a, b)
    regular: bool

    @property
    def null(self) -> bool:
        return not self.regular

    def element_at(self, a: int, b: int) -> int:
        (x,) = self.a_index[a] & self.b_index[b]
        return x

    def multiply(self, x: int, y: int) -> int | None:
        """Product of two elements of J reconstructed from (A, B, C); None
        when the product falls out of J."""
        a1, b1 = self.coordinates[x]
        a2, b2 = self.coordinates[y]
        if self.c_matrix[b1][a2]:
            return self.element_at(a1, b2)
        return None


def rees_coordinates(S: FiniteSemigroup, J: Iterable[int], *, allow_null: bool = True) -> ReesData:
    ''' Rees matrix coordinates of a J-class J of an aperiodic S with J ∪ {0} an ideal.

    Rows A are the R-classes of J and columns B its L-classes; element x sits at
    (R-class of x, L-class of x).  C[b][a] = 1 iff a representative of column
    b times a representative of row a lands back in J.

    A non-regular J has null multiplication: C is all zero.  It is returned
    with regular=False unless allow_null is False, in which case
    NotRegularError is raised.
    '''
    if not is_aperiodic(S):
        raise NotAperiodicError(f"{S.name or 'semigroup'} is not aperiodic")
    if S.zero is None:
        raise NoZeroError(f"{S.name or 'semigroup'} has no zero; adjoin one first")
    structure, J = _require_j_class(S, J)
    with_zero = J | {S.zero}
    violation = ideal_violation(S, with_zero)
    if violation is not None:
        raise NotAnIdealError(*violation)

    regular = structure.regular[structure.j_classes.index(J)]
    if not regular and not allow_null:
        raise NotRegularError(f"J-class {sorted(J)} is not regular")

    a_index = tuple(R for R in structure.r_classes if R <= J)
    b_index = tuple(L for L in structure.l_classes if L <= J)
    coordinates = {
        x: (a_index.index(structure.r_class_of(x)), b_index.index(structure.l_class_of(x)))
        for x in J
    }
    c_matrix = tuple(
        tuple(int(S.mul(min(L), min(R)) in J) for R in a_index)
        for L in b_index
    )
    return ReesData(J, a_index, b_index, c_matrix, coordinates, regular)


@dataclass(frozen=True)
class ExtendedMatrix:
    rees: ReesData
    c_ext: tuple[tuple[int, ...], ...]        # c_ext[s][a] over {0, 1}
    left_action: tuple[tuple[int, ...], ...]  # left_action[s][a] in A or ROW_ZERO

    def act(self, s: int, a: int) -> int:
        if a == ROW_ZERO:
            return ROW_ZERO
        return self.left_action[s][a]


def extended_matrix(S: FiniteSemigroup, J: Iterable[int]) -> ExtendedMatrix:
    ''' The left action of S on the rows of J, plus a zero row.

    s·(a, b) is either 0 or (a', b) with a' depending only on s and a; this is
    verified for every b and a violation raises InconsistentActionError.
    '''
    rees = rees_coordinates(S, J)
    rows: list[tuple[int, ...]] = []
    for s in S.elements:
        row = []
        for a in range(len(rees.a_index)):
            images = set()
            for b in range(len(rees.b_index)):
                p = S.mul(s, rees.element_at(a, b))
                if p in rees.j_class:
                    a2, b2 = rees.coordinates[p]
                    if b2 != b:
                        raise InconsistentActionError(f"{S.names[s]} moves column {b} to {b2}")
                    images.add(a2)
                else:
                    images.add(ROW_ZERO)
            if len(images) != 1:
                raise InconsistentActionError(f"action of {S.names[s]} on row {a} depends on the column")
            row.append(images.pop())
        rows.append(tuple(row))
    c_ext = tuple(tuple(int(x != ROW_ZERO) for x in row) for row in rows)
    return ExtendedMatrix(rees, c_ext, tuple(rows))


def trace(S: FiniteSemigroup, J: Iterable[int]) -> tuple[FiniteSemigroup, dict[int, int]]:
    ''' The trace of a J-class: J plus a new zero, products leaving J sent to zero.

    Elements of J keep ascending id order; the zero comes last.  Returns the
    trace and the map from S's ids (for elements of J) to trace ids.
    '''
    _, J = _require_j_class(S, J)
    members = sorted(J)
    zero = len(members)
    tid = {x: i for i, x in enumerate(members)}
    rows = [
        [tid.get(S.mul(x, y), zero) for y in members] + [zero]
        for x in members
    ]
    rows.append([zero] * (zero + 1))
    names = [S.names[x] for x in members]
    names.append(fresh_name(["0", "θ"], names))
    return validate(rows, names, f"trace({S.name})" if S.name else 'trace'), tid


def eggbox(S: FiniteSemigroup, J: Iterable[int]) -> str:
    """Text eggbox of one J-class: rows are R-classes, columns L-classes,
    idempotents starred."""
    structure, J = _require_j_class(S, J)
    rows = [R for R in structure.r_classes if R <= J]
    cols = [L for L in structure.l_classes if L <= J]
    cells = [
        [' '.join(('*' if S.mul(x, x) == x else '') + S.names[x] for x in sorted(R & L)) for L in cols]
        for R in rows
    ]
    width = max(len(c) for row in cells for c in row) + 2
    sep = '+' + '+'.join('-' * width for _ in cols) + '+'
    lines = [sep]
    for row in cells:
        lines.append('|' + '|'.join(c.center(width) for c in row) + '|')
        lines.append(sep)
    return '\n'.join(lines)


def zero_product_law_holds(T: FiniteSemigroup, max_len: int = 4) -> Verdict:
    ''' In a 0-simple or null piece: s1...sn = 0 iff some adjacent s_i s_{i+1} = 0.

    Checked over all products of length 2..max_len of nonzero elements.
    '''
    name = 'zero-product law'
    if T.zero is None:
        raise NoZeroError("zero-product law needs a zero")
    nonzero = [x for x in T.elements if x != T.zero]
    checked = 0
    for length in range(2, max_len + 1):
        for word in cartesian(nonzero, repeat=length):
            checked += 1
            prefix = word[0]
            for x in word[1:]:
                prefix = T.mul(prefix, x)
            pair_zero = any(T.mul(x, y) == T.zero for x, y in zip(word, word[1:], strict=False))
            if (prefix == T.zero) != pair_zero:
                return Verdict.failed(name, checked, {'word': [T.names[x] for x in word]})
    return Verdict.passed(name, checked)
