# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

"""Ideal/J-class towers: stable words, trace projection, and the embedding
of Cayley(S, T ∪ J) into a semidirect product.

Every context works over a normalized semigroup (a zero and an identity are
adjoined when missing).  Adjoining only appends elements, so element ids of
the input stay valid.
"""

import logging
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as cartesian
from random import Random
from typing import Any

from .core import FiniteSemigroup, Word, ideal_violation, normalize, rees_quotient
from .enumeration import DEFAULT_MAX_ELEMENTS, EnumResult, cayley_aperiodicity_index, enumerate_cayley
from .errors import ActionKilledError, PreconditionViolatedError
from .expansions import generator_words
from .green import ROW_ZERO, ExtendedMatrix, ReesData, green, rees_coordinates
from .machine import (
    Alphabet,
    CanonicalElement,
    apply,
    canonicalize,
    compose,
    guard_first_letter,
    ideal_alphabet,
    restrict,
    trace_alphabet,
)
from .verdict import Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TowerContext:
    S: FiniteSemigroup   # normalized
    T: frozenset[int]
    J: frozenset[int]
    normalized: bool = field(default=False, compare=False)  # True if 0 or 1 had to be adjoined

    @cached_property
    def alphabet(self) -> Alphabet:
        """Words over T ∪ J."""
        return ideal_alphabet(self.S, self.T | self.J)

    @cached_property
    def t_alphabet(self) -> Alphabet:
        return ideal_alphabet(self.S, self.T)

    @cached_property
    def trace_alphabet(self) -> Alphabet:
        return trace_alphabet(self.S, self.J)

    @property
    def trace_letters(self) -> tuple[int, ...]:
        return self.trace_alphabet.letters

    def describe(self) -> str:
        names = self.S.names
        return f"T={{{','.join(names[x] for x in sorted(self.T))}}} J={{{','.join(names[x] for x in sorted(self.J))}}}"


def make_context(S: FiniteSemigroup, T: Iterable[int], J: Iterable[int]) -> TowerContext:
    ''' Normalize S and check that T is an ideal and J is a J-class directly
    above it (J ∩ T empty, J ∪ T an ideal). '''
    N = normalize(S)
    T, J = frozenset(T), frozenset(J)
    if not T or ideal_violation(N, T) is not None:
        raise PreconditionViolatedError(f"{sorted(T)} is not an ideal")
    if J not in green(N).j_classes:
        raise PreconditionViolatedError(f"{sorted(J)} is not a J-class")
    if J & T or ideal_violation(N, J | T) is not None:
        raise PreconditionViolatedError("J is not directly above T")
    if N is not S:
        logger.info(f"normalized {S.name or 'S'} to order {N.order}")
    return TowerContext(N, T, J, N is not S)


def contexts_from_series(S: FiniteSemigroup) -> Iterator[TowerContext]:
    """One context per step of the principal series of the normalized S."""
    N = normalize(S)
    layers = green(N).series_classes()
    for k in range(1, len(layers)):
        T = frozenset().union(*layers[:k])
        yield TowerContext(N, T, layers[k], N is not S)


def j_prefix_len(ctx: TowerContext, w: Sequence[int]) -> int:
    ctx.alphabet.check_word(w)
    n = 0
    for a in w:
        if a not in ctx.J:
            break
        n += 1
    return n


def is_stable(ctx: TowerContext, f: Sequence[int], w: Sequence[int]) -> bool:
    """w is f-J-stable when f keeps the length of its J-prefix."""
    return j_prefix_len(ctx, w) == j_prefix_len(ctx, apply(ctx.alphabet, f, w))


def trace_project(ctx: TowerContext, f: Sequence[int]) -> CanonicalElement:
    """f^tr: the action of f on words over J^tr, T collapsed to θ."""
    return canonicalize(ctx.trace_alphabet, f)


def st_equal(ctx: TowerContext, f: Sequence[int] | CanonicalElement, g: Sequence[int] | CanonicalElement) -> bool:
    ''' The stable-word congruence: same stable words, same outputs on them.

    Bisimulation over (state of f, state of g, input still inside J); pairs are
    only followed while the word read so far is stable for both.  A stable
    word stays stable under prefixes, so an unstable word ends the search
    along that branch.
    '''
    fm = f if isinstance(f, CanonicalElement) else canonicalize(ctx.alphabet, f)
    gm = g if isinstance(g, CanonicalElement) else canonicalize(ctx.alphabet, g)
    letters = ctx.alphabet.letters
    start = (0, 0, True)
    seen = {start}
    work = deque([start])
    while work:
        p, q, in_j = work.popleft()
        for ai, a in enumerate(letters):
            still_j = in_j and a in ctx.J
            of, og = fm.outputs[p][ai], gm.outputs[q][ai]
            stable_f = not still_j or of in ctx.J
            stable_g = not still_j or og in ctx.J
            if stable_f != stable_g:
                return False
            if not stable_f:
                continue
            if of != og:
                return False
            nxt = (fm.trans[p][ai], gm.trans[q][ai], still_j)
            if nxt not in seen:
                seen.add(nxt)
                work.append(nxt)
    return True


def st_equal_by_words(ctx: TowerContext, f: Sequence[int], g: Sequence[int], depth: int) -> bool:
    """Oracle for st_equal: every word over T ∪ J up to the given length."""
    letters = ctx.alphabet.letters
    for length in range(1, depth + 1):
        for w in cartesian(letters, repeat=length):
            sf, sg = is_stable(ctx, f, w), is_stable(ctx, g, w)
            if sf != sg:
                return False
            if sf and apply(ctx.alphabet, f, w) != apply(ctx.alphabet, g, w):
                return False
    return True


def st_depth_bound(ctx: TowerContext, f: Sequence[int], g: Sequence[int]) -> int:
    """Product of the two augmented state counts."""
    return 2 * canonicalize(ctx.alphabet, f).state_count * 2 * canonicalize(ctx.alphabet, g).state_count


@dataclass(frozen=True)
class StableClass:
    ''' Π(f) = (f^tr, f̂) where f̂ maps each letter of J^tr to a suffix map:
    an element over T ∪ J guarded to words that start in T.  hat is indexed
    like ctx.trace_letters. '''
    trace: CanonicalElement
    hat: tuple[CanonicalElement, ...]
    representative: Word = field(compare=False)

    def to_data(self) -> dict[str, Any]:
        alphabet = self.trace.alphabet
        return {
            'representative': alphabet.names_of(self.representative),
            'trace': self.trace.to_data(),
            'hat': {
                alphabet.name_of(j): h.witness_names()
                for j, h in zip(alphabet.letters, self.hat, strict=True)
            },
        }


def suffix_map(ctx: TowerContext, f: Sequence[int]) -> CanonicalElement:
    """f on T(T ∪ J)*, the words that can follow a J-prefix."""
    zero = ctx.S.zero
    assert zero is not None
    return guard_first_letter(canonicalize(ctx.alphabet, f), ctx.T, zero)


def pi_embed(ctx: TowerContext, f: Sequence[int]) -> StableClass:
    ''' f̂(θ) is f on T(T ∪ J)*; f̂(j) is f_[j] there when [j] is stable for
    f, and the zero function otherwise.

    A stable word is w_J u with u empty or starting in T.  For aperiodic S,
    f acts on u the way f_[j] does, j being the product of w_J.  u may hold
    J-letters after its first letter, so f̂(j) is taken over T(T ∪ J)*
    rather than T*.
    '''
    zero = ctx.S.zero
    assert zero is not None
    phi_zero = suffix_map(ctx, [zero])
    hat = []
    for j in ctx.trace_letters:
        if j == ctx.trace_alphabet.extra:
            hat.append(suffix_map(ctx, f))
        elif apply(ctx.alphabet, f, [j])[0] in ctx.J:
            hat.append(suffix_map(ctx, restrict(ctx.alphabet, f, [j])))
        else:
            hat.append(phi_zero)
    return StableClass(trace_project(ctx, f), tuple(hat), tuple(f))


def semidirect_mul(ctx: TowerContext, x: StableClass, y: StableClass) -> StableClass:
    ''' (f^tr, f̂)(g^tr, ĝ) = (f^tr g^tr, j -> f̂(g^tr(j)) ∘ ĝ(j)).

    g^tr(j) is the letter g^tr writes on input [j], a letter of J^tr.
    '''
    letters = ctx.trace_letters
    hat = []
    for k, j in enumerate(letters):
        moved = y.trace.run([j])[0]
        hat.append(compose(x.hat[letters.index(moved)], y.hat[k]))
    return StableClass(compose(x.trace, y.trace), tuple(hat), x.representative + y.representative)


def verify_embedding(ctx: TowerContext, max_word_len: int = 3) -> Verdict:
    ''' Over all generator words up to max_word_len, check that Π is well
    defined, is a morphism into the semidirect product, and that Π(f) = Π(g)
    implies f ~ g.

    Π is cached per element of Cayley(S, T ∪ J), so pairs are scanned over
    distinct elements.
    '''
    name = 'tower embedding'
    if max_word_len < 1:
        raise PreconditionViolatedError("max_word_len must be at least 1")

    classes: dict[CanonicalElement, StableClass] = {}
    checked = 0
    for word in generator_words(ctx.S, max_word_len):
        checked += 1
        element = canonicalize(ctx.alphabet, word)
        pi = pi_embed(ctx, word)
        if element not in classes:
            classes[element] = pi
        elif classes[element] != pi:
            return Verdict.failed(name, checked, {
                'law': 'well-defined',
                'first': ctx.alphabet.names_of(classes[element].representative),
                'second': ctx.alphabet.names_of(word),
            })

    elements = list(classes)
    for f, g in cartesian(elements, repeat=2):
        checked += 1
        fg = compose(f, g)
        if fg not in classes:
            classes[fg] = pi_embed(ctx, fg.witness)
        if classes[fg] != semidirect_mul(ctx, classes[f], classes[g]):
            return Verdict.failed(name, checked, {
                'law': 'morphism',
                'f': ctx.alphabet.names_of(f.witness),
                'g': ctx.alphabet.names_of(g.witness),
            })

    by_image: dict[StableClass, list[CanonicalElement]] = {}
    for e in elements:
        by_image.setdefault(classes[e], []).append(e)
    for group in by_image.values():
        for other in group[1:]:
            checked += 1
            if not st_equal(ctx, group[0], other):
                return Verdict.failed(name, checked, {
                    'law': 'injective',
                    'f': ctx.alphabet.names_of(group[0].witness),
                    'g': ctx.alphabet.names_of(other.witness),
                })
    logger.info(f"{ctx.describe()}: {len(elements)} elements, {len(by_image)} images")
    return Verdict.passed(name, checked, {'elements': len(elements), 'images': len(by_image)})


def stable_classes(ctx: TowerContext, max_word_len: int) -> list[list[CanonicalElement]]:
    """Elements of Cayley(S, T ∪ J) reached by short generator words, grouped by st_equal."""
    classes: list[list[CanonicalElement]] = []
    seen: set[CanonicalElement] = set()
    for word in generator_words(ctx.S, max_word_len):
        element = canonicalize(ctx.alphabet, word)
        if element in seen:
            continue
        seen.add(element)
        home = next((c for c in classes if st_equal(ctx, c[0], element)), None)
        if home is None:
            classes.append([element])
        else:
            home.append(element)
    return classes


def congruence_check(ctx: TowerContext, max_word_len: int = 2, samples: int = 200, seed: int = 0) -> Verdict:
    ''' Sampled check that st_equal is a congruence: f ~ f' and g ~ g' imply
    fg ~ f'g'.  Pairs are drawn with random.Random(seed), so a run is
    reproducible. '''
    name = 'stable congruence'
    rng = Random(seed)
    classes = stable_classes(ctx, max_word_len)
    for checked in range(1, samples + 1):
        f_class, g_class = rng.choice(classes), rng.choice(classes)
        f, f2 = rng.choice(f_class), rng.choice(f_class)
        g, g2 = rng.choice(g_class), rng.choice(g_class)
        if not st_equal(ctx, compose(f, g), compose(f2, g2)):
            names = ctx.alphabet.names_of
            return Verdict.failed(name, checked, {
                'f': names(f.witness), 'f_prime': names(f2.witness),
                'g': names(g.witness), 'g_prime': names(g2.witness),
            })
    logger.debug(f"{ctx.describe()}: {len(classes)} stable classes sampled")
    return Verdict.passed(name, samples, {'classes': len(classes), 'seed': seed})


def new_a(ext: ExtendedMatrix, gen_word: Sequence[int], a: int) -> frozenset[int]:
    ''' Positions i (1-based) at which π_a(i) = s_{i-1}...s_1 · a takes a value
    not seen at any earlier position.

    Raises ActionKilledError when s_n...s_1 sends row a to zero.
    '''
    pis = [a]
    for s in reversed(gen_word):
        pis.append(ext.act(s, pis[-1]))
    if pis[-1] == ROW_ZERO:
        raise ActionKilledError(f"the word sends row {a} to zero")
    novel = set()
    for i, value in enumerate(pis[:-1], start=1):
        if value not in pis[:i - 1]:
            novel.add(i)
    return frozenset(novel)


### Checks on the shape of outputs

def _regular_zero_minimal(S: FiniteSemigroup, J: Iterable[int]) -> tuple[ReesData, Alphabet]:
    rees = rees_coordinates(S, J, allow_null=False)
    assert S.zero is not None
    return rees, ideal_alphabet(S, rees.j_class | {S.zero})


def zero_creation_check(S: FiniteSemigroup, J: Iterable[int], max_len: int = 4) -> Verdict:
    ''' For a generator s and a word w over J ∪ {0} whose letters are nonzero up
    to position i+1, with φ_s(w)_i nonzero:
    φ_s(w)_{i+1} = 0 exactly when C(b_i, a_{i+1}) = 0, b_i being the column of
    φ_s(w)_i and a_{i+1} the row of w_{i+1}. '''
    name = 'zero creation'
    rees, alphabet = _regular_zero_minimal(S, J)
    checked = 0
    for s in S.elements:
        for length in range(2, max_len + 1):
            for w in cartesian(sorted(rees.j_class), repeat=length):
                out = apply(alphabet, [s], w)
                for i in range(length - 1):
                    if out[i] not in rees.j_class:
                        break
                    checked += 1
                    b_i = rees.coordinates[out[i]][1]
                    a_next = rees.coordinates[w[i + 1]][0]
                    if (out[i + 1] == S.zero) != (rees.c_matrix[b_i][a_next] == 0):
                        return Verdict.failed(name, checked, {
                            'generator': S.names[s],
                            'word': alphabet.names_of(w),
                            'position': i + 1,
                        })
    return Verdict.passed(name, checked)


def almost_simple_check(S: FiniteSemigroup, J: Iterable[int], max_len: int = 4, f_len: int = 2) -> Verdict:
    ''' Every output of a generator word over the ideal J ∪ {0} has the form
    [(a,b_1), ..., (a,b_k), 0, ..., 0]: nonzero letters form a prefix and share
    one row. '''
    name = 'almost simple'
    rees, alphabet = _regular_zero_minimal(S, J)
    checked = 0
    for f in generator_words(S, f_len):
        for length in range(1, max_len + 1):
            for w in cartesian(alphabet.letters, repeat=length):
                checked += 1
                out = apply(alphabet, f, w)
                k = next((i for i, x in enumerate(out) if x == S.zero), len(out))
                rows = {rees.coordinates[x][0] for x in out[:k]}
                if len(rows) > 1 or any(x != S.zero for x in out[k:]):
                    return Verdict.failed(name, checked, {
                        'f': alphabet.names_of(f),
                        'w': alphabet.names_of(w),
                        'output': alphabet.names_of(out),
                    })
    return Verdict.passed(name, checked)


### Enumeration-level checks on a context

def _index_of(E: EnumResult) -> int:
    E.require_complete()
    index = cayley_aperiodicity_index(E)
    if index is None:
        raise PreconditionViolatedError(f"Cayley over the {E.alphabet.mode} alphabet is not aperiodic")
    return index


def additivity_check(ctx: TowerContext, max_elements: int = DEFAULT_MAX_ELEMENTS) -> Verdict:
    """index(Cayley(S, T ∪ J)) <= index(Cayley(S, T)) + index(Cayley(S, J^tr))."""
    name = 'index additivity'
    whole = _index_of(enumerate_cayley(ctx.alphabet, max_elements))
    below = _index_of(enumerate_cayley(ctx.t_alphabet, max_elements))
    layer = _index_of(enumerate_cayley(ctx.trace_alphabet, max_elements))
    details = {'T_union_J': whole, 'T': below, 'trace': layer}
    if whole > below + layer:
        return Verdict.failed(name, 1, details, details)
    return Verdict.passed(name, 1, details)


def trace_quotient_isomorphic(ctx: TowerContext, max_elements: int = DEFAULT_MAX_ELEMENTS) -> Verdict:
    ''' Cayley(S, J^tr) is isomorphic to Cayley(S/T, (J ∪ T)/T).

    The isomorphism sends φ_s to φ_[s] on witnesses; it is checked to commute
    with every generator step and to be a bijection.
    '''
    name = 'trace vs quotient'
    Q, qmap = rees_quotient(ctx.S, ctx.T)
    E_trace = enumerate_cayley(ctx.trace_alphabet, max_elements)
    E_quot = enumerate_cayley(ideal_alphabet(Q, {qmap[x] for x in ctx.J | ctx.T}), max_elements)
    E_trace.require_complete()
    E_quot.require_complete()

    image = []
    for e in E_trace.elements:
        x = E_quot.index_of(canonicalize(E_quot.alphabet, [qmap[s] for s in e.witness]))
        if x is None:
            return Verdict.failed(name, len(image), {'missing': E_trace.alphabet.names_of(e.witness)})
        image.append(x)
    checked = 0
    for s in ctx.S.elements:
        for j in range(E_trace.size):
            checked += 1
            if image[E_trace.left_mul(s, j)] != E_quot.left_mul(qmap[s], image[j]):
                return Verdict.failed(name, checked, {'generator': ctx.S.names[s], 'element': j})
    if sorted(image) != list(range(E_quot.size)):
        return Verdict.failed(name, checked, {'sizes': [E_trace.size, E_quot.size]})
    return Verdict.passed(name, checked, {'size': E_trace.size})
