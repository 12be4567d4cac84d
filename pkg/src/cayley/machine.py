# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

"""The Cayley machine of a finite semigroup and the functions φ_s it computes.

Generator words are stored most-recently-applied first: [s_n, ..., s_1] is
φ_{s_n} ∘ ... ∘ φ_{s_1}, so s_1 acts on the input first.

Inputs are words over an Alphabet: all of S¹ ('full'), an ideal T of S
('ideal'), or the trace J ∪ {θ} of a J-class ('trace').  Letter ids share the
id space of S; the one extra id, S.order, is the adjoined 1 in full mode (for
non-monoids) or θ in trace mode.
"""

import logging
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Literal, Protocol, TypeAlias

import graphviz  # type: ignore[import-untyped]
from typing_extensions import Self

from .core import FiniteSemigroup, Word, adjoin_identity, ideal_violation
from .errors import (
    AlphabetMismatchError,
    FormatError,
    NotAnIdealError,
    PreconditionViolatedError,
    StateBudgetExceededError,
)
from .green import green

logger = logging.getLogger(__name__)

Mode: TypeAlias = Literal['full', 'ideal', 'trace']

UNDEFINED = -1
DEFAULT_STATE_BUDGET = 1_000_000

THETA_NAME = "θ"


@dataclass(frozen=True)
class Alphabet:
    base: FiniteSemigroup
    mode: Mode
    letters: tuple[int, ...]               # ascending ids
    action: tuple[tuple[int, ...], ...]    # action[q][a]; (order+1) x (order+1)
    extra_name: str = field(default='', compare=False)  # name of id base.order, if used

    @property
    def extra(self) -> int:
        return self.base.order

    @property
    def generators(self) -> range:
        """Valid generator (and cascade component) ids."""
        if self.mode == 'trace':
            return range(self.base.order + 1)
        return range(self.base.order)

    @property
    def zero_letter(self) -> int | None:
        if self.mode == 'trace':
            return self.extra
        return self.base.zero

    @cached_property
    def _positions(self) -> dict[int, int]:
        return {a: i for i, a in enumerate(self.letters)}

    def index(self, letter: int) -> int:
        try:
            return self._positions[letter]
        except KeyError:
            raise AlphabetMismatchError(f"letter {self.name_of(letter)} is not in the {self.mode} alphabet") from None

    def act(self, q: int, a: int) -> int:
        return self.action[q][a]

    def name_of(self, ident: int) -> str:
        if ident == self.extra:
            return self.extra_name
        if 0 <= ident < self.base.order:
            return self.base.names[ident]
        return str(ident)

    def names_of(self, word: Iterable[int]) -> list[str]:
        return [self.name_of(x) for x in word]

    def parse_letter(self, name: str) -> int:
        if self.extra_name and name == self.extra_name:
            return self.extra
        return self.base.id_of(name)

    def parse_word(self, names: Iterable[str]) -> Word:
        word = tuple(self.parse_letter(n) for n in names)
        self.check_word(word)
        return word

    def parse_gen_word(self, names: Iterable[str]) -> Word:
        word = tuple(self.parse_letter(n) for n in names)
        check_gen_word(self, word)
        return word

    def check_word(self, word: Iterable[int]) -> None:
        for a in word:
            if a not in self.letters:
                raise AlphabetMismatchError(f"letter {self.name_of(a)} is not in the {self.mode} alphabet")

    def describe(self) -> str:
        return f"{self.mode} alphabet {{{', '.join(self.names_of(self.letters))}}}"


def _empty_action(n: int) -> list[list[int]]:
    return [[UNDEFINED] * (n + 1) for _ in range(n + 1)]


def full_alphabet(S: FiniteSemigroup) -> Alphabet:
    """Inputs over S¹; the letter 1 acts as the identity."""
    n = S.order
    action = _empty_action(n)
    ext = adjoin_identity(S)
    for q in S.elements:
        for a in ext.elements:
            action[q][a] = ext.mul(q, a)
    extra_name = ext.names[n] if ext.order > n else ''
    return Alphabet(S, 'full', tuple(ext.elements), tuple(map(tuple, action)), extra_name)


def ideal_alphabet(S: FiniteSemigroup, T: Iterable[int]) -> Alphabet:
    """Inputs over an ideal T, with no adjoined 1."""
    T = frozenset(T)
    if not T:
        raise FormatError("an ideal must be nonempty")
    violation = ideal_violation(S, T)
    if violation is not None:
        raise NotAnIdealError(*violation)
    n = S.order
    action = _empty_action(n)
    for q in S.elements:
        for a in T:
            action[q][a] = S.mul(q, a)
    return Alphabet(S, 'ideal', tuple(sorted(T)), tuple(map(tuple, action)))


def trace_alphabet(S: FiniteSemigroup, J: Iterable[int]) -> Alphabet:
    ''' Inputs over the trace J ∪ {θ} of a J-class.

    Products that leave J become θ, and θ absorbs everything.
    '''
    J = frozenset(J)
    if J not in green(S).j_classes:
        raise PreconditionViolatedError(f"{sorted(J)} is not a J-class")
    n = S.order
    theta = n
    action = _empty_action(n)
    for q in range(n + 1):
        for a in [*J, theta]:
            if q == theta or a == theta:
                action[q][a] = theta
            else:
                p = S.mul(q, a)
                action[q][a] = p if p in J else theta
    return Alphabet(S, 'trace', (*sorted(J), theta), tuple(map(tuple, action)), THETA_NAME)


def check_gen_word(alphabet: Alphabet, gen_word: Sequence[int]) -> None:
    if not gen_word:
        raise FormatError("a generator word must be nonempty")
    for s in gen_word:
        if s not in alphabet.generators:
            raise AlphabetMismatchError(f"{alphabet.name_of(s)} is not a generator")


def _step(alphabet: Alphabet, state: Sequence[int], a: int) -> tuple[int, ...]:
    """u'_1 = u_1 a, u'_i = u_i u'_{i-1}; the emitted letter is the last component."""
    out = []
    x = a
    for u in state:
        x = alphabet.act(u, x)
        out.append(x)
    return tuple(out)


def apply(alphabet: Alphabet, gen_word: Sequence[int], w: Sequence[int]) -> Word:
    ''' Evaluate φ_{s_n} ∘ ... ∘ φ_{s_1} on the word w.

    Args:
        gen_word: [s_n, ..., s_1], most recently applied first.
        w: letters of the alphabet; may be empty.

    Returns:
        The output word, of the same length as w.
    '''
    check_gen_word(alphabet, gen_word)
    alphabet.check_word(w)
    state = tuple(reversed(gen_word))
    output = []
    for a in w:
        state = _step(alphabet, state, a)
        output.append(state[-1])
    return tuple(output)


@dataclass(frozen=True)
class PascalArray:
    """cells[j][i]: row 0 holds the input, column 0 the generators s_1..s_n."""
    alphabet: Alphabet
    cells: tuple[tuple[int, ...], ...]

    @property
    def bottom_row(self) -> Word:
        return self.cells[-1][1:]

    def render(self) -> str:
        names = [[self.alphabet.name_of(x) if x != UNDEFINED else '' for x in row] for row in self.cells]
        width = max(len(x) for row in names for x in row) + 1
        return '\n'.join(''.join(x.rjust(width) for x in row) for row in names)


def pascal_array(alphabet: Alphabet, rows: Sequence[int], w: Sequence[int]) -> PascalArray:
    ''' t[0][i] = a_i, t[j][0] = s_j, t[j][i] = t[j][i-1] · t[j-1][i].

    rows are [s_1, ..., s_n] top to bottom (s_1 acts first), so the bottom row
    equals apply([s_n, ..., s_1], w).
    '''
    if not rows or not w:
        raise FormatError("the Pascal array needs at least one row and one column")
    check_gen_word(alphabet, rows)
    alphabet.check_word(w)
    cells = [[UNDEFINED, *w]]
    for s in rows:
        row = [s]
        for i in range(1, len(w) + 1):
            row.append(alphabet.act(row[i - 1], cells[-1][i]))
        cells.append(row)
    return PascalArray(alphabet, tuple(tuple(r) for r in cells))


class Transducer(Protocol):
    @property
    def trans(self) -> tuple[tuple[int, ...], ...]: ...
    @property
    def outputs(self) -> tuple[tuple[int, ...], ...]: ...


@dataclass(frozen=True)
class CascadeMachine:
    ''' The reachable part of the cascade for one generator word.

    State 0 is the initial tuple (s_1, ..., s_n).  trans and outputs are
    indexed [state][letter index], letter indices following alphabet.letters.
    '''
    alphabet: Alphabet
    gen_word: Word
    states: tuple[tuple[int, ...], ...]
    trans: tuple[tuple[int, ...], ...]
    outputs: tuple[tuple[int, ...], ...]


def build_cascade(alphabet: Alphabet, gen_word: Sequence[int], budget: int = DEFAULT_STATE_BUDGET) -> CascadeMachine:
    check_gen_word(alphabet, gen_word)
    initial = tuple(reversed(gen_word))
    index = {initial: 0}
    states = [initial]
    trans: list[tuple[int, ...]] = []
    outputs: list[tuple[int, ...]] = []
    i = 0
    while i < len(states):
        row_t, row_o = [], []
        for a in alphabet.letters:
            nxt = _step(alphabet, states[i], a)
            if nxt not in index:
                if len(states) >= budget:
                    raise StateBudgetExceededError(budget)
                index[nxt] = len(states)
                states.append(nxt)
            row_t.append(index[nxt])
            row_o.append(nxt[-1])
        trans.append(tuple(row_t))
        outputs.append(tuple(row_o))
        i += 1
    return CascadeMachine(alphabet, tuple(gen_word), tuple(states), tuple(trans), tuple(outputs))


def _moore_blocks(trans: Sequence[Sequence[int]], outputs: Sequence[Sequence[int]]) -> list[int]:
    ''' Moore partition refinement: start from equal output rows, split by
    successor blocks until the number of blocks stops growing. '''
    block = _relabel([tuple(row) for row in outputs])
    rounds = 0
    while True:
        rounds += 1
        refined = _relabel([(block[q], *(block[t] for t in trans[q])) for q in range(len(trans))])
        if max(refined) == max(block):
            logger.debug(f"refinement fixpoint after {rounds} rounds, {max(block) + 1} blocks")
            return refined
        block = refined


def _relabel(signatures: Sequence[object]) -> list[int]:
    ids: dict[object, int] = {}
    return [ids.setdefault(sig, len(ids)) for sig in signatures]


def _minimize(trans: Sequence[Sequence[int]], outputs: Sequence[Sequence[int]]) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """Minimize a machine with initial state 0 and renumber its states in BFS
    order over letters in ascending id order."""
    block = _moore_blocks(trans, outputs)
    rep: dict[int, int] = {}
    for q, b in enumerate(block):
        rep.setdefault(b, q)

    order = {block[0]: 0}
    queue = deque([block[0]])
    new_trans: list[tuple[int, ...]] = []
    new_outputs: list[tuple[int, ...]] = []
    while queue:
        b = queue.popleft()
        q = rep[b]
        row = []
        for t in trans[q]:
            if block[t] not in order:
                order[block[t]] = len(order)
                queue.append(block[t])
            row.append(order[block[t]])
        new_trans.append(tuple(row))
        new_outputs.append(tuple(outputs[q]))
    return tuple(new_trans), tuple(new_outputs)


@dataclass(frozen=True)
class CanonicalElement:
    ''' A minimized machine identifying one element of Cayley(S), or of its
    restriction to an ideal or trace alphabet.

    Two canonical elements over the same alphabet are == iff they compute the
    same function.  The witness is one generator word realizing the element.
    '''
    trans: tuple[tuple[int, ...], ...]
    outputs: tuple[tuple[int, ...], ...]
    witness: Word = field(compare=False)
    alphabet: Alphabet = field(compare=False, repr=False)

    @classmethod
    def from_machine(cls, machine: CascadeMachine) -> Self:
        trans, outputs = _minimize(machine.trans, machine.outputs)
        return cls(trans, outputs, machine.gen_word, machine.alphabet)

    @property
    def state_count(self) -> int:
        return len(self.trans)

    def run(self, w: Sequence[int]) -> Word:
        q = 0
        out = []
        for a in w:
            i = self.alphabet.index(a)
            out.append(self.outputs[q][i])
            q = self.trans[q][i]
        return tuple(out)

    def witness_names(self) -> list[str]:
        return self.alphabet.names_of(self.witness)

    def to_data(self) -> dict[str, Any]:
        return {
            'witness': self.witness_names(),
            'states': self.state_count,
            'trans': [list(row) for row in self.trans],
            'outputs': [self.alphabet.names_of(row) for row in self.outputs],
        }


def canonicalize(alphabet: Alphabet, gen_word: Sequence[int], budget: int = DEFAULT_STATE_BUDGET) -> CanonicalElement:
    return CanonicalElement.from_machine(build_cascade(alphabet, gen_word, budget))


def _as_canonical(alphabet: Alphabet, f: Sequence[int] | CanonicalElement, budget: int) -> CanonicalElement:
    if isinstance(f, CanonicalElement):
        if f.alphabet != alphabet:
            raise AlphabetMismatchError("elements over different alphabets cannot be compared")
        return f
    return canonicalize(alphabet, f, budget)


def equal(alphabet: Alphabet, f: Sequence[int] | CanonicalElement, g: Sequence[int] | CanonicalElement, budget: int = DEFAULT_STATE_BUDGET) -> bool:
    """True iff f(w) = g(w) for every word w over the alphabet."""
    return _as_canonical(alphabet, f, budget) == _as_canonical(alphabet, g, budget)


def compose(f: CanonicalElement, g: CanonicalElement, budget: int = DEFAULT_STATE_BUDGET) -> CanonicalElement:
    ''' Canonical form of f ∘ g (g applied first).

    Product states are (state of g, state of f); g's output letter is f's input.
    '''
    if f.alphabet != g.alphabet:
        raise AlphabetMismatchError("cannot compose elements over different alphabets")
    alphabet = f.alphabet
    index = {(0, 0): 0}
    pairs = [(0, 0)]
    trans: list[tuple[int, ...]] = []
    outputs: list[tuple[int, ...]] = []
    i = 0
    while i < len(pairs):
        p, q = pairs[i]
        row_t, row_o = [], []
        for ai in range(len(alphabet.letters)):
            b = g.outputs[p][ai]
            bi = alphabet.index(b)
            nxt = (g.trans[p][ai], f.trans[q][bi])
            if nxt not in index:
                if len(pairs) >= budget:
                    raise StateBudgetExceededError(budget)
                index[nxt] = len(pairs)
                pairs.append(nxt)
            row_t.append(index[nxt])
            row_o.append(f.outputs[q][bi])
        trans.append(tuple(row_t))
        outputs.append(tuple(row_o))
        i += 1
    min_trans, min_outputs = _minimize(trans, outputs)
    return CanonicalElement(min_trans, min_outputs, f.witness + g.witness, alphabet)


def guard_first_letter(f: CanonicalElement, allowed: Iterable[int], fill: int) -> CanonicalElement:
    ''' f on words whose first letter is in allowed; any other word is sent to
    fill, fill, ...

    With fill a zero of the base semigroup that lies in allowed, guarded
    elements compose like the functions they restrict.
    '''
    alphabet = f.alphabet
    allowed = frozenset(allowed)
    k = len(alphabet.letters)
    sink = f.state_count + 1
    first_t, first_o = [], []
    for ai, a in enumerate(alphabet.letters):
        if a in allowed:
            first_t.append(f.trans[0][ai] + 1)
            first_o.append(f.outputs[0][ai])
        else:
            first_t.append(sink)
            first_o.append(fill)
    trans = [tuple(first_t), *(tuple(t + 1 for t in row) for row in f.trans), (sink,) * k]
    outputs = [tuple(first_o), *f.outputs, (fill,) * k]
    min_trans, min_outputs = _minimize(trans, outputs)
    return CanonicalElement(min_trans, min_outputs, f.witness, alphabet)


def bisimilar(f: Transducer, g: Transducer) -> bool:
    """Worklist over state pairs from (0, 0); no minimization involved."""
    seen = {(0, 0)}
    work = [(0, 0)]
    while work:
        p, q = work.pop()
        if f.outputs[p] != g.outputs[q]:
            return False
        for nxt in zip(f.trans[p], g.trans[q], strict=True):
            if nxt not in seen:
                seen.add(nxt)
                work.append(nxt)
    return True


def restrict(alphabet: Alphabet, gen_word: Sequence[int], v: Sequence[int]) -> Word:
    ''' The generator word for f_v, where f(vw) = f(v) f_v(w).

    For f = [s_n, ..., s_1] this is [p φ_{s_n}...φ_{s_1}(v), ..., p φ_{s_1}(v)]
    with p the last letter; it is f itself when v is empty.
    '''
    check_gen_word(alphabet, gen_word)
    alphabet.check_word(v)
    state = tuple(reversed(gen_word))
    for a in v:
        state = _step(alphabet, state, a)
    return tuple(reversed(state))


def decompose(alphabet: Alphabet, gen_word: Sequence[int]) -> tuple[dict[int, int], dict[int, Word]]:
    ''' The pair representation of f: its top-level letter map and, for each
    letter x, the generator word of f_[x].

    f([a_1, ...]) = [top(a_1)] followed by f_[a_1]([a_2, ...]).
    '''
    top = {a: apply(alphabet, gen_word, [a])[0] for a in alphabet.letters}
    children = {a: restrict(alphabet, gen_word, [a]) for a in alphabet.letters}
    return top, children


def is_tree_endomorphism_on(alphabet: Alphabet, gen_word: Sequence[int], words: Iterable[Sequence[int]]) -> bool:
    """Length preservation and prefix compatibility on the given words."""
    words = [tuple(w) for w in words]
    images = {w: apply(alphabet, gen_word, w) for w in words}
    for w, fw in images.items():
        if len(fw) != len(w):
            return False
        for k in range(len(w)):
            if images.get(w[:k], fw[:k]) != fw[:k]:
                return False
    return True


@dataclass(frozen=True)
class Portrait:
    ''' Depth-limited portrait: for each node address v (a word of length
    < depth) the letter map a -> first letter of f_v([a]).

    Nodes are listed depth-first with letters in ascending id order.
    '''
    alphabet: Alphabet
    gen_word: Word
    depth: int
    nodes: tuple[tuple[Word, tuple[tuple[int, int], ...]], ...]

    def node_map(self, address: Sequence[int]) -> dict[int, int]:
        return dict(next(m for v, m in self.nodes if v == tuple(address)))


def portrait(alphabet: Alphabet, gen_word: Sequence[int], depth: int) -> Portrait:
    if depth < 1:
        raise FormatError("portrait depth must be at least 1")
    check_gen_word(alphabet, gen_word)
    nodes: list[tuple[Word, tuple[tuple[int, int], ...]]] = []

    def visit(address: Word, state: tuple[int, ...]) -> None:
        steps = {a: _step(alphabet, state, a) for a in alphabet.letters}
        nodes.append((address, tuple((a, steps[a][-1]) for a in alphabet.letters)))
        if len(address) + 1 < depth:
            for a in alphabet.letters:
                visit((*address, a), steps[a])

    visit((), tuple(reversed(gen_word)))
    return Portrait(alphabet, tuple(gen_word), depth, tuple(nodes))


def render_portrait(p: Portrait) -> str:
    lines = []
    for address, letter_map in p.nodes:
        label = ','.join(p.alphabet.names_of(address)) or 'ε'
        maps = ', '.join(f"{p.alphabet.name_of(a)}->{p.alphabet.name_of(b)}" for a, b in letter_map)
        lines.append(f"{'  ' * len(address)}[{label}] {{{maps}}}")
    return '\n'.join(lines)


def export_dot(obj: CanonicalElement | CascadeMachine | Portrait) -> str:
    ''' DOT source for a machine (states as nodes, edges labeled "a/out") or a
    portrait (tree nodes labeled with their letter maps). '''
    if isinstance(obj, Portrait):
        return _portrait_dot(obj)
    alphabet = obj.alphabet
    dot = graphviz.Digraph()
    dot.attr(rankdir='LR')
    dot.node('', shape='none', width='0', height='0')
    for q in range(len(obj.trans)):
        dot.node(f"q{q}", f"q{q}")
    dot.edge('', 'q0')
    for q, row in enumerate(obj.trans):
        for ai, t in enumerate(row):
            a = alphabet.letters[ai]
            dot.edge(f"q{q}", f"q{t}", label=f"{alphabet.name_of(a)}/{alphabet.name_of(obj.outputs[q][ai])}")
    return str(dot.source)


def _portrait_dot(p: Portrait) -> str:
    def node_id(address: Word) -> str:
        return 'e' + ''.join(f"_{a}" for a in address)

    dot = graphviz.Digraph()
    for address, letter_map in p.nodes:
        label = ' '.join(f"{p.alphabet.name_of(a)}/{p.alphabet.name_of(b)}" for a, b in letter_map)
        dot.node(node_id(address), label)
        if address:
            dot.edge(node_id(address[:-1]), node_id(address), label=' ' + p.alphabet.name_of(address[-1]))
    return str(dot.source)
