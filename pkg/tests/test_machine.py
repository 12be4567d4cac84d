# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

from itertools import product as cartesian

import pytest
from cayley.catalog import catalog
from cayley.core import all_semigroups_of_order
from cayley.errors import AlphabetMismatchError, FormatError, NotAnIdealError, PreconditionViolatedError, StateBudgetExceededError
from cayley.machine import (
    THETA_NAME,
    apply,
    bisimilar,
    build_cascade,
    canonicalize,
    compose,
    decompose,
    equal,
    export_dot,
    full_alphabet,
    ideal_alphabet,
    is_tree_endomorphism_on,
    pascal_array,
    portrait,
    render_portrait,
    restrict,
    trace_alphabet,
)
from cayley.testing.oracles import naive_apply, random_catalog_semigroup, random_instance, random_word

RANDOM_INSTANCES = 10_000


def test_left_zero_example(s1):
    A = full_alphabet(s1)
    assert A.names_of(apply(A, A.parse_gen_word(["a"]), A.parse_word(["b", "a", "b"]))) == ["a", "a", "a"]


def test_monogenic_order_matters(m5):
    A = full_alphabet(m5)
    one = A.parse_letter("1")
    x, x2 = m5.id_of("x"), m5.id_of("x^2")
    assert A.names_of(apply(A, [x, x2], [one, one])) == ["x^3", "x^5"]
    assert A.names_of(apply(A, [x2, x], [one, one])) == ["x^3", "x^4"]
    assert not equal(A, [x, x2], [x2, x])


def test_full_alphabet(s1, s5):
    A = full_alphabet(s1)
    assert A.letters == (0, 1, 2)
    assert A.name_of(2) == "1"
    assert list(A.generators) == [0, 1]
    B = full_alphabet(s5)   # already a monoid
    assert B.letters == (0, 1)
    assert B.extra_name == ''


def test_ideal_and_trace_alphabets(s3, m5):
    A = ideal_alphabet(m5, {2, 3, 4})
    assert A.letters == (2, 3, 4)
    with pytest.raises(NotAnIdealError):
        ideal_alphabet(m5, {0})
    with pytest.raises(FormatError):
        ideal_alphabet(m5, set())

    T = trace_alphabet(s3, {1})
    assert T.letters == (1, 2)
    assert T.name_of(2) == THETA_NAME
    assert T.act(1, 1) == 1
    assert T.act(1, 2) == 2
    assert T.zero_letter == 2
    with pytest.raises(PreconditionViolatedError):
        trace_alphabet(s3, {0, 1})


def test_word_checks(s1):
    A = full_alphabet(s1)
    with pytest.raises(FormatError):
        apply(A, [], [0])
    with pytest.raises(AlphabetMismatchError):
        apply(A, [2], [0])   # 1 is a letter but not a generator
    with pytest.raises(FormatError):
        A.parse_word(["c"])
    assert apply(A, [0], []) == ()


def test_state_budget(s5):
    A = full_alphabet(s5)
    x = s5.id_of("x")
    assert build_cascade(A, [x]).trans
    with pytest.raises(StateBudgetExceededError):
        canonicalize(A, [x], budget=1)


def test_idempotent_composition(s1, s3):
    # φ_t φ_s = φ_ts in an idempotent semigroup
    for S in (s1, s3):
        A = full_alphabet(S)
        for s, t in cartesian(S.elements, repeat=2):
            assert equal(A, [t, s], [S.mul(t, s)])


def test_canonical_element(m5):
    A = full_alphabet(m5)
    f = canonicalize(A, [0, 1, 0])
    assert f.witness == (0, 1, 0)
    for w in cartesian(A.letters, repeat=3):
        assert f.run(w) == apply(A, [0, 1, 0], w)
    data = f.to_data()
    assert data['witness'] == ["x", "x^2", "x"]
    assert data['states'] == f.state_count


def test_compose_matches_concatenation(rng):
    for _ in range(200):
        S = random_catalog_semigroup(rng)
        A = full_alphabet(S)
        f = random_word(rng, list(A.generators), 3, min_len=1)
        g = random_word(rng, list(A.generators), 3, min_len=1)
        assert compose(canonicalize(A, f), canonicalize(A, g)) == canonicalize(A, f + g)


def test_compose_rejects_mixed_alphabets(s3):
    with pytest.raises(AlphabetMismatchError):
        compose(canonicalize(full_alphabet(s3), [0]), canonicalize(ideal_alphabet(s3, {0, 1}), [0]))


def test_cascade_matches_naive_evaluation(rng):
    for _ in range(RANDOM_INSTANCES):
        S = random_catalog_semigroup(rng)
        A = full_alphabet(S)
        f, w = random_instance(rng, A)
        assert apply(A, f, w) == naive_apply(A, f, w)


def test_canonical_run_matches_naive_evaluation(rng):
    machines = {}
    for _ in range(RANDOM_INSTANCES):
        S = random_catalog_semigroup(rng)
        A = full_alphabet(S)
        f, w = random_instance(rng, A, max_gen_len=3)
        key = (S.name, f)
        if key not in machines:
            machines[key] = canonicalize(A, f)
        assert machines[key].run(w) == naive_apply(A, f, w)


def test_self_similarity(rng):
    # f(vw) = f(v) followed by f_v(w)
    for _ in range(RANDOM_INSTANCES):
        S = random_catalog_semigroup(rng)
        A = full_alphabet(S)
        f, v = random_instance(rng, A)
        w = random_word(rng, A.letters, 4)
        assert apply(A, f, v + w) == apply(A, f, v) + apply(A, restrict(A, f, v), w)


def test_restrict_empty_is_identity(m5):
    A = full_alphabet(m5)
    assert restrict(A, [0, 1], []) == (0, 1)


@pytest.mark.parametrize('order', [1, 2])
def test_bisimulation_agrees_with_canonical_equality(order):
    for S in all_semigroups_of_order(order):
        A = full_alphabet(S)
        words = [w for n in range(1, 4) for w in cartesian(S.elements, repeat=n)]
        cascades = {w: build_cascade(A, w) for w in words}
        canon = {w: canonicalize(A, w) for w in words}
        for u, v in cartesian(words, repeat=2):
            assert bisimilar(cascades[u], cascades[v]) == (canon[u] == canon[v])


def test_decompose(m5, rng):
    A = full_alphabet(m5)
    f = (0, 1)
    top, children = decompose(A, f)
    assert set(top) == set(A.letters)
    for _ in range(100):
        w = random_word(rng, A.letters, 5, min_len=1)
        assert apply(A, f, w) == (top[w[0]], *apply(A, children[w[0]], w[1:]))


def test_tree_endomorphism(s5):
    A = full_alphabet(s5)
    words = [w for n in range(4) for w in cartesian(A.letters, repeat=n)]
    assert is_tree_endomorphism_on(A, [1, 0], words)


def test_pascal_array(m5):
    A = full_alphabet(m5)
    rows, w = (0, 1), (0, 5, 0)
    array = pascal_array(A, rows, w)
    assert array.bottom_row == apply(A, tuple(reversed(rows)), w)
    assert array.cells[0][1:] == w
    assert [row[0] for row in array.cells[1:]] == list(rows)
    assert 'x^' in array.render()
    with pytest.raises(FormatError):
        pascal_array(A, rows, ())


def test_pascal_array_examples(m5, s5):
    A = full_alphabet(m5)
    one = A.extra
    assert pascal_array(A, (0, 1), (one, one)).bottom_row == (2, 3)   # [x^3, x^4]

    A = full_alphabet(s5)
    e, x = s5.id_of('1'), s5.id_of('x')
    array = pascal_array(A, (x, x), (e, e))
    assert array.cells[1][1:] == (x, x)
    assert array.bottom_row == (e, x)
    assert array.bottom_row == apply(A, (x, x), (e, e))


def test_portrait(s1):
    A = full_alphabet(s1)
    p = portrait(A, [0], 2)
    assert len(p.nodes) == 1 + len(A.letters)
    assert p.node_map(()) == {0: 0, 1: 0, 2: 0}
    assert p.node_map((1,)) == {0: 0, 1: 0, 2: 0}
    text = render_portrait(p)
    assert text.splitlines()[0].startswith('[ε]')
    with pytest.raises(FormatError):
        portrait(A, [0], 0)


def test_export_dot(m5):
    A = full_alphabet(m5)
    machine = export_dot(canonicalize(A, [0]))
    assert machine.startswith('digraph')
    assert 'q0' in machine
    assert 'x/x^2' in machine
    tree = export_dot(portrait(A, [0], 2))
    assert 'digraph' in tree


@pytest.mark.parametrize('entry', catalog(), ids=lambda e: e.key)
def test_generators_are_tree_maps(entry):
    S = entry.semigroup
    A = full_alphabet(S)
    words = [w for n in range(3) for w in cartesian(A.letters, repeat=n)]
    for s in S.elements:
        assert is_tree_endomorphism_on(A, [s], words)
