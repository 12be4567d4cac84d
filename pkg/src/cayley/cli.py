# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

"""The `cayley` command.

Each subcommand computes an Outcome (structured results, a text rendering,
and optionally a Verdict).  The @reported decorator turns that into output
and an exit code:

    0  success (including a verdict that holds)
    1  usage or input error (any CayleyError)
    2  a verdict failed: a counterexample was found
"""

import functools
import logging
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Concatenate, Literal, ParamSpec

import click

from . import harness
from .catalog import catalog, lookup
from .config import Config, configure_logging, load_config
from .core import FiniteSemigroup, aperiodicity_index, normalize, validate
from .enumeration import enumerate_cayley, find_cayley_isomorphism
from .errors import CayleyError, FormatError, NotAssociativeError
from .expansions import chain_from_letters, division_check, mem_elements, mem_summary, rhodes_reduce
from .formats import (
    RunReport,
    emit_semigroup,
    load_semigroup,
    parse_semigroup,
    render_grid,
    render_table,
    render_word,
    split_names,
)
from .green import eggbox, extended_matrix, green, rees_coordinates
from .machine import (
    Alphabet,
    apply,
    canonicalize,
    export_dot,
    full_alphabet,
    ideal_alphabet,
    pascal_array,
    portrait,
    render_portrait,
    trace_alphabet,
)
from .tower import (
    TowerContext,
    additivity_check,
    congruence_check,
    contexts_from_series,
    is_stable,
    j_prefix_len,
    make_context,
    trace_quotient_isomorphic,
    verify_embedding,
)
from .verdict import Verdict

logger = logging.getLogger(__name__)

OutputFormat = Literal['text', 'data']


@dataclass(frozen=True)
class CliState:
    fmt: OutputFormat
    out: Path | None
    config: Config


@dataclass(frozen=True)
class Outcome:
    results: dict[str, Any]
    text: str
    verdict: Verdict | None = None


P = ParamSpec('P')


def reported(func: Callable[Concatenate[CliState, P], Outcome]) -> Callable[P, None]:
    ''' Run a subcommand body and report its Outcome.

    The wrapped function receives the CliState as its first argument.
    Reports are written to stdout; errors and verdict failures are also
    echoed to stderr in red.
    '''
    @functools.wraps(func)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> None:
        ctx = click.get_current_context()
        state = ctx.find_object(CliState)
        assert state is not None
        command = ctx.command_path
        start = time.perf_counter()
        try:
            outcome = func(state, *args, **kwargs)
        except CayleyError as e:
            logger.debug(f"{command}: {type(e).__name__}: {e}")
            report = RunReport(command, 'error', 1, {'error': type(e).__name__, 'message': str(e)})
            if state.fmt == 'data':
                click.echo(report.to_json())
            click.secho(f"Error: {e}", fg='red', err=True)
            ctx.exit(1)
        timing = {'seconds': round(time.perf_counter() - start, 6)}

        verdict = outcome.verdict
        results = outcome.results
        if verdict is not None:
            results = results | {'verdict': verdict.to_data()}
        failed = verdict is not None and not verdict.holds
        report = RunReport(command, 'failed' if failed else 'ok', 2 if failed else 0, results, timing)

        if state.fmt == 'data':
            click.echo(report.to_json())
        elif outcome.text:
            click.echo(outcome.text)
        if verdict is not None:
            if failed:
                click.secho(f"{verdict.name}: FAILED after {verdict.checked} checks", fg='red', err=True)
                click.secho(f"  counterexample: {verdict.counterexample}", fg='red', err=True)
            elif state.fmt == 'text':
                click.secho(f"{verdict.name}: holds ({verdict.checked} checks)", fg='green')
        ctx.exit(report.exit_code)

    return wrapper


### Shared option handling

def semigroup_source(func: Callable[..., None]) -> Callable[..., None]:
    """Add the FILE argument and --catalog option naming the input semigroup."""
    func = click.option('--catalog', 'catalog_key', metavar='KEY', help="Use a built-in semigroup (S1..S5, M5, trivial).")(func)
    return click.argument('file', required=False, type=click.Path(exists=True, dir_okay=False, path_type=Path))(func)


def load_input(file: Path | None, catalog_key: str | None, *, allow_magma: bool = False) -> FiniteSemigroup:
    if (file is None) == (catalog_key is None):
        raise FormatError("give exactly one of FILE or --catalog")
    if catalog_key is not None:
        return lookup(catalog_key).semigroup
    assert file is not None
    return load_semigroup(file, allow_magma=allow_magma)


def element_ids(S: FiniteSemigroup, text: str) -> frozenset[int]:
    return frozenset(S.id_of(name) for name in split_names(text))


def j_class_of(S: FiniteSemigroup, name: str) -> frozenset[int]:
    s = S.id_of(name.strip())
    return next(J for J in green(S).j_classes if s in J)


def alphabet_for(S: FiniteSemigroup, mode: str) -> Alphabet:
    ''' --mode values: "full", "ideal=<names>", or "trace=<name>" (the J-class
    of that element). '''
    kind, _, arg = mode.partition('=')
    if kind == 'full' and not arg:
        return full_alphabet(S)
    if kind == 'ideal' and arg:
        return ideal_alphabet(S, element_ids(S, arg))
    if kind == 'trace' and arg:
        return trace_alphabet(S, j_class_of(S, arg))
    raise FormatError(f"unknown mode '{mode}' (expected full, ideal=<ids>, or trace=<jclass>)")


def _names(S: FiniteSemigroup, ids: Sequence[int] | frozenset[int]) -> list[str]:
    return [S.names[x] for x in sorted(ids)]


mode_option = click.option('--mode', default='full', show_default=True, help="Alphabet: full, ideal=<ids>, or trace=<jclass>.")
word_option = click.option('--word', required=True, help="Generator word s_n,...,s_1 (comma-separated element names).")
budget_option = click.option('--state-budget', '--budget', 'budget', type=int, default=None,
                             help="Cap on reachable cascade states (overrides CAYLEY_STATE_BUDGET).")


### The command group

class CayleyGroup(click.Group):
    """Usage errors exit with 1 so that 2 is left for failed verdicts."""

    def make_context(self, info_name: str | None, args: list[str], parent: click.Context | None = None, **extra: Any) -> click.Context:
        try:
            return super().make_context(info_name, args, parent, **extra)
        except click.UsageError as e:
            e.exit_code = 1
            raise

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = 1
            raise


@click.group(name='cayley', cls=CayleyGroup)
@click.option('--format', 'fmt', type=click.Choice(['text', 'data']), default='text', show_default=True,
              help="Output plain text or a JSON run report.")
@click.option('--log-level', default=None, help="Override CAYLEY_LOG_LEVEL.")
@click.option('--seed', type=int, default=None, help="Override CAYLEY_SEED (seed for sampled checks).")
@click.option('--out', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write DOT output to this file instead of stdout.")
@click.pass_context
def cli(ctx: click.Context, fmt: OutputFormat, log_level: str | None, seed: int | None, out: Path | None) -> None:
    """Cayley machines of finite semigroups."""
    try:
        config = load_config({'log_level': log_level.upper() if log_level else None, 'seed': seed})
    except CayleyError as e:
        click.secho(f"Error: {e}", fg='red', err=True)
        ctx.exit(1)
    configure_logging(config.log_level, testing=config.testing)
    ctx.obj = CliState(fmt, out, config)


@cli.command('catalog')
@reported
def catalog_command(state: CliState) -> Outcome:
    """List the built-in semigroups."""
    entries = catalog()
    results = {'entries': [{'key': e.key, 'order': e.semigroup.order, 'description': e.description} for e in entries]}
    text = '\n'.join(f"{e.key:8} order {e.semigroup.order}  {e.description}" for e in entries)
    return Outcome(results, text)


@cli.command('show')
@semigroup_source
@click.option('--allow-magma', is_flag=True, help="Accept a non-associative table and report its first failing triple.")
@reported
def show_command(state: CliState, file: Path | None, catalog_key: str | None, allow_magma: bool) -> Outcome:
    """Print a semigroup's table and basic facts."""
    S = load_input(file, catalog_key, allow_magma=allow_magma)
    violation = None
    if allow_magma:
        try:
            validate(S.table, S.names, S.name)
        except NotAssociativeError as e:
            violation = e
    results: dict[str, Any] = {
        'name': S.name,
        'order': S.order,
        'elements': list(S.names),
        'table': [list(row) for row in S.table],
        'identity': S.identity,
        'zero': S.zero,
        'aperiodicity_index': aperiodicity_index(S),
    }
    if file is not None:
        if parse_semigroup(emit_semigroup(S), allow_magma=allow_magma) != S:
            raise FormatError(f"{file} does not survive a write/read round trip")
        results['round_trip'] = True
    index = results['aperiodicity_index']
    text = render_table(S) + f"\naperiodicity index: {index if index is not None else 'none (not aperiodic)'}"
    if allow_magma:
        results['associative'] = violation is None
        if violation is not None:
            results['violation'] = list(violation.triple)
            text += f"\nnot a semigroup: {violation}"
    return Outcome(results, text)


@cli.command('green')
@semigroup_source
@reported
def green_command(state: CliState, file: Path | None, catalog_key: str | None) -> Outcome:
    """Green's relations, the J-order, and an eggbox per J-class."""
    S = load_input(file, catalog_key)
    g = green(S)
    results = {
        'r_classes': [_names(S, R) for R in g.r_classes],
        'l_classes': [_names(S, L) for L in g.l_classes],
        'h_classes': [_names(S, H) for H in g.h_classes],
        'j_classes': [_names(S, J) for J in g.j_classes],
        'j_order': sorted([lo, hi] for lo, hi in g.j_order),
        'regular': list(g.regular),
        'principal_series': list(g.principal_series),
    }
    lines = []
    for i, J in enumerate(g.j_classes):
        above = [k for lo, k in sorted(g.j_order) if lo == i]
        lines.append(f"J{i} {{{', '.join(_names(S, J))}}}{' regular' if g.regular[i] else ''}"
                     + (f", below {', '.join(f'J{k}' for k in above)}" if above else ''))
        lines.append(eggbox(S, J))
    lines.append(f"principal series (bottom first): {' < '.join(f'J{i}' for i in g.principal_series)}")
    return Outcome(results, '\n'.join(lines))


@cli.command('rees')
@semigroup_source
@click.option('--jclass', required=True, help="Any element of the J-class.")
@click.option('--extended', is_flag=True, help="Also show the left action on rows.")
@reported
def rees_command(state: CliState, file: Path | None, catalog_key: str | None, jclass: str, extended: bool) -> Outcome:
    """Rees matrix coordinates of a 0-minimal J-class."""
    S = load_input(file, catalog_key)
    J = j_class_of(S, jclass)
    rees = rees_coordinates(S, J)
    results: dict[str, Any] = {
        'j_class': _names(S, J),
        'rows': [_names(S, R) for R in rees.a_index],
        'columns': [_names(S, L) for L in rees.b_index],
        'c_matrix': [list(row) for row in rees.c_matrix],
        'coordinates': {S.names[x]: list(ab) for x, ab in sorted(rees.coordinates.items())},
        'regular': rees.regular,
    }
    text = f"J = {{{', '.join(_names(S, J))}}} ({'regular' if rees.regular else 'null'})\nC:\n" + render_grid(rees.c_matrix)
    if extended:
        ext = extended_matrix(S, J)
        results['left_action'] = {S.names[s]: list(row) for s, row in enumerate(ext.left_action)}
        text += "\nleft action (-1 = zero):\n" + render_grid([[S.names[s], *row] for s, row in enumerate(ext.left_action)])
    return Outcome(results, text)


@cli.command('enumerate')
@semigroup_source
@mode_option
@click.option('--max', 'max_elements', type=int, default=None, help="Cap on |Cayley(S)|.")
@budget_option
@reported
def enumerate_command(state: CliState, file: Path | None, catalog_key: str | None, mode: str, max_elements: int | None, budget: int | None) -> Outcome:
    """Enumerate the semigroup generated by the φ_s."""
    S = load_input(file, catalog_key)
    config = state.config
    E = enumerate_cayley(
        alphabet_for(S, mode),
        config.max_elements if max_elements is None else max_elements,
        config.state_budget if budget is None else budget,
    )
    results = E.to_data()
    lines = [
        f"{E.alphabet.describe()}: {E.status}, {E.size} elements (bound {E.bound})",
        f"growth: {list(E.growth)}",
    ]
    if E.complete:
        lines.append(render_table(E.as_semigroup()))
        lines.append(f"aperiodicity index: {results['aperiodicity_index']}")
        if E.alphabet.mode == 'full':
            iso = find_cayley_isomorphism(E, S)
            results['isomorphism'] = None if iso is None else {S.names[s]: i for s, i in enumerate(iso)}
            lines.append(f"Cayley(S) ≅ S via s -> φ_s: {'yes' if iso is not None else 'no'}")
    else:
        lines.append("elements (witness words):")
        lines.extend(f"  {render_word(E.alphabet.names_of(e.witness))}" for e in E.elements)
    return Outcome(results, '\n'.join(lines))


@cli.command('apply')
@semigroup_source
@mode_option
@word_option
@click.option('--input', 'input_word', required=True, help="Input word a_1,...,a_m.")
@reported
def apply_command(state: CliState, file: Path | None, catalog_key: str | None, mode: str, word: str, input_word: str) -> Outcome:
    """Apply φ_{s_n} ∘ ... ∘ φ_{s_1} to an input word."""
    S = load_input(file, catalog_key)
    alphabet = alphabet_for(S, mode)
    gen_word = alphabet.parse_gen_word(split_names(word))
    w = alphabet.parse_word(split_names(input_word))
    output = alphabet.names_of(apply(alphabet, gen_word, w))
    return Outcome({'word': alphabet.names_of(gen_word), 'input': alphabet.names_of(w), 'output': output}, render_word(output))


@cli.command('pascal')
@semigroup_source
@mode_option
@click.option('--rows', required=True, help="Row generators s_1,...,s_n, top to bottom.")
@click.option('--input', 'input_word', required=True, help="Input word a_1,...,a_m.")
@reported
def pascal_command(state: CliState, file: Path | None, catalog_key: str | None, mode: str, rows: str, input_word: str) -> Outcome:
    """The Pascal array of a generator word on an input."""
    S = load_input(file, catalog_key)
    alphabet = alphabet_for(S, mode)
    array = pascal_array(alphabet, alphabet.parse_gen_word(split_names(rows)), alphabet.parse_word(split_names(input_word)))
    results = {
        'cells': [[alphabet.name_of(x) if x >= 0 else None for x in row] for row in array.cells],
        'bottom_row': alphabet.names_of(array.bottom_row),
    }
    return Outcome(results, array.render())


@cli.command('portrait')
@semigroup_source
@mode_option
@word_option
@click.option('--depth', type=int, default=None, help="Tree depth (default CAYLEY_DEPTH).")
@reported
def portrait_command(state: CliState, file: Path | None, catalog_key: str | None, mode: str, word: str, depth: int | None) -> Outcome:
    """Depth-limited portrait of an element as a tree of letter maps."""
    S = load_input(file, catalog_key)
    alphabet = alphabet_for(S, mode)
    p = portrait(alphabet, alphabet.parse_gen_word(split_names(word)), state.config.depth if depth is None else depth)
    nodes = [
        {'address': alphabet.names_of(v), 'map': {alphabet.name_of(a): alphabet.name_of(b) for a, b in m}}
        for v, m in p.nodes
    ]
    return Outcome({'depth': p.depth, 'nodes': nodes}, render_portrait(p))


@cli.command('dot')
@semigroup_source
@mode_option
@word_option
@click.option('--depth', type=int, default=None, help="Export the portrait of this depth instead of the machine.")
@budget_option
@reported
def dot_command(state: CliState, file: Path | None, catalog_key: str | None, mode: str, word: str, depth: int | None, budget: int | None) -> Outcome:
    """DOT source for the minimal machine (or portrait) of an element."""
    S = load_input(file, catalog_key)
    alphabet = alphabet_for(S, mode)
    gen_word = alphabet.parse_gen_word(split_names(word))
    if depth is not None:
        source = export_dot(portrait(alphabet, gen_word, depth))
    else:
        source = export_dot(canonicalize(alphabet, gen_word, state.config.state_budget if budget is None else budget))
    if state.out is not None:
        state.out.write_text(source, encoding='utf-8')
        logger.info(f"DOT written to {state.out}")
        return Outcome({'out': str(state.out)}, f"DOT written to {state.out}")
    return Outcome({'dot': source}, source)


@cli.command('mem')
@semigroup_source
@click.option('--index', 'index_only', is_flag=True, help="Only report the order and aperiodicity index of mem(S).")
@reported
def mem_command(state: CliState, file: Path | None, catalog_key: str | None, index_only: bool) -> Outcome:
    """The memory semigroup mem(S)."""
    S = load_input(file, catalog_key)
    summary = mem_summary(S)
    results: dict[str, Any] = summary | {'semigroup_aperiodicity_index': aperiodicity_index(S)}
    lines = [f"|mem(S)| = {summary['order']}", f"aperiodicity index: {summary['aperiodicity_index']} (S: {results['semigroup_aperiodicity_index']})"]
    if not index_only:
        elements = [x.describe(S) for x in mem_elements(S)]
        results['elements'] = elements
        lines.extend(elements)
    return Outcome(results, '\n'.join(lines))


@cli.group('rhodes')
def rhodes_group() -> None:
    """Rhodes expansion words."""


@rhodes_group.command('reduce')
@semigroup_source
@click.option('--word', default=None, help="Letters s_1,...,s_n; the chain of prefix products is reduced.")
@click.option('--chain', default=None, help="A chain given directly, each entry R-below the previous.")
@reported
def rhodes_reduce_command(state: CliState, file: Path | None, catalog_key: str | None, word: str | None, chain: str | None) -> Outcome:
    """Reduce a chain by deleting R-equivalent neighbors."""
    S = load_input(file, catalog_key)
    if (word is None) == (chain is None):
        raise FormatError("give exactly one of --word or --chain")
    if word is not None:
        letters = [S.id_of(n) for n in split_names(word)]
        if not letters:
            raise FormatError("--word must be nonempty")
        w = chain_from_letters(S, letters)
    else:
        assert chain is not None
        w = tuple(S.id_of(n) for n in split_names(chain))
    reduced = rhodes_reduce(S, w)
    results = {'chain': [S.names[x] for x in w], 'reduced': [S.names[x] for x in reduced.chain]}
    return Outcome(results, reduced.describe(S))


@cli.command('divide')
@semigroup_source
@click.option('--ideal', required=True, help="A regular 0-minimal ideal, including the zero.")
@click.option('--max-len', type=int, default=4, show_default=True)
@reported
def divide_command(state: CliState, file: Path | None, catalog_key: str | None, ideal: str, max_len: int) -> Outcome:
    """Check that mem(S) separates generator words as Cayley(S, I) does."""
    S = load_input(file, catalog_key)
    N = normalize(S)
    verdict = division_check(N, element_ids(N, ideal), max_len)
    results = {'normalized': N is not S, 'elements': list(N.names)}
    text = f"normalized to order {N.order}" if N is not S else ''
    return Outcome(results, text, verdict)


@cli.group('tower')
def tower_group() -> None:
    """Ideal/J-class towers over the normalized semigroup."""


def context_for(S: FiniteSemigroup, ideal: str, jclass: str) -> TowerContext:
    N = normalize(S)
    return make_context(S, element_ids(N, ideal), j_class_of(N, jclass))


@tower_group.command('verify')
@semigroup_source
@click.option('--ideal', default=None, help="The ideal T (names in the normalized semigroup).")
@click.option('--jclass', default=None, help="Any element of the J-class directly above T.")
@click.option('--max-len', type=int, default=3, show_default=True)
@click.option('--samples', type=int, default=200, show_default=True, help="Sampled pairs for the congruence check.")
@reported
def tower_verify_command(state: CliState, file: Path | None, catalog_key: str | None, ideal: str | None, jclass: str | None, max_len: int, samples: int) -> Outcome:
    ''' Check the semidirect-product embedding, the stable-word congruence,
    index additivity, and the trace/quotient isomorphism.  Without --ideal and --jclass every step of
    the principal series is checked. '''
    S = load_input(file, catalog_key)
    if (ideal is None) != (jclass is None):
        raise FormatError("give both --ideal and --jclass, or neither")
    if ideal is not None and jclass is not None:
        contexts = [context_for(S, ideal, jclass)]
    else:
        contexts = list(contexts_from_series(S))

    checked = 0
    steps = []
    lines = []
    for ctx in contexts:
        if ctx.normalized and not lines:
            lines.append(f"normalized to order {ctx.S.order}: {', '.join(ctx.S.names)}")
        verdicts = [
            verify_embedding(ctx, max_len),
            congruence_check(ctx, min(max_len, 2), samples, state.config.seed),
            additivity_check(ctx, state.config.max_elements),
            trace_quotient_isomorphic(ctx, state.config.max_elements),
        ]
        steps.append({'context': ctx.describe(), 'verdicts': [v.to_data() for v in verdicts]})
        for v in verdicts:
            checked += v.checked
            lines.append(f"{ctx.describe()}  {v.name}: {'holds' if v else 'FAILED'}")
            if not v:
                return Outcome({'steps': steps}, '\n'.join(lines), Verdict.failed('tower', checked, {'context': ctx.describe(), 'check': v.to_data()}))
    return Outcome({'steps': steps}, '\n'.join(lines), Verdict.passed('tower', checked, {'contexts': len(contexts)}))


@tower_group.command('stable')
@semigroup_source
@click.option('--ideal', required=True)
@click.option('--jclass', required=True)
@word_option
@click.option('--input', 'input_word', required=True, help="Input word over T ∪ J.")
@reported
def tower_stable_command(state: CliState, file: Path | None, catalog_key: str | None, ideal: str, jclass: str, word: str, input_word: str) -> Outcome:
    """Is the input stable for the element, i.e. is its J-prefix length kept?"""
    S = load_input(file, catalog_key)
    ctx = context_for(S, ideal, jclass)
    alphabet = ctx.alphabet
    f = alphabet.parse_gen_word(split_names(word))
    w = alphabet.parse_word(split_names(input_word))
    output = apply(alphabet, f, w)
    results = {
        'context': ctx.describe(),
        'output': alphabet.names_of(output),
        'input_j_prefix': j_prefix_len(ctx, w),
        'output_j_prefix': j_prefix_len(ctx, output),
        'stable': is_stable(ctx, f, w),
    }
    text = f"{render_word(alphabet.names_of(output))}\n{'stable' if results['stable'] else 'not stable'}"
    return Outcome(results, text)


@cli.command('verify-theorem')
@click.option('--order', type=click.IntRange(1, harness.MAX_THEOREM_ORDER), required=True)
@click.option('--max', 'max_elements', type=int, default=None, help="Cap on |Cayley(S)| per case (default CAYLEY_MAX_ELEMENTS).")
@budget_option
@reported
def verify_theorem_command(state: CliState, order: int, max_elements: int | None, budget: int | None) -> Outcome:
    """S aperiodic <=> Cayley(S) finite <=> Cayley(S) aperiodic, over a census."""
    config = state.config
    verdict, cases = harness.verify_theorem(
        order,
        config.max_elements if max_elements is None else max_elements,
        config.state_budget if budget is None else budget,
        progress=state.fmt == 'text',
    )
    lines = [
        f"case {c['case']:3}: index {c['aperiodicity_index']}, Cayley {c['cayley_status']}"
        + (f" ({c['cayley_size']} elements, index {c['cayley_aperiodicity_index']})" if c['cayley_size'] is not None else '')
        + ('' if c['holds'] else '  FAILED')
        for c in cases
    ]
    return Outcome({'order': order, 'cases': cases}, '\n'.join(lines), verdict)


@cli.command('gen-order')
@click.argument('order', type=click.IntRange(1, None))
@reported
def gen_order_command(state: CliState, order: int) -> Outcome:
    """All semigroups of an order (up to isomorphism), as canonical tables."""
    census = harness.gen_order(order)
    lines = [f"{census['count']} semigroups of order {order} ({census['count_up_to_anti_isomorphism']} up to anti-isomorphism)"]
    for entry in census['semigroups']:
        lines.append(f"#{entry['index']}: {entry['table']}")
    return Outcome(census, '\n'.join(lines))
