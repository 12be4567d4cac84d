# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

"""Semigroup files, text renderers, and run reports.

A semigroup file is a JSON document:

    {"name": "S1", "elements": ["a", "b"], "table": [[0, 0], [1, 1]]}

with table[i][j] the 0-based index of the product of elements i and j.
"""

import json
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal, TypedDict

from .core import FiniteSemigroup, validate
from .errors import FormatError

ReportStatus = Literal['ok', 'failed', 'error']


class SemigroupDoc(TypedDict):
    name: str
    elements: list[str]
    table: list[list[int]]


def parse_semigroup(text: str, *, allow_magma: bool = False) -> FiniteSemigroup:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"not a JSON document: {e}") from e
    if not isinstance(doc, dict) or 'table' not in doc:
        raise FormatError("a semigroup document needs a 'table' field")
    table = doc['table']
    if not isinstance(table, list) or not all(isinstance(row, list) for row in table):
        raise FormatError("'table' must be an array of arrays")
    names = doc.get('elements')
    if names is not None and (not isinstance(names, list) or not all(isinstance(n, str) for n in names)):
        raise FormatError("'elements' must be an array of strings")
    return validate(table, names, str(doc.get('name', '')), allow_magma=allow_magma)


def emit_semigroup(S: FiniteSemigroup) -> str:
    doc: SemigroupDoc = {
        'name': S.name,
        'elements': list(S.names),
        'table': [list(row) for row in S.table],
    }
    return json.dumps(doc, ensure_ascii=False)


def load_semigroup(path: Path, *, allow_magma: bool = False) -> FiniteSemigroup:
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e}") from e
    return parse_semigroup(text, allow_magma=allow_magma)


def split_names(text: str) -> list[str]:
    """'a,b,a' -> ['a', 'b', 'a']; the empty string is the empty word."""
    return [x.strip() for x in text.split(',')] if text.strip() else []


def render_table(S: FiniteSemigroup) -> str:
    ''' Multiplication table, row = left factor.  Identity and zero are
    noted below the grid. '''
    width = max(len(n) for n in S.names) + 1
    header = ' ' * width + ' |' + ''.join(n.rjust(width) for n in S.names)
    lines = [header, '-' * len(header)]
    for i, row in enumerate(S.table):
        lines.append(S.names[i].rjust(width) + ' |' + ''.join(S.names[x].rjust(width) for x in row))
    notes = []
    if S.identity is not None:
        notes.append(f"identity: {S.names[S.identity]}")
    if S.zero is not None:
        notes.append(f"zero: {S.names[S.zero]}")
    if notes:
        lines.append('; '.join(notes))
    return '\n'.join(lines)


def render_grid(rows: Sequence[Sequence[object]]) -> str:
    return '\n'.join(' '.join(str(x) for x in row) for row in rows)


def render_word(names: Sequence[str]) -> str:
    return ','.join(names) if names else 'ε'


@dataclass(frozen=True)
class RunReport:
    ''' What one CLI invocation produced.

    results holds only deterministic content; wall-clock figures live in
    timing so that reports compare equal across runs.
    '''
    command: str
    status: ReportStatus
    exit_code: int
    results: dict[str, Any] = field(default_factory=dict)
    timing: dict[str, float] = field(default_factory=dict, compare=False)

    def to_data(self) -> dict[str, Any]:
        return {
            'command': self.command,
            'status': self.status,
            'exit_code': self.exit_code,
            'results': self.results,
            'timing': self.timing,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_data(), ensure_ascii=False, indent=2, default=_jsonable)


def _jsonable(x: object) -> object:
    if isinstance(x, (set, frozenset)):
        return sorted(x)  # type: ignore[type-var]
    raise TypeError(f"{type(x).__name__} is not JSON serializable")
