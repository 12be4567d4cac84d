# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

"""Registry of named example semigroups.

Tables are embedded here so that examples and tests need no files.  Entries
are registered with register_entry() (or the @catalog_entry decorator for
entries built by a function), in the order they should be listed.
"""

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

from .core import FiniteSemigroup, monogenic, validate
from .errors import FormatError


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    semigroup: FiniteSemigroup
    description: str = ''
    expected: dict[str, Any] = field(default_factory=dict, compare=False)


_registry: dict[str, CatalogEntry] = {}


def register_entry(key: str, semigroup: FiniteSemigroup, description: str = '', **expected: Any) -> CatalogEntry:
    """Add an entry to the catalog.  Keys are case-insensitive and unique."""
    if key.upper() in _registry:
        raise FormatError(f"catalog key {key} is already registered")
    entry = CatalogEntry(key, semigroup.with_name(key), description, expected)
    _registry[key.upper()] = entry
    return entry


def catalog_entry(key: str, description: str = '', **expected: Any) -> Callable[[Callable[[], FiniteSemigroup]], Callable[[], FiniteSemigroup]]:
    """Decorator form of register_entry() for a function building the semigroup."""
    def decorator(func: Callable[[], FiniteSemigroup]) -> Callable[[], FiniteSemigroup]:
        register_entry(key, func(), description, **expected)
        return func
    return decorator


def catalog() -> list[CatalogEntry]:
    return list(_registry.values())


def lookup(key: str) -> CatalogEntry:
    try:
        return _registry[key.upper()]
    except KeyError:
        known = ', '.join(e.key for e in _registry.values())
        raise FormatError(f"no catalog entry '{key}' (known: {known})") from None


# The five semigroups of order 2, up to isomorphism.
# Expected Cayley facts below come from the examples they are named after.
register_entry(
    "S1", validate([[0, 0], [1, 1]], ["a", "b"]),
    "left zero semigroup of order 2",
    cayley_size=2, cayley_isomorphic=True, aperiodicity_index=1,
)
register_entry(
    "S2", validate([[0, 1], [0, 1]], ["a", "b"]),
    "right zero semigroup of order 2",
    cayley_size=2, cayley_isomorphic=True, aperiodicity_index=1,
)
register_entry(
    "S3", validate([[0, 0], [0, 1]], ["0", "1"]),
    "semilattice {0, 1}",
    cayley_size=2, cayley_isomorphic=True, aperiodicity_index=1,
)
register_entry(
    "S4", validate([[0, 0], [0, 0]], ["0", "x"]),
    "nil semigroup <x | x^2 = 0>",
    cayley_size=2, cayley_isomorphic=True, aperiodicity_index=2, nilpotency_index=2,
)
register_entry(
    "S5", validate([[0, 1], [1, 0]], ["1", "x"]),
    "cyclic group of order 2",
    cayley_size=None, growth=[2, 4, 8, 16, 32], aperiodicity_index=None,
)


@catalog_entry("M5", "monogenic <x | x^5 = x^6>", aperiodicity_index=5)
def _m5() -> FiniteSemigroup:
    return monogenic(5, 1)


@catalog_entry("trivial", "the one-element semigroup", cayley_size=1, aperiodicity_index=1)
def _trivial() -> FiniteSemigroup:
    return validate([[0]], ["e"])
