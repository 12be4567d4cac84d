# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

"""Exceptions raised by the cayley package.

Everything derives from CayleyError so the CLI can report any domain failure
with a single except clause.  Mathematical verdicts (a counterexample found by
a harness) are *not* exceptions; see verdict.Verdict.
"""


class CayleyError(Exception):
    pass


class ConfigError(CayleyError):
    pass


class FormatError(CayleyError):
    pass


class OutOfRangeEntryError(CayleyError):
    pass


class NotAssociativeError(CayleyError):
    def __init__(self, i: int, j: int, k: int) -> None:
        super().__init__(f"table is not associative: ({i}*{j})*{k} != {i}*({j}*{k})")
        self.triple = (i, j, k)


class NotAnIdealError(CayleyError):
    def __init__(self, s: int, i: int, product: int) -> None:
        super().__init__(f"not an ideal: product of {s} and {i} is {product}, outside the set")
        self.witness = (s, i)


class BoundExceededError(CayleyError):
    pass


class NoZeroError(CayleyError):
    pass


class NotAperiodicError(CayleyError):
    pass


class NotRegularError(CayleyError):
    pass


class InconsistentActionError(CayleyError):
    pass


class AlphabetMismatchError(CayleyError):
    pass


class StateBudgetExceededError(CayleyError):
    def __init__(self, budget: int) -> None:
        super().__init__(f"cascade construction exceeded the state budget of {budget}")
        self.budget = budget


class IncompleteEnumerationError(CayleyError):
    pass


class NotAMorphismError(CayleyError):
    pass


class WitnessMismatchError(CayleyError):
    pass


class NotClosedError(CayleyError):
    pass


class NotAChainError(CayleyError):
    pass


class PreconditionViolatedError(CayleyError):
    pass


class ActionKilledError(CayleyError):
    pass
