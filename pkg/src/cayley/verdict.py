# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

from dataclasses import dataclass
from typing import Any

from typing_extensions import Self


@dataclass(frozen=True)
class Verdict:
    """Outcome of an exhaustive or sampled check.

    A failing verdict is a mathematical result, not an error; the first
    counterexample found (in deterministic scan order) is kept verbatim.
    """
    name: str
    holds: bool
    checked: int
    counterexample: dict[str, Any] | None = None
    details: dict[str, Any] | None = None

    @classmethod
    def passed(cls, name: str, checked: int, details: dict[str, Any] | None = None) -> Self:
        return cls(name, True, checked, None, details)

    @classmethod
    def failed(cls, name: str, checked: int, counterexample: dict[str, Any], details: dict[str, Any] | None = None) -> Self:
        return cls(name, False, checked, counterexample, details)

    def __bool__(self) -> bool:
        return self.holds

    def to_data(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            'name': self.name,
            'holds': self.holds,
            'checked': self.checked,
            'counterexample': self.counterexample,
        }
        if self.details is not None:
            data['details'] = self.details
        return data
