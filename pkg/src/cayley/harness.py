# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

"""Whole-census drivers: the aperiodicity equivalence check and the order-n census."""

import logging
from typing import Any

from tqdm import tqdm

from .core import (
    FiniteSemigroup,
    aperiodicity_index,
    all_semigroups_of_order,
    count_up_to_anti_isomorphism,
    is_idempotent_semigroup,
    nilpotency_index,
)
from .enumeration import DEFAULT_MAX_ELEMENTS, cayley_aperiodicity_index, enumerate_cayley, free_growth_witness
from .errors import BoundExceededError
from .machine import DEFAULT_STATE_BUDGET, full_alphabet
from .verdict import Verdict

logger = logging.getLogger(__name__)

MAX_THEOREM_ORDER = 3
# Cap on |Cayley(S)| per case.  Periodic cases run up to it, so quick runs
# pass a smaller cap; the free-growth witness shows they are infinite anyway.
DEFAULT_THEOREM_MAX = DEFAULT_MAX_ELEMENTS
FREE_GROWTH_LEN = 5


def check_case(S: FiniteSemigroup, max_elements: int = DEFAULT_THEOREM_MAX, state_budget: int = DEFAULT_STATE_BUDGET) -> dict[str, Any]:
    ''' One case of: S aperiodic <=> Cayley(S) finite <=> Cayley(S) aperiodic.

    Finiteness is read as "enumeration completes within max_elements".  For
    a periodic S the free-growth witness is checked as well.
    '''
    index = aperiodicity_index(S)
    E = enumerate_cayley(full_alphabet(S), max_elements, state_budget)
    cayley_index = cayley_aperiodicity_index(E) if E.complete else None

    aperiodic = index is not None
    holds = aperiodic == E.complete == (cayley_index is not None)
    result: dict[str, Any] = {
        'table': [list(row) for row in S.table],
        'aperiodicity_index': index,
        'cayley_status': E.status,
        'cayley_size': E.size if E.complete else None,
        'cayley_aperiodicity_index': cayley_index,
    }
    if not aperiodic:
        growth = free_growth_witness(S, FREE_GROWTH_LEN, state_budget)
        result['free_growth'] = growth.to_data()
        holds = holds and growth.holds
    result['holds'] = holds
    return result


def verify_theorem(order: int, max_elements: int = DEFAULT_THEOREM_MAX, state_budget: int = DEFAULT_STATE_BUDGET, *, progress: bool = False) -> tuple[Verdict, list[dict[str, Any]]]:
    ''' Run check_case() over every semigroup of the given order.

    Returns:
        The overall verdict (first failing case as counterexample) and the
        per-case results in census order.
    '''
    if order > MAX_THEOREM_ORDER:
        raise BoundExceededError(f"the theorem harness is limited to order <= {MAX_THEOREM_ORDER}")
    census = all_semigroups_of_order(order)
    cases = []
    for k, S in enumerate(tqdm(census, desc=f"order {order}", disable=not progress)):
        case = {'case': k} | check_case(S, max_elements, state_budget)
        logger.info(f"order {order} case {k}: {'pass' if case['holds'] else 'FAIL'}")
        cases.append(case)

    aperiodic = sum(1 for c in cases if c['aperiodicity_index'] is not None)
    details = {'cases': len(cases), 'aperiodic': aperiodic, 'non_aperiodic': len(cases) - aperiodic, 'max_elements': max_elements}
    failed = next((c for c in cases if not c['holds']), None)
    if failed is not None:
        return Verdict.failed('main theorem', len(cases), failed, details), cases
    return Verdict.passed('main theorem', len(cases), details), cases


def gen_order(order: int) -> dict[str, Any]:
    """The census of one order with a few facts per class."""
    census = all_semigroups_of_order(order)
    return {
        'order': order,
        'count': len(census),
        'count_up_to_anti_isomorphism': count_up_to_anti_isomorphism(order),
        'semigroups': [
            {
                'index': k,
                'table': [list(row) for row in S.table],
                'aperiodicity_index': aperiodicity_index(S),
                'idempotent': is_idempotent_semigroup(S),
                'identity': S.identity,
                'zero': S.zero,
                'nilpotency_index': nilpotency_index(S),
            }
            for k, S in enumerate(census)
        ],
    }
