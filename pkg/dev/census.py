#!/usr/bin/env python3
# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

"""Time the census and the Cayley enumeration for each semigroup of an order.

Prints one line per semigroup (aperiodicity index, |Cayley(S)| or
"exceeded", seconds) and a summary of the slowest cases.
"""

import argparse
import time

from tqdm import tqdm

from cayley.core import aperiodicity_index, all_semigroups_of_order
from cayley.enumeration import enumerate_cayley
from cayley.harness import DEFAULT_THEOREM_MAX
from cayley.machine import full_alphabet


def time_order(order: int, max_elements: int, slowest: int) -> None:
    start = time.perf_counter()
    census = all_semigroups_of_order(order)
    print(f"order {order}: {len(census)} semigroups in {time.perf_counter() - start:.2f}s")

    timings = []
    for k, S in enumerate(tqdm(census, desc=f"order {order}")):
        start = time.perf_counter()
        E = enumerate_cayley(full_alphabet(S), max_elements)
        elapsed = time.perf_counter() - start
        size = str(E.size) if E.complete else "exceeded"
        timings.append((elapsed, k))
        tqdm.write(f"#{k:3}  index {aperiodicity_index(S)!s:5} |Cayley| {size:>9}  {elapsed:.3f}s")

    print(f"\x1B[32mtotal {sum(t for t, _ in timings):.2f}s\x1B[m")
    for elapsed, k in sorted(timings, reverse=True)[:slowest]:
        print(f"  #{k}: {elapsed:.3f}s  {census[k].table}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("order", type=int, nargs="+", help="one or more orders (1-4)")
    parser.add_argument("--max", dest="max_elements", type=int, default=DEFAULT_THEOREM_MAX, help="cap on |Cayley(S)|")
    parser.add_argument("--slowest", type=int, default=5, help="number of slowest cases to list")
    args = parser.parse_args()

    for order in args.order:
        time_order(order, args.max_elements, args.slowest)


if __name__ == "__main__":
    main()
