# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

import random

import pytest
from click.testing import CliRunner
from dotenv import find_dotenv, load_dotenv

from cayley.catalog import CatalogEntry, catalog, lookup
from cayley.core import FiniteSemigroup, all_semigroups_of_order


@pytest.fixture(scope='session', autouse=True)
def _load_env():
    env_file = find_dotenv('.env.test')
    load_dotenv(env_file)


@pytest.fixture(name='catalog')
def catalog_fixture() -> dict[str, CatalogEntry]:
    """ The built-in semigroups keyed by their catalog names. """
    return {entry.key: entry for entry in catalog()}


@pytest.fixture
def s1() -> FiniteSemigroup:
    return lookup('S1').semigroup


@pytest.fixture
def s2() -> FiniteSemigroup:
    return lookup('S2').semigroup


@pytest.fixture
def s3() -> FiniteSemigroup:
    return lookup('S3').semigroup


@pytest.fixture
def s4() -> FiniteSemigroup:
    return lookup('S4').semigroup


@pytest.fixture
def s5() -> FiniteSemigroup:
    return lookup('S5').semigroup


@pytest.fixture
def m5() -> FiniteSemigroup:
    return lookup('M5').semigroup


@pytest.fixture
def trivial() -> FiniteSemigroup:
    return lookup('trivial').semigroup


@pytest.fixture(scope='session')
def order2() -> list[FiniteSemigroup]:
    return all_semigroups_of_order(2)


@pytest.fixture(scope='session')
def order3() -> list[FiniteSemigroup]:
    return all_semigroups_of_order(3)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0)


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()
