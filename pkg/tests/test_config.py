# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

import pytest
from cayley.config import Config, load_config
from cayley.errors import ConfigError


def test_env_values(monkeypatch):
    monkeypatch.setenv('CAYLEY_MAX_ELEMENTS', '500')
    monkeypatch.setenv('CAYLEY_LOG_LEVEL', 'warning')
    config = load_config()
    assert config.max_elements == 500
    assert config.log_level == 'WARNING'


def test_defaults(monkeypatch):
    for var in ('CAYLEY_MAX_ELEMENTS', 'CAYLEY_STATE_BUDGET', 'CAYLEY_DEPTH', 'CAYLEY_SEED', 'CAYLEY_LOG_LEVEL', 'CAYLEY_TESTING'):
        monkeypatch.delenv(var, raising=False)
    monkeypatch.setattr('cayley.config.load_dotenv', lambda: None)
    assert load_config() == Config()


def test_testing_flag(monkeypatch):
    monkeypatch.setenv('CAYLEY_TESTING', 'yes')
    assert load_config().testing
    monkeypatch.setenv('CAYLEY_TESTING', '0')
    assert not load_config().testing


def test_overrides(monkeypatch):
    monkeypatch.setenv('CAYLEY_DEPTH', '3')
    assert load_config({'depth': 5}).depth == 5
    assert load_config({'depth': None}).depth == 3


@pytest.mark.parametrize(('var', 'value'), [
    ('CAYLEY_MAX_ELEMENTS', 'many'),
    ('CAYLEY_SEED', '1.5'),
    ('CAYLEY_STATE_BUDGET', '-1'),
    ('CAYLEY_LOG_LEVEL', 'chatty'),
])
def test_bad_env(monkeypatch, var, value):
    monkeypatch.setenv(var, value)
    with pytest.raises(ConfigError):
        load_config()


def test_bad_override():
    with pytest.raises(ConfigError):
        load_config({'max_elements': -5})
