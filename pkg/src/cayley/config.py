# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

import logging
import os
from dataclasses import dataclass, replace
from logging.config import dictConfig
from typing import Any

from dotenv import load_dotenv

from .errors import ConfigError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Config:
    max_elements: int = 100_000   # enumeration cap on |C(S)|
    state_budget: int = 1_000_000  # reachable cascade states per canonicalization
    depth: int = 2                 # default portrait depth
    seed: int = 0                  # sampling seed for harness checks
    log_level: str = 'INFO'
    testing: bool = False          # leave logging handlers alone (pytest owns them)


# environment variable -> Config field
_ENV_VARS = {
    'CAYLEY_MAX_ELEMENTS': 'max_elements',
    'CAYLEY_STATE_BUDGET': 'state_budget',
    'CAYLEY_DEPTH': 'depth',
    'CAYLEY_SEED': 'seed',
    'CAYLEY_LOG_LEVEL': 'log_level',
    'CAYLEY_TESTING': 'testing',
}


def load_config(overrides: dict[str, Any] | None = None) -> Config:
    ''' Build the run configuration.

    Defaults are overridden by variables in the environment (or a .env file,
    loaded here), which are in turn overridden by explicit overrides (e.g.,
    from command-line options).  Overrides with value None are ignored.
    '''
    load_dotenv()

    base_config = Config()
    env_config: dict[str, Any] = {}
    for varname, fieldname in _ENV_VARS.items():
        if varname not in os.environ:
            continue
        value = os.environ[varname]
        if fieldname == 'log_level':
            env_config[fieldname] = value.upper()
            continue
        if fieldname == 'testing':
            env_config[fieldname] = value.lower() in ('1', 'true', 'yes')
            continue
        try:
            env_config[fieldname] = int(value)
        except ValueError:
            logger.error(f"{varname} environment variable is not an integer: '{value}'")
            raise ConfigError(f"{varname} must be an integer, got '{value}'") from None

    explicit = {k: v for k, v in (overrides or {}).items() if v is not None}
    total_config = env_config | explicit

    for key, value in total_config.items():
        if key not in ('log_level', 'testing') and (not isinstance(value, int) or value < 0):
            raise ConfigError(f"{key} must be a non-negative integer, got {value!r}")
    if not isinstance(logging.getLevelName(total_config.get('log_level', base_config.log_level)), int):
        raise ConfigError(f"unknown log level '{total_config['log_level']}'")

    return replace(base_config, **total_config)


def configure_logging(level: str = 'INFO', *, testing: bool = False) -> None:
    # Logs go to stderr so that stdout carries only command results.
    if not testing:
        dictConfig({
            'version': 1,
            'formatters': {'default': {
                'format': '[%(asctime)s] %(levelname)s in %(module)s: %(message)s',
            }},
            'handlers': {'stderr': {
                'class': 'logging.StreamHandler',
                'stream': 'ext://sys.stderr',
                'formatter': 'default'
            }},
            'root': {
                'level': level,
                'handlers': ['stderr']
            },
            'disable_existing_loggers': False,
        })
    else:
        # For testing/debugging, ensure DEBUG level logging.
        logging.getLogger().setLevel(logging.DEBUG)
        logging.debug("DEBUG logging enabled.")
