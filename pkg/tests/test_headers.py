# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only

from pathlib import Path

import pytest

ROOT = Path(__file__).parent.parent
HEADER = [
    "# SPDX-FileCopyrightText: 2025 The Cayley developers",
    "#",
    "# SPDX-License-Identifier: AGPL-3.0-only",
]


@pytest.mark.parametrize('path', sorted(
    p.relative_to(ROOT) for folder in ('src', 'tests', 'dev') for p in (ROOT / folder).rglob('*.py')
), ids=str)
def test_spdx_header(path):
    lines = [line for line in (ROOT / path).read_text(encoding='utf-8').splitlines() if not line.startswith('#!')]
    assert lines[:3] == HEADER
