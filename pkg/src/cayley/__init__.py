# SPDX-FileCopyrightText: 2025 The Cayley developers
#
# SPDX-License-Identifier: AGPL-3.0-only
