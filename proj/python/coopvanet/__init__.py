# SPDX-License-Identifier: Apache-2.0
"""Coalitional game analysis of cooperative vehicle/RSU transmission."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
