"""Shared fixtures.

The acceptance suite needs full layer profiles for P_1..P_10 and BP_1..BP_8;
several criteria consume the same profiles.  A session-scoped cache computes
each (kind, n) profile once so the expensive searches are not repeated.
"""

import pytest

from pancakes.graphs import PancakeGraph
from pancakes.search import layer_profile


class ProfileCache:
    """Memoizes layer_profile per (kind, n).

    Keyword arguments (memory_limit, workers, ...) apply only on a cache
    miss; repeated calls for the same graph return the first result.
    """

    def __init__(self):
        self._profiles = {}

    def __call__(self, kind, n, **kwargs):
        key = (kind, n)
        if key not in self._profiles:
            self._profiles[key] = layer_profile(PancakeGraph(kind, n), **kwargs)
        return self._profiles[key]


@pytest.fixture(scope="session")
def profiles():
    return ProfileCache()
