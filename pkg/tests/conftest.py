"""Shared fixtures: a small polygon census built once per session."""

from __future__ import annotations

import pytest

from qhelly.census import CensusStore


@pytest.fixture(scope="session")
def small_cache(tmp_path_factory) -> CensusStore:
    """Census store covering interior counts 0..5 (a few seconds to build)."""
    store = CensusStore(tmp_path_factory.mktemp("census-cache"))
    store.ensure(5)
    return store
