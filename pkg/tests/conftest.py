"""Shared, session-cached analyses of the fixtures and the random corpus."""

from __future__ import annotations

import pytest

from plmorse.fixtures import FIXTURE_NAMES, corpus, fixture, ribbon_corpus
from plmorse.meshfile import format_mesh
from plmorse.report import analyze_bytes


def run(fx):
    """Analyze a fixture through the file format, like the CLI does."""
    return analyze_bytes(format_mesh(fx.mesh, fx.values).encode("ascii"))


@pytest.fixture(scope="session")
def fixtures():
    return {name: fixture(name) for name in FIXTURE_NAMES}


@pytest.fixture(scope="session")
def fixture_runs(fixtures):
    return {name: run(fx) for name, fx in fixtures.items()}


@pytest.fixture(scope="session")
def random_corpus():
    """Grid bump fields (34 per saddle budget 1..6) plus random single-level ribbons."""
    return corpus() + ribbon_corpus()
