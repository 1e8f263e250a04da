"""Shared instances and settings isolation for the test suite."""

from fractions import Fraction

import numpy as np
import pytest

from semicut.config import get_settings
from semicut.services.digraph import SemiCompleteDigraph, gen_transitive, validate, with_weights
from tests.helpers import DOUBLE_ARC_TRIANGLE, TRIANGLE


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test starts from default settings, unaffected by a local .env."""
    monkeypatch.setenv("SEMICUT_RECORD_TIMINGS", "true")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def triangle() -> SemiCompleteDigraph:
    return validate(np.array(TRIANGLE))


@pytest.fixture
def double_arc_triangle() -> SemiCompleteDigraph:
    return validate(np.array(DOUBLE_ARC_TRIANGLE))


@pytest.fixture
def half_weight_triangle(triangle) -> SemiCompleteDigraph:
    """Triangle with every arc weighing 3/2."""
    return with_weights(triangle, {a: Fraction(3, 2) for a in triangle.iter_arcs()})


@pytest.fixture
def transitive5() -> SemiCompleteDigraph:
    return gen_transitive(5)
