"""
Pytest configuration and shared fixtures for the mvnlab test suite.

This module provides seeded random generators, the canonical block algebras and
a few hand-built operators used across unit and integration tests.
"""

from unittest.mock import patch

import numpy as np
import pytest

from mvnlab.blockvn import BlockOperator, FiniteBlockAlgebra, make_algebra
from mvnlab.families import DIAGONAL_ALGEBRA, FINITE_ALGEBRA, MIXED_ALGEBRA


@pytest.fixture(scope="function", autouse=True)
def setup_unit_test_environment(request, tmp_path):
    """Pin MVNLAB_* settings for unit tests so the host environment cannot leak in.

    Args:
        request: Pytest request fixture
        tmp_path: Per-test temporary directory used as the report directory

    Yields:
        None: Fixture provides environment configuration context
    """
    if "integration" in request.keywords:
        # Integration tests set what they need themselves
        yield
        return

    with patch.dict(
        "os.environ",
        {
            "MVNLAB_THREADS": "1",
            "MVNLAB_LOG_LEVEL": "WARNING",
            "MVNLAB_OUTPUT_DIR": str(tmp_path / "results"),
            "MVNLAB_DEFAULT_SEED": "0",
            "MVNLAB_DEFAULT_TOL": "1e-8",
        },
    ):
        yield


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator; every test gets the same stream."""
    return np.random.default_rng(20240601)


@pytest.fixture
def diagonal_algebra() -> FiniteBlockAlgebra:
    """Infinitely many 1×1 blocks with weights 2^{-(k+1)}."""
    return DIAGONAL_ALGEBRA


@pytest.fixture
def mixed_algebra() -> FiniteBlockAlgebra:
    """M2 ⊕ M3 prefix followed by a geometric tail of 1×1 blocks."""
    return MIXED_ALGEBRA


@pytest.fixture
def finite_algebra() -> FiniteBlockAlgebra:
    """M2 ⊕ M3 with weights (0.4, 0.6)."""
    return FINITE_ALGEBRA


@pytest.fixture
def m2() -> FiniteBlockAlgebra:
    """The single block algebra M2(C)."""
    return make_algebra((2,), (1.0,))


@pytest.fixture
def scalar_algebra() -> FiniteBlockAlgebra:
    """The algebra C."""
    return make_algebra((1,), (1.0,))


@pytest.fixture
def tail_k_operator(diagonal_algebra) -> BlockOperator:
    """Unbounded diagonal operator acting as k on block k."""
    return BlockOperator.from_formula(diagonal_algebra, "k")


@pytest.fixture
def operator_file(tmp_path):
    """Factory writing operator text to a file and returning its path."""

    def _write(text: str, name: str = "op.txt") -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write
