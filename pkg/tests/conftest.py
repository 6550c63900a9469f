import pathlib

import pytest

from liebrace import tablerepro

REPO = pathlib.Path(__file__).resolve().parents[1]


@pytest.fixture(scope="session")
def table_report():
    """One full table build (200 samples, seed 42, tol 1e-9), shared by the
    table tests and the acceptance suite."""
    return tablerepro.build_table(samples=200, seed=42, tol=1e-9)


@pytest.fixture(scope="session")
def golden_path():
    return REPO / "table.golden.json"


@pytest.fixture(scope="session")
def witness_dir():
    return REPO / "witnesses"
