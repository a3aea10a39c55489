"""Shared fixtures; skips this directory when the package is not installed."""

import pathlib

import pytest

pytest.importorskip("tilestep_plots")

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA
