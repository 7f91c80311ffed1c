from __future__ import annotations

from pathlib import Path

import pytest

from pnog import load_graph_file, parse_native_graph, parse_netfile

SAMPLES = Path(__file__).resolve().parents[1] / "samples"


def samples_loader(path: str):
    return load_graph_file(str(SAMPLES / path))


@pytest.fixture(scope="session")
def og1():
    return parse_native_graph((SAMPLES / "og1.og").read_text())


@pytest.fixture(scope="session")
def og2():
    return parse_native_graph((SAMPLES / "og2.og").read_text())


@pytest.fixture(scope="session")
def airport():
    """The admission-control net used throughout: 4 places, 5 transitions,
    one passenger token that stays on its self loops."""
    return parse_netfile((SAMPLES / "airport.pnog").read_text(),
                         samples_loader)


@pytest.fixture()
def airport_path():
    return str(SAMPLES / "airport.pnog")
