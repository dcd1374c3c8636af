from pathlib import Path

import pytest

from dccarbon import load_catalog, load_profiles

DATA_DIR = Path(__file__).resolve().parents[1] / "demos" / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def fleet(data_dir):
    """(servers-by-name, factors, params) from the shipped catalog."""
    servers, factors, params = load_catalog(data_dir / "catalog.yaml")
    return {s.name: s for s in servers}, factors, params


@pytest.fixture(scope="session")
def profiles(data_dir, fleet):
    servers, _, _ = fleet
    return load_profiles(data_dir / "profiles.csv", known_systems=servers)


@pytest.fixture(scope="session")
def latency_profile(data_dir):
    return load_profiles(data_dir / "resnet50_latency.csv")[0]
