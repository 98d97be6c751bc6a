from __future__ import annotations

from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return ROOT / "fixtures"


@pytest.fixture(scope="session")
def clean_dir(fixtures_dir: Path) -> Path:
    return fixtures_dir / "clean"


@pytest.fixture(scope="session")
def demo_dir(fixtures_dir: Path) -> Path:
    return fixtures_dir / "demo"


@pytest.fixture(scope="session")
def demo_dataset(demo_dir: Path):
    from kvstream import load_dataset

    return load_dataset(demo_dir)


@pytest.fixture(scope="session")
def clean_dataset(clean_dir: Path):
    from kvstream import load_dataset

    return load_dataset(clean_dir)
