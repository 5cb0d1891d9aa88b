"""Shared fixtures: parsed presentations and completed rewriting systems"""

from pathlib import Path

import pytest

from src.rewriting import knuth_bendix
from src.weeks import WEEKS
from src.words import Presentation, parse_presentation

PRESENTATIONS = Path(__file__).parent / "presentations"


def load(name: str) -> Presentation:
    return parse_presentation((PRESENTATIONS / f"{name}.grp").read_text())


@pytest.fixture(scope="session")
def presentations_dir() -> Path:
    return PRESENTATIONS


@pytest.fixture(scope="session")
def weeks() -> Presentation:
    return WEEKS


@pytest.fixture(scope="session")
def weeks_system(weeks):
    system = knuth_bendix(weeks)
    assert system.confluent, system.stats.stop_reason
    return system


@pytest.fixture(scope="session")
def z3():
    return load("z_mod3")


@pytest.fixture(scope="session")
def z3_system(z3):
    return knuth_bendix(z3)


@pytest.fixture(scope="session")
def free2():
    return load("f2")


@pytest.fixture(scope="session")
def s3():
    return Presentation(("a", "b"), ("aa", "bbb", "abab"))


@pytest.fixture(scope="session")
def s3_system(s3):
    return knuth_bendix(s3)
