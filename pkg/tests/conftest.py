"""
Pytest Configuration and Shared Fixtures for the fdots Test Suite

Provides reference ecosystems, engines and registry stores.
"""

import logging
from pathlib import Path
from typing import Dict

import pytest

from fdots.core import (
    AssociationModel,
    Ecosystem,
    Pid,
    create_attribute_fixture,
    create_profile_fixture,
    create_record_fixture,
    reference_relation,
)
from fdots.engines import create_engine
from fdots.registries import RegistryStore, dump_ecosystem

# Configure logging for tests
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)


# ============================================================================
# Reference Ecosystem Fixtures
# ============================================================================

@pytest.fixture
def record_ecosystem() -> Ecosystem:
    """Reference ecosystem under record typing."""
    return create_record_fixture()


@pytest.fixture
def profile_ecosystem() -> Ecosystem:
    """Reference ecosystem under profile typing."""
    return create_profile_fixture()


@pytest.fixture
def attribute_ecosystem() -> Ecosystem:
    """Reference ecosystem under attribute typing."""
    return create_attribute_fixture()


@pytest.fixture
def all_ecosystems(record_ecosystem, profile_ecosystem, attribute_ecosystem) -> Dict[str, Ecosystem]:
    """The three reference ecosystems keyed by model name."""
    return {
        AssociationModel.RECORD.value: record_ecosystem,
        AssociationModel.PROFILE.value: profile_ecosystem,
        AssociationModel.ATTRIBUTE.value: attribute_ecosystem,
    }


@pytest.fixture(scope="session")
def expected_relation():
    """The reference association relation."""
    return reference_relation()


# ============================================================================
# Engine Fixtures
# ============================================================================

@pytest.fixture(params=["record", "profile", "attribute"])
def scanning_engine(request, all_ecosystems):
    """Scanning (index-free) engine for each reference ecosystem."""
    return create_engine(all_ecosystems[request.param], use_index=False)


@pytest.fixture(params=["record", "profile", "attribute"])
def indexed_engine(request, all_ecosystems):
    """Indexed engine for each reference ecosystem."""
    return create_engine(all_ecosystems[request.param], use_index=True)


# ============================================================================
# Store Fixtures (Function Scope - Fresh for Each Test)
# ============================================================================

@pytest.fixture
def store_root(tmp_path) -> Path:
    """Empty directory for a registry store."""
    return tmp_path / "fdo-store"


@pytest.fixture
def record_store(store_root, record_ecosystem) -> RegistryStore:
    """Store populated with the record-typed reference ecosystem."""
    return dump_ecosystem(record_ecosystem, store_root)


# ============================================================================
# Helper Functions
# ============================================================================

def pid(name: str) -> Pid:
    """PID of a reference component by short name, e.g. pid('f1')."""
    return Pid(f"21.T/{name}")


def assert_relation(engine, expected):
    """Assert that ``engine`` reproduces ``expected`` exactly."""
    actual = set(engine.relation())
    assert actual == set(expected), (
        f"missing {sorted(set(expected) - actual)}, extra {sorted(actual - set(expected))}"
    )


# Export helper functions
__all__ = ['assert_relation', 'pid']
