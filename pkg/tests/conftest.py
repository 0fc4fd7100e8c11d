from __future__ import annotations

import pytest

from dnaswap.encodings import BaseCode
from dnaswap.protocol import ProtocolConfig, assemble_pair, run_pair


@pytest.fixture(scope="session")
def cfg() -> ProtocolConfig:
    return ProtocolConfig()


@pytest.fixture(scope="session")
def at_state(cfg):
    return assemble_pair(BaseCode("A"), BaseCode("T"), cfg)


@pytest.fixture(scope="session")
def gc_state(cfg):
    return assemble_pair(BaseCode("G"), BaseCode("C"), cfg)


@pytest.fixture(scope="session")
def at_ensemble(cfg):
    return run_pair(BaseCode("A"), BaseCode("T"), cfg)


@pytest.fixture(scope="session")
def gc_ensemble(cfg):
    return run_pair(BaseCode("G"), BaseCode("C"), cfg)
