import sys
import zlib
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import bousskit as bk


def named_rng(name: str, seed: int = 0) -> np.random.Generator:
    """Deterministic per-suite generator, split by name."""
    return np.random.default_rng(np.random.SeedSequence([seed, zlib.crc32(name.encode())]))


@pytest.fixture(scope="session")
def p0():
    """Reference parameter set, nmax=64."""
    return bk.derive_params(2.0, 1.0, 1.0, 1.0, 1, 3.0, 64)


@pytest.fixture(scope="session")
def table0(p0):
    return bk.build_mode_table(p0)


@pytest.fixture(scope="session")
def p16():
    return bk.derive_params(2.0, 1.0, 1.0, 1.0, 1, 3.0, 16)


@pytest.fixture(scope="session")
def table16(p16):
    return bk.build_mode_table(p16)


@pytest.fixture(scope="session")
def p256():
    return bk.derive_params(2.0, 1.0, 1.0, 1.0, 1, 3.0, 256)


@pytest.fixture(scope="session")
def table256(p256):
    return bk.build_mode_table(p256)
