"""
Pytest configuration and shared fixtures for all tests.
"""

import sys
from pathlib import Path

import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.core.config import settings
from app.services.padic import prime_window


@pytest.fixture
def small_window():
    """Primes 11..61: enough for the ten-prime floor once thresholds apply."""
    return prime_window(11, 61)


@pytest.fixture
def window_bounds():
    """Window bounds as passed to TheoremCase and the CLI."""
    return (7, 97)


@pytest.fixture
def digits():
    """Precision used by real-number tests."""
    return 30


@pytest.fixture
def mock_settings(monkeypatch):
    """Mock settings for testing."""
    monkeypatch.setattr(settings, "min_primes_compared", 10)
    monkeypatch.setattr(settings, "numeric_tolerance", 1e-12)
    monkeypatch.setattr(settings, "jobs", 1)
    return settings


@pytest.fixture
def mock_env_variables(monkeypatch):
    """Mock environment variables for testing."""
    test_env = {
        "FMZV_LOG_LEVEL": "debug",
        "FMZV_DEFAULT_PRIMES": "11:131",
        "FMZV_MIN_PRIMES_COMPARED": "12",
        "FMZV_DEFAULT_DIGITS": "30",
    }

    for key, value in test_env.items():
        monkeypatch.setenv(key, value)

    return test_env
