"""
Layout Algebra - Test Fixtures
"""

import logging

import pytest

from config import TestingConfig
from core.diagnostics import OracleDiagnostics

logger = logging.getLogger(__name__)


@pytest.fixture(scope="session")
def ledger():
    """Oracle agreement ledger shared by the randomized suites."""
    diagnostics = OracleDiagnostics(TestingConfig.ORACLE_CONFIG)
    yield diagnostics
    for name, tally in diagnostics.summary()["operations"].items():
        logger.info(
            f"{name}: {tally['agreed']} agreed, {tally['rejected']} rejected, "
            f"{tally['disagreed']} disagreed, rejection rate {tally['rejection_rate']:.3f}")
