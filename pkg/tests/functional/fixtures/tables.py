"""
Shared table fixtures.

``small_table`` and ``small_oracle`` have 16 cells and 8-cell shards, which is
what the hand-built layouts in the tests assume.
"""

import pytest
from typer.testing import CliRunner

from hoodhash.kcas import KCas, WordArray
from hoodhash.oracle import SerialTable
from hoodhash.table import RobinHoodTable

SMALL_CAPACITY_LOG2 = 4
SMALL_MASK = (1 << SMALL_CAPACITY_LOG2) - 1


@pytest.fixture
def kcas() -> KCas:
    return KCas(check_epochs=True)


@pytest.fixture
def words() -> WordArray:
    return WordArray(8)


@pytest.fixture
def small_table(kcas: KCas) -> RobinHoodTable:
    return RobinHoodTable(SMALL_CAPACITY_LOG2, 3, kcas=kcas)


@pytest.fixture
def small_oracle() -> SerialTable:
    return SerialTable(SMALL_CAPACITY_LOG2, check_invariant=True)


@pytest.fixture
def cli_runner() -> CliRunner:
    return CliRunner()
