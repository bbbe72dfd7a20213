from pathlib import Path

import pytest

from zplab.zerotable import load_zero_table

REPO_ROOT = Path(__file__).resolve().parent.parent
ZERO_TABLE_PATH = REPO_ROOT / "data" / "zeta_zeros_10k.txt"


@pytest.fixture(scope="session")
def zero_table():
    if not ZERO_TABLE_PATH.exists():
        pytest.skip("bundled zero table missing; run scripts/generate_zero_table.py")
    return load_zero_table(ZERO_TABLE_PATH)
