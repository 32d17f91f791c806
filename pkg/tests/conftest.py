import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import MELBOURNE_FRONT, RYE_FRONT, build_case_study_fixture, candidates_from_rows


@pytest.fixture(scope="session")
def melbourne_candidates():
    return candidates_from_rows(MELBOURNE_FRONT)


@pytest.fixture(scope="session")
def rye_candidates():
    return candidates_from_rows(RYE_FRONT)


@pytest.fixture(scope="session")
def melbourne_fixture():
    return build_case_study_fixture(MELBOURNE_FRONT)


@pytest.fixture(scope="session")
def rye_fixture():
    return build_case_study_fixture(RYE_FRONT)
