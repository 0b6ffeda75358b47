import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# Golden factorization vector: one boxed sign with seven placements.
GOLDEN_FSW = (
    "M550x535S32a00482x483S15d09455x499S15d01522x497S22114516x484"
    "S22114456x484S20f00524x522S20f00451x523"
)

GOLDEN_STREAMS = {
    "symbol": "M S32a00 S15d09 S15d01 S22114 S22114 S20f00 S20f00",
    "x": "550 482 455 522 516 456 524 451",
    "y": "535 483 499 497 484 484 522 523",
    "x_rel": "-1 3 1 5 4 2 6 0",
    "y_rel": "-1 0 4 3 1 2 5 6",
    "core": "M S32a S15d S15d S221 S221 S20f S20f",
    "col": "-1 0 0 0 1 1 0 0",
    "row": "-1 0 9 1 4 4 0 0",
}


@pytest.fixture
def golden_fsw():
    return GOLDEN_FSW


@pytest.fixture
def golden_streams():
    return GOLDEN_STREAMS
