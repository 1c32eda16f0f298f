import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tourlab import (
    Tournament,
    arc_tournament,
    cyclic_game,
    three_cycle,
    transitive_order,
    trivial,
    y2,
)


@pytest.fixture
def c3():
    return three_cycle()


@pytest.fixture
def arc():
    return arc_tournament()


@pytest.fixture
def z5():
    return cyclic_game(5, [1, 2])


@pytest.fixture
def y2t():
    return y2()


@pytest.fixture
def order3():
    return transitive_order(3)
