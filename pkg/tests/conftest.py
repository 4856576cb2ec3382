import json
from pathlib import Path

import pytest
from hypothesis import strategies as st

from opsquares.opcore import Sequence

FROZEN = json.loads((Path(__file__).parent / "data" / "frozen_oracle.json").read_text())


def seq(text: str) -> Sequence:
    """'1122' -> Sequence((1, 1, 2, 2)); letters map by rank."""
    return Sequence.from_values(text.encode())


@st.composite
def sequences(draw, max_n=64, max_sigma=4, min_n=1):
    sigma = draw(st.integers(1, max_sigma))
    chars = draw(st.lists(st.integers(1, sigma), min_size=min_n, max_size=max_n))
    return Sequence(tuple(chars), sigma)


@pytest.fixture(params=FROZEN, ids=lambda c: c["label"])
def frozen_case(request):
    c = request.param
    return Sequence(tuple(c["chars"]), c["sigma"]), c
