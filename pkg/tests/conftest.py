import os

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("thorough", max_examples=1000, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def disk(radius):
    return st.builds(
        lambda r, t: complex(radius * r ** 0.5 * np.cos(2 * np.pi * t), radius * r ** 0.5 * np.sin(2 * np.pi * t)),
        st.floats(0, 1),
        st.floats(0, 1),
    )


def annulus(lo, hi):
    return st.builds(
        lambda r, t: complex(r * np.cos(2 * np.pi * t), r * np.sin(2 * np.pi * t)),
        st.floats(lo, hi),
        st.floats(0, 1),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_disk(rng, n, radius):
    return radius * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))
