import numpy as np
from hypothesis import HealthCheck, settings, strategies as st

from cohconc.statespace import random_density, random_pure

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def densities(draw, dims=st.integers(2, 6)):
    d = draw(dims)
    rank = draw(st.integers(1, d))
    return random_density(d, rank, draw(seeds))


@st.composite
def pures(draw, dims=st.integers(2, 6)):
    return random_pure(draw(dims), draw(seeds))


def ket(*amps) -> np.ndarray:
    v = np.array(amps, dtype=complex)
    return v / np.linalg.norm(v)
