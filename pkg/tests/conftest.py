import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)


def random_masses(rng: np.random.Generator, k: int, zero_prob: float = 0.0) -> tuple[float, ...]:
    raw = rng.uniform(0.0, 1.0, size=k)
    if zero_prob > 0.0:
        raw[rng.uniform(size=k) < zero_prob] = 0.0
    if raw.sum() <= 0.0:
        raw = rng.uniform(0.1, 1.0, size=k)
    return tuple(float(x) / float(raw.sum()) for x in raw)
