import numpy as np
import pytest

from simparadox import Quadruple, assemble_joint, build

REFERENCE_SEED_VALUES = (0.8, 0.2, 0.6, 0.4)


@pytest.fixture(scope="session")
def reference_seed() -> Quadruple:
    return Quadruple(*REFERENCE_SEED_VALUES)


@pytest.fixture(scope="session")
def reference_tree(reference_seed):
    return build(reference_seed, 3)


@pytest.fixture(scope="session")
def reference_joint(reference_tree):
    return assemble_joint(reference_tree, 0.5)


@pytest.fixture(scope="session")
def quad_sampler():
    """Factory for random valid quadruples, components in (0.05, 0.95)."""

    def draw(rng: np.random.Generator, min_gap: float = 0.01, normalized: bool = True) -> Quadruple:
        while True:
            a, b, c, d = rng.uniform(0.05, 0.95, 4)
            if normalized:
                a, b = a / (a + b), b / (a + b)
                c, d = c / (c + d), d / (c + d)
            else:
                ta, tc = rng.uniform(0.3, 1.0, 2)
                a, b = a * ta / (a + b), b * ta / (a + b)
                c, d = c * tc / (c + d), d * tc / (c + d)
            if abs(a / (a + b) - c / (c + d)) >= min_gap:
                return Quadruple(a, b, c, d)

    return draw
