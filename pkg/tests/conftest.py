# tests/conftest.py
import os
import sys

import numpy as np
import pytest

# Repository root on the path so `src.` packages import like in main.py
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.algebra import Poly, VariableSpace  # noqa: E402
from src.crosscap import minimal_crosscap  # noqa: E402


@pytest.fixture
def xyz():
    return VariableSpace(["x", "y", "z"])


@pytest.fixture
def k2():
    return minimal_crosscap(2)


@pytest.fixture
def k3():
    return minimal_crosscap(3)


@pytest.fixture
def k4():
    return minimal_crosscap(4)


@pytest.fixture
def rng():
    return np.random.default_rng(1729)


def random_poly(space, rng, max_degree=3, terms=4, constant=True):
    """Sparse random polynomial with small integer coefficients."""
    monomials = space.monomials(max_degree)
    if not constant:
        monomials = monomials[1:]
    chosen = rng.choice(len(monomials), size=min(terms, len(monomials)), replace=False)
    return Poly(space, {monomials[int(i)]: int(rng.integers(-4, 5)) for i in chosen})
