import math

import pytest

from transhock import GasParams, NozzleProblem, Sphere


@pytest.fixture
def gas3():
    """Reference gas: gamma = 3 makes every branch equation a quadratic in u**2."""
    return GasParams(3.0, math.sqrt(2.0))


@pytest.fixture
def sphere():
    return Sphere(math.pi / 6.0, 5.0 * math.pi / 6.0)


@pytest.fixture
def reference_problem(gas3, sphere):
    return NozzleProblem(gas3, sphere, math.pi / 6.0, 5.0 * math.pi / 6.0, 1.2)
