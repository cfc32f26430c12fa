import math

import numpy as np
import pytest

from transhock.rootfind import BracketError, bisect_secant


def test_scalar_root():
    root = bisect_secant(np.cos, 1.0, 2.0)
    assert root == pytest.approx(math.pi / 2.0, rel=1e-14)


def test_polynomial_root_to_machine_precision():
    f = lambda x: x**3 - 2.0 * x - 5.0  # classic test cubic, root near 2.0945515
    root = bisect_secant(f, 2.0, 3.0)
    assert abs(f(root)) < 1e-12


def test_root_at_bracket_endpoint():
    f = lambda x: x - 1.0
    assert bisect_secant(f, 1.0, 2.0) == pytest.approx(1.0, abs=1e-15)
    assert bisect_secant(f, 0.0, 1.0) == pytest.approx(1.0, abs=1e-15)


def test_vector_roots():
    targets = np.array([0.25, 1.0, 2.25, 9.0])
    f = lambda x: x**2 - targets
    roots = bisect_secant(f, np.zeros(4), np.full(4, 4.0))
    assert np.allclose(roots, np.sqrt(targets), rtol=1e-14)


def test_no_sign_change_raises():
    with pytest.raises(BracketError):
        bisect_secant(lambda x: x**2 + 1.0, -1.0, 1.0)


def test_mixed_magnitude_vector_roots():
    # relative tolerance must serve roots spanning many decades
    targets = np.array([1e-14, 1e-7, 1e-1, 0.9])
    f = lambda x: x - targets
    roots = bisect_secant(f, np.zeros(4), np.ones(4))
    assert np.allclose(roots, targets, rtol=1e-10, atol=1e-300)


def test_bad_bracket_order():
    with pytest.raises(ValueError):
        bisect_secant(lambda x: x, 1.0, 0.0)
