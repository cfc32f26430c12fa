import math

import numpy as np
import pytest

from transhock import CoshLike, Linear, OutOfDomain, Sphere, Tabulated


def test_width_examples(sphere):
    assert sphere.width(math.pi / 2.0) == pytest.approx(1.0, rel=1e-15)
    assert sphere.width(math.pi / 6.0) == pytest.approx(0.5, rel=1e-14)
    duct = Linear(1.0, 0.5, 0.0, 2.0)
    assert duct.width(2.0) == pytest.approx(2.0, rel=1e-15)


def test_log_derivative_examples(sphere):
    assert abs(sphere.width_log_derivative(math.pi / 2.0)) < 1e-15
    assert sphere.width_log_derivative(math.pi / 4.0) == pytest.approx(1.0, rel=1e-14)
    duct = Linear(1.0, 0.5, 0.0, 2.0)
    assert duct.width_log_derivative(0.0) == pytest.approx(0.5, rel=1e-15)


def test_curvature_constants():
    sphere = Sphere(0.3, 2.8)
    duct = Linear(1.0, 0.5, 0.0, 2.0)
    flare = CoshLike(1.0, 0.3, 0.0, 2.0)
    for x in np.linspace(0.3, 2.8, 50):
        assert sphere.gauss_curvature(x) == pytest.approx(1.0, rel=1e-12)
    for x in np.linspace(0.0, 2.0, 50):
        assert duct.gauss_curvature(x) == 0.0
        assert flare.gauss_curvature(x) == pytest.approx(-0.09, rel=1e-12)


def test_cosh_curvature_symbolic_oracle():
    import sympy

    a, b, x = sympy.symbols("a b x", positive=True)
    n = a * sympy.cosh(b * x)
    curvature = sympy.simplify(-sympy.diff(n, x, 2) / n)
    assert curvature == -(b**2)


@pytest.mark.parametrize(
    "profile",
    [
        Sphere(0.3, 2.8),
        Linear(1.0, 0.5, 0.0, 2.0),
        CoshLike(1.0, 0.3, 0.0, 2.0),
    ],
)
def test_preset_derivatives_match_finite_differences(profile):
    h = 1e-5
    xs = np.linspace(profile.x_lo + 3e-4, profile.x_hi - 3e-4, 23)
    for x in xs:
        n = profile.width(x)
        fd1 = (profile.width(x + h) - profile.width(x - h)) / (2.0 * h)
        analytic1 = profile.width_log_derivative(x) * n
        assert fd1 == pytest.approx(analytic1, rel=1e-7, abs=1e-9)
    # second derivative at a wider step: the 1/h**2 roundoff floor rules out 1e-5
    h2 = 1e-4
    for x in xs:
        n = profile.width(x)
        fd2 = (profile.width(x + h2) - 2.0 * n + profile.width(x - h2)) / h2**2
        analytic2 = -profile.gauss_curvature(x) * n
        assert fd2 == pytest.approx(analytic2, rel=1e-6, abs=1e-7)


def test_domain_checks(sphere):
    with pytest.raises(OutOfDomain):
        sphere.width(0.1)
    with pytest.raises(OutOfDomain):
        sphere.width(3.0)
    with pytest.raises(OutOfDomain):
        sphere.width(np.array([1.0, 3.0]))


def test_construction_rejections():
    with pytest.raises(ValueError):
        Sphere(0.0, 2.0)  # pole touches the domain
    with pytest.raises(ValueError):
        Sphere(0.5, math.pi)
    with pytest.raises(ValueError):
        Sphere(2.0, 1.0)
    with pytest.raises(ValueError):
        Linear(1.0, -0.6, 0.0, 2.0)  # width hits zero inside
    with pytest.raises(ValueError):
        CoshLike(-1.0, 0.3, 0.0, 2.0)


def test_tabulated_tracks_underlying_profile():
    xs = np.linspace(math.pi / 6.0, 5.0 * math.pi / 6.0, 201)
    tab = Tabulated(xs, np.sin(xs))
    probe = np.linspace(tab.x_lo, tab.x_hi, 313)
    assert np.max(np.abs(tab.width(probe) - np.sin(probe))) < 1e-5
    assert np.max(np.abs(tab.width_log_derivative(probe) - 1.0 / np.tan(probe))) < 1e-2
    # PCHIP second derivatives are rough; curvature is sanity-only
    mid = probe[50:-50]
    errs = np.abs(tab.gauss_curvature(mid) - 1.0)
    assert np.median(errs) < 0.05
    assert np.max(errs) < 1.5


def test_tabulated_rejections():
    with pytest.raises(ValueError):
        Tabulated([0.0, 1.0, 0.5], [1.0, 1.0, 1.0])  # not increasing
    with pytest.raises(ValueError):
        Tabulated([0.0, 1.0, 2.0], [1.0, -0.5, 1.0])  # non-positive width
    with pytest.raises(ValueError):
        Tabulated([0.0, 1.0], [1.0, 1.0], x_lo=-1.0)  # beyond the samples


def test_tabulated_from_file(tmp_path):
    path = tmp_path / "widths.txt"
    xs = np.linspace(0.0, 2.0, 41)
    lines = ["# width table", "# x n"]
    lines += [f"{x:.12g} {1.0 + 0.5 * x:.12g}" for x in xs]
    path.write_text("\n".join(lines) + "\n")
    tab = Tabulated.from_file(path)
    assert tab.width(1.0) == pytest.approx(1.5, rel=1e-10)
    bad = tmp_path / "bad.txt"
    bad.write_text("0.0 1.0 2.0\n1.0 2.0 3.0\n")
    with pytest.raises(ValueError):
        Tabulated.from_file(bad)
