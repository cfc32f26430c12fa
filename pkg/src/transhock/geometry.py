"""Axisymmetric geometry described by a width profile n(x) > 0 on [x_lo, x_hi].

The surface of revolution with width n carries the flow; its shape enters the
solver only through n, n'/n and the Gaussian curvature K = -n''/n.  Presets:

* Sphere: n(x) = sin(x) on a subinterval of (0, pi), K = +1.
* Linear: n(x) = a + b*x, K = 0 (straight-walled duct).
* CoshLike: n(x) = a*cosh(b*x), K = -b**2 (flaring, de-Laval-like wall).

Tabulated profiles interpolate (x, n) samples with a monotone cubic (PCHIP)
and take n' and n'' from the interpolant.  Preset derivatives are analytic.
"""

import math

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import OutOfDomain

_DOMAIN_SLACK = 1e-9  # relative slack when checking x against [x_lo, x_hi]


def _ret(value, scalar):
    return float(value) if scalar else value


class MetricProfile:
    """Base class: a positive width profile on a closed coordinate interval."""

    def __init__(self, x_lo, x_hi):
        x_lo, x_hi = float(x_lo), float(x_hi)
        if not x_lo < x_hi:
            raise ValueError(f"domain requires x_lo < x_hi, got [{x_lo}, {x_hi}]")
        self.x_lo = x_lo
        self.x_hi = x_hi

    def _check(self, x):
        arr = np.asarray(x, dtype=float)
        slack = _DOMAIN_SLACK * (self.x_hi - self.x_lo)
        if np.any(arr < self.x_lo - slack) or np.any(arr > self.x_hi + slack):
            raise OutOfDomain(
                f"coordinate outside [{self.x_lo:.12g}, {self.x_hi:.12g}]"
            )
        return arr, arr.ndim == 0

    def width(self, x):
        """n(x)."""
        arr, scalar = self._check(x)
        return _ret(self._n(arr), scalar)

    def width_log_derivative(self, x):
        """n'(x)/n(x)."""
        arr, scalar = self._check(x)
        return _ret(self._dn(arr) / self._n(arr), scalar)

    def gauss_curvature(self, x):
        """Gaussian curvature K(x) = -n''(x)/n(x)."""
        arr, scalar = self._check(x)
        return _ret(-self._d2n(arr) / self._n(arr), scalar)


class Sphere(MetricProfile):
    """Band of the unit sphere: n(x) = sin(x) with 0 < x_lo < x_hi < pi."""

    def __init__(self, x_lo, x_hi):
        if not (0.0 < x_lo and x_hi < math.pi):
            raise ValueError(
                f"sphere band requires 0 < x_lo < x_hi < pi, got [{x_lo}, {x_hi}]"
            )
        super().__init__(x_lo, x_hi)

    def _n(self, x):
        return np.sin(x)

    def _dn(self, x):
        return np.cos(x)

    def _d2n(self, x):
        return -np.sin(x)


class Linear(MetricProfile):
    """Affine width n(x) = a + b*x; must stay positive on the domain."""

    def __init__(self, a, b, x_lo, x_hi):
        super().__init__(x_lo, x_hi)
        self.a = float(a)
        self.b = float(b)
        # affine, so positivity at both endpoints covers the interval
        if self.a + self.b * self.x_lo <= 0.0 or self.a + self.b * self.x_hi <= 0.0:
            raise ValueError("linear width profile is not positive on the domain")

    def _n(self, x):
        return self.a + self.b * x

    def _dn(self, x):
        return np.full_like(np.asarray(x, dtype=float), self.b)

    def _d2n(self, x):
        return np.zeros_like(np.asarray(x, dtype=float))


class CoshLike(MetricProfile):
    """n(x) = a*cosh(b*x) with a > 0; constant curvature -b**2."""

    def __init__(self, a, b, x_lo, x_hi):
        super().__init__(x_lo, x_hi)
        if not a > 0.0:
            raise ValueError(f"cosh-like profile requires a > 0, got a={a}")
        self.a = float(a)
        self.b = float(b)

    def _n(self, x):
        return self.a * np.cosh(self.b * x)

    def _dn(self, x):
        return self.a * self.b * np.sinh(self.b * x)

    def _d2n(self, x):
        return self.a * self.b**2 * np.cosh(self.b * x)


class Tabulated(MetricProfile):
    """Width profile interpolated from (x, n) samples by a monotone cubic.

    Sample abscissae must be strictly increasing and widths strictly positive;
    positivity of the interpolant is re-checked on a dense grid.
    """

    def __init__(self, x, n, x_lo=None, x_hi=None):
        x = np.asarray(x, dtype=float)
        n = np.asarray(n, dtype=float)
        if x.ndim != 1 or x.shape != n.shape or x.size < 2:
            raise ValueError("need two same-length 1-D sample arrays with >= 2 points")
        if np.any(np.diff(x) <= 0.0):
            raise ValueError("sample abscissae must be strictly increasing")
        if np.any(n <= 0.0):
            raise ValueError("sampled widths must be strictly positive")
        super().__init__(x[0] if x_lo is None else x_lo, x[-1] if x_hi is None else x_hi)
        if self.x_lo < x[0] or self.x_hi > x[-1]:
            raise ValueError("requested domain extends beyond the samples")
        self._interp = PchipInterpolator(x, n, extrapolate=False)
        self._interp_d1 = self._interp.derivative(1)
        self._interp_d2 = self._interp.derivative(2)
        dense = np.linspace(self.x_lo, self.x_hi, 2049)
        if np.any(self._interp(dense) <= 0.0):
            raise ValueError("interpolated width is not positive on the domain")

    @classmethod
    def from_file(cls, path, x_lo=None, x_hi=None):
        """Load a two-column (x, n) text table; '#' starts a comment line."""
        data = np.loadtxt(path, comments="#", ndmin=2)
        if data.shape[1] != 2:
            raise ValueError(f"expected two columns in {path}, got {data.shape[1]}")
        return cls(data[:, 0], data[:, 1], x_lo=x_lo, x_hi=x_hi)

    def _clip(self, x):
        # PCHIP refuses extrapolation; the domain slack already vetted x
        return np.clip(x, self.x_lo, self.x_hi)

    def _n(self, x):
        return self._interp(self._clip(x))

    def _dn(self, x):
        return self._interp_d1(self._clip(x))

    def _d2n(self, x):
        return self._interp_d2(self._clip(x))
