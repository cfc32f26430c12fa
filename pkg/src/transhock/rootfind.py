"""Bracketed root finding: bisection to a relative tolerance, then a few
guarded secant steps to polish the root toward machine precision.

Works elementwise: ``lo`` and ``hi`` may be scalars or same-shape arrays, and
``f`` must accept whatever shape it is given.  Every bracket must enclose a
sign change; bisection guarantees convergence, the secant steps never leave
the bracket.
"""

import numpy as np


class BracketError(ValueError):
    """f(lo) and f(hi) have the same (nonzero) sign for some bracket."""


def bisect_secant(f, lo, hi, *, rtol=1e-12, secant_steps=3, maxiter=200):
    """Root(s) of f on [lo, hi], elementwise.

    Bisects until every bracket width falls below ``rtol`` relative to the
    current midpoint, then applies ``secant_steps`` bracket-preserving secant
    updates.  Returns a float for scalar input, an ndarray otherwise.
    """
    a, b = np.broadcast_arrays(np.asarray(lo, dtype=float), np.asarray(hi, dtype=float))
    scalar = a.ndim == 0
    a = np.atleast_1d(a).astype(float).copy()
    b = np.atleast_1d(b).astype(float).copy()
    if np.any(b < a):
        raise ValueError("bracket upper end below lower end")

    fa = np.atleast_1d(np.asarray(f(a), dtype=float)).copy()
    fb = np.atleast_1d(np.asarray(f(b), dtype=float)).copy()
    if np.any(fa * fb > 0.0):
        raise BracketError("no sign change on at least one bracket")

    for _ in range(maxiter):
        m = 0.5 * (a + b)
        if np.all(b - a <= rtol * np.abs(m)):
            break
        fm = np.atleast_1d(np.asarray(f(m), dtype=float))
        left = fa * fm <= 0.0
        b = np.where(left, m, b)
        fb = np.where(left, fm, fb)
        a = np.where(left, a, m)
        fa = np.where(left, fa, fm)

    for _ in range(secant_steps):
        denom = fb - fa
        ok = denom != 0.0
        x = np.where(ok, b - fb * (b - a) / np.where(ok, denom, 1.0), 0.5 * (a + b))
        # fall back to the midpoint whenever the secant step leaves the bracket
        inside = (x > a) & (x < b)
        x = np.where(inside, x, 0.5 * (a + b))
        fx = np.atleast_1d(np.asarray(f(x), dtype=float))
        left = fa * fx <= 0.0
        b = np.where(left, x, b)
        fb = np.where(left, fx, fb)
        a = np.where(left, a, x)
        fa = np.where(left, fa, fx)

    root = np.where(np.abs(fa) <= np.abs(fb), a, b)
    return float(root[0]) if scalar else root
