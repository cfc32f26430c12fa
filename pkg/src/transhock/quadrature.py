"""Cumulative quadrature on uniform grids.

Each interval's increment integrates the local cubic through the four
surrounding points (one-sided at the two end intervals), so every interior
interval uses identical weights.  That keeps the accumulated error free of
odd/even alternation, which matters when the result is finite-differenced
afterwards; pairing-based cumulative Simpson schemes leave a parity sawtooth
that a second difference amplifies by 1/h**2.  Exact for cubics, with
fifth-order local error.
"""

import numpy as np


def cumulative_integral(y, h):
    """Cumulative integral of uniformly spaced samples; starts at zero."""
    y = np.asarray(y, dtype=float)
    n = y.size
    if y.ndim != 1 or n < 2:
        raise ValueError("need a 1-D array with at least 2 samples")
    inc = np.empty(n - 1)
    if n == 2:
        inc[0] = 0.5 * (y[0] + y[1])
    elif n == 3:
        inc[0] = (5.0 * y[0] + 8.0 * y[1] - y[2]) / 12.0
        inc[1] = (-y[0] + 8.0 * y[1] + 5.0 * y[2]) / 12.0
    else:
        inc[1:-1] = (-y[:-3] + 13.0 * y[1:-2] + 13.0 * y[2:-1] - y[3:]) / 24.0
        inc[0] = (9.0 * y[0] + 19.0 * y[1] - 5.0 * y[2] + y[3]) / 24.0
        inc[-1] = (y[-4] - 5.0 * y[-3] + 19.0 * y[-2] + 9.0 * y[-1]) / 24.0
    out = np.empty(n)
    out[0] = 0.0
    np.cumsum(inc, out=out[1:])
    return h * out
