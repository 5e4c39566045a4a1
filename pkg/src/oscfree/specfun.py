"""Special functions for the oscillator eigenstate formulas.

Physicists' Hermite polynomials and the truncated (terminating) Kummer
confluent hypergeometric function.  Both are evaluated by exact
recurrences rather than explicit coefficient sums: the sums cancel
catastrophically already at moderate degree, while the recurrences stay
accurate.  Absolute precision still degrades for degree beyond roughly
200 because the polynomial values themselves grow; callers here stay far
below that.
"""

from __future__ import annotations

import numpy as np


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x).

    Uses the three-term recurrence H_0 = 1, H_1 = 2x,
    H_{k+1} = 2x H_k - 2k H_{k-1}.

    Parameters
    ----------
    n : int
        Degree, n >= 0.
    x : float or ndarray
        Evaluation points.

    Returns
    -------
    float or ndarray
        H_n evaluated at x, scalar in / scalar out.
    """
    if n < 0:
        raise ValueError(f"Hermite degree must be nonnegative, got {n}")
    xa = np.asarray(x, dtype=float)
    h_prev = np.ones_like(xa)
    if n == 0:
        out = h_prev
    else:
        h = 2.0 * xa
        for k in range(1, n):
            h, h_prev = 2.0 * xa * h - 2.0 * k * h_prev, h
        out = h
    if np.ndim(x) == 0:
        return float(out)
    return out


def kummer_truncated(n: int, b: float, z):
    """Terminating Kummer function F(-n, b, z).

    With a nonnegative integer first parameter the confluent
    hypergeometric series breaks off, leaving the degree-n polynomial
    sum_{k=0}^{n} [(-n)_k / (b)_k] z^k / k!.  Terms are accumulated via
    the exact ratio t_{k+1}/t_k = (k - n) z / ((b + k)(k + 1)).

    Parameters
    ----------
    n : int
        Truncation index, n >= 0.
    b : float
        Second parameter, b > 0.
    z : float or ndarray
        Argument.

    Returns
    -------
    float or ndarray
        F(-n, b, z), scalar in / scalar out.
    """
    if n < 0:
        raise ValueError(f"truncation index must be nonnegative, got {n}")
    if b <= 0:
        raise ValueError(f"second parameter must be positive, got {b}")
    za = np.asarray(z, dtype=float)
    term = np.ones_like(za)
    total = np.ones_like(za)
    for k in range(n):
        term = term * za * ((k - n) / ((b + k) * (k + 1.0)))
        total = total + term
    if np.ndim(z) == 0:
        return float(total)
    return total
