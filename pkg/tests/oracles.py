"""Independent numerical oracles for the test suite.

Deliberately primitive implementations, sharing no code with the package:
plain bisection, recursive adaptive Simpson, central differences.  These are
the reference against which production closed forms are validated; keep them
boring.
"""

from __future__ import annotations

import math
from typing import Callable


def bisect_root(
    f: Callable[[float], float], lo: float, hi: float, iterations: int = 200
) -> float:
    """Plain bisection; f(lo) and f(hi) must differ in sign."""
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    assert (f_lo > 0.0) != (f_hi > 0.0), "oracle bracket does not change sign"
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_hi > 0.0):
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def even_root_oracle(n: float) -> float:
    """Ground-state root of x*tan(x) = sqrt(n^2 - x^2) by bisection on the
    form multiplied through by cos(x) (no tan pole inside the bracket)."""

    def g(x: float) -> float:
        return x * math.sin(x) - math.cos(x) * math.sqrt(max(n * n - x * x, 0.0))

    return bisect_root(g, 1e-300, min(0.5 * math.pi, n))


def adaptive_simpson(
    f: Callable[[float], float], a: float, b: float, tol: float = 1e-12
) -> float:
    """Recursive adaptive Simpson quadrature with absolute tolerance."""

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * tol:
            return left + right + (left + right - whole) / 15.0
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + recurse(
            m, b, fm, frm, fb, right, 0.5 * tol, depth - 1
        )

    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return recurse(a, b, fa, fm, fb, whole, tol, 60)


def central_difference(f: Callable[[float], float], x: float, h: float) -> float:
    return (f(x + h) - f(x - h)) / (2.0 * h)
