"""Derivative-free one-dimensional minimization.

The risk objectives minimized here are continuous but only piecewise smooth
(the active set of a thresholded weight family changes with the parameter),
so golden-section search is used instead of gradient methods.
"""

import math

import numpy as np

from .exceptions import BracketError

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_min(f, lo, hi, tol=1e-10, max_iter=200):
    """Minimize f on [lo, hi]; returns the best (x, f(x)) seen.

    ``tol`` is an absolute tolerance on the bracket width.
    """
    a, b = float(lo), float(hi)
    if not b > a:
        raise BracketError(f"empty bracket [{lo}, {hi}]")
    best_x, best_f = a, f(a)
    fb_end = f(b)
    if fb_end < best_f:
        best_x, best_f = b, fb_end
    c = b - (b - a) * _INVPHI
    d = a + (b - a) * _INVPHI
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if fc < best_f:
            best_x, best_f = c, fc
        if fd < best_f:
            best_x, best_f = d, fd
        if abs(b - a) <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - (b - a) * _INVPHI
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + (b - a) * _INVPHI
            fd = f(d)
    return best_x, best_f


def minimize_log_scale(f, lo, hi, rel_tol=1e-6, n_grid=48):
    """Minimize f over [lo, hi] > 0 by a log-spaced grid scan plus golden section.

    The grid localizes the minimum basin (the objective need only be
    unimodal locally); golden section then refines on the log axis to a
    relative argument tolerance ``rel_tol``.  If the scan puts the minimum
    at the lower edge of the bracket, the bracket does not contain the
    minimizer and a ``BracketError`` carrying the scanned grid is raised.

    Returns ``(x, f(x))`` for the best point seen anywhere, grid included.
    """
    lo, hi = float(lo), float(hi)
    if not (0.0 < lo < hi):
        raise BracketError(f"invalid log-scale bracket [{lo}, {hi}]")
    grid = np.geomspace(lo, hi, int(n_grid))
    values = np.array([f(g) for g in grid])
    i = int(np.argmin(values))
    if i == 0:
        raise BracketError(
            "scan minimum at the lower bracket edge; the bracket does not "
            "contain the minimizer (truncation level too small?)",
            grid=grid,
            values=values,
        )
    best_x, best_f = float(grid[i]), float(values[i])
    a = math.log(grid[i - 1])
    b = math.log(grid[min(i + 1, len(grid) - 1)])
    gx, gf = golden_section_min(lambda u: f(math.exp(u)), a, b, tol=rel_tol)
    if gf < best_f:
        best_x, best_f = math.exp(gx), gf
    return best_x, best_f
