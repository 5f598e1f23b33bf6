"""Exact linear programming over nested tail constraints.

The worst-case bias of a diagonal filter over the tail-energy ball is the
value of

    maximize   sum_k c_k v_k
    subject to v >= 0  and  sum_{j>=k} v_j <= caps_k   for every k,

with strictly decreasing caps.  Substituting the tail sums
``T_k = sum_{j>=k} v_j`` turns the feasible set into a chain
``0 <= T_m <= ... <= T_1`` with ``T_k <= caps_k``, which is solved exactly
by a right-to-left sweep over concave piecewise-linear value functions.
A small dense-tableau simplex solver is provided as an independent oracle.
"""

import numpy as np

from .exceptions import InvalidConfigError
from .validation import as_vector


def chain_lp_maximize(coeffs, caps):
    """Exactly solve the nested-tail-constraint program above.

    Parameters
    ----------
    coeffs : array of objective coefficients c_1..c_m (any signs).
    caps : strictly decreasing positive array; cap k bounds sum_{j>=k} v_j.

    Returns
    -------
    (value, v, tails) : the optimal value, an optimal point and its tail
    sums ``T_k``.  Ties are broken toward the largest tail sums, so when
    the coefficients are nondecreasing the optimum returned is the
    telescoping point ``v_k = caps_k - caps_{k+1}`` with every constraint
    active.

    Notes
    -----
    Let ``V_k(t)`` be the optimal value of stages k..m given ``T_k <= t``.
    Each ``V_k`` is concave, nondecreasing and piecewise linear, and
    ``V_k(t) = max_{s <= min(t, caps_k)} [d_k s + V_{k+1}(s)]`` with
    ``d_k = c_k - c_{k-1}``.  Adding ``d_k`` shifts every slope uniformly,
    so slopes are stored against a running offset; taking the running max
    just truncates the (sorted) slope list at zero.  Total work is O(m).
    """
    c = as_vector("coeffs", coeffs)
    b = as_vector("caps", caps)
    m = c.size
    if b.size != m:
        raise InvalidConfigError(f"coeffs and caps lengths differ: {m} vs {b.size}")
    if m == 0:
        return 0.0, np.zeros(0), np.zeros(0)
    if np.any(b <= 0.0) or np.any(np.diff(b) >= 0.0):
        raise InvalidConfigError("caps must be strictly decreasing and positive")

    d = np.diff(c, prepend=0.0)

    if np.all(d >= 0.0):
        # No stage ever cuts: every tail constraint binds at the optimum.
        tails = b.copy()
    else:
        xs = []  # segment right endpoints, increasing
        base = []  # stored slopes; true slope = base + offset
        offset = 0.0
        x_end = 0.0
        peak = np.empty(m)
        for k in range(m - 1, -1, -1):
            if x_end < b[k]:
                # constant extension of the previous value function up to cap k
                xs.append(b[k])
                base.append(-offset)
                x_end = b[k]
            offset += d[k]
            while base and base[-1] + offset < 0.0:
                xs.pop()
                base.pop()
                x_end = xs[-1] if xs else 0.0
            peak[k] = x_end
        tails = np.empty(m)
        cap = b[0]
        for k in range(m):
            cap = min(cap, b[k], peak[k])
            tails[k] = cap

    v = np.maximum(tails - np.append(tails[1:], 0.0), 0.0)
    return float(np.dot(c, v)), v, tails


def dense_simplex_maximize(coeffs, a_ub, b_ub, max_iter=100_000, tol=1e-12):
    """Maximize ``coeffs @ v`` subject to ``a_ub @ v <= b_ub`` and ``v >= 0``.

    Plain dense-tableau primal simplex with Bland's rule, for small
    instances with ``b_ub >= 0`` (the slack basis is then feasible).  Used
    as an independent oracle for :func:`chain_lp_maximize`.
    """
    c = as_vector("coeffs", coeffs)
    b = as_vector("b_ub", b_ub)
    a = np.asarray(a_ub, dtype=float)
    m, n = a.shape
    if b.size != m or c.size != n:
        raise InvalidConfigError("inconsistent LP dimensions")
    if np.any(b < 0.0):
        raise InvalidConfigError("dense_simplex_maximize requires b_ub >= 0")

    # tableau rows: m constraints, then the objective row (reduced costs of -c)
    t = np.zeros((m + 1, n + m + 1))
    t[:m, :n] = a
    t[:m, n : n + m] = np.eye(m)
    t[:m, -1] = b
    t[m, :n] = -c
    basis = list(range(n, n + m))

    for _ in range(max_iter):
        reduced = t[m, : n + m]
        candidates = np.nonzero(reduced < -tol)[0]
        if candidates.size == 0:
            break
        enter = int(candidates[0])  # Bland: smallest index, no cycling
        col = t[:m, enter]
        rows = np.nonzero(col > tol)[0]
        if rows.size == 0:
            raise InvalidConfigError("linear program is unbounded")
        ratios = t[rows, -1] / col[rows]
        best = np.min(ratios)
        tie = rows[ratios <= best + tol * (1.0 + abs(best))]
        leave = int(tie[np.argmin([basis[r] for r in tie])])
        pivot = t[leave, enter]
        t[leave] /= pivot
        for r in range(m + 1):
            if r != leave and t[r, enter] != 0.0:
                t[r] -= t[r, enter] * t[leave]
        basis[leave] = enter
    else:
        raise InvalidConfigError("simplex iteration limit exceeded")

    v = np.zeros(n)
    for row, var in enumerate(basis):
        if var < n:
            v[var] = t[row, -1]
    return float(t[m, -1]), v
