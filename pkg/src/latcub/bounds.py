"""Lower bounds on the size of cubature formulas of strength t on S^{n-1}.

Closed-form Delsarte (Fisher-type) bounds, the Yudin bound, the dimension
bound B(n,t), and a numerical estimate of the Linear Programming bound via
a dense simplex solver.  The LP estimate is self-certifying: the optimal
grid-feasible polynomial G is corrected by eps = -min_{[0,1]} G, and the
reported value 2(G(1)+eps)/(1+eps) is valid for any eps >= 0, so grid
coarseness can only weaken the bound, never invalidate it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.integrate import quad

from .designs import gegenbauer_coefficients, harmonic_dim


def delsarte(n: int, t: int, plus_one: bool = False) -> int:
    """The Delsarte bound: 2*binom(n+s-1,n-1) for t = 2s+1 and
    binom(n+s-1,n-1) + binom(n+s-2,n-1) for t = 2s; plus_one adds 1 (used
    for parameter pairs where tight designs are known not to exist)."""
    if n < 2 or t < 0:
        raise ValueError("need n >= 2 and t >= 0")
    s = t // 2
    if t % 2:
        val = 2 * math.comb(n + s - 1, n - 1)
    else:
        val = math.comb(n + s - 1, n - 1) + math.comb(n + s - 2, n - 1)
    return val + 1 if plus_one else val


#: (n, t) pairs for which tight spherical designs are known not to exist,
#: so the Delsarte bound can be raised by one.  This is input data, not a
#: computed fact.
TIGHT_NONEXISTENT = frozenset({
    (4, 5), (12, 5), (12, 7), (14, 5), (14, 7), (16, 7), (16, 9),
    (20, 5), (20, 7), (20, 9), (23, 9), (24, 5), (24, 7),
})


def bound_B(n: int, t: int) -> int:
    """B(n,t) = binom(n+t-1,n-1) + binom(n+t-2,n-1), the dimension of the
    restrictions to the sphere of polynomials of degree <= t; every strength-t
    formula can be reduced to at most this many nodes."""
    return math.comb(n + t - 1, n - 1) + math.comb(n + t - 2, n - 1)


# ---------------------------------------------------------------------------
# Yudin bound
# ---------------------------------------------------------------------------

def _poly_float(coeffs) -> list[float]:
    return [float(c) for c in coeffs]


def _eval(coeffs, x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def yudin(n: int, t: int) -> "BoundResult":
    """Yudin bound: the ratio of the full measure of [-1,1] to the measure of
    [gamma,1], where gamma is the largest root of Q'_{t+1}."""
    if n < 3 or t < 1:
        raise ValueError("need n >= 3 and t >= 1")
    q = gegenbauer_coefficients(n, t + 1)
    dq = _poly_float([k * c for k, c in enumerate(q)][1:])
    # largest root: scan down from 1 for a sign change, then bisect
    prev_x, prev_v = 1.0, _eval(dq, 1.0)
    gamma = None
    steps = 4096
    for i in range(1, steps + 1):
        x = 1.0 - 2.0 * i / steps
        v = _eval(dq, x)
        if v == 0.0:
            gamma = x
            break
        if (v < 0) != (prev_v < 0):
            lo, hi = x, prev_x
            for _ in range(100):
                mid = 0.5 * (lo + hi)
                if (_eval(dq, mid) < 0) == (v < 0):
                    lo = mid
                else:
                    hi = mid
            gamma = 0.5 * (lo + hi)
            break
        prev_x, prev_v = x, v
    if gamma is None:
        raise RuntimeError("largest root of the derivative not bracketed")
    expo = (n - 3) / 2.0
    w = lambda u: (1.0 - u * u) ** expo
    num, num_err = quad(w, -1.0, 1.0, epsrel=1e-10, limit=200)
    den, den_err = quad(w, gamma, 1.0, epsrel=1e-10, limit=200)
    value = num / den
    err = value * (num_err / num + den_err / den)
    return BoundResult(n=n, t=t, method="yudin", value=value,
                       certificate={"gamma": gamma, "error": err})


# ---------------------------------------------------------------------------
# dense simplex
# ---------------------------------------------------------------------------

@dataclass
class LPResult:
    status: str  # optimal | infeasible | unbounded | iteration_cap
    x: np.ndarray | None
    objective: float | None


def lp_solve(c, a_ub, b_ub, max_iter: int = 50_000) -> LPResult:
    """Minimize c.x subject to a_ub.x <= b_ub and x >= 0.

    Dense two-phase tableau simplex.  Pivoting uses Dantzig's rule with a
    switch to Bland's rule after an iteration budget, which guarantees
    termination on degenerate problems.
    """
    a = np.asarray(a_ub, dtype=np.float64)
    b = np.asarray(b_ub, dtype=np.float64).copy()
    c = np.asarray(c, dtype=np.float64)
    m, nvar = a.shape

    # rows with negative rhs are flipped so phase 1 starts from a basis of
    # slack and artificial variables
    neg = b < 0
    a = a.copy()
    a[neg] *= -1.0
    b[neg] *= -1.0
    slack_sign = np.where(neg, -1.0, 1.0)

    n_art = int(np.count_nonzero(neg))
    total = nvar + m + n_art
    tab = np.zeros((m + 1, total + 1))
    tab[:m, :nvar] = a
    for i in range(m):
        tab[i, nvar + i] = slack_sign[i]
    art_cols = []
    j = nvar + m
    basis = []
    for i in range(m):
        if neg[i]:
            tab[i, j] = 1.0
            art_cols.append(j)
            basis.append(j)
            j += 1
        else:
            basis.append(nvar + i)
    tab[:m, -1] = b

    def pivot(tab, basis, objrow, allowed, iters):
        allowed_arr = np.asarray(allowed, dtype=np.int64)
        bland = False
        it = 0
        while True:
            it += 1
            if it > max_iter:
                return "iteration_cap", it
            if it > iters:
                bland = True
            row = tab[objrow]
            vals = row[allowed_arr]
            if bland:
                cand = np.flatnonzero(vals < -1e-11)
                if cand.size == 0:
                    return "optimal", it
                col = int(allowed_arr[cand[0]])
            else:
                col = int(np.argmin(row[: total]))
                if row[col] >= -1e-11 or col not in allowed_set:
                    cand = np.flatnonzero(vals < -1e-11)
                    if cand.size == 0:
                        return "optimal", it
                    col = int(allowed_arr[cand[int(np.argmin(vals[cand]))]])
            colv = tab[:m, col]
            pos = colv > 1e-11
            if not np.any(pos):
                return "unbounded", it
            ratios = np.where(pos, tab[:m, -1] / np.where(pos, colv, 1.0), np.inf)
            r = int(np.argmin(ratios))
            piv = tab[r, col]
            tab[r] /= piv
            factors = tab[:, col].copy()
            factors[r] = 0.0
            nz = np.flatnonzero(np.abs(factors) > 1e-14)
            if nz.size:
                tab[nz] -= np.outer(factors[nz], tab[r])
            basis[r] = col
        # unreachable

    # phase 1: minimize sum of artificials
    if n_art:
        obj1 = np.zeros(total + 1)
        for jcol in art_cols:
            obj1[jcol] = 1.0
        tab = np.vstack([tab, obj1])
        for i in range(m):
            if basis[i] in art_cols:
                tab[-1] -= tab[i]
        allowed = [j for j in range(total)]
        allowed_set = set(allowed)
        status, _ = pivot(tab, basis, m + (1 if n_art else 0), allowed, 2000)
        if status != "optimal" or tab[-1, -1] < -1e-7:
            return LPResult("infeasible", None, None)
        if tab[-1, -1] < -1e-7 or abs(tab[-1, -1]) > 1e-7:
            return LPResult("infeasible", None, None)
        tab = tab[:-1]
        # drive any remaining artificial out of the basis if possible
        for i in range(m):
            if basis[i] in art_cols:
                rowv = tab[i, :nvar + m]
                jnz = np.flatnonzero(np.abs(rowv) > 1e-9)
                if jnz.size:
                    col = int(jnz[0])
                    piv = tab[i, col]
                    tab[i] /= piv
                    for k in range(tab.shape[0]):
                        if k != i and abs(tab[k, col]) > 1e-14:
                            tab[k] -= tab[k, col] * tab[i]
                    basis[i] = col
        tab[:, nvar + m:total] = 0.0

    # phase 2
    obj = np.zeros(total + 1)
    obj[:nvar] = c
    tab = np.vstack([tab[:m], obj])
    for i in range(m):
        if basis[i] < nvar and abs(obj[basis[i]]) > 0:
            tab[-1] -= obj[basis[i]] * tab[i]
        elif basis[i] < nvar:
            pass
    allowed = [j for j in range(nvar + m)]
    allowed_set = set(allowed)
    status, _ = pivot(tab, basis, m, allowed, 5000)
    if status != "optimal":
        return LPResult(status, None, None)
    x = np.zeros(total)
    for i in range(m):
        x[basis[i]] = tab[i, -1]
    xvar = x[:nvar]
    residual = a_ub @ xvar - np.asarray(b_ub, dtype=np.float64)
    if np.max(residual) > 1e-7 * max(1.0, float(np.max(np.abs(b_ub)))):
        return LPResult("infeasible", xvar, None)
    return LPResult("optimal", xvar, float(c @ xvar))


# ---------------------------------------------------------------------------
# LP estimate of the Linear Programming bound
# ---------------------------------------------------------------------------

@dataclass
class BoundResult:
    n: int
    t: int
    method: str
    value: float
    certificate: dict = field(default_factory=dict)


def lp_estimate(n: int, t: int, d: int | None = None, grid: int = 2000) -> BoundResult:
    """Estimate the Linear Programming lower bound for odd strength t = 2s+1.

    Minimizes F(1) over even polynomials F = 1 + sum_{k=1..d} F_k Q_{2k}
    that are nonnegative on the grid {i/N} and have F_k <= 0 for 2k > t,
    then certifies on a 10x finer grid via the eps-correction."""
    if t % 2 == 0:
        raise ValueError("the estimate is implemented for odd strength")
    s = (t - 1) // 2
    d = t if d is None else d
    if d < s:
        raise ValueError("degree must be at least (t-1)/2")
    if grid < 100:
        raise ValueError("grid too coarse")

    # variable layout: F_k = p_k - q_k for 2k <= t (free), F_k = -q_k else
    free = [k for k in range(1, d + 1) if 2 * k <= t]
    nonpos = [k for k in range(1, d + 1) if 2 * k > t]
    nvar = 2 * len(free) + len(nonpos)

    # work with the unit-normalized kernels Q_2k(u)/Q_2k(1), i.e. solve for
    # y_k = F_k Q_2k(1); this keeps every column in [-1, 1]
    q1 = {k: float(sum(gegenbauer_coefficients(n, 2 * k))) for k in range(1, d + 1)}
    qvals = {}
    u = np.arange(grid + 1) / grid
    for k in range(1, d + 1):
        coeffs = [float(c) for c in gegenbauer_coefficients(n, 2 * k)]
        acc = np.zeros_like(u)
        for cc in reversed(coeffs):
            acc = acc * u + cc
        qvals[k] = acc / q1[k]

    def column(k):
        return qvals[k]

    # constraints: -(sum_k F_k Q_2k(u_i)) <= 1  (i.e. F(u_i) >= 0)
    cols = []
    for k in free:
        cols.append(-column(k))
        cols.append(column(k))
    for k in nonpos:
        cols.append(column(k))
    a_ub = np.column_stack(cols)
    b_ub = np.ones(grid + 1)

    # objective: maximize F(1) = 1 + sum_k y_k, i.e. minimize -sum_k y_k
    c = []
    for k in free:
        c.extend([-1.0, 1.0])
    for k in nonpos:
        c.append(1.0)
    res = lp_solve(np.array(c), a_ub, b_ub)
    if res.status != "optimal":
        raise RuntimeError(f"LP solve failed: {res.status}")

    fk = {}
    i = 0
    for k in free:
        fk[k] = (res.x[i] - res.x[i + 1]) / q1[k]
        i += 2
    for k in nonpos:
        fk[k] = -res.x[i] / q1[k]
        i += 1

    # certificate on the finer grid
    fine = np.arange(10 * grid + 1) / (10 * grid)
    g = np.ones_like(fine)
    coeff_list = []
    for k in range(1, d + 1):
        coeffs = [float(cc) for cc in gegenbauer_coefficients(n, 2 * k)]
        acc = np.zeros_like(fine)
        for cc in reversed(coeffs):
            acc = acc * fine + cc
        g += fk[k] * acc
        coeff_list.append(fk[k])
    eps = max(0.0, -float(np.min(g)))
    if eps > 0.5:
        raise RuntimeError(f"grid too coarse: correction eps = {eps:.3g} > 0.5")
    g1 = 1.0 + sum(fk[k] * q1[k] for k in range(1, d + 1))
    value = 2.0 * (g1 + eps) / (1.0 + eps)
    return BoundResult(n=n, t=t, method="lp_estimate", value=value,
                       certificate={"coefficients": coeff_list, "eps": eps,
                                    "grid": grid, "degree": d, "G1": g1})
