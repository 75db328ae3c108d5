"""Bounded lattice-point enumeration (Fincke-Pohst) with exact acceptance.

The search tree is pruned with floating-point Cholesky bounds carrying a
small slack; every emitted vector is accepted only after an exact integer
norm check, so results are exact and complete.  An LLL pass on the Gram
matrix keeps the tree small; it changes only the search frame, never the
result set.

A numba-compiled kernel is used when available (large shells); the pure
Python reference path computes identical results.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba

    _HAVE_NUMBA = True
except Exception:  # pragma: no cover
    _HAVE_NUMBA = False


class EnumerationCapExceeded(RuntimeError):
    """Shell larger than the configured vector cap."""


# ---------------------------------------------------------------------------
# exact LLL on a Gram matrix (no coordinates needed)
# ---------------------------------------------------------------------------

def _rowop(g, u, k, j, r):
    """Exact basis change row_k -= r * row_j on a Gram matrix and transform."""
    n = len(g)
    for t in range(n):
        g[k][t] -= r * g[j][t]
    for t in range(n):
        g[t][k] -= r * g[t][j]
    u[k] = [a - r * c for a, c in zip(u[k], u[j])]


def _swap(g, u, k, j):
    n = len(g)
    g[k], g[j] = g[j], g[k]
    for t in range(n):
        g[t][k], g[t][j] = g[t][j], g[t][k]
    u[k], u[j] = u[j], u[k]


def _pair_reduce(g, u):
    """Greedy exact pairwise length reduction; tames ill-conditioned bases."""
    n = len(g)
    changed = True
    sweeps = 0
    while changed and sweeps < 200:
        changed = False
        sweeps += 1
        for k in range(n):
            for j in range(n):
                if j == k or g[j][j] == 0:
                    continue
                r = round(g[k][j] / g[j][j])
                if r and g[k][k] - 2 * r * g[k][j] + r * r * g[j][j] < g[k][k]:
                    _rowop(g, u, k, j, r)
                    changed = True


def lll_reduce_gram(gram, delta=0.99):
    """LLL-reduce a positive definite rational Gram matrix.

    Returns (U, gram_red) with U unimodular (integer rows, exact) and
    gram_red = U * gram * U^T maintained exactly under every row operation.
    Pivoting decisions use floating-point Gram-Schmidt data recomputed from
    the exact Gram, so numerical error can only affect reduction quality,
    never correctness.
    """
    n = len(gram)
    g = [[Fraction(x) for x in row] for row in gram]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    _pair_reduce(g, u)

    def gso():
        gf = np.array([[float(x) for x in row] for row in g], dtype=np.float64)
        mu = np.zeros((n, n))
        norms = np.zeros(n)
        # Gram-Schmidt over inner products only (Cholesky-style recursion)
        for i in range(n):
            norms[i] = gf[i, i]
            for j in range(i):
                mu[i, j] = (gf[i, j] - sum(mu[i, t] * mu[j, t] * norms[t]
                                           for t in range(j))) / norms[j]
                norms[i] -= mu[i, j] ** 2 * norms[j]
        return mu, norms

    mu, norms = gso()
    k = 1
    guard = 0
    while k < n and guard < 100_000:
        guard += 1
        for j in range(k - 1, -1, -1):
            r = int(round(mu[k, j]))
            if r:
                _rowop(g, u, k, j, r)
                mu, norms = gso()
        if norms[k] >= (delta - mu[k, k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            _swap(g, u, k, k - 1)
            mu, norms = gso()
            k = max(k - 1, 1)
    return u, g


# ---------------------------------------------------------------------------
# enumeration kernels
# ---------------------------------------------------------------------------

def _cholesky_upper(gram_float):
    low = np.linalg.cholesky(gram_float)
    return low.T.copy()


def _py_enumerate(r_upper, gram_scaled, targets_scaled, cap):
    """Reference kernel: all x != 0 (up to antipodal pair, canonical rep only)
    with scaled norm in targets_scaled."""
    n = r_upper.shape[0]
    max_t = max(targets_scaled)
    tset = set(int(t) for t in targets_scaled)
    bound = float(max_t) + 1e-6 * (1.0 + float(max_t))
    out = {int(t): [] for t in tset}
    x = [0] * n
    g = [[int(v) for v in row] for row in gram_scaled]

    def exact_norm(vec):
        s = 0
        for i in range(n):
            vi = vec[i]
            if vi:
                row = g[i]
                s += vi * sum(row[j] * vec[j] for j in range(n))
        return s

    def rec(i, partial, all_zero_above):
        # center of x_i given fixed higher coordinates
        acc = 0.0
        for j in range(i + 1, n):
            acc += r_upper[i, j] * x[j]
        c = -acc / r_upper[i, i]
        radius = ((bound - partial) ** 0.5) / r_upper[i, i]
        lo = int(np.ceil(c - radius - 1e-9))
        hi = int(np.floor(c + radius + 1e-9))
        if all_zero_above and lo < 0:
            lo = 0
        for xi in range(lo, hi + 1):
            x[i] = xi
            t = r_upper[i, i] * (xi - c)
            np_partial = partial + t * t
            if np_partial > bound:
                continue
            zeros = all_zero_above and xi == 0
            if i == 0:
                if zeros:
                    continue
                nrm = exact_norm(x)
                if nrm in tset:
                    out[nrm].append(tuple(x))
                    if sum(len(v) for v in out.values()) * 2 > cap:
                        raise EnumerationCapExceeded(f"more than {cap} vectors")
            else:
                rec(i - 1, np_partial, zeros)
        x[i] = 0

    rec(n - 1, 0.0, True)
    return {t: np.array(v, dtype=np.int64).reshape(len(v), n) for t, v in out.items()}


if _HAVE_NUMBA:

    @numba.njit(cache=True)
    def _nb_kernel(r_upper, gram, targets, bound, cap, count_only):  # pragma: no cover
        n = r_upper.shape[0]
        x = np.zeros(n, dtype=np.int64)
        centers = np.zeros(n, dtype=np.float64)
        partials = np.zeros(n + 1, dtype=np.float64)
        his = np.zeros(n, dtype=np.int64)
        counts = np.zeros(targets.shape[0], dtype=np.int64)
        max_store = 0 if count_only else cap
        store = np.zeros((max_store, n), dtype=np.int64)
        store_t = np.zeros(max_store, dtype=np.int64)
        nstored = 0
        # iterative depth-first search from coordinate n-1 down to 0
        i = n - 1
        acc = 0.0
        centers[i] = 0.0
        radius = np.sqrt(bound) / r_upper[i, i]
        lo = np.int64(np.ceil(-radius - 1e-9))
        if lo < 0:
            lo = 0  # antipodal: topmost nonzero coordinate positive
        x[i] = lo - 1
        his[i] = np.int64(np.floor(radius + 1e-9))
        while True:
            x[i] += 1
            if x[i] > his[i]:
                i += 1
                if i >= n:
                    break
                continue
            t = r_upper[i, i] * (x[i] - centers[i])
            p = partials[i + 1] + t * t
            if p > bound:
                continue
            # is everything above i zero?
            allz = True
            for j in range(i, n):
                if x[j] != 0:
                    allz = False
                    break
            if i == 0:
                if allz:
                    continue
                nrm = np.int64(0)
                for a in range(n):
                    if x[a] != 0:
                        s = np.int64(0)
                        for b in range(n):
                            s += gram[a, b] * x[b]
                        nrm += x[a] * s
                for ti in range(targets.shape[0]):
                    if nrm == targets[ti]:
                        counts[ti] += 1
                        if not count_only:
                            if nstored >= max_store:
                                return counts, store[:0], store_t[:0], -1
                            store[nstored] = x
                            store_t[nstored] = nrm
                            nstored += 1
                        break
                continue
            partials[i] = p
            i -= 1
            acc = 0.0
            for j in range(i + 1, n):
                acc += r_upper[i, j] * x[j]
            centers[i] = -acc / r_upper[i, i]
            radius = np.sqrt(bound - partials[i + 1]) / r_upper[i, i]
            lo = np.int64(np.ceil(centers[i] - radius - 1e-9))
            his[i] = np.int64(np.floor(centers[i] + radius + 1e-9))
            if allz and lo < 0:
                lo = 0
            x[i] = lo - 1
        return counts, store[:nstored], store_t[:nstored], nstored


def enumerate_scaled(gram_scaled, targets_scaled, cap, count_only=False):
    """All lattice vectors (one per antipodal pair) whose scaled norm is in
    targets_scaled.  gram_scaled is an integer numpy matrix; returns
    (counts per target, dict target -> coordinate array).
    """
    gram_scaled = np.asarray(gram_scaled, dtype=np.int64)
    targets = np.asarray(sorted(set(int(t) for t in targets_scaled)), dtype=np.int64)
    if len(targets) == 0 or targets[-1] <= 0:
        return {}, {}
    gf = gram_scaled.astype(np.float64)
    r_upper = _cholesky_upper(gf)
    max_t = int(targets[-1])
    bound = float(max_t) + 1e-6 * (1.0 + float(max_t))
    if _HAVE_NUMBA:
        # pass 1 counts, pass 2 fills an exactly-sized store; this keeps the
        # allocation proportional to the actual shell, not to the cap
        counts, _, _, _ = _nb_kernel(
            r_upper, gram_scaled, targets, bound, 0, True
        )
        total = int(counts.sum())
        if count_only:
            store = store_t = None
            nstored = 0
        else:
            if 2 * total > cap:
                raise EnumerationCapExceeded(f"more than {cap} vectors")
            counts, store, store_t, nstored = _nb_kernel(
                r_upper, gram_scaled, targets, bound, total, False
            )
            if nstored == -1:
                raise EnumerationCapExceeded(f"more than {cap} vectors")
        count_map = {int(t): int(c) for t, c in zip(targets, counts)}
        vec_map = {}
        if not count_only:
            for t in targets:
                sel = store[store_t == t]
                vec_map[int(t)] = sel
        return count_map, vec_map
    res = _py_enumerate(r_upper, gram_scaled, targets, cap if not count_only else 1 << 62)
    count_map = {int(t): arr.shape[0] for t, arr in res.items()}
    return count_map, ({} if count_only else res)
