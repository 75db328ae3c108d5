"""Exact rational linear algebra over Fraction matrices, plus integer HNF.

Small dense systems only: the weight solver, theta-space membership tests and
lattice constructions all stay below a few dozen unknowns.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]


def _to_fraction_matrix(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    m = _to_fraction_matrix(rows)
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows) -> list[list[Fraction]]:
    """Basis of the right kernel of the matrix."""
    m, pivots = rref(rows)
    if not m:
        return []
    ncols = len(m[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def solve(rows, rhs) -> list[Fraction] | None:
    """One exact solution of A x = b, or None when inconsistent."""
    a = _to_fraction_matrix(rows)
    b = [Fraction(x) for x in rhs]
    aug = [row + [bv] for row, bv in zip(a, b)]
    m, pivots = rref(aug)
    ncols = len(a[0]) if a else 0
    if ncols in pivots:
        return None  # pivot in the rhs column: inconsistent
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][ncols]
    return x


def det(rows) -> Fraction:
    m = _to_fraction_matrix(rows)
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            result = -result
        result *= m[c][c]
        inv = Fraction(1) / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def inverse(rows) -> Matrix:
    m = _to_fraction_matrix(rows)
    n = len(m)
    aug = [m[i] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def matmul(a, b) -> Matrix:
    bf = _to_fraction_matrix(b)
    out = []
    for row in a:
        rowf = [Fraction(x) for x in row]
        out.append([sum(rowf[k] * bf[k][j] for k in range(len(bf))) for j in range(len(bf[0]))])
    return out


def transpose(a) -> Matrix:
    return [list(col) for col in zip(*_to_fraction_matrix(a))]


def hnf_row(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer generating set.

    Returns the nonzero rows; used to turn a redundant generating set of a
    lattice into a basis.
    """
    m = [list(map(int, row)) for row in rows if any(row)]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        # Euclidean elimination in column c below row r.
        while True:
            live = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not live:
                break
            pr = min(live, key=lambda i: abs(m[i][c]))
            m[r], m[pr] = m[pr], m[r]
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c] != 0:
                    f = m[i][c] // m[r][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
                    if m[i][c] != 0:
                        done = False
            if done:
                break
        if any(m[i][c] != 0 for i in range(r, len(m))):
            # Reduce entries above the pivot.
            for i in range(r):
                f = m[i][c] // m[r][c]
                if f:
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
    return [row for row in m[:r]]
