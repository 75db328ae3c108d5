"""Finite orthogonal matrix groups, Molien series, and invariant polynomials.

The weight solver can skip harmonic degrees on which a symmetry group of the
node set has no invariants (Sobolev reduction).  This module generates the
relevant groups exactly — entries live in Q(sqrt2) because the isometry
exchanging the 4-dimensional root lattice with its rescaled dual has entries
±sqrt2/2 — and computes dim Har_k(R^n)^G from the Molien series.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction


class Sqrt2:
    """An element a + b*sqrt(2) of Q(sqrt2), exact."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def _co(cls, x):
        if isinstance(x, Sqrt2):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        return NotImplemented

    def __add__(self, o):
        o = self._co(o)
        return NotImplemented if o is NotImplemented else Sqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._co(o)
        return NotImplemented if o is NotImplemented else Sqrt2(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return self._co(o).__sub__(self)

    def __mul__(self, o):
        o = self._co(o)
        if o is NotImplemented:
            return NotImplemented
        return Sqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __neg__(self):
        return Sqrt2(-self.a, -self.b)

    def __pow__(self, k: int):
        out = Sqrt2(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "Sqrt2":
        d = self.a * self.a - 2 * self.b * self.b
        if d == 0:
            raise ZeroDivisionError("zero element of Q(sqrt2)")
        return Sqrt2(self.a / d, -self.b / d)

    def __truediv__(self, o):
        o = self._co(o)
        return NotImplemented if o is NotImplemented else self * o.inverse()

    def __eq__(self, o):
        o = self._co(o)
        return NotImplemented if o is NotImplemented else (self.a == o.a and self.b == o.b)

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a or self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * 2 ** 0.5

    def __repr__(self):
        return f"({self.a}+{self.b}*sqrt2)"

    @property
    def is_rational(self) -> bool:
        return self.b == 0


Matrix = tuple  # tuple of tuples of Sqrt2


def as_matrix(rows) -> Matrix:
    return tuple(tuple(x if isinstance(x, Sqrt2) else Sqrt2(x) for x in row)
                 for row in rows)


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    n = len(x)
    return tuple(
        tuple(sum((x[i][k] * y[k][j] for k in range(n)), Sqrt2(0)) for j in range(n))
        for i in range(n)
    )


def mat_identity(n: int) -> Matrix:
    return as_matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def is_orthogonal(g: Matrix) -> bool:
    n = len(g)
    for i in range(n):
        for j in range(n):
            v = sum((g[i][k] * g[j][k] for k in range(n)), Sqrt2(0))
            if v != Sqrt2(1 if i == j else 0):
                return False
    return True


def apply_matrix(g: Matrix, x):
    n = len(g)
    return tuple(sum((g[i][j] * x[j] for j in range(n)), Sqrt2(0)) for i in range(n))


@dataclass
class MatrixGroup:
    n: int
    generators: list
    elements: list

    @property
    def order(self) -> int:
        return len(self.elements)


def _closure_scaled_int(gens, cap: int):
    """Closure over matrices with entries (a + b*sqrt2)/D, a, b integer.

    Much faster than Fraction arithmetic; returns None if a product leaves
    the (1/D)-integer set (the caller then falls back to the generic path).
    """
    import math as _math

    n = len(gens[0])
    d = 1
    for g in gens:
        for row in g:
            for x in row:
                d = _math.lcm(d, x.a.denominator, x.b.denominator)

    def encode(g):
        a = [[int(x.a * d) for x in row] for row in g]
        b = [[int(x.b * d) for x in row] for row in g]
        return a, b

    def mul(x, y):
        xa, xb = x
        ya, yb = y
        a = [[0] * n for _ in range(n)]
        b = [[0] * n for _ in range(n)]
        for i in range(n):
            xai, xbi = xa[i], xb[i]
            ai, bi = a[i], b[i]
            for k in range(n):
                p, q = xai[k], xbi[k]
                if not p and not q:
                    continue
                yak, ybk = ya[k], yb[k]
                for j in range(n):
                    ai[j] += p * yak[j] + 2 * q * ybk[j]
                    bi[j] += p * ybk[j] + q * yak[j]
        for i in range(n):
            for j in range(n):
                if a[i][j] % d or b[i][j] % d:
                    return None
                a[i][j] //= d
                b[i][j] //= d
        return a, b

    def key(x):
        return (tuple(map(tuple, x[0])), tuple(map(tuple, x[1])))

    egens = [encode(g) for g in gens]
    ident = encode(mat_identity(n))
    seen = {key(ident): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in egens:
                p = mul(h, g)
                if p is None:
                    return None
                k = key(p)
                if k not in seen:
                    if len(seen) >= cap:
                        raise RuntimeError(f"closure exceeds cap {cap}")
                    seen[k] = p
                    nxt.append(p)
        frontier = nxt
    out = []
    for a, b in seen.values():
        out.append(tuple(
            tuple(Sqrt2(Fraction(a[i][j], d), Fraction(b[i][j], d)) for j in range(n))
            for i in range(n)
        ))
    return out


def group_closure(generators, cap: int = 100_000) -> MatrixGroup:
    """Breadth-first closure of exact orthogonal matrices under products."""
    gens = [as_matrix(g) for g in generators]
    if not gens:
        raise ValueError("no generators")
    n = len(gens[0])
    for g in gens:
        if not is_orthogonal(g):
            raise ValueError("generator is not orthogonal")
    elements = _closure_scaled_int(gens, cap)
    if elements is None:  # pragma: no cover - generic fallback
        seen = {mat_identity(n)}
        frontier = [mat_identity(n)]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    p = mat_mul(h, g)
                    if p not in seen:
                        if len(seen) >= cap:
                            raise RuntimeError(f"closure exceeds cap {cap}")
                        seen.add(p)
                        nxt.append(p)
            frontier = nxt
        elements = list(seen)
    return MatrixGroup(n=n, generators=gens, elements=elements)


# ---------------------------------------------------------------------------
# the groups for the 4-dimensional construction
# ---------------------------------------------------------------------------

def _reflection(alpha) -> Matrix:
    n = len(alpha)
    aa = sum(x * x for x in alpha)
    rows = [
        [Fraction(1 if i == j else 0) - Fraction(2 * alpha[i] * alpha[j], aa)
         for j in range(n)]
        for i in range(n)
    ]
    return as_matrix(rows)


def f4_reflections() -> list:
    """The 24 distinct reflections in the roots (±1,0,0,0), (±1,±1,0,0),
    (±1,±1,±1,±1) (all sign choices and coordinate permutations)."""
    roots = set()
    for i in range(4):
        v = [0] * 4
        v[i] = 1
        roots.add(tuple(v))
    for i in range(4):
        for j in range(i + 1, 4):
            for s in (1, -1):
                v = [0] * 4
                v[i], v[j] = 1, s
                roots.add(tuple(v))
    for signs in itertools.product((1, -1), repeat=4):
        roots.add(tuple(signs))
    refs = {_reflection(a) for a in roots}
    return sorted(refs, key=repr)


def t_exchange() -> Matrix:
    """The orthogonal map with entries ±sqrt2/2 exchanging the root lattice
    with its rescaled dual."""
    h = Sqrt2(0, Fraction(1, 2))  # sqrt2/2
    z = Sqrt2(0)
    return (
        (-h, h, z, z),
        (-h, -h, z, z),
        (z, z, h, h),
        (z, z, -h, h),
    )


def weyl_f4(cap: int = 100_000) -> MatrixGroup:
    return group_closure(f4_reflections(), cap=cap)


def aut_union_group(cap: int = 100_000) -> MatrixGroup:
    return group_closure(f4_reflections() + [t_exchange()], cap=cap)


# ---------------------------------------------------------------------------
# Molien series and invariant-harmonic dimensions
# ---------------------------------------------------------------------------

def _char_poly_direct(g: Matrix):
    """det(I - X g) by cofactor expansion with polynomial entries (n <= 4)."""
    n = len(g)
    # polynomial entries: list of Sqrt2 coefficients, ascending
    def padd(p, q):
        m = max(len(p), len(q))
        return [ (p[i] if i < len(p) else Sqrt2(0)) + (q[i] if i < len(q) else Sqrt2(0))
                 for i in range(m) ]

    def pmul(p, q):
        out = [Sqrt2(0)] * (len(p) + len(q) - 1)
        for i, pi in enumerate(p):
            if not pi:
                continue
            for j, qj in enumerate(q):
                out[i + j] = out[i + j] + pi * qj
        return out

    def pneg(p):
        return [-x for x in p]

    mat = [
        [
            padd([Sqrt2(1 if i == j else 0)], [Sqrt2(0), -g[i][j]])
            for j in range(n)
        ]
        for i in range(n)
    ]

    def det(rows, cols):
        if len(rows) == 1:
            return mat[rows[0]][cols[0]]
        total = [Sqrt2(0)]
        r = rows[0]
        for idx, c in enumerate(cols):
            minor = det(rows[1:], cols[:idx] + cols[idx + 1:])
            term = pmul(mat[r][c], minor)
            total = padd(total, term if idx % 2 == 0 else pneg(term))
        return total

    p = det(list(range(n)), list(range(n)))
    p += [Sqrt2(0)] * (n + 1 - len(p))
    return p


def _series_inverse(p, nmax: int):
    """1/p as a power series to degree nmax; p[0] must be 1."""
    inv = [Sqrt2(1)] + [Sqrt2(0)] * nmax
    for k in range(1, nmax + 1):
        s = Sqrt2(0)
        for i in range(1, min(k, len(p) - 1) + 1):
            s = s + p[i] * inv[k - i]
        inv[k] = -s
    return inv


@dataclass
class InvariantDims:
    n: int
    #: dims[k] = dim Har_k(R^n)^G
    dims: list
    #: pol[k] = dim Pol_k(R^n)^G (Molien coefficients)
    pol: list


def molien_invariant_dims(group: MatrixGroup, nmax: int = 30) -> InvariantDims:
    """d_k^G = dim Har_k^G = Molien[k] - Molien[k-2], exact."""
    # group elements with equal characteristic polynomial contribute equally
    buckets: dict[tuple, int] = {}
    for g in group.elements:
        key = tuple(_char_poly_direct(g))
        buckets[key] = buckets.get(key, 0) + 1
    total = [Sqrt2(0)] * (nmax + 1)
    for key, count in buckets.items():
        inv = _series_inverse(list(key), nmax)
        for k in range(nmax + 1):
            total[k] = total[k] + count * inv[k]
    order = group.order
    pol = []
    for k in range(nmax + 1):
        v = total[k]
        if not v.is_rational:
            raise AssertionError("Molien coefficient not rational")
        q = v.a / order
        if q.denominator != 1:
            raise AssertionError("Molien coefficient not integral")
        pol.append(int(q))
    dims = [pol[k] - (pol[k - 2] if k >= 2 else 0) for k in range(nmax + 1)]
    return InvariantDims(n=group.n, dims=dims, pol=pol)


# ---------------------------------------------------------------------------
# explicit invariants of the 4-dimensional reflection group
# ---------------------------------------------------------------------------

def _sym(x, exps):
    """Orbit sum over distinct coordinate permutations of the monomial."""
    total = None
    for perm in set(itertools.permutations(exps)):
        term = x[0] ** perm[0]
        for i in range(1, 4):
            term = term * x[i] ** perm[i]
        total = term if total is None else total + term
    return total


def invariant_eval(name: str, x):
    """Evaluate one of the basic invariants H2, H6, H8, H12 at a point of
    Q^4 (or Q(sqrt2)^4), exactly."""
    x = tuple(v if isinstance(v, Sqrt2) else Sqrt2(v) for v in x)
    h2 = _sym(x, (2, 0, 0, 0))
    if name == "H2":
        return h2
    if name == "H6":
        h6 = _sym(x, (4, 2, 0, 0)) - 3 * _sym(x, (2, 2, 2, 0))
        return 8 * h6 - h2 ** 3
    if name == "H8":
        h8 = _sym(x, (8, 0, 0, 0)) + 14 * _sym(x, (4, 4, 0, 0)) \
            + 168 * (x[0] ** 2 * x[1] ** 2 * x[2] ** 2 * x[3] ** 2)
        return 10 * h8 - 7 * h2 ** 4
    if name == "H12":
        h6 = _sym(x, (4, 2, 0, 0)) - 3 * _sym(x, (2, 2, 2, 0))
        h8 = _sym(x, (8, 0, 0, 0)) + 14 * _sym(x, (4, 4, 0, 0)) \
            + 168 * (x[0] ** 2 * x[1] ** 2 * x[2] ** 2 * x[3] ** 2)
        h12 = _sym(x, (12, 0, 0, 0)) + 22 * _sym(x, (6, 6, 0, 0)) \
            + 165 * _sym(x, (4, 4, 4, 0)) + 330 * _sym(x, (6, 2, 2, 2)) \
            + 330 * _sym(x, (4, 4, 2, 2))
        return 64 * h12 - 55 * h8 * h2 ** 2 - 176 * h6 ** 2 \
            + 220 * h6 * h2 ** 3 - 11 * h2 ** 6
    raise ValueError(f"unknown invariant {name!r}")
