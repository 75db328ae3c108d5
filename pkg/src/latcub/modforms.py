"""Generators of the level-l modular form spaces and harmonic theta series.

The graded algebra for each admissible level l is generated by a lattice
theta series theta_{2k0}, an eta product Delta_{2k1}, and an odd-type form
Phi_{2k2} realized as a (anti)symmetrized harmonic theta series.  The
weight solver only ever needs explicit q-expansion bases of the graded
pieces, cut down by prescribed vanishing orders; those bases are computed
here from pure weight arithmetic.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .lattices import Lattice, catalog_load, dual_rescaled, theta_by_enumeration
from .qseries import QSeries, eta_product

ADMISSIBLE_LEVELS = (1, 2, 3, 5, 7, 11, 23)


def level_weights(ell: int) -> tuple[int, int, int]:
    """(k0, k1, k2) for the generator triple at level ell."""
    if ell not in ADMISSIBLE_LEVELS:
        raise ValueError(f"level {ell} not admissible")
    if ell == 1:
        k0 = 4
    elif ell % 4 in (1, 2):
        k0 = 2
    else:
        k0 = 1
    k1 = 24 // (ell + 1)
    return k0, k1, k0 + k1 + 2


@dataclass
class ModularGenerators:
    ell: int
    k0: int
    k1: int
    k2: int
    theta0: QSeries
    delta: QSeries
    phi: QSeries
    theta0_alt: QSeries | None = None  # second binary form at level 23


# ---------------------------------------------------------------------------
# zonal harmonics and harmonic theta series
# ---------------------------------------------------------------------------

def zonal_coefficients(n: int, k: int) -> list[Fraction]:
    """Coefficients a_j of the degree-k zonal harmonic for dimension n:

        P(x) = sum_j a_j <x,e>^(k-2j) (<x,x><e,e>)^j,

    proportional to |x|^k C_k^lambda(<x,e>/(|x||e|)), lambda = n/2 - 1.
    """
    if k % 2:
        raise ValueError("only even degrees are rational-friendly")
    lam = Fraction(n, 2) - 1
    if lam <= 0:
        raise ValueError("dimension must exceed 2")
    out = []
    for j in range(k // 2 + 1):
        rising = Fraction(1)
        for i in range(k - j):
            rising *= lam + i
        a = (-1) ** j * rising * Fraction(2 ** (k - 2 * j)) \
            / (math.factorial(j) * math.factorial(k - 2 * j))
        out.append(a)
    return out


def _harmonic_theta_pairing(lat: Lattice, k: int, rho, scale_sq, ee, N: int, cap) -> QSeries:
    """Harmonic theta where the pairing of a coordinate vector z with the
    ambient direction u is sqrt(scale_sq) * (z . rho) and <u,u> = ee.
    Only even powers of the pairing occur, so everything stays rational.
    """
    acoef = zonal_coefficients(lat.n, k)
    den = 1
    for x in rho:
        den = den * x.denominator // math.gcd(den, x.denominator)
    rhoi = np.array([int(x * den) for x in rho], dtype=np.int64)
    shells = lat.shells(range(1, N + 1), cap=cap)
    dense = [Fraction(0)] * (N + 1)
    for m in range(1, N + 1):
        reps = shells[m].reps
        if reps.shape[0] == 0:
            continue
        hist = Counter(int(v) for v in reps @ rhoi)
        total = Fraction(0)
        for j, aj in enumerate(acoef):
            p = k - 2 * j  # even
            psum = sum(cnt * Fraction(int(v), den) ** p for v, cnt in hist.items())
            total += aj * (ee * m) ** j * psum * Fraction(scale_sq) ** (p // 2)
        dense[m] = 2 * total  # both antipodal representatives
    return QSeries(dense)


def harmonic_theta(lat: Lattice, k: int, e, N: int, cap=20_000_000) -> QSeries:
    """Theta series weighted by the zonal harmonic of degree k, direction e
    (rational coordinates in the lattice basis).

    Exact rational coefficients: sum over each shell of P(x) q^<x,x>.
    """
    if k == 0:
        return theta_by_enumeration(lat, N, cap=cap)
    if k % 2:
        return QSeries.zero(N)  # antipodal shells cancel odd harmonics exactly
    evec = [Fraction(x) for x in e]
    if len(evec) != lat.n or all(x == 0 for x in evec):
        raise ValueError("direction must be a nonzero vector of length n")
    ge = [sum(lat.gram[i][j] * evec[j] for j in range(lat.n)) for i in range(lat.n)]
    ee = sum(evec[i] * ge[i] for i in range(lat.n))
    return _harmonic_theta_pairing(lat, k, ge, 1, ee, N, cap)


def harmonic_theta_dual(base: Lattice, dualed: Lattice, k: int, e, N: int,
                        cap=20_000_000) -> QSeries:
    """Harmonic theta of the rescaled dual against the same ambient direction
    used for the base lattice (e given in base coordinates).

    A dual coordinate vector z pairs with the ambient direction as
    sqrt(ell) * (z . e), so the squared pairing is rational.
    """
    if k == 0:
        return theta_by_enumeration(dualed, N, cap=cap)
    if k % 2:
        return QSeries.zero(N)
    evec = [Fraction(x) for x in e]
    ge = [sum(base.gram[i][j] * evec[j] for j in range(base.n)) for i in range(base.n)]
    ee = sum(evec[i] * ge[i] for i in range(base.n))
    return _harmonic_theta_pairing(dualed, k, evec, dualed.frame_scale, ee, N, cap)


def _orthogonal_sum(name: str, lats: list[Lattice]) -> Lattice:
    n = sum(lat.n for lat in lats)
    gram = [[Fraction(0)] * n for _ in range(n)]
    ofs = 0
    for lat in lats:
        for i in range(lat.n):
            for j in range(lat.n):
                gram[ofs + i][ofs + j] = lat.gram[i][j]
        ofs += lat.n
    return Lattice(name=name, gram=tuple(tuple(r) for r in gram),
                   even=all(lat.even for lat in lats), ell=lats[0].ell)


# base lattice factors, harmonic degree and combination sign for Phi
_PHI_RECIPE = {
    1: (("E8",), 14, +1),
    2: (("D4", "D4"), 8, -1),
    3: (("A2", "A2", "A2"), 6, +1),
    5: (("L5_MODULAR",), 6, +1),
    7: (("L7", "L7"), 4, -1),
    11: (("L11", "L4_11"), 2, +1),
    23: (("L23A", "L23B"), 2, +1),
}

# The level-5 recipe requires a lattice similar to its rescaled dual at scale
# 5, i.e. even, 4-dimensional, determinant 25.  Exhaustive search over reduced
# Gram matrices shows there is exactly one such lattice (minimum 2); it is not
# a catalog member, so it is kept inline.
_EXTRA_RECIPE_GRAMS = {
    "L5_MODULAR": ((2, -1, -1, -1), (-1, 2, 0, 0), (-1, 0, 4, -1), (-1, 0, -1, 4)),
}


def _recipe_lattice(name: str) -> Lattice:
    gram = _EXTRA_RECIPE_GRAMS.get(name)
    if gram is None:
        return catalog_load(name)
    return Lattice(name=name,
                   gram=tuple(tuple(Fraction(x) for x in row) for row in gram),
                   even=True, ell=5, min_norm=2)

_THETA0_NAME = {1: "E8", 2: "D4", 3: "A2", 5: "A4", 7: "L7", 11: "L11", 23: "L23B"}


def _phi_series(ell: int, N: int, seed: int = 0, retries: int = 32) -> QSeries:
    names, k, sign = _PHI_RECIPE[ell]
    base = _orthogonal_sum("+".join(names), [_recipe_lattice(nm) for nm in names])
    dualed = dual_rescaled(base, ell)
    rng = np.random.default_rng(seed)
    for _ in range(retries):
        e = [int(x) for x in rng.integers(-3, 4, size=base.n)]
        if all(x == 0 for x in e):
            continue
        s = harmonic_theta(base, k, e, N)
        sp = harmonic_theta_dual(base, dualed, k, e, N)
        combo = s + sp if sign > 0 else s - sp
        lead = combo[2]
        if lead != 0:
            return combo.scale(Fraction(1) / lead)
    raise RuntimeError(f"no usable zonal direction found for level {ell}")


def generators(ell: int, N: int, seed: int = 0) -> ModularGenerators:
    """The generator triple (theta0, delta, phi) at level ell, truncated at N."""
    if N < 8:
        raise ValueError("truncation must be at least 8")
    k0, k1, k2 = level_weights(ell)
    theta0 = theta_by_enumeration(catalog_load(_THETA0_NAME[ell]), N)
    alt = theta_by_enumeration(catalog_load("L23A"), N) if ell == 23 else None
    delta = eta_product(ell, k1, N)
    phi = _phi_series(ell, N, seed=seed)
    return ModularGenerators(ell, k0, k1, k2, theta0, delta, phi, theta0_alt=alt)


# ---------------------------------------------------------------------------
# graded pieces cut by vanishing orders
# ---------------------------------------------------------------------------

@dataclass
class SpaceBasis:
    ell: int
    weight: Fraction
    parity: str  # '+', '-', or '+-' for a merged two-parity space
    cusp: bool
    vanishing_orders: tuple[int, ...]
    basis: list[QSeries]
    labels: list[str]

    @property
    def dim(self) -> int:
        return len(self.basis)


def _monomials(gen: ModularGenerators, weight: Fraction, parity: str):
    """Monomial spanning set of the weight slice of the cusp module."""
    items = []
    w = Fraction(weight)
    if parity == "-":
        w -= gen.k2
        if w < 0:
            return items
    for b in range(0 if parity == "-" else 1, int(w // gen.k1) + 1):
        rem = w - gen.k1 * b
        if rem < 0 or rem % gen.k0 != 0:
            continue
        a = int(rem // gen.k0)
        series = (gen.theta0 ** a) * (gen.delta ** b)
        label = _mono_label(gen, a, b, parity)
        if parity == "-":
            series = gen.phi * series
        items.append((label, series))
    return items


def _mono_label(gen, a, b, parity):
    parts = []
    if parity == "-":
        parts.append(f"Phi{2 * gen.k2}")
    if a:
        parts.append(f"theta{2 * gen.k0}^{a}" if a > 1 else f"theta{2 * gen.k0}")
    if b:
        parts.append(f"Delta{2 * gen.k1}^{b}" if b > 1 else f"Delta{2 * gen.k1}")
    return "*".join(parts) if parts else "1"


def _cut_by_vanishing(items, vanishing, N):
    """Sub-basis of the span with zero coefficients at the given orders."""
    if not items:
        return [], []
    if not vanishing:
        return [lab for lab, _ in items], [s for _, s in items]
    rows = [[s[m] for _, s in items] for m in sorted(vanishing)]
    kernel = linalg.nullspace(rows)
    labels, basis = [], []
    for combo in kernel:
        # clear denominators for readable labels
        den = 1
        for c in combo:
            den = den * c.denominator // math.gcd(den, c.denominator)
        combo = [c * den for c in combo]
        series = QSeries.zero(N)
        terms = []
        for c, (lab, s) in zip(combo, items):
            if c:
                series = series + s.scale(c)
                terms.append(f"{c}*{lab}" if c != 1 else lab)
        labels.append(" + ".join(terms))
        basis.append(series)
    return labels, basis


def theta_space(ell: int, n: int, two_h: int, min_norm: int,
                symmetrized: bool, N: int, gen: ModularGenerators | None = None) -> SpaceBasis:
    """Basis of the space guaranteed to contain the harmonic theta data.

    For a symmetrized pair (lattice union its rescaled dual, or a unimodular
    lattice alone) a single parity is selected by the residue of 2h mod 4.
    For a single modular lattice at level 2 or 3 the two parity slices are
    merged: its harmonic theta is half the sum of both combinations.
    Vanishing orders are the even norms below min_norm.
    """
    if ell not in (1, 2, 3):
        raise ValueError("theta spaces are only provided for levels 1, 2, 3")
    if two_h < 2 or two_h % 2:
        raise ValueError("harmonic degree must be a positive even integer")
    gen = gen or generators(ell, N)
    weight = Fraction(n, 2) + two_h
    plus_first = (two_h % 4 == 0)
    vanishing = tuple(m for m in range(2, min_norm) if m % 2 == 0)
    if symmetrized or ell == 1:
        parity = "+" if plus_first else "-"
        items = _monomials(gen, weight, parity)
        labels, basis = _cut_by_vanishing(items, vanishing, N)
        return SpaceBasis(ell, weight, parity, True, vanishing, basis, labels)
    # single modular lattice: both parity slices, each cut separately
    labels, basis = [], []
    for parity in ("+", "-"):
        lb, bs = _cut_by_vanishing(_monomials(gen, weight, parity), vanishing, N)
        labels += lb
        basis += bs
    return SpaceBasis(ell, weight, "+-", True, vanishing, basis, labels)


def span_contains(basis: list[QSeries], series: QSeries, norms) -> bool:
    """Exact membership of the truncated series in the rational span."""
    norms = list(norms)
    if not basis:
        return all(series[m] == 0 for m in norms)
    rows = [[b[m] for b in basis] for m in norms]
    rhs = [series[m] for m in norms]
    return linalg.solve(rows, rhs) is not None
