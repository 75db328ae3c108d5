"""Integral lattices: catalog, shell enumeration, duals and exact unions.

A lattice is held by its Gram matrix; vectors are integer coordinate rows in
the lattice basis.  The rescaled dual sqrt(l)*dual(L) shares the ambient
space of L, and its vectors are mapped to L's frame as pairs
(rational coordinates, squarefree scale s) meaning sqrt(s) * (basis combo).
Equality of such pairs is exact, so unions deduplicate soundly even when the
two frames only meet in irrational points.
"""

from __future__ import annotations

import math
import os
import pathlib
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

import numpy as np

from . import linalg
from ._enum import EnumerationCapExceeded, enumerate_scaled, lll_reduce_gram
from .qseries import QSeries

DEFAULT_SHELL_CAP = 20_000_000


class CatalogError(ValueError):
    """A catalog entry is unknown, missing, or fails its validation gate."""


def squarefree_split(k: int) -> tuple[int, int]:
    """k = s * r**2 with s squarefree; returns (s, r).  k must be positive."""
    if k <= 0:
        raise ValueError("positive integer required")
    s, r, d = 1, 1, 2
    while d * d <= k:
        e = 0
        while k % d == 0:
            k //= d
            e += 1
        r *= d ** (e // 2)
        if e % 2:
            s *= d
        d += 1
    return s * k, r


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------

@dataclass
class Lattice:
    """A positive definite lattice given by its Gram matrix.

    ``frame`` names the coordinate frame the lattice lives in; two lattices
    can be combined exactly only when their frames are related (a lattice and
    its rescaled dual share a frame up to the recorded transformation).
    """

    name: str
    gram: tuple[tuple[Fraction, ...], ...]
    even: bool
    ell: int | None = None
    min_norm: int | None = None
    basis: tuple[tuple[Fraction, ...], ...] | None = None
    # frame bookkeeping for rescaled duals: coordinates z of this lattice
    # correspond to sqrt(frame_scale) * (frame_map @ z) in the frame lattice.
    frame_of: "Lattice | None" = None
    frame_map: tuple[tuple[Fraction, ...], ...] | None = None
    frame_scale: int = 1
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.gram = tuple(tuple(Fraction(x) for x in row) for row in self.gram)
        if any(len(row) != len(self.gram) for row in self.gram):
            raise ValueError("Gram matrix must be square")
        if any(self.gram[i][j] != self.gram[j][i] for i in range(self.n) for j in range(self.n)):
            raise ValueError("Gram matrix must be symmetric")
        if self.basis is not None:
            self.basis = tuple(tuple(Fraction(x) for x in row) for row in self.basis)
            bbt = linalg.matmul(self.basis, linalg.transpose(self.basis))
            if tuple(tuple(r) for r in bbt) != self.gram:
                raise ValueError("basis inconsistent with Gram matrix")

    @property
    def n(self) -> int:
        return len(self.gram)

    def det(self) -> Fraction:
        if "det" not in self._cache:
            self._cache["det"] = linalg.det(self.gram)
        return self._cache["det"]

    def norm(self, coords) -> Fraction:
        v = [Fraction(c) for c in coords]
        return sum(v[i] * self.gram[i][j] * v[j] for i in range(self.n) for j in range(self.n))

    def _scaled_gram(self) -> tuple[int, list[list[int]]]:
        """(denominator d, integer matrix d*gram)."""
        if "scaled" not in self._cache:
            d = 1
            for row in self.gram:
                for x in row:
                    d = d * x.denominator // math.gcd(d, x.denominator)
            gi = [[int(x * d) for x in row] for row in self.gram]
            self._cache["scaled"] = (d, gi)
        return self._cache["scaled"]

    def _reduced(self):
        """(U, integer-scaled reduced gram, denominator) with caching."""
        if "reduced" not in self._cache:
            d, gi = self._scaled_gram()
            u, gred = lll_reduce_gram([[Fraction(x) for x in row] for row in gi])
            gred_int = [[int(x) for x in row] for row in gred]
            self._cache["reduced"] = (u, np.array(gred_int, dtype=np.int64), d)
        return self._cache["reduced"]

    def shells(self, norms, cap=DEFAULT_SHELL_CAP, count_only=False):
        """Enumerate all shells with the given norms at once.

        Returns {m: ShellSet} (or {m: count} in count-only mode).  Each
        ShellSet stores one representative per antipodal pair.
        """
        u, gred, d = self._reduced()
        targets = {}
        for m in norms:
            t = Fraction(m) * d
            if t.denominator != 1 or t <= 0:
                # non-integral scaled norm: the shell is provably empty
                continue
            targets[int(t)] = m
        counts, vecs = enumerate_scaled(gred, list(targets), cap, count_only=count_only)
        if count_only:
            out = {m: 0 for m in norms}
            for t, m in targets.items():
                out[m] = 2 * counts.get(t, 0)
            return out
        umat = np.array(u, dtype=np.int64)
        out = {}
        for m in norms:
            t = Fraction(m) * d
            if t.denominator != 1 or t <= 0:
                out[m] = ShellSet(self, m, np.zeros((0, self.n), dtype=np.int64))
                continue
            arr = vecs.get(int(t), np.zeros((0, self.n), dtype=np.int64))
            coords = arr @ umat  # back to the original basis (row convention)
            order = np.lexsort(coords.T[::-1])
            out[m] = ShellSet(self, m, coords[order])
        return out

    def minimum(self, search_to=64) -> Fraction:
        if "min" not in self._cache:
            step = 1 if not self.even else 2
            start = 1 if not self.even else 2
            for m in range(start, search_to + 1, step):
                cnt = self.shells([m], count_only=True)[m]
                if cnt:
                    self._cache["min"] = Fraction(m)
                    break
            else:
                raise RuntimeError(f"minimum of {self.name} exceeds search bound {search_to}")
        return self._cache["min"]


class ShellSet:
    """All lattice vectors of one norm, stored one per antipodal pair."""

    def __init__(self, lattice: Lattice, m, reps: np.ndarray):
        self.lattice = lattice
        self.m = m
        self.reps = reps  # (N/2, n) int64, canonical sign

    @property
    def size(self) -> int:
        return 2 * self.reps.shape[0]

    def frame_nodes(self) -> "list[tuple[int, tuple[Fraction, ...]]]":
        """Nodes as (squarefree scale s, rational coordinates) in the root frame."""
        lat = self.lattice
        if lat.frame_of is None:
            return [(1, tuple(Fraction(int(c)) for c in row)) for row in self.reps]
        s, r = squarefree_split(lat.frame_scale)
        fmap = lat.frame_map
        n = lat.n
        out = []
        for row in self.reps:
            w = [r * sum(fmap[i][j] * int(row[j]) for j in range(n)) for i in range(n)]
            out.append((s, _canonical_sign(tuple(w))))
        return out


def _canonical_sign(coords):
    for c in coords:
        if c > 0:
            return coords
        if c < 0:
            return tuple(-x for x in coords)
    return coords


def enumerate_shell(lat: Lattice, m, cap=DEFAULT_SHELL_CAP) -> ShellSet:
    return lat.shells([m], cap=cap)[m]


def theta_by_enumeration(lat: Lattice, nmax: int, cap=DEFAULT_SHELL_CAP,
                         count_only=True) -> QSeries:
    """Theta series sum q^{<x,x>} with exact integer coefficients up to nmax."""
    if nmax < 0:
        raise ValueError("negative truncation")
    if nmax == 0:
        return QSeries.one(0)
    norms = [m for m in range(1, nmax + 1)]
    counts = lat.shells(norms, cap=cap, count_only=True)
    dense = [1] + [counts.get(m, 0) for m in range(1, nmax + 1)]
    return QSeries(dense)


def dual_rescaled(lat: Lattice, ell: int) -> Lattice:
    """sqrt(ell) * (dual lattice), expressed in its own basis.

    The returned lattice remembers how its coordinates map into lat's frame:
    z  |->  sqrt(ell) * (G^{-1} z) in lat coordinates.
    """
    if ell <= 0:
        raise ValueError("ell must be positive")
    ginv = linalg.inverse(lat.gram)
    gram = [[ell * x for x in row] for row in ginv]
    root = lat.frame_of or lat
    if lat.frame_of is not None:
        # compose: coordinates map through lat into its root frame
        comp = linalg.matmul(lat.frame_map, ginv)
        scale = lat.frame_scale * ell
        fmap = comp
    else:
        fmap = ginv
        scale = ell
    even = all(x.denominator == 1 for row in gram for x in row) and \
        all(gram[i][i] % 2 == 0 for i in range(lat.n))
    return Lattice(
        name=lat.name + "'",
        gram=tuple(tuple(row) for row in gram),
        even=bool(even),
        ell=lat.ell,
        frame_of=root,
        frame_map=tuple(tuple(row) for row in fmap),
        frame_scale=scale,
    )


class UnionShell:
    """Deduplicated union of member shells sharing a frame.

    Nodes are (squarefree scale s, rational coordinates v) pairs meaning
    sqrt(s) * (v in the root lattice basis); distinct scales are linearly
    independent over the rationals, so equality of pairs is exact equality
    of vectors.
    """

    def __init__(self, root: Lattice, m, members: list[ShellSet]):
        self.root = root
        self.m = m
        self.members = members
        seen: dict = {}
        self.member_contributions = []
        self.any_intersection = False
        for shell in members:
            fresh = 0
            for node in shell.frame_nodes():
                if node in seen:
                    self.any_intersection = True
                else:
                    seen[node] = True
                    fresh += 1
            self.member_contributions.append((shell.lattice.name, shell.size, 2 * fresh))
        self.nodes = list(seen)

    @property
    def size(self) -> int:
        return 2 * len(self.nodes)


def union_shell(lattices: list[Lattice], m, cap=DEFAULT_SHELL_CAP) -> UnionShell:
    if not lattices:
        raise ValueError("empty union")
    n = lattices[0].n
    if any(lat.n != n for lat in lattices):
        raise ValueError("union members must share the ambient dimension")
    root = lattices[0].frame_of or lattices[0]
    for lat in lattices:
        if (lat.frame_of or lat) is not root and lat.gram != root.gram:
            raise ValueError("union members must share a coordinate frame")
    shells = [enumerate_shell(lat, m, cap=cap) for lat in lattices]
    return UnionShell(root, m, shells)


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

# Expected invariants per entry: (n, ell, det, min, even, first two theta
# coefficients as ((m, count), (m, count)); the second pair may be None when
# only the kissing number is pinned down.
CATALOG_META = {
    "A2":    (2, 3, 3, 2, True, ((2, 6), (4, 0))),
    "A4":    (4, 5, 5, 2, True, ((2, 20), (4, 30))),
    "D4":    (4, 2, 4, 2, True, ((2, 24), (4, 24))),
    "E8":    (8, 1, 1, 2, True, ((2, 240), (4, 2160))),
    "K12":   (12, 3, 3 ** 6, 4, True, ((4, 756), (6, 4032))),
    "Q14":   (14, 3, 3 ** 7, 4, True, ((4, 756), (6, 8736))),
    "BW16":  (16, 2, 2 ** 8, 4, True, ((4, 4320), (6, 61440))),
    "N20_1": (20, 2, 2 ** 10, 4, True, ((4, 3960), (6, 168960))),
    "N20_2": (20, 2, 2 ** 10, 4, True, ((4, 3960), (6, 168960))),
    "N20_3": (20, 2, 2 ** 10, 4, True, ((4, 3960), (6, 168960))),
    "O23":   (23, 1, 1, 3, False, ((3, 4600), (4, 93150))),
    "Leech": (24, 1, 1, 4, True, ((4, 196560), (6, 16773120))),
    "N24":   (24, 3, 3 ** 12, 6, True, ((6, 26208), None)),
    "L7":    (2, 7, 7, 2, True, ((2, 2), (4, 4))),
    "L11":   (2, 11, 11, 2, True, ((2, 2), (4, 0))),
    "L23A":  (2, 23, 23, 4, True, ((4, 2), (6, 2))),
    "L23B":  (2, 23, 23, 2, True, ((2, 2), (4, 0))),
    "L4_11": (4, 11, 11 ** 2, 4, True, None),
}

# Ambient bases for the lattices whose symmetry groups are used explicitly.
_BASES = {
    "D4": ((1, -1, 0, 0), (0, 1, -1, 0), (0, 0, 1, -1), (0, 0, 1, 1)),
    "A2": None,
}


#: environment variable naming a directory searched for catalog data files
#: before the packaged ones
DATA_DIR_ENV = "LATCUB_DATA"


def _data_text(fname: str) -> str:
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        path = pathlib.Path(override) / fname
        if path.is_file():
            return path.read_text()
    ref = resources.files("latcub").joinpath("data", "lattices", fname)
    if not ref.is_file():
        raise CatalogError(f"catalog data file missing: {fname}")
    return ref.read_text()


def parse_gram_file(text: str):
    """Parse the Gram-matrix file format; returns (gram rows, metadata dict)."""
    tokens = text.split()
    if not tokens:
        raise CatalogError("empty data file")
    n = int(tokens[0])
    need = 1 + n * n
    if len(tokens) < need:
        raise CatalogError("truncated Gram matrix")
    vals = [int(t) for t in tokens[1:need]]
    gram = [vals[i * n:(i + 1) * n] for i in range(n)]
    meta = {}
    for tok in tokens[need:]:
        if "=" not in tok:
            raise CatalogError(f"bad metadata token {tok!r}")
        k, v = tok.split("=", 1)
        meta[k] = int(v)
    for key in ("det", "min", "even", "ell"):
        if key not in meta:
            raise CatalogError(f"missing metadata key {key}")
    return gram, meta


def catalog_load(name: str, validate: bool = True) -> Lattice:
    """Load and gate-check a catalog lattice.

    Validation: evenness flag, exact determinant, minimum norm, and the two
    leading theta coefficients against the catalog expectations.
    """
    if name not in CATALOG_META:
        raise CatalogError(f"unknown lattice {name!r}")
    n, ell, detv, minv, even, theta2 = CATALOG_META[name]
    gram, meta = parse_gram_file(_data_text(name + ".txt"))
    lat = Lattice(
        name=name,
        gram=tuple(tuple(Fraction(x) for x in row) for row in gram),
        even=bool(meta["even"]),
        ell=meta["ell"],
        min_norm=meta["min"],
        basis=_BASES.get(name),
    )
    if not validate:
        return lat
    problems = []
    if lat.n != n:
        problems.append(f"dimension {lat.n} != {n}")
    if (meta["even"] == 1) != even:
        problems.append("evenness flag mismatch")
    diag_even = all(lat.gram[i][i] % 2 == 0 for i in range(lat.n))
    if even and not diag_even:
        problems.append("Gram diagonal not even")
    if not even and diag_even:
        problems.append("Gram diagonal even but lattice flagged odd")
    if lat.det() != detv or meta["det"] != detv:
        problems.append(f"determinant {lat.det()} != {detv}")
    if meta["min"] != minv or meta["ell"] != ell:
        problems.append("metadata min/ell mismatch")
    check_to = minv
    if theta2 is not None:
        check_to = max(m for m, _ in (p for p in theta2 if p is not None))
    counts = lat.shells(range(1, check_to + 1), count_only=True)
    if any(counts[m] for m in range(1, minv)):
        problems.append("vectors below the stated minimum")
    if counts[minv] == 0:
        problems.append("no vectors at the stated minimum")
    if theta2 is not None:
        for pair in theta2:
            if pair is None:
                continue
            m, expected = pair
            if counts[m] != expected:
                problems.append(f"theta coefficient at m={m}: {counts[m]} != {expected}")
    if problems:
        raise CatalogError(f"{name}: validation failed: " + "; ".join(problems))
    return lat


def catalog_names() -> list[str]:
    return sorted(CATALOG_META)
