"""In-code constructions of the catalog lattices built from binary codes.

Coordinates are kept integral by working in a rescaled frame: a lattice
"at scale s" stores integer vectors x whose true norm is <x,x>/s.  The
Gram matrices produced here must agree with the shipped data files; the
test suite enforces that.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .lattices import Lattice


# ---------------------------------------------------------------------------
# binary codes
# ---------------------------------------------------------------------------

def _gf2_divides(d: int, f: int) -> bool:
    """Does polynomial d (bitmask) divide f over GF(2)?"""
    while f.bit_length() >= d.bit_length():
        f ^= d << (f.bit_length() - d.bit_length())
    return f == 0


def golay_code() -> list[int]:
    """Generator rows (24-bit masks) of the extended binary Golay code.

    The length-23 cyclic code is generated by a degree-11 factor of x^23+1
    over GF(2); appending an overall parity bit yields the [24,12,8] code.
    The weight distribution is checked before returning.
    """
    f = (1 << 23) | 1  # x^23 + 1
    gen = next(
        d for d in range(1 << 11, 1 << 12)
        if d & 1 and _gf2_divides(d, f)
    )
    rows = []
    for i in range(12):
        word = gen << i  # cyclic code generator shifts, degree <= 22
        parity = bin(word).count("1") & 1
        rows.append(word | (parity << 23))
    # verify the weight distribution of the full code
    dist: dict[int, int] = {}
    for mask in range(1 << 12):
        w = 0
        for i in range(12):
            if (mask >> i) & 1:
                w ^= rows[i]
        dist[bin(w).count("1")] = dist.get(bin(w).count("1"), 0) + 1
    if dist != {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}:
        raise AssertionError(f"not the Golay code: weights {dist}")
    return rows


def rm_1_4() -> list[int]:
    """Generator rows (16-bit masks) of the first-order Reed-Muller code RM(1,4)."""
    rows = [0xFFFF]
    for k in range(4):
        rows.append(sum(1 << p for p in range(16) if (p >> k) & 1))
    return rows


def _mask_to_vec(mask: int, n: int) -> list[int]:
    return [(mask >> i) & 1 for i in range(n)]


# ---------------------------------------------------------------------------
# lattices from codes
# ---------------------------------------------------------------------------

def _lattice_from_generators(name, gens, scale, even, ell, min_norm):
    """Build a Lattice from integer generating rows at the given norm scale."""
    basis = linalg.hnf_row([list(map(int, g)) for g in gens])
    n = len(gens[0])
    if len(basis) != n:
        raise AssertionError(f"{name}: generators span rank {len(basis)} != {n}")
    gram = [
        [Fraction(sum(bi[k] * bj[k] for k in range(n)), scale) for bj in basis]
        for bi in basis
    ]
    if any(x.denominator != 1 for row in gram for x in row):
        raise AssertionError(f"{name}: non-integral Gram at scale {scale}")
    return Lattice(
        name=name,
        gram=tuple(tuple(row) for row in gram),
        even=even,
        ell=ell,
        min_norm=min_norm,
        basis=tuple(
            tuple(Fraction(x) for x in bi) for bi in basis
        ) if scale == 1 else None,
    ), basis


def build_e8() -> Lattice:
    """E8 as the span of the diagonal half-vector over the even-sum sublattice
    of Z^8 (scale 2: integer coordinates are twice the real ones)."""
    gens = []
    for i in range(8):
        for j in range(i + 1, 8):
            for sgn in (1, -1):
                v = [0] * 8
                v[i], v[j] = 2, 2 * sgn
                gens.append(v)
    gens.append([1] * 8)
    lat, _ = _lattice_from_generators("E8", gens, 4, True, 1, 2)
    return lat


def build_bw16() -> Lattice:
    """The rank-16 lattice {x in Z^16 : x mod 2 in RM(1,4), sum(x) = 0 mod 4},
    with the form <x,x>/2 (scale 2)."""
    gens = [_mask_to_vec(m, 16) for m in rm_1_4()]
    for i in range(16):
        for j in range(i + 1, 16):
            for sgn in (1, -1):
                v = [0] * 16
                v[i], v[j] = 2, 2 * sgn
                gens.append(v)
        v = [0] * 16
        v[i] = 4
        gens.append(v)
    lat, _ = _lattice_from_generators("BW16", gens, 2, True, 2, 4)
    if lat.det() != 2 ** 8:
        raise AssertionError(f"BW16 determinant {lat.det()} != 2^8")
    return lat


def build_leech() -> tuple[Lattice, list[list[int]]]:
    """The even unimodular rank-24 lattice built on the Golay code, with the
    form <x,x>/8 (scale 8).  Returns (lattice, integer basis rows)."""
    gens = []
    for c in golay_code():
        gens.append([2 * b for b in _mask_to_vec(c, 24)])
    for i in range(24):
        for j in range(i + 1, 24):
            for sgn in (1, -1):
                v = [0] * 24
                v[i], v[j] = 4, 4 * sgn
                gens.append(v)
    gens.append([-3] + [1] * 23)
    lat, basis = _lattice_from_generators("Leech", gens, 8, True, 1, 4)
    if lat.det() != 1:
        raise AssertionError(f"Leech-candidate determinant {lat.det()} != 1")
    return lat, basis


def build_o23() -> Lattice:
    """The odd unimodular rank-23 lattice of minimum 3: project the sublattice
    of the rank-24 lattice pairing evenly with a fixed norm-4 vector along
    that vector."""
    lat24, basis = build_leech()
    n = 24
    # u: a norm-4 vector; all norm-4 vectors are equivalent here, take 4e1+4e2.
    u = [4, 4] + [0] * 22
    # pairing of basis vectors with u under <x,y>/8
    pair = [Fraction(sum(b[k] * u[k] for k in range(n)), 8) for b in basis]
    if any(p.denominator != 1 for p in pair):
        raise AssertionError("u not in the dual")
    par = [int(p) % 2 for p in pair]
    j = par.index(1)
    # sublattice M = {x : <x,u> even}, index 2
    mrows = []
    for i in range(n):
        if i == j:
            mrows.append([2 * x for x in basis[j]])
        else:
            row = list(basis[i])
            if par[i]:
                row = [a - b for a, b in zip(row, basis[j])]
            mrows.append(row)
    # project along u: p(x) = x - (<x,u>/<u,u>) u ; scale by 4 to stay integral
    prows = []
    for row in mrows:
        c = Fraction(sum(row[k] * u[k] for k in range(n)), 32)  # <x,u>/<u,u>
        prows.append([4 * (Fraction(x) - c * uk) for x, uk in zip(row, u)])
    int_rows = [[int(x) for x in row] for row in prows]
    if any(Fraction(int_rows[i][k]) != prows[i][k] for i in range(n) for k in range(n)):
        raise AssertionError("projection not integral at scale 4")
    b23 = linalg.hnf_row(int_rows)
    if len(b23) != 23:
        raise AssertionError(f"projected rank {len(b23)} != 23")
    # true form: <x,y>/8 on the unscaled vectors -> /(8*16) on the 4x rows
    gram = [
        [Fraction(sum(bi[k] * bj[k] for k in range(n)), 128) for bj in b23]
        for bi in b23
    ]
    if any(x.denominator != 1 for row in gram for x in row):
        raise AssertionError("projected Gram not integral")
    lat = Lattice(
        name="O23",
        gram=tuple(tuple(row) for row in gram),
        even=False,
        ell=1,
        min_norm=3,
    )
    if lat.det() != 1:
        raise AssertionError(f"O23 determinant {lat.det()} != 1")
    return lat


def root_gram(kind: str):
    """Gram matrices of the small root lattices used by the generator spaces."""
    if kind == "A2":
        return [[2, 1], [1, 2]]
    if kind == "A4":
        return [[2, 1, 0, 0], [1, 2, 1, 0], [0, 1, 2, 1], [0, 0, 1, 2]]
    if kind == "D4":
        return [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
    raise ValueError(f"unknown root lattice {kind!r}")


BINARY_FORMS = {
    "L7": [[2, 1], [1, 4]],
    "L11": [[2, 1], [1, 6]],
    "L23A": [[4, 1], [1, 6]],
    "L23B": [[2, 1], [1, 12]],
}
