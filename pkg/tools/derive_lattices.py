#!/usr/bin/env python3
"""Generate the frozen Gram-matrix data files shipped under data/lattices.

Sources:
  * A2, A4, D4, E8 and the binary forms: written directly from their
    standard Gram matrices / in-code constructions.
  * BW16, Leech, O23: in-code constructions (Reed-Muller / Golay codes).
  * K12, Q14, N20_1, N24: found by a random-walk over p-neighbors starting
    from an easy lattice in the same genus, climbing the lattice minimum
    until the known extremal invariants (minimum and kissing number) are
    reached.  The walk is seeded, so reruns reproduce the shipped files.
  * L4_11: exhaustive search over reduced 4x4 even Gram matrices with
    determinant 121 and minimum 4.

Run from the repository root:  python3 tools/derive_lattices.py [names...]
"""

from __future__ import annotations

import math
import pathlib
import sys
import time
from fractions import Fraction

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from latcub import linalg  # noqa: E402
from latcub.construct import (  # noqa: E402
    BINARY_FORMS, build_bw16, build_e8, build_leech, build_o23, root_gram,
)
from latcub.lattices import Lattice  # noqa: E402

DATA_DIR = pathlib.Path(__file__).resolve().parents[1] / "src" / "latcub" / "data" / "lattices"


def write_entry(name: str, gram, even: bool, ell: int, min_norm: int):
    n = len(gram)
    detv = linalg.det(gram)
    assert detv.denominator == 1
    lines = [str(n)]
    for row in gram:
        lines.append(" ".join(str(int(x)) for x in row))
    lines.append(f"det={int(detv)}")
    lines.append(f"min={min_norm}")
    lines.append(f"even={1 if even else 0}")
    lines.append(f"ell={ell}")
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    (DATA_DIR / f"{name}.txt").write_text("\n".join(lines) + "\n")
    print(f"wrote {name}: n={n} det={int(detv)} min={min_norm}")


def block_diag(*blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    ofs = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[ofs + i][ofs + j] = x
        ofs += len(b)
    return out


# ---------------------------------------------------------------------------
# p-neighbor random walk
# ---------------------------------------------------------------------------

def p_neighbor(gram, v, p):
    """The p-neighbor of the even lattice with this Gram matrix along v.

    Requires <v,v> = 0 mod 2p^2 and v not in p * (dual); returns the new
    integral even Gram matrix (same determinant) or None if v is unusable.
    """
    n = len(gram)
    gv = [sum(gram[i][j] * v[j] for j in range(n)) for i in range(n)]
    nv = sum(v[i] * gv[i] for i in range(n))
    if nv % (2 * p * p) != 0:
        return None
    w = [x % p for x in gv]
    piv = next((j for j in range(n) if w[j]), None)
    if piv is None:
        return None
    a = pow(w[piv], -1, p)
    gens = []
    for i in range(n):
        row = [0] * n
        if i == piv:
            row[piv] = p * p
        else:
            row[i] = p
            row[piv] = -p * ((w[i] * a) % p)
        gens.append(row)
    gens.append(list(v))
    basis = linalg.hnf_row(gens)
    if len(basis) != n:
        return None
    gf = [[Fraction(x) for x in row] for row in gram]
    bg = linalg.matmul(basis, gf)
    new = linalg.matmul(bg, linalg.transpose(basis))
    p2 = p * p
    out = []
    for row in new:
        r = []
        for x in row:
            q = x / p2
            if q.denominator != 1:
                return None
            r.append(int(q))
        out.append(r)
    if any(out[i][i] % 2 for i in range(n)):
        return None
    return out


def profile(gram, even_min_cap=8):
    """(minimum, kissing) of an even lattice, probing norms 2,4,..."""
    lat = Lattice("tmp", tuple(tuple(Fraction(x) for x in r) for r in gram), True)
    for m in range(2, even_min_cap + 1, 2):
        cnt = lat.shells([m], count_only=True)[m]
        if cnt:
            return m, cnt
    return even_min_cap + 2, 0


def climb(gram, p, target, seed, max_steps=20000, log_every=200):
    """Random p-neighbor walk maximizing (minimum, -kissing) until target."""
    rng = np.random.default_rng(seed)
    n = len(gram)
    cur = [list(map(int, row)) for row in gram]
    cmin, ckiss = profile(cur)
    best = (cmin, -ckiss)
    t0 = time.time()
    for step in range(max_steps):
        if (cmin, ckiss) == target:
            print(f"  reached target in {step} steps, {time.time()-t0:.0f}s")
            # p-neighbor steps blow up the Gram entries; store a reduced basis
            from latcub._enum import lll_reduce_gram
            _, red = lll_reduce_gram(cur)
            return [[int(x) for x in row] for row in red]
        v = [int(x) for x in rng.integers(-2, 3, size=n)]
        ng = p_neighbor(cur, v, p)
        if ng is None:
            continue
        nmin, nkiss = profile(ng)
        cand = (nmin, -nkiss)
        if cand > best or (cand == best and rng.random() < 0.3):
            cur, cmin, ckiss, best = ng, nmin, nkiss, cand
        if log_every and step % log_every == 0:
            print(f"  step {step}: min={cmin} kiss={ckiss} ({time.time()-t0:.0f}s)")
    raise RuntimeError(f"no lattice with (min,kiss)={target} found in {max_steps} steps")


def search_l4_11():
    """Exhaustive reduced-Gram search: even, 4-dim, det 121, minimum 4."""
    for d3 in (4, 6):
        for d4 in (4, 6, 8, 10):
            if d4 < d3:
                continue
            rng12 = range(-2, 3)
            for a in rng12:
                for b in rng12:
                    for c in rng12:
                        for d in rng12:
                            for e in range(-d3 // 2, d3 // 2 + 1):
                                for f in range(-d3 // 2, d3 // 2 + 1):
                                    g = [[4, a, b, c], [a, 4, d, e],
                                         [b, d, d3, f], [c, e, f, d4]]
                                    if linalg.det(g) != 121:
                                        continue
                                    # positive definite? leading minors
                                    if 16 - a * a <= 0:
                                        continue
                                    if linalg.det([[4, a, b], [a, 4, d], [b, d, d3]]) <= 0:
                                        continue
                                    lat = Lattice("tmp", tuple(tuple(Fraction(x) for x in r) for r in g), True)
                                    if lat.shells([2], count_only=True)[2] == 0:
                                        return g
    raise RuntimeError("no 4-dimensional even lattice with det 121 and min 4 found")


DERIVATIONS = {}


def derivation(name):
    def reg(fn):
        DERIVATIONS[name] = fn
        return fn
    return reg


@derivation("A2")
def _a2():
    write_entry("A2", root_gram("A2"), True, 3, 2)


@derivation("A4")
def _a4():
    write_entry("A4", root_gram("A4"), True, 5, 2)


@derivation("D4")
def _d4():
    write_entry("D4", root_gram("D4"), True, 2, 2)


@derivation("E8")
def _e8():
    write_entry("E8", [[int(x) for x in row] for row in build_e8().gram], True, 1, 2)


@derivation("BW16")
def _bw16():
    write_entry("BW16", [[int(x) for x in row] for row in build_bw16().gram], True, 2, 4)


@derivation("Leech")
def _leech():
    lat, _ = build_leech()
    write_entry("Leech", [[int(x) for x in row] for row in lat.gram], True, 1, 4)


@derivation("O23")
def _o23():
    write_entry("O23", [[int(x) for x in row] for row in build_o23().gram], False, 1, 3)


@derivation("K12")
def _k12():
    start = block_diag(*[root_gram("A2")] * 6)
    g = climb(start, p=2, target=(4, 756), seed=12)
    write_entry("K12", g, True, 3, 4)


@derivation("Q14")
def _q14():
    start = block_diag(*[root_gram("A2")] * 7)
    g = climb(start, p=2, target=(4, 756), seed=14)
    write_entry("Q14", g, True, 3, 4)


@derivation("N20_1")
def _n20():
    start = block_diag(*[root_gram("D4")] * 5)
    g = climb(start, p=3, target=(4, 3960), seed=20)
    write_entry("N20_1", g, True, 2, 4)


@derivation("N24")
def _n24():
    # start from two copies of the 12-dimensional lattice (same genus,
    # already at minimum 4) rather than twelve hexagonal planes
    k12 = _load_k12()
    start = block_diag(k12, k12)
    g = climb(start, p=2, target=(6, 26208), seed=24, max_steps=50000,
              log_every=50)
    write_entry("N24", g, True, 3, 6)


def _load_k12():
    from latcub.lattices import catalog_load
    return [[int(x) for x in row] for row in catalog_load("K12").gram]


@derivation("L4_11")
def _l4_11():
    g = search_l4_11()
    write_entry("L4_11", g, True, 11, 4)


for _name, _gram in BINARY_FORMS.items():
    def _mk(name=_name, gram=_gram):
        minv = min(gram[0][0], gram[1][1])
        ell = int(linalg.det(gram))
        write_entry(name, gram, True, ell, minv)
    DERIVATIONS[_name] = _mk


def main(argv):
    names = argv or list(DERIVATIONS)
    for name in names:
        print(f"== {name}")
        DERIVATIONS[name]()


if __name__ == "__main__":
    main(sys.argv[1:])
