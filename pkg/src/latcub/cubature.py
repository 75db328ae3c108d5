"""Construction of cubature formulas from lattice shells.

Weights are solved exactly from modular-form q-expansions: for every even
harmonic degree 2h <= t, each basis series Theta_i of the space guaranteed
to contain the harmonic theta data contributes one linear condition

    sum_j  a_i(m_j) / m_j^h  W_j  =  0,

and the normalization sum_j |E_{m_j}| W_j = 1 closes the system.  An
independent floating-point solver built on the Gegenbauer pair kernel
cross-checks the result, and assembled formulas are verified directly or
certified by the exactness of the series computation when the pair count
is out of reach.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .designs import (PAIR_CAP, PairCapExceeded, _eval_many, harmonic_dim,
                      strength_check, StrengthReport)
from .lattices import (DEFAULT_SHELL_CAP, Lattice, ShellSet, _canonical_sign,
                       catalog_load, dual_rescaled, enumerate_shell,
                       squarefree_split)
from .modforms import (generators, harmonic_theta, harmonic_theta_dual,
                       theta_space)


# ---------------------------------------------------------------------------
# node sets
# ---------------------------------------------------------------------------

@dataclass
class NodeSet:
    """A lattice, or a lattice together with its rescaled dual."""

    name: str
    members: list[Lattice]

    @property
    def root(self) -> Lattice:
        return self.members[0].frame_of or self.members[0]

    @property
    def n(self) -> int:
        return self.members[0].n

    @property
    def symmetrized(self) -> bool:
        return len(self.members) == 2

    @property
    def ell(self) -> int:
        return self.root.ell

    def minimum(self) -> int:
        return min(int(lat.minimum()) for lat in self.members)


def resolve_set(spec: str) -> NodeSet:
    """'NAME' or 'NAME+dual' -> NodeSet (dual means the rescaled dual)."""
    if spec.endswith("+dual"):
        base = catalog_load(spec[: -len("+dual")])
        return NodeSet(spec, [base, dual_rescaled(base, base.ell)])
    return NodeSet(spec, [catalog_load(spec)])


def _normalized_keys(shell: ShellSet):
    """Unit-sphere node keys: x/sqrt(m) written as sqrt(sigma) * w with
    sigma squarefree and w rational in the root-lattice basis.  Distinct
    sigma are rationally independent, so key equality is vector equality."""
    m = int(shell.m)
    out = []
    for s, v in shell.frame_nodes():
        sigma, r = squarefree_split(s * m)
        out.append((sigma, _canonical_sign(tuple(Fraction(r) * x / m for x in v))))
    return out


def _root_embedding(root: Lattice) -> np.ndarray:
    """Cholesky factor B with gram = B B^T: basis coords v -> Euclidean v B."""
    g = np.array([[float(x) for x in row] for row in root.gram])
    return np.linalg.cholesky(g)


def _keys_to_floats(keys, emb: np.ndarray) -> np.ndarray:
    pts = np.array([[float(x) for x in v] for _, v in keys], dtype=np.float64)
    scales = np.sqrt(np.array([float(s) for s, _ in keys]))
    return (pts @ emb) * scales[:, None]


# ---------------------------------------------------------------------------
# weight solving
# ---------------------------------------------------------------------------

@dataclass
class WeightSolution:
    feasible: bool
    weights: list[Fraction] | None
    shells: list[int]
    sizes: list[int]          # per-shell sizes counted with multiplicity
    equations: list[tuple[int, str]]   # (2h, basis label) per condition used
    skipped_degrees: list[int]
    message: str = ""

    def weight_floats(self) -> list[float]:
        return [float(w) for w in (self.weights or [])]


def _member_shells(nodeset: NodeSet, shells, cap):
    """{m: [ShellSet per member]}; every requested shell must be nonempty."""
    out = {}
    for m in shells:
        per = [enumerate_shell(lat, m, cap=cap) for lat in nodeset.members]
        if sum(sh.size for sh in per) == 0:
            raise ValueError(f"shell {m} of {nodeset.name} is empty")
        out[m] = per
    return out


#: shells larger than this are never materialized just to rule out
#: normalized-node coincidence between equal-sized shells
COINCIDENCE_CHECK_LIMIT = 1_000_000


def _shell_sizes(nodeset: NodeSet, shells, cap):
    """Per-shell sizes (with multiplicity) via counting enumeration only."""
    sizes = []
    counts = [lat.shells(shells, cap=cap, count_only=True)
              for lat in nodeset.members]
    for m in shells:
        total = sum(c[m] for c in counts)
        if total == 0:
            raise ValueError(f"shell {m} of {nodeset.name} is empty")
        sizes.append(total)
    return sizes


def _check_coincidence_by_size(nodeset: NodeSet, shells, sizes, cap):
    """Coincident normalized shells necessarily have equal sizes, so only
    equal-sized pairs need the full set comparison; huge shells are refused
    rather than silently trusted."""
    by_size: dict[int, list[int]] = {}
    for m, sz in zip(shells, sizes):
        by_size.setdefault(sz, []).append(m)
    suspects = sorted(m for ms in by_size.values() if len(ms) > 1 for m in ms)
    if not suspects:
        return
    if max(sz for sz, ms in by_size.items() if len(ms) > 1) > COINCIDENCE_CHECK_LIMIT:
        raise ValueError(
            f"equal-sized shells {suspects} of {nodeset.name} are too large "
            "to rule out normalized-node coincidence"
        )
    _check_shell_coincidence(nodeset, _member_shells(nodeset, suspects, cap))


def _check_shell_coincidence(nodeset: NodeSet, per_shell):
    """Refuse shell lists whose normalized node sets coincide (they make the
    linear system degenerate, e.g. norms 2 and 4 of the 4-dim pair)."""
    keysets = {}
    for m, shells in per_shell.items():
        acc = set()
        for sh in shells:
            acc.update(_normalized_keys(sh))
        keysets[m] = acc
    ms = sorted(keysets)
    for i, m1 in enumerate(ms):
        for m2 in ms[i + 1:]:
            if keysets[m1] == keysets[m2]:
                raise ValueError(
                    f"normalized shells {m1} and {m2} of {nodeset.name} coincide; "
                    "the linear system would be degenerate"
                )
    return keysets


def _square_part(fr: Fraction) -> int | None:
    """r >= 1 with fr = r**2, or None when fr is not the square of an
    integer (fractional squares are reported as None too)."""
    if fr.denominator != 1:
        return None
    r = math.isqrt(fr.numerator)
    return r if r * r == fr.numerator else None


def _is_rational_square(fr: Fraction) -> bool:
    p, q = fr.numerator, fr.denominator
    sp, sq = math.isqrt(p), math.isqrt(q)
    return sp * sp == p and sq * sq == q


def distinct_node_count(nodeset: NodeSet, shells, cap=DEFAULT_SHELL_CAP) -> int:
    """Number of distinct unit nodes of the normalized shell union, computed
    from counting enumeration only (no shell is materialized).

    Two shells share a direction only through parallel vectors y = c x, which
    forces the norm ratio to be a rational square (times the level between
    the two scales of a symmetrized set).  Integer factors give full
    containment (x -> r x within a member, x -> r sqrt(l) x across members,
    both always lattice points), so the contained shell is simply dropped
    from the sum; a fractional square ratio would allow a partial overlap
    that only vector-level comparison could settle, and is refused.
    """
    shells = sorted(set(int(m) for m in shells))
    members = nodeset.members
    counts = [lat.shells(shells, cap=cap, count_only=True) for lat in members]
    ell = nodeset.ell or 1
    pairs = [(i, m) for i in range(len(members)) for m in shells]
    for i, m in pairs:
        if counts[i][m] == 0:
            raise ValueError(f"shell {m} of {nodeset.name} is empty")

    def contained(i, m, j, mp):
        """Shell (i, m) fully contained in (j, mp)?  None = partial risk.

        A containing map is x -> rho x within a member and x -> rho sqrt(l) x
        across members (either member is sqrt(l) times the dual of the other,
        so the cross condition is symmetric); rho integer maps the whole
        shell, rho fractional at most part of it.
        """
        ratio = Fraction(mp, m) if i == j else Fraction(mp, ell * m)
        if _square_part(ratio) is not None:
            return True
        return None if _is_rational_square(ratio) else False

    dropped = set()
    partial_risk = False
    for a in range(len(pairs)):
        for b in range(a + 1, len(pairs)):
            (i, m), (j, mp) = pairs[a], pairs[b]
            fwd = contained(i, m, j, mp)
            bwd = contained(j, mp, i, m)
            if fwd is True and bwd is True:
                dropped.add(pairs[b])      # identical direction sets
            elif fwd is True:
                dropped.add(pairs[a])
            elif bwd is True:
                dropped.add(pairs[b])
            elif fwd is None or bwd is None:
                partial_risk = True
    if not partial_risk:
        return sum(counts[i][m] for i, m in pairs if (i, m) not in dropped)
    # a fractional square ratio allows a partial overlap that only the
    # vectors can settle; materialize (small shells only) and key-count
    if max(counts[i][m] for i, m in pairs) > COINCIDENCE_CHECK_LIMIT:
        raise ValueError(
            f"shells of {nodeset.name} may overlap partially (fractional "
            "square norm ratio) and are too large to materialize"
        )
    per_shell = _member_shells(nodeset, shells, cap)
    keys = set()
    for m in shells:
        for sh in per_shell[m]:
            keys.update(_normalized_keys(sh))
    return 2 * len(keys)


def solve_weights_modular(nodeset: NodeSet, shells, t: int,
                          group_dims=None, cap=DEFAULT_SHELL_CAP,
                          seed: int = 0) -> WeightSolution:
    """Exact shell weights for strength t from modular-form coefficients.

    group_dims: optional list d[k] = dim Har_k^G for a symmetry group G of
    the node set; degrees with d[2h] = 0 impose no condition and are skipped.
    """
    shells = sorted(set(int(m) for m in shells))
    if not shells:
        raise ValueError("no shells given")
    if nodeset.ell not in (1, 2, 3):
        raise ValueError("modular solver requires a level-1, 2 or 3 lattice")
    sizes = _shell_sizes(nodeset, shells, cap)
    _check_coincidence_by_size(nodeset, shells, sizes, cap)

    nmax = max(shells)
    gen = generators(nodeset.ell, max(nmax, 8), seed=seed)
    symmetrized = nodeset.symmetrized
    min_norm = nodeset.minimum()

    rows, rhs, equations, skipped = [], [], [], []
    for two_h in range(2, t + 1, 2):
        if group_dims is not None and group_dims[two_h] == 0:
            skipped.append(two_h)
            continue
        space = theta_space(nodeset.ell, nodeset.n, two_h, min_norm,
                            symmetrized, nmax, gen=gen)
        h = two_h // 2
        for label, series in zip(space.labels, space.basis):
            rows.append([series[m] * Fraction(1, m ** h) for m in shells])
            rhs.append(Fraction(0))
            equations.append((two_h, label))
    rows.append([Fraction(sz) for sz in sizes])
    rhs.append(Fraction(1))

    sol = linalg.solve(rows, rhs)
    if sol is None:
        return WeightSolution(False, None, shells, sizes, equations, skipped,
                              message="inconsistent linear system")
    if any(w <= 0 for w in sol):
        return WeightSolution(False, list(sol), shells, sizes, equations, skipped,
                              message="nonpositive weight "
                              + ", ".join(f"W{j+1}={float(w):.6g}"
                                          for j, w in enumerate(sol) if w <= 0))
    return WeightSolution(True, list(sol), shells, sizes, equations, skipped)


def _dot_histogram(a: np.ndarray, b: np.ndarray, block: int = 1024):
    """Histogram of pairwise inner products between two unit node arrays."""
    acc: dict[float, float] = {}
    for lo in range(0, a.shape[0], block):
        dots = a[lo:lo + block] @ b.T
        np.clip(dots, -1.0, 1.0, out=dots)
        vals, counts = np.unique(np.round(dots.ravel(), 12), return_counts=True)
        for v, c in zip(vals.tolist(), counts.tolist()):
            acc[v] = acc.get(v, 0.0) + c
    values = np.array(sorted(acc))
    counts = np.array([acc[v] for v in values.tolist()])
    return values, counts


def solve_weights_gram(nodeset: NodeSet, shells, t: int,
                       pair_cap=PAIR_CAP, tol: float = 1e-9,
                       cap=DEFAULT_SHELL_CAP) -> WeightSolution:
    """Independent floating-point solver: stack the Gegenbauer pair-kernel
    systems G_k W = 0 for k = 1..t with the normalization, solve by SVD with
    rank decisions at the given relative tolerance."""
    shells = sorted(set(int(m) for m in shells))
    per_shell = _member_shells(nodeset, shells, cap)
    _check_shell_coincidence(nodeset, per_shell)
    sizes = [sum(sh.size for sh in per_shell[m]) for m in shells]
    n = nodeset.n
    emb = _root_embedding(nodeset.root)

    groups = []
    for m in shells:
        keys = []
        for sh in per_shell[m]:
            keys.extend(_normalized_keys(sh))
        reps = _keys_to_floats(keys, emb)
        groups.append(np.vstack([reps, -reps]))
    total_pairs = sum(g.shape[0] for g in groups) ** 2
    if total_pairs > pair_cap:
        raise PairCapExceeded(f"{total_pairs} pairs exceed cap {pair_cap}")

    r = len(shells)
    gmats = np.zeros((t + 1, r, r))
    for j in range(r):
        for jp in range(j, r):
            vals, counts = _dot_histogram(groups[j], groups[jp])
            for k in range(1, t + 1):
                s = float(np.dot(_eval_many(n, k, vals), counts))
                gmats[k, j, jp] = s
                gmats[k, jp, j] = s
    rows = [gmats[k] / max(abs(gmats[k]).max(), 1.0) for k in range(1, t + 1)]
    a = np.vstack(rows + [np.array([sizes], dtype=np.float64)])
    b = np.zeros(a.shape[0])
    b[-1] = 1.0
    w, residuals, rank_, sv = np.linalg.lstsq(a, b, rcond=tol)
    resid = float(np.max(np.abs(a @ w - b)))
    if resid > tol * max(1.0, float(np.max(np.abs(b)))) * 1e3:
        return WeightSolution(False, [Fraction(x) for x in w], shells, sizes,
                              [], [], message=f"system residual {resid:.3e}")
    if np.any(w <= 0):
        return WeightSolution(False, [Fraction(float(x)) for x in w], shells,
                              sizes, [], [],
                              message="nonpositive weight in floating solve")
    return WeightSolution(True, [Fraction(float(x)) for x in w], shells, sizes, [], [])


def zonal_certificate(nodeset: NodeSet, shells, weights, t: int,
                      dirs: int = 2, seed: int = 0,
                      cap=DEFAULT_SHELL_CAP) -> tuple[bool, str]:
    """Exact strength certificate independent of any modularity assumption.

    For every even degree k <= t and a few random directions e, the weighted
    zonal sum  sum_j W_j m_j^{-k/2} * (sum_{x in shell m_j} P_{k,e}(x))  is
    computed in exact rational arithmetic from the harmonic theta series of
    the actual node set; odd degrees vanish by antipodal symmetry.  Returns
    (True, "") when every sum is zero, else (False, reason)."""
    shells = sorted(set(int(m) for m in shells))
    weights = [Fraction(w) for w in weights]
    base = nodeset.members[0]
    dual = nodeset.members[1] if nodeset.symmetrized else None
    rng = np.random.default_rng(seed)
    nmax = max(shells)
    for k in range(2, t + 1, 2):
        for _ in range(dirs):
            e = [Fraction(int(x)) for x in rng.integers(-2, 3, size=nodeset.n)]
            th = harmonic_theta(base, k, e, nmax, cap=cap)
            if dual is not None:
                th = th + harmonic_theta_dual(base, dual, k, e, nmax)
            total = sum(w * Fraction(1, m ** (k // 2)) * th[m]
                        for w, m in zip(weights, shells))
            if total != 0:
                return False, f"weighted zonal sum nonzero at degree {k}"
    return True, ""


# ---------------------------------------------------------------------------
# assembled formulas
# ---------------------------------------------------------------------------

@dataclass
class CubatureFormula:
    n: int
    t: int
    set_name: str
    shells: list[int]
    #: per shell: (norm m, size with multiplicity, per-node weight)
    groups: list[tuple[int, int, Fraction]]
    #: antipodal representatives: (sigma, rational coords in root basis, weight)
    nodes: list[tuple[int, tuple, Fraction]]
    #: Euclidean embedding of the root basis (Cholesky factor)
    embedding: np.ndarray = field(repr=False)
    #: True when nodes stand for antipodal pairs (the constructed formulas);
    #: False after support reduction, where each record is a single node
    antipodal: bool = True

    @property
    def size(self) -> int:
        return (2 if self.antipodal else 1) * len(self.nodes)

    def weight_sum(self) -> Fraction:
        mult = 2 if self.antipodal else 1
        return sum((mult * w for _, _, w in self.nodes), Fraction(0))

    def nodes_array(self) -> np.ndarray:
        keys = [(s, v) for s, v, _ in self.nodes]
        pts = _keys_to_floats(keys, self.embedding)
        return np.vstack([pts, -pts]) if self.antipodal else pts

    def weights_array(self) -> np.ndarray:
        w = np.array([float(wt) for _, _, wt in self.nodes])
        return np.concatenate([w, w]) if self.antipodal else w

    def to_records(self) -> list[dict]:
        out = []
        pts = self.nodes_array()
        wts = self.weights_array()
        count = len(self.nodes)
        for i in range(pts.shape[0]):
            sigma, coords, wt = self.nodes[i % count]
            neg = self.antipodal and i >= count
            out.append({
                "coords": pts[i],
                "weight": wt,
                "sigma": sigma,
                "exact": tuple(-c for c in coords) if neg else coords,
            })
        return out

    def export_csv(self) -> str:
        lines = [f"# n={self.n} t={self.t} set={self.set_name} "
                 f"shells={','.join(map(str, self.shells))} size={self.size}"]
        cols = [f"x{i+1}" for i in range(self.n)]
        lines.append(",".join(cols + ["weight", "weight_exact", "sigma", "exact_coords"]))
        for rec in self.to_records():
            coords = ",".join(f"{c:.17g}" for c in rec["coords"])
            exact = " ".join(str(c) for c in rec["exact"])
            lines.append(f"{coords},{float(rec['weight']):.17g},"
                         f"{rec['weight']},{rec['sigma']},\"{exact}\"")
        return "\n".join(lines) + "\n"

    def export_records(self) -> str:
        lines = [f"formula n={self.n} t={self.t} set={self.set_name} "
                 f"shells={','.join(map(str, self.shells))} size={self.size}"]
        for rec in self.to_records():
            coords = " ".join(f"{c:.17g}" for c in rec["coords"])
            exact = " ".join(str(c) for c in rec["exact"])
            lines.append(f"node w={rec['weight']} sigma={rec['sigma']} "
                         f"xyz=[{coords}] exact=[{exact}]")
        return "\n".join(lines) + "\n"


def assemble(nodeset: NodeSet, shells, weights, t: int,
             cap=DEFAULT_SHELL_CAP) -> CubatureFormula:
    """Deduplicate normalized shells into one weighted node list; nodes shared
    between shells (nested shells after scaling) carry the summed weight."""
    shells = sorted(set(int(m) for m in shells))
    if len(weights) != len(shells):
        raise ValueError("one weight per shell required")
    weights = [Fraction(w) for w in weights]
    per_shell = _member_shells(nodeset, shells, cap)
    merged: dict = {}
    groups = []
    for m, w in zip(shells, weights):
        seen_this_shell = set()
        size = 0
        for sh in per_shell[m]:
            size += sh.size
            for key in _normalized_keys(sh):
                if key in seen_this_shell:
                    continue
                seen_this_shell.add(key)
                merged[key] = merged.get(key, Fraction(0)) + w
        groups.append((m, size, w))
    bad = [k for k, w in merged.items() if w <= 0]
    if bad:
        raise ValueError(f"{len(bad)} nodes received a nonpositive merged weight")
    total = 2 * sum(merged.values())
    if total != 1:
        raise ValueError(f"weights sum to {total}, not 1")
    nodes = [(sigma, coords, w) for (sigma, coords), w in merged.items()]
    return CubatureFormula(
        n=nodeset.n, t=t, set_name=nodeset.name, shells=shells, groups=groups,
        nodes=nodes, embedding=_root_embedding(nodeset.root),
    )


@dataclass
class VerificationReport:
    ran: bool
    passed: bool | None
    reason: str
    strength: StrengthReport | None = None


def verify(formula: CubatureFormula, t: int | None = None,
           pair_cap: int = PAIR_CAP, tol: float = 1e-9) -> VerificationReport:
    """Direct pairwise verification; refuses (and says so) beyond the pair
    cap, where the exact modular solve is the certificate."""
    t = formula.t if t is None else t
    if formula.weight_sum() != 1:
        raise AssertionError("formula weights do not sum to 1")
    if formula.size ** 2 > pair_cap:
        return VerificationReport(
            ran=False, passed=None,
            reason=f"{formula.size}^2 pairs exceed cap {pair_cap}; "
            "certified by the exact series computation",
        )
    rep = strength_check(formula.nodes_array(), formula.weights_array(), t,
                         tol=tol, pair_cap=pair_cap)
    return VerificationReport(ran=True, passed=rep.passed,
                              reason="" if rep.passed
                              else f"defect at degree {rep.first_failing}",
                              strength=rep)


# ---------------------------------------------------------------------------
# support reduction
# ---------------------------------------------------------------------------

def _monomial_exponents(n: int, tmax: int):
    """All exponent vectors of total degree <= tmax."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], tmax, n)
    return out


def reduce_support(formula: CubatureFormula, t: int | None = None,
                   tol: float = 1e-9, pair_cap: int = PAIR_CAP):
    """Caratheodory-style support reduction: repeatedly move weight along a
    kernel vector of the node-moment matrix until a weight vanishes, then
    drop that node.  Stops when the moment matrix has no kernel; the result
    is re-verified and the original formula is returned on failure."""
    from .bounds import bound_B

    t = formula.t if t is None else t
    pts = formula.nodes_array()
    wts = formula.weights_array().astype(np.float64)
    cap = bound_B(formula.n, t)
    exps = _monomial_exponents(formula.n, t)
    alive = np.ones(pts.shape[0], dtype=bool)

    def moment_matrix(idx):
        cols = []
        for e in exps:
            col = np.ones(idx.shape[0])
            for axis, p in enumerate(e):
                if p:
                    col = col * pts[idx, axis] ** p
            cols.append(col)
        return np.array(cols)

    while True:
        idx = np.flatnonzero(alive)
        a = moment_matrix(idx)
        _, sv, vt = np.linalg.svd(a, full_matrices=True)
        cutoff = (sv[0] if sv.size else 0.0) * 1e-12
        rank_ = int(np.sum(sv > cutoff))
        if rank_ >= idx.shape[0]:
            break
        c = vt[-1]
        pos = c > 1e-14
        if not np.any(pos):
            c, pos = -c, (-c) > 1e-14
            if not np.any(pos):
                break
        ratios = np.where(pos, wts[idx] / np.where(pos, c, 1.0), np.inf)
        jstar = int(np.argmin(ratios))
        neww = wts[idx] - ratios[jstar] * c
        neww[jstar] = 0.0
        wts[idx] = np.maximum(neww, 0.0)
        alive[idx[wts[idx] <= 1e-15]] = False

    idx = np.flatnonzero(alive)
    if idx.shape[0] > cap:
        return formula, VerificationReport(
            ran=False, passed=False,
            reason=f"reduction stalled at {idx.shape[0]} > B(n,t) = {cap}")
    w = wts[idx]
    w_frac = [Fraction(float(x)) for x in w]
    total = sum(w_frac, Fraction(0))
    w_frac = [x / total for x in w_frac]
    count = len(formula.nodes)
    nodes = []
    for i, wf in zip(idx.tolist(), w_frac):
        sigma, coords, _ = formula.nodes[i % count]
        if formula.antipodal and i >= count:
            coords = tuple(-c for c in coords)
        nodes.append((sigma, coords, wf))
    reduced = CubatureFormula(
        n=formula.n, t=t, set_name=formula.set_name + "/reduced",
        shells=formula.shells, groups=formula.groups, nodes=nodes,
        embedding=formula.embedding, antipodal=False,
    )
    rep = strength_check(reduced.nodes_array(), reduced.weights_array(), t,
                         tol=max(tol, 1e-8), pair_cap=pair_cap)
    if not rep.passed:
        return formula, VerificationReport(
            ran=True, passed=False,
            reason=f"reduced formula fails at degree {rep.first_failing}; "
            "original kept", strength=rep)
    return reduced, VerificationReport(ran=True, passed=True, reason="",
                                       strength=rep)
