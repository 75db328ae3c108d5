"""Command-line front end: lattice queries, weight solving, verification,
lower bounds, and table reproduction against golden files.

Exit codes: 0 success, 1 mismatch or infeasible system, 2 usage error,
3 missing catalog data.  Identical arguments (including --seed) produce
byte-identical output; --threads is accepted for interface stability but
never changes results.
"""

from __future__ import annotations

import argparse
import functools
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .bounds import TIGHT_NONEXISTENT, bound_B, delsarte, lp_estimate, yudin
from .cubature import (assemble, distinct_node_count, reduce_support,
                       resolve_set, solve_weights_modular, verify,
                       zonal_certificate)
from .designs import strength_check
from .lattices import (DEFAULT_SHELL_CAP, CatalogError, catalog_load,
                       catalog_names, theta_by_enumeration)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_MISSING = 3

#: pair budget for direct verification inside `reproduce`; larger rows are
#: reported as certified by the exact series solve
REPRODUCE_PAIR_CAP = 3_000_000_000

#: rows whose node count exceeds this are never materialized by `reproduce`
MATERIALIZE_LIMIT = 5_000_000

TABLE_NAMES = ("4", "4b", "4b-bounds", "6", "7", "8", "9", "10", "11", "12")

OUT_OF_SCOPE_TEXT = "out of scope (odd-lattice harmonic theta)"


# ---------------------------------------------------------------------------
# golden files
# ---------------------------------------------------------------------------

@dataclass
class GoldenRow:
    strength: int
    set_spec: str
    shells: list[int]
    size_printed: int
    bound_printed: int
    annot: str                     # "T", "D", or "LP<d>"
    size_expected: int
    bound_expected: int
    flags: set[str] = field(default_factory=set)
    opts: dict = field(default_factory=dict)

    @property
    def external(self) -> bool:
        return self.set_spec.startswith("external:")

    @property
    def lp_degree(self) -> int | None:
        return int(self.annot[2:]) if self.annot.startswith("LP") else None


def load_golden(table: str) -> list[GoldenRow]:
    ref = resources.files("latcub").joinpath("data", "golden",
                                             f"table{table}.txt")
    if not ref.is_file():
        raise FileNotFoundError(f"golden file for table {table} missing")
    rows = []
    for line in ref.read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("|")
        if len(parts) != 10:
            raise ValueError(f"bad golden row: {line!r}")
        (t, spec, shells, size, bound, annot,
         size_exp, bound_exp, flags, opts) = parts
        rows.append(GoldenRow(
            strength=int(t),
            set_spec=spec,
            shells=[int(m) for m in shells.split(",")] if shells not in ("", "-") else [],
            size_printed=int(size),
            bound_printed=int(bound),
            annot=annot,
            size_expected=int(size_exp) if size_exp else int(size),
            bound_expected=int(bound_exp) if bound_exp else int(bound),
            flags=set(f for f in flags.split(",") if f),
            opts=dict(kv.split("=", 1) for kv in opts.split(";") if kv),
        ))
    return rows


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _group_dims(name: str, t: int):
    """Invariant harmonic dimensions for a named node-set symmetry group."""
    if name != "F4T":
        raise ValueError(f"unknown symmetry group {name!r}")
    from .groups import aut_union_group, molien_invariant_dims
    return molien_invariant_dims(aut_union_group(), t + 1).dims


def _bound_for(n: int, t: int, annot: str, grid: int):
    """(ceiled bound value, display annotation) from a table annotation."""
    if annot in ("T", "D"):
        return delsarte(n, t, plus_one=(n, t) in TIGHT_NONEXISTENT), annot
    d = int(annot[2:])
    res = lp_estimate(n, t, d, grid=grid)
    return math.ceil(res.value), f"LP{d}"


def _fmt_weights(solution) -> str:
    return ", ".join(
        f"W{j + 1} = {w} ({float(w):.6g})"
        for j, w in enumerate(solution.weights or [])
    )


# ---------------------------------------------------------------------------
# reproduce
# ---------------------------------------------------------------------------

@dataclass
class RowResult:
    golden: GoldenRow
    size: int | None
    bound: int | None
    status: str
    diffs: list[str]
    mismatches: list[str]
    missing: bool = False


def _reproduce_row(row: GoldenRow, grid: int, pair_cap: int,
                   cap: int, seed: int) -> RowResult:
    diffs: list[str] = []
    bad: list[str] = []
    t = row.strength

    if row.external:
        n = 4
        bound, _ = _bound_for(n, t, row.annot, grid)
        if bound != row.bound_expected:
            bad.append(f"bound {bound} != expected {row.bound_expected}")
        elif bound != row.bound_printed:
            diffs.append(f"strength {t} bound: computed {bound}, "
                         f"printed {row.bound_printed}")
        return RowResult(row, row.size_printed, bound,
                         "external size", diffs, bad)

    try:
        nodeset = resolve_set(row.set_spec)
    except CatalogError as exc:
        return RowResult(row, None, None, f"missing data ({exc})",
                         diffs, bad, missing=True)

    n = nodeset.n
    size = distinct_node_count(nodeset, row.shells, cap=cap)
    if size != row.size_expected:
        bad.append(f"size {size} != expected {row.size_expected}")
    elif size != row.size_printed:
        diffs.append(f"strength {t} size: computed {size}, "
                     f"printed {row.size_printed}")

    bound, _ = _bound_for(n, t, row.annot, grid)
    if bound != row.bound_expected:
        bad.append(f"bound {bound} != expected {row.bound_expected}")
    elif bound != row.bound_printed:
        diffs.append(f"strength {t} bound: computed {bound}, "
                     f"printed {row.bound_printed}")

    if "out-of-scope" in row.flags:
        return RowResult(row, size, bound, OUT_OF_SCOPE_TEXT, diffs, bad)

    # weights: forced by normalization for a single shell, else solved
    # exactly from the modular conditions
    if len(row.shells) == 1:
        sizes = [sum(lat.shells(row.shells, cap=cap, count_only=True)[row.shells[0]]
                     for lat in nodeset.members)]
        solution = None
        weights = [Fraction(1, sizes[0])]
    else:
        dims = (_group_dims(row.opts["group"], t)
                if "group" in row.opts else None)
        solution = solve_weights_modular(nodeset, row.shells, t,
                                         group_dims=dims, cap=cap, seed=seed)
        if not solution.feasible:
            if "infeasible" in row.flags:
                return RowResult(row, size, bound,
                                 f"infeasible as documented ({solution.message})",
                                 diffs, bad)
            bad.append(f"weight solve infeasible: {solution.message}")
            return RowResult(row, size, bound, "infeasible", diffs, bad)
        if "infeasible" in row.flags:
            bad.append("weight solve feasible but documented as infeasible")
        weights = solution.weights

    if size * size > pair_cap or size > MATERIALIZE_LIMIT:
        status = "certified-by-series"
        if "zonal-certify" in row.flags:
            ok, why = zonal_certificate(nodeset, row.shells, weights, t,
                                        seed=seed, cap=cap)
            if ok:
                status = "certified (exact zonal check)"
            else:
                bad.append(f"exact zonal certificate failed: {why}")
                status = "certification FAILED"
    else:
        formula = assemble(nodeset, row.shells, weights, t, cap=cap)
        report = verify(formula, t, pair_cap=pair_cap)
        if report.ran and report.passed:
            status = "verified"
        elif report.ran:
            bad.append(f"direct verification failed: {report.reason}")
            status = "verification FAILED"
        else:
            status = "certified-by-series"
    return RowResult(row, size, bound, status, diffs, bad)


def _render_rows(table: str, results: list[RowResult], fmt: str) -> str:
    header = ["strength", "set", "shells", "size", "bound", "status"]
    body = []
    for res in results:
        row = res.golden
        shells = ",".join(map(str, row.shells)) if row.shells else "-"
        ge = ">=" if "ge" in row.flags else ""
        bound = f"{ge}{res.bound} ({res.golden.annot})" if res.bound is not None else "-"
        name = row.set_spec
        if res.golden.external:
            name = row.set_spec[len("external:"):]
        body.append([str(row.strength), name, shells,
                     str(res.size) if res.size is not None else "-",
                     bound, res.status])
    if fmt == "csv":
        import csv
        import io
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(header)
        writer.writerows(body)
        return buf.getvalue().rstrip("\n")
    widths = [max(len(h), *(len(r[i]) for r in body))
              for i, h in enumerate(header)]
    lines = ["| " + " | ".join(h.ljust(w) for h, w in zip(header, widths)) + " |",
             "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    for r in body:
        lines.append("| " + " | ".join(c.ljust(w) for c, w in zip(r, widths)) + " |")
    return "\n".join(lines)


def cmd_reproduce(args) -> int:
    table = "4b" if args.table == "4b-bounds" else args.table
    try:
        rows = load_golden(table)
    except FileNotFoundError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_MISSING
    results = [
        _reproduce_row(row, args.grid, args.pair_cap, args.cap, args.seed)
        for row in rows
    ]
    out = [f"table {table}", _render_rows(table, results, args.format)]
    code = EXIT_OK
    missing = [r for r in results if r.missing]
    for res in results:
        for d in res.diffs:
            out.append(f"documented diff: {d}")
        for b in res.mismatches:
            out.append(f"MISMATCH (strength {res.golden.strength}): {b}")
            code = EXIT_MISMATCH
    if missing:
        for res in missing:
            out.append(f"missing data: strength {res.golden.strength} "
                       f"({res.golden.set_spec})")
        if not args.allow_missing:
            code = EXIT_MISSING
    out.append(f"table {table}: " + ("OK" if code == EXIT_OK else "FAILED"))
    text = "\n".join(out)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return code


# ---------------------------------------------------------------------------
# lattice commands
# ---------------------------------------------------------------------------

def cmd_lattice(args) -> int:
    try:
        lat = catalog_load(args.name)
    except CatalogError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_MISSING
    if args.lattice_cmd == "info":
        print(f"name: {lat.name}")
        print(f"dimension: {lat.n}")
        print(f"determinant: {lat.det()}")
        print(f"level: {lat.ell}")
        print(f"minimum: {lat.min_norm}")
        print(f"even: {lat.even}")
        print("gram:")
        for row in lat.gram:
            print("  [" + ", ".join(str(int(x)) for x in row) + "]")
        return EXIT_OK
    if args.lattice_cmd == "shell":
        if args.count_only:
            counts = lat.shells([args.norm], cap=args.cap, count_only=True)
            print(counts[args.norm])
            return EXIT_OK
        shell = lat.shells([args.norm], cap=args.cap)[args.norm]
        print(shell.size)
        return EXIT_OK
    # theta
    series = theta_by_enumeration(lat, args.max_norm, cap=args.cap)
    terms = ["1"]
    for m in range(1, args.max_norm + 1):
        c = series[m]
        if c:
            terms.append(f"{c}q^{m}")
    print(" + ".join(terms))
    return EXIT_OK


# ---------------------------------------------------------------------------
# cubature commands
# ---------------------------------------------------------------------------

def _solve_and_assemble(args):
    nodeset = resolve_set(args.set)
    shells = sorted(set(int(m) for m in args.shells.split(",")))
    t = args.strength
    if len(shells) == 1:
        total = sum(lat.shells(shells, cap=args.cap, count_only=True)[shells[0]]
                    for lat in nodeset.members)
        if total == 0:
            raise ValueError(f"shell {shells[0]} of {nodeset.name} is empty")
        solution = None
        weights = [Fraction(1, total)]
        print(f"single shell: weight forced by normalization, "
              f"W1 = 1/{total}")
    else:
        dims = _group_dims(args.group, t) if args.group else None
        solution = solve_weights_modular(nodeset, shells, t,
                                         group_dims=dims, cap=args.cap,
                                         seed=args.seed)
        if not solution.feasible:
            print(f"infeasible: {solution.message}")
            if solution.weights:
                print("weights: " + _fmt_weights(solution))
            return None, None, None
        print("weights: " + _fmt_weights(solution))
        if solution.skipped_degrees:
            print("degrees without invariant harmonics (no condition): "
                  + ", ".join(map(str, solution.skipped_degrees)))
        weights = solution.weights
    formula = assemble(nodeset, shells, weights, t, cap=args.cap)
    print(f"size: {formula.size} distinct nodes")
    return nodeset, formula, weights


def cmd_cubature(args) -> int:
    try:
        nodeset, formula, _ = _solve_and_assemble(args)
    except CatalogError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_MISSING
    if formula is None:
        return EXIT_MISMATCH
    if args.cubature_cmd == "reduce":
        reduced, report = reduce_support(formula, pair_cap=args.pair_cap)
        print(f"reduced size: {reduced.size} (cap B(n,t) = "
              f"{bound_B(formula.n, formula.t)})")
        if report is not None and not report.passed:
            print("reduced formula failed re-verification; original kept")
            return EXIT_MISMATCH
        formula = reduced
    if args.cubature_cmd == "verify" or args.verify:
        report = verify(formula, pair_cap=args.pair_cap, tol=args.tol)
        if not report.ran:
            print(f"verification skipped: {report.reason}")
        elif report.passed:
            rel = report.strength.max_relative_defect
            print(f"verified at strength {formula.t} "
                  f"(max relative defect {rel:.3e}, "
                  f"sharpness at t+1: {report.strength.sharpness:.3e})")
        else:
            print(f"verification failed: {report.reason}")
            return EXIT_MISMATCH
    if args.output:
        text = (formula.export_csv() if args.format == "csv"
                else formula.export_records())
        with open(args.output, "w") as fh:
            fh.write(text)
        print(f"formula written to {args.output}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# bounds command
# ---------------------------------------------------------------------------

def cmd_bounds(args) -> int:
    n, t = args.n, args.t
    if args.method == "delsarte":
        val = delsarte(n, t)
        if (n, t) in TIGHT_NONEXISTENT:
            print(f"{val + 1} (Delsarte bound {val}; tight design known "
                  "not to exist, bound raised by one)")
        else:
            print(val)
        return EXIT_OK
    if args.method == "B":
        print(bound_B(n, t))
        return EXIT_OK
    if args.method == "yudin":
        res = yudin(n, t)
        print(f"{math.ceil(res.value)} (value {res.value:.6f})")
        return EXIT_OK
    res = lp_estimate(n, t, args.degree, grid=args.grid)
    cert = res.certificate
    print(f"{math.ceil(res.value)} (value {res.value:.6f}, degree "
          f"{cert['degree']}, grid {cert['grid']}, eps {cert['eps']:.3e})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latcub",
        description="Cubature formulas and spherical designs from lattice "
                    "shells, with exact modular-form weight solving and LP "
                    "lower bounds.",
    )
    parser.add_argument("--threads", type=int, default=1,
                        help="accepted for interface stability; results "
                             "never depend on it")
    sub = parser.add_subparsers(dest="command", required=True)

    lat = sub.add_parser("lattice", help="catalog lattice queries")
    lsub = lat.add_subparsers(dest="lattice_cmd", required=True)
    p = lsub.add_parser("info", help="Gram matrix and invariants")
    p.add_argument("name", choices=catalog_names())
    p = lsub.add_parser("shell", help="shell size at a given norm")
    p.add_argument("name", choices=catalog_names())
    p.add_argument("norm", type=int)
    p.add_argument("--count-only", action="store_true",
                   help="count without storing vectors")
    p.add_argument("--cap", type=int, default=DEFAULT_SHELL_CAP)
    p = lsub.add_parser("theta", help="theta series by enumeration")
    p.add_argument("name", choices=catalog_names())
    p.add_argument("--max-norm", type=int, default=8)
    p.add_argument("--cap", type=int, default=DEFAULT_SHELL_CAP)
    lat.set_defaults(func=cmd_lattice)

    cub = sub.add_parser("cubature", help="solve, verify, reduce")
    csub = cub.add_subparsers(dest="cubature_cmd", required=True)
    for name, doc in (("solve", "solve shell weights"),
                      ("verify", "solve and verify directly"),
                      ("reduce", "solve and reduce the support")):
        p = csub.add_parser(name, help=doc)
        p.add_argument("--set", required=True,
                       help="catalog name, optionally with +dual")
        p.add_argument("--shells", required=True,
                       help="comma-separated squared norms")
        p.add_argument("--strength", type=int, required=True)
        p.add_argument("--group", default=None,
                       help="node-set symmetry group (F4T)")
        p.add_argument("--verify", action="store_true")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cap", type=int, default=DEFAULT_SHELL_CAP)
        p.add_argument("--pair-cap", type=int, default=REPRODUCE_PAIR_CAP)
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--format", choices=("csv", "records"), default="csv")
        p.add_argument("--output", default=None)
    cub.set_defaults(func=cmd_cubature)

    bnd = sub.add_parser("bounds", help="lower bounds on formula size")
    bnd.add_argument("--n", type=int, required=True)
    bnd.add_argument("--t", type=int, required=True)
    bnd.add_argument("--method", choices=("delsarte", "lp", "B", "yudin"),
                     required=True)
    bnd.add_argument("--degree", type=int, default=None)
    bnd.add_argument("--grid", type=int, default=2000)
    bnd.set_defaults(func=cmd_bounds)

    rep = sub.add_parser("reproduce",
                         help="recompute a table and compare to its golden file")
    rep.add_argument("table", choices=TABLE_NAMES)
    rep.add_argument("--allow-missing", action="store_true")
    rep.add_argument("--grid", type=int, default=2000)
    rep.add_argument("--pair-cap", type=int, default=REPRODUCE_PAIR_CAP)
    rep.add_argument("--cap", type=int, default=DEFAULT_SHELL_CAP)
    rep.add_argument("--seed", type=int, default=0)
    rep.add_argument("--format", choices=("markdown", "csv"),
                     default="markdown")
    rep.add_argument("--output", default=None)
    rep.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
