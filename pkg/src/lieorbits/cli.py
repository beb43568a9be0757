"""Command-line interface: table reproduction, foliation reports, verification suites."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import catalog, liealg, realforms, rootsys
from .errors import LieOrbitsError
from .rootsys import AdmissibleSystem, Root

# split families realized by the exact engine: family name -> (series, rank fn)
_SPLIT_SERIES = {
    "sl_R": lambda p: ("A", p[0] - 1),
    "sp_R": lambda p: ("C", p[0]),
}

_NUMERIC_FAMILIES = ("sl_R", "sp_R", "so", "su", "sp", "su_star", "so_star")


def _parse_params(text: str) -> Tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def _parse_type(text: str, sys_: rootsys.RootSystem) -> Optional[List[Root]]:
    """Orbit type as simple-root labels: '0' or e.g. 'a1,a3'."""
    text = text.strip().lower()
    if text in ("0", ""):
        return []
    roots = []
    for token in text.split(","):
        token = token.strip()
        if not token.startswith("a"):
            return None
        try:
            idx = int(token[1:])
        except ValueError:
            return None
        if not 1 <= idx <= sys_.rank:
            return None
        roots.append(sys_.simples[idx - 1])
    return roots


def _emit_report(report, fmt: str, out) -> None:
    if fmt == "json":
        payload = {
            "dim_n": report.dim_n_j,
            "checks": report.checks,
            "passed": report.passed,
        }
        print(json.dumps(payload, indent=2, sort_keys=True), file=out)
    else:
        print(f"dim n = {report.dim_n_j}", file=out)
        for name, status in report.checks.items():
            print(f"  {name:12s} {status}", file=out)
        print("PASS" if report.passed else "FAIL", file=out)


def _split_system_for(args) -> Optional[rootsys.RootSystem]:
    if args.series:
        return rootsys.build_root_system(args.series, args.rank)
    if args.family in _SPLIT_SERIES:
        series, rank = _SPLIT_SERIES[args.family](_parse_params(args.params))
        return rootsys.build_root_system(series, rank)
    if args.family == "so":
        p, q = sorted(_parse_params(args.params))
        if q == p + 1:
            return rootsys.build_root_system("B", p)
        if q == p and p >= 4:
            return rootsys.build_root_system("D", p)
    return None


def _cmd_tables(args, out, err) -> int:
    columns = None
    if args.kind == "complex":
        rows = catalog.complex_table(args.max_rank)
    else:
        rows = catalog.real_table(catalog.DEFAULT_REAL_ENTRIES,
                                  include_exceptional=args.include_exceptional)
        columns = catalog.REAL_COLUMNS
    print(catalog.emit(rows, args.format, columns), end="", file=out)
    bad = [r.label for r in rows if r.unexpected_flags]
    if bad:
        print(f"unexpected discrepancies in rows: {', '.join(bad)}", file=err)
        return 1
    return 0


def _exact_foliate(sys_: rootsys.RootSystem, f_roots: List[Root], method: str,
                   complexified: bool):
    mode = "complexified" if complexified else "split"
    sc = liealg.chevalley_basis(sys_, mode)
    if not f_roots:
        csa = liealg.maximally_noncompact_csa(sc)
        sigma = list(sys_.positives)
    else:
        csa = liealg.cayley_csa(sc, AdmissibleSystem(tuple(f_roots)))
        chain = rootsys.sigma_chain(sys_, f_roots, method=method)
        sigma = sorted(chain.stages[-1], key=rootsys._sort_key)
    x = liealg.regular_element(sc, csa)
    return liealg.verify_foliation(sc, csa, x, sigma)


def _numeric_foliate(family: str, params: Tuple[int, ...], type_text: str,
                     method: str, seed: int):
    alg = realforms.realize(family, *params)
    datum = realforms.restricted_decomposition(alg)
    roots = realforms.full_roots(alg, datum)
    type_text = type_text.strip().lower()
    if type_text in ("0", ""):
        count = 0
    elif type_text == "max":
        count = None
    else:
        count = int(type_text)
    so_set = realforms.strongly_orthogonal_real_set(alg, roots)
    f_roots = so_set if count is None else so_set[:count]
    if count is not None and count > len(so_set):
        raise LieOrbitsError(
            f"only {len(so_set)} strongly orthogonal real roots available"
        )
    chain = realforms.cayley_chain(alg, datum, f_roots, all_roots=roots)
    if not f_roots:
        sigma = [sp for _, _, sp in datum.positive_roots()]
    else:
        betas = [_restricted_of(datum, r) for r in f_roots]
        abstract = rootsys.sigma_chain(datum.restricted_system, betas, method=method)
        idx_of = datum.coeff_map
        sigma = [datum.roots[idx_of[r.coeffs]][2]
                 for r in sorted(abstract.stages[-1], key=rootsys._sort_key)]
    return realforms.verify_foliation_numeric(
        alg, chain.h_f_rows, chain.x_regular_coords, sigma, seed=seed)


def _restricted_of(datum, full_root) -> Root:
    av = full_root.a_values
    for coeffs, idx in datum.coeff_map.items():
        target = np.array(datum.roots[idx][0])
        if np.linalg.norm(av - target) < 1e-6 * max(1.0, np.linalg.norm(target)):
            return Root(coeffs)
    raise LieOrbitsError("real root does not restrict onto the computed system")


def _cmd_foliate(args, out, err) -> int:
    sys_ = _split_system_for(args)
    if sys_ is not None and not args.numeric:
        f_roots = _parse_type(args.type, sys_)
        if f_roots is None:
            print(f"bad --type value {args.type!r}", file=err)
            return 2
        if f_roots and not rootsys.is_admissible(sys_, f_roots):
            print("--type does not name an admissible root set", file=err)
            return 2
        report = _exact_foliate(sys_, f_roots, args.method, args.complexified)
    else:
        if not args.family:
            print("--family is required for numeric foliation", file=err)
            return 2
        report = _numeric_foliate(args.family, _parse_params(args.params),
                                  args.type, args.method, args.seed)
    _emit_report(report, args.format, out)
    return 0 if report.passed else 1


def _cmd_admissible(args, out, err) -> int:
    if args.series:
        sys_ = rootsys.build_root_system(args.series, args.rank)
        f = rootsys.max_strongly_orthogonal(sys_, sys_.positives)
        members = sorted(f.members, key=rootsys._sort_key)
        print(f"|F|_max = {len(members)}", file=out)
        for r in members:
            print(f"  root {r.coeffs}", file=out)
        return 0
    if not args.family:
        print("need --series/--rank or --family/--params", file=err)
        return 2
    alg = realforms.realize(args.family, *_parse_params(args.params))
    datum = realforms.restricted_decomposition(alg)
    roots = realforms.full_roots(alg, datum)
    so_set = realforms.strongly_orthogonal_real_set(alg, roots)
    print(f"{alg.family}: |F|_max = {len(so_set)}", file=out)
    for r in so_set:
        vals = np.round(r.values_on_h0.real, 6)
        print(f"  real root, values on h0 = {vals.tolist()}", file=out)
    return 0


# --- verification suites ---------------------------------------------------------

def _suite_isotropy(args, out) -> Tuple[int, int]:
    passed = failed = 0
    for series, rank in [("A", 2), ("B", 2), ("G", 2)]:
        sys_ = rootsys.build_root_system(series, rank)
        cases = [[]] + [[s] for s in sys_.simples
                        if rootsys.is_admissible(sys_, [s])]
        for f_roots in cases:
            rep = _exact_foliate(sys_, f_roots, "greedy", False)
            ok = rep.checks["isotropic"] == "pass"
            passed, failed = passed + ok, failed + (not ok)
            label = "0" if not f_roots else ",".join(str(r.coeffs) for r in f_roots)
            print(f"  exact {series}{rank} type-{label}: "
                  f"{'pass' if ok else 'FAIL'}", file=out)
    for family, params in [("su", (2, 1)), ("su", (2, 2)), ("so", (2, 3)), ("sp", (1, 1))]:
        rep = _numeric_foliate(family, params, "0", "greedy", args.seed)
        ok = rep.checks["isotropic"] == "pass"
        passed, failed = passed + ok, failed + (not ok)
        print(f"  numeric {family}{params} type-0: {'pass' if ok else 'FAIL'}", file=out)
    return passed, failed


def _suite_darboux(args, out) -> Tuple[int, int]:
    passed = failed = 0
    for series, rank in [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 3), ("G", 2)]:
        sys_ = rootsys.build_root_system(series, rank)
        sc = liealg.chevalley_basis(sys_)
        csa = liealg.maximally_noncompact_csa(sc)
        x = liealg.regular_element(sc, csa)
        db = liealg.darboux_basis(sc, x, sys_.positives)
        n = len(db.roots)
        expect = np.block([[np.zeros((n, n)), np.eye(n)], [-np.eye(n), np.zeros((n, n))]])
        worst = 0.0
        for pairing in ("xy", "xxy"):
            gram = np.array(liealg.darboux_gram(sc, x, db, pairing))
            worst = max(worst, float(np.abs(gram - expect).max()))
        ok = worst <= 1e-12
        passed, failed = passed + ok, failed + (not ok)
        print(f"  {series}{rank}: max deviation {worst:.2e} "
              f"{'pass' if ok else 'FAIL'}", file=out)
    return passed, failed


def _suite_ruling(args, out) -> Tuple[int, int]:
    passed = failed = 0
    for series, rank in [("A", 2), ("C", 2), ("G", 2)]:
        sys_ = rootsys.build_root_system(series, rank)
        cases = [[]] + [[s] for s in sys_.simples if rootsys.is_admissible(sys_, [s])]
        for f_roots in cases:
            rep = _exact_foliate(sys_, f_roots, "greedy", False)
            ok = rep.checks["ruling"] == "pass"
            passed, failed = passed + ok, failed + (not ok)
            label = "0" if not f_roots else ",".join(str(r.coeffs) for r in f_roots)
            print(f"  exact {series}{rank} type-{label}: "
                  f"{'pass' if ok else 'FAIL'}", file=out)
    # classical hyperboloid ruling in sl(2,R)
    alg = realforms.realize("sl_R", 2)
    x = np.diag([1.0, -1.0])
    e12 = np.array([[0.0, 1.0], [0.0, 0.0]])
    ok = True
    for t in (1.0, -1.0, 10.0, -10.0):
        g = realforms._nilpotent_exp(alg, t * e12)
        moved = g @ x @ realforms._nilpotent_exp(alg, -t * e12)
        if np.abs(moved - (x - 2 * t * e12)).max() > 1e-12:
            ok = False
    passed, failed = passed + ok, failed + (not ok)
    print(f"  sl(2,R) hyperboloid closed form: {'pass' if ok else 'FAIL'}", file=out)
    return passed, failed


def _suite_cayley(args, out) -> Tuple[int, int]:
    passed = failed = 0
    for family, params in [("sl_R", (3,)), ("sp_R", (2,)), ("so", (2, 3)), ("su", (2, 2))]:
        alg = realforms.realize(family, *params)
        datum = realforms.restricted_decomposition(alg)
        roots = realforms.full_roots(alg, datum)
        so_set = realforms.strongly_orthogonal_real_set(alg, roots)
        k0, p0 = realforms._kp_dims(alg, datum.h0_rows)
        try:
            chain = realforms.cayley_chain(alg, datum, so_set, all_roots=roots)
            kf, pf = realforms._kp_dims(alg, chain.h_f_rows)
            ok = kf == k0 + len(so_set) and pf == p0 - len(so_set)
        except LieOrbitsError as exc:
            print(f"  {alg.family}: {exc}", file=out)
            ok = False
        passed, failed = passed + ok, failed + (not ok)
        print(f"  {alg.family}: |F|={len(so_set)} k-dim {k0}->"
              f"{k0 + len(so_set) if ok else '?'} {'pass' if ok else 'FAIL'}", file=out)
    return passed, failed


def _suite_sigma_oracle(args, out) -> Tuple[int, int]:
    passed = failed = 0
    systems = [rootsys.build_root_system(s, r)
               for s, r in [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 3), ("G", 2)]]
    systems += [rootsys.build_bc_system(1), rootsys.build_bc_system(2)]
    for sys_ in systems:
        name = f"{sys_.series}{sys_.rank}" if sys_.reduced else f"(BC){sys_.rank}"
        subsets = [[s] for s in sys_.simples]
        subsets += [list(pair) for pair in _orthogonal_simple_pairs(sys_)]
        for betas in subsets:
            greedy = rootsys.sigma_chain(sys_, betas, method="greedy")
            oracle = rootsys.sigma_chain(sys_, betas, method="oracle")
            ok = all(len(g) == len(o) for g, o in zip(greedy.stages, oracle.stages))
            passed, failed = passed + ok, failed + (not ok)
            label = ",".join(str(b.coeffs) for b in betas)
            sizes = [len(s) for s in greedy.stages]
            print(f"  {name} betas=[{label}]: stage sizes {sizes} "
                  f"{'pass' if ok else 'FAIL'}", file=out)
    return passed, failed


def _orthogonal_simple_pairs(sys_):
    import itertools
    for a, b in itertools.combinations(sys_.simples, 2):
        if not sys_.contains(a + b) and not sys_.contains(a - b):
            yield (a, b)


_SUITES = {
    "isotropy": _suite_isotropy,
    "darboux": _suite_darboux,
    "ruling": _suite_ruling,
    "cayley": _suite_cayley,
    "sigma-oracle": _suite_sigma_oracle,
}


def _cmd_verify(args, out, err) -> int:
    passed, failed = _SUITES[args.suite](args, out)
    print(f"{args.suite}: {passed} passed, {failed} failed", file=out)
    return 0 if failed == 0 else 1


# --- argument parsing --------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lieorbits",
        description="Isotropic foliations of regular coadjoint orbits "
                    "from the Iwasawa decomposition.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_tables = sub.add_parser("tables", help="reproduce the orbit/foliation data tables")
    p_tables.add_argument("kind", choices=["complex", "real"])
    p_tables.add_argument("--max-rank", type=int, default=8)
    p_tables.add_argument("--format", choices=["csv", "json", "markdown"], default="csv")
    p_tables.add_argument("--include-exceptional", action="store_true")
    p_tables.add_argument("--seed", type=int, default=0)

    def add_algebra_args(p):
        p.add_argument("--family", choices=_NUMERIC_FAMILIES)
        p.add_argument("--params", default="")
        p.add_argument("--n", type=int, help="shorthand for --params n")
        p.add_argument("--series", choices=list("ABCDEFG"))
        p.add_argument("--rank", type=int)
        p.add_argument("--seed", type=int, default=0)

    p_fol = sub.add_parser("foliate", help="construct and check one foliation")
    add_algebra_args(p_fol)
    p_fol.add_argument("--type", default="0",
                       help="orbit type: 0, simple-root labels a1,a3 (exact engine), "
                            "or a chain length / 'max' (numeric engine)")
    p_fol.add_argument("--method", choices=["greedy", "oracle"], default="greedy")
    p_fol.add_argument("--format", choices=["text", "json"], default="text")
    p_fol.add_argument("--complexified", action="store_true")
    p_fol.add_argument("--numeric", action="store_true",
                       help="force the numeric engine even for split families")

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("--suite", choices=sorted(_SUITES), required=True)
    add_algebra_args(p_ver)

    p_adm = sub.add_parser("admissible", help="list a maximal strongly orthogonal real root set")
    add_algebra_args(p_adm)
    return parser


def run(argv: Optional[Sequence[str]] = None,
        out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "n", None) is not None and not args.params:
        args.params = str(args.n)
    try:
        if args.command == "tables":
            return _cmd_tables(args, out, err)
        if args.command == "foliate":
            return _cmd_foliate(args, out, err)
        if args.command == "verify":
            return _cmd_verify(args, out, err)
        if args.command == "admissible":
            return _cmd_admissible(args, out, err)
    except LieOrbitsError as exc:
        print(f"error: {exc}", file=err)
        return 2
    return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
