"""Acceptance suite.

One test per acceptance criterion; each prints a single pass/fail line
(run with ``pytest tests/test_acceptance.py -s`` to see them inline).
Tolerances and runtime budgets are pinned in the individual tests.
"""

import io
import itertools
import time

import numpy as np
import pytest
import scipy.linalg

from lieorbits import catalog, liealg, realforms, rootsys
from lieorbits.cli import _numeric_foliate, run

# ---------------------------------------------------------------------------

# criterion-2 family range (dimension-consistency rows)
CONSISTENT_ENTRIES = (
    [("sl_R", (n,)) for n in (2, 3, 4, 5)]
    + [("sp_R", (n,)) for n in (1, 2, 3)]
    + [("so", (p, q)) for p in range(1, 7) for q in range(p, 8 - p)
       if p + q >= 3 and 3 <= p + q <= 7
       and not (p == q == 2) and {p, q} != {1, 3}]
    + [("su_star", (4,)), ("su_star", (6,))]
    + [("so_star", (4,)), ("so_star", (6,)), ("so_star", (8,))]
    + [("sp", (1, 1)), ("sp", (1, 2))]
)
SU_ENTRIES = [("su", (1, 1)), ("su", (1, 2)), ("su", (2, 2)), ("su", (1, 3))]


def _report(number, name, failures, elapsed=None, budget=None):
    if budget is not None and elapsed is not None and elapsed > budget:
        failures.append(f"runtime {elapsed:.1f}s exceeds {budget}s budget")
    status = "PASS" if not failures else "FAIL"
    suffix = f" [{elapsed:.1f}s]" if elapsed is not None else ""
    print(f"criterion {number} ({name}): {status}{suffix}")
    assert not failures, failures


# --- criterion 1: complex-algebra table ------------------------------------------


def test_criterion_1_complex_table():
    t0 = time.perf_counter()
    failures = []

    def forms(series, n):
        if series == "A":
            return 2 * n * (n + 2), 2 * n, 2 * n * (n + 1)
        if series in ("B", "C"):
            return 2 * n * (2 * n + 1), 2 * n, 4 * n * n
        if series == "D":
            return 2 * n * (2 * n - 1), 2 * n, 4 * n * (n - 1)
        return {"E6": (156, 12, 144), "E7": (266, 14, 252), "E8": (496, 16, 480),
                "F4": (104, 8, 96), "G2": (28, 4, 24)}[series]

    rows = {r.label.split(":")[0]: r.columns for r in catalog.complex_table(4)}
    wanted = ([("A", n) for n in (1, 2, 3, 4)] + [("B", n) for n in (2, 3, 4)]
              + [("C", n) for n in (3, 4)] + [("D", 4)]
              + [("E6", 0), ("E7", 0), ("E8", 0), ("F4", 0), ("G2", 0)])
    for series, n in wanted:
        key = series if n == 0 else f"{series}{n}"
        if key not in rows:
            failures.append(f"missing row {key}")
            continue
        dim, rank, dim_omega = forms(series, n)
        got = rows[key]
        if (got["dim"], got["rank"], got["dim_omega"]) != (dim, rank, dim_omega):
            failures.append(f"{key}: got {got}, want {(dim, rank, dim_omega)}")
        if got["dim_n"] * 2 != dim_omega:
            failures.append(f"{key}: dim_n is not half of dim_omega")
    _report(1, "complex table", failures, time.perf_counter() - t0, budget=5.0)


# --- criterion 2: real-form table ------------------------------------------------


def _independent_row(family, params):
    """Dimension data from textbook closed forms, independent of the engine."""
    if family == "sl_R":
        (n,) = params
        return dict(dim=n * n - 1, rrank=n - 1, split=True,
                    dim_k=n * (n - 1) // 2)
    if family == "sp_R":
        (n,) = params
        return dict(dim=n * (2 * n + 1), rrank=n, split=True, dim_k=n * n)
    if family == "so":
        p, q = min(params), max(params)
        m = p + q
        return dict(dim=m * (m - 1) // 2, rrank=p, split=(q - p <= 1),
                    dim_k=p * (p - 1) // 2 + q * (q - 1) // 2)
    if family == "su_star":
        n = params[0] // 2
        return dict(dim=4 * n * n - 1, rrank=n - 1, split=False,
                    dim_k=n * (2 * n + 1))
    if family == "so_star":
        n = params[0] // 2
        return dict(dim=n * (2 * n - 1), rrank=n // 2, split=False, dim_k=n * n)
    if family == "sp":
        p, q = params
        return dict(dim=(p + q) * (2 * (p + q) + 1), rrank=min(p, q), split=False,
                    dim_k=p * (2 * p + 1) + q * (2 * q + 1))
    raise ValueError(family)


def test_criterion_2_real_table():
    t0 = time.perf_counter()
    failures = []
    rows = catalog.real_table(CONSISTENT_ENTRIES + SU_ENTRIES)
    for (family, params), row in zip(CONSISTENT_ENTRIES + SU_ENTRIES, rows):
        if row.unexpected_flags:
            failures.append(f"{row.label}: unexpected flags {row.unexpected_flags}")
    for (family, params), row in zip(CONSISTENT_ENTRIES, rows):
        want = _independent_row(family, params)
        c = row.columns
        checks = [("dim", want["dim"]),
                  ("rrank", want["rrank"]),
                  ("split", want["split"]),
                  ("dim_omega", want["dim"] - c["rank"]),
                  ("dim_n", want["dim"] - want["dim_k"] - want["rrank"])]
        for col, val in checks:
            if c[col] != val:
                failures.append(f"{row.label}: {col}={c[col]}, want {val}")
    # |F|_max values
    fmax_expected = ([(("sl_R", (n,)), n // 2) for n in (2, 3, 4, 5)]
                     + [(("sp_R", (n,)), n) for n in (1, 2, 3)]
                     + [(("so", (2, 3)), 2)]
                     + [(entry, entry[1][0]) for entry in SU_ENTRIES])
    by_entry = dict(zip(CONSISTENT_ENTRIES + SU_ENTRIES, rows))
    for entry, want in fmax_expected:
        got = by_entry[entry].columns["f_max"]
        if got != want:
            failures.append(f"{entry}: f_max={got}, want {want}")
    # split exceptional |F|_max via exact search
    for series, rank, want in [("G", 2, 2), ("F", 4, 4)]:
        sys_ = rootsys.build_root_system(series, rank)
        got = len(rootsys.max_strongly_orthogonal(sys_, sys_.positives))
        if got != want:
            failures.append(f"{series}{rank}: |F|_max={got}, want {want}")
    # su dimension cells must be present as computed values with a flag
    for entry in SU_ENTRIES:
        row = by_entry[entry]
        if not row.flagged or not row.expected:
            failures.append(f"{row.label}: su discrepancy flag missing")
    _report(2, "real table", failures, time.perf_counter() - t0, budget=60.0)


# --- criterion 3: isotropy -------------------------------------------------------


def _exact_isotropy_failures(series, rank):
    out = []
    sys_ = rootsys.build_root_system(series, rank)
    sc = liealg.chevalley_basis(sys_)
    cases = [rootsys.AdmissibleSystem(members=())]
    cases += [rootsys.max_strongly_orthogonal(sys_, [b]) for b in sys_.simples]
    for f in cases:
        if f.members:
            csa = liealg.cayley_csa(sc, f)
            chain = rootsys.sigma_chain(sys_, list(f.members), method="greedy")
            sigma = chain.stages[-1]
        else:
            csa = liealg.maximally_noncompact_csa(sc)
            sigma = frozenset(sys_.positives)
        X = liealg.regular_element(sc, csa)
        basis = [sc.x(a) for a in sorted(sigma, key=rootsys._sort_key)]
        for u, v in itertools.combinations(basis, 2):
            if liealg.kirillov_form(sc, X, u, v) != 0:
                out.append(f"{series}{rank} type {f.members}: nonzero pairing")
    return out


def test_criterion_3_isotropy():
    t0 = time.perf_counter()
    failures = []
    split_types = ([("A", n) for n in (1, 2, 3, 4)] + [("B", n) for n in (2, 3, 4)]
                   + [("C", n) for n in (2, 3, 4)] + [("D", 4), ("G", 2), ("F", 4)])
    for series, rank in split_types:
        failures += _exact_isotropy_failures(series, rank)
    for family, params in CONSISTENT_ENTRIES + SU_ENTRIES:
        for type_text in ("0", "max"):
            report = _numeric_foliate(family, params, type_text, "greedy", 0)
            if report.checks.get("isotropic") != "pass":
                failures.append(f"{family}{params} type {type_text}: "
                                f"{report.checks.get('isotropic')}")
    _report(3, "isotropy", failures, time.perf_counter() - t0)


# --- criterion 4: Lagrangian/split type-0 ----------------------------------------


def test_criterion_4_lagrangian_split():
    t0 = time.perf_counter()
    failures = []
    systems = ([("A", n) for n in (1, 2, 3, 4)] + [("C", 2), ("C", 3)]
               + [("G", 2), ("F", 4)])
    for series, rank in systems:
        sys_ = rootsys.build_root_system(series, rank)
        sc = liealg.chevalley_basis(sys_)
        csa = liealg.maximally_noncompact_csa(sc)
        X = liealg.regular_element(sc, csa)
        report = liealg.verify_foliation(sc, csa, X, sys_.positives)
        label = f"{series}{rank}"
        if report.dim_n_j * 2 != sc.dim - sc.rank:
            failures.append(f"{label}: dim n != half of dim Omega")
        for check in ("lagrangian", "transversal", "isotropic"):
            if report.checks.get(check) != "pass":
                failures.append(f"{label}: {check}={report.checks.get(check)}")
    _report(4, "Lagrangian type-0", failures, time.perf_counter() - t0)


# --- criterion 5: Darboux coordinates --------------------------------------------


def test_criterion_5_darboux():
    t0 = time.perf_counter()
    failures = []
    for series, rank in [("A", 1), ("A", 2), ("C", 2)]:
        sys_ = rootsys.build_root_system(series, rank)
        sc = liealg.chevalley_basis(sys_)
        csa = liealg.maximally_noncompact_csa(sc)
        X = liealg.regular_element(sc, csa)
        # un-normalized identity, exact
        for a in sys_.positives:
            lhs = liealg.kirillov_form(sc, X, sc.x(a), sc.x(-a))
            rhs = sc.root_value(a, X) * liealg.killing_form(sc, sc.x(a), sc.x(-a))
            if lhs != rhs:
                failures.append(f"{series}{rank}: pairing identity fails at {a.coeffs}")
        db = liealg.darboux_basis(sc, X, sys_.positives)
        m = len(db.roots)
        std = np.block([[np.zeros((m, m)), np.eye(m)],
                        [-np.eye(m), np.zeros((m, m))]])
        for pairing in ("xy", "xxy"):
            gram = np.array(liealg.darboux_gram(sc, X, db, pairing=pairing))
            dev = np.max(np.abs(gram - std))
            if dev > 1e-12:
                failures.append(f"{series}{rank} pairing {pairing}: deviation {dev:.2e}")
    _report(5, "Darboux", failures, time.perf_counter() - t0)


# --- criterion 6: affine rulings -------------------------------------------------


def test_criterion_6_ruling():
    t0 = time.perf_counter()
    failures = []
    for series, rank in [("A", 2), ("C", 2), ("G", 2)]:
        sys_ = rootsys.build_root_system(series, rank)
        sc = liealg.chevalley_basis(sys_)
        csa = liealg.maximally_noncompact_csa(sc)
        X = liealg.regular_element(sc, csa)
        report = liealg.verify_foliation(sc, csa, X, sys_.positives)
        if report.checks.get("ruling") != "pass":
            failures.append(f"{series}{rank}: exact ruling {report.checks.get('ruling')}")
    for family, params, type_text in [("su", (2, 1), "0"), ("so", (2, 3), "max")]:
        report = _numeric_foliate(family, params, type_text, "greedy", 0)
        if report.checks.get("ruling") != "pass":
            failures.append(f"{family}{params}: numeric ruling "
                            f"{report.checks.get('ruling')}")
    # closed form in sl(2,R)
    E = np.array([[0.0, 1.0], [0.0, 0.0]])
    X = np.diag([1.0, -1.0])
    for t in (1.0, -1.0, 10.0, -10.0):
        g = scipy.linalg.expm(t * E)
        lhs = g @ X @ np.linalg.inv(g)
        rhs = X - 2.0 * t * E
        if np.max(np.abs(lhs - rhs)) > 1e-12:
            failures.append(f"sl(2,R) closed form fails at t={t}")
    _report(6, "ruling", failures, time.perf_counter() - t0)


# --- criterion 7: Cayley chains --------------------------------------------------


def _chain_candidates(alg, roots):
    reals = [r for r in realforms.real_roots(roots)
             if realforms._lex_positive(r.values_on_h0.real)]
    chains = [[r] for r in reals]
    for r1, r2 in itertools.combinations(reals, 2):
        s = r1.values_on_h0 + r2.values_on_h0
        d = r1.values_on_h0 - r2.values_on_h0
        if not realforms._roots_contain(roots, s) and \
                not realforms._roots_contain(roots, d):
            chains.append([r1, r2])
    return chains


def test_criterion_7_cayley():
    t0 = time.perf_counter()
    failures = []
    for family, params in [("sl_R", (3,)), ("sp_R", (2,)), ("so", (2, 3)),
                           ("su", (2, 2))]:
        alg = realforms.realize(family, *params)
        datum = realforms.restricted_decomposition(alg)
        roots = realforms.full_roots(alg, datum)
        theta = alg.theta_coords()
        k0, p0 = realforms._kp_dims(alg, datum.h0_rows)
        for F in _chain_candidates(alg, roots):
            label = f"{family}{params} |F|={len(F)}"
            chain = realforms.cayley_chain(alg, datum, F, all_roots=roots)
            for j, step in enumerate(chain.steps, start=1):
                if step.p_dim != p0 - j:
                    failures.append(f"{label}: p-dim not decremented at step {j}")
            final = chain.steps[-1]
            if final.k_dim != k0 + len(F):
                failures.append(f"{label}: k-dim h_F != k-dim h_0 + |F|")
            # the transform of each chain root fixes every other root's E and H
            for i, step in enumerate(chain.steps):
                e = step.e_vector
                d_op = scipy.linalg.expm(
                    (1j * np.pi / 4.0)
                    * (alg.ad_coords(theta @ e) - alg.ad_coords(e)))
                for j, other in enumerate(chain.steps):
                    if i == j:
                        continue
                    h_other = other.root.dual_coords.real @ datum.h0_rows
                    for vec, tag in ((other.e_vector, "E"), (h_other, "H")):
                        err = np.linalg.norm(d_op @ vec - vec)
                        if err > 1e-7 * max(1.0, np.linalg.norm(vec)):
                            failures.append(
                                f"{label}: {tag}-dual moved by {err:.2e}")
    _report(7, "Cayley chains", failures, time.perf_counter() - t0)


# --- criterion 8: greedy vs oracle -----------------------------------------------


def test_criterion_8_sigma_oracle():
    t0 = time.perf_counter()
    failures = []
    systems = [rootsys.build_root_system("A", 1), rootsys.build_root_system("A", 2),
               rootsys.build_root_system("A", 3), rootsys.build_root_system("B", 2),
               rootsys.build_root_system("C", 3), rootsys.build_root_system("G", 2),
               rootsys.build_bc_system(1), rootsys.build_bc_system(2)]
    for sys_ in systems:
        assert len(sys_.positives) <= 12
        pos = sorted(sys_.positives, key=rootsys._sort_key)
        chains = [[b] for b in sys_.simples]
        chains += [list(p) for p in itertools.combinations(pos, 2)
                   if rootsys.is_admissible(sys_, list(p))]
        for betas in chains:
            g = rootsys.sigma_chain(sys_, betas, method="greedy")
            o = rootsys.sigma_chain(sys_, betas, method="oracle")
            if [len(s) for s in g.stages] != [len(s) for s in o.stages]:
                failures.append(
                    f"rank {len(sys_.simples)} chain {[b.coeffs for b in betas]}: "
                    f"greedy {[len(s) for s in g.stages]} "
                    f"oracle {[len(s) for s in o.stages]}")
    _report(8, "greedy/oracle equivalence", failures,
            time.perf_counter() - t0, budget=120.0)


# --- criterion 9: determinism ----------------------------------------------------


def test_criterion_9_determinism():
    t0 = time.perf_counter()
    failures = []
    invocations = [
        ["tables", "real", "--format", "json", "--seed", "0"],
        ["tables", "complex", "--max-rank", "3", "--format", "csv"],
        ["foliate", "--family", "su", "--params", "2,2", "--type", "max",
         "--format", "json", "--seed", "0"],
        ["foliate", "--series", "C", "--rank", "3", "--type", "a1",
         "--format", "json"],
        ["verify", "--suite", "darboux"],
        ["admissible", "--family", "sp_R", "--params", "2"],
    ]
    for argv in invocations:
        outputs = []
        for _ in range(2):
            out, err = io.StringIO(), io.StringIO()
            code = run(list(argv), out=out, err=err)
            outputs.append((code, out.getvalue(), err.getvalue()))
        if outputs[0] != outputs[1]:
            failures.append(f"{' '.join(argv)}: outputs differ between runs")
    _report(9, "determinism", failures, time.perf_counter() - t0)
