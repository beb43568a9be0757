"""Numeric matrix realizations of classical real forms.

Each family is realized by an explicit real-matrix basis, with complex and
quaternionic entries realified into 2x2 / 4x4 blocks so that the Cartan
involution is negative-transpose throughout.  On top of the realization sit
the Cartan decomposition, restricted-root data (joint eigenspaces of ad over
a maximal abelian subspace of p), full roots of the complexification, Cayley
chains through real roots, and tolerance-based foliation checks.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from . import rootsys
from .errors import (
    AdmissibilityError,
    InternalInconsistencyError,
    InvalidFamilyError,
    InvolutionError,
    MaximalityError,
    MembershipError,
    NotNilpotentError,
    NotRegularError,
    RealRootExtractionError,
    RegularitySearchError,
    SpectralToleranceError,
)
from .rootsys import RestrictedSystem, RootSystem, build_bc_system, build_root_system

TOL_CLUSTER = 1e-8
TOL_VERIFY = 1e-7
TOL_CLOSURE = 1e-10

_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71]


# --- realification blocks ----------------------------------------------------

_C_ONE = np.eye(2)
_C_I = np.array([[0.0, -1.0], [1.0, 0.0]])

# left-multiplication representation of the quaternions; conjugation <-> transpose
_Q_ONE = np.eye(4)
_Q_I = np.array([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], dtype=float)
_Q_J = np.array([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]], dtype=float)
_Q_K = _Q_I @ _Q_J
_Q_UNITS = [_Q_ONE, _Q_I, _Q_J, _Q_K]


def _realify_complex(m: np.ndarray) -> np.ndarray:
    return np.kron(m.real, _C_ONE) + np.kron(m.imag, _C_I)


def _realify_quaternion(parts: Sequence[np.ndarray]) -> np.ndarray:
    return sum(np.kron(p, u) for p, u in zip(parts, _Q_UNITS))


# --- family bases -------------------------------------------------------------

def _basis_sl_R(n: int) -> List[np.ndarray]:
    if n < 2:
        raise InvalidFamilyError("sl(n,R) needs n >= 2")
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                m = np.zeros((n, n))
                m[i, j] = 1.0
                out.append(m)
    for i in range(n - 1):
        m = np.zeros((n, n))
        m[i, i], m[i + 1, i + 1] = 1.0, -1.0
        out.append(m)
    return out


def _basis_so_pq(p: int, q: int) -> List[np.ndarray]:
    if p < 1 or q < 1 or p + q < 3:
        raise InvalidFamilyError("so(p,q) needs p,q >= 1 and p+q >= 3")
    if {p, q} == {1, 3} or (p == 2 and q == 2):
        raise InvalidFamilyError(f"so({p},{q}) is excluded (non-simple or complex)")
    n = p + q
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            m = np.zeros((n, n))
            if (i < p) == (j < p):
                m[i, j], m[j, i] = 1.0, -1.0  # skew inside a definite block
            else:
                m[i, j], m[j, i] = 1.0, 1.0  # symmetric across blocks
            out.append(m)
    return out


def _basis_su_pq(p: int, q: int) -> List[np.ndarray]:
    if p < 1 or q < 1:
        raise InvalidFamilyError("su(p,q) needs p,q >= 1")
    n = p + q
    eps = [1.0] * p + [-1.0] * q
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for unit in (1.0, 1.0j):
                z = np.zeros((n, n), dtype=complex)
                z[i, j] = unit
                z[j, i] = -eps[i] * eps[j] * np.conj(unit)
                out.append(_realify_complex(z))
    for k in range(n - 1):
        z = np.zeros((n, n), dtype=complex)
        z[k, k], z[k + 1, k + 1] = 1.0j, -1.0j
        out.append(_realify_complex(z))
    return out


def _basis_sp_R(n: int) -> List[np.ndarray]:
    if n < 1:
        raise InvalidFamilyError("sp(n,R) needs n >= 1")
    out = []
    for i in range(n):
        for j in range(n):
            m = np.zeros((2 * n, 2 * n))
            m[i, j], m[n + j, n + i] = 1.0, -1.0
            out.append(m)
    for sym_block in (0, 1):  # B then C
        for i in range(n):
            for j in range(i, n):
                m = np.zeros((2 * n, 2 * n))
                if sym_block == 0:
                    m[i, n + j] = m[j, n + i] = 1.0
                else:
                    m[n + i, j] = m[n + j, i] = 1.0
                out.append(m)
    return out


def _basis_sp_pq(p: int, q: int) -> List[np.ndarray]:
    if p < 1 or q < 1:
        raise InvalidFamilyError("sp(p,q) needs p,q >= 1")
    n = p + q
    eps = [1.0] * p + [-1.0] * q
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for u in range(4):
                parts = [np.zeros((n, n)) for _ in range(4)]
                parts[u][i, j] = 1.0
                # quaternionic skew-adjointness w.r.t. diag(I_p, -I_q)
                conj_sign = 1.0 if u == 0 else -1.0
                parts[u][j, i] = -eps[i] * eps[j] * conj_sign
                out.append(_realify_quaternion(parts))
    for i in range(n):
        for u in range(1, 4):
            parts = [np.zeros((n, n)) for _ in range(4)]
            parts[u][i, i] = 1.0
            out.append(_realify_quaternion(parts))
    return out


def _basis_su_star(two_n: int) -> List[np.ndarray]:
    if two_n < 4 or two_n % 2:
        raise InvalidFamilyError("su*(2n) needs even size >= 4")
    n = two_n // 2
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                for u in range(4):
                    parts = [np.zeros((n, n)) for _ in range(4)]
                    parts[u][i, j] = 1.0
                    out.append(_realify_quaternion(parts))
    for i in range(n):
        for u in range(1, 4):
            parts = [np.zeros((n, n)) for _ in range(4)]
            parts[u][i, i] = 1.0
            out.append(_realify_quaternion(parts))
    for i in range(n - 1):
        parts = [np.zeros((n, n)) for _ in range(4)]
        parts[0][i, i], parts[0][i + 1, i + 1] = 1.0, -1.0
        out.append(_realify_quaternion(parts))
    return out


def _basis_so_star(two_n: int) -> List[np.ndarray]:
    if two_n < 4 or two_n % 2:
        raise InvalidFamilyError("so*(2n) needs even size >= 4")
    n = two_n // 2

    def embed(z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
        top = np.hstack([z1, z2])
        bot = np.hstack([-np.conj(z2), np.conj(z1)])
        return _realify_complex(np.vstack([top, bot]))

    out = []
    zero = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i + 1, n):
            for unit in (1.0, 1.0j):
                z1 = np.zeros((n, n), dtype=complex)
                z1[i, j], z1[j, i] = unit, -unit  # complex skew-symmetric
                out.append(embed(z1, zero))
    for i in range(n):  # hermitian Z2: real diagonal
        z2 = np.zeros((n, n), dtype=complex)
        z2[i, i] = 1.0
        out.append(embed(zero, z2))
    for i in range(n):
        for j in range(i + 1, n):
            z2 = np.zeros((n, n), dtype=complex)
            z2[i, j] = z2[j, i] = 1.0
            out.append(embed(zero, z2))
            z2 = np.zeros((n, n), dtype=complex)
            z2[i, j], z2[j, i] = 1.0j, -1.0j
            out.append(embed(zero, z2))
    return out


# --- the algebra container ----------------------------------------------------

@dataclass
class MatrixAlgebra:
    family: str
    ambient_dim: int
    basis: List[np.ndarray]
    _flat_pinv: np.ndarray = field(repr=False, default=None)
    _ad: Optional[np.ndarray] = field(repr=False, default=None)
    _killing: Optional[np.ndarray] = field(repr=False, default=None)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, m: np.ndarray) -> np.ndarray:
        c = self._flat_pinv @ m.reshape(-1)
        if np.linalg.norm(self.from_coords(c) - m) > TOL_CLOSURE * max(1.0, np.linalg.norm(m)):
            raise MembershipError(f"matrix does not lie in {self.family}")
        return c

    def from_coords(self, c: np.ndarray) -> np.ndarray:
        return np.tensordot(np.asarray(c, dtype=float), np.array(self.basis), axes=1)

    def theta_matrix(self, m: np.ndarray) -> np.ndarray:
        return -m.T

    def theta_coords(self) -> np.ndarray:
        return np.column_stack([self.coords(-b.T) for b in self.basis])

    def ad_tensor(self) -> np.ndarray:
        """ad[i] is the matrix of ad(basis_i) in basis coordinates."""
        if self._ad is None:
            d = self.dim
            ad = np.empty((d, d, d))
            for i, bi in enumerate(self.basis):
                for j, bj in enumerate(self.basis):
                    ad[i, :, j] = self.coords(bi @ bj - bj @ bi)
            self._ad = ad
        return self._ad

    def ad_coords(self, c: np.ndarray) -> np.ndarray:
        return np.tensordot(np.asarray(c, dtype=float), self.ad_tensor(), axes=1)

    def killing(self) -> np.ndarray:
        if self._killing is None:
            ad = self.ad_tensor()
            self._killing = np.einsum("ikl,jlk->ij", ad, ad)
        return self._killing

    def killing_pair(self, c1: np.ndarray, c2: np.ndarray) -> float:
        return float(c1 @ self.killing() @ c2)


def realize(family: str, *params: int) -> MatrixAlgebra:
    builders = {
        "sl_R": (_basis_sl_R, 1),
        "so": (_basis_so_pq, 2),
        "su": (_basis_su_pq, 2),
        "sp_R": (_basis_sp_R, 1),
        "sp": (_basis_sp_pq, 2),
        "su_star": (_basis_su_star, 1),
        "so_star": (_basis_so_star, 1),
    }
    if family not in builders:
        raise InvalidFamilyError(f"unknown family {family!r}")
    builder, arity = builders[family]
    if len(params) != arity:
        raise InvalidFamilyError(f"{family} takes {arity} parameter(s)")
    basis = builder(*params)
    name = f"{family}({','.join(str(p) for p in params)})"
    flat = np.array([b.reshape(-1) for b in basis]).T
    if np.linalg.matrix_rank(flat, tol=1e-10) != len(basis):
        raise InternalInconsistencyError(f"{name}: basis not independent")
    alg = MatrixAlgebra(family=name, ambient_dim=basis[0].shape[0], basis=basis,
                        _flat_pinv=np.linalg.pinv(flat))
    _check_invariants(alg)
    return alg


def _check_invariants(alg: MatrixAlgebra) -> None:
    scale = max(np.linalg.norm(b) for b in alg.basis)
    for bi, bj in itertools.combinations(alg.basis, 2):
        br = bi @ bj - bj @ bi
        try:
            alg.coords(br)
        except MembershipError:
            raise InternalInconsistencyError(f"{alg.family}: not closed under bracket")
        ti, tj = -bi.T, -bj.T
        if np.linalg.norm(-(br.T) - (ti @ tj - tj @ ti)) > TOL_CLOSURE * scale ** 2:
            raise InvolutionError(f"{alg.family}: theta is not an automorphism")
    k_c, p_c = cartan_decompose(alg)
    killing = alg.killing()
    for rows, sign, name in ((k_c, -1.0, "k"), (p_c, 1.0, "p")):
        if len(rows) == 0:
            continue
        gram = sign * (rows @ killing @ rows.T)
        if np.linalg.eigvalsh(gram).min() <= 0:
            raise InvolutionError(f"{alg.family}: Killing form has wrong sign on {name}")


def _orth_rows(rows: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis (as rows) of the row space."""
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    if rows.size == 0:
        return np.zeros((0, rows.shape[1] if rows.ndim == 2 else 0))
    u, s, vt = np.linalg.svd(rows, full_matrices=False)
    keep = s > tol * max(1.0, s[0] if len(s) else 1.0)
    return vt[keep]


def _nullspace(a: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Orthonormal basis (rows) of the right nullspace."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if a.shape[0] == 0:
        return np.eye(a.shape[1])
    u, s, vt = np.linalg.svd(a)
    nkeep = int(np.sum(s > tol * max(1.0, s[0])))
    return vt[nkeep:]


def _numeric_rank(rows: np.ndarray, tol: float = 1e-8) -> int:
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    if rows.size == 0:
        return 0
    s = np.linalg.svd(rows, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0])))


def _intersection_dim(a: np.ndarray, b: np.ndarray, tol: float = 1e-8) -> int:
    ra, rb = _numeric_rank(a, tol), _numeric_rank(b, tol)
    if ra == 0 or rb == 0:
        return 0
    return ra + rb - _numeric_rank(np.vstack([np.atleast_2d(a), np.atleast_2d(b)]), tol)


def cartan_decompose(alg: MatrixAlgebra) -> Tuple[np.ndarray, np.ndarray]:
    """Coordinate bases (rows) of the +1/-1 eigenspaces of negative-transpose."""
    theta = alg.theta_coords()
    eye = np.eye(alg.dim)
    k_rows = _orth_rows(((theta + eye) / 2.0).T)
    p_rows = _orth_rows(((eye - theta) / 2.0).T)
    if len(k_rows) + len(p_rows) != alg.dim:
        raise InvolutionError(f"{alg.family}: theta eigenspaces do not fill the algebra")
    return k_rows, p_rows


@dataclass
class RestrictedDatum:
    a_basis: List[np.ndarray]
    roots: List[Tuple[Tuple[float, ...], int, np.ndarray]]  # (functional, mult, space rows)
    m_basis: List[np.ndarray]
    t_basis: List[np.ndarray]
    h0_basis: List[np.ndarray]
    a_rows: np.ndarray
    m_rows: np.ndarray
    t_rows: np.ndarray
    h0_rows: np.ndarray  # t rows first, then a rows
    restricted_system: RestrictedSystem
    simple_functionals: List[np.ndarray]
    coeff_map: Dict[Tuple[int, ...], int]  # abstract root coeffs -> index into roots

    @property
    def real_rank(self) -> int:
        return len(self.a_basis)

    @property
    def rank(self) -> int:
        return len(self.h0_basis)

    def positive_roots(self) -> List[Tuple[Tuple[float, ...], int, np.ndarray]]:
        return [r for r in self.roots if _lex_positive(np.array(r[0]))]


def _lex_positive(vals: np.ndarray, tol: float = 1e-7) -> bool:
    for v in vals:
        if abs(v) > tol:
            return v > 0
    return False


def _generic_combination(rows: np.ndarray, offset: int = 0) -> np.ndarray:
    w = np.sqrt(np.array(_PRIMES[offset:offset + len(rows)], dtype=float))
    return w @ rows


def _centralizer_in(alg: MatrixAlgebra, x_coords: np.ndarray, space_rows: np.ndarray) -> np.ndarray:
    """Rows spanning {y in span(space_rows) : [x, y] = 0}."""
    ad_x = alg.ad_coords(x_coords)
    m = ad_x @ space_rows.T  # dim x subspace-dim
    ns = _nullspace(m)
    if ns.size == 0:
        return np.zeros((0, alg.dim))
    return _orth_rows(ns @ space_rows)


def restricted_decomposition(alg: MatrixAlgebra) -> RestrictedDatum:
    k_rows, p_rows = cartan_decompose(alg)
    a_rows = None
    for attempt in range(5):
        x = _generic_combination(p_rows, offset=attempt)
        cand = _centralizer_in(alg, x, p_rows)
        ok = all(
            np.linalg.norm(alg.ad_coords(cand[i]) @ cand[j]) < 1e-7
            for i in range(len(cand))
            for j in range(i + 1, len(cand))
        )
        if ok:
            a_rows = cand
            break
    if a_rows is None:
        raise MaximalityError(f"{alg.family}: could not find an abelian centralizer in p")
    # maximality: the centralizer of a inside p must be a itself
    stacked = np.vstack([alg.ad_coords(row) @ p_rows.T for row in a_rows])
    z_pa = _nullspace(stacked)
    if len(z_pa) != len(a_rows):
        raise MaximalityError(f"{alg.family}: a is not maximal abelian in p")

    roots, zero_rows = _joint_eigenspaces(alg, a_rows)

    # m = Z_k(a), t = a Cartan subalgebra of m via a generic centralizer
    stacked_k = np.vstack([alg.ad_coords(row) @ k_rows.T for row in a_rows])
    m_ns = _nullspace(stacked_k)
    m_rows = _orth_rows(m_ns @ k_rows) if m_ns.size else np.zeros((0, alg.dim))
    if len(m_rows):
        xm = _generic_combination(m_rows)
        t_rows = _centralizer_in(alg, xm, m_rows)
        for i in range(len(t_rows)):
            for j in range(i + 1, len(t_rows)):
                if np.linalg.norm(alg.ad_coords(t_rows[i]) @ t_rows[j]) > 1e-7:
                    raise MaximalityError(f"{alg.family}: generic centralizer in m not abelian")
    else:
        t_rows = np.zeros((0, alg.dim))
    h0_rows = np.vstack([t_rows, a_rows]) if len(t_rows) else a_rows

    total = sum(mult for _, mult, _ in roots) + len(m_rows) + len(a_rows)
    if total != alg.dim:
        raise InternalInconsistencyError(
            f"{alg.family}: restricted spaces sum to {total}, expected {alg.dim}"
        )

    system, simples, coeff_map = _identify_restricted_system(alg, a_rows, roots)
    to_mats = lambda rows: [alg.from_coords(r) for r in rows]
    return RestrictedDatum(
        a_basis=to_mats(a_rows), roots=roots, m_basis=to_mats(m_rows),
        t_basis=to_mats(t_rows), h0_basis=to_mats(h0_rows),
        a_rows=a_rows, m_rows=m_rows, t_rows=t_rows, h0_rows=h0_rows,
        restricted_system=system, simple_functionals=simples, coeff_map=coeff_map,
    )


def _joint_eigenspaces(alg: MatrixAlgebra, a_rows: np.ndarray):
    """Simultaneous eigenspaces of ad over an a-basis, via a B_theta-symmetric form."""
    theta = alg.theta_coords()
    s = -alg.killing() @ theta  # positive definite inner product
    s = (s + s.T) / 2.0
    L = np.linalg.cholesky(s)
    Linv_t = np.linalg.inv(L).T

    def sym_ad(row):
        return L.T @ alg.ad_coords(row) @ Linv_t

    ads = [sym_ad(row) for row in a_rows]
    generic = sum(np.sqrt(p) * m for p, m in zip(_PRIMES, ads))
    generic = (generic + generic.T) / 2.0
    evals, evecs = np.linalg.eigh(generic)
    scale = max(1.0, np.abs(evals).max())
    clusters: List[List[int]] = [[0]]
    for i in range(1, len(evals)):
        if evals[i] - evals[clusters[-1][-1]] < TOL_CLUSTER * scale * 10:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    roots = []
    zero_rows = None
    for cl in clusters:
        v = evecs[:, cl]
        vals = []
        for m in ads:
            lam = float(np.trace(v.T @ m @ v) / len(cl))
            resid = np.linalg.norm(m @ v - lam * v)
            if resid > TOL_CLUSTER * 100 * max(1.0, np.linalg.norm(m)):
                raise SpectralToleranceError(
                    f"{alg.family}: joint eigenspace residual {resid:.2e}"
                )
            vals.append(lam)
        rows = _orth_rows((Linv_t @ v).T)
        if max(abs(x) for x in vals) < 1e-7:
            zero_rows = rows
        else:
            roots.append((tuple(vals), len(cl), rows))
    return roots, zero_rows


def _identify_restricted_system(alg: MatrixAlgebra, a_rows: np.ndarray, roots):
    """Match the computed functionals to an abstract (possibly BC) root system."""
    funcs = [np.array(f) for f, _, _ in roots]
    pos = [f for f in funcs if _lex_positive(f)]

    def find(v) -> Optional[int]:
        for i, f in enumerate(funcs):
            if np.linalg.norm(f - v) < 1e-6 * max(1.0, np.linalg.norm(v)):
                return i
        return None

    simples = []
    for lam in pos:
        is_sum = False
        for mu in pos:
            nu = lam - mu
            if np.linalg.norm(nu) < 1e-7:
                continue
            if _lex_positive(nu) and find(nu) is not None:
                is_sum = True
                break
        if not is_sum:
            simples.append(lam)
    simples.sort(key=lambda f: tuple(-f))

    gram_a = a_rows @ alg.killing() @ a_rows.T
    ginv = np.linalg.inv(gram_a)

    def ip(f, g) -> float:
        return float(f @ ginv @ g)

    r = len(simples)
    cartan = [[int(round(2 * ip(si, sj) / ip(sj, sj))) for sj in simples] for si in simples]
    for i, si in enumerate(simples):
        for j, sj in enumerate(simples):
            exact = 2 * ip(si, sj) / ip(sj, sj)
            if abs(exact - cartan[i][j]) > 1e-6:
                raise SpectralToleranceError(f"{alg.family}: non-integral Cartan pairing {exact}")

    has_double = any(find(2 * f) is not None for f in pos)
    candidates: List[RootSystem] = []
    if has_double:
        candidates.append(build_bc_system(r))
    else:
        for series in "ABCDEFG":
            try:
                candidates.append(build_root_system(series, r))
            except Exception:
                continue
    for system in candidates:
        target = [
            [int(2 * rootsys.inner_product(system, si, sj)
                 / rootsys.inner_product(system, sj, sj))
             for sj in system.simples]
            for si in system.simples
        ]
        for perm in itertools.permutations(range(r)):
            if all(cartan[perm[i]][perm[j]] == target[i][j] for i in range(r) for j in range(r)):
                coeff_map: Dict[Tuple[int, ...], int] = {}
                ok = True
                for root in system.roots:
                    vec = sum(c * simples[perm[i]] for i, c in enumerate(root.coeffs))
                    idx = find(vec)
                    if idx is None:
                        ok = False
                        break
                    coeff_map[root.coeffs] = idx
                if not ok or len(set(coeff_map.values())) != len(roots):
                    continue
                mults = {c: roots[i][1] for c, i in coeff_map.items()}
                restricted = RestrictedSystem(system=system, multiplicities=mults)
                return restricted, [simples[perm[i]] for i in range(r)], coeff_map
    raise InternalInconsistencyError(f"{alg.family}: restricted system not identified")


# --- full roots of the complexification ---------------------------------------

@dataclass
class FullRoot:
    values_on_h0: np.ndarray  # complex, ordered t-part then a-part
    classification: str  # real | imaginary | complex
    dual_coords: np.ndarray  # complex coordinates of H_alpha over the h0 basis
    eigvec: np.ndarray  # complex vector in basis coordinates (root space over C)
    t_dim: int

    @property
    def a_values(self) -> np.ndarray:
        return self.values_on_h0[self.t_dim:].real

    def dual_matrix(self, alg: MatrixAlgebra, datum: "RestrictedDatum") -> np.ndarray:
        c = (self.dual_coords.real @ datum.h0_rows)
        return alg.from_coords(c)


def full_roots(alg: MatrixAlgebra, datum: RestrictedDatum) -> List[FullRoot]:
    h0 = datum.h0_rows
    t_dim = len(datum.t_rows)
    ads = [alg.ad_coords(row) for row in h0]
    generic = sum(np.sqrt(p) * m for p, m in zip(_PRIMES, ads))
    evals, evecs = np.linalg.eig(generic)
    scale = max(1.0, np.abs(evals).max())
    used = np.zeros(len(evals), dtype=bool)
    out: List[FullRoot] = []
    gram_h0 = h0 @ alg.killing() @ h0.T
    for i in range(len(evals)):
        if used[i]:
            continue
        group = [j for j in range(len(evals)) if not used[j]
                 and abs(evals[j] - evals[i]) < TOL_CLUSTER * scale * 10]
        for j in group:
            used[j] = True
        if abs(evals[i]) < 1e-6 * scale:
            if len(group) != datum.rank:
                raise SpectralToleranceError(
                    f"{alg.family}: zero eigenspace of a generic CSA element has "
                    f"dimension {len(group)}, expected rank {datum.rank}"
                )
            continue
        if len(group) != 1:
            raise SpectralToleranceError(
                f"{alg.family}: root space not one-dimensional at tolerance"
            )
        v = evecs[:, group[0]]
        vals = []
        for m in ads:
            lam = complex(np.vdot(v, m @ v) / np.vdot(v, v))
            if np.linalg.norm(m @ v - lam * v) > TOL_VERIFY * 10 * max(1.0, np.linalg.norm(m)):
                raise SpectralToleranceError(f"{alg.family}: root value residual too large")
            vals.append(lam)
        vals = np.array(vals)
        t_small = t_dim == 0 or np.abs(vals[:t_dim]).max() < TOL_CLUSTER * 10 * scale
        a_small = len(vals) == t_dim or np.abs(vals[t_dim:]).max() < TOL_CLUSTER * 10 * scale
        if t_small and np.abs(vals.imag).max() < TOL_CLUSTER * 10 * scale:
            cls = "real"
        elif a_small:
            cls = "imaginary"
        else:
            cls = "complex"
        dual = np.linalg.solve(gram_h0, vals)
        out.append(FullRoot(values_on_h0=vals, classification=cls,
                            dual_coords=dual, eigvec=v, t_dim=t_dim))
    _verify_restriction(alg, datum, out)
    return out


def _verify_restriction(alg: MatrixAlgebra, datum: RestrictedDatum, roots: List[FullRoot]) -> None:
    targets = [np.array(f) for f, _, _ in datum.roots]
    hit = [False] * len(targets)
    for root in roots:
        av = root.a_values
        if np.abs(av).max() < 1e-6:
            continue
        matched = False
        for i, t in enumerate(targets):
            if np.linalg.norm(av - t) < 1e-6 * max(1.0, np.linalg.norm(t)):
                hit[i] = True
                matched = True
                break
        if not matched:
            raise InternalInconsistencyError(f"{alg.family}: root restriction misses Sigma")
    if not all(hit):
        raise InternalInconsistencyError(f"{alg.family}: restriction onto Sigma not onto")


def real_roots(roots: List[FullRoot]) -> List[FullRoot]:
    return [r for r in roots if r.classification == "real"]


def _roots_contain(roots: List[FullRoot], vals: np.ndarray, tol: float = 1e-6) -> bool:
    scale = max(1.0, np.linalg.norm(vals))
    return any(np.linalg.norm(r.values_on_h0 - vals) < tol * scale for r in roots)


def strongly_orthogonal_real_set(
    alg: MatrixAlgebra, roots: List[FullRoot], maximize: bool = True
) -> List[FullRoot]:
    """A maximum pairwise strongly orthogonal set of (positive) real roots."""
    reals = [r for r in real_roots(roots) if _lex_positive(r.values_on_h0.real)]
    n = len(reals)
    compat = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            s = reals[i].values_on_h0 + reals[j].values_on_h0
            d = reals[i].values_on_h0 - reals[j].values_on_h0
            compat[i][j] = compat[j][i] = (
                not _roots_contain(roots, s) and not _roots_contain(roots, d)
            )
    best: List[int] = []

    def extend(current: List[int], start: int) -> None:
        nonlocal best
        if len(current) > len(best):
            best = list(current)
        if not maximize and best:
            return
        for i in range(start, n):
            if len(current) + (n - i) <= len(best):
                break
            if all(compat[i][j] for j in current):
                current.append(i)
                extend(current, i + 1)
                current.pop()

    extend([], 0)
    return [reals[i] for i in best]


# --- Cayley chains -------------------------------------------------------------

@dataclass
class CayleyStep:
    root: FullRoot
    e_vector: np.ndarray  # real coordinates
    k_dim: int
    p_dim: int


@dataclass
class CayleyChain:
    h_f_rows: np.ndarray
    h_f_basis: List[np.ndarray]
    x_regular: np.ndarray
    x_regular_coords: np.ndarray
    steps: List[CayleyStep]


def _extract_real_root_vector(alg: MatrixAlgebra, datum: RestrictedDatum, root: FullRoot) -> np.ndarray:
    ads = [alg.ad_coords(row) for row in datum.h0_rows]
    vals = root.values_on_h0.real
    for cand in (root.eigvec.real, root.eigvec.imag):
        nv = np.linalg.norm(cand)
        if nv < 1e-8:
            continue
        resid = max(
            np.linalg.norm(m @ cand - lam * cand) / max(1.0, np.linalg.norm(m) * nv)
            for m, lam in zip(ads, vals)
        )
        if resid < TOL_VERIFY:
            return cand / nv
    raise RealRootExtractionError(f"{alg.family}: no real vector spans the root space")


def _kp_dims(alg: MatrixAlgebra, rows: np.ndarray) -> Tuple[int, int]:
    theta = alg.theta_coords()
    k_part = (rows @ theta.T + rows) / 2.0
    p_part = (rows - rows @ theta.T) / 2.0
    return _numeric_rank(k_part), _numeric_rank(p_part)


def cayley_chain(alg: MatrixAlgebra, datum: RestrictedDatum, F: Sequence[FullRoot],
                 all_roots: Optional[List[FullRoot]] = None) -> CayleyChain:
    h0 = datum.h0_rows
    theta = alg.theta_coords()
    if all_roots is not None:
        for r1, r2 in itertools.combinations(F, 2):
            s, d = r1.values_on_h0 + r2.values_on_h0, r1.values_on_h0 - r2.values_on_h0
            if _roots_contain(all_roots, s) or _roots_contain(all_roots, d):
                raise AdmissibilityError(f"{alg.family}: chain roots not strongly orthogonal")
    for r in F:
        if r.classification != "real":
            raise AdmissibilityError(f"{alg.family}: chain roots must be real")

    killing = alg.killing()
    e_vectors = []
    for root in F:
        e = _extract_real_root_vector(alg, datum, root)
        norm_sq = float(root.values_on_h0.real @ root.dual_coords.real)  # |alpha|^2
        b_val = float(e @ killing @ (theta @ e))
        if b_val >= 0:
            raise RealRootExtractionError(f"{alg.family}: B(E, theta E) not negative")
        e = e * np.sqrt((2.0 / norm_sq) / (-b_val))
        e_vectors.append(e)

    # commuting-transform assertions along the chain
    steps: List[CayleyStep] = []
    prev_k, prev_p = _kp_dims(alg, h0)
    for idx, (root, e) in enumerate(zip(F, e_vectors)):
        ad_e = alg.ad_coords(e)
        ad_te = alg.ad_coords(theta @ e)
        d_op = scipy.linalg.expm((1j * np.pi / 4.0) * (ad_te - ad_e))
        for jdx, (other, eo) in enumerate(zip(F, e_vectors)):
            if jdx == idx:
                continue
            h_other = other.dual_coords.real @ h0
            for vec, label in ((eo, "E"), (h_other, "H")):
                err = np.linalg.norm(d_op @ vec - vec)
                if err > TOL_VERIFY * max(1.0, np.linalg.norm(vec)):
                    raise InternalInconsistencyError(
                        f"{alg.family}: Cayley transform moves a strongly orthogonal "
                        f"{label}-vector by {err:.2e}"
                    )
        # kernel of the first idx+1 roots inside h0, plus the new compact directions
        vals_rows = np.array([F[k].values_on_h0.real for k in range(idx + 1)])
        ns = _nullspace(vals_rows)
        compact = np.array([ev + theta @ ev for ev in e_vectors[: idx + 1]])
        pieces = ([ns @ h0] if ns.size else []) + [compact]
        h_next = _orth_rows(np.vstack(pieces))
        if len(h_next) != datum.rank:
            raise InternalInconsistencyError(f"{alg.family}: Cayley CSA has wrong dimension")
        k_dim, p_dim = _kp_dims(alg, h_next)
        if p_dim != prev_p - 1 or k_dim != prev_k + 1:
            raise InternalInconsistencyError(
                f"{alg.family}: p-dim did not drop by one along the Cayley chain"
            )
        prev_k, prev_p = k_dim, p_dim
        steps.append(CayleyStep(root=root, e_vector=e, k_dim=k_dim, p_dim=p_dim))
        h_f_rows = h_next
    if not F:
        h_f_rows = h0
    # abelian sanity
    for i in range(len(h_f_rows)):
        for j in range(i + 1, len(h_f_rows)):
            if np.linalg.norm(alg.ad_coords(h_f_rows[i]) @ h_f_rows[j]) > 1e-6:
                raise InternalInconsistencyError(f"{alg.family}: Cayley CSA not abelian")

    x_coords = _regular_in(alg, h_f_rows, datum.rank)
    return CayleyChain(
        h_f_rows=h_f_rows,
        h_f_basis=[alg.from_coords(r) for r in h_f_rows],
        x_regular=alg.from_coords(x_coords),
        x_regular_coords=x_coords,
        steps=steps,
    )


def _regular_in(alg: MatrixAlgebra, rows: np.ndarray, rank: int) -> np.ndarray:
    for q in range(1, 40):
        coeffs = np.array([(q + k) ** 2 + k + 1 for k in range(len(rows))], dtype=float)
        x = coeffs @ rows
        s = np.linalg.svd(alg.ad_coords(x), compute_uv=False)
        null_dim = int(np.sum(s < 1e-8 * max(1.0, s[0])))
        if null_dim == rank:
            return x
    raise RegularitySearchError(f"{alg.family}: no regular element in the schedule")


# --- numeric foliation checks ---------------------------------------------------

@dataclass
class NumericFoliationReport:
    dim_n_j: int
    checks: Dict[str, str]

    @property
    def passed(self) -> bool:
        return all(v in ("pass", "skipped") for v in self.checks.values())


def _project_residual(rows: np.ndarray, v: np.ndarray) -> float:
    if rows.size == 0:
        return float(np.linalg.norm(v))
    sol, *_ = np.linalg.lstsq(rows.T, v, rcond=None)
    return float(np.linalg.norm(rows.T @ sol - v))


def _nilpotent_exp(alg: MatrixAlgebra, y: np.ndarray) -> np.ndarray:
    """Matrix exponential of a nilpotent ambient matrix via its finite series."""
    n = y.shape[0]
    scale = max(1.0, np.linalg.norm(y))
    if np.linalg.norm(np.linalg.matrix_power(y, n)) > 1e-10 * scale ** n:
        raise NotNilpotentError("ambient matrix is not nilpotent")
    total = np.eye(n)
    term = np.eye(n)
    for k in range(1, n):
        term = term @ y / k
        total = total + term
    return total


def verify_foliation_numeric(
    alg: MatrixAlgebra,
    h_rows: np.ndarray,
    x_coords: np.ndarray,
    sigma_spaces: Sequence[np.ndarray],
    transversal_data: Optional[Tuple[np.ndarray, np.ndarray]] = None,
    seed: int = 0,
) -> NumericFoliationReport:
    killing = alg.killing()
    s = np.linalg.svd(alg.ad_coords(x_coords), compute_uv=False)
    null_dim = int(np.sum(s < 1e-8 * max(1.0, s[0])))
    if null_dim != len(h_rows):
        raise NotRegularError(f"{alg.family}: X is not regular for the given CSA")

    n_rows = np.vstack([np.atleast_2d(sp) for sp in sigma_spaces]) if sigma_spaces else \
        np.zeros((0, alg.dim))
    n_rows = _orth_rows(n_rows) if n_rows.size else n_rows
    dim_n = len(n_rows)
    checks: Dict[str, str] = {}
    x_norm = max(1.0, np.linalg.norm(x_coords))

    ok = True
    for i in range(dim_n):
        for j in range(i + 1, dim_n):
            br = alg.ad_coords(n_rows[i]) @ n_rows[j]
            if _project_residual(n_rows, br) > 1e-8 * max(1.0, np.linalg.norm(br)):
                ok = False
    checks["subalgebra"] = "pass" if ok else "fail"

    ok = True
    for h in h_rows:
        for i in range(dim_n):
            br = alg.ad_coords(h) @ n_rows[i]
            if _project_residual(n_rows, br) > 1e-8 * max(1.0, np.linalg.norm(br), np.linalg.norm(h)):
                ok = False
    checks["h_stable"] = "pass" if ok else "fail"

    ok = True
    for i in range(dim_n):
        for j in range(i + 1, dim_n):
            br = alg.ad_coords(n_rows[i]) @ n_rows[j]
            val = abs(float(x_coords @ killing @ br))
            if val > TOL_VERIFY * x_norm * np.linalg.norm(killing):
                ok = False
    checks["isotropic"] = "pass" if ok else "fail"

    half = (alg.dim - len(h_rows)) // 2
    checks["lagrangian"] = checks["isotropic"] if dim_n == half else "skipped"

    if transversal_data is not None:
        k_rows, n_full = transversal_data
        tangent = np.array([alg.ad_coords(k) @ x_coords for k in k_rows])
        inter = _intersection_dim(tangent, n_full)
        k_iso = all(
            abs(float(x_coords @ killing @ (alg.ad_coords(k_rows[i]) @ k_rows[j])))
            <= TOL_VERIFY * x_norm * np.linalg.norm(killing)
            for i in range(len(k_rows))
            for j in range(i + 1, len(k_rows))
        )
        checks["transversal"] = "pass" if (inter == 0 and k_iso) else "fail"
    else:
        checks["transversal"] = "skipped"

    ok = True
    samples = [n_rows[i] for i in range(dim_n)]
    samples += [n_rows[i] + n_rows[j] for i in range(dim_n) for j in range(i + 1, dim_n)]
    rng = random.Random(seed)
    for _ in range(10):
        if dim_n:
            samples.append(sum(rng.randint(-3, 3) / rng.randint(1, 3) * n_rows[i]
                               for i in range(dim_n)))
    x_mat = alg.from_coords(x_coords)
    for yc in samples:
        y = alg.from_coords(yc)
        g = _nilpotent_exp(alg, y)
        moved = g @ x_mat @ _nilpotent_exp(alg, -y)
        diff = alg.coords(moved) - x_coords
        if _project_residual(n_rows, diff) > TOL_VERIFY * max(1.0, np.linalg.norm(diff), x_norm):
            ok = False
            break
    checks["ruling"] = "pass" if ok else "fail"

    return NumericFoliationReport(dim_n_j=dim_n, checks=checks)
