"""Exact structure-constant engine for split real forms and their realifications.

The Chevalley basis is h_1..h_r (simple coroots) followed by one x_alpha per
root.  Structure constants are integers with signs fixed by the
extraspecial-pair convention; antisymmetry and the Jacobi identity are
verified at build time.  All arithmetic is over the rationals.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import exactla
from .errors import (
    AdmissibilityError,
    ChamberError,
    InternalInconsistencyError,
    NotNilpotentError,
    NotRegularError,
    PositivityError,
    RegularitySearchError,
    StabilizerError,
)
from .rootsys import AdmissibleSystem, Root, RootSystem, _sort_key, is_admissible


@dataclass(frozen=True)
class Element:
    """A Lie algebra element as exact coefficients over the Chevalley basis."""

    coeffs: Tuple[Fraction, ...]

    def __add__(self, other: "Element") -> "Element":
        return Element(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Element") -> "Element":
        return Element(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Element":
        return Element(tuple(-a for a in self.coeffs))

    def scale(self, s) -> "Element":
        s = Fraction(s)
        return Element(tuple(s * a for a in self.coeffs))

    @property
    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)


@dataclass(frozen=True)
class CsaDescriptor:
    """A Cartan subalgebra with its toroidal/vector split and Cayley origin."""

    basis: Tuple[Element, ...]
    admissible_F: AdmissibleSystem
    toroidal_dim: int
    vector_dim: int


@dataclass
class FoliationReport:
    """Outcome of the foliation checks for one (orbit type, algebra) pair."""

    orbit_type_F: AdmissibleSystem
    sigma_j: FrozenSet[Root]
    dim_n_j: int
    checks: Dict[str, str]
    witness_X: Element

    @property
    def passed(self) -> bool:
        return all(v in ("pass", "skipped") for v in self.checks.values())


class StructureConstants:
    """Exact bracket table of a split real form or its complexification-as-real."""

    def __init__(self, root_system: RootSystem, mode: str = "split"):
        if mode not in ("split", "complexified"):
            raise ValueError(f"unknown mode {mode!r}")
        if not root_system.reduced:
            raise ValueError("Chevalley engine needs a reduced root system")
        self.root_system = root_system
        self.mode = mode
        r = root_system.rank
        self._roots = list(root_system.roots)
        self._root_index = {a.coeffs: r + i for i, a in enumerate(self._roots)}
        self._split_dim = r + len(self._roots)
        self.dim = self._split_dim * (2 if mode == "complexified" else 1)
        self.rank = r * (2 if mode == "complexified" else 1)
        self._N = _chevalley_constants(root_system)
        self._table = self._build_table()
        self._ad_cache: Dict[int, Dict[Tuple[int, int], Fraction]] = {}
        self._killing: Optional[List[List[Fraction]]] = None
        _verify_algebra(self)

    # --- basis accessors ---

    def _lift(self, split_index: int, imag: bool) -> int:
        if self.mode == "split":
            if imag:
                raise ValueError("no imaginary directions in split mode")
            return split_index
        return 2 * split_index + (1 if imag else 0)

    def h(self, i: int, imag: bool = False) -> Element:
        c = [Fraction(0)] * self.dim
        c[self._lift(i, imag)] = Fraction(1)
        return Element(tuple(c))

    def x(self, a: Root, imag: bool = False) -> Element:
        c = [Fraction(0)] * self.dim
        c[self._lift(self._root_index[a.coeffs], imag)] = Fraction(1)
        return Element(tuple(c))

    def zero(self) -> Element:
        return Element(tuple([Fraction(0)] * self.dim))

    def coroot_span(self) -> List[Element]:
        basis = [self.h(i) for i in range(self.root_system.rank)]
        if self.mode == "complexified":
            basis += [self.h(i, imag=True) for i in range(self.root_system.rank)]
        return basis

    def root_pairing(self, a: Root, i: int) -> int:
        """<a, alpha_i^vee> for the i-th simple coroot."""
        cm = self.root_system.cartan_matrix
        return sum(c * cm[k][i] for k, c in enumerate(a.coeffs))

    def root_value(self, a: Root, x: Element) -> Fraction:
        """alpha(x) for x in the coroot span (real part in complexified mode)."""
        r = self.root_system.rank
        total = Fraction(0)
        for i in range(r):
            total += x.coeffs[self._lift(i, False)] * self.root_pairing(a, i)
        return total

    # --- bracket table ---

    def _split_bracket_basis(self, s: int, t: int) -> Dict[int, Fraction]:
        """Bracket of split-basis vectors s, t (indices into the split layout)."""
        sys = self.root_system
        r = sys.rank
        out: Dict[int, Fraction] = {}
        if s < r and t < r:
            return out
        if s < r:  # [h_s, x_a]
            a = self._roots[t - r]
            pairing = self.root_pairing(a, s)
            if pairing:
                out[t] = Fraction(pairing)
            return out
        if t < r:
            res = self._split_bracket_basis(t, s)
            return {k: -v for k, v in res.items()}
        a, b = self._roots[s - r], self._roots[t - r]
        if a == -b:
            # [x_a, x_{-a}] = coroot a^vee; integral in the simple coroots
            da = _half_norm(sys, a)
            for i, c in enumerate(a.coeffs):
                if c:
                    q = c * sys.symmetrizer[i] / da
                    if q.denominator != 1:
                        raise InternalInconsistencyError("non-integral coroot coefficient")
                    out[i] = q
            return out
        tot = a + b
        if sys.contains(tot):
            out[self._root_index[tot.coeffs]] = self._N[(a.coeffs, b.coeffs)]
        return out

    def _build_table(self) -> Dict[Tuple[int, int], Dict[int, Fraction]]:
        table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        n = self._split_dim
        for s in range(n):
            for t in range(s + 1, n):
                res = self._split_bracket_basis(s, t)
                if not res:
                    continue
                if self.mode == "split":
                    table[(s, t)] = res
                else:
                    # complex bilinearity: (u + iv) layout at 2k, 2k+1
                    table[(2 * s, 2 * t)] = {2 * k: v for k, v in res.items()}
                    table[(2 * s, 2 * t + 1)] = {2 * k + 1: v for k, v in res.items()}
                    table[(2 * s + 1, 2 * t)] = {2 * k + 1: v for k, v in res.items()}
                    table[(2 * s + 1, 2 * t + 1)] = {2 * k: -v for k, v in res.items()}
        return table

    def bracket_basis(self, i: int, j: int) -> Dict[int, Fraction]:
        if i == j:
            return {}
        if i < j:
            return self._table.get((i, j), {})
        return {k: -v for k, v in self._table.get((j, i), {}).items()}

    def ad_matrix(self, i: int) -> Dict[Tuple[int, int], Fraction]:
        """Sparse matrix of ad(e_i): entry (row, col) means e_col -> row component."""
        cached = self._ad_cache.get(i)
        if cached is None:
            cached = {}
            for j in range(self.dim):
                for k, v in self.bracket_basis(i, j).items():
                    cached[(k, j)] = v
            self._ad_cache[i] = cached
        return cached

    def killing_gram(self) -> List[List[Fraction]]:
        """Killing form on the basis, computed from adjoint traces."""
        if self._killing is None:
            ads = [self.ad_matrix(i) for i in range(self.dim)]
            gram = [[Fraction(0)] * self.dim for _ in range(self.dim)]
            for i in range(self.dim):
                for j in range(i, self.dim):
                    t = Fraction(0)
                    for (k, l), v in ads[i].items():
                        w = ads[j].get((l, k))
                        if w is not None:
                            t += v * w
                    gram[i][j] = gram[j][i] = t
            self._killing = gram
        return self._killing

    def theta(self, x: Element) -> Element:
        """Cartan involution: -1 on the coroot span, x_a -> -x_{-a}.

        In complexified mode this is the compact conjugation, which is
        conjugate-linear (flips the sign of imaginary components twice).
        """
        r = self.root_system.rank
        out = [Fraction(0)] * self.dim
        for idx, c in enumerate(x.coeffs):
            if c == 0:
                continue
            split_idx, imag = (idx, False) if self.mode == "split" else (idx // 2, idx % 2 == 1)
            if split_idx < r:
                target = split_idx
            else:
                a = self._roots[split_idx - r]
                target = self._root_index[(-a).coeffs]
            sign = Fraction(-1)
            if imag:
                sign = Fraction(1)  # conjugate-linear: theta(i v) = -i theta(v)
            out[self._lift(target, imag)] += sign * c
        return Element(tuple(out))


def _half_norm(sys: RootSystem, a: Root) -> Fraction:
    total = Fraction(0)
    for i, ca in enumerate(a.coeffs):
        if ca == 0:
            continue
        for j, cb in enumerate(a.coeffs):
            if cb:
                total += ca * cb * sys.gram[i][j]
    return total / 2


def _chevalley_constants(sys: RootSystem) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction]:
    """N_{a,b} for every pair of roots with a+b a root (extraspecial convention)."""
    pos = sorted(sys.positives, key=_sort_key)
    order = {a.coeffs: i for i, a in enumerate(pos)}

    def ip(a: Root, b: Root) -> Fraction:
        total = Fraction(0)
        for i, ca in enumerate(a.coeffs):
            if ca == 0:
                continue
            for j, cb in enumerate(b.coeffs):
                if cb:
                    total += ca * cb * sys.gram[i][j]
        return total

    pos_n: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction] = {}

    def get_pos(a: Root, b: Root) -> Fraction:
        if order[a.coeffs] < order[b.coeffs]:
            return pos_n[(a.coeffs, b.coeffs)]
        return -pos_n[(b.coeffs, a.coeffs)]

    def get(a: Root, b: Root) -> Fraction:
        """N_{a,b} for any signs, reduced to the positive-pair table."""
        apos, bpos = a.is_positive, b.is_positive
        if apos and bpos:
            return get_pos(a, b)
        if not apos and not bpos:
            return -get(-a, -b)
        if not apos:
            return -get(b, a)
        mu, nu = a, -b  # mu, nu positive, mu != nu
        sigma = mu - nu
        if sigma.is_positive:
            return -ip(sigma, sigma) / ip(mu, mu) * get_pos(nu, sigma)
        sigma = -sigma
        return -ip(sigma, sigma) / ip(nu, nu) * get_pos(mu, sigma)

    def string_p(a: Root, b: Root) -> int:
        p = 0
        while sys.contains(b - a.scale_int(p + 1)):
            p += 1
        return p

    for gamma in pos:
        if gamma.height < 2:
            continue
        special = [
            (xi, Root(tuple(g - x for g, x in zip(gamma.coeffs, xi.coeffs))))
            for xi in pos
            if order[xi.coeffs] < order.get(
                tuple(g - x for g, x in zip(gamma.coeffs, xi.coeffs)), -1
            )
        ]
        special.sort(key=lambda pair: order[pair[0].coeffs])
        if not special:
            raise InternalInconsistencyError(f"no special pair for {gamma.coeffs}")
        alpha, beta = special[0]
        pa = string_p(alpha, beta)
        pos_n[(alpha.coeffs, beta.coeffs)] = Fraction(pa + 1)
        for xi, eta in special[1:]:
            t = Fraction(0)
            d1 = beta - xi  # equals eta - alpha
            if sys.contains(d1):
                t += get(beta, -xi) * get(alpha, -eta) / ip(d1, d1)
            d2 = alpha - xi  # equals eta - beta
            if sys.contains(d2):
                t += get(-xi, alpha) * get(beta, -eta) / ip(d2, d2)
            pos_n[(xi.coeffs, eta.coeffs)] = ip(gamma, gamma) * t / pos_n[(alpha.coeffs, beta.coeffs)]

    full: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction] = {}
    for a in sys.roots:
        for b in sys.roots:
            if a == b or a == -b:
                continue
            if sys.contains(a + b):
                full[(a.coeffs, b.coeffs)] = get(a, b)
    return full


def _verify_algebra(sc: StructureConstants) -> None:
    """Build-time sanity checks: antisymmetry and the Jacobi identity."""
    dim = sc.dim
    if sc.root_system.rank <= 2 and sc.mode == "split":
        triples = itertools.combinations(range(dim), 3)
    else:
        rng = random.Random(0)
        triples = (tuple(rng.sample(range(dim), 3)) for _ in range(200))
    for i, j, k in triples:
        acc: Dict[int, Fraction] = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = sc.bracket_basis(b, c)
            for m, v in inner.items():
                for n, w in sc.bracket_basis(a, m).items():
                    acc[n] = acc.get(n, Fraction(0)) + v * w
        if any(v != 0 for v in acc.values()):
            raise InternalInconsistencyError(f"Jacobi fails on basis triple {(i, j, k)}")


# Root.scale_int helper used by the string computation
def _root_scale_int(self: Root, k: int) -> Root:
    return Root(tuple(k * c for c in self.coeffs))


Root.scale_int = _root_scale_int  # type: ignore[attr-defined]


# --- public operations -------------------------------------------------------

def chevalley_basis(sys: RootSystem, mode: str = "split") -> StructureConstants:
    return StructureConstants(sys, mode)


def bracket(sc: StructureConstants, x: Element, y: Element) -> Element:
    out = [Fraction(0)] * sc.dim
    for i, a in enumerate(x.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(y.coeffs):
            if b == 0:
                continue
            for k, v in sc.bracket_basis(i, j).items():
                out[k] += a * b * v
    return Element(tuple(out))


def killing_form(sc: StructureConstants, x: Element, y: Element) -> Fraction:
    gram = sc.killing_gram()
    total = Fraction(0)
    for i, a in enumerate(x.coeffs):
        if a == 0:
            continue
        row = gram[i]
        for j, b in enumerate(y.coeffs):
            if b:
                total += a * b * row[j]
    return total


def kirillov_form(sc: StructureConstants, X: Element, u: Element, v: Element) -> Fraction:
    return killing_form(sc, X, bracket(sc, u, v))


def ad_matrix_of(sc: StructureConstants, x: Element) -> List[List[Fraction]]:
    m = [[Fraction(0)] * sc.dim for _ in range(sc.dim)]
    for i, a in enumerate(x.coeffs):
        if a == 0:
            continue
        for (k, j), v in sc.ad_matrix(i).items():
            m[k][j] += a * v
    return m


def stabilizer_dim(sc: StructureConstants, x: Element) -> int:
    return sc.dim - exactla.rank(ad_matrix_of(sc, x))


def regular_element(sc: StructureConstants, csa: CsaDescriptor) -> Element:
    """A regular element of the CSA; positive-chamber for the coroot-span CSA."""
    if csa.toroidal_dim == 0 or (sc.mode == "complexified" and not csa.admissible_F.members):
        # maximally noncompact: solve alpha_j(X) = 1 for every simple root
        r = sc.root_system.rank
        cm = sc.root_system.cartan_matrix
        # alpha_j(sum_i t_i h_i) = sum_i t_i <alpha_j, alpha_i^vee> = (A t)_j
        rows = [[Fraction(cm[j][i]) for i in range(r)] for j in range(r)]
        sol = exactla.solve(rows, [Fraction(1)] * r)
        if sol is None:
            raise RegularitySearchError("Cartan matrix is singular")
        coeffs = [Fraction(0)] * sc.dim
        for i, t in enumerate(sol):
            coeffs[sc._lift(i, False)] = t
        x = Element(tuple(coeffs))
        if stabilizer_dim(sc, x) != sc.rank:
            raise RegularitySearchError("coweight-sum element unexpectedly singular")
        return x
    for q in range(1, 40):
        x = sc.zero()
        for k, b in enumerate(csa.basis):
            x = x + b.scale(Fraction((q + k) ** 2 + k + 1, 1))
        if stabilizer_dim(sc, x) == sc.rank:
            return x
    raise RegularitySearchError("deterministic schedule exhausted")


def iwasawa_n(sc: StructureConstants, positive_choice: Iterable[Root], sign: str = "plus") -> List[Element]:
    sys = sc.root_system
    pos = sorted(set(positive_choice), key=_sort_key)
    sys.require(*pos)
    posset = set(pos)
    if len(pos) * 2 != len(sys.roots) or any(-a in posset for a in pos):
        raise PositivityError("not a positive system: wrong size or not disjoint from negatives")
    for a, b in itertools.combinations(pos, 2):
        if sys.contains(a + b) and (a + b) not in posset:
            raise PositivityError("positive choice is not closed under addition")
    if sign == "minus":
        pos = [-a for a in pos]
    elif sign != "plus":
        raise ValueError(f"unknown sign {sign!r}")
    out = []
    for a in pos:
        out.append(sc.x(a))
        if sc.mode == "complexified":
            out.append(sc.x(a, imag=True))
    return out


def cayley_csa(sc: StructureConstants, f: AdmissibleSystem) -> CsaDescriptor:
    """The theta-stable CSA attached to an admissible system in a split form."""
    if sc.mode != "split":
        raise AdmissibilityError("Cayley CSAs apply to the split engine only")
    sys = sc.root_system
    if not is_admissible(sys, f.members):
        raise AdmissibilityError("root set is not admissible")
    r = sys.rank
    rows = [[Fraction(sc.root_pairing(a, i)) for i in range(r)] for a in f.members]
    kernel = exactla.nullspace(rows, ncols=r)
    basis: List[Element] = []
    for vec in kernel:
        coeffs = [Fraction(0)] * sc.dim
        for i, t in enumerate(vec):
            coeffs[i] = t
        basis.append(Element(tuple(coeffs)))
    for a in sorted(f.members, key=_sort_key):
        # E_a + theta E_a with E_a = x_a (normalization up to a positive square)
        basis.append(sc.x(a) - sc.x(-a))
    if len(basis) != r:
        raise InternalInconsistencyError("Cayley CSA has wrong dimension")
    for u, v in itertools.combinations(basis, 2):
        if not bracket(sc, u, v).is_zero:
            raise InternalInconsistencyError("Cayley CSA is not abelian")
    return CsaDescriptor(
        basis=tuple(basis),
        admissible_F=AdmissibleSystem(tuple(sorted(f.members, key=_sort_key))),
        toroidal_dim=len(f.members),
        vector_dim=r - len(f.members),
    )


def maximally_noncompact_csa(sc: StructureConstants) -> CsaDescriptor:
    basis = tuple(sc.coroot_span())
    toroidal = sc.root_system.rank if sc.mode == "complexified" else 0
    return CsaDescriptor(
        basis=basis,
        admissible_F=AdmissibleSystem(tuple()),
        toroidal_dim=toroidal,
        vector_dim=len(basis) - toroidal,
    )


def nilpotent_ad_orbit(sc: StructureConstants, y: Element, x: Element) -> Element:
    """e^{ad_Y} X as an exact finite sum; errors out if the series does not stop."""
    total = x
    term = x
    fact = 1
    for n in range(1, sc.dim + 2):
        term = bracket(sc, y, term)
        if term.is_zero:
            return total
        fact *= n
        total = total + term.scale(Fraction(1, fact))
    raise NotNilpotentError("ad_Y series on X did not terminate")


@dataclass
class DarbouxBasis:
    """Darboux data for a type-0 orbit of a split form.

    x_alpha spans n, y_alpha spans n_-; the two Darboux bases of the theorem
    are {x_a, x_a + y_a} and {x_a, y_a}.  Normalizations are sqrt(radicand)
    inverses; radicands are exact, the float fields carry the normalized
    coordinates.
    """

    roots: Tuple[Root, ...]
    radicands: Dict[Tuple[int, ...], Fraction]
    x_alpha: Dict[Tuple[int, ...], Element]
    y_alpha: Dict[Tuple[int, ...], Element]


def darboux_basis(sc: StructureConstants, X: Element, positive_choice: Iterable[Root]) -> DarbouxBasis:
    if sc.mode != "split":
        raise ChamberError("Darboux bases are constructed for the split engine")
    pos = sorted(set(positive_choice), key=_sort_key)
    radicands: Dict[Tuple[int, ...], Fraction] = {}
    xs: Dict[Tuple[int, ...], Element] = {}
    ys: Dict[Tuple[int, ...], Element] = {}
    for a in pos:
        rad = sc.root_value(a, X) * killing_form(sc, sc.x(a), sc.x(-a))
        if rad <= 0:
            raise ChamberError(f"nonpositive radicand for root {a.coeffs}")
        radicands[a.coeffs] = rad
        xs[a.coeffs] = sc.x(a)
        ys[a.coeffs] = sc.x(-a)
    return DarbouxBasis(roots=tuple(pos), radicands=radicands, x_alpha=xs, y_alpha=ys)


def _span_rows(elements: Sequence[Element]) -> List[List[Fraction]]:
    return [list(e.coeffs) for e in elements]


def _in_span(elements: Sequence[Element], v: Element) -> bool:
    return exactla.in_span(_span_rows(elements), list(v.coeffs))


def _ruling_samples(n_basis: Sequence[Element], seed: int = 0) -> List[Element]:
    samples = list(n_basis)
    for u, v in itertools.combinations(n_basis, 2):
        samples.append(u + v)
    rng = random.Random(seed)
    for _ in range(10):
        y = None
        for b in n_basis:
            c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            y = b.scale(c) if y is None else y + b.scale(c)
        if y is not None:
            samples.append(y)
    return samples


def verify_foliation(
    sc: StructureConstants,
    csa: CsaDescriptor,
    X: Element,
    sigma_j: Iterable[Root],
) -> FoliationReport:
    """Exact checks that sigma_j induces a left-invariant isotropic ruling at X."""
    sys = sc.root_system
    sigma = frozenset(sigma_j)
    if stabilizer_dim(sc, X) != sc.rank:
        raise NotRegularError("X is not regular")
    ad_x = ad_matrix_of(sc, X)
    stab = exactla.nullspace(ad_x)
    if exactla.span_intersection_dim(stab, _span_rows(csa.basis)) != sc.rank:
        raise StabilizerError("stabilizer of X is not the given CSA")

    mult = 2 if sc.mode == "complexified" else 1
    n_basis: List[Element] = []
    for a in sorted(sigma, key=_sort_key):
        n_basis.append(sc.x(a))
        if sc.mode == "complexified":
            n_basis.append(sc.x(a, imag=True))
    dim_n_j = mult * len(sigma)

    checks: Dict[str, str] = {}

    ok = all(
        _in_span(n_basis, bracket(sc, u, v))
        for u, v in itertools.combinations(n_basis, 2)
    )
    checks["subalgebra"] = "pass" if ok else "fail"

    ok = all(
        _in_span(n_basis, bracket(sc, b, u))
        for b in csa.basis
        for u in n_basis
    )
    checks["h_stable"] = "pass" if ok else "fail"

    ok = all(
        kirillov_form(sc, X, u, v) == 0
        for u, v in itertools.combinations(n_basis, 2)
    )
    checks["isotropic"] = "pass" if ok else "fail"

    half = (sc.dim - sc.rank) // 2
    if dim_n_j == half:
        checks["lagrangian"] = checks["isotropic"]
    else:
        checks["lagrangian"] = "skipped"

    if csa.toroidal_dim == 0 and sc.mode == "split" and len(csa.admissible_F) == 0:
        k_basis = [sc.x(a) - sc.x(-a) for a in sys.positives]
        tangent_k = [bracket(sc, u, X) for u in k_basis]
        n_full = [sc.x(a) for a in sys.positives]
        inter = exactla.span_intersection_dim(_span_rows(tangent_k), _span_rows(n_full))
        k_iso = all(
            kirillov_form(sc, X, u, v) == 0
            for u, v in itertools.combinations(k_basis, 2)
        )
        checks["transversal"] = "pass" if (inter == 0 and k_iso) else "fail"
    else:
        checks["transversal"] = "skipped"

    ok = True
    for y in _ruling_samples(n_basis):
        moved = nilpotent_ad_orbit(sc, y, X)
        if not _in_span(n_basis, moved - X):
            ok = False
            break
    checks["ruling"] = "pass" if ok else "fail"

    return FoliationReport(
        orbit_type_F=csa.admissible_F,
        sigma_j=sigma,
        dim_n_j=dim_n_j,
        checks=checks,
        witness_X=X,
    )


def darboux_gram(sc: StructureConstants, X: Element, db: DarbouxBasis,
                 pairing: str = "xy") -> List[List[float]]:
    """Kirillov Gram matrix of the normalized Darboux vectors at X.

    pairing "xy" uses {x_a / sqrt(r_a)} then {y_a / sqrt(r_a)}; pairing "xxy"
    uses {x_a / sqrt(r_a)} then {(x_a + y_a) / sqrt(r_a)}.  Both should give
    the standard symplectic matrix [[0, I], [-I, 0]].
    """
    import math

    norms = {a: math.sqrt(float(db.radicands[a])) for a in (r.coeffs for r in db.roots)}
    first = [(a.coeffs, db.x_alpha[a.coeffs]) for a in db.roots]
    if pairing == "xy":
        second = [(a.coeffs, db.y_alpha[a.coeffs]) for a in db.roots]
    elif pairing == "xxy":
        second = [(a.coeffs, db.x_alpha[a.coeffs] + db.y_alpha[a.coeffs]) for a in db.roots]
    else:
        raise ValueError(f"unknown pairing {pairing!r}")
    vecs = [(c, e) for c, e in first] + [(c, e) for c, e in second]
    n = len(vecs)
    gram = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            val = kirillov_form(sc, X, vecs[i][1], vecs[j][1])
            gram[i][j] = float(val) / (norms[vecs[i][0]] * norms[vecs[j][0]])
    return gram


def omega_matrix(sc: StructureConstants, X: Element) -> List[List[Fraction]]:
    """Exact Gram matrix of the Kirillov form on the full basis at X."""
    gram = sc.killing_gram()
    out = [[Fraction(0)] * sc.dim for _ in range(sc.dim)]
    for i in range(sc.dim):
        for j in range(i + 1, sc.dim):
            val = Fraction(0)
            for k, v in sc.bracket_basis(i, j).items():
                row = gram[k]
                for m, a in enumerate(X.coeffs):
                    if a:
                        val += a * v * row[m]
            out[i][j] = val
            out[j][i] = -val
    return out
