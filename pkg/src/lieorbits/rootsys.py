"""Exact combinatorics of abstract and restricted root systems.

Roots are integer coefficient vectors in the simple-root basis.  Systems are
generated by closing the simple roots under simple reflections; non-reduced
(BC) systems, which arise as restricted root systems, are built from an
explicit orthogonal-coordinate model instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    DegeneratePairError,
    InternalInconsistencyError,
    InvalidTypeError,
    MembershipError,
    NoRealRootsError,
    NotPositiveError,
    NotSimpleError,
    OracleTooLargeError,
)

RANK_CAP = 8


@dataclass(frozen=True, order=True)
class Root:
    """A root, stored as integer coordinates in the simple-root basis."""

    coeffs: Tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    @property
    def is_positive(self) -> bool:
        for c in self.coeffs:
            if c != 0:
                return c > 0
        return False

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coeffs))

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))


def _sort_key(r: Root):
    return (r.height, r.coeffs)


@dataclass(frozen=True)
class RootSystem:
    """A (possibly non-reduced) root system with an exact inner product.

    ``gram[i][j]`` is the inner product of the i-th and j-th simple roots;
    for Cartan-generated systems it comes from the symmetrized Cartan matrix,
    normalized so the shortest simple root has squared length 2.
    """

    series: str
    rank: int
    cartan_matrix: Tuple[Tuple[int, ...], ...]
    symmetrizer: Tuple[Fraction, ...]
    gram: Tuple[Tuple[Fraction, ...], ...]
    roots: Tuple[Root, ...]
    positives: Tuple[Root, ...]
    reduced: bool = True
    _members: FrozenSet[Tuple[int, ...]] = field(default=frozenset(), repr=False)

    @property
    def simples(self) -> Tuple[Root, ...]:
        unit = []
        for i in range(self.rank):
            c = [0] * self.rank
            c[i] = 1
            unit.append(Root(tuple(c)))
        return tuple(unit)

    def contains(self, r: Root) -> bool:
        return r.coeffs in self._members

    def require(self, *roots: Root) -> None:
        for r in roots:
            if not self.contains(r):
                raise MembershipError(f"{r.coeffs} is not a root of {self.series}{self.rank}")


@dataclass(frozen=True)
class RestrictedSystem:
    """A restricted root system: an abstract system plus multiplicities."""

    system: RootSystem
    multiplicities: Dict[Tuple[int, ...], int]

    def multiplicity(self, r: Root) -> int:
        return self.multiplicities[r.coeffs]


@dataclass(frozen=True)
class AdmissibleSystem:
    """A set of positive roots with all pairwise sums/differences non-roots."""

    members: Tuple[Root, ...]

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class SigmaChain:
    """The nested subsets of positive restricted roots driving a foliation."""

    betas: Tuple[Root, ...]
    stages: Tuple[FrozenSet[Root], ...]
    method: str


# --- Cartan matrices -------------------------------------------------------

def _cartan_matrix(series: str, rank: int) -> List[List[int]]:
    a = [[2 * int(i == j) for j in range(rank)] for i in range(rank)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if series == "A":
        for i in range(rank - 1):
            link(i, i + 1)
    elif series == "B":
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 2, rank - 1, -2, -1)  # last simple root short
    elif series == "C":
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 2, rank - 1, -1, -2)  # last simple root long
    elif series == "D":
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 3, rank - 1)
    elif series == "E":
        # Bourbaki numbering: chain 1-3-4-5-..., node 2 attached to node 4.
        chain = [0] + list(range(2, rank))
        for i, j in zip(chain, chain[1:]):
            link(i, j)
        link(1, 3)
    elif series == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif series == "G":
        link(0, 1, -1, -3)
    else:
        raise InvalidTypeError(f"unknown series {series!r}")
    return a


def _validate_type(series: str, rank: int) -> Tuple[str, int]:
    series = series.upper()
    minimum = {"A": 1, "B": 2, "C": 2, "D": 4, "F": 4, "G": 2}
    if series in minimum:
        if rank < minimum[series] or rank > RANK_CAP:
            raise InvalidTypeError(f"{series}{rank} out of supported range")
        if series in ("F", "G") and rank != minimum[series]:
            raise InvalidTypeError(f"{series}{rank} is not a simple type")
    elif series == "E":
        if rank not in (6, 7, 8):
            raise InvalidTypeError(f"E{rank} is not a simple type")
    else:
        raise InvalidTypeError(f"unknown series {series!r}")
    return series, rank


def _symmetrizer(a: List[List[int]]) -> List[Fraction]:
    """d with d_i a_ij = d_j a_ji, scaled so min(d) = 1 (short roots length² 2)."""
    rank = len(a)
    d: List[Optional[Fraction]] = [None] * rank
    d[0] = Fraction(1)
    queue = [0]
    while queue:
        i = queue.pop()
        for j in range(rank):
            if i != j and a[i][j] != 0 and d[j] is None:
                d[j] = d[i] * Fraction(a[j][i], a[i][j])
                queue.append(j)
    if any(x is None for x in d):  # disconnected diagram cannot happen for simple types
        raise InvalidTypeError("disconnected Cartan matrix")
    lo = min(d)  # type: ignore[type-var]
    return [x / lo for x in d]  # type: ignore[operator]


_EXPECTED_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "G": lambda n: 12,
}


def build_root_system(series: str, rank: int) -> RootSystem:
    """Generate the full root system by closing Π under simple reflections."""
    series, rank = _validate_type(series, rank)
    a = _cartan_matrix(series, rank)
    d = _symmetrizer(a)
    gram = tuple(tuple(d[j] * a[i][j] for j in range(rank)) for i in range(rank))

    simples = []
    for i in range(rank):
        c = [0] * rank
        c[i] = 1
        simples.append(tuple(c))

    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for c in frontier:
            pairing = [sum(c[k] * a[k][j] for k in range(rank)) for j in range(rank)]
            for j in range(rank):
                refl = list(c)
                refl[j] -= pairing[j]
                t = tuple(refl)
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt

    roots = sorted((Root(c) for c in seen), key=_sort_key)
    expected = _EXPECTED_COUNTS[series](rank)
    if len(roots) != expected:
        raise InternalInconsistencyError(
            f"{series}{rank}: generated {len(roots)} roots, expected {expected}"
        )
    positives = tuple(r for r in roots if r.is_positive)
    return RootSystem(
        series=series,
        rank=rank,
        cartan_matrix=tuple(tuple(row) for row in a),
        symmetrizer=tuple(d),
        gram=gram,
        roots=tuple(roots),
        positives=positives,
        reduced=True,
        _members=frozenset(seen),
    )


def build_bc_system(rank: int) -> RootSystem:
    """The non-reduced system BC_n, built from its orthogonal-coordinate model."""
    if rank < 1 or rank > RANK_CAP:
        raise InvalidTypeError(f"BC{rank} out of supported range")
    n = rank

    def to_simple(e: Sequence[int]) -> Tuple[int, ...]:
        # alpha_i = e_i - e_{i+1} (i < n), alpha_n = e_n  =>  c_k = sum_{i<=k} e_i
        return tuple(sum(e[: k + 1]) for k in range(n))

    pos_e: List[Tuple[int, ...]] = []
    for i in range(n):
        ei = [0] * n
        ei[i] = 1
        pos_e.append(tuple(ei))
        pos_e.append(tuple(2 * x for x in ei))
        for j in range(i + 1, n):
            for sj in (1, -1):
                v = [0] * n
                v[i], v[j] = 1, sj
                pos_e.append(tuple(v))

    pos = sorted({Root(to_simple(e)) for e in pos_e}, key=_sort_key)
    roots = sorted([-r for r in pos] + list(pos), key=_sort_key)

    # Gram of simple roots from orthonormal e-coordinates, scaled so the
    # shortest simple root (e_n) has squared length 2.
    simple_e = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        simple_e.append(v)
    last = [0] * n
    last[n - 1] = 1
    simple_e.append(last)
    gram = tuple(
        tuple(Fraction(2 * sum(x * y for x, y in zip(u, v))) for v in simple_e)
        for u in simple_e
    )
    a = _cartan_matrix("B", n) if n >= 2 else [[2]]
    d = [gram[i][i] / 2 for i in range(n)]
    return RootSystem(
        series="BC",
        rank=n,
        cartan_matrix=tuple(tuple(row) for row in a),
        symmetrizer=tuple(d),
        gram=gram,
        roots=tuple(roots),
        positives=tuple(pos),
        reduced=False,
        _members=frozenset(r.coeffs for r in roots),
    )


def system_from_positive_roots(positives: Iterable[Root], rank: int,
                               gram: Sequence[Sequence[Fraction]],
                               series: str = "restricted") -> RootSystem:
    """Wrap an explicit set of positive roots (used for computed restricted systems)."""
    pos = tuple(sorted(set(positives), key=_sort_key))
    roots = tuple(sorted([-r for r in pos] + list(pos), key=_sort_key))
    g = tuple(tuple(Fraction(x) for x in row) for row in gram)
    reduced = all(not Root(tuple(2 * c for c in r.coeffs)) in set(pos) for r in pos)
    return RootSystem(
        series=series,
        rank=rank,
        cartan_matrix=tuple(),
        symmetrizer=tuple(),
        gram=g,
        roots=roots,
        positives=pos,
        reduced=reduced,
        _members=frozenset(r.coeffs for r in roots),
    )


# --- basic operations ------------------------------------------------------

def inner_product(sys: RootSystem, a: Root, b: Root) -> Fraction:
    sys.require(a, b)
    total = Fraction(0)
    for i, ca in enumerate(a.coeffs):
        if ca == 0:
            continue
        for j, cb in enumerate(b.coeffs):
            if cb:
                total += ca * cb * sys.gram[i][j]
    return total


def is_root(sys: RootSystem, v: Sequence[int]) -> bool:
    if len(v) != sys.rank:
        raise MembershipError(f"vector length {len(v)} != rank {sys.rank}")
    return tuple(v) in sys._members


def strongly_orthogonal(sys: RootSystem, a: Root, b: Root) -> bool:
    sys.require(a, b)
    if a == b or a == -b:
        raise DegeneratePairError("strong orthogonality undefined for a = ±b")
    orth = inner_product(sys, a, b) == 0
    no_sum = not sys.contains(a + b) and not sys.contains(a - b)
    if sys.reduced and orth != no_sum:
        raise InternalInconsistencyError(
            f"orthogonality/root-sum tests disagree for {a.coeffs}, {b.coeffs}"
        )
    return orth and no_sum


def is_admissible(sys: RootSystem, s: Iterable[Root]) -> bool:
    members = sorted(set(s), key=_sort_key)
    for r in members:
        if not r.is_positive:
            raise NotPositiveError(f"{r.coeffs} is not positive")
        sys.require(r)
    for a, b in itertools.combinations_with_replacement(members, 2):
        if sys.contains(a + b) or (a != b and sys.contains(a - b)):
            return False
    return True


def max_strongly_orthogonal(sys: RootSystem, candidates: Iterable[Root]) -> AdmissibleSystem:
    """Maximum-cardinality pairwise strongly orthogonal subset, by branch and bound."""
    cand = sorted(set(candidates), key=_sort_key)
    for r in cand:
        sys.require(r)
        if not r.is_positive:
            raise NotPositiveError(f"{r.coeffs} is not positive")
    # a root with 2r in the system can never sit in an admissible set
    cand = [r for r in cand if not sys.contains(Root(tuple(2 * c for c in r.coeffs)))]
    n = len(cand)
    compat = [
        [
            i != j and inner_product(sys, cand[i], cand[j]) == 0
            and not sys.contains(cand[i] + cand[j])
            and not sys.contains(cand[i] - cand[j])
            for j in range(n)
        ]
        for i in range(n)
    ]
    best: List[int] = []

    def extend(chosen: List[int], allowed: List[int]) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        for k, i in enumerate(allowed):
            if len(chosen) + len(allowed) - k <= len(best):
                return
            extend(chosen + [i], [j for j in allowed[k + 1:] if compat[i][j]])

    extend([], list(range(n)))
    return AdmissibleSystem(tuple(cand[i] for i in best))


# --- sigma chains (foliation index sets) -----------------------------------

def _as_restricted(sys) -> RestrictedSystem:
    if isinstance(sys, RestrictedSystem):
        return sys
    return RestrictedSystem(sys, {r.coeffs: 1 for r in sys.positives})


def sigma_conditions_hold(sys, betas: Sequence[Root], subset: Iterable[Root]) -> bool:
    """Conditions a stage set must satisfy for betas[0..n-1]."""
    rsys = _as_restricted(sys).system
    s = set(subset)
    lst = sorted(s, key=_sort_key)
    # beta_m itself can never sit in a stage: bracketing the Cayley direction
    # E+θE against its own root space lands in the Cartan part, which is
    # outside n.  (The formal conditions below do not force this on their own.)
    for beta in betas:
        if beta in s or -beta in s:
            return False
    for mu in lst:
        for beta in betas:
            for nu in (mu + beta, mu - beta):
                if rsys.contains(nu) and nu not in s:
                    return False  # (1): the beta-string through mu must stay inside
    for i, mu in enumerate(lst):
        for nu in lst[i:]:
            tot = mu + nu
            if rsys.contains(tot):
                if any(tot == b or tot == -b for b in betas):
                    return False  # (2): no pair may sum to ±beta_m
                if tot not in s:
                    return False  # (3): closed under addition within the roots
    return True


def _greedy_stage(rsys: RootSystem, betas: Sequence[Root], start: FrozenSet[Root]) -> FrozenSet[Root]:
    s = set(start) - {b for b in betas} - {-b for b in betas}
    changed = True
    while changed:
        changed = False
        for mu in sorted(s, key=_sort_key):
            violated = False
            for beta in betas:
                for nu in (mu + beta, mu - beta):
                    if rsys.contains(nu) and nu not in s:
                        violated = True
            if violated:
                s.discard(mu)
                changed = True
                break
        if changed:
            continue
        lst = sorted(s, key=_sort_key)
        for i, mu in enumerate(lst):
            for nu in lst[i:]:
                tot = mu + nu
                if rsys.contains(tot) and (
                    any(tot == b for b in betas) or tot not in s
                ):
                    s.discard(max(mu, nu, key=lambda r: r.coeffs))
                    changed = True
                    break
            if changed:
                break
    return frozenset(s)


def _oracle_stage(rsys_or_restricted, betas: Sequence[Root], start: FrozenSet[Root]) -> FrozenSet[Root]:
    members = sorted(start, key=_sort_key)
    for size in range(len(members), -1, -1):
        for combo in itertools.combinations(members, size):
            if sigma_conditions_hold(rsys_or_restricted, betas, combo):
                return frozenset(combo)
    return frozenset()


def sigma_chain(sys_restricted, betas: Sequence[Root], method: str = "greedy") -> SigmaChain:
    """Compute Σ₀ ⊇ Σ₁ ⊇ … ⊇ Σ_j for the given restriction sequence."""
    restricted = _as_restricted(sys_restricted)
    rsys = restricted.system
    pos = frozenset(rsys.positives)
    for b in betas:
        if b not in pos:
            raise MembershipError(f"beta {b.coeffs} is not a positive restricted root")
    if method == "oracle" and len(pos) > 16:
        raise OracleTooLargeError(f"|Σ⁺| = {len(pos)} > 16")
    if method not in ("greedy", "oracle"):
        raise ValueError(f"unknown method {method!r}")

    stages: List[FrozenSet[Root]] = [pos]
    for n in range(1, len(betas) + 1):
        prefix = list(betas[:n])
        if method == "greedy":
            stage = _greedy_stage(rsys, prefix, stages[-1])
        else:
            stage = _oracle_stage(restricted, prefix, stages[-1])
        if not sigma_conditions_hold(restricted, prefix, stage):
            raise InternalInconsistencyError("computed stage violates its own conditions")
        stages.append(stage)
    return SigmaChain(betas=tuple(betas), stages=tuple(stages), method=method)


def sigma1_simple(sys_restricted, beta: Root) -> FrozenSet[Root]:
    """Σ₁ for a type-{α} orbit with simple restriction β."""
    restricted = _as_restricted(sys_restricted)
    rsys = restricted.system
    if beta not in rsys.simples or not rsys.contains(beta):
        raise NotSimpleError(f"{beta.coeffs} is not a simple positive restricted root")
    double = Root(tuple(2 * c for c in beta.coeffs))
    removed = {beta}
    if rsys.contains(double):
        removed.add(double)
    s1 = frozenset(r for r in rsys.positives if r not in removed)
    if not sigma_conditions_hold(restricted, [beta], s1):
        raise InternalInconsistencyError("Σ⁺ minus {β[,2β]} violates the stage conditions")
    return s1


def find_simple_real_root(positives: Iterable[Root], reals: Iterable[Root]) -> Root:
    """A simple root occurring in the decomposition of some positive real root."""
    real_pos = sorted(
        {r if r.is_positive else -r for r in reals},
        key=_sort_key,
    )
    if not real_pos:
        raise NoRealRootsError("no real roots given")
    indices = sorted({i for r in real_pos for i, c in enumerate(r.coeffs) if c != 0})
    rank = len(real_pos[0].coeffs)
    c = [0] * rank
    c[indices[0]] = 1
    return Root(tuple(c))
