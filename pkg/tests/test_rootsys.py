"""Root system combinatorics: generation, orthogonality, admissibility, chains."""

from fractions import Fraction

import pytest

from lieorbits import rootsys
from lieorbits.errors import (
    InvalidTypeError,
    MembershipError,
    NotSimpleError,
    OracleTooLargeError,
)
from lieorbits.rootsys import (
    Root,
    build_bc_system,
    build_root_system,
    find_simple_real_root,
    inner_product,
    is_admissible,
    max_strongly_orthogonal,
    sigma1_simple,
    sigma_chain,
    strongly_orthogonal,
)

EXPECTED_ROOT_COUNTS = {
    ("A", 1): 2, ("A", 2): 6, ("A", 3): 12,
    ("B", 2): 8, ("B", 3): 18,
    ("C", 3): 18, ("D", 4): 24,
    ("G", 2): 12, ("F", 4): 48,
    ("E", 6): 72, ("E", 7): 126, ("E", 8): 240,
}


def test_root_counts():
    for (series, rank), count in EXPECTED_ROOT_COUNTS.items():
        sys_ = build_root_system(series, rank)
        assert len(sys_.roots) == count
        assert len(sys_.positives) == count // 2


def test_invalid_types_rejected():
    for series, rank in [("A", 0), ("B", 1), ("D", 3), ("E", 5), ("E", 9),
                         ("F", 3), ("G", 3), ("H", 2), ("A", 9)]:
        with pytest.raises(InvalidTypeError):
            build_root_system(series, rank)


def test_a2_inner_products():
    a2 = build_root_system("A", 2)
    a1_, a2_ = a2.simples
    assert inner_product(a2, a1_, a1_) == 2
    assert inner_product(a2, a1_, a2_) == -1


def test_g2_lengths():
    g2 = build_root_system("G", 2)
    lengths = {inner_product(g2, r, r) for r in g2.roots}
    assert lengths == {Fraction(2), Fraction(6)}


def test_membership_errors():
    a2 = build_root_system("A", 2)
    with pytest.raises(MembershipError):
        a2.require(Root((5, 5)))


def test_strong_orthogonality():
    a3 = build_root_system("A", 3)
    s = a3.simples
    assert strongly_orthogonal(a3, s[0], s[2])
    a2 = build_root_system("A", 2)
    assert not strongly_orthogonal(a2, a2.simples[0], a2.simples[1])
    # orthogonal but not strongly orthogonal only exists in non-reduced systems
    bc2 = build_bc_system(2)
    e1 = Root((1, 1))   # short root e1 in simple-root coordinates
    e2 = Root((0, 1))   # short root e2
    # e1 - e2 and e1 + e2 are orthogonal but their sum 2*e1 is a root
    assert inner_product(bc2, e1 - e2, e1 + e2) == 0
    assert not strongly_orthogonal(bc2, e1 - e2, e1 + e2)


def test_admissibility():
    a2 = build_root_system("A", 2)
    assert is_admissible(a2, [])
    assert is_admissible(a2, [a2.simples[0]])
    assert not is_admissible(a2, list(a2.simples))
    bc1 = build_bc_system(1)
    beta = bc1.simples[0]
    assert not is_admissible(bc1, [beta])  # 2*beta is a root


def test_max_strongly_orthogonal_sizes():
    expected = {("A", 1): 1, ("A", 2): 1, ("A", 3): 2, ("A", 4): 2,
                ("B", 2): 2, ("C", 2): 2, ("C", 3): 3, ("D", 4): 4,
                ("G", 2): 2, ("F", 4): 4}
    for (series, rank), size in expected.items():
        sys_ = build_root_system(series, rank)
        f = max_strongly_orthogonal(sys_, sys_.positives)
        assert len(f) == size, (series, rank)
        assert is_admissible(sys_, f.members)


def test_bc_system_counts():
    bc1 = build_bc_system(1)
    assert len(bc1.positives) == 2  # e1, 2e1
    bc2 = build_bc_system(2)
    assert len(bc2.positives) == 6  # e1-e2, e2, e1, e1+e2, 2e2, 2e1
    assert not bc2.reduced


def test_sigma_chain_a2():
    a2 = build_root_system("A", 2)
    beta = a2.simples[0]
    for method in ("greedy", "oracle"):
        chain = sigma_chain(a2, [beta], method=method)
        assert chain.stages[0] == frozenset(a2.positives)
        assert chain.stages[1] == frozenset({Root((0, 1)), Root((1, 1))})


def test_sigma_chain_excludes_beta_string():
    # in (BC)1 the doubled root must leave with beta: sigma_1 is empty
    bc1 = build_bc_system(1)
    beta = bc1.simples[0]
    for method in ("greedy", "oracle"):
        chain = sigma_chain(bc1, [beta], method=method)
        assert chain.stages[1] == frozenset()
    assert sigma1_simple(bc1, beta) == frozenset()


def test_sigma1_simple_matches_chain():
    for sys_ in [build_root_system("A", 3), build_root_system("C", 3),
                 build_root_system("G", 2), build_bc_system(2)]:
        for beta in sys_.simples:
            s1 = sigma1_simple(sys_, beta)
            chain = sigma_chain(sys_, [beta], method="oracle")
            assert len(chain.stages[1]) == len(s1)


def test_sigma1_simple_rejects_nonsimple():
    a2 = build_root_system("A", 2)
    highest = Root((1, 1))
    with pytest.raises(NotSimpleError):
        sigma1_simple(a2, highest)


def test_oracle_guard():
    f4 = build_root_system("F", 4)  # 24 positive roots
    with pytest.raises(OracleTooLargeError):
        sigma_chain(f4, [f4.simples[0]], method="oracle")


def test_sigma_chain_pair():
    a3 = build_root_system("A", 3)
    betas = [a3.simples[0], a3.simples[2]]
    g = sigma_chain(a3, betas, method="greedy")
    o = sigma_chain(a3, betas, method="oracle")
    assert [len(s) for s in g.stages] == [len(s) for s in o.stages]
    assert len(g.stages) == 3


def test_find_simple_real_root():
    a2 = build_root_system("A", 2)
    reals = [Root((1, 1))]
    assert find_simple_real_root(a2.positives, reals) == a2.simples[0]
