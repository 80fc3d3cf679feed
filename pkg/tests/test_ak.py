import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3bubble.ak import (
    BranchConfig,
    BranchError,
    build_dbs_tree,
    check_equivalence,
    family_from_branches,
    from_branches,
    random_branch_config,
    root_indices,
    symmetrize,
    to_branches,
)
from k3bubble.exact import Poly, parse_poly
from k3bubble.pbt import build_pbt, tree_signature
from k3bubble.rootsys import build_root_system


def polys(*texts):
    return tuple(parse_poly(s) for s in texts)


GOLDEN_ZETA = polys("t^2 + 1/2*t", "t^2 + t", "t^2 + 1/2*t")
GOLDEN_B = polys("t^2 + 1/2*t", "1/2*t", "-1/2*t", "-t^2 - 1/2*t")


def test_to_branches_examples():
    assert to_branches(GOLDEN_ZETA, build_root_system("A3")).branches == GOLDEN_B
    with pytest.raises(BranchError) as info:
        to_branches((Poly(),)).validate()
    assert info.value.code == "coincident-branches"
    with pytest.raises(BranchError) as info:
        to_branches(GOLDEN_ZETA[:2], build_root_system("D4"))
    assert info.value.code == "not-type-a"


def test_from_branches_examples():
    assert from_branches(polys("t", "-t")) == polys("t")
    assert from_branches(BranchConfig(GOLDEN_B)) == GOLDEN_ZETA
    assert from_branches(polys("t", "t^2", "-t - t^2")) == polys("t", "t + t^2")


def test_branch_config_invariants():
    with pytest.raises(BranchError) as info:
        BranchConfig(polys("t", "t"))
    assert info.value.code == "nonzero-sum"
    with pytest.raises(BranchError) as info:
        BranchConfig(polys("0"))
    assert info.value.code == "too-few-branches"
    with pytest.raises(BranchError) as info:
        BranchConfig(polys("1 + t", "-1 - t")).validate()
    assert info.value.code == "no-degeneration"
    assert BranchConfig.recentered(polys("t", "t^2")).branches == polys(
        "1/2*t - 1/2*t^2", "-1/2*t + 1/2*t^2")


def _elementary(bs, j):
    total = Poly()
    for combo in itertools.combinations(bs, j):
        term = Poly.const(1)
        for x in combo:
            term = term * x
        total = total + term
    return total


def test_symmetrize_examples():
    assert symmetrize(BranchConfig(polys("t", "-t"))).alphas == (Poly(), parse_poly("-t^2"))
    assert symmetrize(BranchConfig(polys("0", "0", "0"))).alphas == (Poly(),) * 3


def test_symmetrize_matches_elementary_symmetric_oracle():
    rng = random.Random(5)
    for _ in range(40):
        b = random_branch_config(rng, max_k=5, max_degree=3)
        alphas = symmetrize(b).alphas
        for j, a in enumerate(alphas, start=1):
            assert a == _elementary(b.branches, j) * (-1) ** j
        perm = list(b.branches)
        rng.shuffle(perm)
        assert symmetrize(BranchConfig(tuple(perm))).alphas == alphas
        # coefficients of z^{k+1} + ... vanish at each branch value
        coeffs = symmetrize(b).polynomial_in_z()
        for x in b.branches:
            val = Poly()
            for p, c in enumerate(coeffs):
                val = val + c * x ** p
            assert val.is_zero()


def test_dbs_examples():
    tree = build_dbs_tree(BranchConfig(GOLDEN_B))
    assert tree.indices == (0, 1, 2, 3) and tree.level == 1
    assert [(c.indices, c.level, c.children) for c in tree.children] == [
        ((0, 1), 2, ()), ((2, 3), 2, ())]
    single = build_dbs_tree(BranchConfig(polys("t", "-t")))
    assert single.size() == 1 and single.indices == (0, 1)
    two = build_dbs_tree(BranchConfig(polys("t", "t + t^2", "-2*t - t^2")))
    assert two.size() == 2 and two.children[0].indices == (0, 1)


def test_dbs_contracts_non_splitting_levels():
    # all branches agree to order 2; the first split happens at order 3
    tree = build_dbs_tree(BranchConfig.recentered(polys("t^3", "2*t^3", "-t^3 + t^5")))
    assert tree.level == 3 and tree.children == ()
    # a vertex with one non-singleton child plus singletons is kept
    tree = build_dbs_tree(BranchConfig.recentered(polys("t", "t + t^3", "2*t")))
    assert tree.size() == 2 and tree.level == 1 and tree.children[0].level == 3


def test_equivalence_examples():
    b = BranchConfig(GOLDEN_B)
    eq = check_equivalence(build_pbt(family_from_branches(b)), build_dbs_tree(b))
    assert eq.isomorphic
    assert dict(eq.mapping) == {(): (0, 1, 2, 3), (0,): (0, 1), (1,): (2, 3)}
    b = BranchConfig(polys("t", "-t"))
    eq = check_equivalence(build_pbt(family_from_branches(b)), build_dbs_tree(b))
    assert eq.isomorphic and eq.mapping == (((), (0, 1)),)


def test_equivalence_detects_mismatch():
    b = BranchConfig(GOLDEN_B)
    other = BranchConfig(polys("t", "t + t^2", "-2*t - t^2"))
    eq = check_equivalence(build_pbt(family_from_branches(b)), build_dbs_tree(other))
    assert not eq and eq.mismatch


def test_root_indices():
    assert root_indices((1, 0, 0)) == (0, 1)
    assert root_indices((0, 1, 1)) == (1, 3)
    assert root_indices((-1, -1, -1)) == (0, 3)


def test_pairing_ord_bridge():
    rng = random.Random(17)
    for _ in range(30):
        b = random_branch_config(rng, max_k=6, max_degree=4)
        f = family_from_branches(b)
        for j, l in itertools.combinations(range(len(b.branches)), 2):
            # e_j - e_l = theta_{j+1} + ... + theta_l
            root = tuple(int(j <= i < l) for i in range(b.k))
            assert f.system.pair(root, f.zeta).ord() == (b.branches[j] - b.branches[l]).ord()


def _relabel(node, perm):
    return (tuple(sorted(perm[i] for i in node.indices)), node.level,
            tuple(sorted(_relabel(c, perm) for c in node.children)))


def _shape(node):
    return (node.indices, node.level, tuple(sorted(_shape(c) for c in node.children)))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_permutation_invariance(seed):
    rng = random.Random(seed)
    b = random_branch_config(rng, max_k=6, max_degree=4)
    perm = list(range(len(b.branches)))
    rng.shuffle(perm)
    permuted = [None] * len(perm)
    for i, p in enumerate(perm):
        permuted[p] = b.branches[i]
    bp = BranchConfig(tuple(permuted))
    assert _relabel(build_dbs_tree(b), perm) == _shape(build_dbs_tree(bp))
    t1 = build_pbt(family_from_branches(b)).root
    t2 = build_pbt(family_from_branches(bp)).root
    assert tree_signature(t1, with_reps=False) == tree_signature(t2, with_reps=False)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_branch_translation_round_trip(seed):
    b = random_branch_config(random.Random(seed), max_k=6, max_degree=4)
    zeta = from_branches(b)
    assert to_branches(zeta).branches == b.branches
    assert from_branches(to_branches(zeta)) == zeta


def test_random_configs_are_valid_and_varied():
    rng = random.Random(0)
    depths = set()
    for _ in range(50):
        b = random_branch_config(rng)
        b.validate()
        assert b.k <= 8 and all(x.degree <= 6 for x in b.branches)
        depths.add(max(len(p) for p in _paths(build_dbs_tree(b))))
    assert len(depths) >= 3


def _paths(node, prefix=()):
    yield prefix + (node.indices,)
    for c in node.children:
        yield from _paths(c, prefix + (node.indices,))
