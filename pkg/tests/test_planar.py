from collections import Counter

import pytest

from operad_wb import freeops, ordinals, planar, trees
from operad_wb.errors import ArityMismatchError, NotDominatedError
from operad_wb.planar import Node, corolla
from operad_wb.trees import M, corolla_tree, linear_tree


C2 = corolla_tree(2)


def three_leaf():
    """Root ``M_0^2`` with a ``M_1^2`` corolla on leaves 1, 2 and leaf 3."""
    return Node(M(2, 0, 2), (corolla(M(2, 1, 2), (1, 2)), 3))


def left_comb():
    return Node(C2, (Node(C2, (1, 2)), 3))


def test_induced_order_examples():
    for T in trees.enumerate_pruned_trees(2, 3):
        assert planar.induced_order(corolla(T)) == trees.to_ordinal(T)
    assert planar.induced_order(corolla(M(2, 0, 2), (2, 1))) == ordinals.ordinal(2, [(2, 1, 0)], 2)
    assert planar.induced_order(left_comb()) == trees.to_ordinal(corolla_tree(3))
    expected = ordinals.ordinal(2, [(1, 2, 1), (1, 3, 0), (2, 3, 0)], 3)
    assert planar.induced_order(three_leaf()) == expected


def test_dominated_by_examples():
    x = three_leaf()
    assert planar.dominated_by(corolla(M(2, 0, 2)), M(2, 0, 2))
    assert planar.dominated_by(x, M(2, 0, 3))
    assert not planar.dominated_by(x, trees.tree(2, (3, 2), [(1, 2)]))
    with pytest.raises(ArityMismatchError):
        planar.dominated_by(x, M(2, 0, 2))


def test_self_domination():
    for x in planar.enumerate_all(2, 3):
        y = planar.induced_order(x)
        if ordinals.is_total(y):
            T, perm = trees.from_total_order(y)
            if perm == tuple(range(1, 4)):
                assert planar.dominated_by(x, T)


def test_enumerate_dominated_examples():
    assert len(planar.enumerate_dominated(corolla_tree(3))) == 3
    assert len(planar.enumerate_dominated(corolla_tree(4))) == 11
    got = set(planar.enumerate_dominated(M(2, 0, 2)))
    assert got == {corolla(M(2, 0, 2)), corolla(M(2, 1, 2), (1, 2)), corolla(M(2, 1, 2), (2, 1))}


@pytest.mark.parametrize("n,k", [(1, 3), (1, 4), (2, 2), (2, 3), (2, 4)])
def test_enumerate_dominated_matches_filter(n, k):
    everything = planar.enumerate_all(n, k)
    for T in trees.enumerate_pruned_trees(n, k):
        direct = [x for x in everything if planar.dominated_by(x, T)]
        assert sorted(direct, key=planar.node_key) == planar.enumerate_dominated(T)


@pytest.mark.parametrize("n,k,count", [(1, 3, 18), (1, 4, 264), (2, 2, 4), (2, 3, 72), (2, 4, 2112)])
def test_enumerate_all_counts(n, k, count):
    xs = planar.enumerate_all(n, k)
    assert len(xs) == len(set(xs)) == count
    # independent count through the free symmetric operad on one point per tree
    X = freeops.one_point(n, k)
    assert len(freeops.free_symmetric(freeops.s(freeops.c_n(X, k)), k)) == count


def test_induced_orders_are_ordinals_but_not_always_total():
    xs = planar.enumerate_all(2, 3)
    orders = [planar.induced_order(x) for x in xs]
    for y in orders:
        y.validate()
    assert sum(not ordinals.is_total(y) for y in orders) == 12


def test_composable_structure_n1():
    s = planar.composable_structure(left_comb(), corolla_tree(3))
    assert s.morphism.tip_map == (1, 1, 2)
    assert s.fibers() == [C2, linear_tree(1)]


def test_composable_structure_n2():
    s = planar.composable_structure(three_leaf(), M(2, 0, 3))
    assert s.morphism.target == M(2, 0, 2)
    assert s.morphism.tip_map == (1, 1, 2)
    # fibers are restrictions of the arity, so the first one is M_0^2
    assert s.fibers() == [M(2, 0, 2), linear_tree(2)]


def test_composable_base_case():
    S = trees.tree(2, (3, 2), [(2, 1)])
    for m in trees.quasibijection_sources(S):
        x = planar.relabel(corolla(S), lambda i, f=m.tip_map: f.index(i) + 1)
        s = planar.composable_structure(x, m.source)
        assert s.fibers() == [linear_tree(2)] * 3


def test_not_composable_raises():
    with pytest.raises(NotDominatedError):
        planar.composable_structure(three_leaf(), trees.tree(2, (3, 2), [(1, 2)]))


def rebuild(s):
    if s.is_leaf:
        return s.node
    kids = []
    for child, blk in zip(s.children, trees.tip_fibers(s.morphism.tip_map, s.morphism.target.tips)):
        kids.append(planar.relabel_onto(rebuild(child), blk))
    return Node(s.morphism.target, tuple(kids))


@pytest.mark.parametrize("n,k", [(1, 4), (2, 3), (2, 4)])
def test_normal_form_roundtrip_and_equivalence(n, k):
    everything = planar.enumerate_all(n, k)
    for T in trees.enumerate_pruned_trees(n, k):
        for x in everything:
            assert planar.is_composable(x, T) == planar.dominated_by(x, T)
        for x in planar.enumerate_dominated(T):
            s = planar.composable_structure(x, T)
            assert rebuild(s) == x
            assert planar.composable_structure(rebuild(s), T) == s


def test_contraction_targets_n1():
    x = Node(C2, (Node(C2, (1, 2)), 3))
    got = planar.contraction_targets(x)
    assert len(got) == 1
    assert got[0].new_decoration == corolla_tree(3)
    assert got[0].result == corolla(corolla_tree(3))


def test_contraction_targets_n2():
    got = planar.contraction_targets(three_leaf())
    fib = (M(2, 1, 2), linear_tree(2))
    for c in got:
        assert trees.morphism_fibers(c.sigma) == list(fib)
        assert c.sigma.target == M(2, 0, 2)
    # every 3-tip tree with a surjection onto M_0^2 having those fibers
    expected = set()
    for T in trees.enumerate_pruned_trees(2, 3):
        for f in planar.ordered_surjections(T, M(2, 0, 2)):
            m = trees.lift_tip_map(f, T, M(2, 0, 2))
            if tuple(trees.morphism_fibers(m)) == fib:
                expected.add((T, f))
    assert {(c.new_decoration, c.sigma.tip_map) for c in got} == expected
    # only [3,2],[2,1] qualifies: tips 1, 2 must meet at level 1 and both precede 3 at level 0
    assert len(got) == 1
    assert got[0].new_decoration == trees.tree(2, (3, 2), [(2, 1)])


def test_quasibijection_moves():
    S = trees.tree(2, (3, 2), [(2, 1)])
    got = planar.contraction_targets(corolla(S), (), ())
    # all quasibijections into S except the identity
    assert len(got) == len(trees.quasibijection_sources(S)) - 1


def test_generators_move_up():
    for x in planar.enumerate_all(2, 3):
        if planar.is_leaf(x):
            continue
        for c in planar.all_contractions(x):
            assert ordinals.dominates(planar.induced_order(c.result), planar.induced_order(x))
            assert c.result != x


@pytest.mark.parametrize("k", [2, 3, 4])
def test_leaves_first_reaches_corolla(k):
    for T in trees.enumerate_pruned_trees(2, k):
        for x in planar.enumerate_dominated(T):
            steps = planar.leaves_first(planar.composable_structure(x, T))
            assert steps[0] == x and steps[-1] == corolla(T)


def test_root_first_witness_k4():
    found = planar.root_first_search(2, 4, stop_at_first=True)
    assert found
    T, x = found[0]
    assert T == trees.tree(2, (4, 2), [(2, 2)])
    assert planar.compact(x) == "[2,1],[2]{[2,1],[2]{1,3},[2,2],[1,1]{2,4}}"
    assert planar.is_composable(x, T)
    assert not planar.root_first_reachable(x, T)


def test_root_first_strict_counts():
    assert len(planar.root_first_search(2, 3, stop_at_first=False)) == 0
    assert len(planar.root_first_search(2, 4, min_k=4, stop_at_first=False)) == 16


def test_root_first_permissive_k4():
    assert planar.root_first_search(2, 4, stop_at_first=False, mode="permissive") == []


@pytest.mark.slow
def test_root_first_k5():
    assert len(planar.root_first_search(2, 5, min_k=5, stop_at_first=False)) == 1888
    assert planar.root_first_search(2, 5, min_k=5, stop_at_first=False, mode="permissive") == []


def test_json_roundtrip_and_tokens():
    x = planar.with_tokens(three_leaf(), ["a", "b"])
    assert planar.from_json(planar.to_json(x)) == x
    assert planar.tokens(x) == ["a", "b"]
    assert planar.strip(x) == three_leaf()
    assert planar.compact(three_leaf()) == "[2,2],[1,1]{[2,1],[2]{1,2},3}"


def test_dimension_distribution_k3():
    from operad_wb import cells

    dims = Counter(cells.cell_dimension(x) for x in planar.enumerate_all(2, 3))
    assert sum(dims.values()) == 72
