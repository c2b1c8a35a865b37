from itertools import product

import pytest

from operad_wb import freeops, planar, trees
from operad_wb.errors import ArityMismatchError
from operad_wb.freeops import FreeElement, SetCollection
from operad_wb.planar import Node, corolla
from operad_wb.trees import M, corolla_tree, linear_tree


def test_free_examples():
    X = freeops.one_point(1, 4)
    assert len(freeops.free_n_operad(X, corolla_tree(3))) == 3
    E = freeops.empty_collection(2)
    assert freeops.free_n_operad(E, M(2, 0, 2)) == []
    assert freeops.free_n_operad(E, linear_tree(2)) == [freeops.unit(2)]
    Y = SetCollection.from_dict(2, {M(2, 0, 2): ("a", "b")})
    got = freeops.free_n_operad(Y, M(2, 0, 2))
    assert {e.body for e in got} == {corolla(M(2, 0, 2), token="a"), corolla(M(2, 0, 2), token="b")}


def test_free_count_matches_elements():
    X = freeops.random_collection(2, 4, seed=1)
    for T in trees.enumerate_reduced_trees(2, 4):
        assert freeops.free_count(X, T) == len(freeops.free_n_operad(X, T))


def test_substitute_n1_example():
    C2 = corolla_tree(2)
    sigma = trees.lift_tip_map((1, 1, 2), corolla_tree(3), C2)
    head = FreeElement(C2, corolla(C2, token="a"))
    args = [FreeElement(C2, corolla(C2, token="b")), freeops.unit(1)]
    got = freeops.substitute(sigma, head, args)
    assert got == FreeElement(corolla_tree(3), Node(C2, (Node(C2, (1, 2), "b"), 3), "a"))


def test_unit_laws():
    X = freeops.one_point(2, 4)
    for T in trees.enumerate_reduced_trees(2, 4):
        for x in freeops.free_n_operad(X, T):
            # head is the unit, argument x
            assert freeops.substitute(trees.to_linear(T), freeops.unit(2), [x]) == x
            # head x, every argument a unit
            ident = trees.identity_morphism(T)
            assert freeops.substitute(ident, x, [freeops.unit(2)] * T.tips) == x


def test_substitute_checks_arities():
    X = freeops.one_point(2, 3)
    sigma = trees.identity_morphism(M(2, 0, 2))
    x = freeops.free_n_operad(X, M(2, 1, 2))[0]
    with pytest.raises(ArityMismatchError):
        freeops.substitute(sigma, x, [freeops.unit(2)] * 2)


def one_vertex(T):
    return freeops.unit(T.n) if T.is_linear else FreeElement(T, corolla(T, token="*"))


def surjections(n, k):
    for T in trees.enumerate_pruned_trees(n, k):
        for m in range(1, k + 1):
            for S in trees.enumerate_pruned_trees(n, m):
                for f in planar.ordered_surjections(T, S):
                    yield trees.lift_tip_map(f, T, S)


def count_vertices(elems):
    return sum(planar.vertex_count(e.body) for e in elems if not e.is_unit)


@pytest.mark.parametrize("n,instances", [(1, 40), (2, 3633)])
def test_associativity_small_expressions(n, instances):
    checked = 0
    for k in range(1, 5):
        for sigma in surjections(n, k):
            S = sigma.target
            z_fibers = trees.morphism_fibers(sigma)
            zs = [one_vertex(F) for F in z_fibers]
            for m in range(1, S.tips + 1):
                for R in trees.enumerate_pruned_trees(n, m):
                    for f in planar.ordered_surjections(S, R):
                        rho = trees.lift_tip_map(f, S, R)
                        ys = [one_vertex(F) for F in trees.morphism_fibers(rho)]
                        x = one_vertex(R)
                        if count_vertices([x] + ys + zs) > 3:
                            continue
                        left, right = freeops.associativity_sides(rho, sigma, x, ys, zs)
                        assert left == right
                        checked += 1
    assert checked == instances


def test_free_symmetric_examples():
    X = freeops.one_point(1, 3)
    Z = freeops.s(freeops.c_n(X, 3))
    assert len(freeops.free_symmetric(Z, 3)) == 18
    assert freeops.free_symmetric(Z, 1) == [1]
    empty = freeops.s(freeops.c_n(freeops.empty_collection(2), 4))
    assert freeops.free_symmetric(empty, 3) == []


@pytest.mark.parametrize("n,k", [(1, 3), (1, 4), (2, 2), (2, 3), (2, 4)])
def test_gamma_image(n, k):
    for X in (freeops.one_point(n, k), freeops.random_collection(n, k, seed=7)):
        everything = freeops.free_symmetric(freeops.s(freeops.c_n(X, k)), k)
        for T in trees.enumerate_pruned_trees(n, k):
            image = {freeops.gamma(e) for e in freeops.free_n_operad(X, T)}
            expected = {x for x in everything if planar.dominated_by(x, T)}
            assert image == expected


def test_iterate_examples():
    X = freeops.one_point(1, 3)
    r = freeops.iterate_free(X, 1, corolla_tree(3))
    assert r.agree and r.elements == freeops.free_n_operad(X, corolla_tree(3))
    Y = SetCollection.from_dict(1, {corolla_tree(2): ("*",)})
    assert freeops.iterate_free(Y, 2, corolla_tree(2)).agree
    E = freeops.empty_collection(2)
    assert freeops.iterate_free(E, 2, M(2, 0, 2)).count_free == 0
    assert freeops.iterate_free(E, 2, linear_tree(2)).elements == [freeops.unit(2)]


@pytest.mark.parametrize("T,counts", [(corolla_tree(3), (3, 5, 7)), (M(2, 0, 3), (35, 165, 455))])
def test_iterate_counts(T, counts):
    X = freeops.one_point(T.n, 3)
    got = []
    for m in (1, 2, 3):
        r = freeops.iterate_free(X, m, T, build_elements=m < 3)
        assert r.count_free == r.count_chains
        if m < 3:
            assert len(r.elements) == r.count_free
        got.append(r.count_free)
    assert tuple(got) == counts


def test_collection_json_roundtrip():
    X = freeops.random_collection(2, 3, seed=4)
    assert freeops.collection_from_json(freeops.collection_to_json(X)) == X


def test_collection_validation():
    with pytest.raises(ValueError):
        SetCollection.from_dict(2, {linear_tree(2): ("a",)})
    with pytest.raises(ArityMismatchError):
        SetCollection.from_dict(2, {corolla_tree(2): ("a",)})
