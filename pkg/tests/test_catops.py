from math import factorial

import numpy as np
import pytest

from operad_wb import catops, freeops, milgram, ordinals, planar, poset, trees
from operad_wb.catops import SetDiagram
from operad_wb.errors import CycleDetectedError
from operad_wb.planar import corolla
from operad_wb.trees import M, corolla_tree


def test_build_rh_small():
    P = catops.build_rh(1, 3)
    assert len(P) == 18 and len(P.generators) == 12
    for s, t, _ in P.generators:
        assert planar.depth(P.objects[s]) == 2 and planar.depth(P.objects[t]) == 1
    P = catops.build_rh(2, 2)
    assert len(P) == 4 and len(P.generators) == 4
    for n in (1, 2, 3):
        P = catops.build_rh(n, 1)
        assert len(P) == 1 and not P.generators


@pytest.mark.parametrize("n,k,gens", [(2, 3, 312), (2, 4, 21408)])
def test_generator_counts(n, k, gens):
    assert len(catops.build_rh(n, k).generators) == gens


@pytest.mark.parametrize("n,k", [(1, 3), (2, 2), (2, 3), (2, 4)])
def test_corollas_form_the_milgram_poset(n, k):
    P = catops.build_rh(n, k)
    idx, leq, orders = catops.corolla_subposet(P)
    J = milgram.build(n, k)
    assert sorted(orders) == sorted(J.elements)
    pos = [J.index(x) for x in orders]
    # an arrow corolla a -> corolla b means b dominates a
    assert (leq == J.leq[np.ix_(pos, pos)]).all()


@pytest.mark.parametrize("k", [2, 3, 4])
def test_acyclic_and_down_sets(k):
    assert catops.acyclic(2, k)
    P = catops.build_rh(2, k)
    assert poset.is_partial_order(P.closure)
    for T in trees.enumerate_pruned_trees(2, k):
        down = {P.objects[i] for i in catops.down_set(P, T)}
        assert down == set(planar.enumerate_dominated(T))


def test_cycle_detection():
    with pytest.raises(CycleDetectedError):
        catops.from_generators(1, 2, ["a", "b"], [(0, 1, None), (1, 0, None)])


def test_comma_examples():
    P = catops.build_rh(2, 2)
    cache = catops._comma_cache(P)
    top = P.index[corolla(M(2, 0, 2))]
    r = catops.comma_over_corolla(P, top, cache)
    assert r.targets == [top] and r.connected
    low = P.index[corolla(M(2, 1, 2))]
    r = catops.comma_over_corolla(P, low, cache)
    assert len(r.targets) == 3 and r.connected


@pytest.mark.parametrize("n,k", [(1, 3), (1, 4), (2, 2), (2, 3)])
def test_cofinality(n, k):
    res = catops.check_cofinality(catops.build_rh(n, k))
    assert all(r.nonempty and r.connected for r in res)


def _diagram(sizes, arrows):
    objs = [f"o{i}" for i in range(len(sizes))]
    P = catops.from_generators(1, 1, objs, [(s, t, None) for s, t, _ in arrows])
    values = [list(range(s)) for s in sizes]
    return SetDiagram(P, values, [list(m) for _, _, m in arrows])


def test_colimit_examples():
    D = _diagram([1, 1, 1], [(0, 1, [0]), (2, 1, [0])])
    assert len(catops.colimit(D)) == 1
    assert len(catops.colimit(_diagram([], []))) == 0
    assert len(catops.colimit(_diagram([2, 3], []))) == 5
    D = _diagram([2, 3], [(0, 1, [1, 1])])
    col = catops.colimit(D)
    assert len(col) == 3
    assert col.representatives == [(0, 0), (1, 0), (1, 2)]


@pytest.mark.parametrize("n,k", [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4)])
def test_terminal_gives_components(n, k):
    S = catops.symmetrise(catops.TerminalOperad(n), k)
    ncomp, _ = poset.components(catops.build_rh(n, k).closure)
    assert S.size == ncomp
    assert S.size == (factorial(k) if n == 1 else 1)


@pytest.mark.parametrize("n,k", [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3)])
def test_free_matches_free_symmetric(n, k):
    for X in (freeops.one_point(n, k), freeops.random_collection(n, k, seed=11)):
        S = catops.symmetrise(catops.FreeOperad(X), k)
        assert S.comparison_is_bijection
        assert S.size == len(freeops.free_symmetric(freeops.s(freeops.c_n(X, k)), k))


def test_n1_k2_has_two_classes():
    assert catops.symmetrise(catops.FreeOperad(freeops.one_point(1, 2)), 2).size == 2


def test_action_and_composition():
    X = freeops.random_collection(2, 3, seed=2)
    A = catops.FreeOperad(X)
    S2, S3 = catops.symmetrise(A, 2), catops.symmetrise(A, 3)
    assert catops.action_is_valid(S3)
    assert catops.composition_well_defined(S2, S2, S3, samples=40)


def test_table_operad_roundtrip():
    X = freeops.random_collection(2, 3, seed=5)
    A = catops.FreeOperad(X)
    table = catops.tabulate(A, 3)
    S, R = catops.symmetrise(A, 3), catops.symmetrise(table, 3)
    assert S.size == R.size
    assert all((a == b).all() for a, b in zip(S.full.classes, R.full.classes))


def test_table_operad_json():
    T = M(2, 0, 2)
    A = catops.TableOperad(2, {T: ("a",)}, {}, "e")
    B = catops.TableOperad.from_json(A.to_json())
    assert B.elements(T) == ("a",)


@pytest.mark.parametrize("n,k,euler", [(1, 2, 2), (1, 3, 6), (2, 2, 0), (2, 3, 0), (2, 4, 0)])
def test_order_complex_of_rh(n, k, euler):
    s = catops.order_complex(catops.build_rh(n, k))
    assert s["euler"] == euler
    assert s["connected"] == (n > 1)


def test_comma_rh_has_maximum():
    P = catops.build_rh(1, 4)
    idx, leq = catops.rh_comma(P, corolla_tree(4))
    assert catops.has_maximum(leq)
    s = catops.order_complex(leq)
    assert s["euler"] == 1 and s["connected"]
    assert catops.order_complex(np.ones((1, 1), dtype=bool))["euler"] == 1


def test_dot():
    text = catops.to_dot(catops.build_rh(2, 2))
    assert text.count("->") == 4 and "[2,2],[1,1]" in text
