"""Cell counts for the decompositions indexed by decorated trees."""

import csv
import io
from collections import Counter
from dataclasses import dataclass
from typing import Any, List, Tuple

from . import freeops, planar, trees
from .trees import PrunedTree


def cell_dimension(x):
    """Sum of the vertex dimensions (a leaf is a point)."""
    if planar.is_leaf(x):
        return 0
    return sum(trees.dimension(T) for T in planar.decorations(x))


@dataclass
class CellComplexSummary:
    tree: PrunedTree
    cells: List[Tuple[Any, int]]
    f_vector: Tuple[int, ...]
    euler_c: int
    top_cells: List[Any]


def f_vector_of(dims):
    if not dims:
        return ()
    counts = Counter(dims)
    return tuple(counts.get(d, 0) for d in range(max(dims) + 1))


def cell_complex(T):
    if not T.is_reduced:
        raise ValueError(f"{T} is not a reduced tree")
    shapes = planar.enumerate_dominated(T)
    cells = [(x, cell_dimension(x)) for x in shapes]
    dims = [d for _, d in cells]
    fv = f_vector_of(dims)
    euler = sum((-1) ** d * c for d, c in enumerate(fv))
    top = max(dims)
    return CellComplexSummary(T, cells, fv, euler, [x for x, d in cells if d == top])


def stratum_label(x, i, j):
    """``(p, sign)``: ``i <_p j`` gives ``+1``, ``j <_p i`` gives ``-1``."""
    k = planar.leaf_count(x)
    if i == j or not (1 <= i <= k and 1 <= j <= k):
        raise ValueError(f"labels ({i}, {j}) out of range for {k} leaves")
    p, sign = planar.induced_order(x).entry(i, j)
    return p, sign


@dataclass
class Census:
    n: int
    k: int
    total: int
    by_dimension: Tuple[int, ...]
    by_shape: List[Tuple[str, int, int]]  # (root-level tree string, dim, count)
    planar_orbits: int


def fm_stratum_census(n, k):
    """All labelled reduced decorated trees with ``k`` leaves, grouped by dimension."""
    strata = planar.enumerate_all(n, k)
    dims = [cell_dimension(x) for x in strata]
    by_key = Counter()
    for x, d in zip(strata, dims):
        key = x.decoration.compact() if not planar.is_leaf(x) else "leaf"
        by_key[(key, d)] += 1
    orbits = sum(1 for x in strata if list(planar.leaves(x)) == list(range(1, k + 1)))
    return Census(
        n,
        k,
        len(strata),
        f_vector_of(dims),
        sorted((key, d, c) for (key, d), c in by_key.items()),
        orbits,
    )


def census_cross_check(n, k):
    """Compare the census with the free symmetric operad on the one-point collection."""
    c = fm_stratum_census(n, k)
    X = freeops.one_point(n, max(k, 2))
    free = freeops.free_symmetric(freeops.s(freeops.c_n(X, max(k, 2))), k)
    return c.total == len(free)


def census_csv(rows):
    """CSV with columns n,k,tree,dim,count for a list of censuses."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "k", "tree", "dim", "count"])
    for c in rows:
        for key, d, cnt in c.by_shape:
            w.writerow([c.n, c.k, key, d, cnt])
    return buf.getvalue()


def top_cells_are_corolla(summary):
    """True iff ``corolla(T)`` is the only cell of dimension ``dim(T)`` and nothing is larger."""
    T = summary.tree
    top = max(d for _, d in summary.cells)
    return top == trees.dimension(T) and summary.top_cells == [planar.corolla(T)]
