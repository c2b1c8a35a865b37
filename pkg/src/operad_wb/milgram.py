"""The poset of total complementary n-orders on ``{1..k}`` under domination."""

from dataclasses import dataclass
from typing import List

import numpy as np

from . import ordinals, poset, trees
from .errors import InvalidOrderError
from .ordinals import NOrder


@dataclass
class MilgramPoset:
    n: int
    k: int
    elements: List[NOrder]
    leq: np.ndarray  # leq[a, b] iff elements[a] is dominated by elements[b]

    def index(self, x):
        return self._index[x]

    def __post_init__(self):
        self._index = {x: i for i, x in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)


def build(n, k):
    elems = ordinals.enumerate_total_orders(n, k)
    size = len(elems)
    leq = np.zeros((size, size), dtype=bool)
    for a, x in enumerate(elems):
        for b, y in enumerate(elems):
            leq[a, b] = ordinals.dominates(y, x)
    if not poset.is_partial_order(leq):
        raise InvalidOrderError(f"domination on J^{n}_{k} is not a partial order")
    return MilgramPoset(n, k, elems, leq)


act = ordinals.act


def orbits(P):
    """Group elements by their tree; returns ``[(tree, [elements])]`` in tree order."""
    groups = {}
    for x in P.elements:
        T, _ = trees.from_total_order(x)
        groups.setdefault(T, []).append(x)
    return sorted(groups.items(), key=lambda e: e[0].key())


@dataclass
class ComplexSummary:
    chains: List[int]
    euler: int
    connected: bool
    components: int

    @property
    def vertices(self):
        return self.chains[0] if self.chains else 0

    @property
    def edges(self):
        return self.chains[1] if len(self.chains) > 1 else 0


def order_complex(P):
    leq = P.leq if hasattr(P, "leq") else P
    ncomp, _ = poset.components(leq)
    return ComplexSummary(poset.chain_counts(leq), poset.euler_characteristic(leq), ncomp == 1, ncomp)


def label(x):
    T, _ = trees.from_total_order(x)
    return f"{x} dim={trees.dimension(T)}"


def to_dot(P):
    return poset.to_dot([label(x) for x in P.elements], poset.hasse_edges(P.leq), name=f"J{P.n}_{P.k}")
