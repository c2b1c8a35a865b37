"""Pruned n-trees, their morphisms and their relation to n-ordinals.

A pruned n-tree is a chain of monotone surjections
``[k_n] -> [k_{n-1}] -> ... -> [k_1] -> [1]``.  We store the level sizes
top-down together with the fiber sizes of each structure map.  Nodes at every
level are numbered from 1.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
import json
import re
from typing import Tuple

from . import ordinals
from .errors import (
    InvalidMapError,
    NotAnOrdinalError,
    NotASurjectionError,
    check_k,
)
from .ordinals import LT, NOrder, OrderedMap


@dataclass(frozen=True)
class PrunedTree:
    """``levels = (k_n, ..., k_1)``; ``fibers[m]`` holds the fiber sizes of ``[k_{n-m}] -> [k_{n-m-1}]``."""

    n: int
    levels: Tuple[int, ...]
    fibers: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise ValueError(f"degree must be >= 1, got {n}")
        if len(self.levels) != n or len(self.fibers) != n - 1:
            raise ValueError(f"a {n}-tree needs {n} level sizes and {n - 1} fiber lists")
        if self.levels[0] == 0:
            if any(self.levels) or any(self.fibers):
                raise ValueError("a degenerate tree has every level empty")
            return
        for m, fib in enumerate(self.fibers):
            upper, lower = self.levels[m], self.levels[m + 1]
            if len(fib) != lower or sum(fib) != upper or any(f < 1 for f in fib):
                raise ValueError(
                    f"fiber sizes {fib} do not describe a surjection [{upper}] -> [{lower}]"
                )
        if self.levels[-1] < 1:
            raise ValueError("level 1 must be nonempty")

    @property
    def tips(self):
        return self.levels[0]

    def level_size(self, i):
        """``k_i`` for ``0 <= i <= n``."""
        if i == 0:
            return 1
        return self.levels[self.n - i]

    @property
    def is_degenerate(self):
        return self.levels[0] == 0

    @property
    def is_linear(self):
        return all(x == 1 for x in self.levels)

    @property
    def is_reduced(self):
        return self.tips >= 2

    @cached_property
    def projections(self):
        """``projections[i][t-1]`` is the level-i ancestor (1-based) of tip ``t``."""
        n, k = self.n, self.tips
        proj = [None] * (n + 1)
        proj[n] = tuple(range(1, k + 1))
        for i in range(n, 1, -1):
            parent = []
            for node, size in enumerate(self.fibers[n - i], start=1):
                parent.extend([node] * size)
            proj[i - 1] = tuple(parent[x - 1] for x in proj[i])
        proj[0] = tuple([1] * k)
        return tuple(proj)

    def parent_map(self, i):
        """Structure map ``[k_i] -> [k_{i-1}]`` as a tuple of 1-based images."""
        if i == 1:
            return tuple([1] * self.level_size(1))
        out = []
        for node, size in enumerate(self.fibers[self.n - i], start=1):
            out.extend([node] * size)
        return tuple(out)

    def compact(self):
        parts = [",".join(map(str, self.levels))]
        parts += [",".join(map(str, fib)) for fib in self.fibers]
        return ",".join(f"[{p}]" for p in parts)

    def __str__(self):
        return self.compact()

    def key(self):
        return (self.n, self.levels, self.fibers)

    def __lt__(self, other):
        return self.key() < other.key()


def tree(n, levels, fibers=()):
    return PrunedTree(n, tuple(levels), tuple(tuple(f) for f in fibers))


@lru_cache(maxsize=None)
def linear_tree(n):
    """``U_n``."""
    return PrunedTree(n, (1,) * n, ((1,),) * (n - 1))


def degenerate_tree(n):
    return PrunedTree(n, (0,) * n, ((),) * (n - 1))


def M(n, l, k):
    """``M_l^k``: ``k`` tips pairwise ``<_l``-comparable."""
    if not 0 <= l < n:
        raise ValueError(f"level {l} out of range for n={n}")
    levels = tuple(k if i > l else 1 for i in range(n, 0, -1))
    fibers = []
    for i in range(n, 1, -1):
        upper, lower = levels[n - i], levels[n - i + 1]
        fibers.append((1,) * upper if upper == lower else (upper,))
    return PrunedTree(n, levels, tuple(fibers))


def corolla_tree(k):
    """The 1-tree ``[k] -> [1]``."""
    return PrunedTree(1, (k,), ())


def parse_tree(text, n=None):
    """Parse ``'[3,2],[2,1]'`` (levels first, then fiber lists) or a JSON tree object."""
    text = text.strip()
    if text.startswith("{"):
        return from_json(json.loads(text))
    groups = re.findall(r"\[([^\[\]]*)\]", text)
    if not groups:
        raise ValueError(f"cannot parse tree {text!r}")
    nums = [tuple(int(x) for x in g.split(",") if x.strip()) for g in groups]
    levels = nums[0]
    if n is not None and len(levels) != n:
        raise ValueError(f"tree {text!r} has {len(levels)} levels, expected {n}")
    fib = nums[1:]
    if len(levels) > 1 and not fib and all(x == levels[0] for x in levels):
        fib = [(1,) * levels[0]] * (len(levels) - 1)
    return tree(len(levels), levels, fib)


def to_json(T):
    return {"n": T.n, "levels": list(T.levels), "fibers": [list(f) for f in T.fibers]}


def from_json(data):
    return tree(int(data["n"]), data["levels"], data.get("fibers", []))


@lru_cache(maxsize=None)
def to_ordinal(T):
    """The total n-order on the tips: ``i <_p j`` with p the highest level where they meet."""
    k = T.tips
    proj = T.projections if k else ()
    table = []
    for i, j in combinations(range(k), 2):
        p = max(q for q in range(T.n) if proj[q][i] == proj[q][j])
        table.append((p, LT))
    return NOrder(T.n, k, tuple(table))


def _tree_from_adjacent(n, gaps):
    """Tree on ``len(gaps)+1`` tips whose consecutive tips meet at the given levels."""
    k = len(gaps) + 1
    levels = []
    fibers = []
    for q in range(n, 0, -1):
        levels.append(1 + sum(1 for a in gaps if a < q))
    for q in range(n, 1, -1):
        # level-q blocks grouped under level-(q-1) blocks
        sizes = [1]
        for a in gaps:
            if a < q - 1:
                sizes.append(1)
            elif a == q - 1:
                sizes[-1] += 1
        fibers.append(tuple(sizes))
    T = PrunedTree(n, tuple(levels), tuple(fibers))
    assert T.tips == k
    return T


def from_total_order(x):
    """Return ``(T, perm)`` with ``act(perm, to_ordinal(T)) == x``.

    ``perm[t-1]`` is the label of ``x`` sitting at tip ``t``.
    """
    if x.size == 0:
        return degenerate_tree(x.n), ()
    if not ordinals.is_total(x):
        raise NotAnOrdinalError(f"{x} is not a total complementary {x.n}-order")
    lin = x.linear
    gaps = [x.entry(lin[t], lin[t + 1])[0] for t in range(len(lin) - 1)]
    T = _tree_from_adjacent(x.n, gaps)
    perm = tuple(lin)
    if ordinals.act(perm, to_ordinal(T)) != x:
        raise NotAnOrdinalError(f"{x} does not come from a pruned tree")
    return T, perm


def _compositions(total, parts):
    """All tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _enumerate(n, k):
    check_k(k, "enumerate_pruned_trees")
    if k == 0:
        return (degenerate_tree(n),)
    out = []

    def grow(lower, levels, fibers):
        depth = len(levels)
        if depth == n:
            if levels[-1] == k:
                out.append(PrunedTree(n, tuple(reversed(levels)), tuple(reversed(fibers))))
            return
        for size in range(lower, k + 1):
            if depth == n - 1 and size != k:
                continue
            for comp in _compositions(size, lower):
                grow(size, levels + [size], fibers + [comp])

    for k1 in range(1, k + 1):
        if n == 1 and k1 != k:
            continue
        grow(k1, [k1], [])
    out.sort(key=PrunedTree.key)
    return tuple(out)


def enumerate_pruned_trees(n, k):
    """All pruned n-trees with ``k`` tips in canonical order."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    return list(_enumerate(n, k))


def enumerate_reduced_trees(n, max_k, min_k=2):
    out = []
    for k in range(min_k, max_k + 1):
        out.extend(_enumerate(n, k))
    return out


def edge_count(T):
    return sum(T.levels)


def dimension(T):
    if T.is_degenerate or T.is_linear:
        return 0
    return edge_count(T) - T.n - 1


@dataclass(frozen=True)
class TreeMorphism:
    """``level_maps[i]`` is the map on level-i nodes, 1-based, for ``i = 0..n``."""

    source: PrunedTree
    target: PrunedTree
    level_maps: Tuple[Tuple[int, ...], ...]

    @property
    def tip_map(self):
        return self.level_maps[self.source.n]

    def to_json(self):
        return {"levels": [list(m) for m in self.level_maps]}


def _tip_assignment(f):
    return f.assignment if isinstance(f, OrderedMap) else tuple(f)


def lift_tip_map(f, T, S):
    """Lift a tip map ``T -> S`` to a morphism of trees, or ``None`` if it is not order preserving."""
    assignment = _tip_assignment(f)
    if T.n != S.n:
        return None
    if len(assignment) != T.tips or any(not 1 <= y <= S.tips for y in assignment):
        return None
    if not ordinals._preserves(to_ordinal(T), to_ordinal(S), assignment):
        return None
    n = T.n
    pT, pS = T.projections, S.projections
    maps = []
    for i in range(n + 1):
        image = [None] * T.level_size(i)
        for t in range(T.tips):
            a = pT[i][t] - 1
            b = pS[i][assignment[t] - 1]
            if image[a] is None:
                image[a] = b
            elif image[a] != b:
                return None
        maps.append(tuple(image))
    # each level map is monotone on fibers of the structure maps
    for i in range(2, n + 1):
        up, par = maps[i], T.parent_map(i)
        for x, y in zip(range(len(up) - 1), range(1, len(up))):
            if par[x] == par[y] and up[x] > up[y]:
                return None
    return TreeMorphism(T, S, tuple(maps))


def identity_morphism(T):
    return TreeMorphism(T, T, tuple(tuple(range(1, T.level_size(i) + 1)) for i in range(T.n + 1)))


def to_linear(T):
    """The unique morphism ``T -> U_n``."""
    m = lift_tip_map((1,) * T.tips, T, linear_tree(T.n))
    assert m is not None
    return m


def classify(m):
    tags = set()
    injective = all(len(set(lm)) == len(lm) for lm in m.level_maps)
    onto = set(m.tip_map) == set(range(1, m.target.tips + 1))
    if injective:
        tags.add("injection")
    if onto:
        tags.add("surjection")
    if onto and len(m.tip_map) == m.target.tips:
        tags.add("quasibijection")
    if injective and "quasibijection" in tags:
        tags.add("full_injection")
    return frozenset(tags)


def tip_fibers(assignment, target_tips):
    """Preimage label lists of a tip map, in target order."""
    out = [[] for _ in range(target_tips)]
    for t, y in enumerate(assignment, start=1):
        out[y - 1].append(t)
    return out


def restricted_tree(T, labels):
    """Pruned subtree of ``T`` spanned by the given tips."""
    return _restricted(T, tuple(sorted(labels)))


@lru_cache(maxsize=None)
def _restricted(T, labels):
    x = ordinals.restrict(to_ordinal(T), labels)
    sub, perm = from_total_order(x)
    assert perm == tuple(range(1, len(labels) + 1))
    return sub


def morphism_fibers(m):
    """Pruned fibers ``T_y`` over every tip ``y`` of the target."""
    fib = tip_fibers(m.tip_map, m.target.tips)
    if any(not f for f in fib):
        raise NotASurjectionError("morphism is not surjective on tips")
    return [restricted_tree(m.source, f) for f in fib]


def prune(T_or_n, level_maps=None):
    """Maximal pruned subtree.

    Accepts a :class:`PrunedTree` (returned unchanged) or a degree together
    with a list of structure maps ``[[k_n images], ..., [k_2 images]]`` plus
    the level-1 size, given as ``level_maps = (sizes, maps)``.
    """
    if isinstance(T_or_n, PrunedTree):
        return T_or_n
    n = T_or_n
    sizes, maps = level_maps
    sizes = list(sizes)
    if len(sizes) != n or len(maps) != n - 1:
        raise InvalidMapError("need n level sizes and n-1 structure maps")
    for m, mp in enumerate(maps):
        if len(mp) != sizes[m] or any(not 1 <= y <= sizes[m + 1] for y in mp):
            raise InvalidMapError(f"structure map {m} does not fit the level sizes")
        if list(mp) != sorted(mp):
            raise InvalidMapError("structure maps must be monotone")
    if sizes[0] == 0:
        return degenerate_tree(n)
    alive = [set(range(1, sizes[0] + 1))]
    for mp in maps:
        alive.append({mp[x - 1] for x in alive[-1]})
    levels = tuple(len(a) for a in alive)
    fibers = []
    for m, mp in enumerate(maps):
        upper = sorted(alive[m])
        lower = sorted(alive[m + 1])
        fibers.append(tuple(sum(1 for x in upper if mp[x - 1] == y) for y in lower))
    return PrunedTree(n, levels, tuple(fibers))


def quasibijection_sources(S):
    """All quasibijections ``T -> S``, as morphisms, over every tip bijection."""
    out = []
    for T in _enumerate(S.n, S.tips):
        for perm in ordinals.all_permutations(S.tips):
            m = lift_tip_map(perm, T, S)
            if m is not None:
                out.append(m)
    return out
