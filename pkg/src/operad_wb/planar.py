"""Labelled planar trees decorated by pruned n-trees.

A decorated tree is either a leaf, stored as its integer label, or a
:class:`Node` holding a decoration ``T_v`` and one child per tip of ``T_v``
in tip order.  Because the tips of a pruned tree are already linearly
ordered, this storage is canonical and equality is structural.  Nodes may
also carry an opaque ``token`` (an operation of some operad at that vertex).

Vertices are addressed by paths: tuples of 0-based child positions starting
from the root.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
import json
from typing import Any, Optional, Tuple

from . import ordinals, trees
from .errors import ArityMismatchError, NotDominatedError, check_k
from .ordinals import NOrder
from .trees import PrunedTree, to_ordinal


@dataclass(frozen=True)
class Node:
    decoration: PrunedTree
    children: Tuple[Any, ...]
    token: Any = None

    def __post_init__(self):
        if len(self.children) != self.decoration.tips:
            raise ArityMismatchError(
                f"decoration {self.decoration} has {self.decoration.tips} tips "
                f"but the vertex has {len(self.children)} children"
            )

    def __str__(self):
        return compact(self)


def is_leaf(x):
    return not isinstance(x, Node)


def corolla(T, labels=None, token=None):
    labels = tuple(range(1, T.tips + 1)) if labels is None else tuple(labels)
    return Node(T, labels, token)


def leaves(x):
    if is_leaf(x):
        return (x,)
    out = []
    for c in x.children:
        out.extend(leaves(c))
    return tuple(out)


def leaf_count(x):
    return len(leaves(x))


def vertices(x, prefix=()):
    """Internal vertices as ``(path, node)`` pairs, in preorder."""
    if is_leaf(x):
        return []
    out = [(prefix, x)]
    for pos, c in enumerate(x.children):
        out.extend(vertices(c, prefix + (pos,)))
    return out


def vertex_count(x):
    return len(vertices(x))


def depth(x):
    if is_leaf(x):
        return 0
    return 1 + max(depth(c) for c in x.children)


def at(x, path):
    for pos in path:
        x = x.children[pos]
    return x


def replace_at(x, path, new):
    if not path:
        return new
    kids = list(x.children)
    kids[path[0]] = replace_at(kids[path[0]], path[1:], new)
    return Node(x.decoration, tuple(kids), x.token)


def relabel(x, mapping):
    """Rename leaves; ``mapping`` is a dict or a callable."""
    get = mapping.get if isinstance(mapping, dict) else mapping
    if is_leaf(x):
        return get(x)
    return Node(x.decoration, tuple(relabel(c, mapping) for c in x.children), x.token)


def relabel_onto(x, labels):
    """Send leaf ``i`` (from ``1..m``) to ``labels[i-1]``."""
    return relabel(x, lambda i: labels[i - 1])


def normalize(x):
    """Relabel leaves to ``1..m`` preserving their numeric order; return ``(tree, old labels)``."""
    labs = sorted(leaves(x))
    pos = {lab: i for i, lab in enumerate(labs, start=1)}
    return relabel(x, pos), tuple(labs)


def strip(x):
    """Drop tokens."""
    if is_leaf(x):
        return x
    return Node(x.decoration, tuple(strip(c) for c in x.children))


def decorations(x):
    return [v.decoration for _, v in vertices(x)]


def is_reduced(x):
    return all(T.is_reduced for T in decorations(x))


def node_key(x):
    if is_leaf(x):
        return (0, x)
    return (1, x.decoration.key(), tuple(node_key(c) for c in x.children), str(x.token) if x.token is not None else "")


def compact(x):
    """Short printable form, e.g. ``[2,2]{[2,1]{1,2},3}``."""
    if is_leaf(x):
        return str(x)
    tok = f"<{x.token}>" if x.token is not None else ""
    return f"{x.decoration.compact()}{tok}{{{','.join(compact(c) for c in x.children)}}}"


def to_json(x):
    if is_leaf(x):
        return {"leaf": x}
    out = {"decoration": trees.to_json(x.decoration), "children": [to_json(c) for c in x.children]}
    if x.token is not None:
        out["token"] = x.token
    return out


def from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    if "leaf" in data:
        return int(data["leaf"])
    return Node(
        trees.from_json(data["decoration"]),
        tuple(from_json(c) for c in data["children"]),
        data.get("token"),
    )


def _paths(x, prefix=()):
    """Map leaf label -> tuple of child positions from the root."""
    if is_leaf(x):
        return {x: prefix}
    out = {}
    for pos, c in enumerate(x.children):
        out.update(_paths(c, prefix + (pos,)))
    return out


def induced_order(x, n=1):
    """Total n-order on leaf labels (renumbered ``1..m`` in numeric order) read at join vertices.

    ``n`` is only consulted for a bare leaf, which carries no decoration.
    """
    if is_leaf(x):
        return NOrder(n, 1, ())
    n = x.decoration.n
    paths = _paths(x)
    labs = sorted(paths)
    table = []
    for a, b in combinations(labs, 2):
        pa, pb = paths[a], paths[b]
        d = 0
        while pa[d] == pb[d]:
            d += 1
        v = at(x, pa[:d])
        table.append(to_ordinal(v.decoration).entry(pa[d] + 1, pb[d] + 1))
    return NOrder(n, len(labs), tuple(table))


def dominated_by(x, T):
    if leaf_count(x) != T.tips:
        raise ArityMismatchError(f"{leaf_count(x)} leaves against a tree with {T.tips} tips")
    if is_leaf(x):
        return True
    return ordinals.dominates(to_ordinal(T), induced_order(x))


def _ordered_partitions(labels, m):
    """Surjective assignments of labels to blocks ``0..m-1``, as tuples of blocks."""
    k = len(labels)
    for assign in product(range(m), repeat=k):
        if len(set(assign)) != m:
            continue
        blocks = [[] for _ in range(m)]
        for lab, b in zip(labels, assign):
            blocks[b].append(lab)
        yield tuple(tuple(b) for b in blocks)


@lru_cache(maxsize=None)
def _all_on(n, k):
    if k == 1:
        return (1,)
    out = []
    for m in range(2, k + 1):
        for S in trees.enumerate_pruned_trees(n, m):
            for blocks in _ordered_partitions(tuple(range(1, k + 1)), m):
                options = [
                    [relabel_onto(t, blk) for t in _all_on(n, len(blk))] for blk in blocks
                ]
                for kids in product(*options):
                    out.append(Node(S, tuple(kids)))
    out.sort(key=node_key)
    return tuple(out)


def enumerate_all(n, k, labels=None):
    """Every reduced decorated tree with ``k`` leaves (labelled ``1..k`` or by ``labels``)."""
    check_k(k, "enumerate_all")
    if k < 1:
        return []
    base = _all_on(n, k)
    if labels is None:
        return list(base)
    labels = tuple(labels)
    return [relabel_onto(t, labels) for t in base]


def _ordered_surjections(src, tgt):
    """Tip maps ``src -> tgt`` (as 1-based tuples) that are surjective and order preserving."""
    k, m = src.size, tgt.size
    out = []
    assign = [0] * k

    def ok(t, y):
        for s in range(t):
            ys = assign[s]
            if ys == y:
                continue
            p, sign = src.entry(s + 1, t + 1)
            a, b = (ys, y) if sign == ordinals.LT else (y, ys)
            r, dirn = tgt.entry(a, b)
            if not ((dirn == ordinals.LT and r >= p) or (dirn == ordinals.GT and r > p)):
                return False
        return True

    def rec(t):
        if t == k:
            if len(set(assign)) == m:
                out.append(tuple(assign))
            return
        for y in range(1, m + 1):
            if ok(t, y):
                assign[t] = y
                rec(t + 1)

    rec(0)
    return out


@lru_cache(maxsize=None)
def ordered_surjections(T, S):
    return tuple(_ordered_surjections(to_ordinal(T), to_ordinal(S)))


@lru_cache(maxsize=None)
def _dominated(T):
    k = T.tips
    if k == 1:
        return (1,)
    out = []
    for m in range(2, k + 1):
        for S in trees.enumerate_pruned_trees(T.n, m):
            for f in ordered_surjections(T, S):
                blocks = trees.tip_fibers(f, m)
                options = []
                for blk in blocks:
                    sub = trees.restricted_tree(T, blk)
                    options.append([relabel_onto(t, blk) for t in _dominated(sub)])
                for kids in product(*options):
                    out.append(Node(S, tuple(kids)))
    out.sort(key=node_key)
    return tuple(out)


def enumerate_dominated(T):
    """All reduced decorated trees dominated by ``T``, built through composable structures."""
    check_k(T.tips, "enumerate_dominated")
    if T.is_degenerate:
        return []
    return list(_dominated(T))


@dataclass(frozen=True)
class ComposableStructure:
    """``node`` is composable to ``tree`` via ``morphism`` (``tree -> root decoration``).

    Leaves have ``tree = U_n``, no morphism and no children.
    """

    tree: PrunedTree
    node: Any
    morphism: Optional[trees.TreeMorphism] = None
    children: Tuple["ComposableStructure", ...] = field(default=())

    @property
    def is_leaf(self):
        return is_leaf(self.node)

    def fibers(self):
        return [c.tree for c in self.children]


def composable_structure(x, T):
    """Reconstruct the unique composable structure of ``x`` over ``T``.

    ``x`` must have leaves labelled ``1..|T|``.
    """
    if leaf_count(x) != T.tips:
        raise ArityMismatchError(f"{leaf_count(x)} leaves against a tree with {T.tips} tips")
    if is_leaf(x):
        if T.tips != 1:
            raise NotDominatedError("a leaf is only composable to U_n")
        return ComposableStructure(T, x)
    if sorted(leaves(x)) != list(range(1, T.tips + 1)):
        raise ValueError("leaves must be labelled 1..k")
    paths = _paths(x)
    f = tuple(paths[i][0] + 1 for i in range(1, T.tips + 1))
    S = x.decoration
    sigma = trees.lift_tip_map(f, T, S)
    if sigma is None:
        raise NotDominatedError(f"{compact(x)} is not dominated by {T}")
    fib = trees.tip_fibers(f, S.tips)
    kids = []
    for child, blk, sub in zip(x.children, fib, trees.morphism_fibers(sigma)):
        norm, labs = normalize(child)
        assert labs == tuple(blk)
        kids.append(composable_structure(norm, sub))
    return ComposableStructure(T, x, sigma, tuple(kids))


def is_composable(x, T):
    try:
        composable_structure(x, T)
    except NotDominatedError:
        return False
    return True


# contractions


@dataclass(frozen=True)
class Contraction:
    """A generating arrow ``source -> result`` merging the vertex at ``path`` with children ``contracted``."""

    source: Any
    path: Tuple[int, ...]
    contracted: Tuple[int, ...]
    new_decoration: PrunedTree
    sigma: trees.TreeMorphism
    result: Any


def _multiset_sequences(sizes):
    """Sequences over ``1..len(sizes)`` using value ``y`` exactly ``sizes[y-1]`` times."""
    counts = list(sizes)
    total = sum(counts)
    seq = []

    def rec():
        if len(seq) == total:
            yield tuple(seq)
            return
        for y in range(len(counts)):
            if counts[y]:
                counts[y] -= 1
                seq.append(y + 1)
                yield from rec()
                seq.pop()
                counts[y] += 1

    yield from rec()


@lru_cache(maxsize=None)
def substitution_sources(S, fiber_trees):
    """All ``(T', f, sigma)`` with ``sigma: T' -> S`` surjective whose pruned fibers are ``fiber_trees``."""
    n = S.n
    sizes = [F.tips for F in fiber_trees]
    K = sum(sizes)
    out = []
    for Tp in trees.enumerate_pruned_trees(n, K):
        src = to_ordinal(Tp)
        for f in _multiset_sequences(sizes):
            if not ordinals._preserves(src, to_ordinal(S), f):
                continue
            sigma = trees.lift_tip_map(f, Tp, S)
            if sigma is None:
                continue
            if tuple(trees.morphism_fibers(sigma)) != tuple(fiber_trees):
                continue
            out.append((Tp, f, sigma))
    return tuple(out)


def contraction_targets(x, path=(), contract=None):
    """All contractions of the vertex at ``path`` with the internal children listed in ``contract``.

    ``contract=None`` contracts every internal child.  An empty selection
    yields the quasibijection moves at that vertex (the identity excluded).
    """
    v = at(x, path)
    if is_leaf(v):
        raise ValueError(f"path {path} addresses a leaf")
    internal = tuple(i for i, c in enumerate(v.children) if not is_leaf(c))
    if contract is None:
        contract = internal
    contract = tuple(sorted(contract))
    if any(i not in internal for i in contract):
        raise ValueError("only internal children can be contracted")
    n = v.decoration.n
    U = trees.linear_tree(n)
    fib = tuple(v.children[i].decoration if i in contract else U for i in range(len(v.children)))
    groups = [v.children[i].children if i in contract else (v.children[i],) for i in range(len(v.children))]
    out = []
    for Tp, f, sigma in substitution_sources(v.decoration, fib):
        if not contract and Tp == v.decoration and f == tuple(range(1, len(f) + 1)):
            continue
        used = [0] * len(groups)
        kids = []
        for y in f:
            kids.append(groups[y - 1][used[y - 1]])
            used[y - 1] += 1
        merged = Node(Tp, tuple(kids))
        out.append(Contraction(x, tuple(path), contract, Tp, sigma, replace_at(x, path, merged)))
    return out


def all_contractions(x):
    """Every generating arrow out of ``x``: all vertices, all subsets of internal children."""
    out = []
    for path, v in vertices(x):
        internal = [i for i, c in enumerate(v.children) if not is_leaf(c)]
        for r in range(len(internal) + 1):
            for sub in combinations(internal, r):
                out.extend(contraction_targets(x, path, sub))
    return out


def leaves_first(structure):
    """Contract along a composable structure from the leaves up.

    Returns the list of intermediate trees, ending with ``corolla(T)``.
    """
    steps = [structure.node]

    def run(cs, path):
        if cs.is_leaf:
            return
        for pos, child in enumerate(cs.children):
            run(child, path + (pos,))
        x = steps[-1]
        v = at(x, path)
        if v.decoration == cs.tree and all(is_leaf(c) for c in v.children) and _is_identity_relabel(x, path):
            return
        contract = tuple(i for i, c in enumerate(v.children) if not is_leaf(c))
        for c in contraction_targets(x, path, contract):
            if c.new_decoration == cs.tree and _is_identity_relabel(c.result, path):
                if c.result != x:
                    steps.append(c.result)
                return
        raise AssertionError(f"no contraction to {cs.tree} at {path} of {compact(x)}")

    run(structure, ())
    return steps


def _is_identity_relabel(x, path):
    """True iff the leaves below ``path`` appear in increasing order."""
    labs = leaves(at(x, path))
    return list(labs) == sorted(labs)


ROOT_MODES = ("strict", "permissive")


def root_moves(y, mode="strict"):
    """Results of contractions at the root of ``y``.

    ``strict`` merges the root with all of its internal children at once;
    ``permissive`` also allows any subset, including the empty one
    (quasibijection moves).
    """
    if is_leaf(y):
        return []
    internal = tuple(i for i, c in enumerate(y.children) if not is_leaf(c))
    if mode == "strict":
        subsets = [internal] if internal else []
    elif mode == "permissive":
        subsets = [sub for r in range(len(internal) + 1) for sub in combinations(internal, r)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    out = []
    for sub in subsets:
        out.extend(c.result for c in contraction_targets(y, (), sub))
    return out


def root_first_reachable(x, T, memo=None, mode="strict"):
    """True iff ``x`` can be composed to arity ``T`` working from the root down.

    In ``strict`` mode success means reaching a corolla dominated by ``T``
    (it is then composable to ``T`` through a quasibijection); in
    ``permissive`` mode the target is ``corolla(T)`` itself.  Every
    generating arrow moves up in the domination order, so states not
    dominated by ``T`` are discarded.  ``memo`` may be shared between calls
    with the same ``T`` and mode.
    """
    goal = corolla(T)
    memo = {} if memo is None else memo

    def reach(y):
        if y == goal:
            return True
        if mode == "strict" and depth(y) == 1:
            return True
        if y in memo:
            return memo[y]
        memo[y] = False
        ans = any(reach(z) for z in root_moves(y, mode) if dominated_by(z, T))
        memo[y] = ans
        return ans

    return reach(x)


def root_first_search(n, max_k, min_k=3, stop_at_first=True, mode="strict"):
    """Look for composable trees that cannot be composed starting from the root.

    Returns a list of ``(T, tree)`` witnesses.
    """
    found = []
    for k in range(min_k, max_k + 1):
        for T in trees.enumerate_pruned_trees(n, k):
            memo = {}
            for x in enumerate_dominated(T):
                if depth(x) < 2:
                    continue
                if not root_first_reachable(x, T, memo, mode):
                    found.append((T, x))
                    if stop_at_first:
                        return found
    return found


def with_tokens(x, tokens):
    """Attach tokens in preorder."""
    it = iter(tokens)

    def go(y):
        if is_leaf(y):
            return y
        tok = next(it)
        return Node(y.decoration, tuple(go(c) for c in y.children), tok)

    return go(x)


def tokens(x):
    return [v.token for _, v in vertices(x)]


__all__ = [
    "Node",
    "ComposableStructure",
    "Contraction",
    "corolla",
    "induced_order",
    "dominated_by",
    "enumerate_all",
    "enumerate_dominated",
    "composable_structure",
    "contraction_targets",
]
