"""Set-level free reduced n-operads and free symmetric operads.

A collection assigns a finite tuple of opaque tokens to each reduced pruned
n-tree.  An element of the free reduced n-operad of arity ``T`` is a
decorated tree dominated by ``T`` whose vertices carry tokens of the right
arity; composition grafts bodies along a surjection of trees.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
import json
import random
from typing import Any, Tuple

from . import ordinals, planar, trees
from .errors import ArityMismatchError, check_k
from .planar import Node, is_leaf
from .trees import PrunedTree


@dataclass(frozen=True)
class SetCollection:
    """Tokens per reduced tree; trees that are absent carry the empty set."""

    n: int
    entries: Tuple[Tuple[PrunedTree, Tuple[Any, ...]], ...] = ()

    def __post_init__(self):
        seen = set()
        for T, toks in self.entries:
            if T.n != self.n:
                raise ArityMismatchError(f"tree {T} has degree {T.n}, collection has {self.n}")
            if not T.is_reduced:
                raise ValueError(f"collection entries must be reduced trees, got {T}")
            if T in seen:
                raise ValueError(f"tree {T} listed twice")
            if len(set(toks)) != len(toks):
                raise ValueError(f"tokens at {T} are not unique")
            seen.add(T)

    @classmethod
    def from_dict(cls, n, mapping):
        items = sorted(((T, tuple(v)) for T, v in mapping.items() if v), key=lambda e: e[0].key())
        return cls(n, tuple(items))

    def tokens(self, T):
        return self._lookup.get(T, ())

    @property
    def _lookup(self):
        cache = self.__dict__.get("_cache")
        if cache is None:
            cache = dict(self.entries)
            object.__setattr__(self, "_cache", cache)
        return cache

    def trees(self):
        return [T for T, _ in self.entries]

    def max_tips(self):
        return max((T.tips for T, _ in self.entries), default=0)


def one_point(n, max_k):
    """One token ``'*'`` at every reduced n-tree with at most ``max_k`` tips."""
    return SetCollection.from_dict(n, {T: ("*",) for T in trees.enumerate_reduced_trees(n, max_k)})


def empty_collection(n):
    return SetCollection(n, ())


def random_collection(n, max_k, seed, max_tokens=2):
    """Seeded collection with between 0 and ``max_tokens`` tokens per reduced tree."""
    rng = random.Random(seed)
    mapping = {}
    for T in trees.enumerate_reduced_trees(n, max_k):
        count = rng.randint(0, max_tokens)
        mapping[T] = tuple(f"x{T.compact()}_{i}" for i in range(count))
    return SetCollection.from_dict(n, mapping)


def collection_to_json(X):
    return {
        "n": X.n,
        "entries": [{"tree": trees.to_json(T), "tokens": list(toks)} for T, toks in X.entries],
    }


def collection_from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    n = int(data["n"])
    mapping = {}
    for item in data["entries"]:
        T = trees.from_json({"n": n, **item["tree"]} if "n" not in item["tree"] else item["tree"])
        mapping[T] = tuple(str(t) for t in item["tokens"])
    return SetCollection.from_dict(n, mapping)


@dataclass(frozen=True)
class FreeElement:
    arity: PrunedTree
    body: Any

    @property
    def is_unit(self):
        return is_leaf(self.body)

    def __str__(self):
        return f"{self.arity.compact()}:{planar.compact(self.body)}"


@lru_cache(maxsize=None)
def unit(n):
    return FreeElement(trees.linear_tree(n), 1)


def decorate(shape, X):
    """All ways of putting tokens of ``X`` on the vertices of ``shape``."""
    verts = planar.vertices(shape)
    options = [X.tokens(v.decoration) for _, v in verts]
    return [planar.with_tokens(shape, choice) for choice in product(*options)]


def free_n_operad(X, T):
    """Elements of arity ``T`` of the free reduced n-operad on ``X``."""
    check_k(T.tips, "free_n_operad")
    if T.n != X.n:
        raise ArityMismatchError("degree mismatch between collection and tree")
    if T.is_linear:
        return [unit(T.n)]
    out = []
    for shape in planar.enumerate_dominated(T):
        out.extend(FreeElement(T, body) for body in decorate(shape, X))
    return out


def free_count(X, T):
    """``len(free_n_operad(X, T))`` without building the elements."""
    if T.is_linear:
        return 1
    total = 0
    for shape in planar.enumerate_dominated(T):
        c = 1
        for D in planar.decorations(shape):
            c *= len(X.tokens(D))
            if not c:
                break
        total += c
    return total


def _graft(body, args, f, S_tips):
    blocks = trees.tip_fibers(f, S_tips)
    pieces = []
    for blk, arg in zip(blocks, args):
        pieces.append(planar.relabel_onto(arg.body, blk))

    def go(x):
        if is_leaf(x):
            return pieces[x - 1]
        return Node(x.decoration, tuple(go(c) for c in x.children), x.token)

    return go(body)


def substitute(sigma, head, args):
    """``mu_sigma(head; args)`` for a surjection ``sigma: T -> S``."""
    T, S = sigma.source, sigma.target
    if head.arity != S:
        raise ArityMismatchError(f"head has arity {head.arity}, sigma lands in {S}")
    fib = trees.morphism_fibers(sigma)
    if len(args) != len(fib):
        raise ArityMismatchError(f"{len(args)} arguments for {len(fib)} fibers")
    for a, F in zip(args, fib):
        if a.arity != F:
            raise ArityMismatchError(f"argument of arity {a.arity} against fiber {F}")
    if head.is_unit:
        # S = U_n, a single fiber equal to T
        return FreeElement(T, args[0].body)
    return FreeElement(T, _graft(head.body, args, sigma.tip_map, S.tips))


def gamma(e):
    """Forget the arity; keep the decorated labelled planar tree."""
    return e.body


# collections for symmetric operads


def c_n(X, max_k):
    """``C_n(X)_[k]``: tokens of every tree with ``k`` tips, paired with their tree."""
    out = {}
    for k in range(2, max_k + 1):
        out[k] = [(T, tok) for T in trees.enumerate_pruned_trees(X.n, k) for tok in X.tokens(T)]
    return out


def s(Y):
    """``S(Y)_k = Y_k x Sigma_k``."""
    return {k: [(y, perm) for y in items for perm in ordinals.all_permutations(k)] for k, items in Y.items()}


def free_symmetric(Z, k):
    """Elements of arity ``k`` of the free symmetric operad on the Sigma-free collection ``Z``.

    ``Z[m]`` lists pairs ``((T, token), perm)``.  Since Sigma_m acts freely,
    every orbit has a representative with the identity permutation, so an
    element is a labelled planar tree whose vertices with ``m`` inputs carry
    an orbit representative from ``Z[m]``.
    """
    check_k(k, "free_symmetric")
    reps = {}
    for m, items in Z.items():
        ident = tuple(range(1, m + 1))
        reps[m] = [y for y, perm in items if perm == ident]
    return list(_free_sym(tuple((m, tuple(v)) for m, v in sorted(reps.items())), tuple(range(1, k + 1))))


@lru_cache(maxsize=None)
def _free_sym(reps, labels):
    if len(labels) == 1:
        return (labels[0],)
    table = dict(reps)
    out = []
    k = len(labels)
    for m in range(2, k + 1):
        decos = table.get(m, ())
        if not decos:
            continue
        for blocks in planar._ordered_partitions(labels, m):
            options = [_free_sym(reps, blk) for blk in blocks]
            for kids in product(*options):
                for T, tok in decos:
                    out.append(Node(T, tuple(kids), tok))
    out.sort(key=planar.node_key)
    return tuple(out)


# iterated free functor


def free_collection(X, max_k):
    """The reduced collection underlying ``RF_n(X)``, tokens being :class:`FreeElement` values."""
    mapping = {}
    for T in trees.enumerate_reduced_trees(X.n, max_k):
        elems = free_n_operad(X, T)
        if elems:
            mapping[T] = tuple(elems)
    return SetCollection(X.n, tuple(sorted(mapping.items(), key=lambda e: e[0].key())))


@lru_cache(maxsize=None)
def iterate_count(X, m, T):
    """``|RF_n^m(X)_T|`` by recursion on the depth ``m``."""
    if m < 1:
        raise ValueError("depth must be >= 1")
    if T.is_linear:
        return 1
    if m == 1:
        return free_count(X, T)
    total = 0
    for shape in planar.enumerate_dominated(T):
        c = 1
        for D in planar.decorations(shape):
            c *= iterate_count(X, m - 1, D)
            if not c:
                break
        total += c
    return total


@dataclass
class IterateResult:
    depth: int
    arity: PrunedTree
    elements: list
    count_free: int
    count_chains: int

    @property
    def agree(self):
        return len(self.elements) == self.count_free == self.count_chains


def iterate_free(X, m, T, build_elements=True):
    """The m-th iterate ``RF_n^m(X)_T``, counted by nesting and by chains in ``RH_T``."""
    if m not in (1, 2, 3):
        raise ValueError("depth must be 1, 2 or 3")
    from . import catops

    elems = []
    if build_elements:
        Y = X
        for _ in range(m - 1):
            Y = free_collection(Y, T.tips)
        elems = free_n_operad(Y, T)
    count = iterate_count(X, m, T)
    chains = catops.chain_count(X, m, T)
    return IterateResult(m, T, elems, count, chains)


def restrict_morphism(sigma, labels):
    """Restrict a tree morphism to the tips in ``labels``, landing in the subtree they span."""
    labels = sorted(labels)
    img = sorted({sigma.tip_map[t - 1] for t in labels})
    pos = {y: i for i, y in enumerate(img, start=1)}
    src = trees.restricted_tree(sigma.source, labels)
    tgt = trees.restricted_tree(sigma.target, img)
    m = trees.lift_tip_map(tuple(pos[sigma.tip_map[t - 1]] for t in labels), src, tgt)
    assert m is not None
    return m, img


def compose_morphisms(rho, sigma):
    """``rho . sigma`` for tree morphisms ``sigma: T -> S`` and ``rho: S -> R``."""
    f = tuple(rho.tip_map[y - 1] for y in sigma.tip_map)
    m = trees.lift_tip_map(f, sigma.source, rho.target)
    assert m is not None
    return m


def associativity_sides(rho, sigma, x, ys, zs):
    """Both evaluations of ``x`` (arity R), ``ys`` (fibers of rho) and ``zs`` (fibers of sigma).

    Left: ``mu_sigma(mu_rho(x; ys); zs)``.  Right: ``mu_{rho sigma}(x; w_1, ...)``
    where ``w_i = mu_{sigma_i}(y_i; zs over the fiber of y_i)``.
    """
    left = substitute(sigma, substitute(rho, x, ys), zs)
    comp = compose_morphisms(rho, sigma)
    rho_blocks = trees.tip_fibers(rho.tip_map, rho.target.tips)
    inner = []
    for i, blk_S in enumerate(rho_blocks):
        tips_T = [t for t, y in enumerate(sigma.tip_map, start=1) if y in blk_S]
        sig_i, img = restrict_morphism(sigma, tips_T)
        assert img == sorted(blk_S)
        inner.append(substitute(sig_i, ys[i], [zs[y - 1] for y in img]))
    right = substitute(comp, x, inner)
    return left, right

