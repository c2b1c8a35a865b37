"""Two-coloured (Swiss-Cheese type) pruned trees, their operads and symmetrisation.

A coloured tree is a pruned n-tree together with a flag saying whether its
first level-1 branch is the colour-1 branch.  Colour-1 tips are then exactly
the tips of that branch; all other tips have colour 2.  Arity ``(k, l)``
counts colour-1 and colour-2 tips.

Decorated objects of arity ``(k, l)`` carry leaf labels ``1..k+l`` with
colour-1 labels ``1..k``.  A vertex has output colour 1 iff some leaf above
it has colour 1, and at such a vertex the children of colour 1 sit exactly
at the first level-1 branch of the decoration.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
import json
import random
from typing import Any, Dict, List, Tuple

from . import catops, freeops, planar, trees
from .errors import ArityMismatchError, InvalidMapError, check_k, check_objects
from .freeops import FreeElement
from .planar import Node, is_leaf
from .trees import PrunedTree, TreeMorphism


def first_branch(T):
    """Tips lying over the first level-1 node."""
    if T.is_degenerate:
        return ()
    return tuple(t for t in range(1, T.tips + 1) if T.projections[1][t - 1] == 1)


@dataclass(frozen=True)
class ColouredTree:
    base: PrunedTree
    distinguished: bool = False

    @property
    def n(self):
        return self.base.n

    @property
    def tips(self):
        return self.base.tips

    @property
    def colour_one(self):
        return first_branch(self.base) if self.distinguished else ()

    @property
    def arity(self):
        k1 = len(self.colour_one)
        return k1, self.base.tips - k1

    def colour(self, t):
        return 1 if t in self.colour_one else 2

    @property
    def colours(self):
        c1 = set(self.colour_one)
        return tuple(1 if t in c1 else 2 for t in range(1, self.tips + 1))

    def compact(self):
        return self.base.compact() + ("*" if self.distinguished else "")

    def __str__(self):
        return self.compact()

    def key(self):
        return (self.base.key(), self.distinguished)

    def __lt__(self, other):
        return self.key() < other.key()


def to_json(c):
    return {**trees.to_json(c.base), "distinguished": bool(c.distinguished)}


def from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    data = dict(data)
    flag = bool(data.pop("distinguished", False))
    return ColouredTree(trees.from_json(data), flag)


def _colour_set_ok(T, colour_one):
    """Order-theoretic test: ``xi`` into ``M_0^2`` is order preserving and colour 1 has no ``<_0`` pairs."""
    colour_one = set(colour_one)
    if not colour_one:
        return True
    if any(not 1 <= t <= T.tips for t in colour_one):
        return False
    xi = tuple(1 if t in colour_one else 2 for t in range(1, T.tips + 1))
    if trees.lift_tip_map(xi, T, trees.M(T.n, 0, 2)) is None:
        return False
    x = trees.to_ordinal(T)
    c1 = sorted(colour_one)
    return all(x.entry(a, b)[0] >= 1 for i, a in enumerate(c1) for b in c1[i + 1:])


def validate_coloured(c, colour_one=None):
    """Check a coloured tree, or a raw ``(tree, colour-1 tip set)`` pair."""
    if isinstance(c, ColouredTree):
        if colour_one is not None:
            raise TypeError("colour set given together with a ColouredTree")
        return _colour_set_ok(c.base, c.colour_one)
    if isinstance(c, tuple) and colour_one is None:
        c, colour_one = c
    return _colour_set_ok(c, colour_one or ())


def colouring_of(T, colour_one):
    """The :class:`ColouredTree` with the given colour-1 tips, or ``None`` if there is none."""
    colour_one = tuple(sorted(set(colour_one)))
    if not colour_one:
        return ColouredTree(T, False)
    if colour_one != first_branch(T) or not _colour_set_ok(T, colour_one):
        return None
    return ColouredTree(T, True)


def _fiber_colourings(f, Tc, Sc):
    """Coloured fibers of the tip map ``f: Tc -> Sc`` or ``None`` if the colour rule fails."""
    tc, sc = Tc.colours, Sc.colours
    n = Tc.n
    out = []
    for y in range(1, Sc.tips + 1):
        blk = [t for t, fy in enumerate(f, start=1) if fy == y]
        cols = [tc[t - 1] for t in blk]
        if sc[y - 1] == 2:
            if 1 in cols:
                return None
            F = trees.restricted_tree(Tc.base, blk) if blk else trees.degenerate_tree(n)
            out.append(ColouredTree(F, False))
            continue
        # a colour-1 output needs a colour-1 input
        if 1 not in cols:
            return None
        F = trees.restricted_tree(Tc.base, blk)
        c = colouring_of(F, [i for i, col in enumerate(cols, start=1) if col == 1])
        if c is None:
            return None
        out.append(c)
    return out


@dataclass(frozen=True)
class ColouredMorphism:
    source: ColouredTree
    target: ColouredTree
    morphism: TreeMorphism

    def __post_init__(self):
        m = self.morphism
        if m.source != self.source.base or m.target != self.target.base:
            raise InvalidMapError("underlying morphism does not match the coloured trees")
        if _fiber_colourings(m.tip_map, self.source, self.target) is None:
            raise InvalidMapError(f"{m.tip_map} does not respect colours {self.source} -> {self.target}")

    @property
    def tip_map(self):
        return self.morphism.tip_map

    def fibers(self):
        return _fiber_colourings(self.tip_map, self.source, self.target)


def is_coloured(m, Tc, Sc):
    return _fiber_colourings(m.tip_map, Tc, Sc) is not None


def coloured_morphisms(T, S, surjective=False):
    """Every tree morphism ``T -> S`` obeying the colour rule, in lexicographic tip-map order."""
    out = []
    if surjective:
        maps = sorted(planar.ordered_surjections(T.base, S.base))
    else:
        maps = product(range(1, S.tips + 1), repeat=T.tips)
    for f in maps:
        m = trees.lift_tip_map(f, T.base, S.base)
        if m is not None and is_coloured(m, T, S):
            out.append(ColouredMorphism(T, S, m))
    return out


def coloured_fibers(m):
    return m.fibers()


def compose(rho, sigma):
    """``rho . sigma`` for coloured morphisms ``sigma: T -> S`` and ``rho: S -> R``."""
    return ColouredMorphism(sigma.source, rho.target, freeops.compose_morphisms(rho.morphism, sigma.morphism))


def enumerate_coloured_trees(n, k):
    """All coloured trees with ``k`` tips (undistinguished first)."""
    out = []
    for T in trees.enumerate_pruned_trees(n, k):
        out.append(ColouredTree(T, False))
    for T in trees.enumerate_pruned_trees(n, k):
        out.append(ColouredTree(T, True))
    return out


# suspension


def suspend(T):
    """``(n-1)``-tree to the n-tree with one level-1 node."""
    return PrunedTree(T.n + 1, T.levels + (1,), T.fibers + ((T.levels[-1],),))


def desuspend(T):
    if T.levels[-1] != 1:
        raise ValueError(f"{T} is not a suspension")
    return PrunedTree(T.n - 1, T.levels[:-1], T.fibers[:-1])


def suspend_morphism(m):
    s = trees.lift_tip_map(m.tip_map, suspend(m.source), suspend(m.target))
    assert s is not None
    return s


def map_node(x, deco, token=lambda t: t):
    if is_leaf(x):
        return x
    return Node(deco(x.decoration), tuple(map_node(c, deco, token) for c in x.children), token(x.token))


def desuspend_node(x):
    return map_node(x, desuspend)


def desuspend_element(e):
    """A free element of a suspended arity, read in degree ``n-1``."""
    if isinstance(e, FreeElement):
        return FreeElement(desuspend(e.arity), desuspend_node(e.body))
    return e


# collections


@dataclass(frozen=True)
class SCCollection:
    n: int
    entries: Tuple[Tuple[ColouredTree, Tuple[Any, ...]], ...] = ()

    def __post_init__(self):
        seen = set()
        for c, toks in self.entries:
            if c.n != self.n:
                raise ArityMismatchError(f"tree {c} has degree {c.n}, collection has {self.n}")
            if not c.base.is_reduced:
                raise ValueError(f"collection entries must be reduced trees, got {c}")
            if c in seen:
                raise ValueError(f"tree {c} listed twice")
            if len(set(toks)) != len(toks):
                raise ValueError(f"tokens at {c} are not unique")
            seen.add(c)

    @classmethod
    def from_dict(cls, n, mapping):
        items = sorted(((c, tuple(v)) for c, v in mapping.items() if v), key=lambda e: e[0].key())
        return cls(n, tuple(items))

    def tokens(self, c):
        cache = self.__dict__.get("_cache")
        if cache is None:
            cache = dict(self.entries)
            object.__setattr__(self, "_cache", cache)
        return cache.get(c, ())


def one_point_sc(n, max_k):
    mapping = {}
    for T in trees.enumerate_reduced_trees(n, max_k):
        mapping[ColouredTree(T, False)] = ("*",)
        mapping[ColouredTree(T, True)] = ("*",)
    return SCCollection.from_dict(n, mapping)


def random_sc_collection(n, max_k, seed, max_tokens=2):
    rng = random.Random(seed)
    mapping = {}
    for T in trees.enumerate_reduced_trees(n, max_k):
        for flag in (False, True):
            c = ColouredTree(T, flag)
            mapping[c] = tuple(f"x{c.compact()}_{i}" for i in range(rng.randint(0, max_tokens)))
    return SCCollection.from_dict(n, mapping)


def sc_collection_to_json(X):
    return {"n": X.n, "entries": [{"tree": to_json(c), "tokens": list(toks)} for c, toks in X.entries]}


def sc_collection_from_json(data):
    if isinstance(data, str):
        data = json.loads(data)
    n = int(data["n"])
    mapping = {}
    for item in data["entries"]:
        raw = dict(item["tree"])
        raw.setdefault("n", n)
        mapping[from_json(raw)] = tuple(str(t) for t in item["tokens"])
    return SCCollection.from_dict(n, mapping)


def colour_two_part(X):
    """The plain degree-n collection sitting on undistinguished trees."""
    return freeops.SetCollection.from_dict(X.n, {c.base: toks for c, toks in X.entries if not c.distinguished})


def colour_one_part(X):
    """The degree ``n-1`` collection on trees whose tips are all colour 1."""
    mapping = {}
    for c, toks in X.entries:
        if c.distinguished and c.base.levels[-1] == 1:
            mapping[desuspend(c.base)] = toks
    return freeops.SetCollection.from_dict(X.n - 1, mapping)


# decorated objects


def has_colour_one(x, k):
    return any(t <= k for t in planar.leaves(x))


def vertex_colouring(v, k):
    return ColouredTree(v.decoration, has_colour_one(v, k))


def sc_valid(x, k):
    """Colour-1 children of every colour-1 vertex fill exactly its first level-1 branch."""
    for _, v in planar.vertices(x):
        flags = [has_colour_one(c, k) for c in v.children]
        if any(flags):
            b = len(first_branch(v.decoration))
            if flags != [True] * b + [False] * (len(flags) - b):
                return False
    return True


def enumerate_sc(n, k, l):
    """Reduced decorated trees of arity ``(k, l)`` (colour-1 leaves ``1..k``)."""
    if k < 0 or l < 0 or k + l < 1:
        raise ValueError(f"bad arity ({k}, {l})")
    check_k(k + l, "enumerate_sc")
    return [x for x in planar.enumerate_all(n, k + l) if sc_valid(x, k)]


@lru_cache(maxsize=None)
def _sc_dominated(T, flag):
    c = ColouredTree(T, flag)
    if T.tips == 1:
        return (1,)
    out = []
    for m in range(2, T.tips + 1):
        for S in trees.enumerate_pruned_trees(T.n, m):
            Sc = ColouredTree(S, flag)
            for f in planar.ordered_surjections(T, S):
                fibs = _fiber_colourings(f, c, Sc)
                if fibs is None:
                    continue
                blocks = trees.tip_fibers(f, m)
                options = [
                    [planar.relabel_onto(t, blk) for t in _sc_dominated(F.base, F.distinguished)]
                    for F, blk in zip(fibs, blocks)
                ]
                for kids in product(*options):
                    out.append(Node(S, tuple(kids)))
    out.sort(key=planar.node_key)
    return tuple(out)


def sc_dominated(c):
    """Shapes of free elements of arity ``c``: decorated trees dominated by ``c`` respecting colours."""
    check_k(c.tips, "sc_dominated")
    if not c.base.is_reduced:
        return []
    return list(_sc_dominated(c.base, c.distinguished))


def decorate(shape, X, k):
    verts = planar.vertices(shape)
    options = [X.tokens(vertex_colouring(v, k)) for _, v in verts]
    return [planar.with_tokens(shape, choice) for choice in product(*options)]


def free_sc_operad(X, c):
    """Elements of arity ``c`` of the free SC n-operad on ``X``."""
    if c.n != X.n:
        raise ArityMismatchError("degree mismatch between collection and tree")
    if c.base.is_linear:
        return [freeops.unit(c.n)]
    k1 = c.arity[0]
    out = []
    for shape in sc_dominated(c):
        out.extend(FreeElement(c.base, body) for body in decorate(shape, X, k1))
    return out


# operads


class SCTerminalOperad:
    def __init__(self, n):
        self.n = n

    def elements(self, c):
        return ("*",)

    def mu(self, sigma, head, args):
        return "*"

    def unit(self, colour):
        return "e"


class SCFreeOperad:
    def __init__(self, X):
        self.X = X
        self.n = X.n
        self._cache = {}

    def elements(self, c):
        if c not in self._cache:
            self._cache[c] = tuple(free_sc_operad(self.X, c))
        return self._cache[c]

    def mu(self, sigma, head, args):
        return freeops.substitute(sigma.morphism, head, args)

    def unit(self, colour):
        return freeops.unit(self.n)


class ColourTwoRestriction:
    """The plain n-operad of colour-2 operations."""

    def __init__(self, A):
        self.A = A
        self.n = A.n
        self.unit = A.unit(2)

    def elements(self, T):
        return self.A.elements(ColouredTree(T, False))

    def mu(self, sigma, head, args):
        cm = ColouredMorphism(ColouredTree(sigma.source, False), ColouredTree(sigma.target, False), sigma)
        return self.A.mu(cm, head, args)


class ColourOneRestriction:
    """The ``(n-1)``-operad of operations whose inputs are all colour 1."""

    def __init__(self, A):
        self.A = A
        self.n = A.n - 1
        self.unit = A.unit(1)

    def elements(self, T):
        return self.A.elements(ColouredTree(suspend(T), True))

    def mu(self, sigma, head, args):
        s = suspend_morphism(sigma)
        cm = ColouredMorphism(ColouredTree(s.source, True), ColouredTree(s.target, True), s)
        return self.A.mu(cm, head, args)


# the coloured analogue of rh


@dataclass
class SCRh:
    k: int
    l: int
    poset: catops.GeneratedPoset
    certificates: List[ColouredMorphism]  # aligned with poset.generators


@lru_cache(maxsize=None)
def build_scrh(n, k, l):
    objs = enumerate_sc(n, k, l)
    check_objects(len(objs), "build_scrh")
    index = {x: i for i, x in enumerate(objs)}
    gens, certs = [], []
    for i, x in enumerate(objs):
        if is_leaf(x):
            continue
        for c in planar.all_contractions(x):
            j = index.get(c.result)
            if j is None:
                continue
            v = planar.at(x, c.path)
            flag = has_colour_one(v, k)
            src, tgt = ColouredTree(c.new_decoration, flag), ColouredTree(v.decoration, flag)
            if not is_coloured(c.sigma, src, tgt):
                continue
            gens.append((i, j, c))
            certs.append(ColouredMorphism(src, tgt, c.sigma))
    return SCRh(k, l, catops.from_generators(n, k + l, objs, gens), certs)


class _Bound:
    """Presents one generator's coloured certificate through the plain operad interface."""

    def __init__(self, A, cert, k):
        self.A, self.cert, self.k = A, cert, k

    def mu(self, sigma, head, args):
        return self.A.mu(self.cert, head, args)

    def unit_of(self, child):
        if self.k == 0:
            return self.A.unit(2)
        return self.A.unit(1 if has_colour_one(child, self.k) else 2)


def build_sc_diagram(A, R):
    P, k = R.poset, R.k
    values, lookup = [], []
    for x in P.objects:
        if is_leaf(x):
            vals = [x]
        else:
            verts = planar.vertices(x)
            options = [A.elements(vertex_colouring(v, k)) for _, v in verts]
            vals = [planar.with_tokens(x, choice) for choice in product(*options)]
        values.append(vals)
        lookup.append({e: i for i, e in enumerate(vals)})
    check_objects(sum(len(v) for v in values), "sc diagram")
    maps = []
    for (s, t, c), cert in zip(P.generators, R.certificates):
        b = _Bound(A, cert, k)
        row = []
        for e in values[s]:
            img = catops.apply_contraction(b, c, e, unit_of=b.unit_of)
            row.append(lookup[t][img])
        maps.append(row)
    return catops.SetDiagram(P, values, maps), lookup


@dataclass
class SCSymmetrisation:
    n: int
    k: int
    l: int
    diagram: catops.SetDiagram
    lookup: List[Dict[Any, int]]
    full: catops.Colimit
    restricted: catops.Colimit
    comparison: List[int]

    @property
    def size(self):
        return len(self.full)

    @property
    def comparison_is_bijection(self):
        return len(self.restricted) == len(self.full) and sorted(set(self.comparison)) == list(range(len(self.full)))

    def representative(self, c):
        o, e = self.full.representatives[c]
        return self.diagram.values[o][e]

    def class_of(self, element):
        o = self.diagram.poset.index[planar.strip(element)]
        return int(self.full.classes[o][self.lookup[o][element]])

    def act(self, perm_k, perm_l, c):
        """``Sigma_k x Sigma_l`` acting by relabelling each colour separately."""
        k = self.k

        def move(i):
            return perm_k[i - 1] if i <= k else k + perm_l[i - k - 1]

        return self.class_of(planar.relabel(self.representative(c), move))

    def elements(self):
        return [self.representative(c) for c in range(self.size)]


def sc_symmetrise(A, k, l):
    """``SCSym_n(A)_{k,l}`` as the colimit over the coloured analogue of ``rh^n_{k+l}``."""
    R = build_scrh(A.n, k, l)
    D, lookup = build_sc_diagram(A, R)
    full = catops.colimit(D)
    P = R.poset
    cor = P.corollas() if k + l > 1 else list(range(len(P.objects)))
    cor_set = set(cor)
    gens = [g for g, (s, t, _) in enumerate(P.generators) if s in cor_set and t in cor_set]
    restricted = catops.colimit(D, cor, gens)
    comparison = [int(full.classes[o][e]) for o, e in restricted.representatives]
    return SCSymmetrisation(A.n, k, l, D, lookup, full, restricted, comparison)


# restriction identities


def partition(S, obj_map=lambda x: x, elem_map=lambda e: e):
    """Classes of a symmetrisation as a set of frozensets of mapped elements."""
    D = S.diagram
    groups = {}
    for o, vals in enumerate(D.values):
        for e, val in enumerate(vals):
            c = int(S.full.classes[o][e])
            groups.setdefault(c, set()).add(elem_map(val))
    return {frozenset(g) for g in groups.values()}


def _desuspend_value(x):
    return map_node(x, desuspend, desuspend_element)


@dataclass
class RestrictionReport:
    side: str
    arity: int
    sc_size: int
    plain_size: int
    same_objects: bool
    same_partition: bool
    identical: bool  # values and classes agree position by position

    @property
    def ok(self):
        return self.sc_size == self.plain_size and self.same_objects and self.same_partition


def check_colour_two(A, l, plain=None):
    """``SCSym(A)_{0,l}`` against the degree-n pipeline on the colour-2 part."""
    plain = plain if plain is not None else ColourTwoRestriction(A)
    S = sc_symmetrise(A, 0, l)
    R = catops.symmetrise(plain, l)
    same_objects = S.diagram.poset.objects == R.diagram.poset.objects
    identical = (
        same_objects
        and S.diagram.values == R.diagram.values
        and all((a == b).all() for a, b in zip(S.full.classes, R.full.classes))
    )
    return RestrictionReport("colour-2", l, S.size, R.size, same_objects, partition(S) == partition(R), identical)


def check_colour_one(A, k, plain=None, translate=None):
    """``SCSym(A)_{k,0}`` against the degree ``n-1`` pipeline on the colour-1 part.

    With ``translate`` the SC values are desuspended before comparison; this
    is needed when ``plain`` is built independently in degree ``n-1``.
    """
    if translate is None:
        translate = plain is not None
    plain = plain if plain is not None else ColourOneRestriction(A)
    S = sc_symmetrise(A, k, 0)
    R = catops.symmetrise(plain, k)
    objs = [desuspend_node(x) for x in S.diagram.poset.objects]
    same_objects = sorted(objs, key=planar.node_key) == sorted(R.diagram.poset.objects, key=planar.node_key)
    emap = _desuspend_value if translate else (lambda v: map_node(v, desuspend))
    same = partition(S, elem_map=emap) == partition(R)
    return RestrictionReport("colour-1", k, S.size, R.size, same_objects, same, False)
