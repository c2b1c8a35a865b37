"""The finite poset ``rh^n_k``, colimits of set diagrams over it and set-level symmetrisation.

Objects of ``rh^n_k`` are reduced decorated trees with ``k`` labelled
leaves.  Generating arrows merge a vertex with some of its children along a
surjection of trees; they point from the expanded tree to the contracted one.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from graphlib import CycleError, TopologicalSorter
import json
import random
from typing import Any, Dict, List, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import freeops, ordinals, planar, poset, trees
from .errors import ArityMismatchError, CycleDetectedError, ResourceLimitError, TableError, check_objects
from .planar import Node, is_leaf

DENSE_LIMIT = 6000


@dataclass
class GeneratedPoset:
    n: int
    k: int
    objects: List[Any]
    generators: List[Tuple[int, int, Any]]
    order: List[int] = field(default_factory=list)  # topological: sources before targets

    def __post_init__(self):
        self.index = {x: i for i, x in enumerate(self.objects)}
        self.succ = [[] for _ in self.objects]
        for s, t, _ in self.generators:
            self.succ[s].append(t)
        self._closure = None

    def __len__(self):
        return len(self.objects)

    def reach_bits(self, columns):
        """For every object, a bitset over ``columns`` of the objects it reaches (reflexively)."""
        pos = {c: b for b, c in enumerate(columns)}
        bits = [0] * len(self.objects)
        for i in reversed(self.order):
            acc = 1 << pos[i] if i in pos else 0
            for j in self.succ[i]:
                acc |= bits[j]
            bits[i] = acc
        return bits

    @property
    def closure(self):
        """Dense reachability matrix; ``closure[i, j]`` iff ``i -> ... -> j``."""
        if self._closure is None:
            size = len(self.objects)
            if size > DENSE_LIMIT:
                raise ResourceLimitError(f"dense closure of {size} objects exceeds {DENSE_LIMIT}")
            bits = self.reach_bits(list(range(size)))
            mat = np.zeros((size, size), dtype=bool)
            for i, b in enumerate(bits):
                row = np.frombuffer(b.to_bytes((size + 7) // 8, "little"), dtype=np.uint8)
                mat[i] = np.unpackbits(row, bitorder="little")[:size].astype(bool)
            self._closure = mat
        return self._closure

    def corollas(self):
        return [i for i, x in enumerate(self.objects) if not is_leaf(x) and planar.depth(x) == 1]

    def leq(self, i, j):
        return bool(self.closure[i, j])


def _toposort(size, generators):
    graph = {i: set() for i in range(size)}
    for s, t, _ in generators:
        graph[t].add(s)
    try:
        return list(TopologicalSorter(graph).static_order())
    except CycleError as exc:
        raise CycleDetectedError(f"generating arrows contain a cycle: {exc.args[1]}") from exc


def from_generators(n, k, objects, generators):
    """Assemble a poset, failing loudly on cycles."""
    order = _toposort(len(objects), generators)
    return GeneratedPoset(n, k, list(objects), list(generators), order)


def build_rh(n, k):
    P = _build_rh(n, k)
    check_objects(len(P), "build_rh")
    return P


@lru_cache(maxsize=None)
def _build_rh(n, k):
    objs = planar.enumerate_all(n, k)
    check_objects(len(objs), "build_rh")
    index = {x: i for i, x in enumerate(objs)}
    gens = []
    for i, x in enumerate(objs):
        if is_leaf(x):
            continue
        for c in planar.all_contractions(x):
            gens.append((i, index[c.result], c))
    return from_generators(n, k, objs, gens)


def acyclic(n, k):
    try:
        _build_rh.__wrapped__(n, k)
    except CycleDetectedError:
        return False
    return True


def corolla_subposet(P):
    """Indices of corollas and their induced order, plus their total orders."""
    idx = P.corollas()
    bits = P.reach_bits(idx)
    size = len(idx)
    leq = np.zeros((size, size), dtype=bool)
    for a, i in enumerate(idx):
        for b in range(size):
            leq[a, b] = bool(bits[i] >> b & 1)
    orders = [planar.induced_order(P.objects[i]) for i in idx]
    return idx, leq, orders


@dataclass
class CommaResult:
    source: int
    targets: List[int]
    nonempty: bool
    connected: bool


def comma_over_corolla(P, i, _cache=None):
    cache = _cache if _cache is not None else _comma_cache(P)
    idx, leq, bits = cache
    mask = bits[i]
    members = [b for b in range(len(idx)) if mask >> b & 1]
    if not members:
        return CommaResult(i, [], False, False)
    sub = leq[np.ix_(members, members)]
    return CommaResult(i, [idx[b] for b in members], True, poset.is_connected(sub))


def _comma_cache(P):
    idx, leq, _ = corolla_subposet(P)
    return idx, leq, P.reach_bits(idx)


def check_cofinality(P):
    """Every comma category over the corolla sub-poset, as a list of :class:`CommaResult`."""
    cache = _comma_cache(P)
    return [comma_over_corolla(P, i, cache) for i in range(len(P.objects))]


# colimits


@dataclass
class SetDiagram:
    poset: GeneratedPoset
    values: List[List[Any]]
    maps: List[List[int]]  # maps[g][e] = index in the target set of the image of element e

    def __post_init__(self):
        for g, (s, t, _) in enumerate(self.poset.generators):
            if len(self.maps[g]) != len(self.values[s]):
                raise ArityMismatchError(f"generator {g} is not defined on all of its source")
            if any(not 0 <= y < len(self.values[t]) for y in self.maps[g]):
                raise ArityMismatchError(f"generator {g} leaves its target set")


@dataclass
class Colimit:
    representatives: List[Tuple[int, int]]
    classes: List[np.ndarray]  # classes[obj][e] = class id

    def __len__(self):
        return len(self.representatives)


def colimit(D, objects=None, generators=None):
    """Quotient of the disjoint union by ``x ~ f(x)`` along generating arrows.

    ``objects``/``generators`` restrict to a sub-diagram (indices into ``D``).
    Class ids are ordered by their least member in (object, element) order.
    """
    P = D.poset
    objs = list(range(len(P.objects))) if objects is None else list(objects)
    gens = list(range(len(P.generators))) if generators is None else list(generators)
    offset = {}
    total = 0
    for o in objs:
        offset[o] = total
        total += len(D.values[o])
    if total == 0:
        return Colimit([], [np.zeros(0, dtype=int) for _ in P.objects])
    rows, cols = [], []
    for g in gens:
        s, t, _ = P.generators[g]
        if s not in offset or t not in offset:
            continue
        base_s, base_t = offset[s], offset[t]
        for e, y in enumerate(D.maps[g]):
            rows.append(base_s + e)
            cols.append(base_t + y)
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(total, total))
    _, labels = connected_components(graph.tocsr(), directed=False)
    # renumber classes by least member
    first = {}
    for gid, lab in enumerate(labels):
        if lab not in first:
            first[lab] = gid
    order = sorted(first, key=first.get)
    renum = {lab: c for c, lab in enumerate(order)}
    where = []
    for o in objs:
        for e in range(len(D.values[o])):
            where.append((o, e))
    reps = [where[first[lab]] for lab in order]
    classes = [np.zeros(0, dtype=int) for _ in P.objects]
    for o in objs:
        size = len(D.values[o])
        classes[o] = np.array([renum[labels[offset[o] + e]] for e in range(size)], dtype=int)
    return Colimit(reps, classes)


# operads


class TerminalOperad:
    """One operation in every arity."""

    def __init__(self, n):
        self.n = n
        self.unit = "e"

    def elements(self, T):
        return ("*",)

    def mu(self, sigma, head, args):
        return "*"


class FreeOperad:
    def __init__(self, X):
        self.X = X
        self.n = X.n
        self.unit = freeops.unit(X.n)
        self._cache = {}

    def elements(self, T):
        got = self._cache.get(T)
        if got is None:
            got = tuple(freeops.free_n_operad(self.X, T))
            self._cache[T] = got
        return got

    def mu(self, sigma, head, args):
        return freeops.substitute(sigma, head, args)


class TableOperad:
    """Explicit finite operad given by element lists and a composition table."""

    def __init__(self, n, elements, table, unit="e"):
        self.n = n
        self.unit = unit
        self._elements = dict(elements)
        self._table = dict(table)

    def elements(self, T):
        return self._elements.get(T, ())

    def mu(self, sigma, head, args):
        key = (sigma.source, sigma.target, sigma.tip_map, head, tuple(args))
        try:
            out = self._table[key]
        except KeyError:
            raise TableError(
                f"no composition for {sigma.source}->{sigma.target} {sigma.tip_map} "
                f"with head {head!r} and arguments {list(args)!r}"
            ) from None
        if out not in self.elements(sigma.source):
            raise TableError(f"composition result {out!r} is not an element of {sigma.source}")
        return out

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["n"])

        def tree_of(d):
            return trees.from_json(d if "n" in d else {"n": n, **d})

        elements = {tree_of(e["tree"]): tuple(e["tokens"]) for e in data["elements"]}
        table = {}
        for c in data["compositions"]:
            key = (tree_of(c["source"]), tree_of(c["target"]), tuple(c["tip_map"]), c["head"], tuple(c["args"]))
            table[key] = c["result"]
        return cls(n, elements, table, data.get("unit", "e"))

    def to_json(self):
        return {
            "n": self.n,
            "unit": self.unit,
            "elements": [{"tree": trees.to_json(T), "tokens": list(v)} for T, v in self._elements.items()],
            "compositions": [
                {
                    "source": trees.to_json(s),
                    "target": trees.to_json(t),
                    "tip_map": list(f),
                    "head": h,
                    "args": list(a),
                    "result": r,
                }
                for (s, t, f, h, a), r in self._table.items()
            ],
        }


def tabulate(A, k):
    """Record every composition ``A`` performs while symmetrising at arity ``k`` as a table."""
    recorded = {}

    class Recorder:
        n = A.n
        unit = A.unit

        def elements(self, T):
            return A.elements(T)

        def mu(self, sigma, head, args):
            out = A.mu(sigma, head, args)
            recorded[(sigma.source, sigma.target, sigma.tip_map, head, tuple(args))] = out
            return out

    symmetrise(Recorder(), k, check=False)
    elements = {}
    for T in trees.enumerate_reduced_trees(A.n, k):
        if A.elements(T):
            elements[T] = tuple(A.elements(T))
    return TableOperad(A.n, elements, recorded, A.unit)


# symmetrisation


def tree_values(A, shape):
    """Product over vertices of ``A_{T_v}``, as token-decorated copies of ``shape``."""
    return freeops.decorate(shape, _AsCollection(A))


class _AsCollection:
    def __init__(self, A):
        self.A = A

    def tokens(self, T):
        return self.A.elements(T)


def apply_contraction(A, c, element, unit_of=None):
    """Image of a token-decorated tree along the generating arrow ``c``.

    Children that are not contracted contribute a unit; ``unit_of(child)``
    chooses it when the operad has several.
    """
    v = planar.at(element, c.path)
    args = []
    groups = []
    for y, child in enumerate(v.children):
        if y in c.contracted:
            args.append(child.token)
            groups.append(child.children)
        else:
            args.append(A.unit if unit_of is None else unit_of(child))
            groups.append((child,))
    token = A.mu(c.sigma, v.token, args)
    used = [0] * len(groups)
    kids = []
    for y in c.sigma.tip_map:
        kids.append(groups[y - 1][used[y - 1]])
        used[y - 1] += 1
    return planar.replace_at(element, c.path, Node(c.new_decoration, tuple(kids), token))


def build_diagram(A, P):
    values = []
    lookup = []
    for x in P.objects:
        if is_leaf(x):
            vals = [x]
        else:
            vals = tree_values(A, x)
        values.append(vals)
        lookup.append({e: i for i, e in enumerate(vals)})
    check_objects(sum(len(v) for v in values), "symmetrise diagram")
    maps = []
    for s, t, c in P.generators:
        row = []
        for e in values[s]:
            img = apply_contraction(A, c, e)
            try:
                row.append(lookup[t][img])
            except KeyError:
                raise TableError(f"image {planar.compact(img)} is not a value of the target object") from None
        maps.append(row)
    return SetDiagram(P, values, maps), lookup


@dataclass
class Symmetrisation:
    n: int
    k: int
    diagram: SetDiagram
    lookup: List[Dict[Any, int]]
    full: Colimit
    restricted: Colimit
    corollas: List[int]
    comparison: List[int]  # restricted class -> full class

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

    def act(self, perm, c):
        """Sigma_k acting on a class by relabelling the leaves of its representative."""
        rep = self.representative(c)
        return self.class_of(planar.relabel(rep, lambda i: perm[i - 1]))

    def elements(self):
        return [self.representative(c) for c in range(self.size)]


def symmetrise(A, k, check=True):
    """``Sym_n(A)_k`` as the colimit over ``rh^n_k``, compared with the corolla colimit."""
    P = build_rh(A.n, k)
    D, lookup = build_diagram(A, P)
    full = colimit(D)
    cor = P.corollas() if k > 1 else list(range(len(P.objects)))
    cor_set = set(cor)
    gens = [g for g, (s, t, _) in enumerate(P.generators) if s in cor_set and t in cor_set]
    restricted = colimit(D, cor, gens)
    comparison = [int(full.classes[o][e]) for o, e in restricted.representatives]
    out = Symmetrisation(A.n, k, D, lookup, full, restricted, cor, comparison)
    if check and not out.comparison_is_bijection:
        raise AssertionError(f"corolla colimit ({len(restricted)}) does not match full colimit ({len(full)})")
    return out


def action_is_valid(S, perms=None):
    """Relabelling permutes classes bijectively and respects composition of permutations."""
    k = S.k
    perms = perms or ordinals.all_permutations(k)
    size = S.size
    for p in perms:
        if sorted(S.act(p, c) for c in range(size)) != list(range(size)):
            return False
    for p in perms[:6]:
        for q in perms[:6]:
            pq = tuple(p[q[i] - 1] for i in range(k))
            for c in range(size):
                if S.act(p, S.act(q, c)) != S.act(pq, c):
                    return False
    return True


def graft(a, i, b):
    """Partial composition of decorated trees: plug ``b`` into leaf ``i`` of ``a``."""
    l = planar.leaf_count(b)

    def shift(j):
        return j if j < i else j + l - 1

    b2 = planar.relabel(b, lambda j: j + i - 1)

    def go(x):
        if is_leaf(x):
            return b2 if x == i else shift(x)
        return Node(x.decoration, tuple(go(c) for c in x.children), x.token)

    return go(a)


def compose_classes(Sa, ca, i, Sb, cb, Sout):
    return Sout.class_of(graft(Sa.representative(ca), i, Sb.representative(cb)))


def composition_well_defined(Sa, Sb, Sout, samples=50, seed=0):
    """Sampled check that ``a o_i b`` does not depend on the chosen class members."""
    rng = random.Random(seed)
    members_a = _members(Sa)
    members_b = _members(Sb)
    if not members_a or not members_b:
        return True
    for _ in range(samples):
        ea = rng.choice(members_a)
        eb = rng.choice(members_b)
        i = rng.randint(1, Sa.k)
        ca, cb = Sa.class_of(ea), Sb.class_of(eb)
        if Sout.class_of(graft(ea, i, eb)) != compose_classes(Sa, ca, i, Sb, cb, Sout):
            return False
    return True


def _members(S):
    out = []
    for vals in S.diagram.values:
        out.extend(vals)
    return out


# comma categories over a_T and iterated free operads


def down_set(P, T):
    """Objects with an arrow to ``corolla(T)``."""
    goal = P.index[planar.corolla(T)] if T.tips > 1 else 0
    bits = P.reach_bits([goal])
    return [i for i, b in enumerate(bits) if b]


def rh_comma(P, T):
    """The comma ``RH^n_T`` as a sub-poset: ``(indices, leq)``."""
    idx = down_set(P, T)
    if len(P.objects) <= DENSE_LIMIT:
        leq = P.closure[np.ix_(idx, idx)]
    else:
        bits = P.reach_bits(idx)
        leq = np.array([[bool(bits[i] >> b & 1) for b in range(len(idx))] for i in idx], dtype=bool)
    return idx, leq


def chain_count(X, m, T):
    """Non-strict chains ``W_m <= ... <= W_1`` in ``RH_T`` weighted by tokens on ``W_m``."""
    if T.is_linear:
        return 1
    P = build_rh(X.n, T.tips)
    idx, leq = rh_comma(P, T)
    w = np.array(
        [_weight(X, P.objects[i]) for i in idx],
        dtype=object,
    )
    L = leq.astype(object)
    vec = w
    for _ in range(m - 1):
        vec = L.T.dot(vec)
    return int(sum(vec))


def _weight(X, x):
    c = 1
    for D in planar.decorations(x):
        c *= len(X.tokens(D))
    return c


def order_complex(P_or_leq):
    leq = P_or_leq.closure if isinstance(P_or_leq, GeneratedPoset) else P_or_leq
    ncomp, _ = poset.components(leq)
    return {
        "chains": poset.chain_counts(leq),
        "euler": poset.euler_characteristic(leq),
        "connected": ncomp == 1,
        "components": ncomp,
    }


def has_maximum(leq):
    return poset.has_maximum(leq)


def to_dot(P):
    labels = [planar.compact(x) for x in P.objects]
    edges = sorted({(s, t) for s, t, _ in P.generators})
    return poset.to_dot(labels, edges, name=f"rh{P.n}_{P.k}")

