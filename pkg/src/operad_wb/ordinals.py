"""n-tuples of complementary orders on finite label sets.

An :class:`NOrder` on ``{1, ..., size}`` records, for every unordered pair
``i < j``, the unique level ``p`` at which the two labels are comparable and
the direction of the comparison.  Everything else in the package (trees,
planar trees, cells) reduces to questions about these tables.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Tuple

from .errors import DimensionMismatchError, InvalidMapError, InvalidOrderError, check_k

LT = 1
GT = -1


def pair_index(i, j, size):
    """Position of the pair ``(i, j)``, ``1 <= i < j <= size``, in lexicographic order."""
    return (i - 1) * size - (i - 1) * i // 2 + (j - i - 1)


@dataclass(frozen=True)
class NOrder:
    """Complementary orders ``<_0, ..., <_{n-1}`` on ``{1, ..., size}``.

    ``table`` lists one ``(level, sign)`` entry per pair ``i < j`` in
    lexicographic order; ``sign == LT`` means ``i <_level j`` and
    ``sign == GT`` means ``j <_level i``.
    """

    n: int
    size: int
    table: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise InvalidOrderError(f"degree must be >= 1, got {self.n}")
        if self.size < 0:
            raise InvalidOrderError("negative size")
        if len(self.table) != self.size * (self.size - 1) // 2:
            raise InvalidOrderError(
                f"expected {self.size * (self.size - 1) // 2} pair entries, got {len(self.table)}"
            )
        for level, sign in self.table:
            if not 0 <= level < self.n or sign not in (LT, GT):
                raise InvalidOrderError(f"bad pair entry {(level, sign)} for n={self.n}")

    @classmethod
    def from_relations(cls, n, size, relations):
        """Build from an iterable of ``(a, b, p)`` meaning ``a <_p b``.

        Every unordered pair must appear exactly once.
        """
        slots = [None] * (size * (size - 1) // 2)
        for a, b, p in relations:
            if a == b or not (1 <= a <= size and 1 <= b <= size):
                raise InvalidOrderError(f"bad pair {(a, b)}")
            i, j, sign = (a, b, LT) if a < b else (b, a, GT)
            idx = pair_index(i, j, size)
            if slots[idx] is not None:
                raise InvalidOrderError(f"pair {(i, j)} compared twice")
            slots[idx] = (p, sign)
        if any(s is None for s in slots):
            raise InvalidOrderError("some pair is not compared by any order")
        out = cls(n, size, tuple(slots))
        out.validate()
        return out

    @classmethod
    def terminal(cls, n):
        return cls(n, 1, ())

    @classmethod
    def initial(cls, n):
        return cls(n, 0, ())

    def entry(self, i, j):
        """``(level, sign)`` for the ordered pair ``(i, j)``, ``i != j``.

        ``sign == LT`` means ``i <_level j``.
        """
        if i < j:
            return self.table[pair_index(i, j, self.size)]
        level, sign = self.table[pair_index(j, i, self.size)]
        return level, -sign

    def less(self, i, j, p):
        level, sign = self.entry(i, j)
        return level == p and sign == LT

    def relations(self):
        """All ``(a, b, p)`` with ``a <_p b``."""
        out = []
        for (i, j), (p, sign) in zip(combinations(range(1, self.size + 1), 2), self.table):
            out.append((i, j, p) if sign == LT else (j, i, p))
        return out

    def validate(self):
        """Raise :class:`InvalidOrderError` unless every ``<_p`` is transitive."""
        k = self.size
        for a in range(1, k + 1):
            for b in range(1, k + 1):
                if a == b:
                    continue
                p, s = self.entry(a, b)
                if s != LT:
                    continue
                for c in range(1, k + 1):
                    if c in (a, b):
                        continue
                    r, t = self.entry(b, c)
                    if t == LT and r == p and self.entry(a, c) != (p, LT):
                        raise InvalidOrderError(f"<_{p} is not transitive on {(a, b, c)}")
        return self

    @cached_property
    def linear(self):
        """Labels sorted by the induced linear order (``i < j`` iff ``i <_p j`` for some p)."""
        labels = list(range(1, self.size + 1))
        # insertion sort keeps this valid for any complementary n-order
        out = []
        for x in labels:
            pos = len(out)
            while pos > 0 and self.entry(x, out[pos - 1])[1] == LT:
                pos -= 1
            out.insert(pos, x)
        return tuple(out)

    def key(self):
        return (self.n, self.size, tuple((p, 0 if s == LT else 1) for p, s in self.table))

    def __lt__(self, other):
        return self.key() < other.key()

    def __str__(self):
        rels = ",".join(f"{a}<{p}{b}" for a, b, p in sorted(self.relations()))
        return f"[{self.size}|{rels}]" if rels else f"[{self.size}]"


def is_total(x):
    """True iff ``i <_p j`` and ``j <_r l`` always give ``i <_{min(p, r)} l``."""
    k = x.size
    for a in range(1, k + 1):
        for b in range(1, k + 1):
            if a == b:
                continue
            p, s = x.entry(a, b)
            if s != LT:
                continue
            for c in range(1, k + 1):
                if c == a or c == b:
                    continue
                r, t = x.entry(b, c)
                if t == LT and x.entry(a, c) != (min(p, r), LT):
                    return False
    return True


@dataclass(frozen=True)
class OrderedMap:
    source: NOrder
    target: NOrder
    assignment: Tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.source.size:
            raise InvalidMapError("assignment must be total on source labels")
        if any(not 1 <= y <= self.target.size for y in self.assignment):
            raise InvalidMapError("assignment leaves the target label set")

    def __call__(self, i):
        return self.assignment[i - 1]

    @classmethod
    def identity(cls, source, target=None):
        return cls(source, source if target is None else target, tuple(range(1, source.size + 1)))


def _preserves(source, target, assignment):
    for (i, j), (p, sign) in zip(combinations(range(1, source.size + 1), 2), source.table):
        a, b = (i, j) if sign == LT else (j, i)
        fa, fb = assignment[a - 1], assignment[b - 1]
        if fa == fb:
            continue
        r, t = target.entry(fa, fb)
        if not ((t == LT and r >= p) or (t == GT and r > p)):
            return False
    return True


def is_ordered_map(f):
    """Check that ``a <_p b`` implies ``f(a) <=_r f(b)`` with r >= p, or ``f(b) <_r f(a)`` with r > p."""
    return _preserves(f.source, f.target, f.assignment)


def dominates(big, small):
    """True iff ``small`` is dominated by ``big``, i.e. the identity ``big -> small`` is order preserving."""
    if big.size != small.size or big.n != small.n:
        raise DimensionMismatchError(
            f"cannot compare orders of shape (n={big.n}, k={big.size}) and (n={small.n}, k={small.size})"
        )
    return _preserves(big, small, tuple(range(1, big.size + 1)))


def restrict(x, labels):
    """The order induced on ``labels`` (increasing), relabelled to ``1..len(labels)``."""
    labels = sorted(labels)
    m = len(labels)
    table = tuple(x.entry(labels[a], labels[b]) for a, b in combinations(range(m), 2))
    return NOrder(x.n, m, table)


def fibers(f):
    """Preimages of every target label, in target order, with their induced orders."""
    if not is_ordered_map(f):
        raise InvalidMapError("not a map of n-ordered sets")
    return [
        restrict(f.source, [i for i in range(1, f.source.size + 1) if f(i) == y])
        for y in range(1, f.target.size + 1)
    ]


def compose(g, f):
    """``g . f`` for ordered maps ``f: X -> Y`` and ``g: Y -> Z``."""
    if f.target != g.source:
        raise InvalidMapError("maps are not composable")
    return OrderedMap(f.source, g.target, tuple(g(f(i)) for i in range(1, f.source.size + 1)))


def act(perm, x):
    """Relabel ``x`` along ``perm`` (``perm[i-1]`` is the new name of ``i``)."""
    perm = tuple(perm)
    if sorted(perm) != list(range(1, x.size + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{x.size}")
    rels = [(perm[a - 1], perm[b - 1], p) for a, b, p in x.relations()]
    k = x.size
    slots = [None] * (k * (k - 1) // 2)
    for a, b, p in rels:
        i, j, sign = (a, b, LT) if a < b else (b, a, GT)
        slots[pair_index(i, j, k)] = (p, sign)
    return NOrder(x.n, k, tuple(slots))


def enumerate_total_orders(n, k):
    """All total complementary n-orders on ``{1..k}``, sorted canonically.

    Elements are added one at a time and every new triple is checked against
    the min-rule, so partial tables that cannot be completed are cut early.
    """
    check_k(k, "enumerate_total_orders")
    if n < 1:
        raise ValueError("degree must be >= 1")
    choices = [(p, s) for p in range(n) for s in (LT, GT)]
    # rel[a][b] = (p, sign) for a != b, built incrementally
    results = []

    def consistent(rel, m):
        # all triples containing m
        for a in range(1, m):
            for b in range(1, m + 1):
                if b == a:
                    continue
                for c in range(1, m + 1):
                    if c in (a, b) or m not in (a, b, c):
                        continue
                    p, s = rel[a][b]
                    if s != LT:
                        continue
                    r, t = rel[b][c]
                    if t == LT and rel[a][c] != (min(p, r), LT):
                        return False
        # the loop above skips a == m
        for b in range(1, m):
            for c in range(1, m):
                if b == c:
                    continue
                p, s = rel[m][b]
                if s != LT:
                    continue
                r, t = rel[b][c]
                if t == LT and rel[m][c] != (min(p, r), LT):
                    return False
        return True

    def extend(rel, m):
        if m > k:
            table = tuple(rel[i][j] for i, j in combinations(range(1, k + 1), 2))
            results.append(NOrder(n, k, table))
            return
        rel[m] = {}
        for assign in _product(choices, m - 1):
            for b, (p, s) in zip(range(1, m), assign):
                rel[b][m] = (p, s)
                rel[m][b] = (p, -s)
            if consistent(rel, m):
                extend(rel, m + 1)
        for b in range(1, m):
            rel[b].pop(m, None)
        del rel[m]

    extend({}, 1)
    results.sort(key=NOrder.key)
    return results


def _product(choices, r):
    if r == 0:
        yield ()
        return
    for head in choices:
        for tail in _product(choices, r - 1):
            yield (head,) + tail


def all_permutations(k):
    return [tuple(p) for p in permutations(range(1, k + 1))]


def to_json(x):
    return {
        "n": x.n,
        "size": x.size,
        "pairs": [
            {"i": i, "j": j, "level": p, "dir": "lt" if s == LT else "gt"}
            for (i, j), (p, s) in zip(combinations(range(1, x.size + 1), 2), x.table)
        ],
    }


def from_json(data):
    n, size = int(data["n"]), int(data["size"])
    rels = []
    for item in data["pairs"]:
        i, j, p = int(item["i"]), int(item["j"]), int(item["level"])
        if i >= j:
            raise InvalidOrderError(f"pair ({i},{j}) must have i < j")
        if item["dir"] == "lt":
            rels.append((i, j, p))
        elif item["dir"] == "gt":
            rels.append((j, i, p))
        else:
            raise InvalidOrderError(f"unknown direction {item['dir']!r}")
    return NOrder.from_relations(n, size, rels)


def ordinal(n, relations, size):
    """Shorthand: ``ordinal(2, [(1, 2, 0)], 2)`` is ``1 <_0 2``."""
    return NOrder.from_relations(n, size, relations)
