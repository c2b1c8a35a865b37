"""Small finite-poset toolkit on boolean numpy matrices.

``leq[i, j]`` is True iff ``i <= j``; the matrix must be reflexive.
"""

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components


def strict(leq):
    lt = np.array(leq, dtype=bool)
    np.fill_diagonal(lt, False)
    return lt


def chain_counts(leq):
    """``counts[d]`` = number of chains with ``d + 1`` elements (d-simplices of the order complex)."""
    lt = strict(leq).astype(np.float64)
    size = lt.shape[0]
    if size == 0:
        return []
    cur = np.ones(size)
    counts = []
    while cur.any():
        total = cur.sum()
        if total > 2**52:
            raise OverflowError("chain count exceeds exact float range")
        counts.append(int(round(total)))
        cur = cur @ lt
    return counts


def euler_characteristic(leq):
    return sum((-1) ** d * c for d, c in enumerate(chain_counts(leq)))


def components(leq):
    """Connected components of the comparability graph."""
    m = np.asarray(leq, dtype=bool)
    if m.shape[0] == 0:
        return 0, np.zeros(0, dtype=int)
    ncomp, labels = connected_components(csr_matrix(m | m.T), directed=False)
    return int(ncomp), labels


def is_connected(leq):
    return components(leq)[0] == 1


def has_maximum(leq):
    m = np.asarray(leq, dtype=bool)
    if m.shape[0] == 0:
        return False
    return bool(m.all(axis=0).any())


def maximal(leq):
    lt = strict(leq)
    return [i for i in range(lt.shape[0]) if not lt[i].any()]


def minimal(leq):
    lt = strict(leq)
    return [i for i in range(lt.shape[0]) if not lt[:, i].any()]


def hasse_edges(leq):
    """Covering pairs ``(i, j)`` with ``i < j`` and nothing strictly between."""
    lt = strict(leq)
    through = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
    cover = lt & ~through
    return [(int(i), int(j)) for i, j in zip(*np.nonzero(cover))]


def is_partial_order(leq):
    m = np.asarray(leq, dtype=bool)
    if not m.diagonal().all():
        return False
    if (m & m.T & ~np.eye(m.shape[0], dtype=bool)).any():
        return False
    mi = m.astype(np.int64)
    return not ((mi @ mi > 0) & ~m).any()


def to_dot(labels, edges, name="P"):
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, lab in enumerate(labels):
        esc = str(lab).replace('"', '\\"')
        lines.append(f'  n{i} [label="{esc}"];')
    for i, j in edges:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
