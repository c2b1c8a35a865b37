"""Symmetrising a free 2-operad and comparing with the free symmetric operad."""

from operad_wb import catops, freeops

n = 2
X = freeops.random_collection(n, 3, seed=1)
Z = freeops.s(freeops.c_n(X, 3))
A = catops.FreeOperad(X)
for k in (1, 2, 3):
    S = catops.symmetrise(A, k)
    free = freeops.free_symmetric(Z, k)
    print(f"k={k}: colimit {S.size}, free symmetric {len(free)}, corolla comparison bijective {S.comparison_is_bijection}")

T = catops.TerminalOperad(n)
print("terminal 2-operad, k=3:", catops.symmetrise(T, 3).size, "class")
