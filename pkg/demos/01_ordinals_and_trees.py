"""Total 2-orders on three points and the pruned trees they correspond to."""

from operad_wb import ordinals, trees

n, k = 2, 3
orders = ordinals.enumerate_total_orders(n, k)
print(f"{len(orders)} total {n}-orders on {k} points")

for T in trees.enumerate_pruned_trees(n, k):
    x = trees.to_ordinal(T)
    back, perm = trees.from_total_order(x)
    print(f"{T.compact():<16} dim={trees.dimension(T)}  round trip ok: {back == T}")
