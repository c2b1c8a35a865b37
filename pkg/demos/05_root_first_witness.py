"""A composable tree that cannot be contracted starting from its root."""

from operad_wb import planar

found = planar.root_first_search(2, 4, min_k=3, stop_at_first=False, mode="strict")
print(len(found), "witnesses with 4 leaves")
T, x = found[0]
print("target tree:", T.compact())
print("decorated tree:", planar.compact(x))
print("leaves-first sequence reaches the corolla:")
for step in planar.leaves_first(planar.composable_structure(x, T)):
    print("  ", planar.compact(step))
