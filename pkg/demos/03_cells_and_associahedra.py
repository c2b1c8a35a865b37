"""Cell counts below a tree: corollas of 1-trees give associahedra."""

from operad_wb import cells, trees

for m in (3, 4, 5):
    s = cells.cell_complex(trees.corolla_tree(m))
    print(f"[{m}]  f-vector {s.f_vector}  euler_c {s.euler_c}")

for T in trees.enumerate_reduced_trees(2, 3):
    s = cells.cell_complex(T)
    print(f"{T.compact():<16} f-vector {s.f_vector}  euler_c {s.euler_c}")
