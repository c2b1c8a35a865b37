"""Two-colour symmetrisation and its restrictions to a single colour."""

from operad_wb import catops, sc

A = sc.SCTerminalOperad(2)
for k, l in [(1, 1), (1, 2), (2, 1), (2, 2)]:
    S = sc.sc_symmetrise(A, k, l)
    print(f"terminal, k={k} l={l}: {S.size} classes")

X = sc.one_point_sc(2, 3)
B = sc.SCFreeOperad(X)
for a in (1, 2, 3):
    two = sc.check_colour_two(B, a, plain=catops.FreeOperad(sc.colour_two_part(X)))
    one = sc.check_colour_one(B, a, plain=catops.FreeOperad(sc.colour_one_part(X)))
    print(f"arity {a}: (0,{a}) {two.sc_size}={two.plain_size}  ({a},0) {one.sc_size}={one.plain_size}")
