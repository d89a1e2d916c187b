"""
Walls for P^1 x quintic
=======================

Classes are pairs (m, n); the parameter space has coordinates xB, xJ, xL.
"""
from fractions import Fraction

from fmstab import NumClass, ParameterBox, enumerate_walls_in_box, quintic_point, quintic_scenario, wall_value
from fmstab.walls import quintic_chart, quintic_degenerate_pairs, quintic_determinant_form, slice_grid

n0 = NumClass(0, (1, 1))
box = ParameterBox.parse(quintic_chart(), "xB=-1..1,xJ=1..2,xL=1..2")
walls = enumerate_walls_in_box(n0, box)
for w in walls:
    print(w)

# the wall function is a sum of three 2x2 determinants
_, check = quintic_scenario()
print(check(3, 2, 1, 1, 1, 0, Fraction(1, 3), 2, 5))
w = walls[0]
x = (Fraction(-1, 2), 1, Fraction(3, 2))
print(wall_value(quintic_point(*x), w), quintic_determinant_form(0, 1, 1, w.e, *w.xi, *x))

# pairs where the xJ term drops out
print("degenerate pairs for chi0=4, n0=6:", quintic_degenerate_pairs(4, 6))

# sign table on the xJ = 1 slice
for row in slice_grid(quintic_chart(), {"xJ": 1}, "xB", [-1, 0, 1], "xL", [1, 2], walls):
    print(*row, sep="\t")
