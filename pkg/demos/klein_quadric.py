"""The free class-2 group on four generators: its Pfaffian is the Klein quadric."""

from zetaforge.fpgeom import count_points, fano_count, find_line, is_smooth_mod_p
from zetaforge.grouppres import free_class2, pfaffian

F = free_class2(4)
Q = pfaffian(F)
print("Pfaffian:", Q)

for p in (2, 3):
    points = count_points(Q, p, 6)
    lines = fano_count(Q, p, 1, 6)
    planes = fano_count(Q, p, 2, 6)
    print(f"p={p}: {points} points, {lines} lines, {planes} planes;",
          "predicted", (p**2 + 1) * (p**2 + p + 1), (p + 1) * (p**2 + 1) * (p**2 + p + 1), 2 * (p**2 + 1) * (p + 1))

# smooth, but full of lines, so the main formula does not apply
print("smooth at 3:", is_smooth_mod_p(Q, 3, 6))
print("a line at 2:", find_line(Q, 2, 6))
