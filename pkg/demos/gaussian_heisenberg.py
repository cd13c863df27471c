"""Heisenberg group over Z[i]: the point count of y1^2 + y2^2 switches formulas by prime."""

from zetaforge import compare_report, gaussian_heisenberg, hypothesis_report, normal_zeta_smooth, verify_funeq
from zetaforge.grouppres import pfaffian

G = gaussian_heisenberg()
print("Pfaffian:", pfaffian(G))

# -1 is a square mod p exactly when p = 1 mod 4, giving two points on the conic
for p in (2, 3, 5, 7, 13):
    r = hypothesis_report(G, p)
    print(p, "points:", r["n_points"], "smooth:", r["smooth_mod_p"], "good reduction:", r["good_reduction"])

z = normal_zeta_smooth(G, "n")
print("W0 =", z.W0)
print("W1 =", z.W1)
print("funeq with symbolic n:", verify_funeq(z)["holds"])

# closed form against ideal counts; p = 2 is a bad prime for this presentation
for p, N in ((3, 4), (5, 4), (13, 3), (2, 4)):
    rep = compare_report(G, p, N)
    print(p, rep["status"], rep["coefficients"])
