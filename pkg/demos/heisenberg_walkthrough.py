"""The Heisenberg group from presentation to verified zeta function."""

from zetaforge import compare_report, heisenberg, ideal_counts, normal_zeta_smooth, verify_funeq
from zetaforge.grouppres import pfaffian

H = heisenberg()
print("presentation:", H.d, "generators mod centre,", H.d_prime, "central")
print("Pfaffian:", pfaffian(H))  # y1, no zeros in P^0

# closed form: zeta_{Z_p^2}(s) * zeta_p(3s - 2)
z = normal_zeta_smooth(H)
print("zeta(p, t) =", z.value)

# the same numbers by counting ideals of p-power index
for p in (2, 3, 5):
    print(f"p={p}: series", [int(c) for c in z.series(p, 6)])
    print(f"p={p}: ideals", ideal_counts(H, p, 6))

# inverting p and t multiplies by -p^3 t^5
rep = verify_funeq(z)
print("functional equation:", rep["holds"], rep["sign"], rep["p_exponent"], rep["t_exponent"])

print(compare_report(H, 2, 5)["status"])
