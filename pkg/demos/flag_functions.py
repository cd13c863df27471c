"""Flag varieties, Schubert cells and the rational functions F_n(q, X)."""

from itertools import permutations

from zetaforge.flagcomb import (
    check_flag_funeq,
    flag_count,
    flag_fn,
    permutation_type,
    schubert_c,
    subsets,
)

# flags of type I in F_q^4, counted as polynomials in q
for I in subsets(4):
    print("I =", I, " b_I =", flag_count(4, I), " c_I =", schubert_c(4, I))

# c_I also counts permutations with descent set I, weighted by q^length
w = (3, 6, 5, 1, 4, 2)
print("descent set and length of", w, "->", permutation_type(w))
print("#S_4 by descent set:", {I: sum(1 for v in permutations(range(1, 5)) if permutation_type(v)[0] == set(I))
                                for I in subsets(4)})

print("F_3 =", flag_fn(3))
for n in range(2, 7):
    print(f"F_{n}(1/q, 1/X) = (-1)^{n - 1} q^(-{n * (n - 1) // 2}) F_{n}:", check_flag_funeq(n))
