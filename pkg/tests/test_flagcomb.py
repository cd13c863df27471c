from itertools import permutations, product
from math import comb

import pytest

from zetaforge.exactalg import MPoly, RatFn, invert_variables
from zetaforge.flagcomb import (
    FlagType,
    check_flag_funeq,
    compose,
    flag_count,
    flag_dimension,
    flag_fn,
    flag_fn_by_sum,
    gaussian_binomial,
    longest_word,
    permutation_type,
    schubert_c,
    schubert_c_cells,
    schubert_c_inclusion_exclusion,
    subsets,
)
from zetaforge.fpgeom import subspaces

q = MPoly.var("q")
X1, X2 = MPoly.var("X1"), MPoly.var("X2")


def test_gaussian_binomial_examples():
    assert gaussian_binomial(2, 1) == q + 1
    assert gaussian_binomial(4, 2) == q ** 4 + q ** 3 + 2 * q ** 2 + q + 1
    assert gaussian_binomial(7, 0) == MPoly.const(1)
    with pytest.raises(ValueError):
        gaussian_binomial(3, 4)


@pytest.mark.parametrize("n,k,p", [(4, 2, 2), (3, 1, 3), (5, 2, 2), (4, 3, 3)])
def test_gaussian_binomial_counts_subspaces(n, k, p):
    # independent oracle: row-reduced echelon enumeration over F_p
    assert gaussian_binomial(n, k)(p) == sum(1 for _ in subspaces(n, k, p))


def _complete_flags_F2(n):
    """Brute force: chains of subspaces V_1 < ... < V_{n-1} in F_2^n."""
    vecs = [v for v in product(range(2), repeat=n) if any(v)]

    def span(basis):
        out = set()
        for c in product(range(2), repeat=len(basis)):
            out.add(tuple(sum(ci * b[i] for ci, b in zip(c, basis)) % 2 for i in range(n)))
        return frozenset(out)

    count = 0

    def extend(basis, current):
        nonlocal count
        if len(basis) == n - 1:
            count += 1
            return
        seen = set()
        for v in vecs:
            if v in current:
                continue
            nxt = span(basis + [v])
            if nxt not in seen:
                seen.add(nxt)
                extend(basis + [v], nxt)

    extend([], frozenset([(0,) * n]))
    return count


def test_flag_count_examples():
    assert flag_count(3, ()) == MPoly.const(1)
    assert flag_count(3, (1,)) == q ** 2 + q + 1
    b = flag_count(3, (1, 2))
    assert b == q ** 3 + 2 * q ** 2 + 2 * q + 1
    assert b(2) == 21 == _complete_flags_F2(3)
    assert flag_count(4, (1, 2, 3))(2) == _complete_flags_F2(4)


def test_flag_type_validation():
    with pytest.raises(ValueError):
        FlagType(3, (3,))
    with pytest.raises(ValueError):
        FlagType(3, (0,))
    assert FlagType(4, (3, 1)).I == (1, 3)
    assert FlagType(4, (1,)).complement.I == (2, 3)


def test_schubert_examples():
    assert schubert_c(3, (1,)) == q ** 2 + q
    assert schubert_c(3, (1, 2)) == q ** 3
    for n in range(1, 6):
        assert schubert_c(n, ()) == MPoly.const(1)


def test_permutation_type_examples():
    assert permutation_type((3, 6, 5, 1, 4, 2))[0] == frozenset({2, 3, 5})
    assert permutation_type((1, 2, 3, 4)) == (frozenset(), 0)
    for n in range(2, 7):
        assert permutation_type(longest_word(n)) == (frozenset(range(1, n)), comb(n, 2))
    with pytest.raises(ValueError):
        permutation_type((1, 1, 2))


def test_flag_fn_examples():
    assert flag_fn(1) == RatFn.const(1)
    assert flag_fn(2) == RatFn(1 + q * X1, 1 - X1)
    num = 1 + (q ** 2 + q) * X1 + (q ** 2 + q) * X2 + q ** 3 * X1 * X2
    assert flag_fn(3) == RatFn(num, (1 - X1) * (1 - X2))
    assert str(flag_fn(2)) == "(q*X1 + 1) / ((1 - X1))"


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_flag_fn_matches_term_sum(n):
    assert flag_fn(n) == flag_fn_by_sum(n)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_flag_funeq(n):
    assert check_flag_funeq(n)


@pytest.mark.parametrize("n", range(2, 7))
def test_mobius_and_q_factorial(n):
    total = MPoly.zero()
    for I in subsets(n):
        b = flag_count(n, I)
        acc = MPoly.zero()
        for J in subsets(n):
            if set(J) <= set(I):
                acc = acc + schubert_c(n, J)
        assert acc == b
        total = total + schubert_c(n, I)
    qfact = MPoly.const(1)
    for i in range(1, n + 1):
        qfact = qfact * sum((q ** k for k in range(i)), MPoly.zero())
    assert total == qfact
    by_length = MPoly.zero()
    for w in permutations(range(1, n + 1)):
        by_length = by_length + q ** permutation_type(w)[1]
    assert total == by_length


@pytest.mark.parametrize("n", range(2, 7))
def test_flag_count_inversion(n):
    for I in subsets(n):
        b = RatFn(flag_count(n, I))
        assert invert_variables(b, ["q"]) == b * RatFn.laurent_monomial({"q": -flag_dimension(n, I)})


def test_two_routes_for_c_agree():
    for n in range(2, 7):
        for I in subsets(n):
            assert schubert_c_cells(n, I) == schubert_c_inclusion_exclusion(n, I)


def test_compose():
    w = (2, 3, 1)
    assert compose(w, (1, 2, 3)) == w
    assert compose(w, longest_word(3)) == (1, 3, 2)
