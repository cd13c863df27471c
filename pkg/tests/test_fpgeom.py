import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from zetaforge.budget import BudgetExceeded
from zetaforge.exactalg import MPoly, parse_mpoly
from zetaforge.fpgeom import (
    SkewForm,
    common_isotropic_subspace,
    count_points,
    fano_count,
    find_line,
    is_prime,
    is_smooth_mod_p,
    pencil_all_degenerate,
    pencil_pfaffian,
    projective_points,
    random_degenerate_pencil,
    random_skew_form,
    subspace_count,
    subspaces,
)
from zetaforge.grouppres import free_class2, pfaffian

KLEIN = pfaffian(free_class2(4))
CIRCLE = parse_mpoly("y1^2 + y2^2")


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_projective_points_normalized():
    pts = list(projective_points(3, 3))
    assert len(pts) == 13 == len(set(pts))
    assert all(x[next(i for i, c in enumerate(x) if c)] == 1 for x in pts)


def test_count_points_examples():
    assert count_points(parse_mpoly("y1"), 7, 1) == 0
    assert count_points(CIRCLE, 5) == 2
    assert count_points(CIRCLE, 3) == 0
    assert count_points(KLEIN, 2) == 35


@pytest.mark.parametrize("p", [2, 3, 5])
def test_klein_points(p):
    assert count_points(KLEIN, p, 6) == (p ** 2 + 1) * (p ** 2 + p + 1)


def test_count_points_errors():
    with pytest.raises(ValueError, match="homogeneous"):
        count_points(parse_mpoly("y1^2 + y2"), 3)
    with pytest.raises(ValueError):
        count_points(CIRCLE, 4)
    with pytest.raises(BudgetExceeded):
        count_points(KLEIN, 5, budget=100)


def test_count_points_brute_oracle():
    # affine count / (p - 1) cross-check
    f = parse_mpoly("y1^3 + y2^3 + y3^3")
    for p in (2, 3, 5, 7):
        affine = sum(1 for x in product(range(p), repeat=3) if any(x) and (x[0] ** 3 + x[1] ** 3 + x[2] ** 3) % p == 0)
        assert count_points(f, p) == affine // (p - 1)


def test_smoothness_examples():
    assert is_smooth_mod_p(CIRCLE, 5)
    assert not is_smooth_mod_p(CIRCLE, 2)
    assert is_smooth_mod_p(KLEIN, 3)


def test_find_line_examples():
    assert find_line(CIRCLE, 5) is None
    line = find_line(KLEIN, 2)
    assert line is not None
    B = [list(r) for r in line]
    assert fano_count(KLEIN, 2, 1) > 0
    for u in projective_points(2, 2):
        x = [sum(u[j] * B[j][i] for j in range(2)) % 2 for i in range(6)]
        assert KLEIN.eval_mod(x, 2) == 0


CUBICS = ["y1^3 + y2^3 + y3^3 + 2*y4^3", "y1^3 + y2^3 + y3^3 + y4^3", "y1*y2*y3 + y4^3", "y1^2*y2 + y3^2*y4"]


@pytest.mark.parametrize("text", CUBICS)
@pytest.mark.parametrize("p", [2, 3])
def test_find_line_agrees_with_fano(text, p):
    f = parse_mpoly(text)
    assert (find_line(f, p) is None) == (fano_count(f, p, 1) == 0)


@pytest.mark.parametrize("text", CUBICS + ["y1*y4 - y2*y3"])
def test_points_equal_fano_zero(text):
    f = parse_mpoly(text)
    assert count_points(f, 3) == fano_count(f, 3, 0)


def test_symbolic_confirmation_beyond_point_test():
    # y1 y2 (y1 - y2) vanishes at all 7 points of P^2(F_2), so every line
    # passes a pointwise test; only its three component lines lie on it
    f = parse_mpoly("y1^2*y2 - y1*y2^2")
    assert count_points(f, 2, 3) == 7
    assert fano_count(f, 2, 1, 3) == 3


def test_subspaces_are_distinct():
    for n, k, p in [(4, 2, 2), (4, 2, 3), (5, 3, 2)]:
        seen = {tuple(map(tuple, B)) for B in subspaces(n, k, p)}
        assert len(seen) == subspace_count(n, k, p)


def test_pencil_examples():
    Z = SkewForm.zero(4, 2)
    assert pencil_all_degenerate(Z, Z)
    J = SkewForm.standard(2, 3)
    assert not pencil_all_degenerate(J, SkewForm.zero(4, 3))
    assert pencil_pfaffian(J, SkewForm.zero(4, 3)) == [1, 0, 0]
    rng = random.Random(1)
    for _ in range(20):
        A, B = (random_skew_form(rng, 4, 3) for _ in range(2))
        A = _kill_first(A)
        B = _kill_first(B)
        assert pencil_all_degenerate(A, B)


def _kill_first(F):
    M = [list(r) for r in F.matrix]
    for i in range(len(M)):
        M[0][i] = M[i][0] = 0
    return SkewForm(tuple(map(tuple, M)), F.q)


def test_skewform_validation():
    with pytest.raises(ValueError):
        SkewForm(((0, 1), (1, 0)), 3)
    with pytest.raises(ValueError):
        SkewForm(((1, 0), (0, 0)), 3)
    with pytest.raises(ValueError):
        SkewForm(((0, 1), (-1, 0)), 4)
    with pytest.raises(ValueError):
        pencil_pfaffian(SkewForm.zero(2, 3), SkewForm.zero(4, 3))


def test_isotropic_examples():
    Z = SkewForm.zero(2, 2)
    assert common_isotropic_subspace(Z, Z, 2) == [[1, 0], [0, 1]]
    phi = SkewForm(((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)), 2)
    B = common_isotropic_subspace(phi, SkewForm.zero(4, 2), 3)
    assert B is not None and len(B) == 3
    # a nondegenerate form has no isotropic subspace beyond half dimension
    J = SkewForm.standard(2, 3)
    assert common_isotropic_subspace(J, J, 3) is None


def test_random_degenerate_pencils_q3():
    rng = random.Random(7)
    for _ in range(100):
        phi, psi = random_degenerate_pencil(rng, 2, 3)
        assert pencil_all_degenerate(phi, psi)
        B = common_isotropic_subspace(phi, psi, 3)
        assert B is not None
        assert all(phi.pair(u, v) == 0 == psi.pair(u, v) for u in B for v in B)


@given(st.integers(2, 6), st.randoms(use_true_random=False))
def test_lemma1_over_f2(n, rnd):
    phi, psi = random_skew_form(rnd, n, 2), random_skew_form(rnd, n, 2)
    assert common_isotropic_subspace(phi, psi, (n + 1) // 2) is not None
