import json
import warnings

import pytest
from hypothesis import given, strategies as st

from zetaforge.exactalg import MPoly, parse_mpoly
from zetaforge.grouppres import (
    Presentation,
    PresentationError,
    determinant,
    evaluate_matrix,
    form_matrix,
    free_class2,
    gaussian_heisenberg,
    grenham,
    heisenberg,
    hypothesis_report,
    invariants,
    parse_presentation,
    pfaffian,
    pfaffian_of,
    serialize_presentation,
)

y1, y2 = MPoly.var("y1"), MPoly.var("y2")


def test_parse_heisenberg():
    pres = parse_presentation({"d": 2, "dprime": 1, "entries": [{"i": 1, "j": 2, "form": [1]}]})
    assert pres.M == ((( 0,), (1,)), ((-1,), (0,)))
    assert pres.hirsch_length == 3
    assert pres == heisenberg()


def test_parse_grenham3_from_json_text():
    doc = json.dumps({"d": 3, "dprime": 2, "entries": [
        {"i": 1, "j": 3, "form": [1, 0]}, {"i": 2, "j": 3, "form": [0, 1]}]})
    assert parse_presentation(doc) == grenham(3)


def test_parse_errors():
    with pytest.raises(PresentationError, match="diagonal"):
        parse_presentation({"d": 2, "dprime": 1, "entries": [{"i": 1, "j": 1, "form": [1]}]})
    with pytest.raises(PresentationError, match="inconsistent"):
        parse_presentation({"d": 2, "dprime": 1, "entries": [
            {"i": 1, "j": 2, "form": [1]}, {"i": 2, "j": 1, "form": [1]}]})
    with pytest.raises(PresentationError, match="malformed"):
        parse_presentation("{not json")
    with pytest.raises(PresentationError, match="malformed"):
        parse_presentation({"d": 2})
    with pytest.raises(PresentationError):
        parse_presentation({"d": 2, "dprime": 1, "entries": [{"i": 1, "j": 2, "form": [1, 0]}]})


def test_consistent_lower_entry_accepted():
    pres = parse_presentation({"d": 2, "dprime": 1, "entries": [
        {"i": 1, "j": 2, "form": [1]}, {"i": 2, "j": 1, "form": [-1]}]})
    assert pres == heisenberg()


def test_unused_generator_warns():
    with pytest.warns(UserWarning, match="dprime"):
        parse_presentation({"d": 2, "dprime": 2, "entries": [{"i": 1, "j": 2, "form": [1, 0]}]})


def test_pfaffian_examples():
    assert pfaffian(heisenberg()) == y1
    assert pfaffian(gaussian_heisenberg()) == y1 ** 2 + y2 ** 2
    assert pfaffian(free_class2(4)) == parse_mpoly("y1*y6 - y2*y5 + y3*y4")
    assert pfaffian(grenham(3)).is_zero()
    assert pfaffian(grenham(4)).is_zero()


def test_generic_pfaffian_by_matchings():
    # classic 4x4 Pfaffian a12 a34 - a13 a24 + a14 a23
    names = {(0, 1): "a", (0, 2): "b", (0, 3): "c", (1, 2): "d", (1, 3): "e", (2, 3): "f"}
    A = [[MPoly.zero()] * 4 for _ in range(4)]
    for (i, j), v in names.items():
        A[i][j] = MPoly.var(v)
        A[j][i] = -MPoly.var(v)
    a, b, c, d, e, f = (MPoly.var(v) for v in "abcdef")
    pf = pfaffian_of(A)
    assert pf == a * f - b * e + c * d
    assert pf * pf == determinant(A)


def test_pfaffian_sign_convention():
    # the matching (12)(34)(56) carries +1
    A = [[0] * 6 for _ in range(6)]
    for k in range(3):
        A[2 * k][2 * k + 1], A[2 * k + 1][2 * k] = 1, -1
    assert pfaffian_of(A) == 1


def test_invariants():
    inv = invariants(gaussian_heisenberg())
    assert inv.pfaffian_degree == 2
    assert invariants(grenham(3)).pfaffian_degree is None


def test_evaluate_matrix():
    M = evaluate_matrix(gaussian_heisenberg(), [1, 2])
    assert M[0][2] == 1 and M[0][3] == 2 and M[1][2] == 2 and M[1][3] == -1
    assert all(M[i][j] == -M[j][i] for i in range(4) for j in range(4))


def test_hypothesis_report_examples():
    r = hypothesis_report(heisenberg(), 3)
    assert r["pf_nonzero"] and r["n_points"] == 0
    assert "smooth_mod_p" in r["vacuous"] and "line_free_mod_p" in r["vacuous"]
    r = hypothesis_report(gaussian_heisenberg(), 3)
    assert (r["smooth_mod_p"], r["line_free_mod_p"], r["n_points"]) == (True, True, 0)
    r = hypothesis_report(gaussian_heisenberg(), 5)
    assert (r["smooth_mod_p"], r["line_free_mod_p"], r["n_points"]) == (True, True, 2)
    r = hypothesis_report(gaussian_heisenberg(), 2, assert_irreducible=True)
    assert r["smooth_mod_p"] is False and r["good_reduction"] is False
    assert r["irreducible_over_Q"] == "asserted"
    assert hypothesis_report(heisenberg(), 3)["irreducible_over_Q"] == "unchecked"
    r = hypothesis_report(grenham(3), 3)
    assert not r["pf_nonzero"] and r["unchecked"]
    with pytest.raises(ValueError):
        hypothesis_report(heisenberg(), 4)


def test_hypothesis_report_budget_partial():
    r = hypothesis_report(free_class2(4), 3, budget=10)
    assert "n_points" in r["unchecked"] and r["n_points"] is None


# ---------------------------------------------------------------------------


@st.composite
def presentations(draw):
    d = draw(st.integers(2, 5))
    dp = draw(st.integers(1, 3))
    entries = []
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            form = draw(st.lists(st.integers(-2, 2), min_size=dp, max_size=dp))
            entries.append((i, j, form))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return Presentation.from_entries(d, dp, entries)


@given(presentations())
def test_serialize_roundtrip(pres):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert parse_presentation(serialize_presentation(pres)) == pres


@given(presentations())
def test_pfaffian_squares_to_determinant(pres):
    pf = pfaffian(pres)
    det = MPoly.coerce(determinant(form_matrix(pres)))
    if pres.d % 2:
        assert pf.is_zero() and det.is_zero()
    else:
        assert pf * pf == det
