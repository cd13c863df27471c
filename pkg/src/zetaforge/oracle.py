"""Brute-force ground truth for normal zeta functions of class-2 Lie rings.

Ideals are counted over Z by Hermite normal forms, the weights w and w' are
computed from first principles, and truncated series are compared against
the closed formulas in :mod:`zetaforge.zetacore`.

Lattices are row spans.  The Lie ring of a presentation has basis
x_1..x_d, y_1..y_d' (in that order) with [x_i, x_j] = sum_k M_ij[k] y_k.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import List, NamedTuple, Optional, Sequence, Tuple

from . import budget as _budget
from .exactalg import series_coefficients
from .flagcomb import FlagType, flag_count, flag_dimension
from .fpgeom import count_points, is_prime
from .grouppres import Presentation, evaluate_matrix, grenham, pfaffian, hypothesis_report
from .lattice import (
    count_sublattices,
    enumerate_sublattices,
    full_rank_index,
    in_lattice,
    is_maximal,
    smith_form,
)

__all__ = [
    "LieRing",
    "enumerate_sublattices",
    "lattice_type",
    "LatticeType",
    "count_lattices_of_type",
    "count_lattices_of_type_formula",
    "count_lattices_of_type_enumerated",
    "center_index",
    "weight_wprime",
    "ideal_counts",
    "ideal_counts_bruteforce",
    "lattice_sum_A",
    "closed_form_for",
    "compare_report",
    "lambda_bruteforce",
    "lattice_types",
]


def _require_prime(p: int):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def _valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# ---------------------------------------------------------------------------
# Lie ring


@dataclass(frozen=True)
class LieRing:
    """Z^{d+d'} with class-2 bracket given by a presentation."""

    pres: Presentation

    @property
    def rank(self) -> int:
        return self.pres.d + self.pres.d_prime

    def bracket(self, u: Sequence[int], v: Sequence[int]) -> List[int]:
        d, dp = self.pres.d, self.pres.d_prime
        out = [0] * (d + dp)
        for i in range(d):
            if not u[i]:
                continue
            for j in range(d):
                if not v[j] or i == j:
                    continue
                c = u[i] * v[j]
                for k, m in enumerate(self.pres.M[i][j]):
                    if m:
                        out[d + k] += c * m
        return out

    def is_ideal(self, H: Sequence[Sequence[int]]) -> bool:
        """Is the full-rank lattice with HNF basis H closed under bracketing with L?"""
        h = self.rank
        for row in H:
            for i in range(self.pres.d):
                e = [int(k == i) for k in range(h)]
                if not in_lattice(self.bracket(e, row), H):
                    return False
        return True


# ---------------------------------------------------------------------------
# lattice types


class LatticeType(NamedTuple):
    I: Tuple[int, ...]
    r: Tuple[int, ...]
    w: int


def lattice_type(H: Sequence[Sequence[int]], p: int) -> LatticeType:
    """Type (I, r_I) of the homothety class of a full-rank lattice in Z^{d'}.

    The elementary divisors are shifted so the smallest is 1; I collects the
    positions where they jump and r_I the jumps.  w is the index exponent of
    the maximal representative.
    """
    n = len(H)
    D, _, _ = smith_form(H)
    divs = [abs(D[i][i]) for i in range(n)]
    exps = []
    for x in divs:
        if x == 0:
            raise ValueError("lattice is not of full rank")
        e = _valuation(x, p)
        if x != p ** e:
            raise ValueError(f"elementary divisor {x} is not a power of {p}")
        exps.append(e)
    exps.sort()
    exps = [e - exps[0] for e in exps]
    I, r = [], []
    for i in range(1, n):
        if exps[i] > exps[i - 1]:
            I.append(i)
            r.append(exps[i] - exps[i - 1])
    w = sum(ri * (n - i) for i, ri in zip(I, r))
    return LatticeType(tuple(I), tuple(r), w)


def _type_index(d_prime: int, I, r) -> int:
    return sum(ri * (d_prime - i) for i, ri in zip(I, r))


def count_lattices_of_type_formula(d_prime: int, I, r, p: int) -> int:
    """b_I(p) p^{sum r_i (d'-i) i - dim F_I}."""
    I, r = tuple(I), tuple(r)
    if len(I) != len(r) or any(x <= 0 for x in r):
        raise ValueError("r must have one positive entry per element of I")
    ft = FlagType(d_prime, I)
    if tuple(ft.I) != I:
        raise ValueError("I must be strictly increasing")
    b = flag_count(ft)(p)
    e = sum(ri * (d_prime - i) * i for i, ri in zip(I, r)) - flag_dimension(ft)
    return int(b * p ** e)


def count_lattices_of_type_enumerated(d_prime: int, I, r, p: int, *, budget=None) -> int:
    """Maximal lattices of type (I, r) found among all sublattices of index p^w."""
    want = (tuple(I), tuple(r))
    w = _type_index(d_prime, I, r)
    total = 0
    for H in enumerate_sublattices(d_prime, p, w, budget=budget):
        if not is_maximal(H, p):
            continue
        t = lattice_type(H, p)
        if (t.I, t.r) == want:
            total += 1
    return total


def count_lattices_of_type(d_prime: int, I, r, p: int, *, budget=None) -> int:
    """Number of maximal lattices of type (I, r); formula and enumeration must agree."""
    _require_prime(p)
    f = count_lattices_of_type_formula(d_prime, I, r, p)
    e = count_lattices_of_type_enumerated(d_prime, I, r, p, budget=budget)
    if f != e:
        raise AssertionError(f"type count mismatch for d'={d_prime}, I={I}, r={r}, p={p}: {f} vs {e}")
    return f


def lattice_types(d_prime: int, max_w: int):
    """Every (I, r) with index exponent w <= max_w."""
    from .flagcomb import subsets

    out = []
    for I in subsets(d_prime):
        weights = [d_prime - i for i in I]

        def rec(k, left, acc):
            if k == len(I):
                out.append((tuple(I), tuple(acc)))
                return
            ri = 1
            while ri * weights[k] <= left:
                rec(k + 1, left - ri * weights[k], acc + [ri])
                ri += 1

        rec(0, max_w, [])
    return out


# ---------------------------------------------------------------------------
# weights


def center_index(pres: Presentation, H: Sequence[Sequence[int]]) -> int:
    """|Z^d : Xbar| where Xbar = {g : [g, x_k] in Lambda' for all k}.

    The quotient Z^d / Xbar embeds in (Z^{d'}/Lambda')^d; its size is
    |Z^{d'}:Lambda'|^d divided by the index of the lattice spanned by the
    bracket rows together with d copies of Lambda'.
    """
    d, dp = pres.d, pres.d_prime
    idx = full_rank_index(H, dp)
    rows = []
    for l in range(d):
        rows.append([pres.M[l][k][j] for k in range(d) for j in range(dp)])
    for k in range(d):
        for row in H:
            v = [0] * (d * dp)
            v[k * dp:(k + 1) * dp] = row
            rows.append(v)
    return idx ** d // full_rank_index(rows, d * dp)


def weight_wprime(pres: Presentation, H: Sequence[Sequence[int]], p: int) -> int:
    """w' = w + log_p |G_p : X(Lambda')| via the Smith normal form U H V = D.

    The columns alpha^i of V give the congruences g M(alpha^i) = 0 mod
    D_ii; the kernel index is computed exactly over Z.
    """
    d, dp = pres.d, pres.d_prime
    if len(H) != dp:
        raise ValueError("lattice must live in Z^{d'}")
    D, _, V = smith_form(H)
    nu = [abs(D[i][i]) for i in range(dp)]
    if any(x == 0 for x in nu):
        raise ValueError("lattice is not of full rank")
    w = sum(_valuation(x, p) for x in nu)
    blocks = [evaluate_matrix(pres, [V[j][i] for j in range(dp)]) for i in range(dp)]
    rows = [[blocks[i][l][k] for i in range(dp) for k in range(d)] for l in range(d)]
    for i in range(dp):
        for k in range(d):
            v = [0] * (d * dp)
            v[i * d + k] = nu[i]
            rows.append(v)
    image = 1
    for x in nu:
        image *= x ** d
    image //= full_rank_index(rows, d * dp)
    return w + _valuation(image, p) if image > 1 else w


# ---------------------------------------------------------------------------
# ideal counts


def _fiber_counts(pres: Presentation, p: int, N: int, budget=None) -> List[int]:
    d, dp = pres.d, pres.d_prime
    _budget.check(sum(count_sublattices(dp, p, w) for w in range(N + 1)), "ideal_counts", budget)
    sub = [count_sublattices(d, p, m) for m in range(N + 1)]
    a = [0] * (N + 1)
    for w in range(N + 1):
        weight = p ** (w * d)
        for H in enumerate_sublattices(dp, p, w):
            e = _valuation(center_index(pres, H), p) if w else 0
            for n in range(w + e, N + 1):
                a[n] += weight * sub[n - w - e]
    return a


def ideal_counts(pres: Presentation, p: int, N: int, *, budget=None) -> List[int]:
    """[a_0, ..., a_N], a_k the number of ideals of index p^k.

    An ideal Lambda is fixed by its central part Lambda' = Lambda cap Z^{d'},
    its projection Lambda-bar to Z^d and a homomorphism Lambda-bar ->
    Z^{d'}/Lambda'; it is an ideal iff Lambda-bar lies in the centralizer
    lattice of Lambda'.  The count sums over Lambda' exactly.
    """
    _require_prime(p)
    if N < 0:
        raise ValueError("N must be >= 0")
    return _fiber_counts(pres, p, N, budget)


def ideal_counts_bruteforce(pres: Presentation, p: int, N: int, *, budget=None) -> List[int]:
    """Literal enumeration of all sublattices of Z^{d+d'} with an ideal test."""
    _require_prime(p)
    L = LieRing(pres)
    h = L.rank
    _budget.check(sum(count_sublattices(h, p, k) for k in range(N + 1)), "ideal_counts_bruteforce", budget)
    return [sum(1 for H in enumerate_sublattices(h, p, k) if L.is_ideal(H)) for k in range(N + 1)]


def lattice_sum_A(pres: Presentation, p: int, N: int, *, budget=None) -> List[int]:
    """Coefficients of t^0..t^N in A = sum over maximal classes of p^{d w} t^{w'}."""
    _require_prime(p)
    d, dp = pres.d, pres.d_prime
    _budget.check(sum(count_sublattices(dp, p, w) for w in range(N + 1)), "lattice_sum_A", budget)
    a = [0] * (N + 1)
    for w in range(N + 1):
        for H in enumerate_sublattices(dp, p, w):
            if not is_maximal(H, p):
                continue
            wp = weight_wprime(pres, H, p)
            if wp <= N:
                a[wp] += p ** (d * w)
    return a


def lambda_bruteforce(a: int, b: int, d_prime: int, p: int, *, budget=None) -> int:
    """Points of P^{d'-1}(Z/p^a) lifting (0:1:...:1) whose first coordinate has valuation b."""
    if not a >= b >= 1:
        raise ValueError("need a >= b >= 1")
    if d_prime < 2:
        raise ValueError("d' must be >= 2")
    m = p ** a
    _budget.check(m ** d_prime, "lambda_bruteforce", budget)
    units = [u for u in range(1, m) if u % p]
    seen = set()
    for x in product(range(m), repeat=d_prime):
        if x[1] % p == 0:
            continue
        # reduction mod p must be proportional to (0:1:...:1)
        s = x[1] % p
        if x[0] % p or any((xi - s) % p for xi in x[2:]):
            continue
        v = a if x[0] == 0 else min(_valuation(x[0], p), a)
        if v != b:
            continue
        seen.add(min(tuple(u * xi % m for xi in x) for u in units))
    return len(seen)


# ---------------------------------------------------------------------------
# comparison


def _is_grenham(pres: Presentation) -> bool:
    return pres.d >= 2 and pres.d_prime == pres.d - 1 and pres.M == grenham(pres.d).M


def closed_form_for(pres: Presentation, p: int):
    """(LocalZeta, description) for the closed formula covering pres at p, or (None, reason)."""
    from .zetacore import grenham_zeta, normal_zeta_smooth

    if _is_grenham(pres):
        return grenham_zeta(pres.d), f"grenham_zeta({pres.d})"
    pf = pfaffian(pres)
    if pf.is_zero():
        return None, "vanishing Pfaffian and no special formula"
    n = count_points(pf, p, pres.d_prime)
    return normal_zeta_smooth(pres, n), f"normal_zeta_smooth with n_P({p}) = {n}"


def _as_ints(xs):
    return [int(x) if x.denominator == 1 else str(x) for x in xs]


def _first_divergence(a, b) -> Optional[int]:
    for k, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return k
    return None


def _product_series(pres: Presentation, p: int, N: int, A: List[int]) -> List[int]:
    from .zetacore import zeta_lattice, zeta_p_shift

    pre = series_coefficients(zeta_lattice(pres.d) * zeta_p_shift(pres.hirsch_length, pres.d * pres.d_prime), p, N)
    return _as_ints([sum(pre[i] * A[k - i] for i in range(k + 1)) for k in range(N + 1)])


def compare_report(pres: Presentation, p: int, N: int, *, budget=None) -> dict:
    """Three-way comparison of ideal counts, closed-form series and the lattice sum."""
    _require_prime(p)
    counts = ideal_counts(pres, p, N, budget=budget)
    z, how = closed_form_for(pres, p)
    closed = _as_ints(series_coefficients(z.value, p, N)) if z is not None else None
    A = lattice_sum_A(pres, p, N, budget=budget)
    via_A = _product_series(pres, p, N, A)
    hyp = None
    if not pfaffian(pres).is_zero():
        hyp = hypothesis_report(pres, p, budget=budget)
    agree_A = counts == via_A
    agree = agree_A and (closed is None or counts == closed)
    report = {
        "prime": p,
        "N": N,
        "presentation": pres.name,
        "coefficients": counts,
        "closed_form": how,
        "closed_form_coefficients": closed,
        "lattice_sum_coefficients": via_A,
        "agree": agree if closed is not None else None,
        "lattice_sum_agrees": agree_A,
        "first_divergence": None,
        "status": "ok",
    }
    if closed is not None:
        report["first_divergence"] = _first_divergence(counts, closed)
    if report["first_divergence"] is None and not agree_A:
        report["first_divergence"] = _first_divergence(counts, via_A)
    hyp_ok = hyp is None or bool(hyp["smooth_mod_p"] and hyp["line_free_mod_p"] and hyp["good_reduction"])
    if hyp is not None:
        report["hypotheses"] = {k: hyp[k] for k in ("smooth_mod_p", "line_free_mod_p", "good_reduction", "n_points")}
    if closed is None:
        report["status"] = "no closed form"
    elif not agree:
        if not hyp_ok:
            report["status"] = "expected at bad prime"
        elif p == 2:
            report["status"] = "possible bad prime"
        else:
            report["status"] = "mismatch"
    elif not hyp_ok:
        report["status"] = "ok (hypotheses fail at this prime)"
    return report
