"""Brute-force projective geometry over prime fields.

Hypersurfaces are MPoly objects; their coordinates are y1..ym unless an
explicit variable order is passed.  Every enumeration goes through the budget
guard in :mod:`zetaforge.budget` and fails loudly instead of truncating.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, List, Optional, Sequence, Tuple

from . import budget as _budget
from .exactalg import MPoly
from .grouppres import pfaffian_of, y_var

__all__ = [
    "is_prime",
    "projective_points",
    "count_points",
    "is_smooth_mod_p",
    "subspaces",
    "subspace_count",
    "find_line",
    "fano_count",
    "contains_subspace",
    "SkewForm",
    "pencil_pfaffian",
    "pencil_all_degenerate",
    "common_isotropic_subspace",
    "random_skew_form",
    "random_degenerate_pencil",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _coordinates(f: MPoly, m: int | None, variables: Sequence[str] | None) -> Tuple[str, ...]:
    if variables is not None:
        coords = tuple(variables)
    elif m is not None:
        coords = tuple(y_var(k + 1) for k in range(m))
    else:
        coords = f.variables
    extra = set(f.used_variables()) - set(coords)
    if extra:
        raise ValueError(f"polynomial uses {sorted(extra)} outside the coordinates {coords}")
    return coords


class _ModPoly:
    """f reduced mod p, in a fixed coordinate order, for fast evaluation."""

    def __init__(self, f: MPoly, p: int, coords: Sequence[str]):
        g = f.with_variables(tuple(set(coords) | set(f.variables)))
        idx = [g.variables.index(v) for v in coords]
        self.p = p
        self.terms = []
        for e, c in g.terms.items():
            if c.denominator % p == 0:
                raise ValueError(f"coefficient {c} is not {p}-integral")
            cm = c.numerator * pow(c.denominator, -1, p) % p
            if cm:
                self.terms.append((cm, tuple(e[i] for i in idx)))

    def __call__(self, x: Sequence[int]) -> int:
        p = self.p
        total = 0
        for c, e in self.terms:
            v = c
            for xi, k in zip(x, e):
                if k:
                    v = v * pow(xi, k, p)
            total += v
        return total % p

    def is_zero(self) -> bool:
        return not self.terms


def projective_points(m: int, p: int) -> Iterator[Tuple[int, ...]]:
    """Points of P^{m-1}(F_p), first nonzero coordinate normalized to 1."""
    for lead in range(m):
        for tail in product(range(p), repeat=m - lead - 1):
            yield (0,) * lead + (1,) + tail


def _npoints(m: int, p: int) -> int:
    return (p ** m - 1) // (p - 1)


def _prepare(f: MPoly, p: int, m, variables, budget, what):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    coords = _coordinates(f, m, variables)
    if not f.is_homogeneous():
        raise ValueError("hypersurface polynomial must be homogeneous")
    _budget.check(_npoints(len(coords), p), what, budget)
    return coords


def count_points(f: MPoly, p: int, m: int | None = None, *, variables=None, budget=None) -> int:
    """Number of projective zeros of f over F_p."""
    coords = _prepare(f, p, m, variables, budget, "count_points")
    g = _ModPoly(f, p, coords)
    return sum(1 for x in projective_points(len(coords), p) if g(x) == 0)


def singular_points(f: MPoly, p: int, m: int | None = None, *, variables=None, budget=None):
    coords = _prepare(f, p, m, variables, budget, "is_smooth_mod_p")
    g = _ModPoly(f, p, coords)
    grads = [_ModPoly(f.diff(v), p, coords) for v in coords]
    for x in projective_points(len(coords), p):
        if g(x) == 0 and all(h(x) == 0 for h in grads):
            yield x


def is_smooth_mod_p(f: MPoly, p: int, m: int | None = None, *, variables=None, budget=None) -> bool:
    """True iff no F_p-point kills f and all its partial derivatives."""
    for _ in singular_points(f, p, m, variables=variables, budget=budget):
        return False
    return True


# ---------------------------------------------------------------------------
# subspaces in reduced row-echelon form


def subspace_count(m: int, k: int, p: int) -> int:
    """Gaussian binomial [m choose k] at q = p."""
    num = den = 1
    for i in range(k):
        num *= p ** (m - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def subspaces(m: int, k: int, p: int) -> Iterator[List[List[int]]]:
    """Every k-dimensional subspace of F_p^m exactly once, as its RREF basis."""
    for pivots in combinations(range(m), k):
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, m) if c not in pivots]
        for values in product(range(p), repeat=len(free)):
            B = [[0] * m for _ in range(k)]
            for r, pc in enumerate(pivots):
                B[r][pc] = 1
            for (r, c), v in zip(free, values):
                B[r][c] = v
            yield B


def _span_points(B, p: int):
    k, m = len(B), len(B[0])
    for u in projective_points(k, p):
        yield tuple(sum(u[j] * B[j][i] for j in range(k)) % p for i in range(m))


def _restriction_vanishes(f: MPoly, coords, B, p: int) -> bool:
    """f restricted to the row span of B is the zero polynomial mod p."""
    us = [MPoly.var(f"u{j + 1}") for j in range(len(B))]
    sub = {}
    for i, v in enumerate(coords):
        lin = MPoly.zero()
        for j, u in enumerate(us):
            if B[j][i]:
                lin = lin + u * B[j][i]
        sub[v] = lin
    g = f.with_variables(tuple(set(coords) | set(f.variables)))
    total = MPoly.zero()
    for e, c in g.terms.items():
        term = MPoly.const(c)
        for v, k in zip(g.variables, e):
            if k:
                term = term * sub[v] ** k
        total = total + term
    return all(c.numerator * pow(c.denominator, -1, p) % p == 0 for c in total.terms.values())


def contains_subspace(f: MPoly, B, p: int, coords, _g=None) -> bool:
    """Is the projective subspace spanned by the rows of B contained in f = 0?

    All F_p-points are tested first; a survivor is confirmed by restricting f
    symbolically, since for deg f > p vanishing at points is weaker.
    """
    g = _g or _ModPoly(f, p, coords)
    if any(g(x) for x in _span_points(B, p)):
        return False
    return _restriction_vanishes(f, coords, B, p)


def find_line(f: MPoly, p: int, m: int | None = None, *, variables=None, budget=None):
    """A projective line inside f = 0 as two points, or None (vacuously None for m < 3)."""
    coords = _prepare(f, p, m, variables, budget, "find_line")
    if len(coords) < 3:
        return None
    _budget.check(subspace_count(len(coords), 2, p), "find_line", budget)
    g = _ModPoly(f, p, coords)
    for B in subspaces(len(coords), 2, p):
        if contains_subspace(f, B, p, coords, g):
            return tuple(tuple(r) for r in B)
    return None


def fano_count(f: MPoly, p: int, k: int, m: int | None = None, *, variables=None, budget=None) -> int:
    """Number of projective k-planes over F_p contained in f = 0."""
    coords = _prepare(f, p, m, variables, budget, "fano_count")
    n = len(coords)
    if not 1 <= k + 1 <= n - 1:
        raise ValueError(f"k={k} out of range for P^{n - 1}")
    _budget.check(subspace_count(n, k + 1, p), "fano_count", budget)
    g = _ModPoly(f, p, coords)
    return sum(1 for B in subspaces(n, k + 1, p) if contains_subspace(f, B, p, coords, g))


# ---------------------------------------------------------------------------
# pencils of skew forms


@dataclass(frozen=True)
class SkewForm:
    matrix: Tuple[Tuple[int, ...], ...]
    q: int

    def __post_init__(self):
        q = self.q
        if not is_prime(q):
            raise ValueError("only prime fields are supported")
        A = tuple(tuple(int(a) % q for a in row) for row in self.matrix)
        n = len(A)
        for i in range(n):
            if len(A[i]) != n:
                raise ValueError("skew form must be square")
            if A[i][i]:
                raise ValueError("skew form must have zero diagonal")
            for j in range(n):
                if (A[i][j] + A[j][i]) % q:
                    raise ValueError("matrix is not antisymmetric")
        object.__setattr__(self, "matrix", A)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def pair(self, u, v) -> int:
        A = self.matrix
        return sum(u[i] * A[i][j] * v[j] for i in range(len(u)) if u[i] for j in range(len(v)) if v[j]) % self.q

    @classmethod
    def zero(cls, n: int, q: int) -> "SkewForm":
        return cls(tuple((0,) * n for _ in range(n)), q)

    @classmethod
    def standard(cls, r: int, q: int) -> "SkewForm":
        """J = diag(J_2, ..., J_2) with Pf(J) = 1."""
        A = [[0] * (2 * r) for _ in range(2 * r)]
        for k in range(r):
            A[2 * k][2 * k + 1] = 1
            A[2 * k + 1][2 * k] = -1
        return cls(tuple(tuple(row) for row in A), q)


def _check_pair(phi: SkewForm, psi: SkewForm):
    if phi.dim != psi.dim:
        raise ValueError("pencil members have different dimensions")
    if phi.q != psi.q:
        raise ValueError("pencil members live over different fields")


def pencil_pfaffian(phi: SkewForm, psi: SkewForm) -> List[int]:
    """Coefficients (mod q, ascending in t) of Pf(phi + t psi)."""
    _check_pair(phi, psi)
    n, q = phi.dim, phi.q
    if n % 2:
        return []
    t = MPoly.var("t")
    A = [[phi.matrix[i][j] + psi.matrix[i][j] * t if (phi.matrix[i][j] or psi.matrix[i][j]) else 0
          for j in range(n)] for i in range(n)]
    pf = MPoly.coerce(pfaffian_of(A))
    coeffs = [0] * (n // 2 + 1)
    for e, c in pf.terms.items():
        k = e[0] if e else 0
        coeffs[k] = (coeffs[k] + int(c)) % q
    return coeffs


def pencil_all_degenerate(phi: SkewForm, psi: SkewForm) -> bool:
    """True iff Pf(phi + t psi) is the zero polynomial in t over F_q."""
    return not any(pencil_pfaffian(phi, psi))


def common_isotropic_subspace(phi: SkewForm, psi: SkewForm, target_dim: int, *, budget=None) -> Optional[List[List[int]]]:
    """RREF basis of a target_dim subspace isotropic for both forms, or None."""
    _check_pair(phi, psi)
    n, q = phi.dim, phi.q
    if not 0 <= target_dim <= n:
        raise ValueError("target dimension out of range")
    _budget.check(subspace_count(n, target_dim, q), "common_isotropic_subspace", budget)
    for B in subspaces(n, target_dim, q):
        if all(phi.pair(B[a], B[b]) == 0 and psi.pair(B[a], B[b]) == 0
               for a in range(target_dim) for b in range(a + 1, target_dim)):
            return B
    return None


def random_skew_form(rng: random.Random, n: int, q: int) -> SkewForm:
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a = rng.randrange(q)
            A[i][j], A[j][i] = a, (-a) % q
    return SkewForm(tuple(tuple(r) for r in A), q)


def random_degenerate_pencil(rng: random.Random, r: int, q: int, max_tries: int = 100000):
    """Uniform sample from pencils on F_q^{2r} whose every member is degenerate (rejection)."""
    for _ in range(max_tries):
        phi, psi = random_skew_form(rng, 2 * r, q), random_skew_form(rng, 2 * r, q)
        if pencil_all_degenerate(phi, psi):
            return phi, psi
    raise RuntimeError("no degenerate pencil found")  # pragma: no cover
