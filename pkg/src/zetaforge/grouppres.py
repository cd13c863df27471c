"""Class-2 group presentations given by an antisymmetric matrix of linear forms."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from . import budget as _budget
from .exactalg import MPoly

__all__ = [
    "Presentation",
    "PresentationError",
    "parse_presentation",
    "load_presentation",
    "serialize_presentation",
    "pfaffian",
    "determinant",
    "form_matrix",
    "evaluate_matrix",
    "y_var",
    "heisenberg",
    "grenham",
    "gaussian_heisenberg",
    "free_class2",
    "hypothesis_report",
    "GroupInvariants",
    "invariants",
]


class PresentationError(ValueError):
    pass


def y_var(k: int) -> str:
    return f"y{k}"


Form = Tuple[int, ...]


@dataclass(frozen=True)
class Presentation:
    """G = <x_1..x_d, y_1..y_d' | [x_i, x_j] = M_ij(y)>, forms stored as integer vectors."""

    d: int
    d_prime: int
    M: Tuple[Tuple[Form, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.d < 2:
            raise PresentationError("d must be at least 2")
        if self.d_prime < 1:
            raise PresentationError("dprime must be at least 1")
        if len(self.M) != self.d or any(len(row) != self.d for row in self.M):
            raise PresentationError("M must be d x d")
        for i in range(self.d):
            for j in range(self.d):
                f = self.M[i][j]
                if len(f) != self.d_prime:
                    raise PresentationError(f"form at ({i + 1},{j + 1}) has length {len(f)} != {self.d_prime}")
                if i == j and any(f):
                    raise PresentationError(f"nonzero diagonal entry at ({i + 1},{i + 1})")
                if any(a != -b for a, b in zip(f, self.M[j][i])):
                    raise PresentationError(f"M not antisymmetric at ({i + 1},{j + 1})")

    @property
    def hirsch_length(self) -> int:
        return self.d + self.d_prime

    def entries(self):
        """Nonzero upper-triangular entries as (i, j, form), 1-based, sorted."""
        for i in range(self.d):
            for j in range(i + 1, self.d):
                if any(self.M[i][j]):
                    yield i + 1, j + 1, self.M[i][j]

    def unused_generators(self) -> List[int]:
        used = set()
        for _, _, f in self.entries():
            used |= {k for k, c in enumerate(f) if c}
        return [k + 1 for k in range(self.d_prime) if k not in used]

    @classmethod
    def from_entries(cls, d: int, d_prime: int, entries, name: str = "") -> "Presentation":
        M = [[[0] * d_prime for _ in range(d)] for _ in range(d)]
        seen: Dict[Tuple[int, int], Form] = {}
        for i, j, form in entries:
            form = tuple(int(c) for c in form)
            if len(form) != d_prime:
                raise PresentationError(f"form for ({i},{j}) must have {d_prime} entries")
            if not (1 <= i <= d and 1 <= j <= d):
                raise PresentationError(f"index ({i},{j}) out of range")
            if i == j:
                if any(form):
                    raise PresentationError(f"nonzero diagonal entry at ({i},{i})")
                continue
            a, b, f = (i, j, form) if i < j else (j, i, tuple(-c for c in form))
            if (a, b) in seen and seen[(a, b)] != f:
                raise PresentationError(f"inconsistent antisymmetry at ({a},{b})")
            seen[(a, b)] = f
        for (a, b), f in seen.items():
            M[a - 1][b - 1] = list(f)
            M[b - 1][a - 1] = [-c for c in f]
        pres = cls(d, d_prime, tuple(tuple(tuple(x) for x in row) for row in M), name)
        unused = pres.unused_generators()
        if unused:
            warnings.warn(f"forms never involve y{unused}; dprime may be overstated", stacklevel=2)
        return pres


def parse_presentation(document) -> Presentation:
    """Build a Presentation from a JSON string or an already-decoded dict."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise PresentationError(f"malformed document: {exc}") from None
    if not isinstance(document, dict):
        raise PresentationError("presentation document must be a JSON object")
    try:
        d = int(document["d"])
        dp = int(document["dprime"])
        raw = document.get("entries", [])
        entries = [(int(e["i"]), int(e["j"]), list(e["form"])) for e in raw]
    except (KeyError, TypeError, ValueError) as exc:
        raise PresentationError(f"malformed document: {exc!r}") from None
    return Presentation.from_entries(d, dp, entries, name=str(document.get("name", "")))


def load_presentation(path) -> Presentation:
    with open(path) as fh:
        return parse_presentation(fh.read())


def serialize_presentation(pres: Presentation) -> str:
    doc = {
        "d": pres.d,
        "dprime": pres.d_prime,
        "entries": [{"i": i, "j": j, "form": list(f)} for i, j, f in pres.entries()],
    }
    if pres.name:
        doc["name"] = pres.name
    return json.dumps(doc)


# ---------------------------------------------------------------------------
# named presentations


def heisenberg() -> Presentation:
    return Presentation.from_entries(2, 1, [(1, 2, [1])], name="heisenberg")


def grenham(n: int) -> Presentation:
    """G_n: [x_i, x_n] = y_i for 1 <= i <= n-1."""
    if n < 2:
        raise PresentationError("Grenham groups need n >= 2")
    entries = []
    for i in range(1, n):
        form = [0] * (n - 1)
        form[i - 1] = 1
        entries.append((i, n, form))
    return Presentation.from_entries(n, n - 1, entries, name=f"grenham{n}")


def gaussian_heisenberg() -> Presentation:
    """Heisenberg group over Z[i]; its Pfaffian is y1^2 + y2^2."""
    # basis x1 = (1,0), x2 = (i,0), x3 = (0,1), x4 = (0,i); [(a,b),(c,d)] = ad - bc
    entries = [(1, 3, [1, 0]), (1, 4, [0, 1]), (2, 3, [0, 1]), (2, 4, [-1, 0])]
    return Presentation.from_entries(4, 2, entries, name="heisenberg_Zi")


def free_class2(d: int) -> Presentation:
    """Free class-2 nilpotent group F_{2,d}: one central generator per pair i < j."""
    pairs = [(i, j) for i in range(1, d + 1) for j in range(i + 1, d + 1)]
    entries = []
    for k, (i, j) in enumerate(pairs):
        form = [0] * len(pairs)
        form[k] = 1
        entries.append((i, j, form))
    return Presentation.from_entries(d, len(pairs), entries, name=f"F2_{d}")


# ---------------------------------------------------------------------------
# Pfaffian and determinant


def form_matrix(pres: Presentation) -> List[List[MPoly]]:
    ys = tuple(y_var(k + 1) for k in range(pres.d_prime))
    zero = MPoly.zero(ys)

    def lin(f):
        return MPoly(ys, {tuple(int(k == idx) for k in range(len(ys))): c for idx, c in enumerate(f) if c}) if any(f) else zero

    return [[lin(pres.M[i][j]) for j in range(pres.d)] for i in range(pres.d)]


def evaluate_matrix(pres: Presentation, alpha: Sequence[int]) -> List[List[int]]:
    """Integer matrix M(alpha) obtained by plugging the vector alpha into every form."""
    return [[sum(c * a for c, a in zip(pres.M[i][j], alpha)) for j in range(pres.d)] for i in range(pres.d)]


def pfaffian_of(A) -> object:
    """Combinatorial Pfaffian of a square antisymmetric matrix over any ring.

    Expansion along the first row; the matching (12)(34)... carries sign +1.
    """
    n = len(A)
    if n % 2:
        return A[0][0] * 0 if n else 1

    @lru_cache(maxsize=None)
    def pf(idx: Tuple[int, ...]):
        if not idx:
            return 1
        i, rest = idx[0], idx[1:]
        total = None
        for pos, j in enumerate(rest):
            a = A[i][j]
            if not a:
                continue
            sub = pf(rest[:pos] + rest[pos + 1:])
            term = a * sub
            if pos % 2:
                term = -term
            total = term if total is None else total + term
        return total if total is not None else A[0][0] * 0

    return pf(tuple(range(n)))


def determinant(A):
    """Determinant by first-row Laplace expansion, memoized on column subsets."""
    n = len(A)
    if n == 0:
        return 1

    @lru_cache(maxsize=None)
    def det(row: int, cols: Tuple[int, ...]):
        if row == n:
            return 1
        total = None
        for pos, c in enumerate(cols):
            a = A[row][c]
            if not a:
                continue
            term = a * det(row + 1, cols[:pos] + cols[pos + 1:])
            if pos % 2:
                term = -term
            total = term if total is None else total + term
        return total if total is not None else A[0][0] * 0

    return det(0, tuple(range(n)))


def pfaffian(pres: Presentation) -> MPoly:
    """Pf(M(y)) in y1..y_d'; the zero polynomial when d is odd."""
    ys = tuple(y_var(k + 1) for k in range(pres.d_prime))
    if pres.d % 2:
        return MPoly.zero(ys)
    A = form_matrix(pres)
    pf = MPoly.coerce(pfaffian_of(A), ys).with_variables(ys)
    det = MPoly.coerce(determinant(A), ys)
    if pf * pf != det:
        raise AssertionError("Pfaffian squared differs from the determinant")
    return pf


@dataclass(frozen=True)
class GroupInvariants:
    d: int
    d_prime: int
    pfaffian: MPoly
    pfaffian_degree: int | None


def invariants(pres: Presentation) -> GroupInvariants:
    pf = pfaffian(pres)
    return GroupInvariants(pres.d, pres.d_prime, pf, pres.d // 2 if not pf.is_zero() else None)


# ---------------------------------------------------------------------------


def hypothesis_report(pres: Presentation, prime: int, *, assert_irreducible: bool = False,
                      budget: int | None = None) -> dict:
    """Check the finite-field hypotheses on the Pfaffian hypersurface at one prime.

    Irreducibility over Q is never decided here; it is recorded as asserted or
    unchecked.  "Good reduction" is the proxy: smooth mod p and the degree of
    Pf survives reduction mod p.
    """
    from . import fpgeom

    if not fpgeom.is_prime(prime):
        raise ValueError(f"{prime} is not prime")
    pf = pfaffian(pres)
    m = pres.d_prime
    report = {
        "prime": prime,
        "d": pres.d,
        "dprime": m,
        "pf_nonzero": not pf.is_zero(),
        "pfaffian": str(pf),
        "irreducible_over_Q": "asserted" if assert_irreducible else "unchecked",
        "smooth_mod_p": None,
        "line_free_mod_p": None,
        "n_points": None,
        "degree_preserved_mod_p": None,
        "good_reduction": None,
        "vacuous": [],
        "unchecked": [],
    }
    if pf.is_zero():
        report["unchecked"] = ["smooth_mod_p", "line_free_mod_p", "n_points"]
        return report
    report["degree_preserved_mod_p"] = any(c.numerator % prime for c in pf.terms.values())
    try:
        report["n_points"] = fpgeom.count_points(pf, prime, m, budget=budget)
        report["smooth_mod_p"] = fpgeom.is_smooth_mod_p(pf, prime, m, budget=budget)
        if report["n_points"] == 0:
            report["vacuous"].append("smooth_mod_p")
    except _budget.BudgetExceeded:
        report["unchecked"] += ["n_points", "smooth_mod_p"]
    if m < 3:
        report["line_free_mod_p"] = True
        report["vacuous"].append("line_free_mod_p")
    else:
        try:
            report["line_free_mod_p"] = fpgeom.find_line(pf, prime, m, budget=budget) is None
        except _budget.BudgetExceeded:
            report["unchecked"].append("line_free_mod_p")
    if report["smooth_mod_p"] is not None:
        report["good_reduction"] = bool(report["smooth_mod_p"] and report["degree_preserved_mod_p"])
    return report
