"""Flag varieties over finite fields: point counts, Schubert cells, F_n(q, X)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import FrozenSet, Iterable, Iterator, Tuple

from .exactalg import MPoly, RatFn, invert_variables, monomial

__all__ = [
    "FlagType",
    "TypedPermutation",
    "gaussian_binomial",
    "flag_count",
    "flag_dimension",
    "schubert_c",
    "schubert_c_inclusion_exclusion",
    "schubert_c_cells",
    "permutation_type",
    "flag_fn",
    "flag_numerator",
    "flag_fn_by_sum",
    "typed_permutation",
    "longest_word",
    "compose",
    "check_flag_funeq",
    "subsets",
    "x_var",
    "MAX_PERMUTATION_N",
]

MAX_PERMUTATION_N = 12


def x_var(i: int) -> str:
    return f"X{i}"


@dataclass(frozen=True)
class FlagType:
    n: int
    I: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ambient rank must be positive")
        I = tuple(sorted(set(self.I)))
        if any(i < 1 or i > self.n - 1 for i in I):
            raise ValueError(f"type {I} not contained in [1, {self.n - 1}]")
        object.__setattr__(self, "I", I)

    @property
    def complement(self) -> "FlagType":
        return FlagType(self.n, tuple(i for i in range(1, self.n) if i not in self.I))


@dataclass(frozen=True)
class TypedPermutation:
    w: Tuple[int, ...]
    length: int
    type: FrozenSet[int]


def subsets(n: int) -> Iterator[Tuple[int, ...]]:
    """All subsets of [n - 1] in a fixed order (by size, then lexicographic)."""
    ground = range(1, n)
    for k in range(n):
        yield from combinations(ground, k)


@lru_cache(maxsize=None)
def gaussian_binomial(n: int, k: int) -> MPoly:
    """[n choose k]_q."""
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range for n={n}")
    if k == 0 or k == n:
        return MPoly.const(1, ("q",))
    # [n, k] = [n-1, k-1] + q^k [n-1, k]
    return gaussian_binomial(n - 1, k - 1) + MPoly.var("q", k) * gaussian_binomial(n - 1, k)


def _as_type(ft_or_n, I=None) -> FlagType:
    if isinstance(ft_or_n, FlagType):
        return ft_or_n
    return FlagType(ft_or_n, tuple(I or ()))


def flag_count(ft, I=None) -> MPoly:
    """b_I(q): the number of F_q-points of the variety of flags of type I.

    Flags of type I have members of codimension i for i in I, so the count
    telescopes along the dimension chain n > n-i_1 > ... > n-i_l > 0.
    """
    ft = _as_type(ft, I)
    dims = [ft.n] + [ft.n - i for i in ft.I]
    b = MPoly.const(1, ("q",))
    for a, c in zip(dims, dims[1:]):
        b = b * gaussian_binomial(a, c)
    return b


def flag_dimension(ft, I=None) -> int:
    return flag_count(ft, I).degree("q")


def permutation_type(w: Iterable[int]) -> Tuple[FrozenSet[int], int]:
    """Descent set and inversion count of a one-line permutation word."""
    w = tuple(w)
    n = len(w)
    if sorted(w) != list(range(1, n + 1)):
        raise ValueError(f"{w} is not a permutation of 1..{n}")
    descents = frozenset(i for i in range(1, n) if w[i] < w[i - 1])
    length = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
    return descents, length


def typed_permutation(w) -> TypedPermutation:
    d, l = permutation_type(w)
    return TypedPermutation(tuple(w), l, d)


def _check_perm_guard(n: int):
    if n > MAX_PERMUTATION_N:
        raise ValueError(f"permutation enumeration refused for n={n} > {MAX_PERMUTATION_N}")


@lru_cache(maxsize=None)
def _cell_table(n: int):
    """Map descent set -> {length: count} over S_n."""
    _check_perm_guard(n)
    table = {}
    for w in permutations(range(1, n + 1)):
        d, l = permutation_type(w)
        row = table.setdefault(d, {})
        row[l] = row.get(l, 0) + 1
    return table


def schubert_c_cells(ft, I=None) -> MPoly:
    """sum of q^l(w) over permutations with descent set exactly I."""
    ft = _as_type(ft, I)
    row = _cell_table(ft.n).get(frozenset(ft.I), {})
    return MPoly(("q",), {(l,): c for l, c in row.items()})


def schubert_c_inclusion_exclusion(ft, I=None) -> MPoly:
    ft = _as_type(ft, I)
    c = MPoly.zero(("q",))
    for k in range(len(ft.I) + 1):
        for J in combinations(ft.I, k):
            term = flag_count(FlagType(ft.n, J))
            c = c + term if (len(ft.I) - k) % 2 == 0 else c - term
    return c


def schubert_c(ft, I=None) -> MPoly:
    """c_I(q), computed by inclusion-exclusion and by Schubert cells; both must agree."""
    ft = _as_type(ft, I)
    ie = schubert_c_inclusion_exclusion(ft)
    if ft.n > MAX_PERMUTATION_N:
        return ie
    cells = schubert_c_cells(ft)
    if ie != cells:
        raise AssertionError(f"c_I mismatch for n={ft.n}, I={ft.I}: {ie} vs {cells}")
    return cells


def flag_numerator(n: int) -> MPoly:
    """f_n(q, X) = sum over I of c_I(q) prod_{i in I} X_i."""
    f = MPoly.zero(("q",))
    for I in subsets(n):
        c = schubert_c_inclusion_exclusion(FlagType(n, I))
        f = f + c * monomial({x_var(i): 1 for i in I}) if I else f + c
    return f


@lru_cache(maxsize=None)
def flag_fn(n: int) -> RatFn:
    """F_n(q, X) = sum_I b_I(q) prod_{i in I} X_i / (1 - X_i)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    factors = [(1 - MPoly.var(x_var(i)), 1) for i in range(1, n)]
    return RatFn(flag_numerator(n), factors=factors)


def flag_fn_by_sum(n: int) -> RatFn:
    """F_n assembled term by term from b_I; slow, used as a cross-check."""
    total = RatFn.const(0)
    for I in subsets(n):
        term = RatFn(flag_count(FlagType(n, I)))
        for i in I:
            x = MPoly.var(x_var(i))
            term = term * RatFn(x, 1 - x)
        total = total + term
    return total


def check_flag_funeq(n: int) -> bool:
    """F_n(1/q, 1/X) == (-1)^(n-1) q^(-n(n-1)/2) F_n(q, X)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    F = flag_fn(n)
    lhs = invert_variables(F, ["q"] + [x_var(i) for i in range(1, n)])
    rhs = F * RatFn.laurent_monomial({"q": -comb(n, 2)}, (-1) ** (n - 1))
    return lhs == rhs


def longest_word(n: int) -> Tuple[int, ...]:
    return tuple(range(n, 0, -1))


def compose(w, v) -> Tuple[int, ...]:
    """(w v)(i) = w(v(i)) in one-line notation."""
    return tuple(w[v[i] - 1] for i in range(len(v)))
