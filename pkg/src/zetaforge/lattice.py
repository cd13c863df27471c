"""Integer lattices: Hermite and Smith normal forms, HNF enumeration."""

from __future__ import annotations

from typing import Iterator, List, Sequence, Tuple

from . import budget as _budget

Matrix = List[List[int]]


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero rows: upper triangular (echelon), positive pivots, and
    entries above each pivot reduced into [0, pivot).
    """
    A = [list(r) for r in rows if any(r)]
    if not A:
        return []
    n = ncols if ncols is not None else len(A[0])
    out: Matrix = []
    col = 0
    while A and col < n:
        nz = [r for r in A if r[col]]
        rest = [r for r in A if not r[col]]
        if not nz:
            col += 1
            continue
        piv = nz[0]
        for r in nz[1:]:
            g, x, y = _xgcd(piv[col], r[col])
            a, b = piv[col] // g, r[col] // g
            new_piv = [x * u + y * v for u, v in zip(piv, r)]
            r2 = [b * u - a * v for u, v in zip(piv, r)]
            piv = new_piv
            if any(r2):
                rest.append(r2)
        if piv[col] < 0:
            piv = [-u for u in piv]
        out.append(piv)
        A = [r for r in rest if any(r)]
        col += 1
    # reduce above pivots
    for i, row in enumerate(out):
        c = next(k for k, v in enumerate(row) if v)
        pv = row[c]
        for j in range(i):
            q = out[j][c] // pv
            if q:
                out[j] = [u - q * v for u, v in zip(out[j], row)]
    return out


def full_rank_index(rows: Sequence[Sequence[int]], n: int) -> int:
    """Index in Z^n of the lattice spanned by rows; raises if not of full rank."""
    H = hnf(rows, n)
    if len(H) != n:
        raise ValueError("lattice is not of full rank")
    idx = 1
    for i in range(n):
        idx *= H[i][i]
    return idx


def in_lattice(v: Sequence[int], H: Matrix) -> bool:
    """Membership test against a square upper-triangular HNF basis."""
    v = list(v)
    for i, row in enumerate(H):
        piv = row[i]
        if v[i] % piv:
            return False
        q = v[i] // piv
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def smith_form(A: Sequence[Sequence[int]]):
    """(D, U, V) with U A V = D diagonal, U, V unimodular, d_1 | d_2 | ... ."""
    m, n = len(A), len(A[0])
    D = [list(r) for r in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(M, i, j):
        M[i], M[j] = M[j], M[i]

    def swap_cols(M, i, j):
        for r in M:
            r[i], r[j] = r[j], r[i]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not entries:
                return D, U, V
            _, i, j = min(entries)
            swap_rows(D, t, i)
            swap_rows(U, t, i)
            swap_cols(D, t, j)
            swap_cols(V, t, j)
            piv = D[t][t]
            done = True
            for i in range(t + 1, m):
                q = D[i][t] // piv
                if q:
                    D[i] = [a - q * b for a, b in zip(D[i], D[t])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[t])]
                if D[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = D[t][j] // piv
                if q:
                    for r in D:
                        r[j] -= q * r[t]
                    for r in V:
                        r[j] -= q * r[t]
                if D[t][j]:
                    done = False
            if not done:
                continue
            # divisibility: pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % piv), None)
            if bad is None:
                break
            i, _ = bad
            D[t] = [a + b for a, b in zip(D[t], D[i])]
            U[t] = [a + b for a, b in zip(U[t], U[i])]
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return D, U, V


def elementary_divisors(A: Sequence[Sequence[int]]) -> List[int]:
    D, _, _ = smith_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0])))]


def mat_inverse_unimodular(V: Matrix) -> Matrix:
    """Exact inverse of a unimodular integer matrix (Gauss-Jordan over Q)."""
    from fractions import Fraction

    n = len(V)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(V)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c])
        A[c], A[piv] = A[piv], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    out = [[x for x in row[n:]] for row in A]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


# ---------------------------------------------------------------------------
# enumeration


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def count_sublattices(h: int, p: int, N: int) -> int:
    """Number of sublattices of Z^h of index p^N, from the HNF parametrization."""
    total = 0
    for e in compositions(N, h):
        c = 1
        for j, ej in enumerate(e):
            c *= p ** (ej * j)
        total += c
    return total


def enumerate_sublattices(h: int, p: int, N: int, *, budget=None) -> Iterator[Matrix]:
    """Every sublattice of Z^h of index p^N exactly once, as an HNF matrix.

    Diagonal p^{e_1}, ..., p^{e_h} with sum e_i = N; entries above the pivot of
    column j range over [0, p^{e_j}).
    """
    _budget.check(count_sublattices(h, p, N), "enumerate_sublattices", budget)
    for e in compositions(N, h):
        piv = [p ** x for x in e]
        slots = [(i, j) for j in range(h) for i in range(j)]
        yield from _fill(h, piv, slots)


def _fill(h, piv, slots):
    H = [[0] * h for _ in range(h)]
    for i in range(h):
        H[i][i] = piv[i]
    k = len(slots)

    def rec(s):
        if s == k:
            yield [row[:] for row in H]
            return
        i, j = slots[s]
        for v in range(piv[j]):
            H[i][j] = v
            yield from rec(s + 1)
        H[i][j] = 0

    yield from rec(0)


def is_maximal(H: Matrix, p: int) -> bool:
    """p^{-1} Lambda is not contained in Z^n: some HNF entry is prime to p."""
    return any(x % p for row in H for x in row)
