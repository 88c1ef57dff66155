"""Exact integer and rational linear algebra on small dense matrices.

Everything works over Python ints and ``fractions.Fraction``; there is no
floating point anywhere. Matrices are lists of rows, vectors are tuples.
Sizes stay at desk scale (dimensions below ~20), so the algorithms are the
plain classical ones with no performance tricks.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

IntVector = Tuple[int, ...]
RatVector = Tuple[Fraction, ...]
IntMatrix = List[List[int]]


def identity_matrix(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(col) for col in zip(*M)] if M else []


def dot(u: Sequence, v: Sequence):
    """Pairing of a covector with a vector (plain dot product)."""
    return sum(a * b for a, b in zip(u, v))


def mat_vec(M: Sequence[Sequence[int]], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in M)


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    cols = list(zip(*B))
    return [[dot(row, col) for col in cols] for row in A]


def det(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(M: Sequence[Sequence[int]]) -> bool:
    """True iff the square integer matrix has determinant +1 or -1."""
    return det(M) in (1, -1)


def rank(M: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals, by exact Gaussian elimination."""
    rows = [[Fraction(x) for x in row] for row in M]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == nrows:
            break
    return r


def smith_normal_form(
    M: Sequence[Sequence[int]], width: Optional[int] = None
) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form decomposition U*M*V = D.

    D is diagonal with nonnegative entries d_1 | d_2 | ... and U, V are
    unimodular. Pivots are chosen by minimal absolute value. ``width`` is
    required only when M has zero rows (the column count is then ambiguous).
    """
    nrows = len(M)
    if nrows:
        ncols = len(M[0])
        if any(len(row) != ncols for row in M):
            raise ValueError("ragged matrix")
    elif width is None:
        raise ValueError("width required for a matrix with no rows")
    else:
        ncols = width
    D = [list(map(int, row)) for row in M]
    U = identity_matrix(nrows)
    V = identity_matrix(ncols)

    def swap_rows(a: int, b: int) -> None:
        D[a], D[b] = D[b], D[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a: int, b: int) -> None:
        for r in D:
            r[a], r[b] = r[b], r[a]
        for r in V:
            r[a], r[b] = r[b], r[a]

    def add_row(dst: int, src: int, q: int) -> None:
        D[dst] = [x + q * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        for r in D:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    t = 0
    while t < min(nrows, ncols):
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if D[i][j] and (
                    pivot is None or abs(D[i][j]) < abs(D[pivot[0]][pivot[1]])
                ):
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])
        while True:
            i = next((i for i in range(t + 1, nrows) if D[i][t]), None)
            if i is not None:
                add_row(i, t, -(D[i][t] // D[t][t]))
                if D[i][t]:
                    # remainder is strictly smaller: promote it to pivot
                    swap_rows(t, i)
                continue
            j = next((j for j in range(t + 1, ncols) if D[t][j]), None)
            if j is not None:
                add_col(j, t, -(D[t][j] // D[t][t]))
                if D[t][j]:
                    swap_cols(t, j)
                continue
            # pivot must divide everything left in the trailing block
            viol = next(
                (
                    j
                    for i in range(t + 1, nrows)
                    for j in range(t + 1, ncols)
                    if D[i][j] % D[t][t]
                ),
                None,
            )
            if viol is None:
                break
            add_col(t, viol, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, D, V


def invariant_factors(
    M: Sequence[Sequence[int]], width: Optional[int] = None
) -> Tuple[int, ...]:
    """Nonzero diagonal of the Smith normal form, in divisibility order."""
    _, D, _ = smith_normal_form(M, width=width)
    diag = [D[t][t] for t in range(min(len(D), len(D[0]) if D else 0))]
    return tuple(d for d in diag if d != 0)


def integer_kernel_basis(
    M: Sequence[Sequence[int]], width: Optional[int] = None
) -> List[IntVector]:
    """Basis of the lattice {x integer : M x = 0}.

    The basis comes from the unimodular column transform of the Smith form,
    so it is automatically saturated: the quotient of Z^cols by the span is
    torsion-free.
    """
    nrows = len(M)
    if nrows == 0:
        if width is None:
            raise ValueError("width required for a matrix with no rows")
        return [tuple(row) for row in identity_matrix(width)]
    ncols = len(M[0])
    _, D, V = smith_normal_form(M, width=width)
    rk = sum(1 for t in range(min(nrows, ncols)) if D[t][t] != 0)
    return [tuple(V[i][j] for i in range(ncols)) for j in range(rk, ncols)]


def solve_exact(
    rows: Sequence[Sequence], rhs: Sequence
) -> Optional[RatVector]:
    """Unique exact solution x of rows * x = rhs, or None if inconsistent.

    The system may be overdetermined; every equation is honored. Raises
    ValueError when the coefficient rows have rank < number of unknowns,
    since the solution would not be unique.
    """
    nrows = len(rows)
    if nrows == 0:
        raise ValueError("no equations")
    ncols = len(rows[0])
    aug = [
        [Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)
    ]
    pivot_of_col: dict[int, int] = {}
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivot_of_col[c] = r
        r += 1
    if any(aug[i][ncols] != 0 for i in range(r, nrows)):
        return None
    if r < ncols:
        raise ValueError("underdetermined system (coefficient rank below unknowns)")
    return tuple(aug[pivot_of_col[c]][ncols] for c in range(ncols))


def solve_covector(
    V: Sequence[Sequence[int]], target: Sequence
) -> Optional[RatVector]:
    """Solve <alpha, v_i> = target_i where v_i are the columns of V.

    Returns the unique rational covector alpha, or None when the system is
    inconsistent. Rejects rank-deficient V (fewer independent columns than
    rows) with ValueError; that signals an invalid polytope upstream.
    """
    try:
        alpha = solve_exact(transpose(V), target)
    except ValueError:
        raise ValueError("rank-deficient column matrix in covector solve")
    if alpha is None:
        return None
    # re-verify on every column, not just the pivots
    for col, t in zip(transpose(V), target):
        assert dot(alpha, col) == t
    return alpha


def mat_inverse_unimodular(M: Sequence[Sequence[int]]) -> IntMatrix:
    """Exact integer inverse of a unimodular matrix."""
    n = len(M)
    d = det(M)
    if d not in (1, -1):
        raise ValueError(f"matrix with determinant {d} is not unimodular")
    cols = []
    for k in range(n):
        e = [1 if i == k else 0 for i in range(n)]
        col = solve_exact([list(row) for row in M], e)
        assert col is not None
        cols.append([int(x) for x in col])
    return [[cols[j][i] for j in range(n)] for i in range(n)]
