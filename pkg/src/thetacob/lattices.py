"""Integer-matrix normal forms for congruence lattices.

Vectors are rows; a lattice is the row span of an integer matrix.  The
row-style Hermite normal form canonicalises a basis, the Smith normal
form diagonal gives the elementary divisors of the quotient of the
ambient lattice by a full-rank sublattice, and kernel_rows() solves
x @ M = 0 over the integers.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def hermite_normal_form(rows: list[list[int]]) -> list[list[int]]:
    """Canonical row HNF: row-echelon, positive pivots, entries above a
    pivot reduced into [0, pivot).  Zero rows are dropped.
    """
    m = [list(r) for r in rows]
    if not m:
        return []
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        # euclidean elimination in column c below row r
        while True:
            nonzero = [i for i in range(r, nrows) if m[i][c] != 0]
            if not nonzero:
                break
            pivot = min(nonzero, key=lambda i: abs(m[i][c]))
            _swap_rows(m, r, pivot)
            done = True
            for i in range(r + 1, nrows):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if r < nrows and m[r][c]:
            if m[r][c] < 0:
                m[r] = [-a for a in m[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
            r += 1
            if r == nrows:
                break
    return [row for row in m[:r] if any(row)]


def kernel_rows(mat: list[list[int]]) -> list[list[int]]:
    """Basis of {x integer row : x @ mat = 0}.

    Runs the HNF elimination on mat while tracking the transformation U
    with U @ mat = H; the rows of U facing zero rows of H span the kernel.
    """
    m = [list(r) for r in mat]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    r = 0
    for c in range(ncols):
        while True:
            nonzero = [i for i in range(r, nrows) if m[i][c] != 0]
            if not nonzero:
                break
            pivot = min(nonzero, key=lambda i: abs(m[i][c]))
            _swap_rows(m, r, pivot)
            _swap_rows(u, r, pivot)
            done = True
            for i in range(r + 1, nrows):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if r < nrows and m[r][c]:
            r += 1
            if r == nrows:
                break
    return [u[i] for i in range(nrows) if not any(m[i])]


def smith_diagonal(mat: list[list[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form (d1 | d2 | ...)."""
    m = [list(r) for r in mat]
    if not m or not m[0]:
        return []
    nrows, ncols = len(m), len(m[0])
    diag = []
    top = 0
    while top < min(nrows, ncols):
        # locate smallest nonzero entry in the remaining block
        best = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        _swap_rows(m, top, i)
        for row in m:
            row[top], row[j] = row[j], row[top]
        # clear row and column at top
        dirty = False
        for i in range(top + 1, nrows):
            if m[i][top]:
                q = m[i][top] // m[top][top]
                m[i] = [a - q * b for a, b in zip(m[i], m[top])]
                if m[i][top]:
                    dirty = True
        for j in range(top + 1, ncols):
            if m[top][j]:
                q = m[top][j] // m[top][top]
                for row in m:
                    row[j] -= q * row[top]
                if m[top][j]:
                    dirty = True
        if dirty:
            continue
        # divisibility sweep: pivot must divide the rest of the block
        offender = None
        for i in range(top + 1, nrows):
            for j in range(top + 1, ncols):
                if m[i][j] % m[top][top]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            m[top] = [a + b for a, b in zip(m[top], m[offender])]
            continue
        diag.append(abs(m[top][top]))
        top += 1
    return diag


def common_denominator(rows) -> int:
    """lcm of the denominators of a rational matrix."""
    d = 1
    for row in rows:
        for x in row:
            den = Fraction(x).denominator
            d = d * den // gcd(d, den)
    return d


def integrality_lattice(rational_rows: list[list[Fraction]], dim: int) -> list[list[int]]:
    """HNF basis of {x in Z^dim : R x is integral for every row R}.

    Clearing denominators turns the condition into A x = 0 (mod D); the
    solutions are the projection of the integer kernel of [A^T ; -D I].
    """
    if not rational_rows:
        return [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    D = common_denominator(rational_rows)
    A = [[int(Fraction(x) * D) for x in row] for row in rational_rows]
    nrows = len(A)
    # rows of the stacked matrix: first dim rows = A^T, then -D * identity
    stacked = [[A[i][j] for i in range(nrows)] for j in range(dim)]
    for i in range(nrows):
        stacked.append([-D if k == i else 0 for k in range(nrows)])
    kern = kernel_rows(stacked)
    basis = [row[:dim] for row in kern]
    basis = [row for row in basis if any(row)]
    return hermite_normal_form(basis)


def row_in_lattice(row: list[int], hnf_basis: list[list[int]]) -> bool:
    """Membership test against an HNF basis by forward substitution."""
    rem = list(row)
    for b in hnf_basis:
        lead = next((j for j, x in enumerate(b) if x), None)
        if lead is None:
            continue
        if rem[lead] % b[lead] == 0:
            q = rem[lead] // b[lead]
            if q:
                rem = [a - q * x for a, x in zip(rem, b)]
    return not any(rem)
