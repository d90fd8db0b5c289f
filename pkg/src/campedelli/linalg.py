"""Dense exact linear algebra over a pluggable field (small matrices only)."""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple


def identity_matrix(field, n: int):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def mat_mul(field, a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = field.zero
            for t in range(k):
                if not field.is_zero(a[i][t]) and not field.is_zero(b[t][j]):
                    acc = field.add(acc, field.mul(a[i][t], b[t][j]))
            row.append(acc)
        out.append(row)
    return out


def mat_vec(field, a, v):
    out = []
    for row in a:
        acc = field.zero
        for x, y in zip(row, v):
            if not field.is_zero(x) and not field.is_zero(y):
                acc = field.add(acc, field.mul(x, y))
        out.append(acc)
    return out


def mat_scale(field, a, c):
    return [[field.mul(x, c) for x in row] for row in a]


def rref(field, matrix) -> Tuple[list, List[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    rows = [list(r) for r in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if not field.is_zero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(x, inv) for x in rows[r]]
        for i in range(nrows):
            if i != r and not field.is_zero(rows[i][c]):
                factor = rows[i][c]
                rows[i] = [
                    field.sub(x, field.mul(factor, y)) for x, y in zip(rows[i], rows[r])
                ]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def rank(field, matrix) -> int:
    return len(rref(field, matrix)[1])


def kernel_basis(field, matrix) -> list:
    """Basis of the right kernel, one vector per free column."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    rows, pivots = rref(field, matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [field.zero] * ncols
        vec[fc] = field.one
        for r, pc in enumerate(pivots):
            vec[pc] = field.neg(rows[r][fc])
        basis.append(vec)
    return basis


def solve_linear(field, matrix, rhs) -> Optional[list]:
    """One solution of M x = rhs, or None when inconsistent."""
    if not matrix:
        return None
    ncols = len(matrix[0])
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(field, augmented)
    for row in rows:
        if all(field.is_zero(x) for x in row[:-1]) and not field.is_zero(row[-1]):
            return None
    x = [field.zero] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = rows[r][-1]
    return x


def mat_inverse(field, matrix):
    n = len(matrix)
    augmented = [list(row) + ident for row, ident in zip(matrix, identity_matrix(field, n))]
    rows, pivots = rref(field, augmented)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in rows]


def determinant(field, matrix):
    n = len(matrix)
    rows = [list(r) for r in matrix]
    det = field.one
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if not field.is_zero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            return field.zero
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = field.neg(det)
        det = field.mul(det, rows[c][c])
        inv = field.inv(rows[c][c])
        for i in range(c + 1, n):
            if not field.is_zero(rows[i][c]):
                factor = field.mul(rows[i][c], inv)
                rows[i] = [
                    field.sub(x, field.mul(factor, y)) for x, y in zip(rows[i], rows[c])
                ]
    return det


def char_poly(field, matrix) -> list:
    """Characteristic polynomial det(zI - M), low-to-high coefficients
    (Faddeev-LeVerrier over fields of characteristic 0 or > n)."""
    n = len(matrix)
    coeffs = [field.zero] * (n + 1)
    coeffs[n] = field.one
    m = identity_matrix(field, n)
    a = matrix
    mk = m
    for k in range(1, n + 1):
        mk = mat_mul(field, a, mk)
        trace = field.zero
        for i in range(n):
            trace = field.add(trace, mk[i][i])
        ck = field.neg(field.div(trace, field.from_int(k)))
        coeffs[n - k] = ck
        for i in range(n):
            mk[i][i] = field.add(mk[i][i], ck)
    return coeffs
