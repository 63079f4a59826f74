"""Small exact matrix helpers on raw field values (lists of rows)."""

from __future__ import annotations

from .errors import DivisionByZero, SizeMismatch


def identity(field, m):
    return [[field.one if i == j else field.zero for j in range(m)] for i in range(m)]


def matmul(field, A, B):
    if len(A[0]) != len(B):
        raise SizeMismatch("inner dimensions differ")
    cols = list(zip(*B))
    return [[field.reduce(sum((a * b for a, b in zip(row, col)), field.zero)) for col in cols] for row in A]


def matvec(field, A, v):
    return [field.reduce(sum((a * b for a, b in zip(row, v)), field.zero)) for row in A]


def det(field, A):
    """Determinant by Gaussian elimination over the field."""
    M = [list(r) for r in A]
    m = len(M)
    result = field.one
    for col in range(m):
        piv = next((r for r in range(col, m) if M[r][col]), None)
        if piv is None:
            return field.zero
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            result = field.neg(result)
        pv = M[col][col]
        result = field.mul(result, pv)
        inv = field.inv(pv)
        for r in range(col + 1, m):
            if M[r][col]:
                fct = field.mul(M[r][col], inv)
                M[r] = [field.sub(a, field.mul(fct, b)) for a, b in zip(M[r], M[col])]
    return result


def inverse(field, A):
    m = len(A)
    M = [list(r) + row for r, row in zip(A, identity(field, m))]
    for col in range(m):
        piv = next((r for r in range(col, m) if M[r][col]), None)
        if piv is None:
            raise DivisionByZero("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = field.inv(M[col][col])
        M[col] = [field.mul(a, inv) for a in M[col]]
        for r in range(m):
            if r != col and M[r][col]:
                fct = M[r][col]
                M[r] = [field.sub(a, field.mul(fct, b)) for a, b in zip(M[r], M[col])]
    return [row[m:] for row in M]


def scale(field, A, c):
    return [[field.mul(a, c) for a in row] for row in A]


def is_scalar_multiple_of_identity(field, A):
    c = A[0][0]
    if not c:
        return False
    return all((A[i][j] == c) if i == j else not A[i][j] for i in range(len(A)) for j in range(len(A)))
