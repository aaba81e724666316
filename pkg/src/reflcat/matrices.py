"""Small dense matrices over CycloNum, stored as tuples of row tuples."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .cyclo import CycloNum, make_rational

Matrix = tuple[tuple[CycloNum, ...], ...]


def as_matrix(rows: Sequence[Sequence], ell: int) -> Matrix:
    out = []
    for row in rows:
        out.append(tuple(x if isinstance(x, CycloNum) else make_rational(x, ell) for x in row))
    return tuple(out)


def identity(n: int, ell: int) -> Matrix:
    one = make_rational(1, ell)
    zero = make_rational(0, ell)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    out = []
    for row in a:
        new_row = []
        for col in cols:
            acc = None
            for x, y in zip(row, col):
                if x.is_zero() or y.is_zero():
                    continue
                p = x * y
                acc = p if acc is None else acc + p
            new_row.append(acc if acc is not None else row[0] * 0)
        out.append(tuple(new_row))
    return tuple(out)


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_key(m: Matrix) -> tuple:
    """Row-major canonical key for exact deduplication."""
    return tuple(x.key for row in m for x in row)


def trace(m: Matrix) -> CycloNum:
    acc = m[0][0]
    for i in range(1, len(m)):
        acc = acc + m[i][i]
    return acc


def galois_matrix(m: Matrix, t: int) -> Matrix:
    return tuple(tuple(x.galois(t) for x in row) for row in m)


def conj_transpose(m: Matrix) -> Matrix:
    return tuple(tuple(x.conj() for x in col) for col in zip(*m))


def det_one_minus_qm(m: Matrix) -> tuple[CycloNum, ...]:
    """Coefficients c_0..c_n of det(I - qM) = sum c_k q^k, so c_k = (-1)^k e_k.

    Faddeev-LeVerrier for n > 2; closed forms for n <= 2.
    """
    n = len(m)
    ell = m[0][0].conductor
    one = make_rational(1, ell)
    if n == 1:
        return (one, -m[0][0])
    if n == 2:
        a, b = m[0]
        c, d = m[1]
        return (one, -(a + d), a * d - b * c)
    # charpoly x^n + p_1 x^(n-1) + ... + p_n gives det(I - qM) = 1 + p_1 q + ... + p_n q^n
    coeffs = [one]
    zero = make_rational(0, ell)
    mk = tuple(tuple(zero for _ in range(n)) for _ in range(n))
    for k in range(1, n + 1):
        # M_k = M * M_{k-1} + p_{k-1} I
        prod = mat_mul(m, mk) if k > 1 else mk
        pk1 = coeffs[-1]
        mk = tuple(
            tuple(prod[i][j] + pk1 if i == j else prod[i][j] for j in range(n)) for i in range(n)
        )
        tr_k = trace(mat_mul(m, mk))
        coeffs.append(tr_k * Fraction(-1, k))
    return tuple(coeffs)


def row_echelon(rows: Sequence[Sequence[CycloNum]]) -> list[list[CycloNum]]:
    """Reduced row echelon form with zero rows dropped."""
    work = [list(r) for r in rows]
    m = len(work)
    ncols = len(work[0]) if work else 0
    out_rank = 0
    for c in range(ncols):
        p = next((i for i in range(out_rank, m) if not work[i][c].is_zero()), None)
        if p is None:
            continue
        work[out_rank], work[p] = work[p], work[out_rank]
        inv = work[out_rank][c].inverse()
        work[out_rank] = [x * inv for x in work[out_rank]]
        piv = work[out_rank]
        for i in range(m):
            if i != out_rank and not work[i][c].is_zero():
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], piv)]
        out_rank += 1
    return work[:out_rank]


def rank(m: Sequence[Sequence[CycloNum]]) -> int:
    return len(row_echelon(m))


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    ell = m[0][0].conductor
    ident = identity(n, ell)
    aug = [list(m[i]) + list(ident[i]) for i in range(n)]
    red = row_echelon(aug)
    if len(red) < n or any(red[i][i] != 1 for i in range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in red)


def determinant(m: Matrix) -> CycloNum:
    coeffs = det_one_minus_qm(m)
    n = len(m)
    return coeffs[n] if n % 2 == 0 else -coeffs[n]
