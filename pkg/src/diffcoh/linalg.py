"""Exact integer matrices and Smith normal form with change-of-basis witnesses.

All arithmetic uses Python's arbitrary-precision integers; no intermediate
result is ever rounded or reduced mod anything.  Matrices are lists of rows;
the public wrapper :class:`IntMatrix` is an immutable value object used at
API boundaries (JSON I/O, stored witnesses).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Rows = list[list[int]]


class BoundExceeded(Exception):
    """An enumeration or search exceeded its configured budget."""

    def __init__(self, message: str, estimate: int):
        super().__init__(f"{message} (estimated size {estimate})")
        self.estimate = estimate


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix in row-major order."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("column count mismatch")

    @staticmethod
    def from_rows(data: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        data = [list(r) for r in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        return IntMatrix(len(data), cols, tuple(tuple(int(x) for x in r) for r in data))

    def to_rows(self) -> Rows:
        return [list(r) for r in self.entries]

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix.from_rows(mat_mul(self.to_rows(), other.to_rows(), other.cols), other.cols)


def mat_identity(n: int) -> Rows:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_zero(n: int, m: int) -> Rows:
    return [[0] * m for _ in range(n)]


def mat_mul(a: Rows, b: Rows, bcols: int | None = None) -> Rows:
    n = len(a)
    k = len(a[0]) if a else 0
    m = bcols if bcols is not None else (len(b[0]) if b else 0)
    if k and len(b) != k:
        raise ValueError("dimension mismatch")
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(m):
                    oi[j] += x * bt[j]
    return out

def mat_add(a: Rows, b: Rows) -> Rows:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Rows, b: Rows) -> Rows:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Rows, c: int) -> Rows:
    return [[c * x for x in row] for row in a]


def mat_transpose(a: Rows) -> Rows:
    return [list(col) for col in zip(*a)] if a else []


def mat_vec(a: Rows, v: list[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def mat_is_zero(a: Rows) -> bool:
    return all(all(x == 0 for x in row) for row in a)


def mat_eq(a: Rows, b: Rows) -> bool:
    return a == b


def mat_det(a: Rows) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    """U * M * V = S with S diagonal, d_1 | d_2 | ... | d_k >= 0.

    Uinv and Vinv are the exact integer inverses of the unimodular
    transforms, tracked during elimination.
    """

    S: IntMatrix
    U: IntMatrix
    V: IntMatrix
    Uinv: IntMatrix
    Vinv: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        n = min(self.S.rows, self.S.cols)
        return [self.S.entries[i][i] for i in range(n)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(M: IntMatrix | Sequence[Sequence[int]], cols: int | None = None) -> SmithForm:
    """Smith normal form with transforms, deterministic for a given input.

    Pivots are chosen of least absolute value (ties broken by row, then
    column index) to limit coefficient growth.
    """
    if isinstance(M, IntMatrix):
        a = M.to_rows()
        n, m = M.rows, M.cols
    else:
        a = [list(map(int, r)) for r in M]
        n = len(a)
        m = cols if cols is not None else (len(a[0]) if a else 0)

    u = mat_identity(n)
    uinv = mat_identity(n)
    v = mat_identity(m)
    vinv = mat_identity(m)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for r in uinv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def row_sub(i, t, q):
        # row_i -= q * row_t
        if q == 0:
            return
        ai, at = a[i], a[t]
        for j in range(m):
            ai[j] -= q * at[j]
        ui, ut = u[i], u[t]
        for j in range(n):
            ui[j] -= q * ut[j]
        for r in uinv:
            r[t] += q * r[i]

    def col_sub(j, t, q):
        # col_j -= q * col_t
        if q == 0:
            return
        for r in a:
            r[j] -= q * r[t]
        for r in v:
            r[j] -= q * r[t]
        vt, vj = vinv[t], vinv[j]
        for s in range(m):
            vt[s] += q * vj[s]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for r in uinv:
            r[i] = -r[i]

    t = 0
    limit = min(n, m)
    while t < limit:
        # Pivot of least |value| in the active submatrix; ties by (row, col).
        best = None
        pi = pj = -1
        for i in range(t, n):
            ai = a[i]
            for j in range(t, m):
                x = ai[j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pi, pj = i, j
        if best is None:
            break
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        if a[t][t] < 0:
            negate_row(t)

        # Clear row and column t; remainders force pivot re-selection.
        dirty = False
        for i in range(t + 1, n):
            x = a[i][t]
            if x:
                row_sub(i, t, x // a[t][t])
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, m):
            x = a[t][j]
            if x:
                col_sub(j, t, x // a[t][t])
                if a[t][j]:
                    dirty = True
        if dirty:
            continue

        # Divisibility fix: pivot must divide the remaining submatrix.
        d = a[t][t]
        bad = None
        for i in range(t + 1, n):
            ai = a[i]
            for j in range(t + 1, m):
                if ai[j] % d:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_sub(t, bad, -1)  # row_t += row_bad
            continue
        t += 1

    return SmithForm(
        S=IntMatrix.from_rows(a, m),
        U=IntMatrix.from_rows(u, n),
        V=IntMatrix.from_rows(v, m),
        Uinv=IntMatrix.from_rows(uinv, n),
        Vinv=IntMatrix.from_rows(vinv, m),
    )


def solve_integer(M: Rows, b: list[int], cols: int | None = None) -> list[int] | None:
    """A particular integer solution x of M x = b, or None.

    Deterministic: the solution derived from the Smith form with all free
    coordinates set to zero.
    """
    n = len(M)
    m = cols if cols is not None else (len(M[0]) if M else 0)
    sf = smith_normal_form(M, cols=m)
    c = mat_vec(sf.U.to_rows(), b)
    y = [0] * m
    diag = sf.diagonal
    for i in range(n):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return mat_vec(sf.V.to_rows(), y)


def kernel_basis(M: Rows, cols: int | None = None) -> list[list[int]]:
    """Basis (as column vectors) of the integer kernel of M."""
    m = cols if cols is not None else (len(M[0]) if M else 0)
    sf = smith_normal_form(M, cols=m)
    diag = sf.diagonal
    vrows = sf.V.to_rows()
    basis = []
    for j in range(m):
        d = diag[j] if j < len(diag) else 0
        if d == 0:
            basis.append([vrows[i][j] for i in range(m)])
    return basis
