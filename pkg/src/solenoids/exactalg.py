"""Exact integer matrices: Hermite and Smith normal forms, saturation, kernels.

All arithmetic is on Python ints, so entries never overflow.  Matrices are
immutable; every routine returns fresh matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols is required for a matrix with no rows")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            out[i][i] = v
        return cls.from_rows(out, cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols_b = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(r, c)) for c in cols_b] for r in self.entries], other.cols
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def det(self) -> int:
        """Bareiss fraction-free determinant."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and abs(self.det()) == 1

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [[str(x) for x in r] for r in self.entries]}

    @classmethod
    def from_json(cls, obj: dict) -> IntMatrix:
        return cls.from_rows([[int(x) for x in r] for r in obj["entries"]], int(obj["cols"]))


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _combine_rows(m, r, i, a, b, c, d):
    # row r <- a*row r + b*row i ; row i <- c*row r + d*row i
    for k in range(len(m[r])):
        x, y = m[r][k], m[i][k]
        m[r][k] = a * x + b * y
        m[i][k] = c * x + d * y


def hermite_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style HNF.  Returns (H, U) with U unimodular and U @ M == H.

    Pivots are positive, entries above a pivot lie in [0, pivot), and zero rows
    come last.
    """
    a = M.tolist()
    u = IntMatrix.identity(M.rows).tolist()
    r = 0
    for c in range(M.cols):
        if r == M.rows:
            break
        for i in range(r + 1, M.rows):
            if a[i][c] == 0:
                continue
            p, q = a[r][c], a[i][c]
            g, x, y = xgcd(p, q)
            for m in (a, u):
                _combine_rows(m, r, i, x, y, -q // g, p // g)
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-v for v in a[r]]
            u[r] = [-v for v in u[r]]
        piv = a[r][c]
        for i in range(r):
            f = a[i][c] // piv
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                u[i] = [x - f * y for x, y in zip(u[i], u[r])]
        r += 1
    return IntMatrix.from_rows(a, M.cols), IntMatrix.from_rows(u, M.rows)


def hnf_basis(M: IntMatrix) -> IntMatrix:
    """Canonical lattice basis: the nonzero rows of the HNF of M."""
    H, _ = hermite_normal_form(M)
    return IntMatrix.from_rows([r for r in H.entries if any(r)], M.cols)


def _smith(M: IntMatrix):
    a = M.tolist()
    nr, nc = M.rows, M.cols
    u = IntMatrix.identity(nr).tolist()
    v = IntMatrix.identity(nc).tolist()
    vinv = IntMatrix.identity(nc).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for m in (a, v):
            for row in m:
                row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def col_sub(j, t, f):
        # column j -= f * column t
        for m in (a, v):
            for row in m:
                row[j] -= f * row[t]
        vinv[t] = [x + f * y for x, y in zip(vinv[t], vinv[j])]

    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return a, u, v, vinv
            if best[0] != t:
                swap_rows(t, best[0])
            if best[1] != t:
                swap_cols(t, best[1])
            piv = a[t][t]
            clean = True
            for i in range(t + 1, nr):
                f = a[i][t] // piv
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], a[t])]
                    u[i] = [x - f * y for x, y in zip(u[i], u[t])]
                clean &= a[i][t] == 0
            for j in range(t + 1, nc):
                f = a[t][j] // piv
                if f:
                    col_sub(j, t, f)
                clean &= a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % piv), None
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
            u[t] = [x + y for x, y in zip(u[t], u[bad])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v, vinv


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U @ M @ V == D, D diagonal, d1 | d2 | ..., all >= 0."""
    a, u, v, _ = _smith(M)
    return (
        IntMatrix.from_rows(u, M.rows),
        IntMatrix.from_rows(a, M.cols),
        IntMatrix.from_rows(v, M.cols),
    )


def invariant_factors(M: IntMatrix) -> list[int]:
    _, D, _ = smith_normal_form(M)
    return [D[i, i] for i in range(min(M.shape)) if D[i, i]]


def rank(M: IntMatrix) -> int:
    return len(invariant_factors(M))


def saturate(L: IntMatrix) -> IntMatrix:
    """HNF basis of {v in Z^n : k*v in rowspan(L) for some k >= 1}."""
    a, _, _, vinv = _smith(L)
    r = sum(1 for i in range(min(L.shape)) if a[i][i])
    return hnf_basis(IntMatrix.from_rows(vinv[:r], L.cols))


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """HNF basis of the left kernel {v : v @ M == 0}; always saturated."""
    H, U = hermite_normal_form(M)
    rows = [U.row(i) for i in range(M.rows) if not any(H.row(i))]
    return hnf_basis(IntMatrix.from_rows(rows, M.rows))


def is_saturated(L: IntMatrix) -> bool:
    return hnf_basis(L) == saturate(L)


def inverse(M: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular matrix, by exact Gauss-Jordan over Q."""
    if not M.is_unimodular():
        raise ValueError("matrix is not unimodular")
    n = M.rows
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M.entries)]
    for c in range(n):
        p = next(i for i in range(c, n) if a[i][c])
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return IntMatrix.from_rows([[int(x) for x in r[n:]] for r in a], n)


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
