"""Exact dense matrices over Q or a radical extension field.

Entries are Fractions or Ext elements.  solve_linear returns the complete
solution structure (unique / affine set / inconsistent) and accepts
right-hand sides whose entries live in any module over the entry field
(e.g. polynomials), which the Laurent recursion relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ext import Ext
from .poly import Poly


def _coerce(x):
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, Ext)):
        return x
    raise TypeError(f"bad matrix entry {x!r}")


class Matrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        self.entries = [[_coerce(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged matrix")

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(r: int, c: int) -> "Matrix":
        return Matrix([[Fraction(0)] * c for _ in range(r)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and all(
                self.entries[i][j] == other.entries[i][j]
                for i in range(self.rows)
                for j in range(self.cols)
            )
        )

    def __add__(self, other):
        return Matrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other):
        return Matrix(
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch in matrix product")
            return Matrix(
                [
                    [
                        sum(
                            (self.entries[i][k] * other.entries[k][j] for k in range(self.cols)),
                            Fraction(0),
                        )
                        for j in range(other.cols)
                    ]
                    for i in range(self.rows)
                ]
            )
        return Matrix([[x * other for x in row] for row in self.entries])

    __rmul__ = __mul__

    def matvec(self, v: list) -> list:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch in matvec")
        out = []
        for i in range(self.rows):
            acc = None
            for j, x in enumerate(v):
                t = self.entries[i][j] * x
                acc = t if acc is None else acc + t
            out.append(acc if acc is not None else Fraction(0))
        return out

    def transpose(self) -> "Matrix":
        return Matrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), Fraction(0))

    def map(self, fn) -> "Matrix":
        return Matrix([[fn(x) for x in row] for row in self.entries])

    def numeric(self):
        import numpy as np

        def val(x):
            return x.numeric() if isinstance(x, Ext) else complex(x)

        return np.array([[val(x) for x in row] for row in self.entries], dtype=complex)

    def col(self, j: int) -> list:
        return [self.entries[i][j] for i in range(self.rows)]

    def submatrix(self, row_idx, col_idx) -> "Matrix":
        return Matrix([[self.entries[i][j] for j in col_idx] for i in row_idx])

    def rref(self):
        """Reduced row echelon form; returns (matrix rows, pivot columns)."""
        m = [list(r) for r in self.entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            pr = next((i for i in range(r, self.rows) if m[i][c]), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            pv = m[r][c]
            m[r] = [x / pv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list:
        """Basis of the kernel, deterministic (free columns in order)."""
        m, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            v = [Fraction(0)] * self.cols
            v[fc] = Fraction(1)
            for r, pc in enumerate(pivots):
                v[pc] = -m[r][fc]
            basis.append(v)
        return basis

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self.entries]
        n = self.rows
        det = Fraction(1)
        for c in range(n):
            pr = next((i for i in range(c, n) if m[i][c]), None)
            if pr is None:
                return Fraction(0)
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                det = -det
            det = det * m[c][c]
            inv = 1 / m[c][c] if isinstance(m[c][c], Fraction) else m[c][c].inverse()
            for i in range(c + 1, n):
                if m[i][c]:
                    f = m[i][c] * inv
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return det

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = Matrix([row + ident for row, ident in zip(self.entries, Matrix.identity(n).entries)])
        m, pivots = aug.rref()
        if pivots != list(range(n)):
            raise ValueError("singular matrix")
        return Matrix([row[n:] for row in m])


@dataclass
class LinearSolution:
    """Exact solution structure of A x = b."""

    status: str  # "unique" | "affine" | "inconsistent"
    particular: list | None
    nullspace: list
    residual_rows: list  # witnesses (row index, rhs residue) when inconsistent


def _is_zero_rhs(x) -> bool:
    return not x


def solve_linear(a: Matrix, b: list) -> LinearSolution:
    """Exact Gaussian elimination with a generic right-hand side.

    RHS entries need +, -, and scalar multiplication by the entry field;
    Fractions, Ext elements and Polys all qualify.
    """
    if len(b) != a.rows:
        raise ValueError("dimension mismatch in solve_linear")
    m = [list(r) for r in a.entries]
    rhs = list(b)
    rows, cols = a.rows, a.cols
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        rhs[r], rhs[pr] = rhs[pr], rhs[r]
        pv = m[r][c]
        pvinv = 1 / pv if isinstance(pv, Fraction) else pv.inverse()
        m[r] = [x * pvinv for x in m[r]]
        rhs[r] = rhs[r] * pvinv
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
                rhs[i] = rhs[i] - f * rhs[r]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    bad = [(i, rhs[i]) for i in range(len(pivots), rows) if not _is_zero_rhs(rhs[i])]
    if bad:
        return LinearSolution("inconsistent", None, [], bad)
    zero_rhs = None
    for x in rhs:
        zero_rhs = x - x
        break
    particular = [zero_rhs if zero_rhs is not None else Fraction(0) for _ in range(cols)]
    for i, pc in enumerate(pivots):
        particular[pc] = rhs[i]
    null = Matrix(m[: len(pivots)] if pivots else [[Fraction(0)] * cols]).nullspace() if pivots else Matrix(
        [[Fraction(0)] * cols]
    ).nullspace()
    status = "unique" if not null else "affine"
    return LinearSolution(status, particular, null, [])


def charpoly(m: Matrix, var: str = "lam") -> Poly:
    """Monic characteristic polynomial det(lam*I - M), Faddeev-LeVerrier.

    Exact over Q and over extension fields (divisions are by integers only).
    """
    if m.rows != m.cols:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.rows
    coeffs = [Fraction(1)]  # c_0 = 1 for lam^n
    mk = Matrix.zeros(n, n)
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        mk = m * (mk + coeffs[-1] * ident) if k > 1 else m
        ck = -(mk.trace()) / k if isinstance(mk.trace(), Fraction) else mk.trace() * Fraction(-1, k)
        coeffs.append(ck)
    p = Poly((var,))
    for k, c in enumerate(coeffs):
        p = p + Poly.monomial((var,), (n - k,), c)
    return p


def eval_poly_matrix(p: Poly, value):
    """Evaluate a univariate polynomial at a scalar (exact)."""
    acc = None
    for e, c in sorted(p.terms.items(), reverse=True):
        v = c * value ** e[0]
        acc = v if acc is None else acc + v
    return acc if acc is not None else Fraction(0)
