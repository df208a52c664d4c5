"""Dense exact linear algebra over the rationals.

Every rank, kernel, and determinant decision in this package must be exact:
decomposition dimensions feed determinant degrees and the acceptance values
are exact rationals. Matrices stay small (tens of rows), so dense
``fractions.Fraction`` arithmetic is the right tool. Floating point enters
only through :meth:`Matrix.to_float` for the numerical eigen/SVD cross-checks.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

ZERO = Fraction(0)
ONE = Fraction(1)


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class Matrix:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        self.rows = tuple(tuple(_frac(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != self.ncols:
                raise ValueError("ncols disagrees with rows")
        else:
            self.ncols = 0 if ncols is None else ncols

    # -- construction -----------------------------------------------------

    @classmethod
    def zeros(cls, m, n):
        return cls([[ZERO] * n for _ in range(m)], ncols=n)

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries):
        entries = list(entries)
        n = len(entries)
        return cls([[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_cols(cls, cols, nrows=None):
        cols = [tuple(c) for c in cols]
        if not cols:
            if nrows is None:
                raise ValueError("nrows required for empty column list")
            return cls.zeros(nrows, 0)
        m = len(cols[0])
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(m)])

    # -- shape and access --------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def cols(self):
        return [self.col(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def submatrix(self, row_idx, col_idx):
        return Matrix([[self.rows[i][j] for j in col_idx] for i in row_idx],
                      ncols=len(col_idx))

    @property
    def T(self):
        return Matrix([self.col(j) for j in range(self.ncols)], ncols=self.nrows)

    # -- arithmetic ---------------------------------------------------------

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ot = other.T.rows
            return Matrix(
                [[sum(a * b for a, b in zip(r, c)) for c in ot] for r in self.rows],
                ncols=other.ncols,
            )
        return NotImplemented

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      ncols=self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows], ncols=self.ncols)

    def scale(self, c):
        c = _frac(c)
        return Matrix([[c * a for a in r] for r in self.rows], ncols=self.ncols)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        return f"Matrix({[list(map(str, r)) for r in self.rows]})"

    def is_zero(self):
        return all(a == 0 for r in self.rows for a in r)

    def is_symmetric(self):
        return self.nrows == self.ncols and all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows) for j in range(i + 1, self.ncols)
        )

    # -- elimination --------------------------------------------------------

    def rref(self):
        """Reduced row echelon form; returns (rows, pivot_columns)."""
        m = [list(r) for r in self.rows]
        nr, nc = self.nrows, self.ncols
        pivots = []
        pr = 0
        for pc in range(nc):
            pivot_row = None
            for i in range(pr, nr):
                if m[i][pc] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[pr], m[pivot_row] = m[pivot_row], m[pr]
            inv = 1 / m[pr][pc]
            m[pr] = [a * inv for a in m[pr]]
            for i in range(nr):
                if i != pr and m[i][pc] != 0:
                    f = m[i][pc]
                    m[i] = [a - f * b for a, b in zip(m[i], m[pr])]
            pivots.append(pc)
            pr += 1
            if pr == nr:
                break
        return m, tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def nullspace(self):
        """Deterministic kernel basis: one vector per free column, with a 1
        in the free position and pivot entries filled by back substitution."""
        rrows, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for f in free:
            v = [ZERO] * self.ncols
            v[f] = ONE
            for r, p in enumerate(pivots):
                v[p] = -rrows[r][f]
            basis.append(tuple(v))
        return basis

    def column_space_pivots(self):
        """Indices of a deterministic maximal independent column subset."""
        return self.rref()[1]

    def solve(self, rhs):
        """Solve ``self @ X == rhs`` exactly.

        Requires full column rank (unique solution); returns None when the
        system is inconsistent.
        """
        if isinstance(rhs, Matrix):
            b = rhs
        else:
            b = Matrix([[x] for x in rhs])
        if b.nrows != self.nrows:
            raise ValueError("rhs length mismatch")
        aug = hstack(self, b)
        rrows, pivots = aug.rref()
        n = self.ncols
        if any(p >= n for p in pivots):
            return None  # inconsistent
        if len(pivots) < n:
            raise ValueError("solve requires full column rank")
        xs = [[ZERO] * b.ncols for _ in range(n)]
        for r, p in enumerate(pivots):
            for j in range(b.ncols):
                xs[p][j] = rrows[r][n + j]
        X = Matrix(xs, ncols=b.ncols)
        return X if isinstance(rhs, Matrix) else X.col(0)

    def inverse(self):
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        inv = self.solve(Matrix.identity(self.nrows))
        if inv is None:
            raise ValueError("matrix is singular")
        return inv

    def det(self):
        """Exact determinant by fraction-free (Bareiss) elimination.

        Rows are scaled to integers first; the scaling is divided back out.
        """
        if self.nrows != self.ncols:
            raise ValueError("determinant of non-square matrix")
        n = self.nrows
        if n == 0:
            return ONE
        scale = ONE
        m = []
        for r in self.rows:
            d = lcm(*(x.denominator for x in r)) if r else 1
            scale *= d
            m.append([int(x * d) for x in r])
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return ZERO
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return Fraction(sign * m[n - 1][n - 1], 1) / scale

    def ldlt_pivots(self):
        """Pivots of the LDL^T factorization without row exchanges.

        Returns the list of diagonal pivots, or None if a zero pivot is hit
        (which for a symmetric matrix certifies it is not positive definite).
        """
        if not self.is_symmetric():
            raise ValueError("ldlt_pivots requires a symmetric matrix")
        n = self.nrows
        a = [list(r) for r in self.rows]
        pivots = []
        for k in range(n):
            p = a[k][k]
            if p == 0:
                return None
            pivots.append(p)
            for i in range(k + 1, n):
                f = a[i][k] / p
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
        return pivots

    def is_positive_definite(self):
        """Exact Sylvester-style test via LDL^T pivot signs."""
        piv = self.ldlt_pivots()
        return piv is not None and all(p > 0 for p in piv)

    def to_float(self):
        return np.array([[float(x) for x in r] for r in self.rows], dtype=float).reshape(
            self.nrows, self.ncols
        )


# -- module-level helpers ----------------------------------------------------

def hstack(*mats):
    mats = [m for m in mats]
    nr = mats[0].nrows
    if any(m.nrows != nr for m in mats):
        raise ValueError("row count mismatch in hstack")
    return Matrix([sum((list(m.rows[i]) for m in mats), []) for i in range(nr)],
                  ncols=sum(m.ncols for m in mats))


def vstack(*mats):
    nc = mats[0].ncols
    if any(m.ncols != nc for m in mats):
        raise ValueError("column count mismatch in vstack")
    rows = []
    for m in mats:
        rows.extend(m.rows)
    return Matrix(rows, ncols=nc)


def matvec(A, v):
    if A.ncols != len(v):
        raise ValueError("shape mismatch in matvec")
    return tuple(sum(a * x for a, x in zip(r, v)) for r in A.rows)


def vdot(u, v):
    return sum(a * b for a, b in zip(u, v))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    c = _frac(c)
    return tuple(c * a for a in v)


def is_zero_vec(v):
    return all(a == 0 for a in v)


def span_rank(vectors, length):
    if not vectors:
        return 0
    return Matrix(list(vectors), ncols=length).rank()


def spans_equal(vecs_a, vecs_b, length):
    """Exact equality of the spans of two vector lists."""
    ra = span_rank(vecs_a, length)
    rb = span_rank(vecs_b, length)
    rc = span_rank(list(vecs_a) + list(vecs_b), length)
    return ra == rb == rc


def in_span(vectors, v, length):
    return span_rank(vectors, length) == span_rank(list(vectors) + [v], length)


def metric_projector(basis_cols, G):
    """Matrix of the G-orthogonal projection onto span of the given columns.

    ``basis_cols`` is a Matrix whose columns are independent chain vectors.
    Returns P with P @ x the projection; P = U (U^T G U)^{-1} U^T G.
    """
    U = basis_cols
    if U.ncols == 0:
        return Matrix.zeros(U.nrows, U.nrows)
    gram = U.T @ G @ U
    return U @ gram.inverse() @ U.T @ G
