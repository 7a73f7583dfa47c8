"""Dense exact matrices over the Q(w) scalar field.

Small and unoptimized on purpose: every space in the package has dimension
at most a few dozen, and exactness is the whole point.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .scalar import ONE, ZERO_SCALAR, Scalar


def _scal(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    return Scalar(x)


class Matrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(_scal(x) for x in r) for r in rows)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
        else:
            width = 0
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", width)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([[ZERO_SCALAR] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO_SCALAR for j in range(n)]
                    for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "Matrix":
        cols = [tuple(_scal(x) for x in c) for c in cols]
        if not cols:
            return cls([])
        return cls([[c[i] for c in cols] for i in range(len(cols[0]))])

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r, s)]
                       for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return Matrix([[a - b for a, b in zip(r, s)]
                       for r, s in zip(self.rows, other.rows)])

    def scale(self, s) -> "Matrix":
        s = _scal(s)
        return Matrix([[s * x for x in r] for r in self.rows])

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError(
                f"cannot compose {self.nrows}x{self.ncols} "
                f"with {other.nrows}x{other.ncols}")
        cols = list(zip(*other.rows)) if other.rows else []
        return Matrix([[sum((a * b for a, b in zip(row, col)), ZERO_SCALAR)
                        for col in cols] for row in self.rows])

    def apply(self, vec: Sequence) -> tuple:
        vec = tuple(_scal(x) for x in vec)
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(row, vec)), ZERO_SCALAR)
                     for row in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.rows)) if self.rows else [])

    def kron(self, other: "Matrix") -> "Matrix":
        out = []
        for r in self.rows:
            for s in other.rows:
                out.append([a * b for a in r for b in s])
        return Matrix(out)

    def is_identity(self) -> bool:
        return (self.nrows == self.ncols
                and self == Matrix.identity(self.nrows))

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    # -- elimination ----------------------------------------------------

    def rref(self):
        """Reduced row echelon form; returns (matrix, pivot column list)."""
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            pivot = next((i for i in range(r, self.nrows) if rows[i][c]), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = rows[r][c].inverse()
            rows[r] = [x * inv for x in rows[r]]
            for i in range(self.nrows):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return Matrix(rows), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list:
        """Basis of the kernel, one vector per free column, in column order."""
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.ncols) if c not in pivot_set]
        basis = []
        for f in free:
            v = [ZERO_SCALAR] * self.ncols
            v[f] = ONE
            for r, c in enumerate(pivots):
                v[c] = -red.rows[r][f]
            basis.append(tuple(v))
        return basis

    def solve(self, rhs: Sequence) -> tuple:
        """Unique solution of self @ x = rhs; raises if none or many."""
        rhs = tuple(_scal(x) for x in rhs)
        if len(rhs) != self.nrows:
            raise ValueError("rhs length mismatch")
        aug = Matrix([list(r) + [b] for r, b in zip(self.rows, rhs)]
                     if self.rows else [])
        red, pivots = aug.rref()
        if self.ncols in pivots:
            raise ValueError("inconsistent system")
        if len(pivots) < self.ncols:
            raise ValueError("underdetermined system")
        x = [ZERO_SCALAR] * self.ncols
        for r, c in enumerate(pivots):
            x[c] = red.rows[r][self.ncols]
        return tuple(x)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("only square matrices invert")
        n = self.nrows
        aug = Matrix([list(r) + list(Matrix.identity(n).rows[i])
                      for i, r in enumerate(self.rows)])
        red, pivots = aug.rref()
        if pivots != list(range(n)):
            raise ValueError("singular matrix")
        return Matrix([r[n:] for r in red.rows])

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def map(self, f: Callable[[Scalar], Scalar]) -> "Matrix":
        return Matrix([[f(x) for x in r] for r in self.rows])

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix[{body}]"
