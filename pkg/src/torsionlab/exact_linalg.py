"""Exact linear algebra over the rationals and the Gaussian rationals.

Scalars are ``fractions.Fraction`` (always reduced, positive denominator)
or :class:`GaussianRational`.  :class:`Matrix` is immutable and generic
over both scalar kinds; every operation is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError, SingularityError, StructureError

Q = Fraction

__all__ = [
    "Q",
    "GaussianRational",
    "Matrix",
    "MatrixQ",
    "MatrixQi",
    "char_poly",
    "kernel",
    "similar_2x2",
    "invert",
    "parse_rational",
    "format_rational",
    "parse_gaussian",
    "format_gaussian",
    "vec_add",
    "vec_sub",
    "vec_scale",
    "is_zero_vector",
]


def parse_rational(value) -> Fraction:
    """Accept Fraction, int, or a string like ``"p/q"`` / ``"p"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise StructureError(f"cannot read rational from {value!r}")


def format_rational(value: Fraction) -> str:
    return str(value)


@dataclass(frozen=True)
class GaussianRational:
    """Element of Q(i): ``re + im*i`` with exact rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(parse_rational(value), Fraction(0))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other):
        return GaussianRational.of(other) + (-self)

    def __mul__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.of(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.of(other) / self

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


I = GaussianRational(Fraction(0), Fraction(1))


def parse_gaussian(value) -> GaussianRational:
    """Accept a GaussianRational, a rational, or ``{"re": "p/q", "im": "r/s"}``."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, dict):
        return GaussianRational(parse_rational(value.get("re", 0)), parse_rational(value.get("im", 0)))
    return GaussianRational(parse_rational(value), Fraction(0))


def format_gaussian(value: GaussianRational) -> dict:
    return {"re": str(value.re), "im": str(value.im)}


def _coerce_entry(x):
    if isinstance(x, GaussianRational):
        return x
    return parse_rational(x)


class Matrix:
    """Immutable dense matrix with Fraction or GaussianRational entries."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries):
        raw = [tuple(_coerce_entry(x) for x in row) for row in entries]
        if not raw or not raw[0]:
            raise DimensionError("matrix needs at least one row and column")
        cols = len(raw[0])
        if any(len(r) != cols for r in raw):
            raise DimensionError("ragged rows in matrix literal")
        if any(isinstance(x, GaussianRational) for row in raw for x in row):
            raw = [tuple(GaussianRational.of(x) for x in row) for row in raw]
        object.__setattr__(self, "rows", len(raw))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_e", tuple(raw))

    # -- construction helpers -------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    @classmethod
    def diag(cls, values) -> "Matrix":
        vals = [_coerce_entry(v) for v in values]
        n = len(vals)
        return cls([[vals[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns) -> "Matrix":
        cols = [tuple(_coerce_entry(x) for x in c) for c in columns]
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))])

    # -- basics ---------------------------------------------------------------
    def __getitem__(self, key):
        i, j = key
        return self._e[i][j]

    def row(self, i: int):
        return self._e[i]

    def column(self, j: int):
        return tuple(self._e[i][j] for i in range(self.rows))

    def entries(self):
        return self._e

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_gaussian(self) -> bool:
        return isinstance(self._e[0][0], GaussianRational)

    def _zero(self):
        return GaussianRational() if self.is_gaussian else Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self._e == other._e

    def __hash__(self) -> int:
        return hash(self._e)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self._e)
        return f"Matrix[{body}]"

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._e, other._e)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._e, other._e)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in row] for row in self._e])

    def scale(self, c) -> "Matrix":
        c = _coerce_entry(c)
        return Matrix([[a * c for a in row] for row in self._e])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ot = list(zip(*other._e))
        return Matrix([[_dot(row, col) for col in ot] for row in self._e])

    def apply(self, vector):
        """Matrix times column vector, returned as a tuple."""
        if len(vector) != self.cols:
            raise DimensionError("vector length does not match column count")
        return tuple(_dot(row, vector) for row in self._e)

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self._e)))

    def trace(self):
        self._need_square()
        return sum((self._e[i][i] for i in range(self.rows)), self._zero())

    def map_entries(self, fn) -> "Matrix":
        return Matrix([[fn(x) for x in row] for row in self._e])

    def submatrix(self, row_idx, col_idx) -> "Matrix":
        return Matrix([[self._e[i][j] for j in col_idx] for i in row_idx])

    def conjugate_entries(self) -> "Matrix":
        if not self.is_gaussian:
            return self
        return self.map_entries(lambda x: x.conjugate())

    def to_gaussian(self) -> "Matrix":
        return self.map_entries(GaussianRational.of)

    # -- elimination-based operations ------------------------------------------
    def det(self):
        """Determinant by fraction-free Bareiss elimination."""
        self._need_square()
        n = self.rows
        m = [list(row) for row in self._e]
        sign = 1
        prev = None
        for k in range(n - 1):
            if not m[k][k]:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return self._zero()
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                    m[i][j] = num if prev is None else num / prev
                m[i][k] = self._zero()
            prev = m[k][k]
        return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]

    def _echelon(self):
        """Row echelon form by Bareiss; returns (rows, pivot column list)."""
        m = [list(row) for row in self._e]
        nr, nc = self.rows, self.cols
        pivots = []
        r = 0
        prev = None
        for c in range(nc):
            pr = next((i for i in range(r, nr) if m[i][c]), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            for i in range(r + 1, nr):
                for j in range(c + 1, nc):
                    num = m[r][c] * m[i][j] - m[i][c] * m[r][j]
                    m[i][j] = num if prev is None else num / prev
                m[i][c] = self._zero()
                for j in range(c):
                    m[i][j] = self._zero()
            prev = m[r][c]
            pivots.append(c)
            r += 1
            if r == nr:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self._echelon()[1])

    def kernel_basis(self):
        """Basis of the null space; empty list iff the matrix is injective."""
        m, pivots = self._echelon()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        one = GaussianRational.of(1) if self.is_gaussian else Fraction(1)
        for f in free:
            v = [self._zero()] * self.cols
            v[f] = one
            # back substitution over the echelon rows
            for r in range(len(pivots) - 1, -1, -1):
                c = pivots[r]
                s = sum((m[r][j] * v[j] for j in range(c + 1, self.cols)), self._zero())
                v[c] = -s / m[r][c]
            basis.append(tuple(v))
        return basis

    def inverse(self) -> "Matrix":
        self._need_square()
        n = self.rows
        m = [list(row) + [_coerce_entry(int(i == j)) for j in range(n)] for i, row in enumerate(self._e)]
        if self.is_gaussian:
            m = [[GaussianRational.of(x) for x in row] for row in m]
        for c in range(n):
            pr = next((i for i in range(c, n) if m[i][c]), None)
            if pr is None:
                raise SingularityError("matrix is singular")
            m[c], m[pr] = m[pr], m[c]
            piv = m[c][c]
            m[c] = [x / piv for x in m[c]]
            for i in range(n):
                if i != c and m[i][c]:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return Matrix([row[n:] for row in m])

    def char_poly(self):
        """Monic characteristic polynomial det(tI - M), coefficients highest degree first."""
        self._need_square()
        n = self.rows
        coeffs = [Fraction(1)]
        mk = self
        c = -mk.trace()
        coeffs.append(c)
        for k in range(2, n + 1):
            mk = self @ (mk + Matrix.identity(n).scale(c))
            c = -mk.trace() / k
            coeffs.append(c)
        return tuple(coeffs)

    def solve_right(self, rhs):
        """One exact solution x of self @ x = rhs (tuple), or None."""
        aug = Matrix([list(row) + [r] for row, r in zip(self._e, rhs)])
        m, pivots = aug._echelon()
        n = self.cols
        if n in pivots:
            return None
        x = [self._zero()] * n
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            s = sum((m[r][j] * x[j] for j in range(c + 1, n)), self._zero())
            x[c] = (m[r][n] - s) / m[r][c]
        return tuple(x)

    # -- serialization ----------------------------------------------------------
    def to_json(self) -> dict:
        if self.is_gaussian:
            ent = [[format_gaussian(x) for x in row] for row in self._e]
        else:
            ent = [[str(x) for x in row] for row in self._e]
        return {"dim": self.rows, "entries": ent}

    @classmethod
    def from_json(cls, payload: dict) -> "Matrix":
        try:
            entries = payload["entries"]
        except (TypeError, KeyError) as exc:
            raise StructureError("matrix JSON needs an 'entries' field") from exc
        rows = []
        for row in entries:
            rows.append([parse_gaussian(x) if isinstance(x, dict) else parse_rational(x) for x in row])
        return cls(rows)

    # -- internal ---------------------------------------------------------------
    def _same_shape(self, other: "Matrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionError("matrix shapes differ")

    def _need_square(self):
        if not self.is_square:
            raise DimensionError(f"need a square matrix, got {self.rows}x{self.cols}")


def _dot(row, col):
    it = iter(zip(row, col))
    a, b = next(it)
    acc = a * b
    for a, b in it:
        acc = acc + a * b
    return acc


def MatrixQ(entries) -> Matrix:
    """Rational matrix; rejects Gaussian entries."""
    m = Matrix(entries)
    if m.is_gaussian:
        raise StructureError("MatrixQ requires rational entries")
    return m


def MatrixQi(entries) -> Matrix:
    """Matrix over the Gaussian rationals."""
    return Matrix(entries).to_gaussian()


# ---------------------------------------------------------------------------
# module-level operation surface
# ---------------------------------------------------------------------------

def char_poly(m: Matrix):
    return m.char_poly()


def kernel(m: Matrix):
    return m.kernel_basis()


def invert(m: Matrix) -> Matrix:
    return m.inverse()


def similar_2x2(m1: Matrix, m2: Matrix) -> bool:
    """Rational similarity of 2x2 matrices.

    Equal trace and determinant suffice once both matrices are non-scalar
    (each is then conjugate to the same companion matrix); scalar matrices
    are similar only to themselves.
    """
    for m in (m1, m2):
        if m.rows != 2 or m.cols != 2:
            raise DimensionError("similar_2x2 needs 2x2 matrices")
    s1, s2 = _is_scalar(m1), _is_scalar(m2)
    if s1 != s2:
        return False
    if s1:
        return m1 == m2
    return m1.trace() == m2.trace() and m1.det() == m2.det()


def _is_scalar(m: Matrix) -> bool:
    return m[0, 1] == 0 and m[1, 0] == 0 and m[0, 0] == m[1, 1]


def similarity_witness_2x2(m1: Matrix, m2: Matrix) -> Matrix | None:
    """Invertible rational B with B @ m1 @ B^-1 = m2, when one exists.

    Non-scalar case goes through the common companion form: with
    V = [e | m e] for any e making V invertible, V^-1 m V is the companion
    matrix of the characteristic polynomial.
    """
    if not similar_2x2(m1, m2):
        return None
    if _is_scalar(m1):
        return Matrix.identity(2)
    v1 = _companion_basis(m1)
    v2 = _companion_basis(m2)
    return v2 @ v1.inverse()


def _companion_basis(m: Matrix) -> Matrix:
    for e in ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)), (Fraction(1), Fraction(1))):
        v = Matrix.from_columns([e, m.apply(e)])
        if v.det():
            return v
    raise SingularityError("matrix is scalar; no cyclic vector")


# -- small vector helpers -----------------------------------------------------

def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u):
    return tuple(c * a for a in u)


def is_zero_vector(u) -> bool:
    return all(not a for a in u)


def rank_of_vectors(vectors) -> int:
    return Matrix(list(vectors)).rank()


def in_span(vectors, target) -> bool:
    """Exact membership of target in span(vectors)."""
    if is_zero_vector(target):
        return True
    if not vectors:
        return False
    a = Matrix.from_columns(list(vectors))
    return a.solve_right(list(target)) is not None
