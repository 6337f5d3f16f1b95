"""Torsion tensor of a linear map on a Lie algebra.

A map J has zero torsion when

    [JX, JY] - [X, Y] - J[JX, Y] - J[X, JY] = 0   for all X, Y,

and is an integrable complex structure when additionally J^2 = -1.  The
complex subalgebra spanned by ``X - i J X`` inside the complexification is
constructed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, IntegrabilityError, PreconditionError
from .exact_linalg import (
    GaussianRational,
    Matrix,
    in_span,
    is_zero_vector,
    vec_sub,
)
from .lie_algebra import ComplexLieAlgebra, LieAlgebra, bracket, complexify

__all__ = [
    "LinearMapOnAlgebra",
    "ComplexSubalgebra",
    "torsion_tensor",
    "has_zero_torsion",
    "is_complex_structure",
    "is_abelian_structure",
    "associated_subalgebra",
]


@dataclass(frozen=True)
class LinearMapOnAlgebra:
    """A linear map in basis coordinates: column j holds the image of x_j."""

    algebra: LieAlgebra
    matrix: Matrix

    def __post_init__(self):
        if not self.matrix.is_square or self.matrix.rows != self.algebra.dim:
            raise DimensionError("map matrix must be square of the algebra dimension")

    def apply(self, vector):
        return self.matrix.apply(vector)

    def to_json(self) -> dict:
        return self.matrix.to_json()


@dataclass(frozen=True)
class ComplexSubalgebra:
    """Bracket-closed complex subspace, stored through an exact basis."""

    ambient: ComplexLieAlgebra
    basis: tuple

    @property
    def complex_dimension(self) -> int:
        return len(self.basis)

    def contains(self, vector) -> bool:
        return in_span(self.basis, tuple(GaussianRational.of(x) for x in vector))


def torsion_tensor(J: LinearMapOnAlgebra, x, y):
    """Exact value of [JX,JY] - [X,Y] - J[JX,Y] - J[X,JY]."""
    L = J.algebra
    jx, jy = J.apply(x), J.apply(y)
    t = vec_sub(bracket(L, jx, jy), bracket(L, x, y))
    t = vec_sub(t, J.apply(bracket(L, jx, y)))
    return vec_sub(t, J.apply(bracket(L, x, jy)))


def has_zero_torsion(J: LinearMapOnAlgebra) -> bool:
    """Zero torsion on all basis pairs i < j.

    The torsion expression is bilinear in (X, Y) and antisymmetric, so
    vanishing on basis pairs is equivalent to vanishing everywhere; a
    randomized cross-check on arbitrary vectors lives in the test suite.
    """
    L = J.algebra
    for i in range(L.dim):
        ei = L.basis_vector(i)
        for j in range(i + 1, L.dim):
            if not is_zero_vector(torsion_tensor(J, ei, L.basis_vector(j))):
                return False
    return True


def is_complex_structure(J: LinearMapOnAlgebra) -> bool:
    n = J.algebra.dim
    if J.matrix @ J.matrix != Matrix.identity(n).scale(-1):
        return False
    return has_zero_torsion(J)


def is_abelian_structure(J: LinearMapOnAlgebra) -> bool:
    """True iff [JX, JY] = [X, Y] on all basis pairs.

    This bracket identity is equivalent to the associated subalgebra being
    abelian; the equivalence is exercised by a property test rather than by
    building the complex span here.
    """
    if not is_complex_structure(J):
        raise IntegrabilityError("abelianness is defined for integrable complex structures")
    L = J.algebra
    for i in range(L.dim):
        ei = L.basis_vector(i)
        for j in range(i + 1, L.dim):
            ej = L.basis_vector(j)
            lhs = bracket(L, J.apply(ei), J.apply(ej))
            if lhs != bracket(L, ei, ej):
                return False
    return True


def associated_subalgebra(J: LinearMapOnAlgebra) -> ComplexSubalgebra:
    """The span of ``x_k - i J x_k`` in the complexification.

    Returns a reduced basis of dim/2 vectors and verifies both closure under
    the bracket and the direct-sum decomposition with the conjugate span.
    """
    if not is_complex_structure(J):
        raise PreconditionError("associated subalgebra needs an integrable complex structure")
    L = J.algebra
    n = L.dim
    CL = complexify(L)
    gens = []
    for k in range(n):
        col = J.matrix.column(k)
        gens.append(tuple(
            GaussianRational.of(int(k == r)) - GaussianRational(0, 1) * col[r]
            for r in range(n)
        ))
    basis = _row_space_basis(gens)
    if len(basis) != n // 2:
        raise IntegrabilityError("span of x - iJx has unexpected dimension")
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if not in_span(basis, bracket(CL, basis[a], basis[b])):
                raise IntegrabilityError("associated span is not bracket-closed")
    conj = [CL.conjugate_vector(v) for v in basis]
    if Matrix(list(basis) + conj).rank() != n:
        raise IntegrabilityError("span does not complement its conjugate")
    return ComplexSubalgebra(CL, tuple(basis))


def _row_space_basis(vectors):
    """Reduced echelon basis of the row space, over the Gaussian rationals."""
    m = [list(v) for v in vectors]
    rows, cols = len(m), len(m[0])
    r = 0
    pivots = []
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return [tuple(m[i]) for i in range(r)]
