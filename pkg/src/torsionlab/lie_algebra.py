"""Lie algebras as exact structure-constant tables.

A :class:`LieAlgebra` stores ``[x_i, x_j] = sum_k c[k] x_k`` for ``i < j``
only, so antisymmetry holds by construction.  All built-in algebras used by
the classification modules are provided as constructors, together with
products, complexification and base change.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError, RankError, StructureError
from .exact_linalg import (
    GaussianRational,
    Matrix,
    in_span,
    is_zero_vector,
    parse_rational,
    vec_add,
    vec_scale,
)

__all__ = [
    "LieAlgebra",
    "ComplexLieAlgebra",
    "bracket",
    "jacobi_check",
    "direct_product",
    "complexify",
    "change_basis",
    "subalgebra_closed",
    "heisenberg3",
    "sl2_H",
    "sl2_Y",
    "nxn",
    "sl2xsl2",
    "abelian",
    "algebra_to_json",
    "algebra_from_json",
    "BUILTIN_ALGEBRAS",
]


class LieAlgebra:
    """Finite-dimensional real Lie algebra given by rational structure constants.

    ``table`` maps 0-based pairs ``(i, j)`` with ``i < j`` to sparse
    coefficient dicts ``{k: c}`` meaning ``[x_i, x_j] = sum c * x_k``.
    """

    __slots__ = ("dim", "basis_names", "table", "name")

    def __init__(self, dim: int, basis_names, table, name: str = ""):
        if len(basis_names) != dim:
            raise DimensionError("basis name count must equal dim")
        clean = {}
        for (i, j), coeffs in table.items():
            if not (0 <= i < j < dim):
                raise StructureError(f"bracket key ({i},{j}) must satisfy 0 <= i < j < dim")
            entry = {k: parse_rational(c) for k, c in coeffs.items() if parse_rational(c)}
            for k in entry:
                if not 0 <= k < dim:
                    raise StructureError(f"bracket target index {k} out of range")
            if entry:
                clean[(i, j)] = entry
        self.dim = dim
        self.basis_names = tuple(basis_names)
        self.table = clean
        self.name = name

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        """c^k_{ij} for arbitrary i, j (antisymmetry applied)."""
        if i == j:
            return Fraction(0)
        if i < j:
            return self.table.get((i, j), {}).get(k, Fraction(0))
        return -self.table.get((j, i), {}).get(k, Fraction(0))

    def basis_vector(self, i: int):
        return tuple(Fraction(int(i == j)) for j in range(self.dim))

    def center_indices(self):
        """Indices of basis vectors bracketing to zero with everything."""
        out = []
        for i in range(self.dim):
            if all(
                self.structure_constant(i, j, k) == 0
                for j in range(self.dim)
                for k in range(self.dim)
            ):
                out.append(i)
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieAlgebra)
            and self.dim == other.dim
            and self.basis_names == other.basis_names
            and self.table == other.table
        )

    def __hash__(self):
        frozen = tuple(sorted((ij, tuple(sorted(c.items()))) for ij, c in self.table.items()))
        return hash((self.dim, self.basis_names, frozen))

    def __repr__(self) -> str:
        label = self.name or f"dim{self.dim}"
        return f"LieAlgebra({label})"


@dataclass(frozen=True)
class ComplexLieAlgebra:
    """Complexification: same structure constants, Gaussian-rational coefficients."""

    real_form: LieAlgebra

    @property
    def dim(self) -> int:
        return self.real_form.dim

    def conjugate_vector(self, v):
        return tuple(GaussianRational.of(x).conjugate() for x in v)


def bracket(L: LieAlgebra | ComplexLieAlgebra, x, y):
    """Bilinear antisymmetric product of coordinate vectors."""
    base = L.real_form if isinstance(L, ComplexLieAlgebra) else L
    n = base.dim
    if len(x) != n or len(y) != n:
        raise DimensionError("vector length does not match algebra dimension")
    zero = GaussianRational() if isinstance(L, ComplexLieAlgebra) else Fraction(0)
    out = [zero] * n
    for (i, j), coeffs in base.table.items():
        w = x[i] * y[j] - x[j] * y[i]
        if w:
            for k, c in coeffs.items():
                out[k] = out[k] + w * c
    return tuple(out)


def jacobi_check(L: LieAlgebra) -> bool:
    """True iff the Jacobi identity holds on all basis triples."""
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            for k in range(j + 1, L.dim):
                ei, ej, ek = (L.basis_vector(t) for t in (i, j, k))
                total = vec_add(
                    vec_add(
                        bracket(L, bracket(L, ei, ej), ek),
                        bracket(L, bracket(L, ej, ek), ei),
                    ),
                    bracket(L, bracket(L, ek, ei), ej),
                )
                if not is_zero_vector(total):
                    return False
    return True


def direct_product(L1: LieAlgebra, L2: LieAlgebra, centers_last: bool = True) -> LieAlgebra:
    """Direct product with block structure constants.

    With ``centers_last`` (the default) central basis vectors of the product
    are permuted to the end, preserving the relative order of the rest; for
    the Heisenberg square this yields the ordering with relations
    ``[x1,x2]=x5``, ``[x3,x4]=x6``, and it is a no-op on centerless factors.
    """
    dim = L1.dim + L2.dim
    names = [f"{n}(1)" for n in L1.basis_names] + [f"{n}(2)" for n in L2.basis_names]
    table = {}
    for (i, j), coeffs in L1.table.items():
        table[(i, j)] = dict(coeffs)
    for (i, j), coeffs in L2.table.items():
        table[(i + L1.dim, j + L1.dim)] = {k + L1.dim: c for k, c in coeffs.items()}
    prod = LieAlgebra(dim, names, table, name=f"{L1.name}x{L2.name}")
    if not centers_last:
        return prod
    central = prod.center_indices()
    if not central or len(central) == dim:
        return prod
    order = [i for i in range(dim) if i not in central] + central
    perm = Matrix.from_columns([prod.basis_vector(i) for i in order])
    renamed = change_basis(prod, perm)
    return LieAlgebra(
        dim,
        [prod.basis_names[i] for i in order],
        renamed.table,
        name=prod.name,
    )


def complexify(L: LieAlgebra) -> ComplexLieAlgebra:
    return ComplexLieAlgebra(L)


def change_basis(L: LieAlgebra, P: Matrix) -> LieAlgebra:
    """Structure constants in the basis ``y_j = sum_i P[i,j] x_i``."""
    if P.rows != L.dim or P.cols != L.dim:
        raise DimensionError("base change matrix has wrong shape")
    pinv = P.inverse()  # raises SingularityError when P is singular
    table = {}
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            w = bracket(L, P.column(i), P.column(j))
            coeffs = pinv.apply(w)
            entry = {k: c for k, c in enumerate(coeffs) if c}
            if entry:
                table[(i, j)] = entry
    return LieAlgebra(L.dim, L.basis_names, table, name=L.name)


def subalgebra_closed(CL: ComplexLieAlgebra, vectors) -> bool:
    """True iff the span of the (independent) vectors is bracket-closed."""
    vecs = [tuple(GaussianRational.of(x) for x in v) for v in vectors]
    if Matrix(vecs).rank() != len(vecs):
        raise RankError("subalgebra test needs linearly independent vectors")
    for a in range(len(vecs)):
        for b in range(a + 1, len(vecs)):
            if not in_span(vecs, bracket(CL, vecs[a], vecs[b])):
                return False
    return True


# ---------------------------------------------------------------------------
# built-in algebras
# ---------------------------------------------------------------------------

def heisenberg3() -> LieAlgebra:
    """3-dimensional Heisenberg algebra: [x1, x2] = x3."""
    return LieAlgebra(3, ("x1", "x2", "x3"), {(0, 1): {2: 1}}, name="heisenberg3")


def sl2_H() -> LieAlgebra:
    """sl(2,R) in the basis (H, X+, X-): [H,X+]=2X+, [H,X-]=-2X-, [X+,X-]=H."""
    return LieAlgebra(
        3,
        ("H", "X+", "X-"),
        {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}},
        name="sl2-H",
    )


def sl2_Y() -> LieAlgebra:
    """sl(2,R) in the rotated basis: [Y1,Y2]=Y3, [Y1,Y3]=Y2, [Y2,Y3]=Y1."""
    return LieAlgebra(
        3,
        ("Y1", "Y2", "Y3"),
        {(0, 1): {2: 1}, (0, 2): {1: 1}, (1, 2): {0: 1}},
        name="sl2-Y",
    )


def nxn() -> LieAlgebra:
    """Product of two Heisenberg algebras, centers last: [x1,x2]=x5, [x3,x4]=x6."""
    return LieAlgebra(
        6,
        ("x1", "x2", "x3", "x4", "x5", "x6"),
        {(0, 1): {4: 1}, (2, 3): {5: 1}},
        name="nxn",
    )


def sl2xsl2() -> LieAlgebra:
    """Product of two copies of sl(2,R) in the rotated basis."""
    prod = direct_product(sl2_Y(), sl2_Y())
    return LieAlgebra(6, prod.basis_names, prod.table, name="sl2xsl2")


def abelian(dim: int) -> LieAlgebra:
    return LieAlgebra(dim, tuple(f"x{i+1}" for i in range(dim)), {}, name=f"abelian{dim}")


BUILTIN_ALGEBRAS = {
    "heisenberg3": heisenberg3,
    "sl2-H": sl2_H,
    "sl2-Y": sl2_Y,
    "nxn": nxn,
    "sl2xsl2": sl2xsl2,
}


# ---------------------------------------------------------------------------
# JSON interface: 1-based indices, i < j required
# ---------------------------------------------------------------------------

def algebra_to_json(L: LieAlgebra) -> dict:
    brackets = []
    for (i, j) in sorted(L.table):
        coeffs = {str(k + 1): str(c) for k, c in sorted(L.table[(i, j)].items())}
        brackets.append({"i": i + 1, "j": j + 1, "coeffs": coeffs})
    return {"dim": L.dim, "basis": list(L.basis_names), "brackets": brackets}


def algebra_from_json(payload: dict, check_jacobi: bool = True) -> LieAlgebra:
    try:
        dim = int(payload["dim"])
        basis = list(payload.get("basis") or [f"x{i+1}" for i in range(dim)])
        raw = payload.get("brackets", [])
    except (TypeError, KeyError, ValueError) as exc:
        raise StructureError("algebra JSON needs 'dim' and 'brackets'") from exc
    table = {}
    for item in raw:
        i, j = int(item["i"]), int(item["j"])
        if not 1 <= i < j <= dim:
            raise StructureError(f"bracket indices ({i},{j}) must satisfy 1 <= i < j <= dim")
        table[(i - 1, j - 1)] = {int(k) - 1: parse_rational(c) for k, c in item["coeffs"].items()}
    L = LieAlgebra(dim, basis, table)
    if check_jacobi and not jacobi_check(L):
        raise StructureError("structure constants violate the Jacobi identity")
    return L
