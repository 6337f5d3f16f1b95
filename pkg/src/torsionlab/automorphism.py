"""Automorphism groups of the four built-in algebras.

Provides the bracket-preservation predicate, parametric constructors for
each group, the conjugation action on linear maps, and the adjoint-orbit
classification of sl(2,R) with explicit rational transporters.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionError,
    IrrationalScaleError,
    OrbitError,
    ParameterError,
    TorsionLabError,
)
from .exact_linalg import Matrix, parse_rational
from .lie_algebra import LieAlgebra, bracket, heisenberg3, nxn, sl2_H, sl2_Y, sl2xsl2
from .torsion import LinearMapOnAlgebra

__all__ = [
    "Kind",
    "AutomorphismElement",
    "is_automorphism",
    "ad_matrix",
    "ad_matrix_y",
    "psi0",
    "aut_n_generic",
    "theta",
    "gamma",
    "product_automorphism",
    "conjugate",
    "AdOrbit",
    "FullOrbit",
    "OrbitClass",
    "classify_orbit",
    "orbit_representative",
    "orbit_transporter",
    "Y_FROM_H",
    "h_matrix_to_y",
    "y_matrix_to_h",
]


class Kind(enum.Enum):
    FIRST_KIND = "first-kind"
    SECOND_KIND = "second-kind"
    ADJOINT = "adjoint"
    PSI = "psi"
    GENERIC = "generic"


def is_automorphism(L: LieAlgebra, m: Matrix) -> bool:
    """Invertible and bracket-preserving on all basis pairs."""
    if not m.is_square or m.rows != L.dim:
        return False
    if not m.det():
        return False
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = bracket(L, m.column(i), m.column(j))
            rhs = m.apply(bracket(L, L.basis_vector(i), L.basis_vector(j)))
            if lhs != rhs:
                return False
    return True


@dataclass(frozen=True)
class AutomorphismElement:
    """A verified automorphism, tagged with how it was built."""

    algebra: LieAlgebra
    matrix: Matrix
    kind: Kind = Kind.GENERIC

    def __post_init__(self):
        if not is_automorphism(self.algebra, self.matrix):
            raise ParameterError("matrix does not define an automorphism")

    def inverse(self) -> "AutomorphismElement":
        return AutomorphismElement(self.algebra, self.matrix.inverse(), self.kind)

    def compose(self, other: "AutomorphismElement") -> "AutomorphismElement":
        if self.algebra != other.algebra:
            raise DimensionError("cannot compose automorphisms of different algebras")
        return AutomorphismElement(self.algebra, self.matrix @ other.matrix, Kind.GENERIC)

    def to_json(self) -> dict:
        payload = self.matrix.to_json()
        payload["kind"] = self.kind.value
        return payload


def conjugate(J: LinearMapOnAlgebra, phi: AutomorphismElement) -> LinearMapOnAlgebra:
    """The action J -> phi J phi^-1."""
    if phi.algebra != J.algebra:
        raise DimensionError("automorphism acts on a different algebra")
    return LinearMapOnAlgebra(J.algebra, phi.matrix @ J.matrix @ phi.matrix.inverse())


# ---------------------------------------------------------------------------
# sl(2,R): adjoint matrices and the extra component
# ---------------------------------------------------------------------------

# Columns of Y_FROM_H are the rotated basis vectors in (H, X+, X-) coordinates:
# Y1 = H/2, Y2 = (X+ - X-)/2, Y3 = (X+ + X-)/2.
Y_FROM_H = Matrix([
    [Fraction(1, 2), 0, 0],
    [0, Fraction(1, 2), Fraction(1, 2)],
    [0, Fraction(-1, 2), Fraction(1, 2)],
])


def h_matrix_to_y(m: Matrix) -> Matrix:
    return Y_FROM_H.inverse() @ m @ Y_FROM_H


def y_matrix_to_h(m: Matrix) -> Matrix:
    return Y_FROM_H @ m @ Y_FROM_H.inverse()


def ad_matrix(a, b, c, d) -> AutomorphismElement:
    """Adjoint action of [[a,b],[c,d]] with ad - bc = 1, in the (H, X+, X-) basis."""
    a, b, c, d = (parse_rational(t) for t in (a, b, c, d))
    if a * d - b * c != 1:
        raise ParameterError("adjoint parameters need ad - bc = 1")
    m = Matrix([
        [1 + 2 * b * c, -a * c, b * d],
        [-2 * a * b, a * a, -b * b],
        [2 * c * d, -c * c, d * d],
    ])
    return AutomorphismElement(sl2_H(), m, Kind.ADJOINT)


def ad_matrix_y(a, b, c, d) -> AutomorphismElement:
    """Same adjoint element expressed in the rotated basis."""
    m = h_matrix_to_y(ad_matrix(a, b, c, d).matrix)
    return AutomorphismElement(sl2_Y(), m, Kind.ADJOINT)


def psi0(L: LieAlgebra | None = None) -> AutomorphismElement:
    """diag(1,-1,-1): the involution generating the second component of Aut sl(2,R).

    The matrix is the same in both built-in sl(2,R) bases.
    """
    L = L or sl2_H()
    if L.dim != 3:
        raise ParameterError("psi0 lives on sl(2,R)")
    return AutomorphismElement(L, Matrix.diag([1, -1, -1]), Kind.PSI)


def _ad_of_gl2(w: Matrix) -> Matrix:
    """3x3 matrix of X -> w X w^-1 on traceless 2x2 X, basis (H, E12, E21).

    Rational for every invertible rational w: the entries are quadratic in w
    divided by det w, so no square-root normalization is ever needed.
    """
    wi = w.inverse()
    cols = []
    for xb in (Matrix([[1, 0], [0, -1]]), Matrix([[0, 1], [0, 0]]), Matrix([[0, 0], [1, 0]])):
        y = w @ xb @ wi
        cols.append((y[0, 0], y[0, 1], y[1, 0]))
    return Matrix.from_columns(cols)


# ---------------------------------------------------------------------------
# Heisenberg and product automorphisms
# ---------------------------------------------------------------------------

def aut_n_generic(B: Matrix, w) -> AutomorphismElement:
    """Automorphism [[B, 0], [w, det B]] of the Heisenberg algebra."""
    if B.rows != 2 or B.cols != 2:
        raise ParameterError("block B must be 2x2")
    d = B.det()
    if not d:
        raise ParameterError("block B must be invertible")
    w = [parse_rational(t) for t in w]
    if len(w) != 2:
        raise ParameterError("shear w must have length 2")
    m = Matrix([
        [B[0, 0], B[0, 1], 0],
        [B[1, 0], B[1, 1], 0],
        [w[0], w[1], d],
    ])
    return AutomorphismElement(heisenberg3(), m, Kind.GENERIC)


def theta() -> AutomorphismElement:
    """Factor swap of the Heisenberg square (x1 x2 x5) <-> (x3 x4 x6)."""
    m = Matrix([
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 1, 0],
    ])
    return AutomorphismElement(nxn(), m, Kind.SECOND_KIND)


def gamma() -> AutomorphismElement:
    """Factor swap of the sl(2,R) square."""
    m = Matrix([[Fraction(int((i + 3) % 6 == j)) for j in range(6)] for i in range(6)])
    return AutomorphismElement(sl2xsl2(), m, Kind.SECOND_KIND)


def _first_kind_nxn_matrix(B1: Matrix, B2: Matrix, w: Matrix | None) -> Matrix:
    for blk in (B1, B2):
        if blk.rows != 2 or blk.cols != 2 or not blk.det():
            raise ParameterError("factor blocks must be invertible 2x2 matrices")
    if w is None:
        w = Matrix.zeros(2, 4)
    if w.rows != 2 or w.cols != 4:
        raise ParameterError("shear block must be 2x4")
    rows = []
    rows.append([B1[0, 0], B1[0, 1], 0, 0, 0, 0])
    rows.append([B1[1, 0], B1[1, 1], 0, 0, 0, 0])
    rows.append([0, 0, B2[0, 0], B2[0, 1], 0, 0])
    rows.append([0, 0, B2[1, 0], B2[1, 1], 0, 0])
    rows.append([w[0, 0], w[0, 1], w[0, 2], w[0, 3], B1.det(), 0])
    rows.append([w[1, 0], w[1, 1], w[1, 2], w[1, 3], 0, B2.det()])
    return Matrix(rows)


def product_automorphism(L: LieAlgebra, kind: Kind, *parts) -> AutomorphismElement:
    """Assemble a product-algebra automorphism of the requested kind.

    Heisenberg square: parts are (B1, B2[, shear 2x4]); second kind composes
    with the factor swap.  sl(2,R) square: parts are two automorphisms of a
    factor in the rotated basis (AutomorphismElement or bare matrix).
    """
    if L.name == "nxn":
        b1, b2 = parts[0], parts[1]
        w = parts[2] if len(parts) > 2 else None
        m = _first_kind_nxn_matrix(b1, b2, w)
        if kind is Kind.SECOND_KIND:
            return AutomorphismElement(nxn(), theta().matrix @ m, Kind.SECOND_KIND)
        return AutomorphismElement(nxn(), m, Kind.FIRST_KIND)
    if L.name == "sl2xsl2":
        mats = []
        for p in parts[:2]:
            mats.append(p.matrix if isinstance(p, AutomorphismElement) else p)
        if len(mats) != 2:
            raise ParameterError("need two factor automorphisms")
        rows = []
        for i in range(6):
            row = []
            for j in range(6):
                if i < 3 and j < 3:
                    row.append(mats[0][i, j])
                elif i >= 3 and j >= 3:
                    row.append(mats[1][i - 3, j - 3])
                else:
                    row.append(Fraction(0))
            rows.append(row)
        m = Matrix(rows)
        if kind is Kind.SECOND_KIND:
            return AutomorphismElement(sl2xsl2(), gamma().matrix @ m, Kind.SECOND_KIND)
        return AutomorphismElement(sl2xsl2(), m, Kind.FIRST_KIND)
    raise ParameterError(f"no product automorphisms for algebra {L.name!r}")


# ---------------------------------------------------------------------------
# adjoint orbits of sl(2,R)
# ---------------------------------------------------------------------------

class AdOrbit(enum.Enum):
    ZERO = "zero"
    CONE_UPPER = "cone-upper"
    CONE_LOWER = "cone-lower"
    ONE_SHEET = "one-sheet"
    TWO_SHEET_UPPER = "two-sheet-upper"
    TWO_SHEET_LOWER = "two-sheet-lower"


class FullOrbit(enum.Enum):
    ZERO = "zero"
    CONE = "cone"
    ONE_SHEET = "one-sheet"
    TWO_SHEET = "two-sheet"


_FULL_OF = {
    AdOrbit.ZERO: FullOrbit.ZERO,
    AdOrbit.CONE_UPPER: FullOrbit.CONE,
    AdOrbit.CONE_LOWER: FullOrbit.CONE,
    AdOrbit.ONE_SHEET: FullOrbit.ONE_SHEET,
    AdOrbit.TWO_SHEET_UPPER: FullOrbit.TWO_SHEET,
    AdOrbit.TWO_SHEET_LOWER: FullOrbit.TWO_SHEET,
}


@dataclass(frozen=True)
class OrbitClass:
    """Adjoint-orbit class of a vector, with the exact invariant q = x^2 + yz.

    ``s`` is the exact scale (sqrt of |q|) when that square root is rational,
    else None with ``s_rational`` False; the class itself is always certified
    from the sign of q and the sheet data.
    """

    ad_class: AdOrbit
    q: Fraction
    s: Fraction | None
    s_rational: bool

    @property
    def full_class(self) -> FullOrbit:
        return _FULL_OF[self.ad_class]


def _sqrt_exact(value: Fraction) -> Fraction | None:
    if value < 0:
        return None
    n, d = value.numerator, value.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def classify_orbit(v) -> OrbitClass:
    """Classify a vector given in (H, X+, X-) coordinates.

    On the cone the sheet is decided by the sign of z, falling back to the
    sign of -y on the boundary ray z = 0 (where x must vanish); that choice
    is the adjoint-invariant one, as X+ lies on the orbit of -X-.
    """
    x, y, z = (parse_rational(t) for t in v)
    q = x * x + y * z
    if x == 0 and y == 0 and z == 0:
        return OrbitClass(AdOrbit.ZERO, q, Fraction(0), True)
    if q == 0:
        indicator = z if z != 0 else -y
        cls = AdOrbit.CONE_UPPER if indicator > 0 else AdOrbit.CONE_LOWER
        return OrbitClass(cls, q, None, True)
    if q > 0:
        s = _sqrt_exact(q)
        return OrbitClass(AdOrbit.ONE_SHEET, q, s, s is not None)
    s = _sqrt_exact(-q)
    cls = AdOrbit.TWO_SHEET_UPPER if z > 0 else AdOrbit.TWO_SHEET_LOWER
    return OrbitClass(cls, q, s, s is not None)


def orbit_representative(cls, s: Fraction | None = None):
    """Canonical representative of an orbit class in (H, X+, X-) coordinates."""
    s = Fraction(1) if s is None else parse_rational(s)
    table = {
        AdOrbit.ZERO: (0, 0, 0),
        AdOrbit.CONE_UPPER: (0, 0, 1),
        AdOrbit.CONE_LOWER: (0, 0, -1),
        AdOrbit.ONE_SHEET: (s, 0, 0),
        AdOrbit.TWO_SHEET_UPPER: (0, -s, s),
        AdOrbit.TWO_SHEET_LOWER: (0, s, -s),
        FullOrbit.ZERO: (0, 0, 0),
        FullOrbit.CONE: (0, 0, 1),
        FullOrbit.ONE_SHEET: (s, 0, 0),
        FullOrbit.TWO_SHEET: (0, s, -s),
    }
    return tuple(Fraction(t) for t in table[cls])


def _vec_to_sl2(v) -> Matrix:
    x, y, z = v
    return Matrix([[x, y], [z, -x]])


def _solve_intertwiner(rep: Matrix, target: Matrix) -> Matrix | None:
    """Rational w with w rep = target w and det w > 0, or None.

    The intertwiner condition is linear in the entries of w; on its kernel
    the determinant is a binary quadratic form (the kernel has dimension 2
    for the non-derogatory matrices arising from orbit representatives), and
    a rational point with positive value is found from the form's
    coefficients when one exists.
    """
    rows = []
    for i in range(2):
        for j in range(2):
            coeff = {}
            for k in range(2):
                coeff[(i, k)] = coeff.get((i, k), Fraction(0)) + rep[k, j]
                coeff[(k, j)] = coeff.get((k, j), Fraction(0)) - target[i, k]
            rows.append([coeff.get((0, 0), Fraction(0)), coeff.get((0, 1), Fraction(0)),
                         coeff.get((1, 0), Fraction(0)), coeff.get((1, 1), Fraction(0))])
    basis = Matrix(rows).kernel_basis()
    if not basis:
        return None

    def assemble(alpha, beta=Fraction(0)):
        entries = [alpha * basis[0][t] + (beta * basis[1][t] if len(basis) > 1 else 0)
                   for t in range(4)]
        return Matrix([[entries[0], entries[1]], [entries[2], entries[3]]])

    if len(basis) == 1:
        w = assemble(Fraction(1))
        return w if w.det() > 0 else None

    a = assemble(Fraction(1), Fraction(0)).det()
    c = assemble(Fraction(0), Fraction(1)).det()
    b = assemble(Fraction(1), Fraction(1)).det() - a - c
    candidates = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)),
                  (Fraction(1), Fraction(1)), (Fraction(1), Fraction(-1))]
    disc = b * b - 4 * a * c
    if a and a * disc < 0:
        candidates.append((Fraction(-b), Fraction(2 * a)))
    if c and c * disc < 0:
        candidates.append((Fraction(2 * c), Fraction(-b)))
    for alpha, beta in candidates:
        if alpha == 0 and beta == 0:
            continue
        w = assemble(alpha, beta)
        if w.det() > 0:
            return w
    for combo in itertools.product(range(-2, 3), repeat=len(basis)):
        if not any(combo):
            continue
        w = assemble(*(Fraction(x) for x in combo[:2]))
        if w.det() > 0:
            return w
    return None


def orbit_transporter(v, target_class) -> AutomorphismElement:
    """Explicit automorphism carrying the scaled canonical representative to v.

    Adjoint-orbit targets use a pure adjoint element; full-orbit targets may
    compose with the involution when v sits on the mirrored sheet.  Raises
    OrbitError on a class mismatch and IrrationalScaleError when the scale
    normalization is irrational.
    """
    v = tuple(parse_rational(t) for t in v)
    cls = classify_orbit(v)
    if isinstance(target_class, OrbitClass):
        target_class = target_class.ad_class
    if isinstance(target_class, AdOrbit):
        if cls.ad_class is not target_class:
            raise OrbitError(f"vector lies on {cls.ad_class.value}, not {target_class.value}")
        allow_mirror = False
    elif isinstance(target_class, FullOrbit):
        if cls.full_class is not target_class:
            raise OrbitError(f"vector lies on {cls.full_class.value}, not {target_class.value}")
        allow_mirror = True
    else:
        raise OrbitError(f"unknown orbit target {target_class!r}")

    if cls.ad_class is AdOrbit.ZERO:
        return AutomorphismElement(sl2_H(), Matrix.identity(3), Kind.ADJOINT)
    if not cls.s_rational:
        raise IrrationalScaleError("orbit scale is irrational; only the class is certified")

    rep_vec = orbit_representative(target_class if not allow_mirror else cls.full_class, cls.s)
    if rep_vec == v:
        return AutomorphismElement(sl2_H(), Matrix.identity(3), Kind.ADJOINT)
    rep, tgt = _vec_to_sl2(rep_vec), _vec_to_sl2(v)
    w = _solve_intertwiner(rep, tgt)
    if w is not None:
        phi = AutomorphismElement(sl2_H(), _ad_of_gl2(w), Kind.ADJOINT)
    elif allow_mirror:
        mirrored = psi0().matrix.apply(v)
        w = _solve_intertwiner(rep, _vec_to_sl2(mirrored))
        if w is None:
            raise OrbitError("no rational transporter found on either component")
        phi = AutomorphismElement(sl2_H(), psi0().matrix @ _ad_of_gl2(w), Kind.PSI)
    else:
        raise OrbitError("no adjoint transporter with positive determinant")
    if phi.matrix.apply(rep_vec) != v:
        raise TorsionLabError("transporter verification failed")
    return phi
