"""CR-structures: even-dimensional subspaces with a compatible square root of -1.

A rank-r CR-structure is a pair (p, J_p) with p of dimension 2r and
J_p : p -> p satisfying (a) J_p^2 = -1, (b) [X,Y] - [J_pX, J_pY] in p for
all X, Y in p, and (c) the torsion expression vanishing on p.  Because (b)
applied to (J_pX, Y) shows [J_pX, Y] + [X, J_pY] lies in p, condition (c)
is evaluated as [J_pX, J_pY] - [X, Y] - J_p([J_pX, Y] + [X, J_pY]).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import StructureError
from .exact_linalg import Matrix, in_span, is_zero_vector, vec_add, vec_sub
from .lie_algebra import LieAlgebra, bracket, heisenberg3
from .torsion import LinearMapOnAlgebra, has_zero_torsion
from .symbolic_torsion import (
    CaseCheck,
    PolyQ,
    entry_name,
    evaluate_system,
    generate_system,
    heisenberg_reference_system,
)
from .classification import Family, build_canonical

__all__ = [
    "CRStructure",
    "Obstruction",
    "ExtensionVerdict",
    "is_valid_cr",
    "cr_extension_verdict",
    "canonical_cr_forms_n",
    "abelian_cr_form_n",
]


@dataclass(frozen=True)
class CRStructure:
    """Subspace basis (ambient coordinates) plus the action matrix on it."""

    algebra: LieAlgebra
    p_basis: tuple
    jp: Matrix

    @property
    def rank(self) -> int:
        return len(self.p_basis) // 2

    def apply(self, coords):
        """J_p in p-coordinates."""
        return self.jp.apply(coords)

    def ambient(self, coords):
        """Vector of the ambient algebra from p-coordinates."""
        out = tuple(Fraction(0) for _ in range(self.algebra.dim))
        for c, b in zip(coords, self.p_basis):
            out = vec_add(out, tuple(c * t for t in b))
        return out


class Obstruction(enum.Enum):
    KERNEL_TOO_SMALL = "kernel-too-small"
    CONDITION_B = "condition-b"
    CONDITION_C = "condition-c"


@dataclass(frozen=True)
class ExtensionVerdict:
    extends: bool
    witness: CRStructure | None
    obstruction: Obstruction | None

    def to_json(self) -> dict:
        out = {"extends": self.extends}
        if self.witness is not None:
            out["witness_basis"] = [[str(x) for x in v] for v in self.witness.p_basis]
            out["witness_action"] = self.witness.jp.to_json()
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction.value
        return out


def _p_coordinates(p_basis, vector):
    """Coordinates of vector in span(p_basis), or None if outside."""
    return Matrix.from_columns(list(p_basis)).solve_right(vector)


def is_valid_cr(cr: CRStructure) -> bool:
    """Check conditions (a), (b), (c) exactly on basis pairs of p."""
    k = len(cr.p_basis)
    if k == 0 or k % 2:
        raise StructureError("p must have positive even dimension")
    if Matrix(list(cr.p_basis)).rank() != k:
        raise StructureError("p basis vectors must be independent")
    if cr.jp.rows != k or cr.jp.cols != k:
        raise StructureError("action matrix must match the subspace dimension")
    if cr.jp @ cr.jp != Matrix.identity(k).scale(-1):
        return False
    L = cr.algebra
    imgs = [cr.ambient(cr.jp.column(i)) for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            u, v = cr.p_basis[i], cr.p_basis[j]
            ju, jv = imgs[i], imgs[j]
            direct = bracket(L, u, v)
            twisted = bracket(L, ju, jv)
            if not in_span(cr.p_basis, vec_sub(direct, twisted)):
                return False
            mixed = vec_add(bracket(L, ju, v), bracket(L, u, jv))
            coords = _p_coordinates(cr.p_basis, mixed)
            if coords is None:
                return False
            torsion = vec_sub(vec_sub(twisted, direct), cr.ambient(cr.jp.apply(coords)))
            if not is_zero_vector(torsion):
                return False
    return True


def _restriction(J: LinearMapOnAlgebra, p_basis) -> CRStructure | None:
    """CR candidate with J_p the restriction of J, when p is J-invariant."""
    cols = []
    for b in p_basis:
        coords = _p_coordinates(p_basis, J.apply(b))
        if coords is None:
            return None
        cols.append(coords)
    return CRStructure(J.algebra, tuple(p_basis), Matrix.from_columns(cols))


def _candidate_planes(J: LinearMapOnAlgebra, kernel_basis):
    """J-invariant even-dimensional subspaces of ker(J^2 + 1) to test.

    The kernel itself is always a candidate.  Inside a 4-dimensional kernel
    the rank-one candidates are the planes span(v, Jv); a bounded rational
    grid of kernel coordinates enumerates them up to obvious duplicates.
    """
    yield tuple(kernel_basis)
    k = len(kernel_basis)
    if k < 4:
        return
    seen = set()
    for combo in itertools.product((0, 1, -1, 2), repeat=k):
        if not any(combo):
            continue
        v = tuple(
            sum(Fraction(c) * b[t] for c, b in zip(combo, kernel_basis))
            for t in range(J.algebra.dim)
        )
        jv = J.apply(v)
        plane = Matrix([v, jv])
        if plane.rank() != 2:
            continue
        key = tuple(tuple(r) for r in _reduced_rows(plane))
        if key in seen:
            continue
        seen.add(key)
        yield (v, jv)


def _reduced_rows(m: Matrix):
    rows = [list(r) for r in m.entries()]
    nr, nc = len(rows), len(rows[0])
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return [tuple(row) for row in rows[:r]]


def cr_extension_verdict(J: LinearMapOnAlgebra) -> ExtensionVerdict:
    """Decide whether J extends a CR-structure (p, J|_p).

    Any qualifying p lies inside K = ker(J^2 + 1) and is J-invariant, so the
    search enumerates J-invariant even-dimensional subspaces of K: K itself
    (covering the full-rank case K = g) and, inside a kernel of dimension at
    least 4, the rank-one planes span(v, Jv) over a bounded rational grid.
    Subspaces of intermediate rank beyond that grid are not searched.
    """
    n = J.algebra.dim
    square_plus_one = J.matrix @ J.matrix + Matrix.identity(n)
    kernel = square_plus_one.kernel_basis()
    if len(kernel) < 2:
        return ExtensionVerdict(False, None, Obstruction.KERNEL_TOO_SMALL)
    stage = Obstruction.CONDITION_B
    for p_basis in _candidate_planes(J, kernel):
        cand = _restriction(J, p_basis)
        if cand is None:
            continue
        k = len(p_basis)
        if cand.jp @ cand.jp != Matrix.identity(k).scale(-1):
            continue
        verdict = _check_bc(cand)
        if verdict is None:
            return ExtensionVerdict(True, cand, None)
        if verdict is Obstruction.CONDITION_C:
            stage = Obstruction.CONDITION_C
    return ExtensionVerdict(False, None, stage)


def _check_bc(cr: CRStructure):
    """None when (b) and (c) hold, else the first failing obstruction."""
    L = cr.algebra
    k = len(cr.p_basis)
    imgs = [cr.ambient(cr.jp.column(i)) for i in range(k)]
    failed = None
    for i in range(k):
        for j in range(i + 1, k):
            u, v = cr.p_basis[i], cr.p_basis[j]
            ju, jv = imgs[i], imgs[j]
            direct = bracket(L, u, v)
            twisted = bracket(L, ju, jv)
            if not in_span(cr.p_basis, vec_sub(direct, twisted)):
                return Obstruction.CONDITION_B
            mixed = vec_add(bracket(L, ju, v), bracket(L, u, jv))
            coords = _p_coordinates(cr.p_basis, mixed)
            if coords is None:
                return Obstruction.CONDITION_B
            torsion = vec_sub(vec_sub(twisted, direct), cr.ambient(cr.jp.apply(coords)))
            if not is_zero_vector(torsion):
                failed = Obstruction.CONDITION_C
    return failed


def abelian_cr_form_n(x11) -> LinearMapOnAlgebra:
    """The canonical torsion-carrying extension with abelian plane on the
    Heisenberg algebra: eigenvalue x11 on x1, rotation exchanging x2 and x3."""
    return LinearMapOnAlgebra(
        heisenberg3(),
        Matrix([[x11, 0, 0], [0, 0, 1], [0, -1, 0]]),
    )


def canonical_cr_forms_n(rotation_params=(0, 1, -1, 2, Fraction(5, 2)),
                         abelian_params=(0, 1, -2, Fraction(3, 2))):
    """Verify the two canonical rank-one CR extension forms on the Heisenberg algebra.

    Form one is the rotation family: zero torsion, and it extends a
    CR-structure whose plane is nonabelian.  Form two swaps the center into
    the plane: always nonzero torsion, with an abelian plane.  The last check
    re-derives that adding third-column entries to form one kills zero
    torsion unless both vanish.
    """
    checks = []
    h3 = heisenberg3()

    ok1 = True
    details1 = []
    for t in rotation_params:
        j = build_canonical(Family.S, (t,))
        verdict = cr_extension_verdict(j)
        good = has_zero_torsion(j) and verdict.extends and verdict.witness is not None
        if good:
            w = verdict.witness
            e1 = w.p_basis[0]
            comm = bracket(h3, e1, w.ambient(w.jp.apply(_p_coordinates(w.p_basis, e1))))
            good = not is_zero_vector(comm) and is_valid_cr(w)
        ok1 &= good
        details1.append(f"t={t}:{'ok' if good else 'FAIL'}")
    checks.append(CaseCheck(
        "rotation-form", "zero torsion and a nonabelian-plane CR witness",
        ok1, " ".join(details1)))

    ok2 = True
    details2 = []
    reference = heisenberg_reference_system()
    for x in abelian_params:
        j = abelian_cr_form_n(x)
        values = evaluate_system(reference, _entries(j))
        p = (h3.basis_vector(1), h3.basis_vector(2))
        cand = _restriction(j, p)
        good = (
            not has_zero_torsion(j)
            and values["13|2"] == 1
            and cand is not None
            and is_valid_cr(cand)
            and is_zero_vector(bracket(h3, p[0], p[1]))
        )
        ok2 &= good
        details2.append(f"x={x}:{'ok' if good else 'FAIL'}")
    checks.append(CaseCheck(
        "abelian-form", "nonzero torsion (13|2 evaluates to 1) with an abelian plane",
        ok2, " ".join(details2)))

    pattern = {
        (1, 1): 0, (1, 2): -1, (2, 1): 1, (2, 2): 0,
        (3, 1): 0, (3, 2): 0,
    }
    sys_free = generate_system(h3, pattern)
    sq23 = sys_free.equations["13|2"].normalized_sign()
    sq13 = sys_free.equations["23|1"].normalized_sign()
    vars_ = sys_free.unknowns
    want23 = PolyQ.variable(entry_name(2, 3), vars_) ** 2
    want13 = PolyQ.variable(entry_name(1, 3), vars_) ** 2
    zero_sub = {entry_name(1, 3): Fraction(0), entry_name(2, 3): Fraction(0)}
    all_vanish = all(p.substitute(zero_sub).is_zero for p in sys_free.equations.values())
    ok3 = sq23 == want23 and sq13 == want13 and all_vanish
    checks.append(CaseCheck(
        "rotation-form-third-column",
        "free third-column entries appear as squares, so zero torsion forces them to vanish",
        ok3,
        f"13|2 -> {sq23.to_text()}, 23|1 -> {sq13.to_text()}",
    ))
    return checks


def _entries(J: LinearMapOnAlgebra) -> dict:
    n = J.algebra.dim
    return {entry_name(i + 1, j + 1): J.matrix[i, j] for i in range(n) for j in range(n)}
