"""Structure-constant tables, built-in algebras, products, and base change."""

from fractions import Fraction as Q

import pytest

from torsionlab.errors import RankError, SingularityError, StructureError
from torsionlab.exact_linalg import GaussianRational, Matrix
from torsionlab.lie_algebra import (
    LieAlgebra,
    abelian,
    algebra_from_json,
    algebra_to_json,
    bracket,
    change_basis,
    complexify,
    direct_product,
    heisenberg3,
    jacobi_check,
    nxn,
    sl2_H,
    sl2_Y,
    sl2xsl2,
    subalgebra_closed,
)


def e(L, i):
    return L.basis_vector(i)


def test_bracket_sl2_rotated_basis():
    L = sl2_Y()
    assert bracket(L, e(L, 0), e(L, 1)) == e(L, 2)
    assert bracket(L, e(L, 0), e(L, 2)) == e(L, 1)
    assert bracket(L, e(L, 1), e(L, 2)) == e(L, 0)


def test_bracket_antisymmetry_on_diagonal():
    L = heisenberg3()
    assert bracket(L, e(L, 0), e(L, 0)) == (0, 0, 0)


def test_bracket_sl2_H():
    L = sl2_H()
    assert bracket(L, e(L, 1), e(L, 2)) == e(L, 0)      # [X+, X-] = H
    assert bracket(L, e(L, 0), e(L, 1)) == (Q(0), Q(2), Q(0))


def test_bracket_antisymmetry_random(sampler):
    for L in (heisenberg3(), sl2_H(), nxn(), sl2xsl2()):
        for _ in range(10):
            x, y = sampler.vector(L.dim), sampler.vector(L.dim)
            assert bracket(L, x, y) == tuple(-t for t in bracket(L, y, x))


def test_jacobi_builtin_algebras():
    for L in (heisenberg3(), sl2_H(), sl2_Y(), nxn(), sl2xsl2(), abelian(4)):
        assert jacobi_check(L)


def test_jacobi_detects_violation():
    # [a,b] = c together with [a,c] = a forces [[c,a],b] = -c alone to survive
    bad = LieAlgebra(3, ("a", "b", "c"), {(0, 1): {2: 1}, (0, 2): {0: 1}})
    assert not jacobi_check(bad)


def test_direct_product_heisenberg_square():
    L = direct_product(heisenberg3(), heisenberg3())
    assert L.dim == 6
    assert bracket(L, e(L, 0), e(L, 1)) == e(L, 4)
    assert bracket(L, e(L, 2), e(L, 3)) == e(L, 5)
    for i in (0, 1):
        for j in (2, 3):
            assert bracket(L, e(L, i), e(L, j)) == (0,) * 6
    assert L.table == nxn().table


def test_direct_product_sl2_square():
    L = direct_product(sl2_Y(), sl2_Y())
    assert bracket(L, e(L, 0), e(L, 1)) == e(L, 2)
    assert bracket(L, e(L, 0), e(L, 4)) == (0,) * 6
    assert L.table == sl2xsl2().table


def test_direct_product_abelian():
    L = direct_product(abelian(1), abelian(1))
    assert L.dim == 2 and L.table == {}
    assert jacobi_check(L)


def test_direct_product_preserves_jacobi():
    assert jacobi_check(direct_product(sl2_H(), heisenberg3()))


def test_complexify_real_bracket():
    CL = complexify(heisenberg3())
    one = GaussianRational(Q(1), Q(0))
    zero = GaussianRational()
    out = bracket(CL, (one, zero, zero), (zero, one, zero))
    assert out == (zero, zero, one)


def test_complexify_conjugation():
    CL = complexify(heisenberg3())
    i = GaussianRational(Q(0), Q(1))
    v = (GaussianRational(Q(1)) - i * Q(2), i, GaussianRational(Q(3)))
    w = CL.conjugate_vector(v)
    assert w[0] == GaussianRational(Q(1), Q(2))
    assert w[1] == -i
    assert CL.conjugate_vector(w) == v


def test_complexify_sl2_example():
    # [Y1 - iY3, Y2] = Y3 + iY1
    CL = complexify(sl2_Y())
    i = GaussianRational(Q(0), Q(1))
    one = GaussianRational(Q(1))
    zero = GaussianRational()
    out = bracket(CL, (one, zero, -i), (zero, one, zero))
    assert out == (i, zero, one)


def test_change_basis_h_to_rotated():
    P = Matrix([
        [Q(1, 2), 0, 0],
        [0, Q(1, 2), Q(1, 2)],
        [0, Q(-1, 2), Q(1, 2)],
    ])
    assert change_basis(sl2_H(), P).table == sl2_Y().table


def test_change_basis_identity():
    L = sl2_H()
    assert change_basis(L, Matrix.identity(3)).table == L.table


def test_change_basis_center_scaling():
    L = heisenberg3()
    P = Matrix.diag([1, 1, 2])
    scaled = change_basis(L, P)
    # [x1, x2] = x3' * 1/2 in the new basis since x3' = 2 x3
    assert bracket(scaled, e(L, 0), e(L, 1)) == (Q(0), Q(0), Q(1, 2))


def test_change_basis_round_trip(sampler):
    L = sl2_H()
    for _ in range(10):
        P = sampler.matrix(3)
        if not P.det():
            continue
        assert change_basis(change_basis(L, P), P.inverse()).table == L.table


def test_change_basis_rejects_singular():
    with pytest.raises(SingularityError):
        change_basis(heisenberg3(), Matrix.diag([1, 1, 0]))


def test_subalgebra_closed_center():
    CL = complexify(heisenberg3())
    one = GaussianRational(Q(1))
    zero = GaussianRational()
    assert subalgebra_closed(CL, [(zero, zero, one)])


def test_subalgebra_closed_sl2_examples():
    CL = complexify(sl2_H())
    one = GaussianRational(Q(1))
    zero = GaussianRational()
    assert subalgebra_closed(CL, [(one, zero, zero), (zero, one, zero)])   # span{H, X+}
    assert not subalgebra_closed(CL, [(zero, one, zero), (zero, zero, one)])  # span{X+, X-}


def test_subalgebra_rejects_dependent():
    CL = complexify(sl2_H())
    one = GaussianRational(Q(1))
    zero = GaussianRational()
    with pytest.raises(RankError):
        subalgebra_closed(CL, [(one, zero, zero), (one + one, zero, zero)])


def test_algebra_json_round_trip():
    for L in (heisenberg3(), sl2_H(), nxn()):
        payload = algebra_to_json(L)
        back = algebra_from_json(payload)
        assert back.dim == L.dim and back.table == L.table


def test_algebra_json_rejects_non_jacobi():
    payload = {
        "dim": 3,
        "basis": ["a", "b", "c"],
        "brackets": [
            {"i": 1, "j": 2, "coeffs": {"3": "1"}},
            {"i": 1, "j": 3, "coeffs": {"1": "1"}},
        ],
    }
    with pytest.raises(StructureError):
        algebra_from_json(payload)
    assert algebra_from_json(payload, check_jacobi=False).dim == 3


def test_algebra_json_requires_ordered_indices():
    with pytest.raises(StructureError):
        algebra_from_json({"dim": 2, "brackets": [{"i": 2, "j": 1, "coeffs": {"1": "1"}}]})
