"""CR-structures and the extension verdict."""

from fractions import Fraction as Q

import pytest

from torsionlab.errors import StructureError
from torsionlab.exact_linalg import Matrix, is_zero_vector
from torsionlab.lie_algebra import bracket, heisenberg3, sl2_Y
from torsionlab.torsion import LinearMapOnAlgebra, has_zero_torsion
from torsionlab.classification import Family, build_canonical
from torsionlab.cr import (
    CRStructure,
    Obstruction,
    abelian_cr_form_n,
    canonical_cr_forms_n,
    cr_extension_verdict,
    is_valid_cr,
)


def rotation():
    return Matrix([[0, -1], [1, 0]])


def test_is_valid_cr_heisenberg_plane():
    h3 = heisenberg3()
    cr = CRStructure(h3, (h3.basis_vector(0), h3.basis_vector(1)), rotation())
    assert is_valid_cr(cr)


def test_is_valid_cr_abelian_plane():
    h3 = heisenberg3()
    cr = CRStructure(h3, (h3.basis_vector(2), h3.basis_vector(1)), rotation())
    assert is_valid_cr(cr)


def test_is_valid_cr_rotated_sl2_plane():
    sy = sl2_Y()
    cr = CRStructure(sy, (sy.basis_vector(1), sy.basis_vector(2)), rotation())
    assert is_valid_cr(cr)


def test_is_valid_cr_rejects_bad_shapes():
    h3 = heisenberg3()
    with pytest.raises(StructureError):
        is_valid_cr(CRStructure(h3, (h3.basis_vector(0),), Matrix.identity(1)))
    with pytest.raises(StructureError):
        is_valid_cr(CRStructure(
            h3, (h3.basis_vector(0), (Q(2), Q(0), Q(0))), rotation()))


def test_is_valid_cr_fails_when_square_not_minus_one():
    h3 = heisenberg3()
    cr = CRStructure(h3, (h3.basis_vector(0), h3.basis_vector(1)), Matrix.identity(2))
    assert not is_valid_cr(cr)


def test_rotation_family_extends():
    verdict = cr_extension_verdict(build_canonical(Family.S, (5,)))
    assert verdict.extends
    w = verdict.witness
    assert w.rank == 1
    assert is_valid_cr(w)
    # witness plane is the span of the first two basis vectors
    assert all(v[2] == 0 for v in w.p_basis)


def test_dilation_and_triangular_do_not_extend():
    for j in (build_canonical(Family.D, (1,)), build_canonical(Family.T, (3, 2))):
        verdict = cr_extension_verdict(j)
        assert not verdict.extends
        assert verdict.obstruction is Obstruction.KERNEL_TOO_SMALL


def test_sl2_family_extends():
    verdict = cr_extension_verdict(build_canonical(Family.JSTAR_SL2, (0,)))
    assert verdict.extends
    basis = verdict.witness.p_basis
    # the invariant plane is spanned by the first and third basis vectors
    assert all(v[1] == 0 for v in basis)
    assert cr_extension_verdict(build_canonical(Family.JSTAR_SL2, (7,))).extends


def test_complex_structure_extends_with_full_plane():
    verdict = cr_extension_verdict(build_canonical(Family.STILDE, (1, 2)))
    assert verdict.extends and verdict.witness.rank == 3
    verdict = cr_extension_verdict(build_canonical(Family.JTILDE_SL2SL2, (1, 2)))
    assert verdict.extends and verdict.witness.rank == 3


def test_witness_restriction_coherence(sampler):
    for _ in range(10):
        t = sampler.fraction()
        verdict = cr_extension_verdict(build_canonical(Family.S, (t,)))
        w = verdict.witness
        j = build_canonical(Family.S, (t,))
        for i, b in enumerate(w.p_basis):
            img = j.apply(b)
            assert img == w.ambient(w.jp.column(i))


def test_abelian_form_properties():
    j = abelian_cr_form_n(Q(3, 2))
    assert not has_zero_torsion(j)
    verdict = cr_extension_verdict(j)
    assert verdict.extends
    p = verdict.witness.p_basis
    h3 = heisenberg3()
    assert is_zero_vector(bracket(h3, p[0], p[1]))


def test_canonical_cr_forms_report():
    checks = canonical_cr_forms_n()
    assert [c.case_id for c in checks] == [
        "rotation-form", "abelian-form", "rotation-form-third-column"]
    assert all(c.passed for c in checks)
