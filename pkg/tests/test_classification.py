"""Canonical families, classification with certified conjugators, equivalences."""

from fractions import Fraction as Q

import pytest

from torsionlab.errors import ParameterError, PreconditionError
from torsionlab.exact_linalg import Matrix
from torsionlab.lie_algebra import heisenberg3, sl2_Y
from torsionlab.torsion import LinearMapOnAlgebra, has_zero_torsion, is_complex_structure
from torsionlab.automorphism import Kind, aut_n_generic, conjugate, psi0, theta
from torsionlab.classification import (
    Family,
    build_canonical,
    classify_factor_blocks,
    classify_n,
    classify_sl2,
    embed_factor_maps,
    equivalent_n,
    equivalent_sl2,
    factor_blocks,
    float_real_roots_cubic,
    mixed_type_search,
    product_equivalence_check,
    second_kind_partner,
    second_kind_witness,
)


def test_build_canonical_dilation():
    assert build_canonical(Family.D, (2,)).matrix == Matrix.diag([2, 2, Q(3, 4)])


def test_build_canonical_triangular():
    assert build_canonical(Family.T, (1, 1)).matrix == Matrix(
        [[0, -1, 0], [1, 1, 0], [0, 0, 0]])


def test_build_canonical_product_coupling_entry():
    j = build_canonical(Family.JTILDE_SL2SL2, (0, 1))
    assert j.matrix[4, 1] == -1


def test_build_canonical_domain_errors():
    with pytest.raises(ParameterError):
        build_canonical(Family.D, (0,))
    with pytest.raises(ParameterError):
        build_canonical(Family.T, (1, 0))
    with pytest.raises(ParameterError):
        build_canonical(Family.STILDE, (2, 1))
    with pytest.raises(ParameterError):
        build_canonical(Family.JTILDE_SL2SL2, (1, 0))
    with pytest.raises(ParameterError):
        build_canonical(Family.TTILDE, (0, 1))


def test_classify_n_conjugated_rotation_member():
    j = conjugate(build_canonical(Family.S, (3,)),
                  aut_n_generic(Matrix([[1, 2], [0, 1]]), (5, 7)))
    result = classify_n(j)
    assert result.canonical.family is Family.S
    assert result.canonical.params == (Q(3),)
    assert result.certified
    assert conjugate(j, result.conjugator).matrix == result.canonical_map.matrix


def test_classify_n_dilation_is_fixed_point():
    j = LinearMapOnAlgebra(heisenberg3(), Matrix.diag([2, 2, Q(3, 4)]))
    result = classify_n(j)
    assert result.canonical.family is Family.D and result.canonical.params == (Q(2),)
    assert result.conjugator.matrix == Matrix.identity(3)


def test_classify_n_triangular_branch():
    m = Matrix([[1, -1, 0], [1, 0, 0], [4, 5, 0]])
    j = LinearMapOnAlgebra(heisenberg3(), m)
    assert has_zero_torsion(j)
    result = classify_n(j)
    assert result.canonical.family is Family.T
    assert result.canonical.params == (Q(1), Q(1))
    assert result.certified


def test_classify_n_requires_zero_torsion():
    with pytest.raises(PreconditionError):
        classify_n(LinearMapOnAlgebra(heisenberg3(), Matrix.identity(3)))


def test_classify_n_round_trip(sampler):
    for _ in range(40):
        canonical = sampler.canonical_heisenberg()
        j = conjugate(canonical, sampler.aut_heisenberg())
        result = classify_n(j)
        assert result.certified
        assert result.canonical_map.matrix == canonical.matrix
        assert conjugate(j, result.conjugator).matrix == canonical.matrix


def test_classify_sl2_canonical_member():
    result = classify_sl2(build_canonical(Family.JSTAR_SL2, (4,)))
    assert result.canonical.params == (Q(4),)
    assert result.certified
    assert result.conjugator.matrix == Matrix.identity(3)


def test_classify_sl2_h_basis_avatar():
    result = classify_sl2(build_canonical(Family.JALPHA_SL2, (1,)))
    assert result.canonical.family is Family.JSTAR_SL2
    assert result.canonical.params == (Q(2),)
    assert result.certified
    assert result.canonical_map.algebra.name == "sl2-H"


def test_classify_sl2_round_trip(sampler):
    for _ in range(30):
        lam = sampler.fraction()
        j = conjugate(build_canonical(Family.JSTAR_SL2, (lam,)), sampler.aut_sl2("Y"))
        result = classify_sl2(j)
        assert result.certified and result.canonical.params == (lam,)
        assert conjugate(j, result.conjugator).matrix == result.canonical_map.matrix


def test_classify_sl2_uncertified_fallback(monkeypatch):
    import torsionlab.classification as cls_mod

    def boom(*args, **kwargs):
        raise cls_mod.TorsionLabError("forced")

    monkeypatch.setattr(cls_mod, "orbit_transporter", boom)
    j = build_canonical(Family.JSTAR_SL2, (3,))
    result = cls_mod.classify_sl2(j)
    assert not result.certified
    assert result.canonical.params == (Q(3),)
    with pytest.raises(cls_mod.TorsionLabError):
        cls_mod.classify_sl2(j, allow_uncertified=False)


def test_trace_is_conjugation_invariant(sampler):
    for _ in range(20):
        j = sampler.zero_torsion_sl2("Y")
        assert conjugate(j, sampler.aut_sl2("Y")).matrix.trace() == j.matrix.trace()


def test_equivalent_n_examples():
    t = build_canonical(Family.T, (3, 2))
    tp = build_canonical(Family.TPRIME, (3, 2))
    wit = equivalent_n(t, tp)
    assert wit is not None
    assert conjugate(t, wit).matrix == tp.matrix

    assert equivalent_n(build_canonical(Family.S, (1,)), build_canonical(Family.S, (2,))) is None

    d = build_canonical(Family.D, (1,))
    wit = equivalent_n(d, d)
    assert wit is not None and conjugate(d, wit).matrix == d.matrix


def test_equivalent_sl2_examples():
    assert equivalent_sl2(build_canonical(Family.JSTAR_SL2, (1,)),
                          build_canonical(Family.JSTAR_SL2, (2,))) is None
    j0 = build_canonical(Family.JSTAR_SL2, (0,))
    mirrored = conjugate(j0, psi0(sl2_Y()))
    wit = equivalent_sl2(j0, mirrored)
    assert wit is not None and conjugate(j0, wit).matrix == mirrored.matrix
    wit = equivalent_sl2(build_canonical(Family.JALPHA_SL2, (Q(3, 2),)),
                         build_canonical(Family.JSTAR_SL2, (3,)))
    assert wit is not None


def test_second_kind_partners():
    assert second_kind_partner(Family.STILDE, (1, 3)) == (-1, -3)
    assert second_kind_partner(Family.DTILDE, (2,)) == (-2,)
    assert second_kind_partner(Family.TTILDE, (1, 2)) == (-1, -2)
    assert second_kind_partner(Family.JTILDE_SL2SL2, (1, 1)) == (-1, -2)


def test_second_kind_witnesses_verify(sampler):
    for fam, params in (
        (Family.STILDE, (1, Q(5, 2))),
        (Family.STILDE, (-1, -2)),
        (Family.DTILDE, (Q(1, 3),)),
        (Family.TTILDE, (2, -1)),
        (Family.TTILDE, (Q(-3, 2), Q(1, 2))),
        (Family.JTILDE_SL2SL2, (Q(1, 2), -3)),
    ):
        wit = second_kind_witness(fam, params)
        assert wit.kind is Kind.SECOND_KIND
        source = build_canonical(fam, params)
        target = build_canonical(fam, second_kind_partner(fam, params))
        assert conjugate(source, wit).matrix == target.matrix


def test_swap_conjugation_parameter_negation():
    j = build_canonical(Family.TTILDE, (1, 2))
    swapped = conjugate(j, theta())
    blocks = classify_factor_blocks(swapped)
    target_blocks = classify_factor_blocks(build_canonical(Family.TTILDE, (-1, -2)))
    assert blocks == target_blocks
    assert product_equivalence_check((Family.TTILDE, Family.TTILDE),
                                     ((1, 2), (-1, -2)), Kind.SECOND_KIND)


def test_product_equivalence_check_claims():
    assert product_equivalence_check((Family.STILDE, Family.STILDE),
                                     ((1, 3), (-1, -3)), Kind.SECOND_KIND)
    assert not product_equivalence_check((Family.STILDE, Family.STILDE),
                                         ((1, 3), (-1, 3)), Kind.SECOND_KIND)
    assert product_equivalence_check((Family.JTILDE_SL2SL2, Family.JTILDE_SL2SL2),
                                     ((1, 1), (-1, -2)), Kind.SECOND_KIND)
    assert product_equivalence_check((Family.DTILDE, Family.DTILDE),
                                     ((2,), (2,)), Kind.FIRST_KIND)
    assert not product_equivalence_check((Family.DTILDE, Family.DTILDE),
                                         ((2,), (-2,)), Kind.FIRST_KIND)
    assert not product_equivalence_check((Family.STILDE, Family.DTILDE),
                                         ((1, 1), (2,)), Kind.FIRST_KIND)


def test_factor_blocks_of_canonical_families():
    b1, b3 = classify_factor_blocks(build_canonical(Family.STILDE, (1, 2)))
    assert b1 == (Family.S, (Q(2),)) and b3 == (Family.S, (Q(-2),))
    b1, b3 = classify_factor_blocks(build_canonical(Family.DTILDE, (3,)))
    assert b1 == (Family.D, (Q(3),)) and b3 == (Family.D, (Q(-3),))
    b1, b3 = classify_factor_blocks(build_canonical(Family.TTILDE, (1, 2)))
    assert b1[0] is Family.T and b3[0] is Family.T


def test_mixed_type_search():
    j = mixed_type_search()
    assert has_zero_torsion(j)
    assert not is_complex_structure(j)
    b1, b3 = classify_factor_blocks(j)
    assert b1[0] is not b3[0]


def test_mixed_type_control_same_types():
    j = embed_factor_maps(build_canonical(Family.S, (0,)), build_canonical(Family.S, (0,)))
    assert has_zero_torsion(j)
    b1, b3 = classify_factor_blocks(j)
    assert b1[0] is b3[0]


def test_embedded_blocks_round_trip():
    j = embed_factor_maps(build_canonical(Family.S, (1,)), build_canonical(Family.D, (2,)))
    j1, j3 = factor_blocks(j)
    assert j1.matrix == build_canonical(Family.S, (1,)).matrix
    assert j3.matrix == build_canonical(Family.D, (2,)).matrix


def test_float_real_roots_cubic():
    roots = float_real_roots_cubic(-2.0, 1.0, -2.0)   # (t - 2)(t^2 + 1)
    assert len(roots) == 1 and abs(roots[0] - 2.0) < 1e-12
    roots = float_real_roots_cubic(0.0, -1.0, 0.0)    # t(t-1)(t+1)
    assert sorted(round(r, 9) for r in roots) == [-1.0, 0.0, 1.0]
