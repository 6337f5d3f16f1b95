"""Exact linear algebra: frozen examples checked against naive oracles."""

import itertools
from fractions import Fraction as Q

import pytest

from torsionlab.errors import DimensionError, SingularityError
from torsionlab.exact_linalg import (
    GaussianRational,
    Matrix,
    MatrixQ,
    MatrixQi,
    char_poly,
    invert,
    kernel,
    parse_gaussian,
    similar_2x2,
    similarity_witness_2x2,
)


# -- independent oracles -------------------------------------------------------

def poly_mul(p, q):
    out = [Q(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def naive_char_poly(m):
    """det(tI - m) by Leibniz expansion over coefficient lists (low degree first)."""
    n = m.rows
    total = [Q(0)] * (n + 1)
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = [Q(sign)]
        for i in range(n):
            entry = [-m[i, perm[i]]] if i != perm[i] else [-m[i, perm[i]], Q(1)]
            term = poly_mul(term, entry)
        for k, c in enumerate(term):
            total[k] += c
    return tuple(reversed(total))  # highest degree first, matching char_poly


def S(t):
    return Matrix([[0, -1, 0], [1, 0, 0], [0, 0, t]])


def test_char_poly_identity_2x2():
    assert char_poly(Matrix.identity(2)) == (Q(1), Q(-2), Q(1))


def test_char_poly_companion_example():
    a, b = Q(1), Q(2)
    m = Matrix([[0, -a * b], [1, b]])
    oracle = naive_char_poly(m)
    assert oracle == (Q(1), Q(-2), Q(2))
    assert char_poly(m) == oracle


def test_char_poly_rotation_with_scale():
    oracle = naive_char_poly(S(2))
    assert oracle == (Q(1), Q(-2), Q(1), Q(-2))  # factors as (t^2+1)(t-2)
    assert char_poly(S(2)) == oracle


def test_char_poly_rejects_non_square():
    with pytest.raises(DimensionError):
        char_poly(Matrix([[1, 2, 3], [4, 5, 6]]))


def test_kernel_zero_matrix():
    assert len(kernel(Matrix.zeros(3, 3))) == 3


def test_kernel_of_rotation_square_plus_one():
    m = S(0) @ S(0) + Matrix.identity(3)
    assert m == Matrix.diag([0, 0, 1])
    basis = kernel(m)
    assert len(basis) == 2
    span = Matrix(list(basis) + [(Q(1), Q(0), Q(0)), (Q(0), Q(1), Q(0))])
    assert span.rank() == 2


def test_kernel_empty_for_injective():
    d1 = Matrix.diag([1, 1, 0])
    m = d1 @ d1 + Matrix.identity(3)
    assert m == Matrix.diag([2, 2, 1])
    assert kernel(m) == []


def test_kernel_vectors_annihilate(sampler):
    for _ in range(40):
        m = sampler.matrix(sampler.rng.choice((2, 3, 4)))
        basis = kernel(m)
        for v in basis:
            assert all(x == 0 for x in m.apply(v))
        assert m.rank() + len(basis) == m.cols


def test_similar_2x2_examples():
    a, b = Q(3), Q(2)
    assert similar_2x2(Matrix([[0, -a * b], [1, b]]), Matrix([[b, -b], [a, 0]]))
    assert not similar_2x2(Matrix.identity(2).scale(2), Matrix([[2, 1], [0, 2]]))
    assert not similar_2x2(Matrix([[0, -1], [1, 0]]), Matrix([[1, 0], [0, -1]]))


def test_similar_2x2_is_equivalence_relation(sampler):
    # random triples sharing a canonical form are mutually similar
    for _ in range(20):
        base = sampler.matrix(2)
        mats = []
        for _ in range(3):
            p = sampler.invertible_2x2()
            mats.append(p @ base @ p.inverse())
        for m in mats:
            assert similar_2x2(m, m)
        for m1, m2 in itertools.permutations(mats, 2):
            assert similar_2x2(m1, m2)
        for m1, m2, m3 in itertools.permutations(mats, 3):
            if similar_2x2(m1, m2) and similar_2x2(m2, m3):
                assert similar_2x2(m1, m3)


def test_similarity_witness():
    m1, m2 = Matrix([[0, -6], [1, 2]]), Matrix([[2, -2], [3, 0]])
    b = similarity_witness_2x2(m1, m2)
    assert b @ m1 @ b.inverse() == m2


def test_invert_involution():
    psi = Matrix.diag([1, -1, -1])
    assert invert(psi) == psi


def test_invert_identity():
    assert invert(Matrix.identity(4)) == Matrix.identity(4)


def test_invert_frozen_example():
    m = Matrix([[1, 0, 1], [-2, 1, -1], [0, 0, 1]])
    inv = invert(m)
    assert inv == Matrix([[1, 0, -1], [2, 1, -1], [0, 0, 1]])
    assert m @ inv == Matrix.identity(3)


def test_invert_rejects_singular():
    with pytest.raises(SingularityError):
        invert(Matrix.diag([1, 0]))


def test_invert_round_trip(sampler):
    for _ in range(25):
        m = sampler.matrix(3)
        if not m.det():
            continue
        assert invert(invert(m)) == m


def test_cayley_hamilton(sampler):
    for _ in range(40):
        n = sampler.rng.choice((2, 3, 4))
        m = sampler.matrix(n)
        coeffs = char_poly(m)
        acc = Matrix.zeros(n, n)
        power = Matrix.identity(n)
        for c in reversed(coeffs):
            acc = acc + power.scale(c)
            power = power @ m
        assert acc == Matrix.zeros(n, n)


def test_bareiss_det_matches_leibniz(sampler):
    for _ in range(25):
        n = sampler.rng.choice((2, 3, 4))
        m = sampler.matrix(n)
        # Leibniz oracle
        det = Q(0)
        for perm in itertools.permutations(range(n)):
            sign = 1
            for i in range(n):
                for j in range(i + 1, n):
                    if perm[i] > perm[j]:
                        sign = -sign
            prod = Q(sign)
            for i in range(n):
                prod *= m[i, perm[i]]
            det += prod
        assert m.det() == det


def test_gaussian_rational_field_axioms(sampler):
    def rand_g():
        return GaussianRational(sampler.fraction(), sampler.fraction())

    for _ in range(30):
        a, b, c = rand_g(), rand_g(), rand_g()
        assert a * (b + c) == a * b + a * c
        assert (a + b).conjugate() == a.conjugate() + b.conjugate()
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        assert a.conjugate().conjugate() == a
        if b:
            assert (a / b) * b == a


def test_matrix_qi_conjugation_involution():
    i = GaussianRational(Q(0), Q(1))
    m = MatrixQi([[i, 1], [0, i * i]])
    assert m.conjugate_entries().conjugate_entries() == m


def test_rational_serialization():
    m = MatrixQ([["3/4", "-2"], ["0", "5"]])
    payload = m.to_json()
    assert payload["entries"][0][0] == "3/4"
    assert Matrix.from_json(payload) == m
    g = parse_gaussian({"re": "1/2", "im": "-3"})
    assert g == GaussianRational(Q(1, 2), Q(-3))
