import numpy as np
import pytest
from hypothesis import given, strategies as st

from hopfhom import (
    Field,
    FiniteAbelianGroup,
    GroupHom,
    appendix_d1,
    biproduct,
    compose,
    convolution,
    descend_through_cokernel,
    factor_through_kernel,
    group_hom_to_morphism,
    group_hopf,
    hopf_cokernel,
    hopf_kernel,
    image,
    int_power,
    is_exact_at,
    matrix_to_morphism,
    power,
    verify_hopf,
    verify_morphism,
)
from hopfhom.abelian import convolution_sum, dimension_cap
from hopfhom.constructors import d_pair, function_hopf
from hopfhom.errors import CapExceeded, DoesNotVanish, NotContained
from hopfhom.hopf import HopfMorphism, dual_morphism, identity, is_trivial, trivial_morphism, unit_algebra

import oracle


def square_map(h):
    return int_power(h, 2)


# -- biproducts ---------------------------------------------------------------------


def test_biproduct_of_nothing_is_unit(kz2):
    p, inj, proj = biproduct(kz2, 0)
    assert p.same_structure(unit_algebra(kz2.field)) and inj == [] and proj == []


def test_biproduct_laws_on_z2(kz2):
    p, inj, proj = biproduct(kz2, 2)
    assert compose(proj[0], inj[0]) == identity(kz2)
    assert is_trivial(compose(proj[1], inj[0]))
    total = convolution_sum([compose(inj[i], proj[i]) for i in range(2)], p, p)
    assert total == identity(p)


def test_biproduct_sum_on_z3_squared_over_f2(F2):
    h = group_hopf(F2, [3])
    p, inj, proj = biproduct(h, 2)
    assert convolution(compose(inj[0], proj[0]), compose(inj[1], proj[1])) == identity(p)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_biproduct_laws_on_d1(d1, n):
    if d1.dim**n > dimension_cap():
        pytest.skip("beyond the cap")
    p, inj, proj = biproduct(d1, n)
    for i in range(n):
        for j in range(n):
            c = compose(proj[i], inj[j])
            assert c == identity(d1) if i == j else is_trivial(c)
    assert convolution_sum([compose(inj[i], proj[i]) for i in range(n)], p, p) == identity(p)


def test_cap_is_enforced(d1, monkeypatch):
    monkeypatch.setenv("HOPF_CAP", "20")
    fresh = appendix_d1()
    with pytest.raises(CapExceeded):
        power(fresh, 2)


# -- matrices to morphisms ----------------------------------------------------------


def test_diagonal_and_codiagonal(kz4_f5):
    h = kz4_f5
    k = h.field
    n = h.dim
    diag = matrix_to_morphism(h, [[1], [1]])
    assert k.equal(diag.matrix, h.comul.reshape(n, n * n).T)
    codiag = matrix_to_morphism(h, [[1, 1]])
    assert k.equal(codiag.matrix, h.mul.reshape(n * n, n).T)


def test_one_by_one_matrices_are_int_powers(kz4_f5):
    assert matrix_to_morphism(kz4_f5, [[2]]) == square_map(kz4_f5)
    assert matrix_to_morphism(kz4_f5, [[0]]) == trivial_morphism(kz4_f5, kz4_f5)


def int_matrices(rows, cols):
    return st.lists(st.lists(st.integers(-2, 2), min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@pytest.mark.parametrize("name", ["kz2", "d1"])
@given(data=st.data())
def test_phi_is_an_additive_functor(name, data, request):
    h = request.getfixturevalue(name)
    r, c, s = (data.draw(st.integers(1, 2)) for _ in range(3))
    m = np.array(data.draw(int_matrices(r, c)), dtype=np.int64).reshape(r, c)
    n = np.array(data.draw(int_matrices(c, s)), dtype=np.int64).reshape(c, s)
    n2 = np.array(data.draw(int_matrices(c, s)), dtype=np.int64).reshape(c, s)
    assert matrix_to_morphism(h, m @ n) == compose(matrix_to_morphism(h, m), matrix_to_morphism(h, n))
    assert matrix_to_morphism(h, n + n2) == convolution(matrix_to_morphism(h, n), matrix_to_morphism(h, n2))


# -- kernels, cokernels, images -----------------------------------------------------


def test_kernel_of_squaring_on_z4(kz4_f5):
    ker = hopf_kernel(square_map(kz4_f5))
    assert ker.dim == 2
    assert ker.subspace.contains([1, 0, 0, 0]) and ker.subspace.contains([0, 0, 1, 0])
    assert verify_hopf(ker.restricted).ok and verify_morphism(ker.inclusion).ok
    assert len(oracle.group_likes(ker.restricted)) == 2


def test_kernel_of_identity_and_trivial(d1):
    assert hopf_kernel(identity(d1)).dim == 1
    assert hopf_kernel(trivial_morphism(d1, d1)).dim == 5


def test_cokernel_of_squaring_on_z4(kz4_f5):
    q = hopf_cokernel(square_map(kz4_f5))
    assert q.dim == 2
    assert q.ideal.contains([4, 0, 1, 0]) and q.ideal.contains([0, 4, 0, 1])
    assert verify_hopf(q.quotient).ok and verify_morphism(q.projection).ok
    assert len(oracle.group_likes(q.quotient)) == 2
    k = kz4_f5.field
    assert k.equal(k.matmul(q.projection.matrix, q.section), k.eye(2))


def test_cokernel_of_identity_and_trivial(d1):
    assert hopf_cokernel(identity(d1)).dim == 1
    assert hopf_cokernel(trivial_morphism(d1, d1)).dim == 5


def test_image_examples(d1, kz4_f5):
    assert image(identity(d1)).dim == 5
    im = image(square_map(kz4_f5))
    assert im.dim == 2 and im.subspace.contains([0, 0, 1, 0])
    assert image(trivial_morphism(d1, d1)).dim == 1


def test_factor_through_kernel_examples(kz4_f5):
    ker = hopf_kernel(square_map(kz4_f5))
    assert factor_through_kernel(ker.inclusion, ker) == identity(ker.restricted)
    triv = factor_through_kernel(trivial_morphism(kz4_f5, kz4_f5), ker)
    assert is_trivial(triv)
    with pytest.raises(NotContained):
        factor_through_kernel(identity(kz4_f5), ker)


def test_descend_through_cokernel_examples(kz4_f5):
    q = hopf_cokernel(square_map(kz4_f5))
    assert descend_through_cokernel(q.projection, q) == identity(q.quotient)
    whole = hopf_cokernel(trivial_morphism(kz4_f5, kz4_f5))
    f = square_map(kz4_f5)
    assert descend_through_cokernel(f, whole).matrix.tolist() == f.matrix.tolist()
    with pytest.raises(DoesNotVanish):
        descend_through_cokernel(identity(kz4_f5), q)


def test_exactness_examples(F5, d1):
    assert is_exact_at(identity(d1), trivial_morphism(d1, d1))
    z2, z4 = FiniteAbelianGroup((2,)), FiniteAbelianGroup((4,))
    incl = group_hom_to_morphism(GroupHom(z2, z4, ((2,),)), F5)
    coker = hopf_cokernel(incl)
    assert coker.dim == 2
    assert is_exact_at(incl, coker.projection)
    zero = trivial_morphism(unit_algebra(d1.field), d1)
    assert is_exact_at(zero, identity(d1))
    verdict = is_exact_at(identity(d1), identity(d1))
    assert not verdict and "not trivial" in verdict.reason


def sample_morphisms():
    f3, f5 = Field.prime(3), Field.prime(5)
    d1 = appendix_d1()
    kz4 = group_hopf(f5, [4])
    kz2 = group_hopf(f3, [2])
    z2, z4, z22 = FiniteAbelianGroup((2,)), FiniteAbelianGroup((4,)), FiniteAbelianGroup((2, 2))
    return [
        identity(d1),
        int_power(d1, 2),
        trivial_morphism(d1, d1),
        int_power(kz4, 2),
        int_power(kz4, 3),
        group_hom_to_morphism(GroupHom(z4, z2, ((1,),)), f5),
        group_hom_to_morphism(GroupHom(z22, z4, ((2,), (0,))), f5),
        group_hom_to_morphism(GroupHom(z2, z22, ((1, 1),)), f5),
        matrix_to_morphism(kz2, [[1, 1]]),
        matrix_to_morphism(kz2, [[1], [1]]),
        int_power(function_hopf(f5, [4]), 2),
        int_power(d_pair(kz2), 2),
    ]


@pytest.mark.parametrize("f", sample_morphisms(), ids=lambda f: repr(f))
def test_kernel_size_matches_enumeration(f):
    ker = hopf_kernel(f)
    assert f.field.p**ker.dim == oracle.hopf_kernel_size(f)


@pytest.mark.parametrize("f", sample_morphisms(), ids=lambda f: repr(f))
def test_dimensions_multiply_in_short_exact_sequences(f):
    assert image(f).dim * hopf_kernel(f).dim == f.source.dim


@pytest.mark.parametrize("f", sample_morphisms(), ids=lambda f: repr(f))
def test_kernel_cokernel_duality(f):
    assert hopf_kernel(f).dim == hopf_cokernel(dual_morphism(f)).dim
    assert hopf_cokernel(f).dim == hopf_kernel(dual_morphism(f)).dim


@pytest.mark.parametrize("f", sample_morphisms(), ids=lambda f: repr(f))
def test_image_lies_in_kernel_of_cokernel(f):
    q = hopf_cokernel(f)
    assert is_trivial(compose(q.projection, f))
    ker = hopf_kernel(q.projection)
    im = image(f)
    for v in im.subspace.basis:
        assert ker.subspace.contains(v)


@given(st.integers(-3, 5), st.integers(-3, 5))
def test_composite_trivial_means_image_in_kernel(m, n):
    h = group_hopf(Field.prime(5), [4])
    f, g = int_power(h, m), int_power(h, n)
    if is_trivial(compose(g, f)):
        ker = hopf_kernel(g).subspace
        assert all(ker.contains(v) for v in image(f).subspace.basis)


def test_kernel_inclusion_is_universal(kz4_f5):
    # [2] . [2] is trivial on Z/4, so [2] factors through ker [2]
    sq = square_map(kz4_f5)
    ker = hopf_kernel(sq)
    bar = factor_through_kernel(sq, ker)
    assert compose(ker.inclusion, bar) == sq
    assert verify_morphism(HopfMorphism(bar.source, bar.target, bar.matrix)).ok
