import numpy as np
import pytest

from hopfhom import (
    CWComplexData,
    Field,
    HopfChainComplex,
    appendix_d1,
    builtin_space,
    cellular_chain,
    classical_homology_fp,
    compare_with_group_functor,
    connecting_morphism,
    d_pair,
    group_hopf,
    homology_all,
    homology_at,
    periodicized_chain,
    relative_chain,
    subcomplex,
    verify_les,
)
from hopfhom.errors import AssertionFailure, CapExceeded, InputError, UnsupportedField
from hopfhom.homology import BUILTIN_SPACES, cellular_fp_chain, empty_subcomplex, relative_certificate
from hopfhom.hopf import find_isomorphism, identity, is_trivial, unit_algebra
from hopfhom.linalg import is_invertible

SMALL_SPACES = ["pt", "S1", "S1-big", "S2", "RP1", "RP2", "T2", "D2"]


def one_skeleton(kw):
    return subcomplex(kw, [range(kw.cells[0]), range(kw.cells[1])])


# -- CW data ------------------------------------------------------------------------


@pytest.mark.parametrize("name", BUILTIN_SPACES)
def test_builtins_satisfy_dd_zero(name):
    kw = builtin_space(name)
    for q in range(2, kw.top + 1):
        a, b = kw.incidence(q - 1), kw.incidence(q)
        assert not (a.shape[1] and np.dot(a, b).any())


def test_builtin_examples():
    assert builtin_space("pt").cells == (1,)
    assert builtin_space("RP2").incidence(2).tolist() == [[2]]
    big = builtin_space("S2-big")
    assert big.cells == (4, 6, 4)
    assert not np.dot(big.incidence(1), big.incidence(2)).any()
    with pytest.raises(InputError):
        builtin_space("klein")


def test_cw_validation():
    with pytest.raises(InputError, match="M_1 M_2"):
        CWComplexData((1, 1, 1), ([[1]], [[1]]))
    with pytest.raises(InputError):
        CWComplexData((1, 1), ())


def test_subcomplex_validation():
    rp2 = builtin_space("RP2")
    with pytest.raises(InputError, match="not a subcomplex"):
        subcomplex(rp2, [[0], [], [0]])
    with pytest.raises(InputError):
        subcomplex(rp2, [[], [0]])
    with pytest.raises(InputError, match="out of range"):
        subcomplex(rp2, [[1]])


# -- cellular chains ------------------------------------------------------------------


def test_cellular_chain_examples(d1, kz2):
    c = cellular_chain(builtin_space("pt"), d1)
    assert c.top == 0 and c.obj(0) is d1
    rp2 = cellular_chain(builtin_space("RP2"), kz2)
    assert is_trivial(rp2.boundary(2)) and is_trivial(rp2.boundary(1))
    for h in (d1, kz2):
        assert is_trivial(cellular_chain(builtin_space("S1"), h).boundary(1))


def test_chain_complex_rejects_nonzero_composite(kz2):
    i = identity(kz2)
    with pytest.raises(AssertionFailure):
        HopfChainComplex(kz2.field, (kz2, kz2, kz2), (i, i))


def test_cap_guard(d1):
    with pytest.raises(CapExceeded):
        cellular_chain(builtin_space("S2-big"), d1)


def test_relative_chain_examples():
    rp2 = builtin_space("RP2")
    assert relative_chain(rp2, one_skeleton(rp2)).cells == (0, 0, 1)
    same = relative_chain(rp2, empty_subcomplex(rp2))
    assert same.cells == rp2.cells and same.incidence(2).tolist() == [[2]]
    everything = subcomplex(rp2, [[0], [0], [0]])
    assert relative_chain(rp2, everything).cells == (0, 0, 0)


def test_relative_certificate(kz2):
    rp2 = builtin_space("RP2")
    assert relative_certificate(rp2, one_skeleton(rp2), kz2) == [True, True, True]


# -- homology values --------------------------------------------------------------------


def test_homology_of_point(d1):
    c = cellular_chain(builtin_space("pt"), d1)
    assert homology_at(c, 0).homology.same_structure(d1)
    for q in (1, 2, -1):
        assert homology_at(c, q).homology.dim == 1


def test_rp2_with_z2_coefficients(kz2):
    res = homology_all(builtin_space("RP2"), kz2)
    assert res.dims == (2, 2, 2)
    assert [s.klass for s in res.summaries] == ["group_hopf"] * 3


def test_rp2_with_d1_coefficients(d1):
    res = homology_all(builtin_space("RP2"), d1)
    assert res.dims == (5, 1, 1)
    assert res.summaries[0].klass == "nontrivial"
    assert find_isomorphism(res.groups[0], d1) is not None


def test_s1_with_d1_coefficients(d1):
    res = homology_all(builtin_space("S1"), d1)
    assert res.dims == (5, 5)
    assert all(find_isomorphism(g, d1) is not None for g in res.groups)


def test_torus_matches_group_functor(kz2):
    res = homology_all(builtin_space("T2"), kz2)
    assert res.dims == (2, 4, 2)
    assert [s.ge for s in res.summaries] == [2, 4, 2]


def test_relative_rp2_mod_rp1(kz2):
    rp2 = builtin_space("RP2")
    res = homology_all(rp2, kz2, sub=one_skeleton(rp2))
    assert res.dims == (1, 1, 2)
    assert find_isomorphism(res.groups[2], kz2) is not None


def test_summaries_serialize(kz2):
    js = homology_all(builtin_space("S1"), kz2).summaries[0].to_json()
    assert js == {"q": 0, "dim": 2, "ge": 2, "ge_dual": 2, "semisimple": True, "cosemisimple": True, "class": "group_hopf"}


# -- connecting maps and long exact sequences -------------------------------------------


def test_connecting_map_of_empty_pair_is_trivial(kz2):
    rp2 = builtin_space("RP2")
    delta = connecting_morphism(rp2, empty_subcomplex(rp2), kz2, 1)
    assert delta.target.dim == 1 and is_trivial(delta)


def test_connecting_map_of_disk_is_an_isomorphism(d1):
    d2 = builtin_space("D2")
    delta = connecting_morphism(d2, one_skeleton(d2), d1, 1)
    assert delta.source.dim == delta.target.dim == 5
    assert is_invertible(d1.field, delta.matrix)


def test_connecting_map_of_rp2_mod_rp1_is_trivial(kz2):
    rp2 = builtin_space("RP2")
    delta = connecting_morphism(rp2, one_skeleton(rp2), kz2, 1)
    assert delta.source.dim == 2 and is_trivial(delta)


def test_connecting_map_of_rp2_mod_rp1_with_d1_is_invertible(d1):
    # [2] is invertible on D1, so H_2(RP2, RP1; D1) -> H_1(RP1; D1) is an isomorphism
    rp2 = builtin_space("RP2")
    delta = connecting_morphism(rp2, one_skeleton(rp2), d1, 1)
    assert is_invertible(d1.field, delta.matrix)


PAIRS = [
    ("RP2", lambda kw: empty_subcomplex(kw)),
    ("T2", lambda kw: empty_subcomplex(kw)),
    ("D2", one_skeleton),
    ("RP2", one_skeleton),
    ("T2", lambda kw: subcomplex(kw, [[0], [0]])),
    ("S1-big", lambda kw: subcomplex(kw, [[0, 1], [0]])),
]


@pytest.mark.parametrize("space,make_sub", PAIRS, ids=[f"{s}-{i}" for i, (s, _) in enumerate(PAIRS)])
@pytest.mark.parametrize("coeff", ["kz2", "d1"])
def test_long_exact_sequence(space, make_sub, coeff, request):
    h = request.getfixturevalue(coeff)
    kw = builtin_space(space)
    if h.dim ** max(kw.cells) > 200:
        pytest.skip("beyond the cap")
    report = verify_les(kw, make_sub(kw), h)
    assert report.ok, str(report)
    assert len(report.spots) == 3 * (kw.top + 1)


# -- classical oracle and group functor ---------------------------------------------------


def test_classical_examples():
    assert classical_homology_fp(builtin_space("pt"), 7) == [1]
    assert classical_homology_fp(builtin_space("RP2"), 2) == [1, 1, 1]
    assert classical_homology_fp(builtin_space("RP2"), 3) == [1, 0, 0]
    assert classical_homology_fp(builtin_space("S2-big"), 5) == [1, 0, 1]


def test_group_functor_examples(F2, F3):
    c = compare_with_group_functor(builtin_space("RP2"), 2, F3)
    assert c.ok and c.dims == [2, 2, 2]
    c = compare_with_group_functor(builtin_space("S2"), 3, F2)
    assert c.ok and c.dims == [3, 1, 3]
    c = compare_with_group_functor(builtin_space("pt"), 5, F3)
    assert c.ok and c.dims == [5]
    with pytest.raises(UnsupportedField):
        compare_with_group_functor(builtin_space("pt"), 2, Field.rational())


FIELD_FOR = {2: 3, 3: 2, 5: 3}


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("name", SMALL_SPACES + ["S2-big"])
def test_oracle_coherence(name, p):
    kw = builtin_space(name)
    if p ** max(kw.cells) > 200:
        pytest.skip("beyond the cap")
    res = homology_all(kw, group_hopf(Field.prime(FIELD_FOR[p]), [p]), summarize_degrees=False)
    assert [g.dim for g in res.groups] == [p**d for d in classical_homology_fp(kw, p)]


# -- invariance under the choice of cells --------------------------------------------------


def comparable(res):
    return [(s.dim, s.ge, s.ge_dual, s.semisimple, s.cosemisimple) for s in res.summaries]


def test_sphere_structures_agree(kz2):
    small = homology_all(builtin_space("S2"), kz2)
    big = homology_all(builtin_space("S2-big"), kz2)
    assert comparable(small) == comparable(big)
    for a, b in zip(small.groups, big.groups):
        f = find_isomorphism(a, b)
        assert f is not None and is_invertible(kz2.field, f.matrix)


@pytest.mark.parametrize("coeff", ["kz2", "d1"])
def test_circle_structures_agree(coeff, request):
    h = request.getfixturevalue(coeff)
    small = homology_all(builtin_space("S1"), h)
    big = homology_all(builtin_space("S1-big"), h)
    assert comparable(small) == comparable(big)


@pytest.mark.parametrize("build", [appendix_d1, lambda: group_hopf(Field.prime(3), [5])])
def test_point_is_ordinary(build):
    h = build()
    res = homology_all(builtin_space("pt"), h)
    assert res.groups[0].same_structure(h)
    c = cellular_chain(builtin_space("pt"), h)
    assert all(homology_at(c, q).homology.same_structure(unit_algebra(h.field)) for q in (1, 2, 3))


def test_point_with_d_pair_coefficients():
    h = d_pair(group_hopf(Field.prime(3), [5]))
    res = homology_all(builtin_space("pt"), h, summarize_degrees=False)
    assert res.groups[0].same_structure(h)


# -- F_p chains ---------------------------------------------------------------------------


def test_periodicized_point():
    c = periodicized_chain(builtin_space("pt"), 5, 2)
    assert c.dims == (1, 0, 1)
    assert c.homology_dims() == [1, 0, 1]
    wide = periodicized_chain(builtin_space("pt"), 5, 4)
    assert wide.homology_dims() == [1, 0, 0, 0, 1]


@pytest.mark.parametrize("name", SMALL_SPACES)
def test_periodicized_homology_is_shifted_sum(name):
    kw = builtin_space(name)
    base = cellular_fp_chain(kw, 3).homology_dims()
    per = periodicized_chain(kw, 3, 2).homology_dims()
    shifted = [(base[q] if q <= kw.top else 0) + (base[q - 2] if q >= 2 else 0) for q in range(kw.top + 3)]
    assert per == shifted
