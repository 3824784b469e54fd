"""Abelian-category structure on bicommutative Hopf algebras.

The biproduct of ``A`` with itself ``n`` times is the tensor power ``A^(x)n``.
Kernels are sub Hopf algebras, cokernels are quotients by Hopf ideals, and an
integer matrix ``M`` becomes a morphism between tensor powers through the
convolution of ``iota_i . [m_ij] . pi_j``.

Every universal-property obligation is checked at runtime; a failure raises
:class:`~hopfhom.errors.AssertionFailure` instead of being repaired.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import AssertionFailure, CapExceeded, DimensionMismatch, DoesNotVanish, NotContained
from .hopf import (
    HopfAlgebra,
    HopfMorphism,
    _bilinear,
    _push_comul,
    compose,
    convolution,
    int_power,
    is_trivial,
    tensor,
    trivial_morphism,
    unit_algebra,
)
from .linalg import Field, Subspace, kernel_basis, quotient_with_section

DEFAULT_CAP = 200


def dimension_cap() -> int:
    """Largest tensor-power dimension allowed; ``HOPF_CAP`` overrides the default."""
    raw = os.environ.get("HOPF_CAP")
    return int(raw) if raw else DEFAULT_CAP


def check_cap(h: HopfAlgebra, n: int) -> None:
    cap = dimension_cap()
    if n > 0 and h.dim**n > cap:
        raise CapExceeded(f"dim {h.dim}^{n} = {h.dim**n} exceeds the cap {cap} (set HOPF_CAP to raise it)")


def power(h: HopfAlgebra, n: int) -> HopfAlgebra:
    """``h^(x)n``, cached on ``h`` so repeated calls return the same object."""
    if n < 0:
        raise ValueError("tensor power exponent must be >= 0")
    key = ("power", n)
    if key not in h._cache:
        check_cap(h, n)
        if n == 0:
            h._cache[key] = unit_algebra(h.field)
        elif n == 1:
            h._cache[key] = h
        else:
            h._cache[key] = tensor(power(h, n - 1), h)
    return h._cache[key]


def _slot_matrix(k: Field, n: int, slot: int, here: np.ndarray, elsewhere: np.ndarray) -> np.ndarray:
    return reduce(lambda x, y: k.kron(x, y), [here if s == slot else elsewhere for s in range(n)], k.eye(1))


def injection(h: HopfAlgebra, n: int, j: int) -> HopfMorphism:
    """``iota_j``: ``x -> eta (x) .. (x) x (x) .. (x) eta`` with ``x`` in slot ``j``."""
    k = h.field
    mat = _slot_matrix(k, n, j, k.eye(h.dim), h.unit.reshape(-1, 1))
    return HopfMorphism(h, power(h, n), mat)._mark_verified()


def projection(h: HopfAlgebra, n: int, i: int) -> HopfMorphism:
    """``pi_i``: apply the counit on every slot except ``i``."""
    k = h.field
    mat = _slot_matrix(k, n, i, k.eye(h.dim), h.counit.reshape(1, -1))
    return HopfMorphism(power(h, n), h, mat)._mark_verified()


def biproduct(h: HopfAlgebra, n: int) -> tuple[HopfAlgebra, list[HopfMorphism], list[HopfMorphism]]:
    h.require_verified()
    p = power(h, n)
    return p, [injection(h, n, j) for j in range(n)], [projection(h, n, i) for i in range(n)]


def convolution_sum(terms: Sequence[HopfMorphism], source: HopfAlgebra, target: HopfAlgebra) -> HopfMorphism:
    """Convolution of all ``terms``; the empty sum is the trivial morphism."""
    return reduce(convolution, terms, trivial_morphism(source, target)) if terms else trivial_morphism(source, target)


def matrix_to_morphism(
    h: HopfAlgebra,
    m,
    entry: Optional[Callable[[int], HopfMorphism]] = None,
) -> HopfMorphism:
    """The morphism ``h^(x)c -> h^(x)r`` attached to an ``r x c`` matrix.

    Entries are turned into endomorphisms of ``h`` by ``entry`` (default: the
    integer multiples ``[n]``); zero entries contribute nothing.
    """
    h.require_verified()
    entry = entry or (lambda n: int_power(h, n))
    mat = np.asarray(m, dtype=object)
    if mat.ndim != 2:
        raise DimensionMismatch("matrix_to_morphism needs a 2-d matrix")
    r, c = mat.shape
    src, tgt = power(h, c), power(h, r)
    terms = []
    for i in range(r):
        for j in range(c):
            v = int(mat[i, j])
            if v:
                terms.append(compose(injection(h, r, i), compose(entry(v), projection(h, c, j))))
    return convolution_sum(terms, src, tgt)


# -- kernels -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SubHopf:
    ambient: HopfAlgebra
    subspace: Subspace
    restricted: HopfAlgebra
    inclusion: HopfMorphism

    @property
    def dim(self) -> int:
        return self.subspace.dim


def _require_contained(s: Subspace, vectors: np.ndarray, what: str) -> None:
    if vectors.shape[0] and not s.contains(vectors.T):
        raise AssertionFailure(f"subspace not closed under {what}")


def sub_hopf(ambient: HopfAlgebra, s: Subspace, origin: str = "sub") -> SubHopf:
    """Restrict the structure of ``ambient`` to ``s`` after checking closure."""
    k, n = ambient.field, ambient.dim
    b = s.basis  # (d, n)
    d = s.dim
    piv = list(s.pivots)
    if not s.contains(ambient.unit):
        raise AssertionFailure("subspace does not contain the unit")
    prods = _bilinear(k, ambient.mul, b.T, b.T)  # (d, d, n)
    _require_contained(s, prods.reshape(-1, n), "multiplication")
    images = k.matmul(ambient.antipode, b.T)  # (n, d)
    _require_contained(s, images.T, "the antipode")
    co = k.matmul(b, ambient.comul.reshape(n, n * n)).reshape(d, n, n)
    co_coords = co[:, piv][:, :, piv]
    rebuilt = _push_comul(k, co_coords, b.T, b.T)
    if not k.equal(rebuilt, co):
        raise AssertionFailure("comultiplication does not land in K (x) K")
    meta = {"origin": origin}
    gl = ambient.metadata.get("known_group_likes")
    if gl is not None:
        meta["known_group_likes"] = [list(k.array(v)[piv]) for v in gl if s.contains(k.array(v))]
    restricted = HopfAlgebra(
        k,
        prods[:, :, piv],
        ambient.unit[piv],
        co_coords,
        k.matmul(b, ambient.counit),
        images[piv],
        metadata=meta,
    )
    # closure under every structure map makes the axioms hold by restriction
    restricted._mark_verified(bool(ambient._cache.get("bicommutative")))
    inclusion = HopfMorphism(restricted, ambient, b.T.copy())._mark_verified()
    return SubHopf(ambient, s, restricted, inclusion)


def kernel_subspace(f: HopfMorphism) -> Subspace:
    """``{a : (id (x) f) Delta(a) = a (x) eta_B}`` as one linear system."""
    a, b = f.source, f.target
    k = f.field
    na, nb = a.dim, b.dim
    x = k.matmul(a.comul.reshape(na * na, na), f.matrix.T).reshape(na, na, nb)
    x = k.sub(x, k.reduce(np.multiply.outer(k.eye(na), b.unit)))
    return kernel_basis(k, x.reshape(na, na * nb).T)


def hopf_kernel(f: HopfMorphism) -> SubHopf:
    f.source.require_verified()
    f.target.require_verified()
    f.require_verified()
    return sub_hopf(f.source, kernel_subspace(f), origin="kernel")


def factor_through_kernel(g: HopfMorphism, ker: SubHopf) -> HopfMorphism:
    """The unique ``gbar`` with ``ker.inclusion . gbar == g``."""
    if not g.target.same_structure(ker.ambient):
        raise DimensionMismatch("g does not land in the ambient of the kernel")
    k = g.field
    coords = g.matrix[list(ker.subspace.pivots)]
    if not k.equal(k.matmul(ker.inclusion.matrix, coords), g.matrix):
        raise NotContained("image of g is not inside the kernel")
    out = HopfMorphism(g.source, ker.restricted, coords)
    if g.verified:
        out._mark_verified()
    return out


# -- cokernels -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuotientHopf:
    ambient: HopfAlgebra
    ideal: Subspace
    quotient: HopfAlgebra
    projection: HopfMorphism
    section: np.ndarray

    @property
    def dim(self) -> int:
        return self.quotient.dim


def _ideal_closure(h: HopfAlgebra, gens: np.ndarray) -> Subspace:
    k, n = h.field, h.dim
    if gens.shape[0] == 0:
        return Subspace.zero(k, n)
    prods = _bilinear(k, h.mul, k.eye(n), gens.T).reshape(-1, n)
    ideal = Subspace.span(k, prods, n)
    # one pass suffices by associativity; confirm it
    if ideal.dim:
        again = _bilinear(k, h.mul, k.eye(n), ideal.basis.T).reshape(-1, n)
        _require_contained(ideal, again, "multiplication by the ambient")
    return ideal


def quotient_hopf(ambient: HopfAlgebra, ideal: Subspace, origin: str = "quotient") -> QuotientHopf:
    """``ambient / ideal`` after checking that ``ideal`` is a Hopf ideal."""
    k, n = ambient.field, ambient.dim
    proj, sec = quotient_with_section(ideal)
    q = proj.shape[0]
    if ideal.dim:
        basis_t = ideal.basis.T
        if not k.is_zero(k.matmul(ambient.counit, basis_t)):
            raise AssertionFailure("counit does not vanish on the ideal")
        _require_contained(ideal, k.matmul(ambient.antipode, basis_t).T, "the antipode")
        co = k.matmul(ideal.basis, ambient.comul.reshape(n, n * n)).reshape(-1, n, n)
        if not k.is_zero(_push_comul(k, co, proj, proj)):
            raise AssertionFailure("ideal is not a coideal")
        prods = _bilinear(k, ambient.mul, k.eye(n), basis_t).reshape(-1, n)
        _require_contained(ideal, prods, "multiplication by the ambient")
    mul = k.matmul(_bilinear(k, ambient.mul, sec, sec).reshape(q * q, n), proj.T).reshape(q, q, q)
    co = k.matmul(sec.T, ambient.comul.reshape(n, n * n)).reshape(q, n, n)
    meta = {"origin": origin}
    quotient = HopfAlgebra(
        k,
        mul,
        k.matmul(proj, ambient.unit),
        _push_comul(k, co, proj, proj),
        k.matmul(ambient.counit, sec),
        k.matmul(k.matmul(proj, ambient.antipode), sec),
        metadata=meta,
    )
    # a Hopf ideal makes every axiom descend along the surjection
    quotient._mark_verified(bool(ambient._cache.get("bicommutative")))
    projection_map = HopfMorphism(ambient, quotient, proj)._mark_verified()
    return QuotientHopf(ambient, ideal, quotient, projection_map, sec)


def cokernel_ideal(f: HopfMorphism) -> Subspace:
    """Ideal of the target generated by ``f(ker eps_A)``."""
    a = f.source
    k = f.field
    aug = kernel_basis(k, a.counit.reshape(1, -1))
    gens = k.matmul(f.matrix, aug.basis.T).T if aug.dim else k.zeros((0, f.target.dim))
    return _ideal_closure(f.target, gens)


def hopf_cokernel(f: HopfMorphism) -> QuotientHopf:
    f.source.require_verified()
    f.target.require_verified()
    f.require_verified()
    return quotient_hopf(f.target, cokernel_ideal(f), origin="cokernel")


def descend_through_cokernel(f: HopfMorphism, q: QuotientHopf) -> HopfMorphism:
    """The unique ``fbar`` with ``fbar . q.projection == f``."""
    if not f.source.same_structure(q.ambient):
        raise DimensionMismatch("f does not start at the ambient of the quotient")
    k = f.field
    if q.ideal.dim and not k.is_zero(k.matmul(f.matrix, q.ideal.basis.T)):
        raise DoesNotVanish("f does not vanish on the ideal")
    fbar = k.matmul(f.matrix, q.section)
    if not k.equal(k.matmul(fbar, q.projection.matrix), f.matrix):
        raise AssertionFailure("descended map does not recover f")
    out = HopfMorphism(q.quotient, f.target, fbar)
    if f.verified:
        out._mark_verified()
    return out


def image(f: HopfMorphism) -> SubHopf:
    """Kernel of the cokernel projection; contains the linear image of ``f``."""
    coker = hopf_cokernel(f)
    im = sub_hopf(f.target, kernel_subspace(coker.projection), origin="image")
    cols = f.matrix.T
    _require_contained(im.subspace, cols, "the linear image of f")
    return im


# -- exactness -----------------------------------------------------------------


@dataclass(frozen=True)
class Exactness:
    exact: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.exact


def is_exact_at(f: HopfMorphism, g: HopfMorphism) -> Exactness:
    """Exactness of ``X --f--> Y --g--> Z`` at ``Y``."""
    if not f.target.same_structure(g.source):
        raise DimensionMismatch("f.target != g.source")
    if not is_trivial(compose(g, f)):
        return Exactness(False, "g . f is not trivial")
    im = image(f).subspace
    ker = kernel_subspace(g)
    if im == ker:
        return Exactness(True)
    return Exactness(False, f"image has dim {im.dim}, kernel has dim {ker.dim}")


__all__ = [
    "DEFAULT_CAP",
    "Exactness",
    "QuotientHopf",
    "SubHopf",
    "biproduct",
    "check_cap",
    "cokernel_ideal",
    "convolution_sum",
    "descend_through_cokernel",
    "dimension_cap",
    "factor_through_kernel",
    "hopf_cokernel",
    "hopf_kernel",
    "image",
    "injection",
    "is_exact_at",
    "kernel_subspace",
    "matrix_to_morphism",
    "power",
    "projection",
    "quotient_hopf",
    "sub_hopf",
]
