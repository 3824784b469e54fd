"""Cellular homology of finite CW complexes with Hopf algebra coefficients.

``C_q(K; A) = A^(x)n_q`` and the boundary ``C_q -> C_{q-1}`` is the morphism
attached to the integer incidence matrix ``M_q`` (``n_{q-1} x n_q``).  Degrees
outside ``[0, d]`` hold the unit Hopf algebra ``k``, the zero object.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np

from .abelian import (
    QuotientHopf,
    SubHopf,
    descend_through_cokernel,
    factor_through_kernel,
    hopf_cokernel,
    hopf_kernel,
    is_exact_at,
    matrix_to_morphism,
    power,
    Exactness,
)
from .constructors import group_hopf
from .errors import AssertionFailure, BudgetExceeded, DimensionMismatch, InputError, UnsupportedField
from .hopf import (
    DEFAULT_BUDGET,
    HopfAlgebra,
    HopfMorphism,
    classify_triviality,
    cointegral,
    compose,
    dual,
    group_likes,
    integral,
    is_trivial,
    trivial_morphism,
    unit_algebra,
)
from .linalg import Field, is_invertible, is_prime, kernel_basis, rank


# -- CW data -------------------------------------------------------------------


def _int_matrix(m, rows: int, cols: int, what: str) -> np.ndarray:
    try:
        a = np.array(m, dtype=object).reshape(rows, cols) if rows * cols else np.zeros((rows, cols), dtype=object)
    except ValueError as exc:
        raise InputError(f"{what}: expected a {rows}x{cols} matrix") from exc
    for x in a.flat:
        if not isinstance(x, (int, np.integer)) or isinstance(x, bool):
            raise InputError(f"{what}: entries must be integers")
    return a.astype(object)


def _zero_product(a: np.ndarray, b: np.ndarray) -> bool:
    if a.shape[1] == 0:
        return True
    return not np.dot(a, b).any()


@dataclass(frozen=True, eq=False)
class CWComplexData:
    """Cell counts ``n_0..n_d`` and incidence matrices ``M_1..M_d``."""

    cells: tuple[int, ...]
    boundary: tuple[np.ndarray, ...]
    name: str = ""

    def __post_init__(self):
        cells = tuple(int(n) for n in self.cells)
        if not cells or any(n < 0 for n in cells):
            raise InputError("cells must be a nonempty list of nonnegative counts")
        if len(self.boundary) != len(cells) - 1:
            raise InputError(f"need {len(cells) - 1} boundary matrices, got {len(self.boundary)}")
        mats = tuple(
            _int_matrix(m, cells[q - 1], cells[q], f"boundary M_{q}") for q, m in enumerate(self.boundary, start=1)
        )
        for q in range(2, len(cells)):
            if not _zero_product(mats[q - 2], mats[q - 1]):
                raise InputError(f"M_{q - 1} M_{q} != 0")
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "boundary", mats)

    @property
    def top(self) -> int:
        return len(self.cells) - 1

    def count(self, q: int) -> int:
        return self.cells[q] if 0 <= q <= self.top else 0

    def incidence(self, q: int) -> np.ndarray:
        """``M_q`` for any ``q``; empty outside ``1..d``."""
        if 1 <= q <= self.top:
            return self.boundary[q - 1]
        return np.zeros((self.count(q - 1), self.count(q)), dtype=object)


def _tetrahedron() -> CWComplexData:
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    faces = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    m1 = [[0] * 6 for _ in range(4)]
    for c, (a, b) in enumerate(edges):
        m1[a][c] -= 1
        m1[b][c] += 1
    m2 = [[0] * 4 for _ in range(6)]
    for c, (a, b, d) in enumerate(faces):
        for sign, e in ((1, (b, d)), (-1, (a, d)), (1, (a, b))):
            m2[edges.index(e)][c] += sign
    return CWComplexData((4, 6, 4), (m1, m2), "S2-big")


def builtin_space(name: str) -> CWComplexData:
    key = name.strip().lower()
    spaces = {
        "pt": lambda: CWComplexData((1,), (), "pt"),
        "s1": lambda: CWComplexData((1, 1), ([[0]],), "S1"),
        "s1-big": lambda: CWComplexData((2, 2), ([[-1, 1], [1, -1]],), "S1-big"),
        "s2": lambda: CWComplexData((1, 0, 1), ([], []), "S2"),
        "s2-big": _tetrahedron,
        "rp1": lambda: CWComplexData((1, 1), ([[0]],), "RP1"),
        "rp2": lambda: CWComplexData((1, 1, 1), ([[0]], [[2]]), "RP2"),
        "t2": lambda: CWComplexData((1, 2, 1), ([[0, 0]], [[0], [0]]), "T2"),
        "d2": lambda: CWComplexData((1, 1, 1), ([[0]], [[1]]), "D2"),
    }
    if key not in spaces:
        raise InputError(f"unknown space {name!r}; choose from {', '.join(sorted(spaces))}")
    return spaces[key]()


BUILTIN_SPACES = ("pt", "S1", "S1-big", "S2", "S2-big", "RP1", "RP2", "T2", "D2")


# -- subcomplexes --------------------------------------------------------------


@dataclass(frozen=True)
class Subcomplex:
    """Indices of kept cells per dimension."""

    keep: tuple[tuple[int, ...], ...]


def subcomplex(kw: CWComplexData, keep: Sequence[Sequence[int]]) -> Subcomplex:
    """Validate a choice of cells: the boundary of a kept cell only meets kept cells."""
    keep = [sorted(set(int(i) for i in row)) for row in keep]
    keep += [[] for _ in range(kw.top + 1 - len(keep))]
    if len(keep) > kw.top + 1:
        raise InputError("subcomplex lists more dimensions than the complex")
    for q, row in enumerate(keep):
        if row and (row[0] < 0 or row[-1] >= kw.cells[q]):
            raise InputError(f"cell index out of range in dimension {q}")
    for q in range(1, kw.top + 1):
        m = kw.incidence(q)
        kept_below = set(keep[q - 1])
        for c in keep[q]:
            touched = {r for r in range(m.shape[0]) if m[r, c] != 0}
            if not touched <= kept_below:
                raise InputError(f"not a subcomplex: boundary of {q}-cell {c} leaves the subcomplex")
    if any(keep[q] for q in range(1, kw.top + 1)) and not keep[0]:
        raise InputError("not a subcomplex: positive-dimensional cells need a 0-cell")
    return Subcomplex(tuple(tuple(r) for r in keep))


def empty_subcomplex(kw: CWComplexData) -> Subcomplex:
    return Subcomplex(tuple(() for _ in kw.cells))


def _complement(kw: CWComplexData, sub: Subcomplex, q: int) -> list[int]:
    kept = set(sub.keep[q]) if 0 <= q <= kw.top else set()
    return [i for i in range(kw.count(q)) if i not in kept]


def _kept(kw: CWComplexData, sub: Subcomplex, q: int) -> list[int]:
    return list(sub.keep[q]) if 0 <= q <= kw.top else []


def restrict_to_subcomplex(kw: CWComplexData, sub: Subcomplex) -> CWComplexData:
    cells = tuple(len(r) for r in sub.keep)
    mats = [kw.incidence(q)[np.ix_(_kept(kw, sub, q - 1), _kept(kw, sub, q))] for q in range(1, kw.top + 1)]
    return CWComplexData(cells, tuple(mats), f"{kw.name}'")


def relative_chain(kw: CWComplexData, sub: Subcomplex) -> CWComplexData:
    """Chain data of ``(K, K')``: delete the cells of ``K'``."""
    cells = tuple(kw.cells[q] - len(sub.keep[q]) for q in range(kw.top + 1))
    mats = [
        kw.incidence(q)[np.ix_(_complement(kw, sub, q - 1), _complement(kw, sub, q))] for q in range(1, kw.top + 1)
    ]
    return CWComplexData(cells, tuple(mats), f"{kw.name}/{kw.name}'")


def _selection(rows: int, picked: Sequence[int]) -> np.ndarray:
    """``rows x len(picked)`` matrix sending basis vector ``j`` to ``e_{picked[j]}``."""
    out = np.zeros((rows, len(picked)), dtype=object)
    for j, i in enumerate(picked):
        out[i, j] = 1
    return out


def inclusion_chain_map(kw: CWComplexData, sub: Subcomplex, h: HopfAlgebra, q: int) -> HopfMorphism:
    return matrix_to_morphism(h, _selection(kw.count(q), _kept(kw, sub, q)))


def quotient_chain_map(kw: CWComplexData, sub: Subcomplex, h: HopfAlgebra, q: int) -> HopfMorphism:
    return matrix_to_morphism(h, _selection(kw.count(q), _complement(kw, sub, q)).T)


def relative_certificate(kw: CWComplexData, sub: Subcomplex, h: HopfAlgebra) -> list[bool]:
    """Per degree: the deleted-cell object is canonically the cokernel of the inclusion."""
    out = []
    for q in range(kw.top + 1):
        coker = hopf_cokernel(inclusion_chain_map(kw, sub, h, q))
        comparison = descend_through_cokernel(quotient_chain_map(kw, sub, h, q), coker)
        out.append(is_invertible(h.field, comparison.matrix))
    return out


# -- chain complexes -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HopfChainComplex:
    """Objects ``C_0..C_d`` and boundaries ``d_q : C_q -> C_{q-1}`` for ``q = 1..d``."""

    field: Field
    objects: tuple[HopfAlgebra, ...]
    boundaries: tuple[HopfMorphism, ...]
    _zero: HopfAlgebra = dc_field(default=None, repr=False)
    _cache: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(self.boundaries) != max(len(self.objects) - 1, 0):
            raise DimensionMismatch("need one boundary per positive degree")
        for q, b in enumerate(self.boundaries, start=1):
            if not (b.source.same_structure(self.objects[q]) and b.target.same_structure(self.objects[q - 1])):
                raise DimensionMismatch(f"boundary {q} has the wrong source or target")
        if self._zero is None:
            object.__setattr__(self, "_zero", unit_algebra(self.field))
        for q in range(2, len(self.objects)):
            if not is_trivial(compose(self.boundaries[q - 2], self.boundaries[q - 1])):
                raise AssertionFailure(f"d_{q - 1} . d_{q} is not trivial")

    @property
    def top(self) -> int:
        return len(self.objects) - 1

    def obj(self, q: int) -> HopfAlgebra:
        return self.objects[q] if 0 <= q <= self.top else self._zero

    def boundary(self, q: int) -> HopfMorphism:
        if 1 <= q <= self.top:
            return self.boundaries[q - 1]
        return trivial_morphism(self.obj(q), self.obj(q - 1))


def cellular_chain(kw: CWComplexData, h: HopfAlgebra) -> HopfChainComplex:
    h.require_verified()
    objects = tuple(power(h, n) for n in kw.cells)
    bounds = tuple(matrix_to_morphism(h, kw.incidence(q)) for q in range(1, kw.top + 1))
    return HopfChainComplex(h.field, objects, bounds, _zero=power(h, 0))


@dataclass(frozen=True, eq=False)
class HomologyDegree:
    q: int
    cycles: SubHopf
    incoming: HopfMorphism
    quotient: QuotientHopf

    @property
    def homology(self) -> HopfAlgebra:
        return self.quotient.quotient

    @property
    def projection(self) -> HopfMorphism:
        """Cycles onto homology."""
        return self.quotient.projection


def homology_at(c: HopfChainComplex, q: int) -> HomologyDegree:
    key = ("homology", q)
    if key not in c._cache:
        cycles = hopf_kernel(c.boundary(q))
        incoming = factor_through_kernel(c.boundary(q + 1), cycles)
        c._cache[key] = HomologyDegree(q, cycles, incoming, hopf_cokernel(incoming))
    return c._cache[key]


def induced_on_homology(phi: HopfMorphism, src: HomologyDegree, tgt: HomologyDegree) -> HopfMorphism:
    """``H_q(phi)`` for a chain map component ``phi : C_q -> D_q``."""
    on_cycles = factor_through_kernel(compose(phi, src.cycles.inclusion), tgt.cycles)
    return descend_through_cokernel(compose(tgt.projection, on_cycles), src.quotient)


# -- summaries -----------------------------------------------------------------


@dataclass
class DegreeSummary:
    q: int
    dim: int
    ge: Optional[int]
    ge_dual: Optional[int]
    semisimple: bool
    cosemisimple: bool
    klass: str

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "dim": self.dim,
            "ge": self.ge,
            "ge_dual": self.ge_dual,
            "semisimple": self.semisimple,
            "cosemisimple": self.cosemisimple,
            "class": self.klass,
        }


def _ge_count(h: HopfAlgebra, budget: int) -> Optional[int]:
    try:
        return len(group_likes(h, budget))
    except (BudgetExceeded, UnsupportedField):
        return None


def summarize(h: HopfAlgebra, q: int = 0, budget: int = DEFAULT_BUDGET) -> DegreeSummary:
    return DegreeSummary(
        q,
        h.dim,
        _ge_count(h, budget),
        _ge_count(dual(h), budget),
        integral(h).semisimple,
        cointegral(h).semisimple,
        classify_triviality(h, budget),
    )


@dataclass
class HomologyResult:
    space: str
    degrees: list[HomologyDegree]
    summaries: list[DegreeSummary]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.summaries)

    @property
    def groups(self) -> list[HopfAlgebra]:
        return [d.homology for d in self.degrees]


def homology_all(
    kw: CWComplexData,
    h: HopfAlgebra,
    sub: Optional[Subcomplex] = None,
    budget: int = DEFAULT_BUDGET,
    summarize_degrees: bool = True,
) -> HomologyResult:
    data = relative_chain(kw, sub) if sub is not None else kw
    c = cellular_chain(data, h)
    degrees = [homology_at(c, q) for q in range(kw.top + 1)]
    summaries = [summarize(d.homology, d.q, budget) for d in degrees] if summarize_degrees else []
    return HomologyResult(data.name, degrees, summaries)


# -- long exact sequence of a pair ---------------------------------------------


@dataclass
class PairComplexes:
    kw: CWComplexData
    sub: Subcomplex
    h: HopfAlgebra
    absolute: HopfChainComplex
    small: HopfChainComplex
    relative: HopfChainComplex


def pair_complexes(kw: CWComplexData, sub: Subcomplex, h: HopfAlgebra) -> PairComplexes:
    return PairComplexes(
        kw,
        sub,
        h,
        cellular_chain(kw, h),
        cellular_chain(restrict_to_subcomplex(kw, sub), h),
        cellular_chain(relative_chain(kw, sub), h),
    )


def connecting_morphism(kw: CWComplexData, sub: Subcomplex, h: HopfAlgebra, q: int, pair: PairComplexes = None) -> HopfMorphism:
    """``H_{q+1}(K, K') -> H_q(K')`` through the splitting of ``C(K)`` into kept and deleted cells."""
    pc = pair or pair_complexes(kw, sub, h)
    rel = homology_at(pc.relative, q + 1)
    small = homology_at(pc.small, q)
    # block of d_{q+1} from deleted (q+1)-cells to kept q-cells
    block = kw.incidence(q + 1)[np.ix_(_kept(kw, sub, q), _complement(kw, sub, q + 1))]
    lifted = compose(matrix_to_morphism(h, block), rel.cycles.inclusion)
    on_cycles = factor_through_kernel(lifted, small.cycles)
    return descend_through_cokernel(compose(small.projection, on_cycles), rel.quotient)


@dataclass
class LESReport:
    spots: list[tuple[str, Exactness]]

    @property
    def ok(self) -> bool:
        return all(v.exact for _, v in self.spots)

    def __str__(self) -> str:
        return "\n".join(f"{'exact' if v else 'NOT exact'}  {name}{'' if v else '  (' + v.reason + ')'}" for name, v in self.spots)


def verify_les(kw: CWComplexData, sub: Subcomplex, h: HopfAlgebra) -> LESReport:
    """Exactness of ``.. -> H_q(K') -> H_q(K) -> H_q(K,K') -> H_{q-1}(K') -> ..`` at every spot."""
    pc = pair_complexes(kw, sub, h)
    d = kw.top
    spots = []
    for q in range(d, -1, -1):
        hs, ha, hr = homology_at(pc.small, q), homology_at(pc.absolute, q), homology_at(pc.relative, q)
        i_q = induced_on_homology(inclusion_chain_map(kw, sub, h, q), hs, ha)
        j_q = induced_on_homology(quotient_chain_map(kw, sub, h, q), ha, hr)
        into_small = connecting_morphism(kw, sub, h, q, pc)
        out_of_rel = connecting_morphism(kw, sub, h, q - 1, pc)
        spots.append((f"H_{q}(K')", is_exact_at(into_small, i_q)))
        spots.append((f"H_{q}(K)", is_exact_at(i_q, j_q)))
        spots.append((f"H_{q}(K,K')", is_exact_at(j_q, out_of_rel)))
    return LESReport(spots)


# -- classical oracle ----------------------------------------------------------


def classical_homology_fp(kw: CWComplexData, p: int) -> list[int]:
    """``dim H_q(K; F_p) = nullity(M_q) - rank(M_{q+1})`` modulo ``p``."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    k = Field.prime(p)

    def rk(q: int) -> int:
        m = kw.incidence(q)
        return rank(k, m) if m.size else 0

    return [kw.cells[q] - rk(q) - rk(q + 1) for q in range(kw.top + 1)]


@dataclass
class GroupFunctorComparison:
    p: int
    classical: list[int]
    dims: list[int]
    ge: list[int]

    @property
    def ok(self) -> bool:
        expected = [self.p**d for d in self.classical]
        return self.dims == expected and self.ge == expected


def compare_with_group_functor(kw: CWComplexData, p: int, field: Field, budget: int = DEFAULT_BUDGET) -> GroupFunctorComparison:
    """Hopf homology with ``k Z/p`` coefficients against ``k`` of classical homology."""
    if field.is_rational:
        raise UnsupportedField("group-like counts of homology objects need a prime field")
    classical = classical_homology_fp(kw, p)
    res = homology_all(kw, group_hopf(field, [p]), budget=budget, summarize_degrees=False)
    dims = [g.dim for g in res.groups]
    ge = [len(group_likes(g, budget)) for g in res.groups]
    return GroupFunctorComparison(p, classical, dims, ge)


# -- F_p chain complexes -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FpChainComplex:
    """Chain complex of ``F_p``-vector spaces; ``boundary[q-1]`` is ``d_q``."""

    p: int
    dims: tuple[int, ...]
    boundary: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputError(f"{self.p} is not prime")
        dims = tuple(int(n) for n in self.dims)
        if len(self.boundary) != max(len(dims) - 1, 0):
            raise InputError("need one boundary matrix per positive degree")
        k = Field.prime(self.p)
        mats = []
        for q, m in enumerate(self.boundary, start=1):
            a = np.zeros((dims[q - 1], dims[q]), dtype=np.int64) if dims[q - 1] * dims[q] == 0 else k.array(m)
            if a.shape != (dims[q - 1], dims[q]):
                raise InputError(f"boundary {q} must be {dims[q - 1]}x{dims[q]}")
            mats.append(k.array(a))
        for q in range(2, len(dims)):
            a, b = mats[q - 2], mats[q - 1]
            if a.shape[1] and not k.is_zero(k.matmul(a, b)):
                raise InputError(f"d_{q - 1} d_{q} != 0 mod {self.p}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "boundary", tuple(mats))

    @property
    def field(self) -> Field:
        return Field.prime(self.p)

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def count(self, q: int) -> int:
        return self.dims[q] if 0 <= q <= self.top else 0

    def matrix(self, q: int) -> np.ndarray:
        if 1 <= q <= self.top:
            return self.boundary[q - 1]
        return self.field.zeros((self.count(q - 1), self.count(q)))

    def homology_dims(self) -> list[int]:
        k = self.field

        def rk(q: int) -> int:
            m = self.matrix(q)
            return rank(k, m) if m.size else 0

        return [self.dims[q] - rk(q) - rk(q + 1) for q in range(self.top + 1)]

    def cycles(self, q: int):
        return kernel_basis(self.field, self.matrix(q)) if self.count(q) else None


def cellular_fp_chain(kw: CWComplexData, p: int) -> FpChainComplex:
    k = Field.prime(p)
    return FpChainComplex(p, kw.cells, tuple(k.array(kw.incidence(q)) for q in range(1, kw.top + 1)))


def periodicized_chain(kw: CWComplexData, p: int, shift: int = 2) -> FpChainComplex:
    """``C_q (+) C_{q - shift}`` with block-diagonal boundary; homology ``H_q (+) H_{q-shift}``."""
    if shift < 1:
        raise InputError("shift must be positive")
    base = cellular_fp_chain(kw, p)
    k = base.field
    top = kw.top + shift
    dims = [base.count(q) + base.count(q - shift) for q in range(top + 1)]
    mats = []
    for q in range(1, top + 1):
        m = k.zeros((dims[q - 1], dims[q]))
        a = base.matrix(q)
        b = base.matrix(q - shift)
        m[: a.shape[0], : a.shape[1]] = a
        m[a.shape[0] :, a.shape[1] :] = b
        mats.append(m)
    return FpChainComplex(p, tuple(dims), tuple(mats))
