"""Endomorphism rings, F_p-actions and the exponential functor they induce.

A ring map ``alpha : F_p -> End(A)`` exists exactly when ``[p]`` is trivial,
and is then unique (``alpha(n) = [n]``).  It extends to an additive functor
sending ``F_p^n`` to ``A^(x)n`` and a matrix over ``F_p`` to the morphism
assembled from ``alpha`` of its entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .abelian import factor_through_kernel, matrix_to_morphism, power
from .errors import InputError, NoAction
from .hopf import (
    Check,
    HopfAlgebra,
    HopfMorphism,
    Report,
    compose,
    convolution,
    hopf_morphisms,
    identity,
    int_power,
    is_trivial,
    verify_morphism,
)
from .homology import FpChainComplex, HopfChainComplex, homology_at
from .linalg import Field, Subspace, is_invertible, is_prime, kernel_basis, quotient_with_section


@dataclass(frozen=True, eq=False)
class ActionSpec:
    """``alpha(0..p-1)`` as endomorphisms of ``base``."""

    base: HopfAlgebra
    prime: int
    table: tuple[HopfMorphism, ...]

    def __post_init__(self):
        if not is_prime(self.prime):
            raise InputError(f"{self.prime} is not prime")
        if len(self.table) != self.prime:
            raise InputError(f"an F_{self.prime}-action needs {self.prime} table entries")
        for f in self.table:
            if not (f.source.same_structure(self.base) and f.target.same_structure(self.base)):
                raise InputError("action table entries must be endomorphisms of the base")

    def alpha(self, n: int) -> HopfMorphism:
        return self.table[int(n) % self.prime]


def canonical_action(h: HopfAlgebra, p: int) -> ActionSpec:
    """The unique F_p-action ``n -> [n]``, or :class:`NoAction` when ``[p]`` is not trivial."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    h.require_verified()
    if not is_trivial(int_power(h, p)):
        raise NoAction(f"[{p}] is not trivial on this Hopf algebra, so no F_{p}-action exists")
    spec = ActionSpec(h, p, tuple(int_power(h, n) for n in range(p)))
    report = verify_action(spec)
    if not report.ok:
        raise AssertionError(f"canonical action fails its ring laws: {report.failures}")
    return spec


def verify_action(spec: ActionSpec) -> Report:
    """Ring-homomorphism laws of ``alpha`` as exact matrix identities."""
    p = spec.prime
    a = spec.table
    k = spec.base.field
    checks = [
        Check("alpha(0) trivial", is_trivial(a[0])),
        Check("alpha(1) identity", k.equal(a[1].matrix, k.eye(spec.base.dim))),
        Check("alpha Hopf maps", all(verify_morphism(f).ok for f in a)),
    ]
    add_fail = mul_fail = None
    for m in range(p):
        for n in range(p):
            if add_fail is None and not k.equal(convolution(a[m], a[n]).matrix, a[(m + n) % p].matrix):
                add_fail = (m, n)
            if mul_fail is None and not k.equal(compose(a[m], a[n]).matrix, a[(m * n) % p].matrix):
                mul_fail = (m, n)
    checks.append(Check("additive", add_fail is None, add_fail))
    checks.append(Check("multiplicative", mul_fail is None, mul_fail))
    return Report(checks)


# -- End(A) --------------------------------------------------------------------


@dataclass
class EndRingReport:
    elements: list[HopfMorphism]
    add_table: list[list[int]]
    mul_table: list[list[int]]
    labels: list[Optional[str]]
    characteristic: int
    ring_id: Optional[str]

    @property
    def size(self) -> int:
        return len(self.elements)


def _key(f: HopfMorphism) -> bytes:
    return repr(f.matrix.tolist()).encode()


def _identify_ring(size: int, char: int, add, mul, zero: int, one: int) -> Optional[str]:
    if size == 1:
        return "0"
    commutative = all(mul[i][j] == mul[j][i] for i in range(size) for j in range(size))
    units = [i for i in range(size) if i != zero and one in mul[i]]
    if commutative and len(units) == size - 1:
        return f"F_{size}"
    if size == char:
        return f"Z/{char}"
    return None


def enumerate_end_ring(h: HopfAlgebra, budget: int = 10**6) -> EndRingReport:
    """All Hopf endomorphisms of ``h`` with their convolution and composition tables.

    Elements of the form ``[n]`` come first, in order of ``n``.
    """
    found = hopf_morphisms(h, h, budget)
    multiples: dict[bytes, int] = {}
    n = 0
    while _key(int_power(h, n)) not in multiples:
        multiples[_key(int_power(h, n))] = n
        n += 1
    char = n
    order = sorted(range(len(found)), key=lambda i: (multiples.get(_key(found[i]), char), i))
    elems = [found[i] for i in order]
    index = {_key(f): i for i, f in enumerate(elems)}

    def find(f: HopfMorphism) -> int:
        i = index.get(_key(f))
        if i is None:
            raise AssertionError("End(A) is not closed under the ring operations")
        return i

    size = len(elems)
    add = [[find(convolution(f, g)) for g in elems] for f in elems]
    mul = [[find(compose(f, g)) for g in elems] for f in elems]
    labels = [f"[{multiples[_key(f)]}]" if _key(f) in multiples else None for f in elems]
    zero, one = find(int_power(h, 0)), find(identity(h))
    return EndRingReport(elems, add, mul, labels, char, _identify_ring(size, char, add, mul, zero, one))


# -- exponential functor ---------------------------------------------------------


def exp_object(spec: ActionSpec, n: int) -> HopfAlgebra:
    """``(A, alpha)^(F_p^n) = A^(x)n``."""
    return power(spec.base, n)


def exp_morphism(spec: ActionSpec, m) -> HopfMorphism:
    """``A^(x)c -> A^(x)r`` for an ``r x c`` matrix over ``F_p``."""
    k = Field.prime(spec.prime)
    arr = np.asarray(m, dtype=object)
    if arr.ndim != 2:
        raise InputError("exp_morphism needs a 2-d matrix")
    mat = k.array(arr) if arr.size else np.zeros(arr.shape, dtype=np.int64)
    return matrix_to_morphism(spec.base, mat, entry=spec.alpha)


def apply_exp_to_chain(spec: ActionSpec, c: FpChainComplex) -> HopfChainComplex:
    if c.p != spec.prime:
        raise InputError(f"chain is over F_{c.p} but the action is over F_{spec.prime}")
    objects = tuple(exp_object(spec, n) for n in c.dims)
    bounds = tuple(exp_morphism(spec, c.matrix(q)) for q in range(1, c.top + 1))
    return HopfChainComplex(spec.base.field, objects, bounds, _zero=power(spec.base, 0))


@dataclass
class ExpComparison:
    q: int
    homology_dim_fp: int
    expected_dim: int
    hopf_dim: int
    invertible: bool
    hopf_map: bool
    morphism: HopfMorphism

    @property
    def ok(self) -> bool:
        return self.expected_dim == self.hopf_dim and self.invertible and self.hopf_map


def homology_section(c: FpChainComplex, q: int) -> np.ndarray:
    """Cycles lifting a basis of ``H_q(C)``: an ``n_q x dim H_q`` matrix over F_p."""
    k = c.field
    n = c.count(q)
    cycles = kernel_basis(k, c.matrix(q)) if n else Subspace.zero(k, 0)
    if cycles.dim == 0:
        return k.zeros((n, 0))
    nxt = c.matrix(q + 1)
    bounds = Subspace.span(k, nxt.T, n) if nxt.size else Subspace.zero(k, n)
    in_cycles = Subspace.span(k, cycles.coordinates(bounds.basis.T).T, cycles.dim)
    _, sec = quotient_with_section(in_cycles)
    return k.matmul(cycles.basis.T, sec)


def exp_comparison(spec: ActionSpec, c: FpChainComplex, q: int, hc: HopfChainComplex = None) -> ExpComparison:
    """The canonical ``(A, alpha)^(H_q C) -> H_q((A, alpha)^C)`` and whether it is an isomorphism."""
    hc = hc if hc is not None else apply_exp_to_chain(spec, c)
    deg = homology_at(hc, q)
    lift = homology_section(c, q)
    on_cycles = factor_through_kernel(exp_morphism(spec, lift), deg.cycles)
    cmp = compose(deg.projection, on_cycles)
    hq = lift.shape[1]
    expected = spec.base.dim**hq
    return ExpComparison(
        q,
        hq,
        expected,
        deg.homology.dim,
        is_invertible(spec.base.field, cmp.matrix),
        verify_morphism(cmp).ok,
        cmp,
    )


def is_ordinary(dims) -> bool:
    """Only degree 0 carries a nonzero object."""
    return all(d == 1 for d in list(dims)[1:])
