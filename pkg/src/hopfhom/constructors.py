"""Named Hopf algebras: group algebras, function algebras, D(A) and the D1/D2 fixtures."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod
from typing import Iterator, Sequence

import numpy as np

from .errors import InputError, NotAHopfMorphism
from .hopf import HopfAlgebra, HopfMorphism, dual, tensor, transport_structure, verify_morphism
from .linalg import Field


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z/d_1 + ... + Z/d_r``; elements are tuples, indexed in mixed radix (first factor major)."""

    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(d) for d in self.orders)
        if any(d < 1 for d in orders):
            raise InputError(f"cyclic orders must be >= 1, got {orders}")
        object.__setattr__(self, "orders", orders)

    @classmethod
    def parse(cls, text: str) -> "FiniteAbelianGroup":
        """CLI syntax ``"2,4"``."""
        try:
            return cls(tuple(int(x) for x in str(text).split(",") if x.strip()))
        except ValueError:
            raise InputError(f"cannot parse group {text!r}") from None

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(d) for d in self.orders)))

    def index(self, x: Sequence[int]) -> int:
        i = 0
        for xi, d in zip(x, self.orders):
            i = i * d + int(xi) % d
        return i

    def element(self, i: int) -> tuple[int, ...]:
        out = []
        for d in reversed(self.orders):
            out.append(i % d)
            i //= d
        return tuple(reversed(out))

    def zero(self) -> tuple[int, ...]:
        return tuple(0 for _ in self.orders)

    def add(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def neg(self, x) -> tuple[int, ...]:
        return tuple((-a) % d for a, d in zip(x, self.orders))

    def scale(self, n: int, x) -> tuple[int, ...]:
        return tuple((n * a) % d for a, d in zip(x, self.orders))

    def generator(self, i: int) -> tuple[int, ...]:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def __str__(self) -> str:
        return " x ".join(f"Z/{d}" for d in self.orders) or "0"


@dataclass(frozen=True)
class GroupHom:
    source: FiniteAbelianGroup
    target: FiniteAbelianGroup
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        imgs = tuple(tuple(int(a) % d for a, d in zip(x, self.target.orders)) for x in self.images)
        if len(imgs) != self.source.rank or any(len(x) != self.target.rank for x in self.images):
            raise InputError("one target element per source generator is required")
        for d, x in zip(self.source.orders, imgs):
            if self.target.scale(d, x) != self.target.zero():
                raise InputError(f"image {x} of a generator of order {d} has the wrong order")
        object.__setattr__(self, "images", imgs)

    def __call__(self, x) -> tuple[int, ...]:
        out = self.target.zero()
        for xi, img in zip(x, self.images):
            out = self.target.add(out, self.target.scale(xi, img))
        return out

    def compose(self, other: "GroupHom") -> "GroupHom":
        """``self . other``."""
        if other.target != self.source:
            raise InputError("group homs are not composable")
        return GroupHom(other.source, self.target, tuple(self(x) for x in other.images))


def all_group_homs(g: FiniteAbelianGroup, h: FiniteAbelianGroup) -> Iterator[GroupHom]:
    choices = [[y for y in h.elements() if h.scale(d, y) == h.zero()] for d in g.orders]
    for imgs in itertools.product(*choices):
        yield GroupHom(g, h, tuple(imgs))


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    n, factors, q = p - 1, [], 2
    while q * q <= n:
        if n % q == 0:
            factors.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        factors.append(n)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise AssertionError("no primitive root")


def roots_of_unity(k: Field, d: int) -> list:
    """All ``x`` in ``k`` with ``x^d = 1``, sorted."""
    if k.is_rational:
        return [k.scalar(1), k.scalar(-1)] if d % 2 == 0 else [k.scalar(1)]
    m = gcd(d, k.p - 1)
    z = pow(_primitive_root(k.p), (k.p - 1) // m, k.p)
    return sorted(pow(z, j, k.p) for j in range(m))


def characters(k: Field, g: FiniteAbelianGroup) -> list[np.ndarray]:
    """Homomorphisms ``G -> k^x`` as value vectors indexed by group elements."""
    out = []
    elems = g.elements()
    for zetas in itertools.product(*(roots_of_unity(k, d) for d in g.orders)):
        v = k.zeros(g.order)
        for x in elems:
            val = k.scalar(1)
            for z, xi in zip(zetas, x):
                val = k.mul(val, k.scalar(z) ** xi)
            v[g.index(x)] = k.scalar(val)
        out.append(v)
    return sorted(out, key=lambda v: tuple(v.tolist()))


def _element_name(g: FiniteAbelianGroup, x) -> str:
    if all(a == 0 for a in x):
        return "e"
    if g.rank == 1:
        return f"g^{x[0]}"
    return "g(" + ",".join(str(a) for a in x) + ")"


def group_hopf(k: Field, g) -> HopfAlgebra:
    """The group Hopf algebra ``kG``."""
    g = g if isinstance(g, FiniteAbelianGroup) else FiniteAbelianGroup(tuple(g))
    n = g.order
    elems = g.elements()
    mul = k.zeros((n, n, n))
    comul = k.zeros((n, n, n))
    s = k.zeros((n, n))
    one = k.scalar(1)
    for x in elems:
        i = g.index(x)
        comul[i, i, i] = one
        s[g.index(g.neg(x)), i] = one
        for y in elems:
            mul[i, g.index(y), g.index(g.add(x, y))] = one
    unit = k.zeros(n)
    unit[0] = one
    counit = k.array(np.ones(n, dtype=np.int64))
    eye = k.eye(n)
    meta = {
        "origin": "group_hopf",
        "group": list(g.orders),
        "known_group_likes": [list(eye[i]) for i in range(n)],
        "known_dual_group_likes": [list(v) for v in characters(k, g)],
    }
    h = HopfAlgebra(k, mul, unit, comul, counit, s, tuple(_element_name(g, x) for x in elems), meta)
    h.require_verified()
    return h


def function_hopf(k: Field, g) -> HopfAlgebra:
    """The function Hopf algebra ``k^G`` in the basis of delta functions."""
    g = g if isinstance(g, FiniteAbelianGroup) else FiniteAbelianGroup(tuple(g))
    n = g.order
    elems = g.elements()
    mul = k.zeros((n, n, n))
    comul = k.zeros((n, n, n))
    s = k.zeros((n, n))
    one = k.scalar(1)
    for x in elems:
        i = g.index(x)
        mul[i, i, i] = one
        s[g.index(g.neg(x)), i] = one
        for y in elems:
            comul[g.index(g.add(x, y)), i, g.index(y)] = one
    counit = k.zeros(n)
    counit[0] = one
    unit = k.array(np.ones(n, dtype=np.int64))
    eye = k.eye(n)
    meta = {
        "origin": "function_hopf",
        "group": list(g.orders),
        "known_group_likes": [list(v) for v in characters(k, g)],
        "known_dual_group_likes": [list(eye[i]) for i in range(n)],
    }
    names = tuple("delta_" + _element_name(g, x) for x in elems)
    h = HopfAlgebra(k, mul, unit, comul, counit, s, names, meta)
    h.require_verified()
    return h


def d_pair(h: HopfAlgebra) -> HopfAlgebra:
    """``D(A) = A (x) A^v``."""
    h.require_verified()
    out = tensor(h, dual(h))
    out.metadata["origin"] = f"d_pair({h.metadata.get('origin', '?')})"
    return out


# Basis (a, b1, b2, c1, c2) of F_3 + F_9 + F_9, with F_9 = F_3[w]/(w^2 + 1),
# b1 = (0,1,0), b2 = (0,w,0), c1 = (0,0,1), c2 = (0,0,w).
D1_NAMES = ("a", "b1", "b2", "c1", "c2")

_D1_COMUL = {
    "a": [(1, "a", "a"), (2, "b1", "b1"), (2, "b2", "b2"), (2, "c1", "c1"), (2, "c2", "c2")],
    "b1": [
        (1, "a", "b1"), (1, "b1", "a"), (2, "b1", "c1"), (2, "c1", "b1"),
        (1, "b2", "c2"), (1, "c2", "b2"), (2, "c1", "c1"), (1, "c2", "c2"),
    ],
    "b2": [
        (1, "a", "b2"), (1, "b2", "a"), (1, "b1", "c2"), (1, "c2", "b1"),
        (1, "b2", "c1"), (1, "c1", "b2"), (2, "c1", "c2"), (2, "c2", "c1"),
    ],
    "c1": [
        (1, "a", "c1"), (1, "c1", "a"), (2, "b1", "b1"), (1, "b2", "b2"),
        (2, "b1", "c1"), (2, "c1", "b1"), (2, "b2", "c2"), (2, "c2", "b2"),
    ],
    "c2": [
        (1, "a", "c2"), (1, "c2", "a"), (1, "b1", "b2"), (1, "b2", "b1"),
        (1, "b1", "c2"), (1, "c2", "b1"), (2, "b2", "c1"), (2, "c1", "b2"),
    ],
}


def appendix_d1() -> HopfAlgebra:
    """The 5-dimensional nontrivial bisemisimple Hopf algebra D1 over F_3."""
    k = Field(3)
    idx = {s: i for i, s in enumerate(D1_NAMES)}
    mul = k.zeros((5, 5, 5))
    mul[0, 0, 0] = 1
    for one, w in (("b1", "b2"), ("c1", "c2")):
        i, j = idx[one], idx[w]
        mul[i, i, i] = 1
        mul[i, j, j] = 1
        mul[j, i, j] = 1
        mul[j, j, i] = 2  # w^2 = -1
    comul = k.zeros((5, 5, 5))
    for src, terms in _D1_COMUL.items():
        for c, x, y in terms:
            comul[idx[src], idx[x], idx[y]] += c
    comul %= 3
    unit = k.array([1, 1, 0, 1, 0])
    counit = k.array([1, 0, 0, 0, 0])
    s = k.array(np.diag([1, 1, -1, 1, -1]))
    h = HopfAlgebra(k, mul, unit, comul, counit, s, D1_NAMES, {"origin": "D1"})
    h.require_verified()
    return h


def d1_swap_matrix() -> np.ndarray:
    """Permutation exchanging b1 <-> b2 and c1 <-> c2."""
    perm = [0, 2, 1, 4, 3]
    return Field(3).eye(5)[:, perm]


def appendix_d2() -> HopfAlgebra:
    h = transport_structure(appendix_d1(), d1_swap_matrix())
    h.metadata["origin"] = "D2"
    return h


def unit_hopf(k: Field) -> HopfAlgebra:
    return group_hopf(k, FiniteAbelianGroup((1,)))


def group_hom_to_morphism(phi: GroupHom, k: Field) -> HopfMorphism:
    """The Hopf map ``k(phi): kG -> kH``."""
    a, b = group_hopf(k, phi.source), group_hopf(k, phi.target)
    m = k.zeros((b.dim, a.dim))
    for x in phi.source.elements():
        m[phi.target.index(phi(x)), phi.source.index(x)] = 1
    return HopfMorphism(a, b, m)._mark_verified()


def _group_of(h: HopfAlgebra) -> FiniteAbelianGroup:
    if h.metadata.get("origin") != "group_hopf" or "group" not in h.metadata:
        raise InputError(f"{h!r} carries no group Hopf algebra metadata")
    return FiniteAbelianGroup(tuple(h.metadata["group"]))


def lift_to_group_hom(f: HopfMorphism) -> GroupHom:
    """Recover ``phi`` with ``k(phi) = f`` for a Hopf map between group algebras."""
    g, h = _group_of(f.source), _group_of(f.target)
    report = verify_morphism(f)
    if not report.ok:
        raise NotAHopfMorphism(f"not induced by a group map: fails {report.failures}")
    k = f.field
    images = {}
    for x in g.elements():
        col = f.matrix[:, g.index(x)]
        nz = np.flatnonzero(k.nonzero_mask(col))
        if len(nz) != 1 or col[nz[0]] != 1:
            raise NotAHopfMorphism(f"basis element {x} is not sent to a single group element")
        images[x] = h.element(int(nz[0]))
    phi = GroupHom(g, h, tuple(images[g.generator(i)] for i in range(g.rank)))
    for x in g.elements():
        if phi(x) != images[x]:
            raise NotAHopfMorphism(f"read-off map is not a homomorphism at {x}")
    return phi
