"""Exact dense linear algebra over prime fields and the rationals.

Prime-field matrices are ``int64`` numpy arrays holding residues in ``[0, p)``.
Rational matrices are ``object`` arrays of :class:`fractions.Fraction`.  Every
function here takes the :class:`Field` explicitly; arrays never carry it.

Ties are always broken towards the lowest index (first nonzero pivot, free
variables set to zero) so results are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, FieldMismatch, InputError, SingularMatrix

_MAX_PRIME = 2**31
_FLOAT_EXACT = 2**53
_INT_HEADROOM = 2**62
_SMALL_PRODUCT = 4096


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.4e14."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _fraction(x) -> Fraction:
    if isinstance(x, np.ndarray) and x.ndim == 0:
        x = x.item()
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (bool, np.bool_)):
        raise InputError(f"not a rational scalar: {x!r}")
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise InputError(f"not an exact rational scalar: {x!r}")


@dataclass(frozen=True)
class Field:
    """A ground field: ``Field(p)`` is F_p, ``Field(None)`` is Q."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, (int, np.integer)) or isinstance(self.p, bool):
                raise InputError(f"prime must be an integer, got {self.p!r}")
            if not (2 <= self.p < _MAX_PRIME) or not is_prime(int(self.p)):
                raise InputError(f"{self.p} is not a prime below 2^31")
            object.__setattr__(self, "p", int(self.p))

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def rational(cls) -> "Field":
        return cls(None)

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F_{self.p}"

    # -- scalars -------------------------------------------------------------

    def scalar(self, x):
        if self.p is None:
            return _fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise InputError(f"{x} has no image in {self}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self.scalar(Fraction(x))
        return int(x) % self.p

    def inv(self, x):
        if self.p is None:
            x = _fraction(x)
            if x == 0:
                raise ZeroDivisionError("inverse of 0")
            return 1 / x
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(x, -1, self.p)

    # -- arrays --------------------------------------------------------------

    def array(self, data) -> np.ndarray:
        """Coerce ``data`` to a reduced array over this field (always a copy)."""
        if self.p is None:
            a = np.asarray(data, dtype=object)
            out = np.empty(a.shape, dtype=object)
            out.flat = [_fraction(x) for x in a.flat]
            return out
        a = np.asarray(data)
        if a.dtype == object or a.dtype.kind not in "iub":
            out = np.empty(a.shape, dtype=np.int64)
            out.flat = [self.scalar(x) for x in a.flat]
            return out
        return np.mod(a.astype(np.int64), self.p)

    def zeros(self, shape) -> np.ndarray:
        if self.p is None:
            out = np.empty(shape, dtype=object)
            out.fill(Fraction(0))
            return out
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return self.array(np.eye(n, dtype=np.int64))

    def reduce(self, a: np.ndarray) -> np.ndarray:
        if self.p is None:
            return a
        return np.mod(a, self.p)

    def neg(self, a):
        return self.reduce(-a)

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def mul(self, a, b):
        return self.reduce(a * b)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Exact product ``a @ b`` (2-d or stacked), overflow-safe for F_p."""
        if a.shape[-1] != b.shape[0 if b.ndim == 1 else -2]:
            raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
        if self.p is None:
            if a.size == 0 or b.size == 0:
                shape = np.empty(a.shape, dtype=np.int8) @ np.empty(b.shape, dtype=np.int8)
                return self.zeros(np.shape(shape))
            return self.array(np.dot(a, b) if a.ndim <= 2 and b.ndim <= 2 else a @ b)
        k = a.shape[-1]
        sq = (self.p - 1) ** 2
        if k * sq < _INT_HEADROOM and a.size * (b.shape[-1] if b.ndim > 1 else 1) <= _SMALL_PRODUCT:
            # small products: plain int64 avoids the float round trip
            return np.mod(a.astype(np.int64, copy=False) @ b.astype(np.int64, copy=False), self.p)
        if k * sq < _FLOAT_EXACT:
            # integer partial sums stay below 2^53, so BLAS doubles are exact
            r = a.astype(np.float64) @ b.astype(np.float64)
            return np.mod(np.rint(r).astype(np.int64), self.p)
        step = max(1, _INT_HEADROOM // sq)
        acc = None
        for s in range(0, k, step):
            part = a[..., s : s + step] @ (b[s : s + step] if b.ndim == 1 else b[..., s : s + step, :])
            acc = part % self.p if acc is None else (acc + part % self.p) % self.p
        return acc

    def outer(self, u, v) -> np.ndarray:
        return self.reduce(np.multiply.outer(u, v))

    def kron(self, a, b) -> np.ndarray:
        return self.reduce(np.kron(a, b))

    def nonzero_mask(self, a: np.ndarray) -> np.ndarray:
        return np.asarray(a != 0, dtype=bool)

    def is_zero(self, a) -> bool:
        return not np.any(self.nonzero_mask(np.asarray(a)))

    def equal(self, a, b) -> bool:
        a, b = np.asarray(a), np.asarray(b)
        return a.shape == b.shape and bool(np.all(a == b))

    # -- serialisation -------------------------------------------------------

    def to_json(self, x):
        if self.p is None:
            x = _fraction(x)
            return f"{x.numerator}/{x.denominator}"
        return int(x)

    def array_to_json(self, a: np.ndarray):
        a = np.asarray(a)
        if a.ndim == 0:
            return self.to_json(a.item())
        return [self.array_to_json(row) for row in a]

    def spec_json(self) -> dict:
        return {"kind": "rational"} if self.p is None else {"kind": "prime", "p": self.p}

    @classmethod
    def from_json(cls, obj) -> "Field":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise InputError(f"bad field spec {obj!r}")
        if obj["kind"] == "rational":
            return cls(None)
        if obj["kind"] == "prime":
            return cls(obj.get("p"))
        raise InputError(f"unknown field kind {obj['kind']!r}")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """CLI syntax: ``3`` or ``F3`` for F_3, ``Q`` for the rationals."""
        t = str(text).strip().upper().replace("F_", "").replace("F", "")
        if t == "Q":
            return cls(None)
        try:
            return cls(int(t))
        except ValueError:
            raise InputError(f"cannot parse field {text!r}") from None


def check_same_field(*fields: Field) -> Field:
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldMismatch(f"{first} != {f}")
    return first


# -- row reduction -----------------------------------------------------------


def rref(k: Field, m) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form with zero rows dropped, plus pivot columns."""
    a = k.array(m)
    if a.ndim != 2:
        raise DimensionMismatch("rref needs a 2-d matrix")
    rows, cols = a.shape
    block = max(4 * cols, 64)
    if rows <= 2 * block:
        return _rref_inplace(k, a)
    # tall systems: the rank is at most cols, so fold rows in block by block
    acc, piv = _rref_inplace(k, a[:block])
    for start in range(block, rows, block):
        chunk = a[start : start + block]
        if not k.nonzero_mask(chunk).any():
            continue
        acc, piv = _rref_inplace(k, np.vstack([acc, chunk]))
    return acc, piv


def _rref_inplace(k: Field, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(k.nonzero_mask(a[r:, c]))
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = k.mul(a[r], k.inv(a[r, c]))
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(k.nonzero_mask(col))
        if hit.size:
            a[hit] = k.sub(a[hit], k.outer(col[hit], a[r]))
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(k: Field, m) -> int:
    return len(rref(k, m)[1])


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of ``k^ambient_dim`` held as an RREF basis (rows)."""

    field: Field
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple[int, ...] = dc_field(default=())

    @classmethod
    def span(cls, k: Field, vectors, ambient_dim: int) -> "Subspace":
        v = k.array(vectors) if len(vectors) else k.zeros((0, ambient_dim))
        v = v.reshape(-1, ambient_dim)
        basis, piv = rref(k, v)
        return cls(k, ambient_dim, basis, tuple(piv))

    @classmethod
    def zero(cls, k: Field, n: int) -> "Subspace":
        return cls(k, n, k.zeros((0, n)), ())

    @classmethod
    def full(cls, k: Field, n: int) -> "Subspace":
        return cls(k, n, k.eye(n), tuple(range(n)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def _check(self, other: "Subspace") -> None:
        check_same_field(self.field, other.field)
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(f"ambient {self.ambient_dim} != {other.ambient_dim}")

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of ``v`` (a vector or columns of a matrix) in the basis.

        Only meaningful for members; pair with :meth:`contains`.
        """
        v = np.asarray(v)
        return v[list(self.pivots)]

    def contains(self, v) -> bool:
        v = self.field.array(v)
        if v.shape[0] != self.ambient_dim:
            raise DimensionMismatch("vector length != ambient dimension")
        recon = self.field.matmul(self.basis.T, self.coordinates(v))
        return self.field.equal(recon, v)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return other.dim == 0 or self.contains(other.basis.T)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, np.vstack([self.basis, other.basis]), self.ambient_dim)

    def annihilator(self) -> "Subspace":
        return kernel_basis(self.field, self.basis if self.dim else self.field.zeros((0, self.ambient_dim)))

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        constraints = np.vstack([self.annihilator().basis, other.annihilator().basis])
        if constraints.shape[0] == 0:
            return Subspace.full(self.field, self.ambient_dim)
        return kernel_basis(self.field, constraints)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and self.field.equal(self.basis, other.basis)
        )

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, field={self.field})"


def subspace_ops(u: Subspace, v: Subspace) -> dict:
    """Sum, intersection, containment and equality of two subspaces."""
    return {
        "sum": u + v,
        "intersection": u.intersection(v),
        "contains": u.contains_subspace(v),
        "equal": u == v,
    }


def kernel_basis(k: Field, m) -> Subspace:
    """Null space ``{v : m v = 0}``."""
    a = k.array(m)
    cols = a.shape[1]
    r, piv = rref(k, a)
    free = [c for c in range(cols) if c not in set(piv)]
    vecs = k.zeros((len(free), cols))
    for row, f in enumerate(free):
        vecs[row, f] = k.scalar(1)
        for i, pc in enumerate(piv):
            vecs[row, pc] = k.neg(r[i, f])
    return Subspace.span(k, vecs, cols)


def image_basis(k: Field, m) -> Subspace:
    """Column space of ``m`` as a subspace of the codomain."""
    a = k.array(m)
    return Subspace.span(k, a.T, a.shape[0])


def solve(k: Field, m, b) -> Optional[np.ndarray]:
    """Some ``x`` with ``m x = b`` (free variables zero), or ``None``.

    ``b`` may be a vector or a matrix of right-hand sides; a matrix is solved
    column by column and ``None`` is returned if any column is inconsistent.
    """
    a = k.array(m)
    rhs = k.array(b)
    vector = rhs.ndim == 1
    if vector:
        rhs = rhs.reshape(-1, 1)
    if rhs.shape[0] != a.shape[0]:
        raise DimensionMismatch(f"rhs length {rhs.shape[0]} != rows {a.shape[0]}")
    cols = a.shape[1]
    r, piv = rref(k, np.hstack([a, rhs]))
    if piv and piv[-1] >= cols:
        return None
    x = k.zeros((cols, rhs.shape[1]))
    for i, pc in enumerate(piv):
        x[pc] = r[i, cols:]
    return x[:, 0] if vector else x


def inverse(k: Field, m) -> np.ndarray:
    a = k.array(m)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionMismatch("inverse of a non-square matrix")
    r, piv = rref(k, np.hstack([a, k.eye(n)]))
    if piv[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return r[:n, n:]


def is_invertible(k: Field, m) -> bool:
    a = k.array(m)
    return a.shape[0] == a.shape[1] and rank(k, a) == a.shape[0]


def quotient_with_section(s: Subspace) -> tuple[np.ndarray, np.ndarray]:
    """Projection ``k^n -> k^n / s`` and a linear right inverse.

    The quotient is coordinatised by the non-pivot coordinates of ``s``;
    ``projection @ section`` is the identity and ``ker(projection) == s``.
    """
    k, n = s.field, s.ambient_dim
    piv = list(s.pivots)
    rest = [c for c in range(n) if c not in set(piv)]
    proj = k.zeros((len(rest), n))
    for row, c in enumerate(rest):
        proj[row, c] = k.scalar(1)
    if piv:
        proj[:, piv] = k.neg(s.basis[:, rest].T)
    section = k.zeros((n, len(rest)))
    for col, c in enumerate(rest):
        section[c, col] = k.scalar(1)
    return proj, section


def as_vectors(k: Field, vectors: Iterable[Sequence], n: int) -> np.ndarray:
    vs = list(vectors)
    return k.array(vs).reshape(len(vs), n) if vs else k.zeros((0, n))
