"""Real and complex Clifford algebras Cl(p, q) on bitmask-encoded blades.

A basis blade ``e^{a_1 ... a_k}`` (``a_1 < ... < a_k``) is stored as the integer
with bits ``a_1 - 1, ..., a_k - 1`` set; the empty mask is the identity ``e``.
Generators ``1..p`` square to ``+e`` and ``p+1..n`` square to ``-e``.

Multivectors are immutable sparse maps ``mask -> coefficient``.  Only exact
zeros are pruned, so the grade set of a result is never changed by rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Union

import numpy as np

from .errors import InputError

MAX_DIM = 16
# Dense Cayley tables are N x N; past this size products fall back to sparse loops.
DENSE_MAX_DIM = 10

REAL = "real"
COMPLEX = "complex"
FIELDS = (REAL, COMPLEX)

Scalar = Union[int, float, complex]


@dataclass(frozen=True, order=True)
class Signature:
    """Diagonal metric with ``p`` positive and ``q`` negative generators."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not isinstance(self.q, int):
            raise InputError(f"signature entries must be integers, got ({self.p!r}, {self.q!r})")
        if self.p < 0 or self.q < 0:
            raise InputError(f"signature ({self.p}, {self.q}) has a negative entry")
        if not 1 <= self.p + self.q <= MAX_DIM:
            raise InputError(f"dimension p+q={self.p + self.q} outside 1..{MAX_DIM}")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def size(self) -> int:
        """Number of basis blades, ``2**n``."""
        return 1 << self.n

    @property
    def negative_mask(self) -> int:
        """Bits of the generators squaring to ``-e``."""
        return ((1 << self.q) - 1) << self.p

    def metric(self, a: int) -> int:
        """Diagonal entry ``eta^{aa}`` for the 1-based generator index ``a``."""
        if not 1 <= a <= self.n:
            raise InputError(f"generator index {a} outside 1..{self.n}")
        return 1 if a <= self.p else -1

    @classmethod
    def all_for(cls, n: int) -> list["Signature"]:
        """Every signature with ``p + q = n``, ordered by decreasing ``p``."""
        if not 1 <= n <= MAX_DIM:
            raise InputError(f"dimension {n} outside 1..{MAX_DIM}")
        return [cls(p, n - p) for p in range(n, -1, -1)]

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


def rank(mask: int) -> int:
    return mask.bit_count()


def reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the concatenation ``e^A e^B`` into ascending order.

    The transposition count is the number of pairs ``(i in A, j in B)`` with
    ``i > j``.
    """
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


def _check_mask(mask: int, sig: Signature) -> None:
    if not isinstance(mask, (int, np.integer)) or mask < 0 or mask >= sig.size:
        raise InputError(f"blade mask {mask!r} out of range for n={sig.n}")


def blade_product(a: int, b: int, sig: Signature) -> tuple[int, int]:
    """Return ``(sign, mask)`` with ``e^A e^B = sign * e^{A xor B}``."""
    _check_mask(a, sig)
    _check_mask(b, sig)
    sign = reorder_sign(a, b)
    if (a & b & sig.negative_mask).bit_count() & 1:
        sign = -sign
    return sign, a ^ b


def _blade_sign(a: int, b: int, negative_mask: int) -> int:
    sign = reorder_sign(a, b)
    if (a & b & negative_mask).bit_count() & 1:
        sign = -sign
    return sign


def reversion_sign(k: int) -> int:
    """``(-1)**(k(k-1)/2)``: sign picked up when reversing ``k`` generators."""
    return -1 if (k * (k - 1) // 2) & 1 else 1


def blade_mask(indices: Iterable[int], n: int) -> int:
    """Mask of the blade with the given strictly ascending 1-based indices."""
    mask = 0
    last = 0
    for a in indices:
        if a <= last:
            raise InputError(f"generator indices must be strictly ascending, got {a} after {last}")
        if a > n:
            raise InputError(f"generator index {a} exceeds n={n}")
        mask |= 1 << (a - 1)
        last = a
    return mask


def blade_indices(mask: int) -> tuple[int, ...]:
    out = []
    a = 1
    while mask:
        if mask & 1:
            out.append(a)
        mask >>= 1
        a += 1
    return tuple(out)


@lru_cache(maxsize=32)
def cayley_table(sig: Signature) -> tuple[np.ndarray, np.ndarray]:
    """Dense product table ``(perm, sign)`` with ``perm[A, C] = A ^ C``.

    ``sign[A, C]`` is the sign of ``e^A e^{A ^ C}``, so the coefficient of
    ``e^C`` in ``UV`` is ``sum_A u[A] * sign[A, C] * v[A ^ C]``.
    """
    if sig.n > DENSE_MAX_DIM:
        raise InputError(f"dense tables are limited to n <= {DENSE_MAX_DIM}")
    size = sig.size
    a = np.arange(size, dtype=np.int64)[:, None]
    c = np.arange(size, dtype=np.int64)[None, :]
    b = a ^ c
    swaps = np.zeros((size, size), dtype=np.int64)
    for shift in range(1, sig.n):
        swaps += np.bitwise_count((a >> shift) & b)
    swaps += np.bitwise_count(a & b & sig.negative_mask)
    sign = np.where(swaps & 1, -1.0, 1.0)
    perm = np.broadcast_to(b, (size, size)).copy()
    perm.setflags(write=False)
    sign.setflags(write=False)
    return perm, sign


def dense_product(u: np.ndarray, v: np.ndarray, sig: Signature) -> np.ndarray:
    """Geometric product of two dense coefficient vectors."""
    perm, sign = cayley_table(sig)
    return u @ (sign * v[perm])


def _coerce(value: Scalar, field: str) -> Scalar:
    if field == REAL:
        if isinstance(value, complex):
            if value.imag != 0:
                raise InputError(f"complex coefficient {value} in a real-field multivector")
            value = value.real
        return float(value)
    return complex(value)


class Multivector:
    """Immutable element of ``Cl^R(p, q)`` or ``Cl^C(p, q)``."""

    __slots__ = ("_sig", "_field", "_coeffs")

    def __init__(
        self,
        signature: Signature,
        coeffs: Mapping[int, Scalar] | None = None,
        field: str = REAL,
    ):
        if field not in FIELDS:
            raise InputError(f"field must be one of {FIELDS}, got {field!r}")
        store: dict[int, Scalar] = {}
        for mask, value in (coeffs or {}).items():
            _check_mask(mask, signature)
            value = _coerce(value, field)
            if value != 0:
                store[int(mask)] = value
        self._sig = signature
        self._field = field
        self._coeffs = dict(sorted(store.items()))

    @classmethod
    def _trusted(cls, sig: Signature, field: str, coeffs: dict[int, Scalar]) -> "Multivector":
        obj = object.__new__(cls)
        obj._sig = sig
        obj._field = field
        obj._coeffs = {m: c for m, c in sorted(coeffs.items()) if c != 0}
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, sig: Signature, field: str = REAL) -> "Multivector":
        return cls(sig, {}, field)

    @classmethod
    def scalar(cls, sig: Signature, value: Scalar = 1, field: str = REAL) -> "Multivector":
        return cls(sig, {0: value}, field)

    @classmethod
    def blade(
        cls, sig: Signature, indices: Iterable[int], value: Scalar = 1, field: str = REAL
    ) -> "Multivector":
        return cls(sig, {blade_mask(indices, sig.n): value}, field)

    @classmethod
    def from_dense(cls, sig: Signature, values: np.ndarray, field: str = REAL) -> "Multivector":
        if values.shape != (sig.size,):
            raise InputError(f"dense vector must have shape ({sig.size},)")
        if field == REAL and np.iscomplexobj(values):
            if np.any(values.imag != 0):
                raise InputError("complex values in a real-field multivector")
            values = values.real
        conv = float if field == REAL else complex
        return cls._trusted(
            sig, field, {int(m): conv(values[m]) for m in np.flatnonzero(values)}
        )

    # -- accessors ----------------------------------------------------------

    @property
    def signature(self) -> Signature:
        return self._sig

    @property
    def field(self) -> str:
        return self._field

    @property
    def n(self) -> int:
        return self._sig.n

    @property
    def coeffs(self) -> Mapping[int, Scalar]:
        return MappingProxyType(self._coeffs)

    def __getitem__(self, mask: int) -> Scalar:
        return self._coeffs.get(mask, 0.0 if self._field == REAL else 0j)

    def __iter__(self) -> Iterator[tuple[int, Scalar]]:
        return iter(self._coeffs.items())

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def grades(self) -> frozenset[int]:
        return frozenset(m.bit_count() for m in self._coeffs)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self._sig.size, dtype=float if self._field == REAL else complex)
        for m, c in self._coeffs.items():
            out[m] = c
        return out

    def as_complex(self) -> "Multivector":
        if self._field == COMPLEX:
            return self
        return Multivector._trusted(self._sig, COMPLEX, {m: complex(c) for m, c in self._coeffs.items()})

    def norm_inf(self) -> float:
        return max((abs(c) for c in self._coeffs.values()), default=0.0)

    def norm1(self) -> float:
        """Sum of coefficient moduli; submultiplicative under the product."""
        return math.fsum(abs(c) for c in self._coeffs.values())

    def allclose(self, other: "Multivector", tol: float = 1e-12) -> bool:
        _check_compatible(self, other, allow_field_mix=True)
        return (self - other).norm_inf() <= tol

    # -- arithmetic ---------------------------------------------------------

    def _combine(self, other: "Multivector", factor: int) -> "Multivector":
        field = _check_compatible(self, other, allow_field_mix=True)
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            out[m] = out.get(m, 0) + factor * c
        return Multivector._trusted(self._sig, field, out)

    def __add__(self, other: object) -> "Multivector":
        if isinstance(other, Multivector):
            return self._combine(other, 1)
        if isinstance(other, (int, float, complex)):
            return self + Multivector.scalar(self._sig, other, _field_for(self._field, other))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: object) -> "Multivector":
        if isinstance(other, Multivector):
            return self._combine(other, -1)
        if isinstance(other, (int, float, complex)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other: object) -> "Multivector":
        return (-self) + other

    def __neg__(self) -> "Multivector":
        return Multivector._trusted(self._sig, self._field, {m: -c for m, c in self._coeffs.items()})

    def __mul__(self, other: object) -> "Multivector":
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, (int, float, complex)):
            field = _field_for(self._field, other)
            conv = float if field == REAL else complex
            return Multivector._trusted(
                self._sig, field, {m: conv(c * other) for m, c in self._coeffs.items()}
            )
        return NotImplemented

    def __rmul__(self, other: object) -> "Multivector":
        if isinstance(other, (int, float, complex)):
            return self * other
        return NotImplemented

    def __truediv__(self, other: object) -> "Multivector":
        if isinstance(other, (int, float, complex)):
            return self * (1 / other)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self._sig == other._sig and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._sig, tuple(self._coeffs.items())))

    def __repr__(self) -> str:
        from .textfmt import format_multivector

        return f"Multivector({format_multivector(self)!r}, sig={self._sig}, field={self._field})"

    def __str__(self) -> str:
        from .textfmt import format_multivector

        return format_multivector(self)


def _field_for(field: str, scalar: Scalar) -> str:
    if field == REAL and isinstance(scalar, complex) and scalar.imag != 0:
        raise InputError("multiplying a real-field multivector by a non-real scalar; lift it first")
    return field


def _check_compatible(u: Multivector, v: Multivector, allow_field_mix: bool = False) -> str:
    if not isinstance(u, Multivector) or not isinstance(v, Multivector):
        raise InputError("operands must be Multivector instances")
    if u.signature != v.signature:
        raise InputError(f"signature mismatch: {u.signature} vs {v.signature}")
    if u.field != v.field:
        if not allow_field_mix:
            raise InputError(f"field mismatch: {u.field} vs {v.field}")
        return COMPLEX
    return u.field


def geometric_product(u: Multivector, v: Multivector) -> Multivector:
    """Bilinear extension of :func:`blade_product`."""
    field = _check_compatible(u, v)
    neg = u.signature.negative_mask
    out: dict[int, Scalar] = {}
    for a, x in u._coeffs.items():
        for b, y in v._coeffs.items():
            c = a ^ b
            term = x * y if _blade_sign(a, b, neg) > 0 else -(x * y)
            out[c] = out.get(c, 0) + term
    return Multivector._trusted(u.signature, field, out)


def commutator(u: Multivector, v: Multivector) -> Multivector:
    """``[U, V] = UV - VU``."""
    field = _check_compatible(u, v)
    neg = u.signature.negative_mask
    out: dict[int, Scalar] = {}
    for a, x in u._coeffs.items():
        for b, y in v._coeffs.items():
            s1 = _blade_sign(a, b, neg)
            if s1 != _blade_sign(b, a, neg):
                c = a ^ b
                out[c] = out.get(c, 0) + 2 * s1 * x * y
    return Multivector._trusted(u.signature, field, out)


def anticommutator(u: Multivector, v: Multivector) -> Multivector:
    """``{U, V} = UV + VU``."""
    field = _check_compatible(u, v)
    neg = u.signature.negative_mask
    out: dict[int, Scalar] = {}
    for a, x in u._coeffs.items():
        for b, y in v._coeffs.items():
            s1 = _blade_sign(a, b, neg)
            if s1 == _blade_sign(b, a, neg):
                c = a ^ b
                out[c] = out.get(c, 0) + 2 * s1 * x * y
    return Multivector._trusted(u.signature, field, out)


OPERATIONS = {
    "product": geometric_product,
    "commutator": commutator,
    "anticommutator": anticommutator,
}


def apply_operation(op: str, u: Multivector, v: Multivector) -> Multivector:
    try:
        return OPERATIONS[op](u, v)
    except KeyError:
        raise InputError(f"unknown operation {op!r}") from None


def grade_project(u: Multivector, k: int) -> Multivector:
    if not 0 <= k <= u.n:
        raise InputError(f"rank {k} outside 0..{u.n}")
    return Multivector._trusted(
        u.signature, u.field, {m: c for m, c in u._coeffs.items() if m.bit_count() == k}
    )


def quaternion_type_of(u: Multivector) -> frozenset[int]:
    """Residues mod 4 of the occupied ranks; the zero element gives the empty set."""
    return frozenset(m.bit_count() % 4 for m in u._coeffs)


def type_project(u: Multivector, residue: int) -> Multivector:
    if residue not in (0, 1, 2, 3):
        raise InputError(f"quaternion type residue must be 0..3, got {residue}")
    return Multivector._trusted(
        u.signature, u.field, {m: c for m, c in u._coeffs.items() if m.bit_count() % 4 == residue}
    )


def clifford_conjugate(u: Multivector) -> Multivector:
    """Reverse every blade and complex-conjugate every coefficient."""
    out = {}
    for m, c in u._coeffs.items():
        if u.field == COMPLEX:
            c = c.conjugate()
        out[m] = c if reversion_sign(m.bit_count()) > 0 else -c
    return Multivector._trusted(u.signature, u.field, out)
