"""Graded subspaces ``sum_k a_k Cl_k`` and their closure under products.

A subspace is described rank by rank: each rank is absent, present with real
coefficients, with purely imaginary coefficients, or with arbitrary complex
coefficients.  Closure of such a subspace under a bilinear operation depends
only on which result ranks the operation can produce from two blades of
given ranks, so every check reduces to an interaction table over ranks.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .algebra import COMPLEX, FIELDS, MAX_DIM, REAL, Signature, _blade_sign
from .errors import InputError, LimitError, ParseError

OPS = ("product", "commutator", "anticommutator")
OP_ALIASES = {
    "product": "product",
    "prod": "product",
    "*": "product",
    "commutator": "commutator",
    "comm": "commutator",
    "anticommutator": "anticommutator",
    "anti": "anticommutator",
}

BLADE_LEVEL_MAX_DIM = 8
ENUMERATION_CAP = {REAL: 13, COMPLEX: 10}
THREADS_ENV = "CLIFFORD_TYPIFY_THREADS"


def canonical_op(op: str) -> str:
    try:
        return OP_ALIASES[op]
    except KeyError:
        raise InputError(f"unknown operation {op!r}; expected one of {sorted(OP_ALIASES)}") from None


class Domain(enum.IntEnum):
    """Coefficient domain of one rank; the value doubles as a bitmask."""

    ABSENT = 0
    REAL = 1
    IMAG = 2
    FULL = 3

    @property
    def code(self) -> str:
        return "-ric"[self]

    @classmethod
    def from_code(cls, code: str) -> "Domain":
        try:
            return cls("-ric".index(code))
        except ValueError:
            raise ParseError(f"unknown domain code {code!r}; expected one of - r i c") from None

    def times(self, other: "Domain") -> "Domain":
        """Domain of products ``x * y`` with ``x`` in self and ``y`` in other."""
        if not self or not other:
            return Domain.ABSENT
        if self is Domain.FULL or other is Domain.FULL:
            return Domain.FULL
        return Domain.REAL if self == other else Domain.IMAG

    def contains(self, other: "Domain") -> bool:
        return (self | other) == self

    def join(self, other: "Domain") -> "Domain":
        return Domain(self | other)

    def meet(self, other: "Domain") -> "Domain":
        return Domain(self & other)


def wc_domain(k: int) -> Domain:
    """Coefficient domain of rank ``k`` in the Lie algebra ``u* = -u``."""
    return Domain.IMAG if k % 4 in (0, 1) else Domain.REAL


@dataclass(frozen=True, order=True)
class GradedSubspaceSpec:
    """A rank-direct-sum subspace; ``domains[k]`` is the domain of rank ``k``."""

    domains: tuple[Domain, ...]
    field: str = REAL

    def __post_init__(self) -> None:
        if self.field not in FIELDS:
            raise InputError(f"field must be one of {FIELDS}, got {self.field!r}")
        if not 1 <= len(self.domains) - 1 <= MAX_DIM:
            raise InputError(f"spec must cover ranks 0..n with 1 <= n <= {MAX_DIM}")
        object.__setattr__(self, "domains", tuple(Domain(d) for d in self.domains))
        if self.field == REAL and any(d not in (Domain.ABSENT, Domain.REAL) for d in self.domains):
            raise InputError("real-field specs may only use absent or real domains")

    @property
    def n(self) -> int:
        return len(self.domains) - 1

    @classmethod
    def from_ranks(
        cls, n: int, ranks: Mapping[int, Domain | str] | Iterable[int], field: str = REAL
    ) -> "GradedSubspaceSpec":
        """Build from ``{rank: domain}``; a plain iterable of ranks means real."""
        doms = [Domain.ABSENT] * (n + 1)
        if not isinstance(ranks, Mapping):
            ranks = {k: Domain.REAL for k in ranks}
        for k, d in ranks.items():
            if not 0 <= k <= n:
                raise InputError(f"rank {k} outside 0..{n}")
            doms[k] = Domain.from_code(d) if isinstance(d, str) else Domain(d)
        return cls(tuple(doms), field)

    @classmethod
    def parse(cls, line: str) -> "GradedSubspaceSpec":
        """Parse ``"n=4 field=complex 0:i 1:- 2:r 3:- 4:i"``."""
        n = None
        fld = REAL
        ranks: dict[int, Domain] = {}
        for part in line.split():
            key, sep, value = part.partition("=") if "=" in part else part.partition(":")
            if not sep:
                raise ParseError(f"malformed spec field {part!r}")
            if sep == "=":
                if key == "n":
                    n = int(value)
                elif key == "field":
                    fld = {"r": REAL, "c": COMPLEX}.get(value, value)
                else:
                    raise ParseError(f"unknown spec key {key!r}")
            else:
                try:
                    k = int(key)
                except ValueError:
                    raise ParseError(f"rank must be an integer in {part!r}") from None
                if k in ranks:
                    raise ParseError(f"rank {k} given twice")
                ranks[k] = Domain.from_code(value)
        if n is None:
            n = max(ranks, default=-1)
            if n < 1:
                raise ParseError("spec line needs n=N or at least one rank")
        try:
            return cls.from_ranks(n, ranks, fld)
        except InputError as exc:
            raise ParseError(str(exc)) from None

    def to_line(self) -> str:
        body = " ".join(f"{k}:{d.code}" for k, d in enumerate(self.domains))
        return f"n={self.n} field={self.field} {body}"

    def label(self) -> str:
        """Compact human notation, e.g. ``0 + i1 + c2`` (``c`` = real + imaginary)."""
        prefix = {Domain.REAL: "", Domain.IMAG: "i", Domain.FULL: "c"}
        parts = [f"{prefix[d]}{k}" for k, d in enumerate(self.domains) if d]
        return " + ".join(parts) if parts else "0"

    def present(self) -> tuple[int, ...]:
        return tuple(k for k, d in enumerate(self.domains) if d)

    def is_empty(self) -> bool:
        return not any(self.domains)

    def __getitem__(self, k: int) -> Domain:
        return self.domains[k]

    def replace(self, k: int, domain: Domain) -> "GradedSubspaceSpec":
        doms = list(self.domains)
        doms[k] = domain
        return GradedSubspaceSpec(tuple(doms), self.field)

    def meet(self, other: "GradedSubspaceSpec") -> "GradedSubspaceSpec":
        return GradedSubspaceSpec(
            tuple(a.meet(b) for a, b in zip(self.domains, other.domains)), self.field
        )

    def contains(self, other: "GradedSubspaceSpec") -> bool:
        return self.n == other.n and all(a.contains(b) for a, b in zip(self.domains, other.domains))

    def with_field(self, field: str) -> "GradedSubspaceSpec":
        return GradedSubspaceSpec(self.domains, field)

    def in_wc_pattern(self) -> bool:
        return all(d in (Domain.ABSENT, wc_domain(k)) for k, d in enumerate(self.domains))


# -- rank arithmetic ----------------------------------------------------------


def _check_ranks(n: int, *ranks: int) -> None:
    if not 1 <= n <= MAX_DIM:
        raise InputError(f"dimension {n} outside 1..{MAX_DIM}")
    for k in ranks:
        if not 0 <= k <= n:
            raise InputError(f"rank {k} outside 0..{n}")


def rank_product_range(k: int, l: int, n: int) -> tuple[int, ...]:
    """Ranks that a product of elements of ranks ``k`` and ``l`` can occupy."""
    _check_ranks(n, k, l)
    k, l = max(k, l), min(k, l)
    top = k + l if k + l <= n else 2 * n - k - l
    return tuple(range(k - l, top + 1, 2))


def grade_interaction(k: int, l: int, n: int, op: str) -> tuple[int, ...]:
    """Result ranks of ``op`` on two blades of ranks ``k`` and ``l``.

    Blades sharing ``j`` generators give rank ``k + l - 2j`` and satisfy
    ``AB = (-1)**(kl - j) BA``, so the commutator survives exactly when
    ``kl - j`` is odd and the anticommutator when it is even.  ``j`` ranges
    over ``max(0, k + l - n) .. min(k, l)``.
    """
    _check_ranks(n, k, l)
    op = canonical_op(op)
    out = []
    for j in range(max(0, k + l - n), min(k, l) + 1):
        commute = (k * l - j) % 2 == 0
        if op == "product" or (op == "commutator") != commute:
            out.append(k + l - 2 * j)
    return tuple(sorted(out))


def _witness(k: int, l: int, j: int) -> tuple[int, int]:
    """Blades of ranks ``k``, ``l`` overlapping in exactly ``j`` generators."""
    a = (1 << k) - 1
    b = ((1 << l) - 1) << (k - j)
    return a, b


InteractionTable = dict[tuple[int, int], dict[int, tuple[int, int]]]


@lru_cache(maxsize=64)
def blade_interaction_table(sig: Signature, op: str) -> InteractionTable:
    """Brute force over all blade pairs: ``(k, l) -> {m: first witness (A, B)}``."""
    op = canonical_op(op)
    if sig.n > BLADE_LEVEL_MAX_DIM:
        raise LimitError(f"blade-level tables are limited to n <= {BLADE_LEVEL_MAX_DIM}")
    neg = sig.negative_mask
    table: InteractionTable = {(k, l): {} for k in range(sig.n + 1) for l in range(sig.n + 1)}
    for a in range(sig.size):
        k = a.bit_count()
        for b in range(sig.size):
            if op == "product":
                nonzero = True
            else:
                same = _blade_sign(a, b, neg) == _blade_sign(b, a, neg)
                nonzero = same if op == "anticommutator" else not same
            if nonzero:
                cell = table[(k, b.bit_count())]
                m = (a ^ b).bit_count()
                if m not in cell:
                    cell[m] = (a, b)
    return {key: dict(sorted(cell.items())) for key, cell in table.items()}


@lru_cache(maxsize=64)
def rule_interaction_table(n: int, op: str) -> InteractionTable:
    """Interaction table from :func:`grade_interaction`, with constructed witnesses."""
    op = canonical_op(op)
    table: InteractionTable = {}
    for k in range(n + 1):
        for l in range(n + 1):
            cell = {}
            for m in grade_interaction(k, l, n, op):
                cell[m] = _witness(k, l, (k + l - m) // 2)
            table[(k, l)] = cell
    return table


def interaction_table(n: int, op: str, sig: Signature | None = None) -> InteractionTable:
    """Blade-level table for ``n <= 8``, the parity rule above that."""
    op = canonical_op(op)
    if sig is not None and sig.n != n:
        raise InputError(f"signature {sig} does not have n={n}")
    if n <= BLADE_LEVEL_MAX_DIM:
        return blade_interaction_table(sig or Signature(n, 0), op)
    _check_ranks(n)
    return rule_interaction_table(n, op)


# -- closure ------------------------------------------------------------------


@dataclass(frozen=True)
class ClosureViolation:
    k: int
    l: int
    m: int
    required: Domain
    available: Domain
    witness: tuple[int, int]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "l": self.l,
            "m": self.m,
            "required": self.required.code,
            "available": self.available.code,
            "witness": list(self.witness),
        }


@dataclass
class ClosureReport:
    spec: GradedSubspaceSpec
    op: str
    violations: list[ClosureViolation] = field(default_factory=list)

    @property
    def closed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_line(),
            "op": self.op,
            "closed": self.closed,
            "violations": [v.to_dict() for v in self.violations],
        }


def _violations(doms: Sequence[Domain], table: InteractionTable) -> Iterator[ClosureViolation]:
    present = [k for k, d in enumerate(doms) if d]
    for k in present:
        for l in present:
            required = doms[k].times(doms[l])
            for m, witness in table[(k, l)].items():
                if not doms[m].contains(required):
                    yield ClosureViolation(k, l, m, required, doms[m], witness)


def closure_check(spec: GradedSubspaceSpec, op: str, sig: Signature | None = None) -> ClosureReport:
    """Check that ``op`` maps ``spec x spec`` into ``spec``.

    Every violation names the offending ranks, the coefficient domain the
    result needs, the domain the spec offers there, and a witness blade pair.
    """
    op = canonical_op(op)
    if sig is not None and sig.n != spec.n:
        raise InputError(f"spec has n={spec.n} but signature {sig} has n={sig.n}")
    table = interaction_table(spec.n, op, sig)
    return ClosureReport(spec, op, list(_violations(spec.domains, table)))


def is_closed(spec: GradedSubspaceSpec, op: str, sig: Signature | None = None) -> bool:
    op = canonical_op(op)
    table = interaction_table(spec.n, op, sig)
    return next(_violations(spec.domains, table), None) is None


def product_closure(spec: GradedSubspaceSpec, sig: Signature | None = None, with_identity: bool = True) -> GradedSubspaceSpec:
    """Smallest product-closed spec containing ``spec`` (and real scalars)."""
    doms = list(spec.domains)
    if with_identity:
        doms[0] = doms[0].join(Domain.REAL)
    table = interaction_table(spec.n, "product", sig)
    changed = True
    while changed:
        changed = False
        present = [k for k, d in enumerate(doms) if d]
        for k in present:
            for l in present:
                req = doms[k].times(doms[l])
                for m in table[(k, l)]:
                    joined = doms[m].join(req)
                    if joined != doms[m]:
                        doms[m] = joined
                        changed = True
    fld = COMPLEX if any(d in (Domain.IMAG, Domain.FULL) for d in doms) else spec.field
    return GradedSubspaceSpec(tuple(doms), fld)


# -- enumeration --------------------------------------------------------------

PATTERNS = (None, "wc", "types")


def _choices(n: int, field: str, pattern: str | None) -> list[tuple[Domain, ...]]:
    if field == REAL:
        base = (Domain.ABSENT, Domain.REAL)
        if pattern == "wc":
            raise InputError("the wc pattern needs the complex field")
        return [base] * (n + 1)
    if pattern == "wc":
        return [(Domain.ABSENT, wc_domain(k)) for k in range(n + 1)]
    return [tuple(Domain)] * (n + 1)


def _constraints(n: int, table: InteractionTable) -> list[list[tuple[int, int, int]]]:
    """Group the triples ``(k, l, m)`` by the largest rank among them."""
    by_top: list[list[tuple[int, int, int]]] = [[] for _ in range(n + 1)]
    for (k, l), cell in table.items():
        for m in cell:
            by_top[max(k, l, m)].append((k, l, m))
    return by_top


def _search(
    n: int,
    choices: list[tuple[Domain, ...]],
    by_top: list[list[tuple[int, int, int]]],
    prefix: tuple[Domain, ...],
    type_uniform: bool,
) -> list[tuple[Domain, ...]]:
    found: list[tuple[Domain, ...]] = []
    doms: list[Domain] = list(prefix) + [Domain.ABSENT] * (n + 1 - len(prefix))

    def consistent(r: int) -> bool:
        for k, l, m in by_top[r]:
            if doms[k] and doms[l] and not doms[m].contains(doms[k].times(doms[l])):
                return False
        return True

    for r in range(len(prefix)):
        if not consistent(r):
            return found

    def walk(r: int) -> None:
        if r > n:
            found.append(tuple(doms))
            return
        options = choices[r]
        if type_uniform and r >= 4:
            options = (doms[r - 4],)
        for d in options:
            doms[r] = d
            if consistent(r):
                walk(r + 1)
        doms[r] = Domain.ABSENT

    walk(len(prefix))
    return found


def _search_job(args) -> list[tuple[Domain, ...]]:
    return _search(*args)


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{THREADS_ENV} must be an integer >= 1, got {raw!r}") from None
    if value < 1:
        raise InputError(f"{THREADS_ENV} must be an integer >= 1, got {raw!r}")
    return value


def enumeration_cap(field: str, pattern: str | None = None) -> int:
    """Largest ``n`` accepted by :func:`enumerate_closed`.

    The wc pattern leaves two choices per rank, like the real field.
    """
    return ENUMERATION_CAP[REAL if pattern == "wc" else field]


def enumerate_closed(
    n: int,
    op: str,
    field: str = REAL,
    pattern: str | None = None,
    sig: Signature | None = None,
    workers: int | None = None,
) -> list[GradedSubspaceSpec]:
    """All nonempty rank-direct-sum specs closed under ``op``, in canonical order.

    ``pattern="wc"`` restricts each rank to absent or its Lie-algebra domain;
    ``pattern="types"`` keeps only specs whose domain depends on the rank mod 4.
    The search assigns ranks in increasing order and prunes as soon as a
    constraint among assigned ranks fails, so the candidate spaces of size
    ``2**(n+1)`` or ``4**(n+1)`` are never materialised.
    """
    op = canonical_op(op)
    if field not in FIELDS:
        raise InputError(f"field must be one of {FIELDS}, got {field!r}")
    if pattern not in PATTERNS:
        raise InputError(f"unknown pattern {pattern!r}")
    cap = enumeration_cap(field, pattern)
    if not 1 <= n <= cap:
        what = f"the {field} field" + (f" with pattern {pattern}" if pattern else "")
        raise LimitError(f"enumeration over {what} is capped at n <= {cap}")
    table = interaction_table(n, op, sig)
    choices = _choices(n, field, pattern)
    by_top = _constraints(n, table)
    type_uniform = pattern == "types"

    workers = thread_count() if workers is None else workers
    if workers > 1 and n >= 9:
        prefixes = [(a, b) for a in choices[0] for b in choices[1]]
        jobs = [(n, choices, by_top, p, type_uniform) for p in prefixes]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_search_job, jobs))
        found = [d for chunk in chunks for d in chunk]
    else:
        found = _search(n, choices, by_top, (), type_uniform)
    return [GradedSubspaceSpec(d, field) for d in found if any(d)]
