"""Arithmetic on quaternion types.

A type is a subset of ``{0, 1, 2, 3}``: the residues mod 4 of the ranks an
element occupies.  The empty set is the type of the zero element and acts as
an absorbing zero; ``{0, 1, 2, 3}`` is the whole algebra.

Composite types follow from the main-type rules by union, since both
brackets are bilinear.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .algebra import Signature, _blade_sign
from .errors import InputError

TypeSymbol = frozenset

EMPTY: frozenset[int] = frozenset()
WHOLE: frozenset[int] = frozenset({0, 1, 2, 3})

# The fifteen nonempty types in the order of the printed tables.
PRINTED_ORDER: tuple[frozenset[int], ...] = tuple(
    frozenset(c) for size in (1, 2, 3, 4) for c in combinations(range(4), size)
)
ALL_TYPES: tuple[frozenset[int], ...] = (EMPTY,) + PRINTED_ORDER


def _symmetrize(rules: dict[tuple[int, int], int]) -> dict[tuple[int, int], int]:
    out = {}
    for (k, l), m in rules.items():
        out[(k, l)] = m
        out[(l, k)] = m
    return out


_COMM_MAIN = _symmetrize(
    {
        **{(k, k): 2 for k in range(4)},
        **{(k, 2): k for k in range(4)},
        (0, 1): 3,
        (0, 3): 1,
        (1, 3): 0,
    }
)
_ANTI_MAIN = _symmetrize(
    {
        **{(k, k): 0 for k in range(4)},
        **{(k, 0): k for k in range(4)},
        (1, 2): 3,
        (1, 3): 2,
        (2, 3): 1,
    }
)


def as_type(value: Iterable[int] | str) -> frozenset[int]:
    """Coerce ``"013"``, ``"A"``, ``"-"`` or an iterable of residues to a type."""
    if isinstance(value, str):
        text = value.strip()
        if text in ("A", "0123"):
            return WHOLE
        if text in ("-", "", "∅"):
            return EMPTY
        value = [int(ch) for ch in text]
    out = frozenset(value)
    if not out <= WHOLE:
        raise InputError(f"quaternion type residues must lie in 0..3, got {sorted(out)}")
    return out


def format_type(t: frozenset[int]) -> str:
    if not t:
        return "-"
    return "".join(str(k) for k in sorted(t))


def _lift(rules: dict[tuple[int, int], int], t1: frozenset[int], t2: frozenset[int]) -> frozenset[int]:
    return frozenset(rules[(k, l)] for k in as_type(t1) for l in as_type(t2))


def comm_type(t1, t2) -> frozenset[int]:
    """Type of ``[U, V]`` for ``U`` of type ``t1`` and ``V`` of type ``t2``."""
    return _lift(_COMM_MAIN, t1, t2)


def anti_type(t1, t2) -> frozenset[int]:
    """Type of ``{U, V}``."""
    return _lift(_ANTI_MAIN, t1, t2)


def prod_type(t1, t2) -> frozenset[int]:
    """Type of ``UV``; the union of the two bracket types."""
    return comm_type(t1, t2) | anti_type(t1, t2)


TYPE_RULES = {"commutator": comm_type, "anticommutator": anti_type, "product": prod_type}


def type_rule(op: str):
    try:
        return TYPE_RULES[op]
    except KeyError:
        raise InputError(f"unknown operation {op!r}") from None


def type_table(op: str) -> dict[tuple[frozenset[int], frozenset[int]], frozenset[int]]:
    """The 16 x 16 table of ``op`` over all types, including the empty type."""
    rule = type_rule(op)
    return {(t1, t2): rule(t1, t2) for t1 in ALL_TYPES for t2 in ALL_TYPES}


def format_table(op: str, include_empty: bool = False) -> str:
    """Text grid in the layout of the printed tables (rows: left operand)."""
    rule = type_rule(op)
    types = ALL_TYPES if include_empty else PRINTED_ORDER
    width = 5
    head = {"commutator": "[,]", "anticommutator": "{,}", "product": "UV"}[op]
    lines = [head.ljust(width) + "".join(_cell(t).ljust(width) for t in types).rstrip()]
    for t1 in types:
        row = _cell(t1).ljust(width) + "".join(_cell(rule(t1, t2)).ljust(width) for t2 in types)
        lines.append(row.rstrip())
    return "\n".join(lines)


def _cell(t: frozenset[int]) -> str:
    return "A" if t == WHOLE else format_type(t)


# -- exhaustive blade-level verification --------------------------------------


@dataclass
class TableViolation:
    op: str
    left: int
    right: int
    result: int
    result_type: frozenset[int]
    allowed: frozenset[int]

    def to_dict(self) -> dict:
        return {
            "op": self.op,
            "left": self.left,
            "right": self.right,
            "result": self.result,
            "result_type": format_type(self.result_type),
            "allowed": format_type(self.allowed),
        }


@dataclass
class TableReport:
    """Outcome of checking the type tables against every pair of blades."""

    n: int
    pairs_checked: int = 0
    violations: list[TableViolation] = field(default_factory=list)
    # (op, type of left, type of right) -> result types actually produced
    attained: dict[tuple[str, int, int], frozenset[int]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "pairs_checked": self.pairs_checked,
            "violations": [v.to_dict() for v in self.violations],
            "attained": {
                f"{op} {k} {l}": format_type(t) for (op, k, l), t in sorted(self.attained.items())
            },
        }


def verify_type_tables(sig: Signature) -> TableReport:
    """Check ``type(op(e^A, e^B))`` against the table cell, for all blade pairs.

    Composite cells follow from main-type cells by linearity, so checking
    basis blades (which have main types) covers the whole table.
    """
    if sig.n > 8:
        raise InputError("exhaustive table verification is limited to n <= 8")
    report = TableReport(n=sig.n)
    neg = sig.negative_mask
    attained: dict[tuple[str, int, int], set[int]] = {}
    for a in range(sig.size):
        ta = a.bit_count() % 4
        for b in range(sig.size):
            tb = b.bit_count() % 4
            s_ab = _blade_sign(a, b, neg)
            s_ba = _blade_sign(b, a, neg)
            tc = (a ^ b).bit_count() % 4
            results = {"product": True, "commutator": s_ab != s_ba, "anticommutator": s_ab == s_ba}
            for op, nonzero in results.items():
                report.pairs_checked += 1
                if not nonzero:
                    continue
                attained.setdefault((op, ta, tb), set()).add(tc)
                allowed = TYPE_RULES[op](frozenset({ta}), frozenset({tb}))
                if tc not in allowed:
                    report.violations.append(
                        TableViolation(op, a, b, a ^ b, frozenset({tc}), allowed)
                    )
    report.attained = {key: frozenset(v) for key, v in attained.items()}
    return report


# -- algebras of quaternion type ----------------------------------------------

ROLES = ("E", "I", "J", "K")

COMMUTATOR_ROLES = {"E": (2, "r"), "I": (3, "r"), "J": (0, "r"), "K": (1, "r")}
ANTICOMMUTATOR_ROLES = {"E": (0, "r"), "I": (1, "r"), "J": (2, "r"), "K": (3, "r")}


def role_product(x: str, y: str) -> str:
    """Subspace receiving ``x o y`` in an algebra of quaternion type.

    ``EE = II = JJ = KK -> E``, ``EI, KJ -> I``, ``EJ, IK -> J``, ``EK, IJ -> K``:
    the Klein four-group on the role indices.
    """
    return ROLES[ROLES.index(x) ^ ROLES.index(y)]


@dataclass
class AxiomViolation:
    left_role: str
    right_role: str
    left: int
    right: int
    result: int
    result_residue: int
    result_domain: str
    expected_role: str

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class AxiomReport:
    n: int
    op: str
    roles: dict[str, tuple[int, str]]
    pairs_checked: int = 0
    violations: list[AxiomViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "op": self.op,
            "roles": {r: f"{d}{k}" for r, (k, d) in self.roles.items()},
            "pairs_checked": self.pairs_checked,
            "violations": [v.to_dict() for v in self.violations],
        }


def check_quaternion_algebra(
    sig: Signature, op: str, roles: dict[str, tuple[int, str]] | None = None
) -> AxiomReport:
    """Exhaustively check the quaternion-type axioms over basis blades.

    ``roles`` maps each of ``E, I, J, K`` to ``(residue, domain)`` where the
    domain is ``"r"`` (real multiples of the blades) or ``"i"`` (imaginary
    multiples).  Defaults to the standard assignment for ``op``.
    """
    if op not in ("commutator", "anticommutator"):
        raise InputError("quaternion-type axioms are defined for commutator and anticommutator")
    if sig.n > 8:
        raise InputError("exhaustive axiom verification is limited to n <= 8")
    if roles is None:
        roles = COMMUTATOR_ROLES if op == "commutator" else ANTICOMMUTATOR_ROLES
    by_residue = {k: (role, dom) for role, (k, dom) in roles.items()}
    report = AxiomReport(n=sig.n, op=op, roles=dict(roles))
    neg = sig.negative_mask
    for a in range(sig.size):
        role_a, dom_a = by_residue[a.bit_count() % 4]
        for b in range(sig.size):
            role_b, dom_b = by_residue[b.bit_count() % 4]
            report.pairs_checked += 1
            s_ab = _blade_sign(a, b, neg)
            s_ba = _blade_sign(b, a, neg)
            value = s_ab - s_ba if op == "commutator" else s_ab + s_ba
            if value == 0:
                continue
            c = a ^ b
            # i * i = -1 is real; a single factor of i is imaginary.
            dom_c = "r" if dom_a == dom_b else "i"
            target = role_product(role_a, role_b)
            if (c.bit_count() % 4, dom_c) != roles[target]:
                report.violations.append(
                    AxiomViolation(role_a, role_b, a, b, c, c.bit_count() % 4, dom_c, target)
                )
    return report
