"""Machine-readable catalogs of the known closed subspaces, and diffs against
exhaustive enumeration.

Theorems ``T1``-``T3`` list subspaces spanned by whole quaternion types;
``T8``-``T13`` list rank-direct-sum subspaces.  Each item carries the smallest
``n`` it is stated for; items that coincide at small ``n`` are deduplicated.
For ``T9``, ``T10`` and ``T13`` the reducible extensions by rank ``0`` and
rank ``n`` are generated separately as augmentations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .algebra import COMPLEX, REAL
from .errors import InputError
from .subspaces import (
    Domain,
    GradedSubspaceSpec,
    enumerate_closed,
    wc_domain,
)

RankMap = dict[int, Domain]
Builder = Callable[[int], "RankMap | None"]

R, I, C = Domain.REAL, Domain.IMAG, Domain.FULL


@dataclass(frozen=True)
class CatalogItem:
    label: str
    min_n: int
    build: Builder
    text: str = ""


@dataclass(frozen=True)
class Theorem:
    id: str
    op: str
    field: str
    items: tuple[CatalogItem, ...]
    # domains that may be attached at rank 0 / rank n by augmentation
    augment_domains: Callable[[int], tuple[Domain, ...]] | None = None
    pattern: str | None = None  # ambient restriction used when diffing


# -- item builders ------------------------------------------------------------


def typed(real: str = "", imag: str = "", full: str = "") -> Builder:
    """Subspace spanned by whole quaternion types, e.g. ``typed("02", imag="13")``."""
    res = {int(c): R for c in real} | {int(c): I for c in imag} | {int(c): C for c in full}

    def build(n: int) -> RankMap:
        return {k: res[k % 4] for k in range(n + 1) if k % 4 in res}

    return build


def ranks(*terms: Callable[[int], int] | int, domains: Callable[[int, int], Domain] | None = None) -> Builder:
    """Explicit ranks, each an int or a function of ``n`` (``lambda n: n - 1``)."""

    def build(n: int) -> RankMap:
        out: RankMap = {}
        for t in terms:
            k = t(n) if callable(t) else t
            out[k] = domains(k, n) if domains else R
        return out

    return build


def parity(even: Builder | None, odd: Builder | None) -> Builder:
    """Pick a builder by the parity of ``n``; ``None`` means not stated."""

    def build(n: int) -> RankMap | None:
        chosen = even if n % 2 == 0 else odd
        return chosen(n) if chosen else None

    return build


def series(
    residues: Iterable[int],
    last_ok: Callable[[int, int], bool],
    domains: Callable[[int, int], Domain] | None = None,
    start: int = 0,
) -> Builder:
    """Ranks ``start <= r <= k`` with ``r mod 4`` in ``residues``.

    The last rank ``k`` is the largest rank of the series with
    ``last_ok(k, n)``, which encodes the "for n = k + 1, k + 2" style ranges.
    """
    res = frozenset(residues)

    def build(n: int) -> RankMap | None:
        cands = [k for k in range(start, n + 1) if k % 4 in res and last_ok(k, n)]
        if not cands:
            return None
        top = max(cands)
        return {
            r: (domains(r, n) if domains else R)
            for r in range(start, top + 1)
            if r % 4 in res
        }

    return build


def top(n: int) -> int:
    return n


def top1(n: int) -> int:
    return n - 1


def top2(n: int) -> int:
    return n - 2


def a(k: int, n: int = 0) -> Domain:
    """``a_k``: the Lie-algebra domain of rank ``k``."""
    return wc_domain(k)


def by_residue(mapping: dict[int, Domain]) -> Callable[[int, int], Domain]:
    return lambda k, n: mapping[k % 4]


def explicit(*pairs: tuple[Callable[[int], int] | int, Domain]) -> Builder:
    def build(n: int) -> RankMap:
        out: RankMap = {}
        for t, d in pairs:
            out[t(n) if callable(t) else t] = d
        return out

    return build


def _item(label: str, min_n: int, build: Builder, text: str = "") -> CatalogItem:
    return CatalogItem(label, min_n, build, text)


# Rank ranges of the long families.  The last rank k of each series must
# satisfy the stated relation between n and k.
def _last_23(k: int, n: int) -> bool:
    return n - k in ((1, 2) if k % 2 else (0, 1))


def _last_even_below(k: int, n: int) -> bool:
    return n - k in (1, 2)


def _last_even_upto(k: int, n: int) -> bool:
    return n - k in (0, 1)


def _last_12(k: int, n: int) -> bool:
    return k % 2 == 0 and n - k in (0, 1, 2, 3)


def _last_2(k: int, n: int) -> bool:
    return n - k in (1, 2, 3, 4)


def _last_03(k: int, n: int) -> bool:
    return n - k in ((0, 1, 2) if k % 2 == 0 else (0,))


def _last_01(k: int, n: int) -> bool:
    return n - k in ((0, 1, 2) if k % 2 else (0,))


def _last_0(k: int, n: int) -> bool:
    return n - k in (0, 1, 2, 3)


# The rank sets shared by the three commutator theorems.
def _comm_rank_items(dom: Callable[[int, int], Domain]) -> list[tuple[str, int, Builder]]:
    return [
        ("1", 1, ranks(0, domains=dom)),
        ("2", 1, ranks(top, domains=dom)),
        ("3", 2, ranks(1, 2, domains=dom)),
        ("4", 3, ranks(2, domains=dom)),
        ("5", 4, parity(
            lambda n: {k: dom(k, n) for k in range(1, n + 1)},
            lambda n: {k: dom(k, n) for k in range(1, n)},
        )),
        ("6", 4, ranks(2, top1, domains=dom)),
        ("7", 5, ranks(2, top2, domains=dom)),
        ("8", 6, parity(ranks(1, 2, top1, top, domains=dom), ranks(1, 2, top2, top1, domains=dom))),
        ("9", 6, series((2, 3), _last_23, dom, start=2)),
        ("10", 7, series((0, 2), _last_even_below, dom, start=2)),
        ("11", 8, series((1, 2), _last_12, dom, start=1)),
        ("12", 9, series((2,), _last_2, dom, start=2)),
    ]


def _real(k: int, n: int) -> Domain:
    return R


def _imag(k: int, n: int) -> Domain:
    return I


def _full(k: int, n: int) -> Domain:
    return C


def _pattern(mapping: dict[int, Domain]) -> Callable[[int, int], Domain]:
    return by_residue(mapping)


# -- theorem tables -----------------------------------------------------------


def _t1(field: str) -> tuple[CatalogItem, ...]:
    if field == REAL:
        return (_item("a", 1, typed("02"), "02"),)
    return (
        _item("b.1", 1, typed("02"), "02"),
        _item("b.2", 1, typed(full="02"), "02 + i02"),
        _item("b.3", 1, typed("02", imag="13"), "02 + i13"),
        _item("b.4", 1, typed("0123"), "0123"),
    )


def _t2(field: str) -> tuple[CatalogItem, ...]:
    real = [("2", typed("2")), ("02", typed("02")), ("12", typed("12")), ("23", typed("23"))]
    if field == REAL:
        return tuple(_item(f"a.{i + 1}", 1, b, t) for i, (t, b) in enumerate(real))
    cplx = real + [
        ("0123", typed("0123")),
        ("02 + i02", typed(full="02")),
        ("12 + i12", typed(full="12")),
        ("23 + i23", typed(full="23")),
        ("2 + i0", typed("2", imag="0")),
        ("2 + i1", typed("2", imag="1")),
        ("2 + i2", typed(full="2")),
        ("2 + i3", typed("2", imag="3")),
        ("02 + i13", typed("02", imag="13")),
        ("12 + i03", typed("12", imag="03")),
        ("23 + i01", typed("23", imag="01")),
    ]
    return tuple(_item(f"b.{i + 1}", 1, b, t) for i, (t, b) in enumerate(cplx))


def _t3(field: str) -> tuple[CatalogItem, ...]:
    real = [("0", typed("0")), ("01", typed("01")), ("02", typed("02")), ("03", typed("03"))]
    if field == REAL:
        return tuple(_item(f"a.{i + 1}", 1, b, t) for i, (t, b) in enumerate(real))
    cplx = real + [
        ("0123", typed("0123")),
        ("01 + i01", typed(full="01")),
        ("02 + i02", typed(full="02")),
        ("03 + i03", typed(full="03")),
        ("0 + i0", typed(full="0")),
        ("0 + i1", typed("0", imag="1")),
        ("0 + i2", typed("0", imag="2")),
        ("0 + i3", typed("0", imag="3")),
        ("01 + i23", typed("01", imag="23")),
        ("02 + i13", typed("02", imag="13")),
        ("03 + i12", typed("03", imag="12")),
    ]
    return tuple(_item(f"b.{i + 1}", 1, b, t) for i, (t, b) in enumerate(cplx))


def _even_upto(dom: Callable[[int, int], Domain]) -> Builder:
    return lambda n: {k: dom(k, n) for k in range(0, n + 1, 2)}


def _t8(field: str) -> tuple[CatalogItem, ...]:
    items = [
        _item("1", 1, ranks(0), "0"),
        _item("2", 1, ranks(0, top), "0 + n"),
        _item("3", 1, _even_upto(_real), "0 + 2 + ... = 02"),
    ]
    if field == COMPLEX:
        items += [
            _item("4", 1, ranks(0, domains=_full), "0 + i0"),
            _item("5", 1, ranks(0, top, domains=_full), "0 + n + i0 + in"),
            _item("6", 1, _even_upto(_full), "02 + i02"),
            _item("7", 1, typed("02", imag="13"), "02 + i13"),
            _item("8", 1, typed("0123"), "0123"),
        ]
    return tuple(items)


def _t9_t13(dom: Callable[[int, int], Domain]) -> tuple[CatalogItem, ...]:
    return tuple(_item(label, m, b) for label, m, b in _comm_rank_items(dom))


def _t10() -> tuple[CatalogItem, ...]:
    def upto(n: int) -> int:
        return n if n % 2 == 0 else n - 1

    def sweep(dom: Callable[[int, int], Domain]) -> Builder:
        return lambda n: {k: dom(k, n) for k in range(1, upto(n) + 1)}

    p23_i01 = _pattern({0: I, 1: I, 2: R, 3: R})
    p02_i13 = _pattern({0: R, 1: I, 2: R, 3: I})
    p12_i03 = _pattern({0: I, 1: R, 2: R, 3: I})
    items = [
        ("1.1", 1, ranks(0)),
        ("1.2", 1, ranks(0, domains=_imag)),
        ("1.3", 1, ranks(0, domains=_full)),
        ("2.1", 1, ranks(top)),
        ("2.2", 1, ranks(top, domains=_imag)),
        ("2.3", 1, ranks(top, domains=_full)),
        ("3.1", 2, ranks(1, 2)),
        ("3.2", 2, explicit((1, I), (2, R))),
        ("3.3", 2, ranks(1, 2, domains=_full)),
        ("4.1", 3, ranks(2)),
        ("4.2", 3, ranks(2, domains=_full)),
        ("5.1", 4, sweep(_real)),
        ("5.2", 4, sweep(p23_i01)),
        ("5.3", 4, sweep(p02_i13)),
        ("5.4", 4, sweep(p12_i03)),
        ("5.5", 4, sweep(_full)),
        ("6.1", 4, ranks(2, top1)),
        ("6.2", 4, ranks(2, top1, domains=_full)),
        ("6.3", 4, explicit((2, R), (top1, I))),
        ("7.1", 5, ranks(2, top2)),
        ("7.2", 5, ranks(2, top2, domains=_full)),
        ("7.3", 5, explicit((2, R), (top2, I))),
        ("8.1", 6, parity(ranks(1, 2, top1, top), ranks(1, 2, top2, top1))),
        ("8.2", 6, parity(ranks(1, 2, top1, top, domains=_full), ranks(1, 2, top2, top1, domains=_full))),
        ("8.3", 6, parity(
            explicit((1, R), (2, R), (top1, I), (top, I)),
            explicit((1, R), (2, R), (top2, I), (top1, I)),
        )),
        # Printed with the top rank real, which is not closed; see ERRATA.
        ("8.4", 6, parity(
            explicit((1, I), (2, R), (top1, R), (top, I)),
            explicit((1, I), (2, R), (top2, R), (top1, I)),
        )),
        ("8.5", 6, parity(
            explicit((1, I), (2, R), (top1, I), (top, R)),
            explicit((1, I), (2, R), (top2, I), (top1, R)),
        )),
        ("9.1", 6, series((2, 3), _last_23, start=2)),
        ("9.2", 6, series((2, 3), _last_23, _pattern({2: R, 3: I}), start=2)),
        ("9.3", 6, series((2, 3), _last_23, _full, start=2)),
        ("10.1", 7, series((0, 2), _last_even_below, start=2)),
        ("10.2", 7, series((0, 2), _last_even_below, a, start=2)),
        ("10.3", 7, series((0, 2), _last_even_below, _full, start=2)),
        ("11.1", 8, series((1, 2), _last_12, start=1)),
        ("11.2", 8, series((1, 2), _last_12, a, start=1)),
        ("11.3", 8, series((1, 2), _last_12, _full, start=1)),
        ("12.1", 9, series((2,), _last_2, start=2)),
        ("12.2", 9, series((2,), _last_2, _full, start=2)),
    ]
    return tuple(_item(label, m, b) for label, m, b in items)


def _t11() -> tuple[CatalogItem, ...]:
    items = [
        ("1", 1, ranks(0)),
        ("2", 2, ranks(0, 1)),
        ("3", 2, ranks(0, top)),
        ("4", 3, ranks(0, top1)),
        ("5", 4, parity(ranks(0, 1, top), None)),
        ("6", 4, parity(ranks(0, top1, top), None)),
        ("7", 4, series((0, 2), _last_even_upto)),
        ("8", 5, parity(None, ranks(0, 1, top1, top))),
        ("9", 5, series((0, 3), _last_03)),
        ("10", 6, series((0, 1), _last_01)),
        ("11", 6, series((0,), _last_0)),
    ]
    return tuple(_item(label, m, b) for label, m, b in items)


def _t12() -> tuple[CatalogItem, ...]:
    items = [
        ("1.1", 1, ranks(0)),
        ("1.2", 1, ranks(0, domains=_full)),
        ("2.1", 2, ranks(0, 1)),
        ("2.2", 2, explicit((0, R), (1, I))),
        ("2.3", 2, ranks(0, 1, domains=_full)),
        ("3.1", 2, ranks(0, top)),
        ("3.2", 2, explicit((0, R), (top, I))),
        ("3.3", 2, ranks(0, top, domains=_full)),
        ("4.1", 3, ranks(0, top1)),
        ("4.2", 3, explicit((0, R), (top1, I))),
        ("4.3", 3, ranks(0, top1, domains=_full)),
        ("5.1", 4, parity(ranks(0, 1, top), None)),
        ("5.2", 4, parity(explicit((0, R), (1, I), (top, I)), None)),
        ("5.3", 4, parity(explicit((0, R), (1, I), (top, R)), None)),
        ("5.4", 4, parity(explicit((0, R), (1, R), (top, I)), None)),
        ("5.5", 4, parity(ranks(0, 1, top, domains=_full), None)),
        ("6.1", 4, parity(ranks(0, top1, top), None)),
        ("6.2", 4, parity(explicit((0, R), (top1, I), (top, I)), None)),
        ("6.3", 4, parity(explicit((0, R), (top1, I), (top, R)), None)),
        ("6.4", 4, parity(explicit((0, R), (top1, R), (top, I)), None)),
        ("6.5", 4, parity(ranks(0, top1, top, domains=_full), None)),
        ("7.1", 4, series((0, 2), _last_even_upto)),
        ("7.2", 4, series((0, 2), _last_even_upto, _pattern({0: R, 2: I}))),
        ("7.3", 4, series((0, 2), _last_even_upto, _full)),
        ("8.1", 5, parity(None, ranks(0, 1, top1, top))),
        ("8.2", 5, parity(None, explicit((0, R), (1, R), (top1, I), (top, I)))),
        ("8.3", 5, parity(None, explicit((0, R), (1, I), (top1, I), (top, R)))),
        ("8.4", 5, parity(None, explicit((0, R), (1, I), (top1, R), (top, I)))),
        ("8.5", 5, parity(None, ranks(0, 1, top1, top, domains=_full))),
        ("9.1", 5, series((0, 3), _last_03)),
        ("9.2", 5, series((0, 3), _last_03, _pattern({0: R, 3: I}))),
        ("9.3", 5, series((0, 3), _last_03, _full)),
        ("10.1", 6, series((0, 1), _last_01)),
        ("10.2", 6, series((0, 1), _last_01, _pattern({0: R, 1: I}))),
        ("10.3", 6, series((0, 1), _last_01, _full)),
        ("11.1", 6, series((0,), _last_0)),
        ("11.2", 6, series((0,), _last_0, _full)),
        # Stated for n >= 2, but these are type spans closed for every n.
        ("12.1", 1, typed("0123")),
        ("12.2", 1, typed("01", imag="23")),
        ("12.3", 1, typed("02", imag="13")),
        ("12.4", 1, typed("03", imag="12")),
    ]
    return tuple(_item(label, m, b) for label, m, b in items)


def _aug_real(n: int) -> tuple[Domain, ...]:
    return (R,)


def _aug_complex(n: int) -> tuple[Domain, ...]:
    return (R, I, C)


def _aug_wc_zero(n: int) -> tuple[Domain, ...]:
    return (wc_domain(0),)


THEOREMS: dict[tuple[str, str], Theorem] = {}


def _register(t: Theorem) -> None:
    THEOREMS[(t.id, t.field)] = t


for _fld in (REAL, COMPLEX):
    _register(Theorem("T1", "product", _fld, _t1(_fld), pattern="types"))
    _register(Theorem("T2", "commutator", _fld, _t2(_fld), pattern="types"))
    _register(Theorem("T3", "anticommutator", _fld, _t3(_fld), pattern="types"))
    _register(Theorem("T8", "product", _fld, _t8(_fld)))
_register(Theorem("T9", "commutator", REAL, _t9_t13(_real), augment_domains=_aug_real))
_register(Theorem("T10", "commutator", COMPLEX, _t10(), augment_domains=_aug_complex))
_register(Theorem("T11", "anticommutator", REAL, _t11()))
_register(Theorem("T12", "anticommutator", COMPLEX, _t12()))
_register(
    Theorem("T13", "commutator", COMPLEX, _t9_t13(a), augment_domains=_aug_wc_zero, pattern="wc")
)

THEOREM_IDS = ("T1", "T2", "T3", "T8", "T9", "T10", "T11", "T12", "T13")


def theorem(theorem_id: str, field: str) -> Theorem:
    tid = theorem_id.upper()
    if tid not in THEOREM_IDS:
        raise InputError(f"unknown theorem {theorem_id!r}; catalogs exist for {', '.join(THEOREM_IDS)}")
    try:
        return THEOREMS[(tid, field)]
    except KeyError:
        raise InputError(f"theorem {tid} is not stated over the {field} field") from None


def default_field(theorem_id: str) -> str:
    tid = theorem_id.upper()
    return COMPLEX if tid in ("T10", "T12", "T13") else REAL


def theorem_fields(theorem_id: str) -> tuple[str, ...]:
    return tuple(f for f in (REAL, COMPLEX) if (theorem_id.upper(), f) in THEOREMS)


# Items whose printed form fails closure, as (theorem, item) -> printed builder.
# The catalogs above carry the corrected form.
ERRATA: dict[tuple[str, str], tuple[int, Builder]] = {
    ("T10", "8.4"): (6, parity(
        explicit((1, I), (2, R), (top1, R), (top, R)),
        explicit((1, I), (2, R), (top2, R), (top1, R)),
    )),
}


# -- catalogs -----------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    spec: GradedSubspaceSpec
    augmented: bool = False

    def to_dict(self) -> dict:
        return {"item": self.label, "augmented": self.augmented, "spec": self.spec.to_line()}


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise InputError(f"dimension must be a positive integer, got {n!r}")


def catalog_entries(theorem_id: str, n: int, field: str) -> list[CatalogEntry]:
    """Base items of a theorem at ``n``, deduplicated, in item order."""
    _check_n(n)
    thm = theorem(theorem_id, field)
    seen: set[GradedSubspaceSpec] = set()
    out = []
    for item in thm.items:
        if n < item.min_n:
            continue
        rank_map = item.build(n)
        if not rank_map:
            continue
        spec = GradedSubspaceSpec.from_ranks(n, rank_map, field)
        if spec.is_empty() or spec in seen:
            continue
        seen.add(spec)
        out.append(CatalogEntry(item.label, spec))
    if not out:
        raise InputError(f"{thm.id} states no subspaces for n={n}")
    return out


def augmentation_entries(theorem_id: str, n: int, field: str) -> list[CatalogEntry]:
    """Reducible extensions of the base items by rank 0 and rank ``n``.

    Rank 0 may be attached to any item; rank ``n`` to any item for odd ``n``
    and to items made of even ranks for even ``n``.
    """
    thm = theorem(theorem_id, field)
    base = catalog_entries(theorem_id, n, field)
    if thm.augment_domains is None:
        return []
    doms = thm.augment_domains(n)
    top_doms = doms if thm.pattern != "wc" else (wc_domain(n),)
    seen = {e.spec for e in base}
    out = []
    for entry in base:
        spec = entry.spec
        even_only = all(k % 2 == 0 for k in spec.present())
        zero_opts = [None] + ([d for d in doms] if not spec[0] else [])
        top_opts = [None]
        if not spec[n] and (n % 2 == 1 or even_only):
            top_opts += list(top_doms)
        for d0 in zero_opts:
            for dn in top_opts:
                if d0 is None and dn is None:
                    continue
                cand = spec
                if d0 is not None:
                    cand = cand.replace(0, d0)
                if dn is not None:
                    cand = cand.replace(n, dn)
                if cand not in seen:
                    seen.add(cand)
                    out.append(CatalogEntry(f"{entry.label}+", cand, augmented=True))
    return out


def catalog(theorem_id: str, n: int, field: str, augmented: bool = False) -> list[GradedSubspaceSpec]:
    """Specs listed by a theorem at ``n``; with ``augmented`` add the extensions."""
    entries = catalog_entries(theorem_id, n, field)
    if augmented:
        entries += augmentation_entries(theorem_id, n, field)
    return [e.spec for e in entries]


# -- diffs --------------------------------------------------------------------


@dataclass
class CatalogDiff:
    theorem: str
    n: int
    field: str
    op: str
    catalog_size: int = 0
    enumerated_size: int = 0
    whole_algebra_excluded: bool = True
    missing_from_enumeration: list[GradedSubspaceSpec] = field(default_factory=list)
    missing_from_catalog: list[GradedSubspaceSpec] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not self.missing_from_enumeration and not self.missing_from_catalog

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "n": self.n,
            "field": self.field,
            "op": self.op,
            "catalog_size": self.catalog_size,
            "enumerated_size": self.enumerated_size,
            "whole_algebra_excluded": self.whole_algebra_excluded,
            "missing_from_enumeration": [s.to_line() for s in self.missing_from_enumeration],
            "missing_from_catalog": [s.to_line() for s in self.missing_from_catalog],
        }


def whole_algebra(n: int, field: str) -> GradedSubspaceSpec:
    """``Cl^R`` or ``Cl^C`` itself, closed under everything and never listed."""
    dom = C if field == COMPLEX else R
    return GradedSubspaceSpec((dom,) * (n + 1), field)


def diff_catalog(theorem_id: str, n: int, field: str, op: str | None = None) -> CatalogDiff:
    """Compare the catalog family with every closed spec in the theorem's ambient set.

    The family is the base items plus augmentations.  The whole algebra is
    dropped from both sides: the catalogs list proper subalgebras only.
    """
    thm = theorem(theorem_id, field)
    op = op or thm.op
    whole = whole_algebra(n, field)
    family = set(catalog(theorem_id, n, field, augmented=True)) - {whole}
    found = set(enumerate_closed(n, op, field, pattern=thm.pattern)) - {whole}
    return CatalogDiff(
        theorem=thm.id,
        n=n,
        field=field,
        op=op,
        catalog_size=len(family),
        enumerated_size=len(found),
        missing_from_enumeration=sorted(family - found),
        missing_from_catalog=sorted(found - family),
    )
