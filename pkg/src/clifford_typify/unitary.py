"""The pseudo-unitary group ``U*U = e`` and its Lie algebra ``u* = -u``.

The Lie algebra consists of the elements whose rank-``k`` coefficients are
imaginary for ``k = 0, 1 (mod 4)`` and real for ``k = 2, 3 (mod 4)``.  Group
elements are produced from it by :func:`mv_exp`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .algebra import (
    COMPLEX,
    DENSE_MAX_DIM,
    REAL,
    Multivector,
    Signature,
    _blade_sign,
    blade_mask,
    clifford_conjugate,
    dense_product,
)
from .catalogs import catalog
from .errors import ConvergenceError, InputError, LimitError
from .subspaces import Domain, GradedSubspaceSpec, closure_check, product_closure, wc_domain
from .typecalc import AxiomReport, check_quaternion_algebra

DEFAULT_GROUP_TOL = 1e-9
DEFAULT_ALGEBRA_TOL = 1e-12

# Roles of the four quaternion-type pieces of the Lie algebra under the commutator.
WC_ROLES = {"E": (2, "r"), "I": (3, "r"), "J": (0, "i"), "K": (1, "i")}


def a_k(k: int) -> complex:
    """Coefficient factor of rank ``k``: ``i`` for ``k = 0, 1 (mod 4)``, else ``1``."""
    return 1j if k % 4 in (0, 1) else 1.0


# -- membership ---------------------------------------------------------------


def conjugation_residual(u: Multivector) -> float:
    """``||u* + u||_inf``."""
    return (clifford_conjugate(u) + u).norm_inf()


def is_in_wc(u: Multivector, tol: float = DEFAULT_ALGEBRA_TOL) -> bool:
    return conjugation_residual(u.as_complex()) <= tol


def group_residual(U: Multivector) -> float:
    """``||U* U - e||_inf``."""
    U = U.as_complex()
    return (clifford_conjugate(U) * U - Multivector.scalar(U.signature, 1, COMPLEX)).norm_inf()


def group_membership(U: Multivector, tol: float = DEFAULT_GROUP_TOL) -> bool:
    return group_residual(U) <= tol


@dataclass(frozen=True)
class LieAlgebraElement:
    """A complex multivector with ``u* = -u``."""

    u: Multivector
    tol: float = DEFAULT_ALGEBRA_TOL

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", self.u.as_complex())
        if not is_in_wc(self.u, self.tol):
            raise InputError(f"not in the Lie algebra: ||u* + u|| = {conjugation_residual(self.u):.3g}")

    def exp(self) -> "GroupElement":
        return GroupElement(mv_exp(self.u))


@dataclass(frozen=True)
class GroupElement:
    """A complex multivector with ``U* U = e`` up to ``tol``."""

    U: Multivector
    tol: float = DEFAULT_GROUP_TOL

    def __post_init__(self) -> None:
        object.__setattr__(self, "U", self.U.as_complex())
        if not group_membership(self.U, self.tol):
            raise InputError(f"not in the group: ||U*U - e|| = {group_residual(self.U):.3g}")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.U * other.U, max(self.tol, other.tol))

    def inverse(self) -> "GroupElement":
        return GroupElement(clifford_conjugate(self.U), self.tol)


@dataclass
class WcDecomposition:
    """Real rank components ``u^k`` with ``u = sum_k a_k u^k``."""

    signature: Signature
    components: tuple[Multivector, ...]

    def __getitem__(self, k: int) -> Multivector:
        return self.components[k]

    def recompose(self) -> Multivector:
        total = Multivector.zero(self.signature, COMPLEX)
        for k, part in enumerate(self.components):
            total = total + part.as_complex() * a_k(k)
        return total


def wc_decompose(u: Multivector, tol: float = DEFAULT_ALGEBRA_TOL) -> WcDecomposition:
    u = u.as_complex()
    if not is_in_wc(u, tol):
        raise InputError(f"not in the Lie algebra: ||u* + u|| = {conjugation_residual(u):.3g}")
    parts: list[dict[int, float]] = [{} for _ in range(u.n + 1)]
    for mask, c in u:
        k = mask.bit_count()
        parts[k][mask] = c.imag if k % 4 in (0, 1) else c.real
    comps = tuple(Multivector(u.signature, p, REAL) for p in parts)
    return WcDecomposition(u.signature, comps)


def element_in_spec(u: Multivector, spec: GradedSubspaceSpec, tol: float = DEFAULT_ALGEBRA_TOL) -> bool:
    """Whether every coefficient of ``u`` fits the domain of its rank."""
    if u.n != spec.n:
        raise InputError(f"dimension mismatch: element n={u.n}, spec n={spec.n}")
    for mask, c in u:
        c = complex(c)
        dom = spec[mask.bit_count()]
        if not dom.contains(Domain.REAL) and abs(c.real) > tol:
            return False
        if not dom.contains(Domain.IMAG) and abs(c.imag) > tol:
            return False
    return True


def random_element(
    spec: GradedSubspaceSpec, sig: Signature, rng: np.random.Generator, scale: float = 1.0
) -> Multivector:
    """Random element of ``spec`` with every coefficient modulus at most ``scale``."""
    if sig.n != spec.n:
        raise InputError(f"signature {sig} does not match spec n={spec.n}")
    coeffs: dict[int, complex] = {}
    for mask in range(sig.size):
        dom = spec[mask.bit_count()]
        if dom is Domain.REAL:
            coeffs[mask] = rng.uniform(-scale, scale)
        elif dom is Domain.IMAG:
            coeffs[mask] = 1j * rng.uniform(-scale, scale)
        elif dom is Domain.FULL:
            re, im = rng.uniform(-scale, scale, 2) / math.sqrt(2)
            coeffs[mask] = complex(re, im)
    return Multivector(sig, coeffs, COMPLEX)


def wc_spec(n: int) -> GradedSubspaceSpec:
    """The whole Lie algebra as a graded spec."""
    return GradedSubspaceSpec(tuple(wc_domain(k) for k in range(n + 1)), COMPLEX)


# -- exponential --------------------------------------------------------------


def mv_exp(u: Multivector, tol: float = 1e-16, max_terms: int = 100) -> Multivector:
    """``exp(u) = sum u^m / m!`` by Taylor series with scaling and squaring.

    ``u`` is scaled by ``2^-s`` until its coefficient 1-norm is at most 1/2,
    the series is summed until a term's 1-norm drops below ``tol``, and the
    result is squared ``s`` times.  The 1-norm is submultiplicative under the
    product, so the truncation bound holds for every coefficient.

    Rounding in the squaring phase dominates: for ``||u||_inf <= 10`` and
    ``n <= 4`` the error is below ``1e-13`` relative to
    ``max(1, ||exp(u)||_inf)``.
    """
    sig = u.signature
    if sig.n > DENSE_MAX_DIM:
        raise LimitError(f"mv_exp is limited to n <= {DENSE_MAX_DIM}")
    x = u.to_dense()
    norm = float(np.abs(x).sum())
    s = math.ceil(math.log2(norm / 0.5)) if norm > 0.5 else 0
    x = x / 2.0**s
    result = np.zeros(sig.size, dtype=x.dtype)
    result[0] = 1.0
    term = result.copy()
    for m in range(1, max_terms + 1):
        term = dense_product(term, x, sig) / m
        result = result + term
        if np.abs(term).sum() < tol:
            break
    else:
        raise ConvergenceError(f"exponential series did not reach tol={tol:g} in {max_terms} terms")
    for _ in range(s):
        result = dense_product(result, result, sig)
    return Multivector.from_dense(sig, result, u.field)


def blade_square(mask: int, sig: Signature) -> int:
    """Sign ``s`` with ``(e^A)^2 = s e``."""
    return _blade_sign(mask, mask, sig.negative_mask)


def one_parameter_exp(mask: int, factor: complex, phi: float, sig: Signature) -> Multivector:
    """Closed form of ``exp(phi * factor * e^A)`` from the square of the generator.

    With ``x = factor * e^A`` and ``x^2 = c e``: ``cos/sin`` for ``c = -1``,
    ``cosh/sinh`` for ``c = +1``.  ``factor`` must be ``1`` or ``i``.
    """
    c = (factor * factor).real * blade_square(mask, sig)
    if c < 0:
        even, odd = math.cos(phi), math.sin(phi)
    else:
        even, odd = math.cosh(phi), math.sinh(phi)
    coeffs = {0: complex(even)}
    coeffs[mask] = coeffs.get(mask, 0) + odd * factor
    return Multivector(sig, coeffs, COMPLEX)


# -- quaternion-type structure ------------------------------------------------


def verify_theorem4(sig: Signature) -> AxiomReport:
    """Check the commutator relations of the four Lie algebra pieces blade by blade."""
    return check_quaternion_algebra(sig, "commutator", WC_ROLES)


# -- subalgebra checks --------------------------------------------------------


def _type_spec(n: int, mapping: dict[int, Domain]) -> GradedSubspaceSpec:
    return GradedSubspaceSpec.from_ranks(
        n, {k: mapping[k % 4] for k in range(n + 1) if k % 4 in mapping}, COMPLEX
    )


def type_subalgebras(n: int) -> list[tuple[str, GradedSubspaceSpec]]:
    """The four type-span Lie subalgebras, skipping those empty at this ``n``."""
    R, I = Domain.REAL, Domain.IMAG
    named = [
        ("2", {2: R}),
        ("2 + i0", {2: R, 0: I}),
        ("2 + i1", {2: R, 1: I}),
        ("23", {2: R, 3: R}),
    ]
    out = []
    for name, mapping in named:
        spec = _type_spec(n, mapping)
        if not spec.is_empty():
            out.append((name, spec))
    return out


@dataclass
class SubalgebraCheck:
    source: str
    spec: GradedSubspaceSpec
    in_pattern: bool
    closed: bool
    ambient: GradedSubspaceSpec
    samples: int = 0
    group_failures: int = 0
    ambient_failures: int = 0
    epsilon_failures: int = 0
    max_group_residual: float = 0.0

    @property
    def ok(self) -> bool:
        return (
            self.in_pattern
            and self.closed
            and not (self.group_failures or self.ambient_failures or self.epsilon_failures)
        )

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "spec": self.spec.label(),
            "in_pattern": self.in_pattern,
            "closed": self.closed,
            "ambient": self.ambient.label(),
            "samples": self.samples,
            "group_failures": self.group_failures,
            "ambient_failures": self.ambient_failures,
            "epsilon_failures": self.epsilon_failures,
            "max_group_residual": self.max_group_residual,
        }


@dataclass
class SubalgebraReport:
    signature: Signature
    checks: list[SubalgebraCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self, with_residuals: bool = True) -> dict:
        checks = [c.to_dict() for c in self.checks]
        if not with_residuals:
            for c in checks:
                c.pop("max_group_residual")
        return {"signature": str(self.signature), "ok": self.ok, "checks": checks}


def epsilon_residual(u: Multivector, eps: float = 1e-6) -> tuple[float, float]:
    """``||U*U - e||_inf`` for ``U = e + eps u``, and its second-order bound.

    ``U*U - e = eps (u* + u) + eps^2 u* u``; for ``u* = -u`` only the
    second-order term remains, bounded by ``eps^2 ||u||_1^2``.
    """
    u = u.as_complex()
    U = Multivector.scalar(u.signature, 1, COMPLEX) + u * eps
    slack = 64 * np.finfo(float).eps * (1 + eps * u.norm1()) ** 2
    return group_residual(U), eps * eps * u.norm1() ** 2 + slack


def check_group_side(
    check: SubalgebraCheck,
    sig: Signature,
    rng: np.random.Generator,
    samples: int,
    tol: float = DEFAULT_GROUP_TOL,
) -> None:
    """Exponentiate random elements of ``check.spec`` and test the results."""
    for _ in range(samples):
        u = random_element(check.spec, sig, rng)
        U = mv_exp(u)
        res = group_residual(U)
        check.max_group_residual = max(check.max_group_residual, float(res))
        check.group_failures += bool(res > tol)
        check.ambient_failures += not element_in_spec(U, check.ambient, tol * max(1.0, U.norm_inf()))
        eps_res, bound = epsilon_residual(u)
        check.epsilon_failures += bool(eps_res > bound)
        check.samples += 1


def verify_theorem5_13(
    sig: Signature, samples: int = 20, seed: int = 0, exp_max_n: int = 5
) -> SubalgebraReport:
    """Check the Lie subalgebras of the pseudo-unitary group's Lie algebra.

    Covers the four type-span subalgebras and every rank-span subalgebra of
    the commutator catalog over the Lie algebra pattern, with augmentations.
    For ``n <= exp_max_n`` the exponentials of random elements are tested
    for group membership, for lying in the product closure of the
    subalgebra, and for the first-order relation ``U = e + eps u``.
    """
    n = sig.n
    if n > 10:
        raise LimitError("subalgebra verification is limited to n <= 10")
    rng = np.random.default_rng(seed)
    report = SubalgebraReport(sig)
    subjects = [(f"types {name}", spec) for name, spec in type_subalgebras(n)]
    subjects += [("ranks", spec) for spec in catalog("T13", n, COMPLEX, augmented=True)]
    for source, spec in subjects:
        check = SubalgebraCheck(
            source=source,
            spec=spec,
            in_pattern=spec.in_wc_pattern(),
            closed=closure_check(spec, "commutator", sig).closed,
            ambient=product_closure(spec, sig),
        )
        if n <= exp_max_n and samples:
            check_group_side(check, sig, rng, samples)
        report.checks.append(check)
    return report


# -- small-n Lie algebra / Lie group tables -----------------------------------


@dataclass(frozen=True)
class PrintedExp:
    """A printed closed form ``f(phi) e + g(phi) e^A`` for one signature.

    ``even`` and ``odd`` name the functions (``cos``, ``sin``, ``ch``, ``sh``)
    and ``odd_factor`` is the printed factor of the second term.
    """

    p: int
    q: int
    even: str
    odd: str
    odd_factor: complex


@dataclass(frozen=True)
class TableRow:
    n: int
    algebra: str
    # graded ambient of the group; None when only a one-parameter form is printed
    ambient: str | None = None
    # generator of the one-parameter group, as (blade indices, factor)
    generator: tuple[tuple[int, ...], complex] | None = None
    printed: tuple[PrintedExp, ...] = ()
    # the group side carries a determinant condition that is not checked
    det_condition: bool = False

    def algebra_spec(self) -> GradedSubspaceSpec:
        return parse_label(self.algebra, self.n)

    def ambient_spec(self) -> GradedSubspaceSpec | None:
        return parse_label(self.ambient, self.n) if self.ambient else None


def parse_label(label: str, n: int) -> GradedSubspaceSpec:
    """Inverse of :meth:`GradedSubspaceSpec.label` for complex specs."""
    ranks: dict[int, Domain] = {}
    for part in label.split("+"):
        part = part.strip()
        dom = {"i": Domain.IMAG, "c": Domain.FULL}.get(part[:1], Domain.REAL)
        k = int(part[1:] if dom is not Domain.REAL else part)
        ranks[k] = ranks.get(k, Domain.ABSENT).join(dom)
    return GradedSubspaceSpec.from_ranks(n, ranks, COMPLEX)


_I0 = ((), 1j)
_COS_I = ("cos", "sin", 1j)
_CH_I = ("ch", "sh", 1j)


def _printed(p: int, q: int, form: tuple[str, str, complex]) -> PrintedExp:
    return PrintedExp(p, q, *form)


def _i0_row(n: int) -> TableRow:
    return TableRow(
        n, "i0", generator=_I0, printed=tuple(_printed(p, n - p, _COS_I) for p in range(n, -1, -1))
    )


SMALL_N_TABLES: tuple[TableRow, ...] = (
    _i0_row(1),
    TableRow(1, "i1", generator=((1,), 1j), printed=(_printed(1, 0, _COS_I), _printed(0, 1, _CH_I))),
    _i0_row(2),
    TableRow(
        2,
        "2",
        generator=((1, 2), 1.0),
        printed=(_printed(2, 0, _COS_I), _printed(1, 1, _CH_I), _printed(0, 2, _COS_I)),
    ),
    TableRow(2, "i1 + 2", ambient="0 + i1 + 2"),
    TableRow(2, "i0 + 2", ambient="c0 + c2"),
    _i0_row(3),
    TableRow(3, "3", generator=((1, 2, 3), 1.0)),
    TableRow(3, "i1 + 2", ambient="0 + i1 + 2 + i3"),
    TableRow(3, "i0 + 2", ambient="c0 + c2"),
    TableRow(3, "2", ambient="0 + 2"),
    TableRow(3, "2 + 3", ambient="0 + 1 + 2 + 3"),
    TableRow(3, "i1 + 2 + 3", ambient="c0 + c1 + c2 + c3", det_condition=True),
    _i0_row(4),
    TableRow(4, "i4", generator=((1, 2, 3, 4), 1j)),
    TableRow(4, "i1 + 2", ambient="0 + i1 + 2 + i3 + 4"),
    TableRow(4, "2", ambient="0 + 2 + 4"),
    TableRow(4, "2 + 3", ambient="0 + 1 + 2 + 3 + 4"),
    TableRow(4, "i1 + 2 + 3 + i4", ambient="c0 + c1 + c2 + c3 + c4", det_condition=True),
    TableRow(4, "i0 + 2 + i4", ambient="c0 + c2 + c4"),
    TableRow(4, "2 + i4", ambient="c0 + c2 + c4", det_condition=True),
)

_FUNCS: dict[str, Callable[[float], float]] = {
    "cos": math.cos,
    "sin": math.sin,
    "ch": math.cosh,
    "sh": math.sinh,
}


def printed_exp(form: PrintedExp, mask: int, phi: float, sig: Signature) -> Multivector:
    coeffs = {0: complex(_FUNCS[form.even](phi))}
    coeffs[mask] = coeffs.get(mask, 0) + _FUNCS[form.odd](phi) * form.odd_factor
    return Multivector(sig, coeffs, COMPLEX)


@dataclass
class TableCheck:
    n: int
    signature: Signature
    algebra: str
    ambient: str | None
    algebra_closed: bool
    ambient_matches: bool | None
    # one-parameter rows: error of mv_exp against the closed form
    exp_error: float | None = None
    # "match", "suspected typo" or "" when nothing is printed
    printed_status: str = ""
    det_condition: bool = False
    group_failures: int = 0

    @property
    def ok(self) -> bool:
        return (
            self.algebra_closed
            and self.ambient_matches is not False
            and (self.exp_error is None or self.exp_error <= 1e-12)
            and not self.group_failures
        )

    def to_dict(self, with_errors: bool = True) -> dict:
        out = {
            "n": self.n,
            "signature": str(self.signature),
            "algebra": self.algebra,
            "ambient": self.ambient,
            "algebra_closed": self.algebra_closed,
            "ambient_matches": self.ambient_matches,
            "printed_status": self.printed_status,
            "det_condition_unchecked": self.det_condition,
            "group_failures": self.group_failures,
            "ok": self.ok,
        }
        if with_errors:
            out["exp_error"] = self.exp_error
        return out


PHIS = (-1.3, -0.4, 0.0, 0.5, 0.7, 2.0)


def check_table_row(row: TableRow, sig: Signature, samples: int = 20, seed: int = 0) -> TableCheck:
    if sig.n != row.n:
        raise InputError(f"row for n={row.n} checked with signature {sig}")
    spec = row.algebra_spec()
    ambient = row.ambient_spec()
    check = TableCheck(
        n=row.n,
        signature=sig,
        algebra=row.algebra,
        ambient=row.ambient,
        algebra_closed=spec.in_wc_pattern() and closure_check(spec, "commutator", sig).closed,
        ambient_matches=None if ambient is None else product_closure(spec, sig) == ambient,
        det_condition=row.det_condition,
    )
    if row.generator is not None:
        indices, factor = row.generator
        mask = blade_mask(indices, row.n)
        gen = Multivector(sig, {mask: factor}, COMPLEX)
        check.exp_error = max(
            (mv_exp(gen * phi) - one_parameter_exp(mask, factor, phi, sig)).norm_inf() for phi in PHIS
        )
        form = next((f for f in row.printed if (f.p, f.q) == (sig.p, sig.q)), None)
        if form is not None:
            agree = all(
                printed_exp(form, mask, phi, sig).allclose(one_parameter_exp(mask, factor, phi, sig))
                for phi in PHIS
            )
            check.printed_status = "match" if agree else "suspected typo"
    if ambient is not None and samples:
        rng = np.random.default_rng(seed)
        for _ in range(samples):
            U = mv_exp(random_element(spec, sig, rng))
            if not group_membership(U) or not element_in_spec(U, ambient, DEFAULT_GROUP_TOL * max(1.0, U.norm_inf())):
                check.group_failures += 1
    return check


def verify_tables(n: int | None = None, samples: int = 20, seed: int = 0) -> list[TableCheck]:
    """Check every small-n table row in every signature (optionally one ``n``)."""
    out = []
    for row in SMALL_N_TABLES:
        if n is not None and row.n != n:
            continue
        for sig in Signature.all_for(row.n):
            out.append(check_table_row(row, sig, samples, seed))
    return out

