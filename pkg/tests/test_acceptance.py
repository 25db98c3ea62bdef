"""Acceptance suite: one PASS/FAIL line per criterion, with pinned limits.

The lines are collected in ``LINES`` and printed by the terminal summary
hook in ``conftest.py``. Run under pytest or directly with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import json
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from clifford_typify.algebra import COMPLEX, REAL, Multivector, Signature, dense_product, geometric_product  # noqa: E402
from clifford_typify.catalogs import THEOREM_IDS, THEOREMS, catalog, diff_catalog  # noqa: E402
from clifford_typify.subspaces import (  # noqa: E402
    OPS,
    GradedSubspaceSpec,
    blade_interaction_table,
    closure_check,
    enumerate_closed,
    rank_product_range,
)
from clifford_typify.typecalc import as_type, comm_type, verify_type_tables  # noqa: E402
from clifford_typify.unitary import (  # noqa: E402
    SMALL_N_TABLES,
    group_membership,
    mv_exp,
    printed_exp,
    random_element,
    verify_theorem4,
    wc_spec,
)

TABLE = Path(__file__).parent / "fixtures" / "commutator_table.tsv"

ASSOC_TOL = 1e-12
ASSOC_TRIPLES = 1000
GROUP_TOL = 1e-9
GROUP_SAMPLES = 200
TABLE_TOL = 1e-12
COUNTS = {12: 31, 13: 43}
COUNT_CONVENTION = "all nonempty wc-pattern rank specs closed under the commutator, reducible ones included"

LINES: list[str] = []


def signatures_upto(n_max: int):
    for n in range(1, n_max + 1):
        yield from Signature.all_for(n)


def report(number: int, title: str, result: tuple[bool, str, float], limit: float | None) -> None:
    ok, detail, elapsed = result
    in_time = limit is None or elapsed < limit
    timing = f"{elapsed:.2f}s" + ("" if limit is None else f" (limit {limit:g}s)")
    line = f"{'PASS' if ok and in_time else 'FAIL'} criterion {number}: {title} [{timing}] {detail}"
    LINES.append(line)
    assert ok, detail
    assert in_time, f"took {timing}"


def run_timed(check):
    start = time.perf_counter()
    ok, detail = check()
    return ok, detail, time.perf_counter() - start


# -- 1 ----------------------------------------------------------------------


def generators_and_associativity():
    rng = np.random.default_rng(1)
    bad_generators = []
    worst = 0.0
    for sig in signatures_upto(6):
        for a in range(1, sig.n + 1):
            for b in range(1, sig.n + 1):
                ea, eb = Multivector.blade(sig, [a]), Multivector.blade(sig, [b])
                eta = sig.metric(a) if a == b else 0
                if ea * eb + eb * ea != Multivector.scalar(sig, 2 * eta):
                    bad_generators.append((str(sig), a, b))
        for i in range(ASSOC_TRIPLES):
            u, v, w = rng.uniform(-1, 1, (3, sig.size))
            left = dense_product(dense_product(u, v, sig), w, sig)
            right = dense_product(u, dense_product(v, w, sig), sig)
            worst = max(worst, float(np.max(np.abs(left - right))))
            if i < 5:
                # the dense path agrees with the sparse product
                U, V = Multivector.from_dense(sig, u), Multivector.from_dense(sig, v)
                worst = max(worst, float(np.max(np.abs(geometric_product(U, V).to_dense() - dense_product(u, v, sig)))))
    ok = not bad_generators and worst <= ASSOC_TOL
    return ok, f"generator failures={bad_generators[:3]} max associativity error={worst:.1e}"


def test_criterion_1():
    report(1, "generator relation and associativity, n <= 6", run_timed(generators_and_associativity), limit=10)


# -- 2 ----------------------------------------------------------------------


def type_tables():
    rows = [line.split("\t") for line in TABLE.read_text().splitlines()]
    head = rows[0][1:]
    mismatched = [
        (r[0], c) for r in rows[1:] for c, v in zip(head, r[1:]) if comm_type(as_type(r[0]), as_type(c)) != as_type(v)
    ]
    cells = sum(len(r) - 1 for r in rows[1:])
    violations = 0
    for sig in signatures_upto(6):
        violations += len(verify_type_tables(sig).violations)
    ok = cells == 225 and not mismatched and violations == 0
    return ok, f"printed cells={cells} mismatched={mismatched[:3]} blade violations={violations}"


def test_criterion_2():
    report(2, "type tables match the printed table and every blade pair, n <= 6", run_timed(type_tables), limit=60)


# -- 3 ----------------------------------------------------------------------


def rank_range():
    outside, unattained = [], []
    for sig in signatures_upto(8):
        for (k, l), found in blade_interaction_table(sig, "product").items():
            predicted = set(rank_product_range(k, l, sig.n))
            outside += [(str(sig), k, l, m) for m in set(found) - predicted]
            unattained += [(str(sig), k, l, m) for m in predicted - set(found)]
    ok = not outside and not unattained
    return ok, f"outside range={outside[:3]} unattained={unattained[:3]}"


def test_criterion_3():
    report(3, "rank range is exact at blade level, n <= 8", run_timed(rank_range), limit=120)


# -- 4 ----------------------------------------------------------------------


def catalogs_closed():
    checked = 0
    failures = []
    for tid, field in sorted(THEOREMS):
        op = THEOREMS[(tid, field)].op
        for n in range(1, 11):
            # blade-level tables differ per signature only up to n = 8
            sigs = Signature.all_for(n) if n <= 8 else [None]
            for spec in catalog(tid, n, field, augmented=True):
                for sig in sigs:
                    checked += 1
                    if not closure_check(spec, op, sig).closed:
                        failures.append((tid, field, n, str(sig), spec.label()))
    covered = {tid for tid, _ in THEOREMS}
    ok = not failures and covered == set(THEOREM_IDS)
    return ok, f"checks={checked} violations={len(failures)} {failures[:3]}"


def test_criterion_4():
    report(4, "every catalog spec is closed, n <= 10", run_timed(catalogs_closed), limit=300)


# -- 5 ----------------------------------------------------------------------


def enumeration_complete():
    cases = [(tid, REAL, 6) for tid in ("T9", "T11")] + [(tid, COMPLEX, 5) for tid in ("T10", "T12")]
    nonempty = []
    for tid, field, n_max in cases:
        for n in range(1, n_max + 1):
            diff = diff_catalog(tid, n, field)
            if not diff.empty:
                nonempty.append(json.dumps(diff.to_dict()))
    return not nonempty, f"nonempty diffs={len(nonempty)} " + " ".join(nonempty[:2])


def test_criterion_5():
    report(5, "enumeration agrees with catalogs T9-T12", run_timed(enumeration_complete), limit=300)


# -- 6 ----------------------------------------------------------------------


def wc_counts():
    got = {n: len(enumerate_closed(n, "commutator", COMPLEX, pattern="wc")) for n in COUNTS}
    ok = got == COUNTS
    return ok, f"counts={got} expected={COUNTS} convention: {COUNT_CONVENTION}"


def test_criterion_6():
    report(6, "31 closed wc-pattern specs at n = 12 and 43 at n = 13", run_timed(wc_counts), limit=120)


# -- 7 ----------------------------------------------------------------------


def quaternion_structure():
    failures = []
    pairs = 0
    for sig in signatures_upto(8):
        result = verify_theorem4(sig)
        pairs += result.pairs_checked
        if not result.ok:
            failures.append((str(sig), result.violations[0].to_dict()))
    return not failures, f"blade pairs={pairs} failures={failures[:2]}"


def test_criterion_7():
    report(7, "Lie algebra is of quaternion type at blade level, n <= 8", run_timed(quaternion_structure), limit=60)


# -- 8 ----------------------------------------------------------------------


def group_checks():
    rng = np.random.default_rng(8)
    outside = 0
    worst = 0.0
    for sig in signatures_upto(5):
        spec = wc_spec(sig.n)
        for _ in range(GROUP_SAMPLES):
            u = random_element(spec, sig, rng, 1.0)
            assert u.norm_inf() <= 1.0
            outside += not group_membership(mv_exp(u), GROUP_TOL)
    table_errors = 0
    typo_mismatch = []
    phis = (-1.3, -0.4, 0.5, 2.0)
    for row in SMALL_N_TABLES:
        if row.generator is None:
            continue
        indices, factor = row.generator
        mask = sum(1 << (a - 1) for a in indices)
        for sig in Signature.all_for(row.n):
            form = next((f for f in row.printed if (f.p, f.q) == (sig.p, sig.q)), None)
            printed_agrees = True
            for phi in phis:
                want = oracles.exp_oracle({tuple(indices): factor * phi}, row.n, sig.p)
                got = mv_exp(Multivector(sig, {mask: factor * phi}, COMPLEX)).to_dense()
                err = float(np.max(np.abs(got - want)))
                worst = max(worst, err)
                table_errors += err > TABLE_TOL
                if form is not None:
                    printed = printed_exp(form, mask, phi, sig).to_dense()
                    printed_agrees &= bool(np.max(np.abs(printed - want)) <= TABLE_TOL)
            if form is not None:
                # suspected-typo cells are exactly the printed forms that disagree with the oracle
                flagged = row.n == 2 and row.algebra == "2"
                if printed_agrees == flagged:
                    typo_mismatch.append((row.n, row.algebra, str(sig)))
    ok = outside == 0 and table_errors == 0 and not typo_mismatch
    detail = f"non-members={outside} table cells over tol={table_errors} max error={worst:.1e} typo flags off={typo_mismatch}"
    return ok, detail


def test_criterion_8():
    report(8, "exponentials land in the group and match the small-n tables", run_timed(group_checks), limit=60)


# -- 9 ----------------------------------------------------------------------


def signature_independence():
    differing = []
    reports = 0
    for n in range(1, 7):
        sigs = Signature.all_for(n)
        specs = [GradedSubspaceSpec(d, REAL) for d in _domain_tuples(n, (0, 1))]
        specs += [GradedSubspaceSpec(d, COMPLEX) for d in _domain_tuples(n, (0, 1, 2, 3))]
        for op in OPS:
            for spec in specs:
                dumps = {json.dumps(closure_check(spec, op, s).to_dict(), sort_keys=True) for s in sigs}
                reports += len(sigs)
                if len(dumps) != 1:
                    differing.append((op, spec.to_line()))
    return not differing, f"reports={reports} differing={differing[:3]}"


def _domain_tuples(n: int, choices: tuple[int, ...]):
    return itertools.product(choices, repeat=n + 1)


def test_criterion_9():
    report(9, "closure reports are identical across signatures, n <= 6", run_timed(signature_independence), limit=None)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
