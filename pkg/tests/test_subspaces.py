import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from clifford_typify.algebra import COMPLEX, REAL, Signature
from clifford_typify.errors import InputError, LimitError, ParseError
from clifford_typify.subspaces import (
    Domain,
    GradedSubspaceSpec,
    blade_interaction_table,
    closure_check,
    enumerate_closed,
    grade_interaction,
    is_closed,
    product_closure,
    rank_product_range,
    rule_interaction_table,
    thread_count,
    wc_domain,
)

R, I, C, A = Domain.REAL, Domain.IMAG, Domain.FULL, Domain.ABSENT
OPS = ("product", "commutator", "anticommutator")


class TestDomain:
    def test_times(self):
        assert R.times(R) == R and I.times(I) == R and R.times(I) == I
        assert C.times(R) == C and A.times(C) == A

    def test_lattice(self):
        assert C.contains(I) and not R.contains(I) and R.contains(A)
        assert R.join(I) == C and C.meet(I) == I

    def test_codes(self):
        assert [d.code for d in Domain] == ["-", "r", "i", "c"]
        with pytest.raises(ParseError):
            Domain.from_code("x")

    def test_wc_domain(self):
        assert [wc_domain(k).code for k in range(8)] == list("iirriirr")


class TestSpec:
    def test_line_round_trip(self):
        spec = GradedSubspaceSpec.from_ranks(4, {0: "i", 2: "r", 4: "c"}, COMPLEX)
        assert spec.to_line() == "n=4 field=complex 0:i 1:- 2:r 3:- 4:c"
        assert GradedSubspaceSpec.parse(spec.to_line()) == spec
        assert spec.label() == "i0 + 2 + c4"

    def test_parse_without_n(self):
        assert GradedSubspaceSpec.parse("0:r 2:r").n == 2

    @pytest.mark.parametrize("line", ["n=2 0:q", "n=2 5:r", "n=2 x:r", "n=2 0:r 0:r", "n=2 foo=1", "bogus"])
    def test_parse_errors(self, line):
        with pytest.raises(ParseError):
            GradedSubspaceSpec.parse(line)

    def test_real_field_forbids_imaginary(self):
        with pytest.raises(InputError):
            GradedSubspaceSpec.from_ranks(2, {0: "i"}, REAL)

    def test_order_is_lexicographic_by_domain(self):
        a = GradedSubspaceSpec.from_ranks(2, [0])
        b = GradedSubspaceSpec.from_ranks(2, [1])
        assert b < a


class TestRankRange:
    def test_example(self):
        assert rank_product_range(3, 2, 4) == (1, 3)
        assert rank_product_range(2, 3, 4) == (1, 3)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_against_oracle(self, n, derived):
        for key, ranks in derived["rank_pairs"][f"product {n}"].items():
            k, l = map(int, key.split())
            assert list(rank_product_range(k, l, n)) == ranks

    @pytest.mark.parametrize("n", range(1, 6))
    @pytest.mark.parametrize("op", OPS)
    def test_parity_rule_against_oracle(self, n, op, derived):
        for key, ranks in derived["rank_pairs"][f"{op} {n}"].items():
            k, l = map(int, key.split())
            assert list(grade_interaction(k, l, n, op)) == ranks

    @pytest.mark.parametrize("n", [6, 7, 8])
    def test_parity_rule_matches_blades_every_signature(self, n):
        for sig in Signature.all_for(n):
            for op in OPS:
                blade = blade_interaction_table(sig, op)
                rule = rule_interaction_table(n, op)
                assert {k: set(v) for k, v in blade.items()} == {k: set(v) for k, v in rule.items()}

    def test_rule_witnesses_are_genuine(self):
        n = 9
        sig = Signature(n, 0)
        table = rule_interaction_table(n, "commutator")
        for (k, l), cell in table.items():
            for m, (a, b) in cell.items():
                assert (a.bit_count(), b.bit_count(), (a ^ b).bit_count()) == (k, l, m)
                assert a < sig.size and b < sig.size

    def test_bad_ranks(self):
        with pytest.raises(InputError):
            rank_product_range(5, 1, 4)


class TestClosure:
    @pytest.mark.parametrize("n", range(1, 5))
    @pytest.mark.parametrize("op", OPS)
    def test_real_specs_against_oracle(self, n, op):
        for doms in itertools.product((0, 1), repeat=n + 1):
            spec = GradedSubspaceSpec(doms, REAL)
            for p in range(n + 1):
                got = closure_check(spec, op, Signature(p, n - p)).closed
                assert got == oracles.closed_oracle(doms, op, p)

    @given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, 3), min_size=n + 1, max_size=n + 1))), st.sampled_from(OPS))
    def test_complex_specs_against_oracle(self, case, op):
        n, doms = case
        spec = GradedSubspaceSpec(tuple(doms), COMPLEX)
        assert closure_check(spec, op).closed == oracles.closed_oracle(tuple(doms), op, n)

    def test_violation_witness(self):
        spec = GradedSubspaceSpec.from_ranks(3, [1])
        report = closure_check(spec, "commutator")
        v = report.violations[0]
        assert (v.k, v.l, v.m) == (1, 1, 2) and v.available == A
        a, b = v.witness
        assert (a.bit_count(), b.bit_count(), (a ^ b).bit_count()) == (1, 1, 2)

    def test_even_subalgebra(self):
        for n in range(1, 9):
            even = GradedSubspaceSpec.from_ranks(n, range(0, n + 1, 2))
            assert is_closed(even, "product")

    def test_reports_are_signature_free(self):
        spec = GradedSubspaceSpec.from_ranks(4, [1, 2])
        dumps = {str(closure_check(spec, "product", s).to_dict()) for s in Signature.all_for(4)}
        assert len(dumps) == 1

    def test_product_closure(self):
        spec = GradedSubspaceSpec.from_ranks(4, {1: I, 2: R}, COMPLEX)
        assert product_closure(spec).label() == "0 + i1 + 2 + i3 + 4"
        assert product_closure(GradedSubspaceSpec.from_ranks(3, [2])).label() == "0 + 2"


class TestEnumeration:
    @pytest.mark.parametrize("n", range(1, 5))
    @pytest.mark.parametrize("op", OPS)
    def test_real_matches_brute_force(self, n, op, derived):
        got = [list(map(int, s.domains)) for s in enumerate_closed(n, op, REAL)]
        assert sorted(got) == sorted(derived["closed_specs"][f"{op} real {n}"])

    @pytest.mark.parametrize("n", range(1, 4))
    @pytest.mark.parametrize("op", OPS)
    def test_complex_matches_brute_force(self, n, op, derived):
        got = [list(map(int, s.domains)) for s in enumerate_closed(n, op, COMPLEX)]
        assert sorted(got) == sorted(derived["closed_specs"][f"{op} complex {n}"])

    def test_canonical_order(self):
        found = enumerate_closed(6, "commutator", COMPLEX)
        assert found == sorted(found)

    def test_every_result_is_closed(self):
        for spec in enumerate_closed(9, "anticommutator", REAL):
            assert is_closed(spec, "anticommutator")

    def test_wc_pattern(self):
        found = enumerate_closed(6, "commutator", COMPLEX, pattern="wc")
        assert all(s.in_wc_pattern() for s in found)
        full = [s for s in enumerate_closed(6, "commutator", COMPLEX) if s.in_wc_pattern()]
        assert found == full

    def test_types_pattern(self):
        for s in enumerate_closed(6, "commutator", COMPLEX, pattern="types"):
            assert all(s[k] == s[k - 4] for k in range(4, 7))

    def test_parallel_matches_serial(self):
        serial = enumerate_closed(10, "commutator", REAL, workers=1)
        assert enumerate_closed(10, "commutator", REAL, workers=2) == serial

    def test_limits(self):
        with pytest.raises(LimitError):
            enumerate_closed(14, "commutator", REAL)
        with pytest.raises(LimitError):
            enumerate_closed(11, "commutator", COMPLEX)
        with pytest.raises(InputError):
            enumerate_closed(3, "commutator", REAL, pattern="wc")

    def test_thread_env(self, monkeypatch):
        monkeypatch.setenv("CLIFFORD_TYPIFY_THREADS", "3")
        assert thread_count() == 3
        monkeypatch.setenv("CLIFFORD_TYPIFY_THREADS", "0")
        with pytest.raises(InputError):
            thread_count()
