from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import pitrec.metrics as metrics
from pitrec.errors import BaseOutOfRange, InstanceTooLarge
from pitrec.metrics import (
    CaseTag,
    REFERENCE_TOLERANCE,
    check_closed_vs_greedy,
    kmin_full_closed,
    l1,
    l2_case_a,
    l2_case_b,
    l2_closed,
    l2_full,
    l2_oracle_exhaustive,
    l2_oracle_greedy,
    optimal_base,
    reference_rows,
    report,
    run_verification,
    s_value,
    sweep,
)
from pitrec.radix import Base, decompose


class TestSValue:
    def test_known_values(self):
        assert s_value(2, 8) == 126
        assert s_value(3, 6) == 120

    @pytest.mark.parametrize("p", [2, 3, 7, 255])
    def test_rank_two_is_zero(self, p):
        assert s_value(p, 2) == 0

    @pytest.mark.parametrize("p", [2, 5, 1000])
    def test_rank_one_is_minus_one(self, p):
        assert s_value(p, 1) == -1


class TestClosedForms:
    def test_l1(self):
        assert l1(decompose(256, 2)) == 2048
        assert l1(decompose(256, 256)) == 256
        assert l1(decompose(256, 3)) == 1536

    @pytest.mark.parametrize(
        "p,expected",
        [(2, 1554), (3, 1106), (6, 720), (13, 573), (15, 513), (16, 496), (256, 256)],
    )
    def test_l2_byte_alphabet(self, p, expected):
        assert l2_closed(decompose(256, p)) == expected

    def test_l2_full(self):
        assert l2_full(2, 2) == 6
        assert l2_full(2, 8) == 1554
        assert l2_full(3, 1) == 3

    def test_kmin_full_closed(self):
        assert kmin_full_closed(4, 4) == Fraction(8244, 9216)
        assert kmin_full_closed(2, 2) == Fraction(3, 4)
        assert kmin_full_closed(2, 1) == 1

    def test_boundary_instance(self):
        # d == S at (p=2, n=8, d=126): both branches give the same total
        assert l2_case_a(2, 8, 126) == l2_case_b(2, 8, 126) == 1538

    def test_boundary_agreement_grid(self):
        for p in range(2, 17):
            for n in range(2, 7):
                s = s_value(p, n)
                assert l2_case_a(p, n, s) == l2_case_b(p, n, s)

    def test_full_alphabet_consistency_grid(self):
        for p in range(2, 17):
            for n in range(1, 7):
                full = l2_full(p, n)
                assert full == l2_closed(decompose(p**n, p))
                assert kmin_full_closed(p, n) == Fraction(full, n * p**n)


class TestReport:
    def test_byte_alphabet_binary(self):
        rep = report(decompose(256, 2))
        assert (rep.L1, rep.L2, rep.S) == (2048, 1554, 126)
        assert rep.case_tag is CaseTag.B
        assert rep.k_min == Fraction(1554, 2048) == Fraction(777, 1024)

    def test_byte_alphabet_base_15(self):
        rep = report(decompose(256, 15))
        assert rep.k_min == Fraction(513, 768)

    def test_degenerate_base(self):
        rep = report(decompose(256, 256))
        assert rep.k_min == 1
        assert rep.params.n == 1

    def test_case_a_tag(self):
        assert report(decompose(256, 3)).case_tag is CaseTag.A

    def test_boundary_tag(self):
        # l_A = 254 decomposes over p=2 to (n=8, d=126) with S = 126
        rep = report(decompose(254, 2))
        assert rep.params.d == rep.S == 126
        assert rep.case_tag is CaseTag.BOUNDARY

    @settings(max_examples=100, deadline=None)
    @given(st.integers(2, 64), st.integers(2, 10**4))
    def test_kmin_bounds(self, p, l_A):
        rep = report(decompose(l_A, p))
        assert rep.L2 <= rep.L1
        assert rep.k_min <= 1
        assert (rep.k_min == 1) == (rep.params.n == 1)


class TestOracles:
    def test_greedy_known_values(self):
        assert l2_oracle_greedy(decompose(256, 2)) == 1554
        assert l2_oracle_greedy(decompose(256, 13)) == 573
        assert l2_oracle_greedy(decompose(3, 3)) == 3

    def test_exhaustive_known_values(self):
        assert l2_oracle_exhaustive(decompose(4, 2)) == 6
        assert l2_oracle_exhaustive(decompose(2, 3)) == 2

    def test_exhaustive_bounds(self):
        with pytest.raises(InstanceTooLarge):
            l2_oracle_exhaustive(decompose(100, 2))
        with pytest.raises(InstanceTooLarge):
            l2_oracle_exhaustive(decompose(4, 6))

    def test_greedy_is_optimal_everywhere_feasible(self):
        for p in range(2, 6):
            for l_A in range(2, 7):
                params = decompose(l_A, p)
                assert l2_oracle_greedy(params) == l2_oracle_exhaustive(params)

    def test_closed_equals_greedy_exhaustively_to_rank_four(self):
        # every valid d for p in [2, 16], n in [1, 4]
        for p in range(2, 17):
            for n in range(1, 5):
                for d in range(1, p ** (n - 1) * (p - 1) + 1):
                    params = decompose(p ** (n - 1) + d, p)
                    assert params.n == n and params.d == d
                    assert l2_closed(params) == l2_oracle_greedy(params)


class TestSweep:
    def test_byte_alphabet_low_bases(self):
        ks = [rep.k_min for rep in sweep(256, 2, 4)]
        assert ks == [Fraction(777, 1024), Fraction(553, 768), Fraction(229, 256)]

    def test_single_base(self):
        (rep,) = sweep(256, 16, 16)
        assert rep.k_min == Fraction(496, 512)

    def test_tiny_alphabet(self):
        assert [rep.k_min for rep in sweep(4, 2, 4)] == [
            Fraction(3, 4),
            Fraction(5, 8),
            Fraction(1),
        ]

    def test_ascending_and_deterministic(self):
        reports = sweep(300, 2, 30)
        assert [int(r.params.p) for r in reports] == list(range(2, 31))
        assert reports == sweep(300, 2, 30)

    def test_invalid_ranges(self):
        with pytest.raises(ValueError):
            sweep(256, 10, 5)
        with pytest.raises(ValueError):
            sweep(4, 2, 5)
        with pytest.raises(BaseOutOfRange):
            sweep(256, 1, 4)


class TestOptimalBase:
    def test_byte_alphabet(self):
        assert optimal_base(256) == (Base(255), Fraction(257, 512))

    def test_two_symbols_tie_breaks_low(self):
        assert optimal_base(2) == (Base(2), Fraction(1))

    def test_four_symbols(self):
        assert optimal_base(4) == (Base(3), Fraction(5, 8))


class TestReferenceTable:
    def test_all_rows_pass(self):
        rows = reference_rows()
        assert all(row.passed for row in rows)
        assert [row.p for row in rows] == [2, 3, 4, 6, 13, 15, 16, 256]

    def test_worst_row_is_base_13(self):
        rows = {row.p: row for row in reference_rows()}
        assert rows[13].computed == Fraction(573, 768)
        assert max(reference_rows(), key=lambda r: r.delta).p == 13
        assert rows[13].delta < REFERENCE_TOLERANCE


class TestVerification:
    def test_all_checks_pass_small(self):
        results = run_verification(max_p=5, max_n=4)
        assert all(res.ok for res in results)
        assert len(results) == 4

    def test_case_counts_default_grid(self):
        results = {res.name: res for res in run_verification()}
        assert results["closed form vs greedy oracle"].cases == sum(
            p**6 - 1 for p in range(2, 17)
        )
        assert results["boundary agreement at d = S"].cases == 75
        assert results["full-alphabet identities"].cases == 90
        assert results["greedy vs exhaustive minimum"].cases == 20

    def test_bounds_enforced(self):
        with pytest.raises(ValueError):
            run_verification(max_p=17)
        with pytest.raises(ValueError):
            run_verification(max_n=7)

    def test_negative_control(self, monkeypatch):
        # corrupt one branch and the suite must report a counterexample
        real = metrics.l2_case_b
        monkeypatch.setattr(metrics, "l2_case_b", lambda p, n, d: real(p, n, d) + 1)
        result = check_closed_vs_greedy(max_p=5, max_n=4, samples=100)
        assert not result.ok
        assert "counterexample" in result.detail
