import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ballapprox import (
    Branch,
    L1Operator,
    TailRule,
    ValidationError,
    best_ball_approx_l1,
    dist_ball_l1,
    ess_norm,
    finite_column_oracle,
    op_norm,
    residual_norm,
    truncate_column,
)

from helpers import random_l1


class TestDistance:
    def test_worked_column(self):
        t = L1Operator(((0.6, 0.9, 0.9),), (), TailRule.const(1))
        assert dist_ball_l1(t) == pytest.approx(1.4, abs=1e-15)  # max(2.4 - 1, 1)

    def test_small_column_tail_dominates(self):
        t = L1Operator(((0.3,),), (), TailRule.const(0.5))
        assert dist_ball_l1(t) == 0.5

    def test_unweighted_shift_tail(self):
        t = L1Operator((), (), TailRule.const(1))
        assert dist_ball_l1(t) == 1.0

    def test_compact_in_ball(self):
        t = L1Operator(((0.3, 0.3),), (0.2,), TailRule.const(0))
        assert dist_ball_l1(t) == 0.0


class TestTruncateColumn:
    def test_worked_column_split(self):
        out = truncate_column((0.6, 0.9, 0.9), 1.4)
        # drop the last entry (0.9), remove 0.5 more from the middle one
        np.testing.assert_allclose(out, [0.6, 0.4, 0.0], atol=1e-15)
        # split fraction is 5/9 of the middle entry
        assert out[1] == pytest.approx((1.0 - 5.0 / 9.0) * 0.9, abs=1e-15)

    def test_zero_removal_is_identity(self):
        assert truncate_column((0.5, -0.2), 0.0) == (0.5, -0.2)

    def test_removal_of_everything(self):
        assert truncate_column((0.5, -0.2), 0.7) == (0.0, 0.0)
        assert truncate_column((0.5, -0.2), 5.0) == (0.0, 0.0)

    def test_signs_preserved(self):
        out = truncate_column((-0.6, 0.9, -0.9), 1.4)
        np.testing.assert_allclose(out, [-0.6, 0.4, 0.0], atol=1e-15)

    def test_interior_zeros_skipped(self):
        out = truncate_column((0.5, 0.0, 0.5), 0.5)
        np.testing.assert_allclose(out, [0.5, 0.0, 0.0], atol=1e-15)

    def test_negative_removal_rejected(self):
        with pytest.raises(ValidationError):
            truncate_column((0.5,), -0.1)

    @given(
        st.lists(st.floats(-2, 2, allow_nan=False, allow_infinity=False), max_size=8),
        st.floats(0, 5, allow_nan=False, allow_infinity=False),
    )
    @settings(max_examples=200, deadline=None)
    def test_mass_identities(self, col, d):
        out = truncate_column(col, d)
        mass = sum(abs(v) for v in col)
        kept = sum(abs(v) for v in out)
        removed = sum(abs(a - b) for a, b in zip(col, out))
        assert kept == pytest.approx(max(mass - d, 0.0), abs=1e-12)
        assert removed == pytest.approx(min(mass, d), abs=1e-12)
        # truncation keeps a prefix and zeroes a suffix
        changed = [i for i, (a, b) in enumerate(zip(col, out)) if a != b]
        if changed:
            first = changed[0]
            assert all(v == 0.0 for v in out[first + 1 :])


class TestBestApprox:
    def test_worked_instance(self):
        t = L1Operator(((0.6, 0.9, 0.9),), (), TailRule.const(1))
        r = best_ball_approx_l1(t)
        assert r.branch is Branch.L1_TRUNCATION
        assert r.distance == pytest.approx(1.4, abs=1e-12)
        np.testing.assert_allclose(r.approximant.columns[0], [0.6, 0.4, 0.0], atol=1e-15)
        assert r.approximant.tail == TailRule.const(0.0)
        assert op_norm(r.approximant) <= 1.0 + 1e-12

    def test_tail_only_operator(self):
        t = L1Operator((), (), TailRule.const(1))
        r = best_ball_approx_l1(t)
        assert r.distance == 1.0
        assert op_norm(r.approximant) == 0.0

    def test_listed_weights_truncate(self):
        t = L1Operator((), (1.7, 0.3), TailRule.const(0.5))
        r = best_ball_approx_l1(t)
        # d = max(1.7 - 1, 0.5) = 0.7
        assert r.distance == pytest.approx(0.7, abs=1e-12)
        np.testing.assert_allclose(r.approximant.tail_weights, [1.0, 0.0], atol=1e-12)

    def test_random_instances(self):
        rng = np.random.default_rng(41)
        for _ in range(150):
            t = random_l1(rng)
            r = best_ball_approx_l1(t)
            formula = max(op_norm(t) - 1.0, ess_norm(t), 0.0)
            assert r.distance == pytest.approx(formula, abs=1e-10)
            assert op_norm(r.approximant) <= 1.0 + 1e-12
            for j in range(1, r.approximant.column_count_listed() + 1):
                assert r.approximant.column_mass(j) <= 1.0 + 1e-12
            assert residual_norm(t, r.approximant) == r.distance


class TestFiniteColumnOracle:
    def test_worked_column(self):
        t = L1Operator(((0.6, 0.9, 0.9),), (), TailRule.const(1))
        assert finite_column_oracle(t, 10) == pytest.approx(1.4, abs=1e-15)

    def test_blind_to_essential_part(self):
        t = L1Operator((), (), TailRule.const(1))
        assert finite_column_oracle(t, 50) == 0.0
        assert dist_ball_l1(t) == 1.0

    def test_equality_when_norm_term_dominates(self):
        rng = np.random.default_rng(43)
        hits = 0
        for _ in range(100):
            t = random_l1(rng)
            n = t.column_count_listed() + 1
            lower = finite_column_oracle(t, n)
            d = dist_ball_l1(t)
            assert lower <= d + 1e-12
            if op_norm(t) - 1.0 >= ess_norm(t):
                assert lower == pytest.approx(max(op_norm(t) - 1.0, 0.0), abs=1e-12)
                hits += 1
        assert hits > 10  # the regime actually occurred

    def test_needs_explicit_columns(self):
        t = L1Operator(((0.5,), (0.5,)), (), TailRule.const(0))
        with pytest.raises(ValidationError):
            finite_column_oracle(t, 1)
