"""Seeded instance generators shared by unit and acceptance tests."""

from __future__ import annotations

import numpy as np

from ballapprox import HilbertOperator, L1Operator, TailRule


def random_tail(rng, allow_const_zero=True) -> TailRule:
    if rng.random() < 0.5:
        if allow_const_zero and rng.random() < 0.25:
            return TailRule.const(0.0)
        return TailRule.const(float(rng.uniform(-2.5, 2.5)))
    limit = float(rng.uniform(0.2, 2.5)) * (1.0 if rng.random() < 0.5 else -1.0)
    return TailRule.geometric(limit, float(rng.uniform(0.05, 0.95)))


def random_entry_operator(rng, max_len=12) -> HilbertOperator:
    """Random diagonal or shift model covering all construction branches."""
    n = int(rng.integers(0, max_len + 1))
    entries = rng.uniform(-3.0, 3.0, n)
    tail = random_tail(rng)
    ctor = (
        HilbertOperator.diagonal if rng.random() < 0.5 else HilbertOperator.weighted_shift
    )
    t = ctor(tuple(float(e) for e in entries), tail)
    if rng.random() < 0.25:
        # scale into the unit ball to exercise the small-norm branch
        from ballapprox import op_norm, scale

        nrm = op_norm(t)
        if nrm > 0:
            t = scale(t, float(rng.uniform(0.3, 1.0)) / nrm)
    return t


def random_matrix_operator(rng, max_dim=12) -> HilbertOperator:
    m = int(rng.integers(1, max_dim + 1))
    spread = float(rng.choice([0.3, 0.8, 1.5, 2.5]))
    mat = rng.standard_normal((m, m)) * spread / np.sqrt(m)
    return HilbertOperator.finite_matrix(mat)


def random_hilbert(rng, max_len=12, max_dim=12) -> HilbertOperator:
    if rng.random() < 1.0 / 3.0:
        return random_matrix_operator(rng, max_dim)
    return random_entry_operator(rng, max_len)


def random_l1(rng, max_cols=4, max_support=5) -> L1Operator:
    n_cols = int(rng.integers(0, max_cols + 1))
    cols = []
    for _ in range(n_cols):
        support = int(rng.integers(0, max_support + 1))
        cols.append(tuple(float(v) for v in rng.uniform(-1.5, 1.5, support)))
    n_weights = int(rng.integers(0, 4))
    weights = tuple(float(v) for v in rng.uniform(-2.0, 2.0, n_weights))
    if rng.random() < 0.25:
        tail = TailRule.const(0.0)
    else:
        tail = TailRule.const(float(rng.uniform(-1.5, 1.5)))
    return L1Operator(tuple(cols), weights, tail)


def random_positive_diagonal(rng, max_len=10) -> HilbertOperator:
    n = int(rng.integers(0, max_len + 1))
    entries = tuple(float(v) for v in rng.uniform(0.0, 3.0, n))
    if rng.random() < 0.4:
        tail = TailRule.const(float(rng.uniform(0.0, 2.0)))
    else:
        tail = TailRule.geometric(float(rng.uniform(0.1, 2.0)), float(rng.uniform(0.1, 0.9)))
    return HilbertOperator.diagonal(entries, tail)


def random_nonattaining(rng, max_len=8) -> HilbertOperator:
    """Norm above 1 carried only by a strictly approaching tail."""
    limit = float(rng.uniform(1.2, 3.0)) * (1.0 if rng.random() < 0.5 else -1.0)
    n = int(rng.integers(0, max_len + 1))
    entries = tuple(float(v) for v in rng.uniform(-1.0, 1.0, n) * (abs(limit) - 0.2))
    tail = TailRule.geometric(limit, float(rng.uniform(0.1, 0.9)))
    ctor = (
        HilbertOperator.diagonal if rng.random() < 0.5 else HilbertOperator.weighted_shift
    )
    return ctor(entries, tail)
