import math

import numpy as np
import pytest

from randqueens.absorption import absorbers, safe_absorbers
from randqueens.board import PartialConfig, Rule
from randqueens.oracles import (
    SizeGuardError,
    brute_absorbers,
    brute_safe_absorbers,
    count_by_permutations,
    enumerate_classic,
    enumerate_toroidal,
    far_segments,
    solutions_classic,
)
from randqueens.pipeline import solve

from _strategies import random_config


def test_classic_counts():
    got = [enumerate_classic(n).count for n in range(1, 9)]
    assert got == [1, 0, 0, 2, 10, 4, 40, 92]


@pytest.mark.parametrize("n", range(1, 9))
def test_classic_agrees_with_permutation_filter(n):
    assert enumerate_classic(n).count == count_by_permutations(n)


@pytest.mark.parametrize("n", range(1, 9))
def test_toroidal_agrees_with_permutation_filter(n):
    assert enumerate_toroidal(n).count == count_by_permutations(n, toroidal=True)


def test_toroidal_counts():
    assert enumerate_toroidal(4).count == 0
    assert enumerate_toroidal(5).count == 10
    assert enumerate_toroidal(7).count == 28
    for n in range(2, 12):
        if math.gcd(n, 6) != 1:
            assert enumerate_toroidal(n).count == 0


def test_size_guard():
    with pytest.raises(SizeGuardError):
        enumerate_classic(15)
    with pytest.raises(SizeGuardError):
        brute_absorbers(set(), (1, 1), 33)
    with pytest.raises(ValueError):
        enumerate_toroidal(0)


def test_result_fields():
    res = enumerate_classic(6)
    assert res.rule is Rule.CLASSICAL and res.n == 6 and res.elapsed >= 0


def test_solution_listing_matches_count():
    assert len(solutions_classic(8)) == 92


def test_far_segments_exclude_own_diagonal():
    f1, f2 = far_segments((1, 1), 8)
    assert len(f1) == 7 and f2 == set()
    assert all(x + y != 2 for x, y in f1)


def test_brute_examples():
    assert brute_absorbers({(2, 4)}, (1, 1), 5) == {(2, 4)}
    assert brute_absorbers(set(), (3, 3), 9) == set()
    assert brute_safe_absorbers(set(), (1, 2), 9) == set()


def test_absorber_differential_n10():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        cfg = random_config(rng, 10, Rule.CLASSICAL)
        q = tuple(int(v) for v in rng.integers(1, 11, size=2))
        assert absorbers(cfg, q) == brute_absorbers(cfg.queens, q, 10)


def test_safe_absorber_differential_sparse_n12():
    rng = np.random.default_rng(12)
    n = 12
    for _ in range(1000):
        R = {(int(i) // n + 1, int(i) % n + 1) for i in np.flatnonzero(rng.random(n * n) < 1 / (4 * n))}
        q = tuple(int(v) for v in rng.integers(1, n + 1, size=2))
        assert safe_absorbers(R, q, n) == brute_safe_absorbers(R, q, n)


def test_small_pipeline_outputs_are_enumerated_solutions():
    for n in (6, 8, 10):
        sols = solutions_classic(n)
        for seed in range(30):
            rec = solve(n, seed * 7, retries=3)
            if rec["phase2"]["completed"]:
                assert frozenset(tuple(q) for q in rec["queens"]) in sols
