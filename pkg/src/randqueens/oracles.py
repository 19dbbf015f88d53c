"""Brute-force ground truth for small boards.

Nothing here reuses the line indexing of :mod:`randqueens.board`; every
diagonal is rebuilt as an explicit set of squares so that a shared indexing
bug cannot hide from the differential tests.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from .board import Position, Rule

MAX_ENUMERATE = 14
MAX_BRUTE = 32


class SizeGuardError(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationResult:
    n: int
    rule: Rule
    count: int
    elapsed: float


def _guard(n: int, limit: int, allow_large: bool, what: str):
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > limit and not allow_large:
        raise SizeGuardError(f"{what} is limited to n <= {limit}; pass allow_large=True to override")


def _count(n: int, toroidal: bool) -> int:
    full = (1 << n) - 1
    if toroidal:
        def rot(mask, k):
            k %= n
            return ((mask << k) | (mask >> (n - k))) & full

        def place(row, cols, plus, minus):
            if row == n:
                return 1
            total = 0
            # bit j of plus/minus: residue class (row+col) / (row-col) mod n blocked, shifted to this row
            free = full & ~(cols | plus | minus)
            while free:
                bit = free & -free
                free ^= bit
                total += place(row + 1, cols | bit, rot(plus | bit, -1), rot(minus | bit, 1))
            return total

        return place(0, 0, 0, 0)

    def place(row, cols, plus, minus):
        if row == n:
            return 1
        total = 0
        free = full & ~(cols | plus | minus)
        while free:
            bit = free & -free
            free ^= bit
            total += place(row + 1, cols | bit, ((plus | bit) >> 1), ((minus | bit) << 1) & full)
        return total

    return place(0, 0, 0, 0)


def enumerate_classic(n: int, allow_large: bool = False) -> EnumerationResult:
    """Count n-queens solutions by row-by-row backtracking on bitmasks."""
    _guard(n, MAX_ENUMERATE, allow_large, "enumeration")
    t0 = time.perf_counter()
    count = _count(n, toroidal=False)
    return EnumerationResult(n, Rule.CLASSICAL, count, time.perf_counter() - t0)


def enumerate_toroidal(n: int, allow_large: bool = False) -> EnumerationResult:
    _guard(n, MAX_ENUMERATE, allow_large, "enumeration")
    t0 = time.perf_counter()
    count = _count(n, toroidal=True)
    return EnumerationResult(n, Rule.TOROIDAL, count, time.perf_counter() - t0)


def count_by_permutations(n: int, toroidal: bool = False) -> int:
    """Filter all ``n!`` permutations by diagonal distinctness."""
    total = 0
    rows = range(n)
    for perm in itertools.permutations(rows):
        if toroidal:
            plus = {(i + v) % n for i, v in enumerate(perm)}
            minus = {(i - v) % n for i, v in enumerate(perm)}
        else:
            plus = {i + v for i, v in enumerate(perm)}
            minus = {i - v for i, v in enumerate(perm)}
        if len(plus) == n and len(minus) == n:
            total += 1
    return total


def solutions_classic(n: int) -> set[frozenset]:
    """Every n-queens solution as a frozenset of 1-based positions."""
    _guard(n, 12, False, "solution listing")
    out = set()
    for perm in itertools.permutations(range(1, n + 1)):
        if len({i + v for i, v in enumerate(perm)}) == n and len({i - v for i, v in enumerate(perm)}) == n:
            out.add(frozenset(Position(i + 1, v) for i, v in enumerate(perm)))
    return out


def _board(n):
    return [(x, y) for x in range(1, n + 1) for y in range(1, n + 1)]


def _sum_diag(p, n):
    return {q for q in _board(n) if q[0] + q[1] == p[0] + p[1]}


def _diff_diag(p, n):
    return {q for q in _board(n) if q[0] - q[1] == p[0] - p[1]}


def _tor_sum(p, n):
    return {q for q in _board(n) if (q[0] + q[1] - p[0] - p[1]) % n == 0}


def _tor_diff(p, n):
    return {q for q in _board(n) if (q[0] - q[1] - p[0] + p[1]) % n == 0}


def _lines_through(p, n):
    row = {q for q in _board(n) if q[0] == p[0]}
    col = {q for q in _board(n) if q[1] == p[1]}
    return [row, col, _tor_sum(p, n), _tor_diff(p, n)]


def far_segments(p, n):
    """The two far segments of ``p`` as explicit sets."""
    return _tor_sum(p, n) - _sum_diag(p, n), _tor_diff(p, n) - _diff_diag(p, n)


def brute_absorbers(queens, q, n: int) -> set[Position]:
    _guard(n, MAX_BRUTE, False, "brute absorbers")
    queens = {tuple(p) for p in queens}
    r, c = q
    query_diags = _sum_diag((r, c), n) | _diff_diag((r, c), n)
    out = set()
    for x, y in queens:
        if (x, y) in query_diags:
            continue
        others = queens - {(x, y)}
        blocked = False
        for target in ((r, y), (x, c)):
            if others & (_sum_diag(target, n) | _diff_diag(target, n)):
                blocked = True
        if not blocked:
            out.add(Position(x, y))
    return out


def brute_safe_absorbers(R, q, n: int) -> set[Position]:
    """Existential search over witness tuples, re-checking every line from scratch."""
    _guard(n, MAX_BRUTE, False, "brute safe absorbers")
    R = {tuple(p) for p in R}
    r, c = q
    query_diags = _sum_diag((r, c), n) | _diff_diag((r, c), n)

    def alone(w):
        return all(not ((R - {w}) & line) for line in _lines_through(w, n))

    out = set()
    for x, y in R:
        if (x, y) in query_diags:
            continue
        f1_ry, f2_ry = far_segments((r, y), n)
        f1_xc, f2_xc = far_segments((x, c), n)
        slots = [sorted(R & f1_ry), sorted(R & f2_ry), sorted(R & f1_xc), sorted(R & f2_xc)]
        for a1, a2, b1, b2 in itertools.product(*slots):
            if all(alone(w) for w in {(x, y), a1, a2, b1, b2}):
                out.add(Position(x, y))
                break
    return out
