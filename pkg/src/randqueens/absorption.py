"""Absorbers, safe absorbers, balanced positions and the completion phase.

A queen ``(x, y)`` absorbs the query ``(r, c)`` when swapping it for the two
squares ``(r, y)`` and ``(x, c)`` keeps every ordinary diagonal single: the
query and the queen share no ordinary diagonal, and none of the four ordinary
diagonals through ``(r, y)`` and ``(x, c)`` holds a queen other than
``(x, y)`` itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

import numpy as np

from .board import PartialConfig, Position, Rule, check_position, far_segment_sizes, verify


class AbsorberQuery(NamedTuple):
    r: int
    c: int


class AbsorptionError(ValueError):
    pass


def _absorber_mask(cfg: PartialConfig, r: int, c: int, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    n = cfg.n
    own_plus = xs + ys
    own_minus = xs - ys
    distinct = (own_plus != r + c) & (own_minus != r - c)
    # occupancy of each target diagonal with the queen's own contribution removed
    p1 = r + ys
    m1 = r - ys
    p2 = xs + c
    m2 = xs - c
    free = (
        (cfg.diag_plus[p1 - 2] - (own_plus == p1) == 0)
        & (cfg.diag_minus[m1 + n - 1] - (own_minus == m1) == 0)
        & (cfg.diag_plus[p2 - 2] - (own_plus == p2) == 0)
        & (cfg.diag_minus[m2 + n - 1] - (own_minus == m2) == 0)
    )
    return distinct & free


def absorbers(cfg: PartialConfig, q) -> set[Position]:
    r, c = check_position(q, cfg.n)
    if not cfg.queens:
        return set()
    xs, ys = cfg.as_arrays()
    mask = _absorber_mask(cfg, r, c, xs, ys)
    return {Position(int(x), int(y)) for x, y in zip(xs[mask], ys[mask])}


def pair_absorber_counts(cfg: PartialConfig, rows, cols) -> np.ndarray:
    """``counts[i, j] = |absorbers(cfg, (rows[i], cols[j]))|``.

    For queen ``j`` the diagonals through ``(r, y_j)`` depend on ``r`` only and
    those through ``(x_j, c)`` on ``c`` only, so the count is a boolean matrix
    product, less the queens sharing an ordinary diagonal with the query.  At
    most one queen sits on each ordinary diagonal of a valid configuration, so
    that correction is a table lookup per query.
    """
    n = cfg.n
    R = np.asarray(rows, dtype=np.int64)
    C = np.asarray(cols, dtype=np.int64)
    if not cfg.queens or R.size == 0 or C.size == 0:
        return np.zeros((R.size, C.size), dtype=np.int64)
    if cfg.diag_plus.max() > 1 or cfg.diag_minus.max() > 1:
        raise ValueError("absorber counts need at most one queen per ordinary diagonal")
    xs, ys = cfg.as_arrays()
    own_plus = (xs + ys)[:, None]
    own_minus = (xs - ys)[:, None]
    p1 = R[None, :] + ys[:, None]
    m1 = R[None, :] - ys[:, None]
    p2 = xs[:, None] + C[None, :]
    m2 = xs[:, None] - C[None, :]
    row_ok = (cfg.diag_plus[p1 - 2] - (own_plus == p1) == 0) & (
        cfg.diag_minus[m1 + n - 1] - (own_minus == m1) == 0
    )
    col_ok = (cfg.diag_plus[p2 - 2] - (own_plus == p2) == 0) & (
        cfg.diag_minus[m2 + n - 1] - (own_minus == m2) == 0
    )
    # float32 matmul is exact for counts below 2**24
    counts = np.rint(row_ok.T.astype(np.float32) @ col_ok.astype(np.float32)).astype(np.int64)
    on_plus = np.full(2 * n + 1, -1)
    on_plus[xs + ys] = np.arange(xs.size)
    on_minus = np.full(2 * n + 1, -1)
    on_minus[xs - ys + n] = np.arange(xs.size)
    ii, jj = np.indices((R.size, C.size))
    q_plus = on_plus[R[:, None] + C[None, :]]
    q_minus = on_minus[R[:, None] - C[None, :] + n]
    for q, extra in ((q_plus, None), (q_minus, q_minus != q_plus)):
        hit = q >= 0
        if extra is not None:
            hit &= extra
        qh = q[hit]
        counts[hit] -= row_ok[qh, ii[hit]] & col_ok[qh, jj[hit]]
    return counts


def absorber_counts(cfg: PartialConfig) -> np.ndarray:
    """``counts[r-1, c-1] = |absorbers(cfg, (r, c))|`` over the whole board."""
    idx = np.arange(1, cfg.n + 1)
    return pair_absorber_counts(cfg, idx, idx)


def is_ell_absorbing(cfg: PartialConfig, ell: int) -> bool:
    if ell <= 0:
        return True
    if len(cfg.queens) < ell:
        return False
    return int(absorber_counts(cfg).min()) >= ell


def _swap(cfg: PartialConfig, r: int, c: int, a: Position) -> PartialConfig:
    out = cfg.copy()
    out.remove(a)
    out.place((r, a.col), Rule.CLASSICAL)
    out.place((a.row, c), Rule.CLASSICAL)
    return out


def apply_absorber(cfg: PartialConfig, q, a) -> PartialConfig:
    """Swap absorber ``a`` for ``(r, a.col)`` and ``(a.row, c)``; returns a new config."""
    n = cfg.n
    r, c = check_position(q, n)
    a = check_position(a, n)
    if cfg.rows[r - 1] or cfg.cols[c - 1]:
        raise AbsorptionError(f"row {r} or column {c} is already covered")
    if a not in absorbers(cfg, (r, c)):
        raise AbsorptionError(f"{tuple(a)} is not an absorber for {(r, c)}")
    return _swap(cfg, r, c, a)


@dataclass
class AbsorptionPlan:
    """Row/column pairs in the order they were absorbed, and the queen used for each."""

    matching: list[tuple[int, int]]
    choices: list[Position] = field(default_factory=list)


@dataclass
class AbsorptionResult:
    completed: bool
    config: PartialConfig
    plan: AbsorptionPlan
    abort_step: int | None = None
    abort_query: tuple[int, int] | None = None
    live_counts: list[int] = field(default_factory=list)

    def report(self) -> str:
        if self.completed:
            return f"completed after {len(self.plan.choices)} exchanges"
        return f"aborted at step {self.abort_step}: no absorber for {self.abort_query}"


def _bottleneck(counts: np.ndarray) -> tuple[int, int]:
    if counts.size == 0:
        return (0, 0)
    return int(counts.max(axis=1).min()), int(counts.sum())


def run_absorption(cfg: PartialConfig, seed: int = 0, strategy: str = "adaptive",
                   lookahead: int = 8) -> AbsorptionResult:
    """Cover the missing rows and columns one pair at a time by absorber swaps.

    ``strategy="sorted"`` pairs the i-th smallest uncovered row with the i-th
    smallest uncovered column up front and picks uniformly among the current
    absorbers at each step.

    ``strategy="adaptive"`` builds the pairing as it goes: the uncovered row
    whose best column has the fewest absorbers is handled next, paired with
    that best column.  Up to ``lookahead`` absorbers (sampled uniformly when
    there are more) are tried, keeping the one that leaves the largest
    bottleneck ``min_row max_col |B|`` over the remaining pairs, then the
    largest total; ``lookahead=0`` picks uniformly instead.

    Ties always resolve to the smallest row, column or queen, and random
    draws come from ``numpy.random.default_rng(seed)``, so the result is a
    pure function of ``(cfg, seed, strategy, lookahead)``.  Step numbers in
    abort reports are 1-based.
    """
    if strategy not in ("adaptive", "sorted"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if not verify(cfg, Rule.CLASSICAL):
        raise AbsorptionError("input is not a valid partial classical configuration")
    rows, cols = cfg.uncovered_rows(), cfg.uncovered_cols()
    rng = np.random.default_rng(seed)
    cur = cfg.copy()
    live: list[int] = []
    if strategy == "sorted":
        plan = AbsorptionPlan(list(zip(rows, cols)))
        for step, (r, c) in enumerate(plan.matching, start=1):
            options = sorted(absorbers(cur, (r, c)))
            live.append(len(options))
            if not options:
                return AbsorptionResult(False, cur, plan, step, (r, c), live)
            a = options[int(rng.integers(len(options)))]
            plan.choices.append(a)
            cur = _swap(cur, r, c, a)
        return AbsorptionResult(True, cur, plan, live_counts=live)

    plan = AbsorptionPlan([])
    step = 0
    while rows:
        step += 1
        counts = pair_absorber_counts(cur, rows, cols)
        i = int(np.argmin(counts.max(axis=1)))
        j = int(np.argmax(counts[i]))
        r, c = rows[i], cols[j]
        plan.matching.append((r, c))
        options = sorted(absorbers(cur, (r, c)))
        live.append(len(options))
        if not options:
            return AbsorptionResult(False, cur, plan, step, (r, c), live)
        rest_rows = rows[:i] + rows[i + 1:]
        rest_cols = cols[:j] + cols[j + 1:]
        if lookahead <= 0 or not rest_rows:
            a = options[int(rng.integers(len(options)))]
            nxt = _swap(cur, r, c, a)
        else:
            if len(options) > lookahead:
                picked = np.sort(rng.choice(len(options), lookahead, replace=False))
                options = [options[t] for t in picked]
            best = None
            for cand in options:
                trial = _swap(cur, r, c, cand)
                score = _bottleneck(pair_absorber_counts(trial, rest_rows, rest_cols))
                if best is None or score > best[0]:
                    best = (score, cand, trial)
            _, a, nxt = best
        plan.choices.append(a)
        cur = nxt
        rows, cols = rest_rows, rest_cols
    return AbsorptionResult(True, cur, plan, live_counts=live)


def _isolated(R: set, n: int) -> set:
    """Members of ``R`` that are alone on their row, column and both toroidal classes."""
    tallies = [{}, {}, {}, {}]
    keys = [(lambda p: p[0]), (lambda p: p[1]), (lambda p: (p[0] + p[1]) % n), (lambda p: (p[0] - p[1]) % n)]
    for p in R:
        for t, key in zip(tallies, keys):
            k = key(p)
            t[k] = t.get(k, 0) + 1
    return {p for p in R if all(t[key(p)] == 1 for t, key in zip(tallies, keys))}


def safe_absorbers(R: Iterable, q, n: int) -> set[Position]:
    """Safe absorbers for ``q`` in an arbitrary square set ``R``.

    ``(x, y)`` qualifies when it shares no ordinary diagonal with ``(r, c)``
    and each far segment of ``(r, y)`` and of ``(x, c)`` contains a member of
    ``R``, where ``(x, y)`` and the four witnesses are each the only member of
    ``R`` on every line through them.  An isolated member is the unique
    occupant of its toroidal classes, so each witness is found by lookup.
    """
    r, c = check_position(q, n)
    R = {check_position(p, n) for p in R}
    iso = _isolated(R, n)
    by_plus = {(p[0] + p[1]) % n: p for p in iso}
    by_minus = {(p[0] - p[1]) % n: p for p in iso}

    def far_plus_hit(u, v):
        w = by_plus.get((u + v) % n)
        return w is not None and w[0] + w[1] != u + v

    def far_minus_hit(u, v):
        w = by_minus.get((u - v) % n)
        return w is not None and w[0] - w[1] != u - v

    out = set()
    for x, y in iso:
        if x + y == r + c or x - y == r - c:
            continue
        if far_plus_hit(r, y) and far_minus_hit(r, y) and far_plus_hit(x, c) and far_minus_hit(x, c):
            out.add(Position(x, y))
    return out


def _tenths(n: int, k: int) -> Fraction:
    return Fraction(k * n, 10)


def is_balanced(p, n: int) -> bool:
    far_plus, far_minus = far_segment_sizes(p, n)
    tenth = _tenths(n, 1)
    return far_plus >= tenth and far_minus >= tenth


def in_balanced_region(p, n: int) -> bool:
    x, y = check_position(p, n)
    near_main = x - _tenths(n, 1) <= y <= x + _tenths(n, 1)
    near_anti = _tenths(n, 9) - x <= y <= _tenths(n, 11) - x
    return not (near_main or near_anti)


def balanced_region(n: int) -> set[Position]:
    """Squares outside both diagonal bands of width n/10 (exact arithmetic)."""
    return {
        Position(x, y)
        for x in range(1, n + 1)
        for y in range(1, n + 1)
        if in_balanced_region((x, y), n)
    }


def balanced_region_mask(n: int) -> np.ndarray:
    x = np.arange(1, n + 1)[:, None]
    y = np.arange(1, n + 1)[None, :]
    # scaled by 10 to stay in integers
    near_main = (10 * x - n <= 10 * y) & (10 * y <= 10 * x + n)
    near_anti = (9 * n - 10 * x <= 10 * y) & (10 * y <= 11 * n - 10 * x)
    return ~(near_main | near_anti)


def balanced_mask(n: int) -> np.ndarray:
    """``mask[x-1, y-1]`` is true iff ``(x, y)`` is balanced (integer arithmetic)."""
    x = np.arange(1, n + 1)[:, None]
    y = np.arange(1, n + 1)[None, :]
    return (10 * np.abs(x + y - (n + 1)) >= n) & (10 * np.abs(x - y) >= n)


def balanced_pair_count(n: int, q, region: np.ndarray | None = None) -> int:
    """Squares ``(x, y)`` sharing no line with ``(r, c)`` such that ``(r, y)`` and ``(x, c)`` lie in ``region``.

    Lines are rows, columns and toroidal diagonals.  ``region`` defaults to
    the balanced squares; pass ``balanced_region_mask(n)`` to count only
    pairs landing in the band-free set ``S``, which is smaller.
    """
    r, c = check_position(q, n)
    S = balanced_mask(n) if region is None else region
    x = np.arange(1, n + 1)[:, None]
    y = np.arange(1, n + 1)[None, :]
    ok = S[r - 1, :][None, :] & S[:, c - 1][:, None]
    ok &= (x != r) & (y != c)
    ok &= (x + y) % n != (r + c) % n
    ok &= (x - y) % n != (r - c) % n
    return int(ok.sum())
