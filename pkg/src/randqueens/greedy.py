"""Random greedy placement of queens under the toroidal rule.

Cells are numbered ``id = (row - 1) * n + (col - 1)``.  The set of available
cells is kept as a dense array plus an inverse position map so that uniform
sampling is a single integer draw and each placement removes its (at most
``4n``) newly blocked cells with a handful of vectorised operations.

The ``4n`` toroidal-rule lines are numbered in one flat index: rows
``0..n-1``, columns ``n..2n-1``, toroidal sum classes ``2n..3n-1`` and
toroidal difference classes ``3n..4n-1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .board import PartialConfig, Position, Rule


def default_stop(n: int) -> int:
    """``n - ceil(n**0.7)``, but never below one queen."""
    return max(1, n - math.ceil(n ** 0.7))


def alpha_stop(n: int, alpha: float = 1e-4) -> int:
    """The asymptotic stopping time ``floor((1 - n**-alpha) * n)``."""
    return math.floor((1.0 - n ** (-alpha)) * n)


@dataclass(frozen=True)
class GreedyParams:
    n: int
    stop: int
    seed: int = 0
    record_lines: bool = False
    # full per-line matrix is needed by step_change_audit; summaries alone are O(stop)
    keep_line_matrix: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if not 0 <= self.stop <= self.n:
            raise ValueError(f"stop must lie in [0, {self.n}], got {self.stop}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass
class Trajectory:
    """Per-step record of a greedy run.

    ``available[t]`` is ``|A(t)|`` for every step ``t`` at which a choice was
    made; an aborted run appends the final zero.  With line recording,
    ``s_min``/``s_max``/``s_mean`` summarise the available counts ``S_l(t)``
    over lines still unoccupied at time ``t`` (NaN once every line is
    occupied); these have one entry per recorded time ``0..placed``.
    """

    n: int
    available: np.ndarray
    s_min: np.ndarray | None = None
    s_max: np.ndarray | None = None
    s_mean: np.ndarray | None = None
    line_counts: np.ndarray | None = None
    line_occupied: np.ndarray | None = None

    @property
    def has_lines(self) -> bool:
        return self.s_min is not None


@dataclass
class GreedyOutcome:
    config: PartialConfig
    placed: int
    aborted: bool
    trajectory: Trajectory
    order: list[Position] = field(default_factory=list)


@dataclass(frozen=True)
class RankGrid:
    """I.i.d. uniform ranks on ``[n]^2``; ``rank[row-1, col-1]``."""

    n: int
    rank: np.ndarray

    @classmethod
    def draw(cls, n: int, seed: int) -> "RankGrid":
        return cls(n, np.random.default_rng(seed).random((n, n)))

    def order(self) -> np.ndarray:
        """Cell ids sorted by rank, ties broken by (row, col)."""
        flat = self.rank.ravel()
        return np.lexsort((np.arange(flat.size), flat))


class _Geometry:
    """Precomputed line membership for an ``n x n`` torus (0-based cell ids)."""

    _cache: dict[int, "_Geometry"] = {}

    def __new__(cls, n: int):
        if n in cls._cache:
            return cls._cache[n]
        self = super().__new__(cls)
        ids = np.arange(n * n)
        r = ids // n + 1
        c = ids % n + 1
        self.n = n
        self.row_of = r - 1
        self.col_of = c - 1
        self.plus_of = (r + c) % n
        self.minus_of = (r - c) % n
        # line index of each cell in each family, offset into the flat 4n numbering
        self.line_of = np.stack(
            [self.row_of, n + self.col_of, 2 * n + self.plus_of, 3 * n + self.minus_of]
        )
        self.members = np.concatenate(
            [np.argsort(self.line_of[k], kind="stable").reshape(n, n) for k in range(4)]
        )
        cls._cache[n] = self
        return self


class _AvailIndex:
    """Dense array of available cell ids with O(1) membership via ``where``."""

    def __init__(self, geom: _Geometry, track_lines: bool):
        n = geom.n
        self.geom = geom
        self.dense = np.arange(n * n, dtype=np.int64)
        self.where = np.arange(n * n, dtype=np.int64)
        self.size = n * n
        self.occupied = np.zeros(4 * n, dtype=bool)
        self.line_avail = np.full(4 * n, n, dtype=np.int64) if track_lines else None

    def is_available(self, cell: int) -> bool:
        return self.where[cell] >= 0

    def occupy(self, cell: int):
        g = self.geom
        lines = g.line_of[:, cell]
        self.occupied[lines] = True
        cand = g.members[lines].ravel()
        removed = np.unique(cand[self.where[cand] >= 0])
        m = removed.size
        new_size = self.size - m
        holes = self.where[removed]
        self.where[removed] = -1
        tail = self.dense[new_size:self.size]
        keep = tail[self.where[tail] >= 0]
        front = holes[holes < new_size]
        self.dense[front] = keep
        self.where[keep] = front
        self.size = new_size
        if self.line_avail is not None:
            self.line_avail -= np.bincount(g.line_of[:, removed].ravel(), minlength=4 * g.n)


class _Recorder:
    def __init__(self, n: int, record_lines: bool, keep_matrix: bool):
        self.n = n
        self.available: list[int] = []
        self.record_lines = record_lines
        self.keep_matrix = record_lines and keep_matrix
        self.s_min: list[float] = []
        self.s_max: list[float] = []
        self.s_mean: list[float] = []
        self.counts: list[np.ndarray] = []
        self.occ: list[np.ndarray] = []

    def lines(self, idx: _AvailIndex):
        if not self.record_lines:
            return
        free = idx.line_avail[~idx.occupied]
        if free.size:
            self.s_min.append(float(free.min()))
            self.s_max.append(float(free.max()))
            self.s_mean.append(float(free.mean()))
        else:
            self.s_min.append(math.nan)
            self.s_max.append(math.nan)
            self.s_mean.append(math.nan)
        if self.keep_matrix:
            self.counts.append(idx.line_avail.copy())
            self.occ.append(idx.occupied.copy())

    def finish(self) -> Trajectory:
        traj = Trajectory(self.n, np.array(self.available, dtype=np.int64))
        if self.record_lines:
            traj.s_min = np.array(self.s_min)
            traj.s_max = np.array(self.s_max)
            traj.s_mean = np.array(self.s_mean)
        if self.keep_matrix:
            traj.line_counts = np.array(self.counts, dtype=np.int32)
            traj.line_occupied = np.array(self.occ, dtype=bool)
        return traj


def _build_outcome(n: int, order: list[int], stop: int, rec: _Recorder) -> GreedyOutcome:
    queens = [Position(c // n + 1, c % n + 1) for c in order]
    cfg = PartialConfig(n)
    for q in queens:
        cfg.place(q, Rule.TOROIDAL)
    return GreedyOutcome(cfg, len(queens), len(queens) < stop, rec.finish(), queens)


def run_greedy(params: GreedyParams) -> GreedyOutcome:
    """Place queens one at a time, each uniform among the available squares.

    Stops after ``params.stop`` placements, or earlier if nothing is
    available, in which case the configuration is frozen and ``aborted`` set.
    """
    n, stop = params.n, params.stop
    rng = np.random.default_rng(params.seed)
    idx = _AvailIndex(_Geometry(n), params.record_lines)
    rec = _Recorder(n, params.record_lines, params.keep_line_matrix)
    order: list[int] = []
    rec.lines(idx)
    while len(order) < stop:
        rec.available.append(idx.size)
        if idx.size == 0:
            break
        cell = int(idx.dense[rng.integers(idx.size)])
        idx.occupy(cell)
        order.append(cell)
        rec.lines(idx)
    return _build_outcome(n, order, stop, rec)


def run_greedy_coupled(grid: RankGrid, stop: int | None = None, record_lines: bool = False) -> GreedyOutcome:
    """Greedy process driven by a rank grid: always take the lowest-ranked available square.

    Availability only shrinks, so one pass over the cells in rank order
    visits the successive minima.  The process is the same whether it is run
    to ``n`` steps and inspected at ``stop`` or halted at ``stop``.
    """
    n = grid.n
    stop = n if stop is None else stop
    if not 0 <= stop <= n:
        raise ValueError(f"stop must lie in [0, {n}], got {stop}")
    idx = _AvailIndex(_Geometry(n), record_lines)
    rec = _Recorder(n, record_lines, True)
    order: list[int] = []
    where = idx.where
    rec.lines(idx)
    ranked = grid.order().tolist()
    pos = 0
    while len(order) < stop:
        rec.available.append(idx.size)
        if idx.size == 0:
            break
        while where[ranked[pos]] < 0:
            pos += 1
        cell = ranked[pos]
        idx.occupy(cell)
        order.append(cell)
        rec.lines(idx)
    return _build_outcome(n, order, stop, rec)


def step_change_audit(outcome: GreedyOutcome) -> bool:
    """True iff no line unoccupied at consecutive times changed its count by more than 4."""
    traj = outcome.trajectory
    if traj.line_counts is None or traj.line_occupied is None:
        raise ValueError("trajectory was recorded without per-line counts")
    counts = traj.line_counts.astype(np.int64)
    if counts.shape[0] < 2:
        return True
    free_both = ~traj.line_occupied[:-1] & ~traj.line_occupied[1:]
    jumps = np.abs(np.diff(counts, axis=0))
    return bool(np.all(jumps[free_both] <= 4))


def rebuild_available(cfg: PartialConfig) -> np.ndarray:
    """From-scratch O(n^2) availability mask (cell-id order), for audits."""
    n = cfg.n
    g = _Geometry(n)
    return (
        (cfg.rows[g.row_of] == 0)
        & (cfg.cols[g.col_of] == 0)
        & (cfg.tor_plus[g.plus_of] == 0)
        & (cfg.tor_minus[g.minus_of] == 0)
    )
