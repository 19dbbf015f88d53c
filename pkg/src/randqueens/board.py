"""Board geometry, line indexing and partial configurations.

Squares are 1-based ``(row, col)`` pairs in ``[1..n]^2``.  Six line families
are tracked for every configuration: rows, columns, the two toroidal diagonal
families (residues of ``row + col`` and ``row - col`` modulo ``n``) and the two
ordinary chess diagonal families (exact ``row + col`` and ``row - col``).
"""

from __future__ import annotations

import enum
from typing import Iterable, Iterator, NamedTuple

import numpy as np


class Position(NamedTuple):
    row: int
    col: int


class Rule(enum.Enum):
    TOROIDAL = "toroidal"
    CLASSICAL = "classical"


class LineKind(enum.Enum):
    ROW = "row"
    COL = "col"
    TOR_DIAG_PLUS = "tor_diag_plus"
    TOR_DIAG_MINUS = "tor_diag_minus"
    DIAG_PLUS = "diag_plus"
    DIAG_MINUS = "diag_minus"


TOROIDAL_KINDS = (LineKind.ROW, LineKind.COL, LineKind.TOR_DIAG_PLUS, LineKind.TOR_DIAG_MINUS)
CLASSICAL_KINDS = (LineKind.ROW, LineKind.COL, LineKind.DIAG_PLUS, LineKind.DIAG_MINUS)


class LineId(NamedTuple):
    kind: LineKind
    index: int


class ConfigError(ValueError):
    """Raised when a placement would break a configuration invariant."""


def check_position(p, n: int) -> Position:
    row, col = p
    if n < 1:
        raise ValueError(f"board size must be positive, got {n}")
    if not (1 <= row <= n and 1 <= col <= n):
        raise ValueError(f"position {tuple(p)} outside [1..{n}]^2")
    return Position(int(row), int(col))


def tor_classes(p, n: int) -> tuple[int, int]:
    """Toroidal diagonal residues ``((row+col) mod n, (row-col) mod n)``."""
    row, col = check_position(p, n)
    return (row + col) % n, (row - col) % n


def far_segment_sizes(p, n: int) -> tuple[int, int]:
    """Sizes of the two toroidal diagonals through ``p`` minus their ordinary parts.

    The toroidal sum class through ``(x, y)`` has ``n`` cells, of which
    ``n - |x + y - (n + 1)|`` lie on the ordinary anti-diagonal ``x + y``;
    likewise the difference class loses ``n - |x - y|`` cells.
    """
    row, col = check_position(p, n)
    return abs(row + col - (n + 1)), abs(row - col)


def lines_of(p, n: int) -> dict[LineKind, LineId]:
    row, col = check_position(p, n)
    return {
        LineKind.ROW: LineId(LineKind.ROW, row),
        LineKind.COL: LineId(LineKind.COL, col),
        LineKind.TOR_DIAG_PLUS: LineId(LineKind.TOR_DIAG_PLUS, (row + col) % n),
        LineKind.TOR_DIAG_MINUS: LineId(LineKind.TOR_DIAG_MINUS, (row - col) % n),
        LineKind.DIAG_PLUS: LineId(LineKind.DIAG_PLUS, row + col),
        LineKind.DIAG_MINUS: LineId(LineKind.DIAG_MINUS, row - col),
    }


def line_members(line: LineId, n: int) -> list[Position]:
    """All squares of a line, in row-major order."""
    kind, k = line
    cells = range(1, n + 1)
    if kind is LineKind.ROW:
        return [Position(k, c) for c in cells]
    if kind is LineKind.COL:
        return [Position(r, k) for r in cells]
    if kind is LineKind.TOR_DIAG_PLUS:
        return [Position(r, c) for r in cells for c in cells if (r + c) % n == k]
    if kind is LineKind.TOR_DIAG_MINUS:
        return [Position(r, c) for r in cells for c in cells if (r - c) % n == k]
    if kind is LineKind.DIAG_PLUS:
        return [Position(r, k - r) for r in cells if 1 <= k - r <= n]
    if kind is LineKind.DIAG_MINUS:
        return [Position(r, r - k) for r in cells if 1 <= r - k <= n]
    raise ValueError(f"unknown line kind {kind!r}")


def all_lines(n: int, kinds: Iterable[LineKind] = TOROIDAL_KINDS) -> Iterator[LineId]:
    for kind in kinds:
        if kind in (LineKind.ROW, LineKind.COL):
            indices = range(1, n + 1)
        elif kind in (LineKind.TOR_DIAG_PLUS, LineKind.TOR_DIAG_MINUS):
            indices = range(n)
        elif kind is LineKind.DIAG_PLUS:
            indices = range(2, 2 * n + 1)
        else:
            indices = range(-(n - 1), n)
        for k in indices:
            yield LineId(kind, k)


class PartialConfig:
    """A set of queens plus occupancy counts for all six line families.

    Occupancy arrays are indexed so that every lookup is O(1): rows and
    columns by ``row - 1`` / ``col - 1``, toroidal classes by residue, ordinary
    sum diagonals by ``row + col - 2`` and ordinary difference diagonals by
    ``row - col + n - 1``.  Mutation happens in place through :meth:`place`
    and :meth:`remove`; use :meth:`copy` for an independent value.
    """

    def __init__(self, n: int, queens: Iterable = ()):
        if n < 1:
            raise ValueError(f"board size must be positive, got {n}")
        self.n = n
        self.queens: set[Position] = set()
        self.rows = np.zeros(n, dtype=np.int64)
        self.cols = np.zeros(n, dtype=np.int64)
        self.tor_plus = np.zeros(n, dtype=np.int64)
        self.tor_minus = np.zeros(n, dtype=np.int64)
        self.diag_plus = np.zeros(2 * n - 1, dtype=np.int64)
        self.diag_minus = np.zeros(2 * n - 1, dtype=np.int64)
        for q in queens:
            self._add(check_position(q, n))

    def __repr__(self):
        return f"PartialConfig(n={self.n}, queens={sorted(self.queens)})"

    def __len__(self):
        return len(self.queens)

    def __contains__(self, p):
        return tuple(p) in self.queens

    def __iter__(self):
        return iter(sorted(self.queens))

    def __eq__(self, other):
        if not isinstance(other, PartialConfig):
            return NotImplemented
        return self.n == other.n and self.queens == other.queens

    def copy(self) -> "PartialConfig":
        new = PartialConfig.__new__(PartialConfig)
        new.n = self.n
        new.queens = set(self.queens)
        for name in ("rows", "cols", "tor_plus", "tor_minus", "diag_plus", "diag_minus"):
            setattr(new, name, getattr(self, name).copy())
        return new

    def _slots(self, p: Position):
        n = self.n
        r, c = p
        return (
            (self.rows, r - 1),
            (self.cols, c - 1),
            (self.tor_plus, (r + c) % n),
            (self.tor_minus, (r - c) % n),
            (self.diag_plus, r + c - 2),
            (self.diag_minus, r - c + n - 1),
        )

    def _add(self, p: Position):
        if p in self.queens:
            raise ConfigError(f"duplicate queen at {tuple(p)}")
        self.queens.add(p)
        for arr, i in self._slots(p):
            arr[i] += 1

    def occupancy(self, kind: LineKind) -> np.ndarray:
        return {
            LineKind.ROW: self.rows,
            LineKind.COL: self.cols,
            LineKind.TOR_DIAG_PLUS: self.tor_plus,
            LineKind.TOR_DIAG_MINUS: self.tor_minus,
            LineKind.DIAG_PLUS: self.diag_plus,
            LineKind.DIAG_MINUS: self.diag_minus,
        }[kind]

    def count_on(self, line: LineId) -> int:
        kind, k = line
        if kind in (LineKind.ROW, LineKind.COL):
            k -= 1
        elif kind is LineKind.DIAG_PLUS:
            k -= 2
        elif kind is LineKind.DIAG_MINUS:
            k += self.n - 1
        return int(self.occupancy(kind)[k])

    def conflicts(self, p, rule: Rule) -> list[LineKind]:
        """Line kinds (under ``rule``) through ``p`` already holding a queen."""
        p = check_position(p, self.n)
        kinds = TOROIDAL_KINDS if rule is Rule.TOROIDAL else CLASSICAL_KINDS
        lines = lines_of(p, self.n)
        return [kind for kind in kinds if self.count_on(lines[kind]) > 0]

    def place(self, p, rule: Rule = Rule.TOROIDAL) -> "PartialConfig":
        """Add a queen at ``p`` after checking the ``rule``'s one-per-line invariant."""
        p = check_position(p, self.n)
        if p in self.queens:
            raise ConfigError(f"duplicate queen at {tuple(p)}")
        blocked = self.conflicts(p, rule)
        if blocked:
            names = ", ".join(k.value for k in blocked)
            raise ConfigError(f"{tuple(p)} shares {names} with an existing queen under {rule.value} rule")
        self._add(p)
        return self

    def remove(self, p) -> "PartialConfig":
        p = check_position(p, self.n)
        if p not in self.queens:
            raise ConfigError(f"no queen at {tuple(p)}")
        self.queens.remove(p)
        for arr, i in self._slots(p):
            arr[i] -= 1
        return self

    def uncovered_rows(self) -> list[int]:
        return [int(i) + 1 for i in np.flatnonzero(self.rows == 0)]

    def uncovered_cols(self) -> list[int]:
        return [int(i) + 1 for i in np.flatnonzero(self.cols == 0)]

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Queen rows and columns as int arrays, in row-major order."""
        qs = sorted(self.queens)
        xs = np.array([q[0] for q in qs], dtype=np.int64)
        ys = np.array([q[1] for q in qs], dtype=np.int64)
        return xs, ys

    def recount(self) -> "PartialConfig":
        """A fresh configuration with occupancy rebuilt from the queen set."""
        return PartialConfig(self.n, self.queens)

    def occupancy_matches(self, other: "PartialConfig") -> bool:
        return all(
            np.array_equal(self.occupancy(kind), other.occupancy(kind)) for kind in LineKind
        )


def verify(cfg: PartialConfig, rule: Rule) -> bool:
    """True iff every line relevant to ``rule`` holds at most one queen."""
    if len({q[0] for q in cfg.queens}) != len(cfg.queens):
        return False
    if len({q[1] for q in cfg.queens}) != len(cfg.queens):
        return False
    kinds = TOROIDAL_KINDS if rule is Rule.TOROIDAL else CLASSICAL_KINDS
    return all(int(cfg.occupancy(kind).max(initial=0)) <= 1 for kind in kinds)


def available_set(cfg: PartialConfig) -> set[Position]:
    """Squares whose row, column and both toroidal classes are all empty."""
    n = cfg.n
    r = np.arange(1, n + 1)[:, None]
    c = np.arange(1, n + 1)[None, :]
    free = (
        (cfg.rows[r - 1] == 0)
        & (cfg.cols[c - 1] == 0)
        & (cfg.tor_plus[(r + c) % n] == 0)
        & (cfg.tor_minus[(r - c) % n] == 0)
    )
    rows, cols = np.nonzero(free)
    return {Position(int(i) + 1, int(j) + 1) for i, j in zip(rows, cols)}
