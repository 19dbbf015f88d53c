import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from randqueens.board import (
    TOROIDAL_KINDS,
    ConfigError,
    LineKind,
    PartialConfig,
    Position,
    Rule,
    all_lines,
    available_set,
    check_position,
    far_segment_sizes,
    line_members,
    lines_of,
    tor_classes,
    verify,
)
from randqueens.oracles import far_segments

from _strategies import configs


def brute_available(cfg):
    n = cfg.n
    out = set()
    for r, c in itertools.product(range(1, n + 1), repeat=2):
        if all(
            q[0] != r and q[1] != c and (q[0] + q[1] - r - c) % n and (q[0] - q[1] - r + c) % n
            for q in cfg.queens
        ):
            out.add((r, c))
    return out


def test_tor_classes_examples():
    assert tor_classes((1, 1), 8) == (2, 0)
    assert tor_classes((5, 8), 8) == (5, 5)
    for n in (1, 7, 30):
        assert tor_classes((n, n), n) == (0, 0)


def test_position_range_checked():
    with pytest.raises(ValueError):
        check_position((0, 1), 4)
    with pytest.raises(ValueError):
        tor_classes((5, 1), 4)
    with pytest.raises(ValueError):
        far_segment_sizes((1, 1), 0)


def test_far_segment_examples():
    assert far_segment_sizes((1, 1), 8) == (7, 0)
    assert far_segment_sizes((1, 10), 20) == (10, 9)
    assert all(far_segment_sizes((k, k), 13)[1] == 0 for k in range(1, 14))


@pytest.mark.parametrize("n", [1, 2, 5, 8, 13])
def test_far_segment_formula_matches_sets(n):
    for p in itertools.product(range(1, n + 1), repeat=2):
        f1, f2 = far_segments(p, n)
        assert far_segment_sizes(p, n) == (len(f1), len(f2))


@pytest.mark.parametrize("n", [1, 4, 9])
def test_lines_partition_board(n):
    lines = list(all_lines(n))
    assert len(lines) == 4 * n
    for line in lines:
        members = line_members(line, n)
        assert len(members) == n
        for p in members:
            assert lines_of(p, n)[line.kind] == line


@pytest.mark.parametrize("n", [3, 6, 10])
def test_ordinary_diagonal_inside_one_toroidal_class(n):
    for kind, tor in ((LineKind.DIAG_PLUS, LineKind.TOR_DIAG_PLUS), (LineKind.DIAG_MINUS, LineKind.TOR_DIAG_MINUS)):
        for line in all_lines(n, [kind]):
            classes = {lines_of(p, n)[tor] for p in line_members(line, n)}
            assert len(classes) == 1


def test_place_examples():
    cfg = PartialConfig(4).place((1, 1), Rule.TOROIDAL)
    assert len(cfg) == 1
    assert sum(cfg.count_on(l) for l in lines_of((1, 1), 4).values() if l.kind in TOROIDAL_KINDS) == 4
    with pytest.raises(ConfigError, match="tor_diag_minus|minus"):
        PartialConfig(4, [(1, 1)]).place((2, 2), Rule.TOROIDAL)
    assert len(PartialConfig(4, [(1, 1)]).place((2, 3), Rule.TOROIDAL)) == 2
    with pytest.raises(ConfigError):
        PartialConfig(4, [(1, 1)]).place((1, 1), Rule.CLASSICAL)


def test_classical_allows_toroidal_wrap():
    # same ordinary difference diagonal
    with pytest.raises(ConfigError):
        PartialConfig(4, [(1, 2)]).place((3, 4), Rule.CLASSICAL)
    # sums 2 and 6 differ, but agree mod 4
    cfg = PartialConfig(4, [(1, 1)]).place((2, 4), Rule.CLASSICAL)
    assert verify(cfg, Rule.CLASSICAL) and not verify(cfg, Rule.TOROIDAL)


def test_verify_examples():
    assert verify(PartialConfig(5, [(1, 1), (2, 3), (3, 5), (4, 2), (5, 4)]), Rule.CLASSICAL)
    for rule in Rule:
        assert not verify(PartialConfig(5, [(1, 1), (2, 2)]), rule)
        assert verify(PartialConfig(5), rule)


def test_available_examples():
    assert len(available_set(PartialConfig(4))) == 16
    assert available_set(PartialConfig(4, [(1, 1)])) == {(2, 3), (3, 2), (3, 4), (4, 3)}
    full = PartialConfig(5, [(1, 1), (2, 3), (3, 5), (4, 2), (5, 4)])
    assert verify(full, Rule.TOROIDAL)
    assert available_set(full) == set()


@pytest.mark.parametrize("n", range(1, 33))
def test_single_queen_availability(n):
    for p in itertools.product(range(1, n + 1), repeat=2):
        cfg = PartialConfig(n, [p])
        assert available_set(cfg) == brute_available(cfg)
        if n > 12:
            break


def test_remove_and_copy():
    cfg = PartialConfig(6, [(1, 1), (2, 3)])
    other = cfg.copy()
    other.remove((2, 3))
    assert (2, 3) in cfg and (2, 3) not in other
    assert other.occupancy_matches(PartialConfig(6, [(1, 1)]))
    with pytest.raises(ConfigError):
        other.remove((5, 5))


@given(configs(Rule.TOROIDAL, 1, 14))
def test_incremental_occupancy_matches_rebuild(cfg):
    assert verify(cfg, Rule.TOROIDAL)
    assert cfg.occupancy_matches(cfg.recount())
    assert available_set(cfg) == brute_available(cfg)


@given(configs(Rule.CLASSICAL, 1, 14), st.data())
def test_remove_then_place_roundtrip(cfg, data):
    if not cfg.queens:
        return
    q = data.draw(st.sampled_from(sorted(cfg.queens)))
    before = cfg.copy()
    cfg.remove(q).place(q, Rule.CLASSICAL)
    assert cfg == before and cfg.occupancy_matches(before)


def test_occupancy_arrays_are_integer_counts():
    cfg = PartialConfig(5, [(1, 1), (2, 2)])
    assert cfg.occupancy(LineKind.DIAG_MINUS).max() == 2
    assert isinstance(cfg.occupancy(LineKind.ROW), np.ndarray)
    assert Position(1, 1) in cfg
