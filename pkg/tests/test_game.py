from itertools import combinations, combinations_with_replacement
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from slownim.formulas import region_functions_q
from slownim.game import (
    GameSpec,
    IllegalMoveError,
    InvalidPositionError,
    Move,
    Position,
    apply_move_diff,
    canonicalize,
    diff_delta,
    from_diff,
    is_terminal,
    legal_moves,
    parity_vector,
    parse_position,
    residue_class,
    successors,
    to_diff,
)
from tables import TABLE_1

positions6 = st.lists(st.integers(0, 30), min_size=6, max_size=6).map(Position)


def brute_successors(x, k):
    out = set()
    for idx in combinations(range(len(x)), k):
        if all(x[i] > 0 for i in idx):
            y = list(x)
            for i in idx:
                y[i] -= 1
            out.add(tuple(sorted(y)))
    return out


@pytest.mark.parametrize(
    "raw, expected",
    [((3, 1, 2), (1, 2, 3)), ((0, 0, 0), (0, 0, 0)), ((7, 7, 0, 9, 9, 12), (0, 7, 7, 9, 9, 12))],
)
def test_canonicalize(raw, expected):
    assert canonicalize(raw) == expected


def test_canonicalize_rejects_negative():
    with pytest.raises(InvalidPositionError):
        canonicalize((1, -1, 2))


def test_parse_position():
    assert parse_position("4,4,2,2,2,1") == (1, 2, 2, 2, 4, 4)
    assert parse_position(" 1, 2 ,3") == (1, 2, 3)
    for bad in ["", "1,,2", "a,b", "1,-2"]:
        with pytest.raises(InvalidPositionError):
            parse_position(bad)


def test_gamespec_validation():
    with pytest.raises(ValueError):
        GameSpec(3, 4)
    with pytest.raises(ValueError):
        GameSpec(3, 2, rule="sometimes")
    with pytest.raises(ValueError):
        GameSpec(0, 0)


def test_successors_examples():
    k2 = GameSpec(6, 2)
    assert successors((0, 0, 0, 0, 1, 1), k2) == {(0,) * 6}
    assert successors((0, 0, 0, 0, 0, 1), k2) == set()
    assert successors((1, 1, 2), GameSpec(3, 2)) == {(0, 0, 2), (0, 1, 1)}


def test_successors_atmost():
    spec = GameSpec(2, 2, rule="atmost")
    assert successors((1, 1), spec) == {(0, 1), (0, 0)}
    assert is_terminal((0, 0), spec)
    assert not is_terminal((0, 1), spec)


@pytest.mark.parametrize(
    "x, k, expected",
    [
        ((0, 0, 5), 2, True),
        ((0, 1, 1), 2, False),
        ((0, 0, 0, 1, 1, 1), 3, False),
        ((0, 0, 0, 0, 1, 1), 3, True),
    ],
)
def test_is_terminal(x, k, expected):
    spec = GameSpec(len(x), k)
    assert is_terminal(x, spec) is expected
    assert is_terminal(x, spec) == (not successors(x, spec))


def test_residue_class():
    assert residue_class((0, 0, 1, 1, 1, 1), 2) == 0
    assert residue_class((2, 2, 3, 4, 6), 2) == 1
    assert residue_class((1, 2, 2, 2, 4, 4), 3) == 0


def test_parity_vector():
    assert parity_vector((0, 0, 1, 1, 1, 1)) == ("e", "e", "o", "o", "o", "o")
    assert parity_vector((0,) * 6) == ("e",) * 6
    assert parity_vector((3, 3, 3, 4, 8)) == ("o", "o", "o", "e", "e")


def test_diff_coordinates():
    assert to_diff((1, 2, 2, 4, 7, 7)) == (1, 1, 0, 2, 3, 0)
    assert from_diff((0,) * 6) == (0,) * 6
    assert to_diff((2, 2, 3, 4, 10)) == (2, 0, 1, 1, 6)
    with pytest.raises(InvalidPositionError):
        from_diff((1, -1))
    with pytest.raises(InvalidPositionError):
        to_diff((2, 1))


def test_apply_move_diff_examples():
    assert diff_delta(Move((1, 3)), 6) == (-1, 1, -1, 1, 0, 0)
    assert diff_delta(Move((5, 6)), 6) == (0, 0, 0, 0, -1, 0)
    q = (1, 0, 0, 0, 0, 0)
    assert apply_move_diff(q, Move((1, 2))) == (0, 0, 1, 0, 0, 0)
    assert from_diff((0, 0, 1, 0, 0, 0)) == (0, 0, 1, 1, 1, 1)
    with pytest.raises(IllegalMoveError):
        apply_move_diff(q, Move((1, 3)))


def test_table1_rows_match_generic_delta():
    for move, row in TABLE_1.items():
        assert diff_delta(Move(move), 6) == row[:6]


def test_move_apply_and_legality():
    m = Move((2, 1))
    assert m.piles == (1, 2)
    assert str(m) == "{1,2}"
    assert m.apply((1, 1, 1, 1, 1, 1)) == (0, 0, 1, 1, 1, 1)
    with pytest.raises(IllegalMoveError):
        m.apply((0, 1, 1, 1, 1, 1))
    assert not Move((1, 3)).preserves_order((1, 2, 2, 3, 3, 3))
    assert Move((1, 2)).preserves_order((1, 2, 2, 3, 3, 3))


@pytest.mark.parametrize("n, k", [(3, 2), (4, 2), (5, 3), (6, 2)])
def test_successors_match_brute_force(n, k):
    spec = GameSpec(n, k)
    for x in combinations_with_replacement(range(4), n):
        assert successors(x, spec) == brute_successors(x, k)


@given(positions6, st.integers(1, 6))
def test_successor_sum_and_count(x, k):
    spec = GameSpec(6, k)
    succ = successors(x, spec)
    assert len(succ) <= comb(6, k)
    for s in succ:
        assert list(s) == sorted(s) and min(s) >= 0
        assert sum(s) == sum(x) - k
        assert residue_class(s, k) == residue_class(x, k)


@given(positions6)
def test_diff_roundtrip(x):
    assert from_diff(to_diff(x)) == x
    q = to_diff(x)
    assert all(v >= 0 for v in q)
    assert to_diff(from_diff(q)) == q


@given(st.lists(st.integers(0, 20), min_size=1, max_size=8))
def test_from_diff_roundtrip(q):
    assert to_diff(from_diff(q)) == tuple(q)


@given(positions6)
def test_hamming_distance_two_for_k2_moves(x):
    px = parity_vector(x)
    for m in legal_moves(x, GameSpec(6, 2)):
        y = m.decrement(x)
        assert sum(a != b for a, b in zip(px, parity_vector(y))) == 2
        if m.preserves_order(x):
            assert m.apply(x) == tuple(y)


def test_table1_exhaustive_small():
    for x in combinations_with_replacement(range(6), 6):
        q = to_diff(x)
        for (i, j), row in TABLE_1.items():
            m = Move((i, j))
            if not m.preserves_order(x):
                continue
            q2 = to_diff(m.apply(x))
            assert q2 == apply_move_diff(q, m)
            a, b = region_functions_q(q), region_functions_q(q2)
            got = tuple(v - w for v, w in zip(q2, q)) + (b.r - a.r, b.s - a.s, b.u - a.u)
            assert got == row
