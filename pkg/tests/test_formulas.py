from itertools import combinations_with_replacement

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from slownim.engine import build_table, sg
from slownim.formulas import (
    NoFormulaError,
    WrongResidueError,
    condition_flags,
    condition_flags_q,
    p5_even,
    p5_odd,
    p6_even,
    p6_odd,
    p_formula,
    primed_functions,
    region_functions,
    region_functions_q,
    winning_move,
)
from slownim.game import GameSpec, Move, Position, successors, to_diff

S6 = GameSpec(6, 2)
S5 = GameSpec(5, 2)

big6 = st.lists(st.integers(0, 10**6), min_size=6, max_size=6).map(Position)
big5 = st.lists(st.integers(0, 10**6), min_size=5, max_size=5).map(Position)


def test_p6_even_examples():
    assert p6_even((0, 0, 1, 1, 1, 1))
    assert p6_even((0,) * 6)
    assert not p6_even((1,) * 6)


def test_p6_odd_examples():
    assert p6_odd((0, 0, 0, 0, 0, 1))
    assert not p6_odd((0, 0, 0, 0, 1, 2))
    x = (0, 2, 2, 3, 4, 10)
    assert p6_odd(x) == (sg(x, S6) == 0)


def test_p5_examples():
    assert p5_even((0, 1, 1, 1, 1))
    assert p5_even((0,) * 5)
    assert not p5_even((1, 1, 1, 1, 2))
    assert sg((1, 1, 1, 1, 2), S5) != 0
    assert p5_odd((2, 2, 3, 4, 6))
    assert not p5_odd((2, 2, 3, 4, 10))
    assert p5_odd((0, 0, 0, 0, 1))


def test_primed_values_for_paper_pair():
    f = primed_functions((2, 2, 3, 4, 6))
    assert f.s == -2 + 2 - 3 - 4 + 6
    assert f.T < 0 and f.K
    g = primed_functions((2, 2, 3, 4, 10))
    assert g.T > 0 and not g.E


def test_wrong_residue_is_an_error():
    with pytest.raises(WrongResidueError):
        p6_even((0, 0, 0, 0, 0, 1))
    with pytest.raises(WrongResidueError):
        p6_odd((0,) * 6)
    with pytest.raises(WrongResidueError):
        p5_odd((0,) * 5)
    with pytest.raises(WrongResidueError):
        p5_even((0, 0, 0, 0, 1))


def test_no_formula():
    with pytest.raises(NoFormulaError):
        p_formula((0,) * 4, GameSpec(4, 2))
    with pytest.raises(NoFormulaError):
        p_formula((0,) * 6, GameSpec(6, 2, convention="misere"))
    with pytest.raises(NoFormulaError):
        winning_move((0,) * 6, GameSpec(6, 3))


def test_p_formula_dispatch():
    assert not p_formula((0, 7, 7, 7, 7, 10), S6)
    assert sg((0, 7, 7, 7, 7, 10), GameSpec(6, 3)) == 0
    assert p_formula((1, 1, 1, 1, 2, 2), S6)
    assert p_formula((0, 0, 2, 2, 2, 2), S6)
    assert p_formula((3, 1, 1, 1, 1, 3), S6) == p_formula((1, 1, 1, 1, 3, 3), S6)


def test_winning_move_examples():
    m = winning_move((1,) * 6, S6)
    assert m == Move((1, 2))
    assert m.apply((1,) * 6) == (0, 0, 1, 1, 1, 1)
    assert winning_move((0, 0, 1, 1, 1, 1), S6) is None
    m5 = winning_move((2, 2, 3, 4, 10), S5)
    assert p_formula(m5.apply((2, 2, 3, 4, 10)), S5)


@given(big6)
def test_region_functions_agree_in_both_coordinates(x):
    assert region_functions(x) == region_functions_q(to_diff(x))
    assert condition_flags(x) == condition_flags_q(to_diff(x))


@given(big6)
def test_parity_bookkeeping(x):
    assume(sum(x) % 2 == 1)
    f = region_functions(x)
    assert f.s % 2 == 1 and f.u % 2 == 0
    if f.T == 0:
        assert f.u == 0 and f.s > 0


@given(big5)
def test_primed_functions_match_embedding(y):
    x = (0,) + tuple(y)
    f, g, c = primed_functions(y), region_functions(x), condition_flags(x)
    assert (f.r, f.s, f.u) == (g.r, g.s, g.u)
    assert f.E == c.E and f.K == c.K
    assert f.r <= 0 and f.u > f.s and g.T == f.s
    odd = sum(y) % 2
    if odd:
        assert f.T != 0
        assert p5_odd(y) == p6_odd(x)
    else:
        assert p5_even(y) == p6_even(x)


@given(big6)
def test_odd_game_move_invariants(x):
    assume(sum(x) % 2 == 1)
    fx = condition_flags(x)
    for s in successors(x, S6):
        fs = condition_flags(s)
        assert fx.K != fs.K
        if fx.E:
            assert not fs.E


@given(big6)
def test_closure_and_reachability_large(x):
    if p_formula(x, S6):
        assert winning_move(x, S6) is None
        assert not any(p_formula(s, S6) for s in successors(x, S6))
    else:
        m = winning_move(x, S6)
        assert m.preserves_order(x)
        assert p_formula(m.apply(x), S6)


@given(big5)
def test_strategy_five_piles_large(y):
    m = winning_move(y, S5)
    if m is not None:
        assert p_formula(m.apply(y), S5)


def test_oracle_equivalence_small():
    for n, spec in [(6, S6), (5, S5)]:
        table = build_table(spec, 9)
        for x, v in table.items():
            assert p_formula(x, spec) == (v == 0), x


def test_strategy_exhaustive_cap12():
    for x in combinations_with_replacement(range(13), 6):
        m = winning_move(x, S6)
        if m is not None:
            assert p_formula(m.apply(x), S6), (x, m)
