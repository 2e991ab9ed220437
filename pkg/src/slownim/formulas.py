"""Closed-form P-positions of exact slow 2-Nim on five and six piles, and the
constructive winning strategy that goes with them.

Even token sums are decided by the parity pattern of the piles. Odd token
sums split into three regions by the sign of ``T = min(s, u)`` and combine
the congruence conditions ``E``, ``F`` and ``K``:

    P = (E and T > 0) or (K and F and T == 0) or (K and T < 0)

Five-pile positions are the six-pile ones with an empty first pile.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from slownim.game import EXACT, NORMAL, GameSpec, Move, Position, to_diff


class WrongResidueError(ValueError):
    """A predicate was called on a position of the other residue class."""


class NoFormulaError(LookupError):
    """No closed form is known for this game; use the oracle instead."""


class StrategyGapError(RuntimeError):
    """The constructive case analysis produced no applicable move."""


P6_EVEN_PATTERNS = frozenset(
    {
        ("e", "e", "o", "o", "o", "o"),
        ("o", "o", "e", "e", "o", "o"),
        ("o", "o", "o", "o", "e", "e"),
        ("e", "e", "e", "e", "e", "e"),
    }
)
P5_EVEN_PATTERNS = frozenset({("e", "o", "o", "o", "o"), ("e", "e", "e", "e", "e")})


def _parities(x: Sequence[int]) -> tuple[str, ...]:
    return tuple("e" if v % 2 == 0 else "o" for v in x)


def _require(x: Sequence[int], n: int, parity: int) -> None:
    if len(x) != n:
        raise ValueError(f"expected {n} piles, got {len(x)}")
    if any(x[i] > x[i + 1] for i in range(n - 1)) or any(v < 0 for v in x):
        raise ValueError(f"{tuple(x)} is not a canonical position")
    if sum(x) % 2 != parity:
        kind = "even" if parity == 0 else "odd"
        raise WrongResidueError(f"{tuple(x)} does not have an {kind} token sum")


# ---------------------------------------------------------------------------
# region functions


@dataclass(frozen=True)
class RegionFunctions:
    r: int
    s: int
    u: int

    @property
    def T(self) -> int:
        return min(self.s, self.u)

    @property
    def region(self) -> str:
        t = self.T
        return "A" if t > 0 else ("B" if t == 0 else "C")


def region_functions(x: Sequence[int]) -> RegionFunctions:
    x1, x2, x3, x4, x5, x6 = x
    r = x1 + x4 - x5
    s = x1 - x2 + x3 - x4 - x5 + x6
    return RegionFunctions(r, s, s - 2 * r + 1)


def region_functions_q(q: Sequence[int]) -> RegionFunctions:
    q1, q2, q3, q4, q5, q6 = q
    r = q1 - q5
    s = -q2 - q4 + q6
    u = -2 * q1 - q2 - q4 + 2 * q5 + q6 + 1
    return RegionFunctions(r, s, u)


@dataclass(frozen=True)
class ConditionFlags:
    E: bool
    F: bool
    K: bool


def condition_flags(x: Sequence[int]) -> ConditionFlags:
    x1, x2, x3, x4, x5, x6 = x
    E = (x2 - x1) % 2 == 0 and (x4 - x3) % 2 == 0 and (x5 - x4 - x1) % 2 == 0
    F = (x4 - x3) % 2 == 0
    K = sum(x) % 4 == 1
    return ConditionFlags(E, F, K)


def condition_flags_q(q: Sequence[int]) -> ConditionFlags:
    q1, q2, q3, q4, q5, q6 = q
    E = q2 % 2 == 0 and q4 % 2 == 0 and (q1 - q5) % 2 == 0
    F = q4 % 2 == 0
    K = (-2 * q1 + q2 - q4 + 2 * q5 + q6) % 4 == 1
    return ConditionFlags(E, F, K)


@dataclass(frozen=True)
class PrimedFunctions:
    r: int
    s: int
    u: int
    E: bool
    K: bool

    @property
    def T(self) -> int:
        # r <= 0 on sorted input, so u > s
        return self.s


def primed_functions(y: Sequence[int]) -> PrimedFunctions:
    y1, y2, y3, y4, y5 = y
    r = y3 - y4
    s = -y1 + y2 - y3 - y4 + y5
    E = y1 % 2 == 0 and (y3 - y2) % 2 == 0 and (y4 - y3) % 2 == 0
    K = sum(y) % 4 == 1
    return PrimedFunctions(r, s, s - 2 * r + 1, E, K)


def _in_p_odd(flags: ConditionFlags, t: int) -> bool:
    if t > 0:
        return flags.E
    if t == 0:
        return flags.K and flags.F
    return flags.K


# ---------------------------------------------------------------------------
# predicates


def p6_even(x: Sequence[int]) -> bool:
    """P-position test for six piles with an even token sum."""
    _require(x, 6, 0)
    return _parities(x) in P6_EVEN_PATTERNS


def p6_odd(x: Sequence[int]) -> bool:
    """P-position test for six piles with an odd token sum."""
    _require(x, 6, 1)
    q = to_diff(x)
    return _in_p_odd(condition_flags_q(q), region_functions_q(q).T)


def p5_even(y: Sequence[int]) -> bool:
    _require(y, 5, 0)
    return _parities(y) in P5_EVEN_PATTERNS


def p5_odd(y: Sequence[int]) -> bool:
    _require(y, 5, 1)
    f = primed_functions(y)
    return (f.T < 0 and f.K) or (f.T > 0 and f.E)


def has_formula(spec: GameSpec) -> bool:
    return spec.k == 2 and spec.n in (5, 6) and spec.rule == EXACT and spec.convention == NORMAL


def _check_spec(spec: GameSpec) -> None:
    if not has_formula(spec):
        raise NoFormulaError(f"no closed form for {spec.label()}")


def p_formula(x: Sequence[int], spec: GameSpec) -> bool:
    """Closed-form P-position test for normal-play Nim1_{5,=2} and Nim1_{6,=2}."""
    _check_spec(spec)
    x = Position(x)
    spec.check(x)
    odd = sum(x) % 2
    if spec.n == 6:
        return p6_odd(x) if odd else p6_even(x)
    return p5_odd(x) if odd else p5_even(x)


# ---------------------------------------------------------------------------
# strategy

_PAIR = {1: 2, 2: 1, 3: 4, 4: 3, 5: 6, 6: 5}

# region A, keyed on (q2, q4, r) mod 2
REGION_A_MOVES = {
    (0, 0, 1): (1, 2),
    (0, 1, 0): (4, 5),
    (0, 1, 1): (4, 6),
    (1, 0, 0): (2, 6),
    (1, 0, 1): (2, 5),
    (1, 1, 0): (2, 3),
    (1, 1, 1): (2, 4),
}


def _legal_q(q: Sequence[int], i: int, j: int) -> bool:
    if q[i - 1] <= 0:
        return False
    return j == i + 1 or q[j - 1] > 0


def _even_move(x: Sequence[int]) -> Move:
    odd = [i for i in range(1, 7) if x[i - 1] % 2]
    if len(odd) == 6:
        return Move((1, 2))
    if len(odd) == 2:
        return Move(tuple(odd))
    evens = [i for i in range(1, 7) if x[i - 1] % 2 == 0]
    # sorted input: the lower index is the smaller pile, ties included
    small, large = evens
    first = Move((small, _PAIR[large]))
    if first.preserves_order(x):
        return first
    # the smaller even pile is empty, or reducing the partner forces a reorder
    second = Move((large, _PAIR[small]))
    if second.preserves_order(x):
        return second
    raise StrategyGapError(f"no order-preserving move for {tuple(x)}")


def _odd_move(x: Sequence[int]) -> Move:
    q = to_diff(x)
    q1, q2, q3, q4, q5, q6 = q
    fl = condition_flags_q(q)
    rf = region_functions_q(q)
    t = rf.T

    if t < 0:
        if q2 > 0:
            return Move((2, 3))
        if q5 > 0:
            return Move((5, 6))
        if q6 > 0:
            return Move((1, 6)) if q1 > 0 else Move((4, 6))
        return Move((1, 4)) if q1 > 0 else Move((4, 5))

    if t == 0:
        if not fl.K:
            if q4 % 2 == 0:
                return Move((1, 6))
            return Move((4, 5)) if rf.r % 2 == 0 else Move((4, 6))
        return Move((1, 4)) if rf.r % 2 == 0 else Move((2, 4))

    key = (q2 % 2, q4 % 2, rf.r % 2)
    if key not in REGION_A_MOVES:
        raise StrategyGapError(f"no region-A row for parities {key} at {tuple(x)}")
    i, j = REGION_A_MOVES[key]
    if _legal_q(q, i, j):
        return Move((i, j))
    if key == (0, 0, 1):
        return Move((5, 6))
    if key == (1, 0, 1):
        return Move((1, 6))
    raise StrategyGapError(f"region-A move {{{i},{j}}} illegal at {tuple(x)}")


def winning_move(x: Sequence[int], spec: GameSpec) -> Move | None:
    """A move into a P-position, or ``None`` if ``x`` already is one.

    The move follows the case analysis behind the closed forms, so it is
    deterministic. Pile labels are 1-based.
    """
    _check_spec(spec)
    x = Position(x)
    spec.check(x)
    if p_formula(x, spec):
        return None
    padded = x if spec.n == 6 else (0,) + tuple(x)
    move = _odd_move(padded) if sum(x) % 2 else _even_move(padded)
    if spec.n == 5:
        if 1 in move.piles:
            raise StrategyGapError(f"move {move} touches the empty phantom pile for {tuple(x)}")
        move = Move(tuple(i - 1 for i in move.piles))
    if not move.preserves_order(x):
        raise StrategyGapError(f"move {move} is not legal at {tuple(x)}")
    return move
