"""Positions, game specifications and moves for exact and Moore slow k-Nim.

Positions are nondecreasing tuples of pile sizes. Pile labels in :class:`Move`
are 1-based so that they read the same as the move tables of the strategy
module (``{1, 2}`` reduces the two smallest piles).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

EXACT = "exact"
ATMOST = "atmost"
NORMAL = "normal"
MISERE = "misere"

MAX_PILE = 2**31 - 1


class InvalidPositionError(ValueError):
    """Raised for negative, oversized or malformed pile vectors."""


class IllegalMoveError(ValueError):
    pass


class Position(tuple):
    """Canonical (sorted, nonnegative) pile vector.

    Construction sorts its input, so ``Position((3, 1, 2)) == (1, 2, 3)``.
    Compares and hashes like the plain tuple.
    """

    __slots__ = ()

    def __new__(cls, piles: Iterable[int] = ()):
        values = [int(v) for v in piles]
        for v in values:
            if v < 0:
                raise InvalidPositionError(f"negative pile size {v}")
            if v > MAX_PILE:
                raise InvalidPositionError(f"pile size {v} exceeds {MAX_PILE}")
        values.sort()
        return super().__new__(cls, values)

    def __repr__(self) -> str:
        return f"Position({tuple(self)!r})"

    @property
    def n(self) -> int:
        return len(self)

    @property
    def total(self) -> int:
        return sum(self)

    def text(self) -> str:
        return ",".join(str(v) for v in self)


def canonicalize(raw: Iterable[int]) -> Position:
    return Position(raw)


def shift(x: Sequence[int], y: Sequence[int]) -> Position:
    """Componentwise sum ``x + y`` as a Position."""
    if len(x) != len(y):
        raise InvalidPositionError(f"length mismatch: {len(x)} vs {len(y)}")
    return Position(a + b for a, b in zip(x, y))


def parse_position(text: str) -> Position:
    """Parse ``"1,2,2,2,4,4"`` (any order, optional spaces) into a Position."""
    parts = [p.strip() for p in text.strip().strip("()[]").split(",")]
    if not parts or any(p == "" for p in parts):
        raise InvalidPositionError(f"malformed position {text!r}")
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise InvalidPositionError(f"malformed position {text!r}") from None
    return Position(values)


@dataclass(frozen=True)
class GameSpec:
    """Identifies one slow Nim game.

    ``rule`` is ``"exact"`` (a move takes one token from each of exactly k
    nonempty piles) or ``"atmost"`` (Moore's variant, 1..k piles).
    ``convention`` is ``"normal"`` or ``"misere"``.
    """

    n: int
    k: int
    rule: str = EXACT
    convention: str = NORMAL

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one pile, got n={self.n}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.rule not in (EXACT, ATMOST):
            raise ValueError(f"unknown move rule {self.rule!r}")
        if self.convention not in (NORMAL, MISERE):
            raise ValueError(f"unknown play convention {self.convention!r}")

    @property
    def misere(self) -> bool:
        return self.convention == MISERE

    def with_convention(self, convention: str) -> "GameSpec":
        return GameSpec(self.n, self.k, self.rule, convention)

    def move_sets(self) -> list[tuple[int, ...]]:
        """All 0-based index sets a move may touch, ignoring pile contents."""
        n = self.n
        if self.rule == EXACT:
            return list(combinations(range(n), self.k))
        return [c for size in range(1, self.k + 1) for c in combinations(range(n), size)]

    def label(self) -> str:
        op = "=" if self.rule == EXACT else "<="
        tag = "" if self.convention == NORMAL else " misere"
        return f"Nim1_{self.n},{op}{self.k}{tag}"

    def check(self, x: Sequence[int]) -> None:
        if len(x) != self.n:
            raise InvalidPositionError(f"expected {self.n} piles, got {len(x)}")


@dataclass(frozen=True)
class Move:
    """A move given by its 1-based pile labels, e.g. ``Move((1, 2))``."""

    piles: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "piles", tuple(sorted(self.piles)))
        if len(set(self.piles)) != len(self.piles) or not self.piles:
            raise IllegalMoveError(f"bad pile set {self.piles}")

    def is_legal(self, x: Sequence[int]) -> bool:
        return all(1 <= i <= len(x) and x[i - 1] > 0 for i in self.piles)

    def preserves_order(self, x: Sequence[int]) -> bool:
        """True when decrementing the piles keeps ``x`` sorted without reordering."""
        if not self.is_legal(x):
            return False
        y = self.decrement(x)
        return all(y[i] <= y[i + 1] for i in range(len(y) - 1))

    def decrement(self, x: Sequence[int]) -> list[int]:
        y = list(x)
        for i in self.piles:
            y[i - 1] -= 1
        return y

    def apply(self, x: Sequence[int]) -> Position:
        if not self.is_legal(x):
            raise IllegalMoveError(f"move {set(self.piles)} touches an empty pile of {tuple(x)}")
        return Position(self.decrement(x))

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.piles) + "}"


def legal_moves(x: Sequence[int], spec: GameSpec) -> list[Move]:
    return [
        Move(tuple(i + 1 for i in idx))
        for idx in spec.move_sets()
        if all(x[i] > 0 for i in idx)
    ]


def successors(x: Sequence[int], spec: GameSpec) -> set[Position]:
    """Canonical positions reachable in one move, deduplicated."""
    spec.check(x)
    nonempty = [i for i, v in enumerate(x) if v > 0]
    if spec.rule == EXACT:
        sizes = [spec.k]
    else:
        sizes = range(1, spec.k + 1)
    out = set()
    for size in sizes:
        for idx in combinations(nonempty, size):
            y = list(x)
            for i in idx:
                y[i] -= 1
            out.add(Position(y))
    return out


def is_terminal(x: Sequence[int], spec: GameSpec) -> bool:
    nonempty = sum(1 for v in x if v > 0)
    if spec.rule == EXACT:
        return nonempty < spec.k
    return nonempty == 0


def residue_class(x: Sequence[int], k: int) -> int:
    return sum(x) % k


def parity_vector(x: Sequence[int]) -> tuple[str, ...]:
    return tuple("e" if v % 2 == 0 else "o" for v in x)


def to_diff(x: Sequence[int]) -> tuple[int, ...]:
    """Differential coordinates: q1 = x1, qi = xi - x(i-1)."""
    q = []
    prev = 0
    for v in x:
        if v < prev:
            raise InvalidPositionError(f"{tuple(x)} is not nondecreasing")
        q.append(v - prev)
        prev = v
    return tuple(q)


def from_diff(q: Sequence[int]) -> Position:
    if any(v < 0 for v in q):
        raise InvalidPositionError(f"negative differential coordinate in {tuple(q)}")
    x = []
    acc = 0
    for v in q:
        acc += v
        x.append(acc)
    return Position(x)


def diff_delta(move: Move, n: int) -> tuple[int, ...]:
    """Change of q when the move is applied without reordering.

    Lowering pile i by one lowers q_i and raises q_(i+1).
    """
    d = [0] * n
    for i in move.piles:
        d[i - 1] -= 1
        if i < n:
            d[i] += 1
    return tuple(d)


def apply_move_diff(q: Sequence[int], move: Move) -> tuple[int, ...]:
    """Apply a move in q-space; rejects moves that would break the pile order."""
    d = diff_delta(move, len(q))
    out = tuple(a + b for a, b in zip(q, d))
    if any(v < 0 for v in out):
        raise IllegalMoveError(f"move {move} is not order-preserving at q={tuple(q)}")
    return out
