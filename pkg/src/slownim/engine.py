"""Sprague-Grundy oracle for slow Nim games.

Two independent routes compute the same values:

* :func:`sg` / :func:`height` evaluate one position by memoized depth-first
  search over :func:`slownim.game.successors`.
* :func:`build_table` runs a vectorized retrograde sweep over every canonical
  position with piles bounded by a cap, level by level in token sum.

Misère values differ from normal ones only in the terminal base (1 instead
of 0); the recursion is otherwise identical.
"""
from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import IO, Iterator, Sequence

import numpy as np

from slownim.game import (
    EXACT,
    GameSpec,
    InvalidPositionError,
    Position,
    is_terminal,
    successors,
)

DEFAULT_MAX_STATES = 20_000_000


class TableOverflowError(RuntimeError):
    """The requested table would exceed the configured state budget."""


# ---------------------------------------------------------------------------
# single-position oracle

_caches: dict[tuple[str, GameSpec], dict[Position, int]] = {}


def clear_cache() -> None:
    _caches.clear()


def _memo_eval(x: Position, spec: GameSpec, what: str) -> int:
    cache = _caches.setdefault((what, spec), {})
    if x in cache:
        return cache[x]
    if what == "sg":
        leaf = 1 if spec.misere else 0
    else:
        leaf = 0
    # explicit stack; recursion depth would grow with the token count
    stack = [x]
    while stack:
        top = stack[-1]
        if top in cache:
            stack.pop()
            continue
        succ = successors(top, spec)
        pending = [s for s in succ if s not in cache]
        if pending:
            stack.extend(pending)
            continue
        stack.pop()
        if not succ:
            cache[top] = leaf
        elif what == "sg":
            cache[top] = mex(cache[s] for s in succ)
        else:
            cache[top] = 1 + max(cache[s] for s in succ)
    return cache[x]


def mex(values) -> int:
    seen = 0
    for v in values:
        seen |= 1 << v
    # lowest clear bit
    return (~seen & (seen + 1)).bit_length() - 1


def sg(x: Sequence[int], spec: GameSpec) -> int:
    """SG value of ``x`` (misère SG value if ``spec.convention == "misere"``)."""
    x = Position(x)
    spec.check(x)
    return _memo_eval(x, spec, "sg")


def height(x: Sequence[int], spec: GameSpec) -> int:
    """Maximum number of successive moves playable from ``x``."""
    x = Position(x)
    spec.check(x)
    return _memo_eval(x, spec.with_convention("normal"), "height")


@dataclass(frozen=True)
class Verdict:
    position: Position
    sg_value: int
    is_p: bool


def evaluate(x: Sequence[int], spec: GameSpec) -> Verdict:
    value = sg(x, spec)
    return Verdict(Position(x), value, value == 0)


# ---------------------------------------------------------------------------
# enumeration and ranking of canonical positions


def count_positions(n: int, cap: int) -> int:
    """Number of nondecreasing n-vectors with entries in [0, cap]."""
    return math.comb(cap + n, n)


def enumerate_positions(n: int, cap: int) -> np.ndarray:
    """All nondecreasing n-vectors with entries in [0, cap], in lexicographic order."""
    arr = np.arange(cap + 1, dtype=np.int64).reshape(-1, 1)
    for _ in range(n - 1):
        last = arr[:, -1]
        counts = cap + 1 - last
        total = int(counts.sum())
        starts = np.cumsum(counts) - counts
        offsets = np.arange(total, dtype=np.int64) - np.repeat(starts, counts)
        newcol = np.repeat(last, counts) + offsets
        arr = np.column_stack([np.repeat(arr, counts, axis=0), newcol])
    return arr


def _binomials(top: int, n: int) -> np.ndarray:
    table = np.zeros((top + 1, n + 2), dtype=np.int64)
    for a in range(top + 1):
        for b in range(n + 2):
            table[a, b] = math.comb(a, b)
    return table


def rank_positions(X: np.ndarray, binom: np.ndarray) -> np.ndarray:
    """Colex rank of the strictly increasing sequence x_i + i.

    Ranks of positions with max pile <= B fill exactly [0, C(B+n, n)).
    """
    n = X.shape[1]
    cols = np.arange(n)
    return binom[X + cols, cols + 1].sum(axis=1)


def rank_position(x: Sequence[int]) -> int:
    return sum(math.comb(v + i, i + 1) for i, v in enumerate(x))


# ---------------------------------------------------------------------------
# table


@dataclass
class SGTable:
    """SG values of every canonical position of ``spec`` with max pile <= cap.

    ``values`` is indexed by colex rank; ``-1`` marks positions that were not
    computed (only when the table was restricted to one residue class).
    """

    spec: GameSpec
    cap: int
    positions: np.ndarray  # lexicographic order
    ranks: np.ndarray  # rank of positions[i]
    values: np.ndarray  # by rank
    residue: int | None = None
    _lex_values: np.ndarray | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return int((self.values >= 0).sum())

    def rank(self, x: Sequence[int]) -> int:
        x = Position(x)
        self.spec.check(x)
        if x and x[-1] > self.cap:
            raise KeyError(f"{tuple(x)} exceeds table cap {self.cap}")
        return rank_position(x)

    def __getitem__(self, x: Sequence[int]) -> int:
        v = int(self.values[self.rank(x)])
        if v < 0:
            raise KeyError(f"{tuple(x)} lies outside residue class {self.residue}")
        return v

    def __contains__(self, x) -> bool:
        try:
            self[x]
        except (KeyError, InvalidPositionError):
            return False
        return True

    @property
    def lex_values(self) -> np.ndarray:
        """Values aligned with :attr:`positions`."""
        if self._lex_values is None:
            self._lex_values = self.values[self.ranks]
        return self._lex_values

    def items(self) -> Iterator[tuple[Position, int]]:
        for row, v in zip(self.positions, self.lex_values):
            if v >= 0:
                yield Position(row.tolist()), int(v)

    def p_positions(self) -> set[Position]:
        mask = self.lex_values == 0
        return {Position(row.tolist()) for row in self.positions[mask]}

    def lookup(self, X: np.ndarray) -> np.ndarray:
        """Vectorized lookup for an array of canonical rows."""
        binom = _binomials(self.cap + self.spec.n, self.spec.n)
        return self.values[rank_positions(X, binom)]

    def restrict(self, residue: int) -> "SGTable":
        """Copy of the table with every class other than ``residue`` blanked."""
        k = self.spec.k
        sums = np.zeros_like(self.values)
        sums[self.ranks] = self.positions.sum(axis=1)
        values = np.where(sums % k == residue, self.values, -1)
        return SGTable(self.spec, self.cap, self.positions, self.ranks, values, residue)

    def rows(self) -> Iterator[dict]:
        k = self.spec.k
        for x, v in self.items():
            total = sum(x)
            yield {"position": x.text(), "sum": total, "residue": total % k, "sg": v}

    def to_csv(self, fh: IO[str]) -> int:
        writer = csv.DictWriter(fh, fieldnames=["position", "sum", "residue", "sg"], lineterminator="\n")
        writer.writeheader()
        count = 0
        for row in self.rows():
            writer.writerow(row)
            count += 1
        return count

    def to_jsonl(self, fh: IO[str]) -> int:
        count = 0
        for row in self.rows():
            fh.write(json.dumps(row) + "\n")
            count += 1
        return count


def _successor_ranks(X: np.ndarray, spec: GameSpec, binom: np.ndarray) -> np.ndarray:
    moves = spec.move_sets()
    out = np.full((X.shape[0], len(moves)), -1, dtype=np.int64)
    for m, idx in enumerate(moves):
        idx = list(idx)
        ok = (X[:, idx] > 0).all(axis=1)
        Y = X[ok].copy()
        Y[:, idx] -= 1
        Y.sort(axis=1)
        out[ok, m] = rank_positions(Y, binom)
    return out


def _mex_rows(succ_vals: np.ndarray, base: int) -> np.ndarray:
    m, d = succ_vals.shape
    present = np.zeros((m, d + 1), dtype=bool)
    rows, cols = np.nonzero(succ_vals >= 0)
    present[rows, succ_vals[rows, cols]] = True
    out = np.argmin(present, axis=1)
    terminal = ~(succ_vals >= 0).any(axis=1)
    out[terminal] = base
    return out


def build_table(
    spec: GameSpec,
    cap: int,
    *,
    threads: int = 1,
    residue: int | None = None,
    max_states: int = DEFAULT_MAX_STATES,
) -> SGTable:
    """Retrograde SG table for all positions with max pile <= ``cap``.

    Levels are processed in increasing token sum; every successor lies on a
    strictly lower level. With ``threads > 1`` each level is split into
    chunks evaluated concurrently; the result is identical.
    """
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    if residue is not None and spec.rule != EXACT:
        raise ValueError("residue classes are only closed under the exact rule")
    n = spec.n
    size = count_positions(n, cap)
    if size > max_states:
        raise TableOverflowError(f"{spec.label()} at cap {cap} needs {size} states (limit {max_states})")

    binom = _binomials(cap + n, n)
    X = enumerate_positions(n, cap)
    ranks = rank_positions(X, binom)
    by_rank = np.empty_like(X)
    by_rank[ranks] = X
    succ = _successor_ranks(by_rank, spec, binom)
    sums = by_rank.sum(axis=1)
    base = 1 if spec.misere else 0

    values = np.full(size, -1, dtype=np.int32)
    order = np.argsort(sums, kind="stable")
    bounds = np.searchsorted(sums[order], np.arange(sums.max() + 2))

    def run(idx: np.ndarray) -> None:
        s = succ[idx]
        vals = np.where(s >= 0, values[np.maximum(s, 0)], -1)
        values[idx] = _mex_rows(vals, base)

    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        for level in range(len(bounds) - 1):
            if residue is not None and level % spec.k != residue:
                continue
            idx = order[bounds[level]:bounds[level + 1]]
            if len(idx) == 0:
                continue
            if pool is None or len(idx) < 2 * threads:
                run(idx)
            else:
                list(pool.map(run, np.array_split(idx, threads)))
    finally:
        if pool is not None:
            pool.shutdown()
    return SGTable(spec, cap, X, ranks, values, residue)


def p_positions(spec: GameSpec, cap: int) -> set[Position]:
    return build_table(spec, cap).p_positions()


__all__ = [
    "SGTable",
    "TableOverflowError",
    "Verdict",
    "build_table",
    "clear_cache",
    "count_positions",
    "enumerate_positions",
    "evaluate",
    "height",
    "is_terminal",
    "mex",
    "p_positions",
    "rank_position",
    "sg",
]
