"""Bounded sweeps for invariant shifts.

A vector ``y`` is a P-shift (g-shift, g⁻-shift, g±-shift) of a game when
adding it to any position preserves P-status (normal SG value, misère SG
value, both). A finite sweep can only refute such a claim or report that it
holds up to the pile cap; reports always carry that cap.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from slownim.engine import SGTable, build_table, sg
from slownim.formulas import p_formula
from slownim.game import MISERE, NORMAL, GameSpec, InvalidPositionError, Position, shift

P = "P"
G = "g"
G_MISERE = "g-"
G_BOTH = "g+-"
PREDICATE = "predicate"
KINDS = (P, G, G_MISERE, G_BOTH, PREDICATE)
_ALIASES = {"g⁻": G_MISERE, "g±": G_BOTH, "gpm": G_BOTH, "g-misere": G_MISERE}

HOLDS = "holds-up-to-bound"
REFUTED = "refuted"

Y1 = (0, 0, 1, 1, 1, 1)
Y2 = (1, 1, 1, 1, 2, 2)
Y3 = (0, 0, 0, 2, 2, 4)
Y4 = (0, 2, 2, 2, 2, 4)
PROPOSITION1_SHIFTS = (Y1, Y2, Y3, Y4)

CONJECTURE_SHIFT = (0, 0, 0, 2, 2, 2)
CONJECTURE_NOTE = "consistent with conjecture (unproven)"


def normalize_kind(kind: str) -> str:
    kind = _ALIASES.get(kind, kind)
    if kind not in KINDS:
        raise ValueError(f"unknown shift kind {kind!r}")
    return kind


@dataclass(frozen=True)
class Counterexample:
    position: Position
    shifted: Position
    measure: str  # which quantity differs: P, g, g- or predicate
    before: int
    after: int

    def to_dict(self) -> dict:
        return {
            "position": list(self.position),
            "shifted": list(self.shifted),
            "measure": self.measure,
            "before": self.before,
            "after": self.after,
        }


@dataclass
class ShiftReport:
    spec: GameSpec
    y: tuple[int, ...]
    kind: str
    cap: int
    verdict: str
    counterexample: Counterexample | None = None
    residue: int | None = None
    checked: int = 0
    mismatches: int = 0
    expect: str | None = None  # "holds" or "refuted"
    note: str = ""
    witnesses: list[Counterexample] = field(default_factory=list, repr=False)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    @property
    def failed(self) -> bool:
        """An expected-to-hold shift was refuted."""
        return self.expect == "holds" and not self.holds

    @property
    def surprising(self) -> bool:
        return self.expect is not None and (self.expect == "holds") != self.holds

    def to_dict(self) -> dict:
        out = {
            "spec": {
                "n": self.spec.n,
                "k": self.spec.k,
                "rule": self.spec.rule,
                "convention": self.spec.convention,
            },
            "shift": list(self.y),
            "kind": self.kind,
            "cap": self.cap,
            "residue": self.residue,
            "verdict": self.verdict,
            "checked": self.checked,
            "mismatches": self.mismatches,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_dict()
        if self.expect is not None:
            out["expect"] = self.expect
        if self.note:
            out["note"] = self.note
        return out

    def summary(self) -> str:
        cls = "" if self.residue is None else f"[{self.residue}]"
        head = f"{self.spec.label()}{cls} y={self.y} kind={self.kind} cap={self.cap}: {self.verdict}"
        if self.counterexample is not None:
            c = self.counterexample
            head += f" ({c.measure}: {tuple(c.position)} -> {c.before}, {tuple(c.shifted)} -> {c.after})"
        if self.note:
            head += f" [{self.note}]"
        return head


@lru_cache(maxsize=32)
def cached_table(spec: GameSpec, cap: int) -> SGTable:
    return build_table(spec, cap)


def _validate_shift(spec: GameSpec, y: Sequence[int], cap: int) -> tuple[int, ...]:
    y = tuple(int(v) for v in y)
    if len(y) != spec.n:
        raise InvalidPositionError(f"shift has {len(y)} entries, game has {spec.n} piles")
    if any(v < 0 for v in y) or any(y[i] > y[i + 1] for i in range(len(y) - 1)):
        raise InvalidPositionError(f"shift {y} must be nonnegative and nondecreasing")
    if cap < max(y):
        raise InvalidPositionError(f"cap {cap} is smaller than max(y) = {max(y)}")
    return y


def _measures(kind: str, spec: GameSpec) -> list[tuple[str, GameSpec]]:
    if kind == P:
        return [(P, spec)]
    if kind == G:
        return [(G, spec.with_convention(NORMAL))]
    if kind == G_MISERE:
        return [(G_MISERE, spec.with_convention(MISERE))]
    return [(G, spec.with_convention(NORMAL)), (G_MISERE, spec.with_convention(MISERE))]


def find_mismatches(
    spec: GameSpec,
    y: Sequence[int],
    kind: str,
    cap: int,
    residue: int | None = None,
) -> tuple[int, list[Counterexample]]:
    """Every x (lexicographic order) with max(x + y) <= cap where the shift fails.

    Returns the number of positions checked and the mismatches.
    """
    kind = normalize_kind(kind)
    y = _validate_shift(spec, y, cap)
    yv = np.asarray(y, dtype=np.int64)
    base = cached_table(spec.with_convention(NORMAL), cap)
    X = base.positions
    mask = X[:, -1] + yv[-1] <= cap
    if residue is not None:
        mask &= X.sum(axis=1) % spec.k == residue
    X = X[mask]
    XY = X + yv

    if kind == PREDICATE:
        before = np.array([p_formula(tuple(row), spec) for row in X.tolist()], dtype=np.int64)
        after = np.array([p_formula(tuple(row), spec) for row in XY.tolist()], dtype=np.int64)
        bad = np.nonzero(before != after)[0]
        found = [
            Counterexample(Position(X[i].tolist()), Position(XY[i].tolist()), PREDICATE, int(before[i]), int(after[i]))
            for i in bad
        ]
        return len(X), found

    rows: dict[int, Counterexample] = {}
    for measure, mspec in _measures(kind, spec):
        table = cached_table(mspec, cap)
        before = table.lookup(X)
        after = table.lookup(XY)
        if measure == P:
            bad = np.nonzero((before == 0) != (after == 0))[0]
        else:
            bad = np.nonzero(before != after)[0]
        for i in bad.tolist():
            if i not in rows:
                rows[i] = Counterexample(
                    Position(X[i].tolist()), Position(XY[i].tolist()), measure, int(before[i]), int(after[i])
                )
    return len(X), [rows[i] for i in sorted(rows)]


def check_shift(
    spec: GameSpec,
    y: Sequence[int],
    kind: str,
    cap: int,
    residue: int | None = None,
    expect: str | None = None,
    note: str = "",
    keep: int = 0,
) -> ShiftReport:
    """Sweep all canonical x with max(x + y) <= cap and compare.

    ``kind`` P compares zero-status under ``spec.convention``; g and g-
    compare normal and misère SG values; g+- compares both; predicate
    compares the closed-form test. The reported counterexample is the
    lexicographically smallest failing x. ``keep`` retains that many more
    mismatches in ``witnesses``.
    """
    kind = normalize_kind(kind)
    checked, found = find_mismatches(spec, y, kind, cap, residue)
    return _report(spec, y, kind, cap, residue, checked, found, expect, note, keep)


def _report(spec, y, kind, cap, residue, checked, found, expect=None, note="", keep=0) -> ShiftReport:
    if found and note == CONJECTURE_NOTE:
        note = ""
    return ShiftReport(
        spec=spec,
        y=tuple(int(v) for v in y),
        kind=kind,
        cap=cap,
        verdict=REFUTED if found else HOLDS,
        counterexample=found[0] if found else None,
        residue=residue,
        checked=checked,
        mismatches=len(found),
        expect=expect,
        note=note,
        witnesses=found[:keep],
    )


def shift_fails_at(spec: GameSpec, y: Sequence[int], kind: str, x: Sequence[int]) -> bool:
    """Check one position with the memoized single-position oracle.

    Independent of the table sweep; used to re-validate counterexamples.
    """
    kind = normalize_kind(kind)
    x = Position(x)
    xy = shift(x, y)
    if kind == PREDICATE:
        return p_formula(x, spec) != p_formula(xy, spec)
    for measure, mspec in _measures(kind, spec):
        a, b = sg(x, mspec), sg(xy, mspec)
        if (measure == P and (a == 0) != (b == 0)) or (measure != P and a != b):
            return True
    return False


def revalidate(report: ShiftReport) -> bool:
    """True when a refutation's counterexample is confirmed independently."""
    if report.counterexample is None:
        return False
    c = report.counterexample
    return shift_fails_at(report.spec, report.y, report.kind, c.position)


# ---------------------------------------------------------------------------
# suites


def theorem3_shifts(k: int) -> list[tuple[GameSpec, tuple[int, ...]]]:
    """The three (game, shift) pairs claimed to be g±-shifts for exact k-Nim."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return [
        (GameSpec(2 * k, k), (1,) * (2 * k)),
        (GameSpec(2 * k + 1, k), (0,) + (1,) * (2 * k)),
        (GameSpec(k + 1, k), (0,) + (2,) * k),
    ]


def default_cap(spec: GameSpec, budget: int = 60_000, ceiling: int = 20) -> int:
    from slownim.engine import count_positions

    cap = 2
    while cap < ceiling and count_positions(spec.n, cap + 1) <= budget:
        cap += 1
    return cap


def theorem3_suite(k: int, cap: int | None = None) -> list[ShiftReport]:
    reports = []
    for spec, y in theorem3_shifts(k):
        b = cap if cap is not None else max(default_cap(spec), max(y))
        reports.append(check_shift(spec, y, G_BOTH, b, expect="holds"))
    return reports


def theorem3_side_conditions(spec: GameSpec, y: Sequence[int], cap: int) -> bool:
    """supp(x) minus supp(y) has at most one element for every x, and sum(y) == 2k."""
    from slownim.engine import enumerate_positions

    if sum(y) != 2 * spec.k:
        return False
    zero = np.asarray(y) == 0
    X = enumerate_positions(spec.n, cap)
    return bool(((X[:, zero] > 0).sum(axis=1) <= 1).all())


def proposition1_suite(cap: int = 16) -> list[ShiftReport]:
    spec = GameSpec(6, 2)
    reports = []
    shifts = list(PROPOSITION1_SHIFTS) + [tuple(a + b for a, b in zip(Y1, Y2))]
    for y in shifts:
        reports.append(check_shift(spec, y, PREDICATE, cap, expect="holds"))
        reports.append(check_shift(spec, y, P, cap, expect="holds"))
    return reports


def conjecture_probe_63(cap: int = 12) -> list[ShiftReport]:
    """The (0,0,0,2,2,2) shift in exact slow 3-Nim on six piles."""
    spec = GameSpec(6, 3)
    mis = spec.with_convention(MISERE)
    y = CONJECTURE_SHIFT
    reports = [
        check_shift(spec, y, P, cap, residue=0, expect="holds", note=CONJECTURE_NOTE),
        check_shift(spec, y, P, cap, residue=1, expect="holds", note=CONJECTURE_NOTE),
        check_shift(spec, y, P, cap, residue=2, expect="refuted"),
        check_shift(spec, y, G, cap, residue=0, expect="refuted"),
        check_shift(spec, y, G, cap, residue=1, expect="refuted"),
        check_shift(spec, y, G_MISERE, cap, expect="refuted"),
    ]
    for j in range(3):
        reports.append(check_shift(mis, y, P, cap, residue=j, expect="refuted"))
    return reports


@dataclass(frozen=True)
class NegativeClaim:
    """A shift claimed not to hold, with the witness position exhibited for it."""

    name: str
    spec: GameSpec
    y: tuple[int, ...]
    kind: str
    witness: tuple[int, ...]
    cap: int
    residue: int | None = None


NEGATIVE_CLAIMS = (
    NegativeClaim("misere-5-2-(0,0,0,2,2)", GameSpec(5, 2, convention=MISERE), (0, 0, 0, 2, 2), P, (3, 3, 3, 4, 8), 12),
    NegativeClaim("5-2-(0,0,0,0,4)", GameSpec(5, 2), (0, 0, 0, 0, 4), P, (2, 2, 3, 4, 6), 12),
    NegativeClaim("6-3-g-class0", GameSpec(6, 3), CONJECTURE_SHIFT, G, (1, 2, 2, 2, 4, 4), 12, 0),
    NegativeClaim("6-3-g-class1", GameSpec(6, 3), CONJECTURE_SHIFT, G, (1, 2, 3, 3, 3, 4), 12, 1),
    NegativeClaim("6-3-P-class2", GameSpec(6, 3), CONJECTURE_SHIFT, P, (0, 7, 7, 7, 7, 10), 12, 2),
    NegativeClaim("6-3-misere-g", GameSpec(6, 3), CONJECTURE_SHIFT, G_MISERE, (1, 2, 3, 3, 3, 3), 12),
    NegativeClaim("6-3-misere-P-class0", GameSpec(6, 3, convention=MISERE), CONJECTURE_SHIFT, P, (1, 2, 3, 3, 3, 3), 12, 0),
    NegativeClaim("6-3-misere-P-class1", GameSpec(6, 3, convention=MISERE), CONJECTURE_SHIFT, P, (1, 2, 3, 3, 3, 4), 12, 1),
    NegativeClaim("6-3-misere-P-class2", GameSpec(6, 3, convention=MISERE), CONJECTURE_SHIFT, P, (0, 1, 2, 2, 2, 4), 12, 2),
)


def check_negative_claim(claim: NegativeClaim) -> tuple[ShiftReport, bool]:
    """Sweep the claim and report whether its witness is among the mismatches."""
    kind = normalize_kind(claim.kind)
    checked, found = find_mismatches(claim.spec, claim.y, kind, claim.cap, claim.residue)
    report = _report(claim.spec, claim.y, kind, claim.cap, claim.residue, checked, found, expect="refuted")
    witness = Position(claim.witness)
    return report, any(c.position == witness for c in found)
