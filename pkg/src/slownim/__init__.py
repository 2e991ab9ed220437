"""Exact slow k-Nim: Sprague-Grundy oracle, closed-form P-position
predicates for 5- and 6-pile slow 2-Nim, a constructive strategy and a
bounded shift-invariance checker."""

from slownim.game import (
    GameSpec,
    InvalidPositionError,
    Move,
    Position,
    canonicalize,
    from_diff,
    is_terminal,
    parity_vector,
    parse_position,
    residue_class,
    successors,
    to_diff,
)
from slownim.engine import SGTable, Verdict, build_table, evaluate, height, p_positions, sg
from slownim.formulas import (
    NoFormulaError,
    WrongResidueError,
    p5_even,
    p5_odd,
    p6_even,
    p6_odd,
    p_formula,
    winning_move,
)
from slownim.shifts import ShiftReport, check_shift

__all__ = [
    "GameSpec",
    "InvalidPositionError",
    "Move",
    "NoFormulaError",
    "Position",
    "SGTable",
    "ShiftReport",
    "Verdict",
    "WrongResidueError",
    "build_table",
    "canonicalize",
    "check_shift",
    "evaluate",
    "from_diff",
    "height",
    "is_terminal",
    "p5_even",
    "p5_odd",
    "p6_even",
    "p6_odd",
    "p_formula",
    "p_positions",
    "parity_vector",
    "parse_position",
    "residue_class",
    "sg",
    "successors",
    "to_diff",
    "winning_move",
]
