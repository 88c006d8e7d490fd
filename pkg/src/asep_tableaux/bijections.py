"""Bijections between gamma/delta-free staircase tableaux, alternative tableaux
and permutation tableaux.

Shapes are stored as border words over ``"V"``/``"H"``, read from the
northeast corner to the southwest one.  Each ``V`` is a row, whose length is
the number of ``H`` steps after it; each ``H`` is a column, whose height is
the number of ``V`` steps before it.  Rows are listed top to bottom and
cells within a row left to right, so zero-length rows and columns are
represented faithfully.

Text format: the border word on the first line, then one line per row with
``-`` standing for an empty row.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .errors import DomainError, ShapeError, ValidationError
from .tableaux import ALPHA, BETA, DELTA, EMPTY, GAMMA, StaircaseTableau, enumerate_tableaux

EMPTY_CELL, LEFT, UP = ".", "<", "^"


def _check_border(border: str) -> str:
    if not isinstance(border, str) or set(border) - {"V", "H"}:
        raise ShapeError(f"border word must be over V and H, got {border!r}")
    return border


def row_lengths(border: str) -> list[int]:
    out = []
    cols = border.count("H")
    for step in border:
        if step == "H":
            cols -= 1
        else:
            out.append(cols)
    return out


def column_heights(border: str) -> list[int]:
    """Heights of the columns, left to right."""
    heights = []
    rows = 0
    for step in border:
        if step == "V":
            rows += 1
        else:
            heights.append(rows)
    return heights[::-1]


def _check_rows(border: str, rows) -> tuple:
    rows = tuple(tuple(r) for r in rows)
    lengths = row_lengths(border)
    if len(rows) != len(lengths):
        raise ShapeError(f"border {border!r} has {len(lengths)} rows, got {len(rows)}")
    for i, (r, m) in enumerate(zip(rows, lengths)):
        if len(r) != m:
            raise ShapeError(f"row {i + 1} should have length {m}, got {len(r)}")
    return rows


def _rows_text(rows, render) -> list[str]:
    return ["".join(render(x) for x in r) or "-" for r in rows]


def _split_text(text: str) -> tuple[str, list[str]]:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if not lines:
        raise ShapeError("empty tableau text")
    border = lines[0]
    return border, [("" if ln == "-" else ln) for ln in lines[1:]]


@dataclass(frozen=True)
class AlternativeTableau:
    border: str
    rows: tuple  # tuples of ".", "<", "^"

    def __post_init__(self):
        _check_border(self.border)
        rows = _check_rows(self.border, self.rows)
        for r in rows:
            if set(r) - {EMPTY_CELL, LEFT, UP}:
                raise ShapeError("alternative tableau cells must be '.', '<' or '^'")
        object.__setattr__(self, "rows", rows)

    @property
    def length(self) -> int:
        return len(self.border)

    def to_text(self) -> str:
        return "\n".join([self.border or "-", *_rows_text(self.rows, str)])

    @classmethod
    def from_text(cls, text: str) -> "AlternativeTableau":
        border, body = _split_text(text)
        return cls("" if border == "-" else border, tuple(tuple(ln) for ln in body))

    def to_json(self) -> dict:
        return {"border": self.border, "rows": _rows_text(self.rows, str)}

    @classmethod
    def from_json(cls, data) -> "AlternativeTableau":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["border"], tuple(tuple("" if r == "-" else r) for r in data["rows"]))

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class PermutationTableau:
    border: str
    rows: tuple  # tuples of 0/1

    def __post_init__(self):
        _check_border(self.border)
        rows = _check_rows(self.border, self.rows)
        for r in rows:
            if any(x not in (0, 1) for x in r):
                raise ShapeError("permutation tableau cells must be 0 or 1")
        object.__setattr__(self, "rows", rows)

    @property
    def length(self) -> int:
        return len(self.border)

    def to_text(self) -> str:
        return "\n".join([self.border or "-", *_rows_text(self.rows, str)])

    @classmethod
    def from_text(cls, text: str) -> "PermutationTableau":
        border, body = _split_text(text)
        try:
            rows = tuple(tuple(int(ch) for ch in ln) for ln in body)
        except ValueError:
            raise ShapeError("permutation tableau cells must be 0 or 1") from None
        return cls("" if border == "-" else border, rows)

    def to_json(self) -> dict:
        return {"border": self.border, "rows": _rows_text(self.rows, str)}

    @classmethod
    def from_json(cls, data) -> "PermutationTableau":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_text("\n".join([data["border"] or "-", *data["rows"]]))

    def __str__(self) -> str:
        return self.to_text()


# -- validation -------------------------------------------------------------

def validate_alt(at: AlternativeTableau) -> bool:
    """Nothing left of a left arrow, nothing above an up arrow."""
    for r, row in enumerate(at.rows):
        if LEFT in row:
            last = max(c for c, x in enumerate(row) if x == LEFT)
            if any(x != EMPTY_CELL for x in row[:last]):
                return False
        for c, x in enumerate(row):
            if x == UP and any(at.rows[rr][c] != EMPTY_CELL for rr in range(r)):
                return False
    return True


def validate_perm(pt: PermutationTableau) -> bool:
    """Every column holds a 1, and no 0 has a 1 above it and a 1 to its left."""
    for c, h in enumerate(column_heights(pt.border)):
        if not any(pt.rows[r][c] for r in range(h)):
            return False
    for r, row in enumerate(pt.rows):
        for c, x in enumerate(row):
            if x == 0 and any(row[:c]) and any(pt.rows[rr][c] for rr in range(r)):
                return False
    return True


def _require(ok: bool, what: str) -> None:
    if not ok:
        raise ValidationError(f"invalid {what}")


# -- permutation <-> alternative -------------------------------------------

def perm_to_alt(pt: PermutationTableau) -> AlternativeTableau:
    _require(validate_perm(pt), "permutation tableau")
    if not pt.border.startswith("V"):
        raise ValidationError("permutation tableau must have a top row")
    rows = pt.rows
    heights = column_heights(pt.border)
    top1 = [next(r for r in range(h) if rows[r][c]) for c, h in enumerate(heights)]
    out = []
    for r in range(1, len(rows)):
        row = rows[r]
        cells = [EMPTY_CELL] * len(row)
        restricted = [c for c, x in enumerate(row) if x == 0 and top1[c] < r]
        if restricted:
            cells[max(restricted)] = LEFT
        for c in range(len(row)):
            if top1[c] == r:
                cells[c] = UP
        out.append(tuple(cells))
    return AlternativeTableau(pt.border[1:], tuple(out))


def alt_to_perm(at: AlternativeTableau) -> PermutationTableau:
    _require(validate_alt(at), "alternative tableau")
    border = "V" + at.border
    ncols = at.border.count("H")
    heights = column_heights(at.border)
    # topmost 1 per column, in permutation-tableau row numbers
    top1 = []
    for c, h in enumerate(heights):
        up = next((r for r in range(h) if at.rows[r][c] == UP), None)
        top1.append(0 if up is None else up + 1)
    rows = [tuple(1 if top1[c] == 0 else 0 for c in range(ncols))]
    for r, arow in enumerate(at.rows, start=1):
        left = max((c for c, x in enumerate(arow) if x == LEFT), default=-1)
        rows.append(tuple(1 if c > left and top1[c] <= r else 0 for c in range(len(arow))))
    return PermutationTableau(border, tuple(rows))


# -- staircase <-> alternative ---------------------------------------------

def staircase_to_alt(t: StaircaseTableau) -> AlternativeTableau:
    """Delete the column above each alpha diagonal and the row left of each beta one."""
    from .tableaux import validate

    _require(validate(t), "staircase tableau")
    n = t.size
    labels = {x for row in t.rows for x in row}
    if GAMMA in labels or DELTA in labels:
        raise DomainError("tableau contains gamma or delta")
    diag = t.diagonal()
    border = "".join("V" if x == ALPHA else "H" for x in diag)
    rows = []
    for i in range(1, n + 1):
        if diag[i - 1] != ALPHA:
            continue
        # staircase column c sits above the diagonal of site n + 1 - c
        keep = [c for c in range(1, n + 1) if n + 1 - c > i and diag[n - c] == BETA]
        rows.append(tuple({EMPTY: EMPTY_CELL, ALPHA: UP, BETA: LEFT}[t.rows[i - 1][c - 1]] for c in keep))
    return AlternativeTableau(border, tuple(rows))


def alt_to_staircase(at: AlternativeTableau) -> StaircaseTableau:
    _require(validate_alt(at), "alternative tableau")
    n = len(at.border)
    grid = [[EMPTY] * (n - r) for r in range(n)]
    alt_rows = iter(at.rows)
    for i, step in enumerate(at.border, start=1):
        grid[i - 1][n - i] = ALPHA if step == "V" else BETA
    for i, step in enumerate(at.border, start=1):
        if step != "V":
            continue
        arow = next(alt_rows)
        keep = [c for c in range(1, n + 1) if n + 1 - c > i and at.border[n - c] == "H"]
        for c, x in zip(keep, arow):
            grid[i - 1][c - 1] = {EMPTY_CELL: EMPTY, UP: ALPHA, LEFT: BETA}[x]
    return StaircaseTableau(tuple(tuple(r) for r in grid))


def staircase_to_perm(t: StaircaseTableau) -> PermutationTableau:
    return alt_to_perm(staircase_to_alt(t))


def perm_to_staircase(pt: PermutationTableau) -> StaircaseTableau:
    return alt_to_staircase(perm_to_alt(pt))


# -- enumeration ------------------------------------------------------------

def _shapes(length: int) -> Iterator[str]:
    for steps in product("VH", repeat=length):
        yield "".join(steps)


def enumerate_alt(n: int) -> Iterator[AlternativeTableau]:
    """All alternative tableaux of length n (brute force over cell fillings)."""
    for border in _shapes(n):
        lengths = row_lengths(border)
        cells = sum(lengths)
        for fill in product((EMPTY_CELL, LEFT, UP), repeat=cells):
            rows, pos = [], 0
            for m in lengths:
                rows.append(fill[pos : pos + m])
                pos += m
            at = AlternativeTableau(border, tuple(rows))
            if validate_alt(at):
                yield at


def enumerate_perm(length: int) -> Iterator[PermutationTableau]:
    """All permutation tableaux of the given length (brute force over 0/1 fillings)."""
    for border in _shapes(length):
        lengths = row_lengths(border)
        for fill in product((0, 1), repeat=sum(lengths)):
            rows, pos = [], 0
            for m in lengths:
                rows.append(fill[pos : pos + m])
                pos += m
            pt = PermutationTableau(border, tuple(rows))
            if validate_perm(pt):
                yield pt


def enumerate_staircase_ab(n: int) -> Iterator[StaircaseTableau]:
    """Staircase tableaux of size n using only alpha and beta."""
    for t in enumerate_tableaux(n):
        if all(x in (EMPTY, ALPHA, BETA) for row in t.rows for x in row):
            yield t
