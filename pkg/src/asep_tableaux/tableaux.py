"""Staircase tableaux: representation, validity, q/u filling, weights, enumeration.

Conventions
-----------
Row 1 is the top row and has ``n`` cells; row ``r`` has ``n + 1 - r`` cells and
its last cell, column ``n + 1 - r``, is on the diagonal.  Reading the diagonal
from row 1 downwards goes from the north-east end to the south-west end, so
site ``i`` of the lattice corresponds to the diagonal cell of row ``i``.

Grids are stored as tuples of row tuples of small ints (see :class:`Cell`).
"""

from __future__ import annotations

import json
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, DomainError, ShapeError, ValidationError
from .exactmath import GfPoly, NVARS

MAX_ENUM_N = 7
# auto mode switches to the transfer tensors above this size
ENUM_FAST_LIMIT = 5


class Cell(IntEnum):
    EMPTY = 0
    ALPHA = 1
    BETA = 2
    GAMMA = 3
    DELTA = 4


class Fill(IntEnum):
    ALPHA = 1
    BETA = 2
    GAMMA = 3
    DELTA = 4
    QMARK = 5
    UMARK = 6


EMPTY, ALPHA, BETA, GAMMA, DELTA = range(5)
QMARK, UMARK = 5, 6

_CHARS = ".abgd"
_FILL_CHARS = ".abgdqu"
_SWAP = (EMPTY, DELTA, GAMMA, BETA, ALPHA)  # alpha<->delta, beta<->gamma

StateWord = tuple  # tuple of 0/1, 1 = occupied


def as_state(word: str | Sequence[int]) -> StateWord:
    """Normalize ``"110"``, ``"••∘"`` or ``(1, 1, 0)`` to a tuple of bits."""
    if isinstance(word, str):
        bits = []
        for ch in word:
            if ch in "1•":
                bits.append(1)
            elif ch in "0∘":
                bits.append(0)
            else:
                raise DomainError(f"bad state character {ch!r}")
        return tuple(bits)
    out = tuple(int(x) for x in word)
    if any(x not in (0, 1) for x in out):
        raise DomainError(f"bad state {word!r}")
    return out


def state_str(state: Sequence[int]) -> str:
    return "".join("1" if x else "0" for x in state)


def all_states(n: int) -> list[StateWord]:
    """All 2^n states in lexicographic order of their 0/1 strings."""
    return [tuple(s) for s in product((0, 1), repeat=n)]


@dataclass(frozen=True)
class StaircaseTableau:
    rows: tuple

    @classmethod
    def _trusted(cls, rows: tuple) -> "StaircaseTableau":
        # rows already well-shaped int tuples (enumeration output)
        t = object.__new__(cls)
        object.__setattr__(t, "rows", rows)
        return t

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        n = len(rows)
        for r, row in enumerate(rows):
            if len(row) != n - r:
                raise ShapeError(f"row {r + 1} has {len(row)} cells, expected {n - r}")
            if any(x < EMPTY or x > DELTA for x in row):
                raise ShapeError(f"row {r + 1} has an unknown label")
        object.__setattr__(self, "rows", rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    def cell(self, r: int, c: int) -> Cell:
        """Label at 1-indexed (row, column)."""
        return Cell(self.rows[r - 1][c - 1])

    def diagonal(self) -> tuple[int, ...]:
        return tuple(row[-1] for row in self.rows)

    def labels(self) -> Counter:
        return Counter(x for row in self.rows for x in row if x)

    def to_text(self) -> str:
        lines = [str(self.size)]
        lines += ["".join(_CHARS[x] for x in row) for row in self.rows]
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str) -> "StaircaseTableau":
        lines = [ln.strip() for ln in text.strip().splitlines()]
        if not lines:
            raise ShapeError("empty tableau text")
        try:
            n = int(lines[0])
        except ValueError:
            raise ShapeError(f"first line must be the size, got {lines[0]!r}") from None
        body = lines[1:]
        if len(body) != n:
            raise ShapeError(f"expected {n} rows, got {len(body)}")
        if any(ch not in _CHARS for ln in body for ch in ln):
            raise ShapeError("tableau cells must be one of . a b g d")
        return cls(tuple(tuple(_CHARS.index(ch) for ch in ln) for ln in body))

    def to_json(self) -> dict:
        return {"size": self.size, "rows": self.to_text().splitlines()[1:]}

    @classmethod
    def from_json(cls, data) -> "StaircaseTableau":
        if isinstance(data, str):
            data = json.loads(data)
        t = cls.from_text("\n".join([str(data["size"]), *data["rows"]]))
        return t

    def __str__(self) -> str:
        return self.to_text()


def validate(t: StaircaseTableau) -> bool:
    """True iff the diagonal, beta/delta-row and alpha/gamma-column rules all hold."""
    rows = t.rows
    n = len(rows)
    for r in range(n):
        row = rows[r]
        if not row[-1]:
            return False
        for c, x in enumerate(row):
            if x in (BETA, DELTA) and any(row[:c]):
                return False
            if x in (ALPHA, GAMMA) and any(rows[rr][c] for rr in range(r)):
                return False
    return True


def tableau_type(t: StaircaseTableau) -> StateWord:
    return tuple(1 if x in (ALPHA, DELTA) else 0 for x in t.diagonal())


# -- filling ----------------------------------------------------------------

def _fill_rule(right: int, below: int) -> int:
    if right == BETA:
        return UMARK
    if right == DELTA:
        return QMARK
    return UMARK if below in (ALPHA, DELTA) else QMARK


def _dual_fill_rule(right: int, below: int) -> int:
    if below == ALPHA:
        return UMARK
    if below == GAMMA:
        return QMARK
    return QMARK if right in (ALPHA, DELTA) else UMARK


def _table(rule) -> tuple:
    # indexed [right][below]; labels are 1..4, row/col 0 unused
    return tuple(tuple(rule(r, b) if r and b else 0 for b in range(5)) for r in range(5))


_WT_TABLE = _table(_fill_rule)
_DUAL_TABLE = _table(_dual_fill_rule)


def _filled(rows: tuple, table: tuple) -> tuple:
    n = len(rows)
    below = [0] * n
    out = [None] * n
    for r in range(n - 1, -1, -1):
        row = rows[r]
        filled = list(row)
        right = 0
        for c in range(len(row) - 1, -1, -1):
            x = row[c]
            if x:
                right = x
                below[c] = x
            else:
                filled[c] = table[right][below[c]]
        out[r] = tuple(filled)
    return tuple(out)


def _exponents(rows: tuple, table: tuple) -> tuple:
    """Weight exponent vector; labels 1..6 map to exponent slots 0..5."""
    e = [0] * NVARS
    below = [0] * len(rows)
    for row in reversed(rows):
        right = 0
        for c in range(len(row) - 1, -1, -1):
            x = row[c]
            if x:
                e[x - 1] += 1
                right = x
                below[c] = x
            else:
                e[table[right][below[c]] - 1] += 1
    return tuple(e)


def fill_qu(t: StaircaseTableau) -> tuple:
    """The filled grid: every empty cell becomes ``Fill.QMARK`` or ``Fill.UMARK``."""
    _require_valid(t)
    return tuple(tuple(Fill(x) for x in row) for row in _filled(t.rows, _WT_TABLE))


def fill_qu_dual(t: StaircaseTableau) -> tuple:
    _require_valid(t)
    return tuple(tuple(Fill(x) for x in row) for row in _filled(t.rows, _DUAL_TABLE))


def filled_text(grid: tuple) -> str:
    return "\n".join("".join(_FILL_CHARS[x] for x in row) for row in grid)


def _require_valid(t: StaircaseTableau) -> None:
    if not validate(t):
        raise ValidationError("not a valid staircase tableau")


def weight(t: StaircaseTableau) -> tuple:
    """Exponent vector over (alpha, beta, gamma, delta, q, u)."""
    _require_valid(t)
    return _exponents(t.rows, _WT_TABLE)


def dual_weight(t: StaircaseTableau) -> tuple:
    _require_valid(t)
    return _exponents(t.rows, _DUAL_TABLE)


def transpose_swap(t: StaircaseTableau) -> StaircaseTableau:
    """Transpose, then exchange alpha<->delta and beta<->gamma."""
    n = t.size
    rows = t.rows
    return StaircaseTableau(
        tuple(tuple(_SWAP[rows[c][r]] for c in range(n - r)) for r in range(n))
    )


def row_index_counts(t: StaircaseTableau) -> tuple[int, int, int]:
    """Numbers of rows indexed by delta, by alpha/gamma, and by beta.

    A row's index is its leftmost Greek label (everything left of it is q or u).
    """
    counts = [0, 0, 0]
    for row in t.rows:
        lead = next(x for x in row if x)
        counts[0 if lead == DELTA else 2 if lead == BETA else 1] += 1
    return counts[0], counts[1], counts[2]


# -- enumeration ------------------------------------------------------------

@lru_cache(maxsize=None)
def _row_options(m: int, blocked: int, diag: int) -> tuple:
    """Admissible fillings of a row of ``m`` cells, in lexicographic order.

    ``blocked`` has bit c set when column c already holds a label higher up,
    which forbids alpha/gamma there.  ``diag`` restricts the diagonal cell:
    -1 any label, 1 alpha/delta, 0 beta/gamma.
    Returns (row, new_blocked) pairs.
    """
    free = [not (blocked >> c) & 1 for c in range(m)]
    last_allowed = {-1: (ALPHA, BETA, GAMMA, DELTA), 1: (ALPHA, DELTA), 0: (BETA, GAMMA)}[diag]
    out = []

    def rec(c: int, prefix: list, seen_label: bool):
        if c == m:
            out.append(tuple(prefix))
            return
        last = c == m - 1
        for x in (EMPTY, ALPHA, BETA, GAMMA, DELTA):
            if last and x not in last_allowed:
                continue
            if x in (ALPHA, GAMMA) and not free[c]:
                continue
            if x in (BETA, DELTA) and seen_label:
                continue
            prefix.append(x)
            rec(c + 1, prefix, seen_label or x != EMPTY)
            prefix.pop()

    rec(0, [], False)
    result = []
    for row in out:
        nb = blocked
        for c, x in enumerate(row):
            if x:
                nb |= 1 << c
        result.append((row, nb))
    return tuple(result)


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1 or n > MAX_ENUM_N:
        raise CapacityError(f"exhaustive enumeration supports 1 <= n <= {MAX_ENUM_N}, got {n}")


def iter_grids(n: int, state: Sequence[int] | None = None) -> Iterator[tuple]:
    """Yield raw row tuples of every valid tableau of size n (optionally of one type)."""
    _check_n(n)
    diags = [-1] * n if state is None else list(as_state(state))
    if len(diags) != n:
        raise DomainError(f"state has length {len(diags)}, expected {n}")
    rows: list = [None] * n

    def rec(r: int, blocked: int):
        if r == n:
            yield tuple(rows)
            return
        for row, nb in _row_options(n - r, blocked, diags[r]):
            rows[r] = row
            yield from rec(r + 1, nb)

    yield from rec(0, 0)


def enumerate_tableaux(n: int, state: Sequence[int] | None = None) -> Iterator[StaircaseTableau]:
    """Stream every valid staircase tableau of size n exactly once.

    Order: row-major, top row first, with labels ordered
    Empty < Alpha < Beta < Gamma < Delta.
    """
    for rows in iter_grids(n, state):
        yield StaircaseTableau._trusted(rows)


def count_tableaux(n: int) -> int:
    return sum(1 for _ in iter_grids(n))


def expected_count(n: int) -> int:
    return 4**n * math.factorial(n)


# -- generating functions ---------------------------------------------------

def _finish(counter: Counter, keep_u: bool) -> GfPoly:
    p = GfPoly.from_counts(counter)
    return p if keep_u else p.set_u1()


def _gf_enum_type(n: int, state: StateWord, keep_u: bool) -> GfPoly:
    acc: Counter = Counter()
    for rows in iter_grids(n, state):
        acc[_exponents(rows, _WT_TABLE)] += 1
    return _finish(acc, keep_u)


def _gf_enum_all(n: int, keep_u: bool, workers: int = 1) -> dict:
    if workers > 1:
        states = all_states(n)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            polys = list(pool.map(_gf_enum_type, [n] * len(states), states, [keep_u] * len(states)))
        return dict(zip(states, polys))
    accs: dict = {}
    for rows in iter_grids(n):
        tau = tuple(1 if row[-1] in (ALPHA, DELTA) else 0 for row in rows)
        acc = accs.get(tau)
        if acc is None:
            acc = accs[tau] = Counter()
        acc[_exponents(rows, _WT_TABLE)] += 1
    return {tau: _finish(accs.get(tau, Counter()), keep_u) for tau in all_states(n)}


def _pick_method(n: int, method: str) -> str:
    if method not in ("auto", "enumerate", "transfer"):
        raise DomainError(f"unknown method {method!r}")
    if method == "auto":
        return "enumerate" if n <= ENUM_FAST_LIMIT else "transfer"
    return method


def gf_by_type(n: int, state, keep_u: bool = True, method: str = "auto") -> GfPoly:
    """Sum of weights of all tableaux of size n and the given type."""
    tau = as_state(state)
    if len(tau) != n:
        raise DomainError(f"type has length {len(tau)}, expected {n}")
    if _pick_method(n, method) == "transfer":
        from .ansatz import wxv

        p = wxv(tau)
        return p.homogenize_u(n * (n + 1) // 2) if keep_u else p
    return _gf_enum_type(n, tau, keep_u)


def gf_all_types(n: int, keep_u: bool = True, method: str = "auto", workers: int = 1) -> dict:
    """Map every state of length n to its generating function."""
    if _pick_method(n, method) == "transfer":
        return {tau: gf_by_type(n, tau, keep_u, "transfer") for tau in all_states(n)}
    return _gf_enum_all(n, keep_u, workers)


def gf_total(n: int, keep_u: bool = True, method: str = "auto", workers: int = 1) -> GfPoly:
    """The partition function Z_n (Z_0 = 1)."""
    if n == 0:
        return GfPoly.constant(1)
    if n < 0:
        raise DomainError("n must be non-negative")
    if _pick_method(n, method) == "transfer":
        from .ansatz import partition_function

        p = partition_function(n)
        return p.homogenize_u(n * (n + 1) // 2) if keep_u else p
    total = GfPoly()
    for p in gf_all_types(n, keep_u, "enumerate", workers).values():
        total = total + p
    return total


def gf_filtered(n: int, pred, keep_u: bool = True) -> GfPoly:
    """Generating function of the size-n tableaux whose raw rows satisfy ``pred``."""
    acc: Counter = Counter()
    for rows in iter_grids(n):
        if pred(rows):
            acc[_exponents(rows, _WT_TABLE)] += 1
    return _finish(acc, keep_u)


def weights_of(tableaux: Iterable[StaircaseTableau]) -> GfPoly:
    acc: Counter = Counter(weight(t) for t in tableaux)
    return GfPoly.from_counts(acc)
