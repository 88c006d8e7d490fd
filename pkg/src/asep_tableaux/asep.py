"""The discrete-time open-boundary ASEP and its stationary distribution.

Two independent routes to the stationary law are provided:
:func:`stationary_exact` solves ``pi P = pi`` by exact Gaussian elimination,
:func:`stationary_tableaux` reads it off the staircase tableaux generating
functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegeneracyError, DomainError
from .exactmath import (
    ALPHA,
    BETA,
    DELTA,
    GAMMA,
    Q,
    U,
    GfPoly,
    a,
    b,
    d,
    format_rational,
    g,
    parse_rational,
    q,
    u,
)
from .tableaux import all_states, as_state, gf_all_types, gf_total, state_str

PARAM_NAMES = ("alpha", "beta", "gamma", "delta", "q", "u")


@dataclass(frozen=True)
class AsepParams:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction
    q: Fraction = Fraction(1)
    u: Fraction = Fraction(1)

    def __post_init__(self):
        for name in PARAM_NAMES:
            v = getattr(self, name)
            if isinstance(v, str):
                v = parse_rational(v)
            object.__setattr__(self, name, Fraction(v))

    @classmethod
    def from_mapping(cls, values: dict) -> "AsepParams":
        missing = [k for k in PARAM_NAMES[:4] if k not in values]
        if missing:
            raise DomainError(f"missing parameters: {', '.join(missing)}")
        return cls(**{k: values[k] for k in PARAM_NAMES if k in values})

    def point(self) -> tuple:
        return tuple(getattr(self, k) for k in PARAM_NAMES)

    def to_json(self) -> dict:
        return {k: format_rational(getattr(self, k)) for k in PARAM_NAMES}

    def in_unit_cube(self) -> bool:
        return all(0 <= x <= 1 for x in self.point())


@dataclass
class AsepChain:
    n: int
    params: AsepParams
    transitions: dict = field(repr=False)  # (from_state, to_state) -> Fraction

    def states(self) -> list:
        return all_states(self.n)

    def prob(self, x, y) -> Fraction:
        return self.transitions.get((as_state(x), as_state(y)), Fraction(0))

    def matrix(self) -> list[list[Fraction]]:
        states = self.states()
        return [[self.prob(x, y) for y in states] for x in states]

    def row_sum(self, x) -> Fraction:
        x = as_state(x)
        return sum((p for (s, _), p in self.transitions.items() if s == x), Fraction(0))

    def off_diagonal(self) -> dict:
        return {k: p for k, p in self.transitions.items() if k[0] != k[1] and p}


@dataclass
class StationaryDist:
    n: int
    probs: dict  # state tuple -> Fraction

    def __getitem__(self, state) -> Fraction:
        return self.probs[as_state(state)]

    def expect(self, f) -> Fraction:
        return sum((p * f(s) for s, p in self.probs.items()), Fraction(0))

    def to_json(self) -> dict:
        return {state_str(s): format_rational(p) for s, p in sorted(self.probs.items())}


def _moves(state: tuple) -> Iterable[tuple[tuple, int]]:
    """Yield (target, parameter index) for each elementary move out of ``state``."""
    n = len(state)
    s = list(state)
    if s[0] == 0:
        yield tuple([1] + s[1:]), ALPHA
    else:
        yield tuple([0] + s[1:]), GAMMA
    if s[-1] == 1:
        yield tuple(s[:-1] + [0]), BETA
    else:
        yield tuple(s[:-1] + [1]), DELTA
    for i in range(n - 1):
        if s[i] == 1 and s[i + 1] == 0:
            t = s.copy()
            t[i], t[i + 1] = 0, 1
            yield tuple(t), U
        elif s[i] == 0 and s[i + 1] == 1:
            t = s.copy()
            t[i], t[i + 1] = 1, 0
            yield tuple(t), Q


def build_chain(n: int, params: AsepParams) -> AsepChain:
    """Transition probabilities: each move has rate/(n + 1), the rest stays put."""
    if n < 1:
        raise DomainError("lattice size must be at least 1")
    if not params.in_unit_cube():
        raise DomainError("chain parameters must lie in [0, 1]")
    rates = params.point()
    scale = Fraction(1, n + 1)
    trans: dict = {}
    for x in all_states(n):
        out = Fraction(0)
        for y, idx in _moves(x):
            p = rates[idx] * scale
            if p:
                trans[(x, y)] = trans.get((x, y), Fraction(0)) + p
                out += p
        trans[(x, x)] = 1 - out
    return AsepChain(n, params, trans)


# -- exact linear algebra ---------------------------------------------------

def solve_exact(A: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve ``A x = rhs`` exactly; pivots on the largest rational magnitude."""
    m = len(A)
    M = [list(row) + [rhs[i]] for i, row in enumerate(A)]
    for col in range(m):
        piv = max(range(col, m), key=lambda r: abs(M[r][col]))
        if M[piv][col] == 0:
            raise DegeneracyError("singular system")
        M[col], M[piv] = M[piv], M[col]
        pivot_row = M[col]
        inv = 1 / pivot_row[col]
        for r in range(col + 1, m):
            f = M[r][col]
            if f:
                f *= inv
                row = M[r]
                for c in range(col, m + 1):
                    if pivot_row[c]:
                        row[c] -= f * pivot_row[c]
    x = [Fraction(0)] * m
    for r in range(m - 1, -1, -1):
        s = M[r][m] - sum((M[r][c] * x[c] for c in range(r + 1, m)), Fraction(0))
        x[r] = s / M[r][r]
    return x


def _closed_classes(states: list, succ: dict) -> int:
    """Number of closed communicating classes of the transition digraph."""
    reach = {}
    for s in states:
        seen = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in succ[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        reach[s] = seen
    closed = set()
    for s in states:
        # s is recurrent iff everything it reaches reaches it back
        if all(s in reach[y] for y in reach[s]):
            closed.add(frozenset(reach[s]))
    return len(closed)


def stationary_exact(chain: AsepChain) -> StationaryDist:
    states = chain.states()
    idx = {s: i for i, s in enumerate(states)}
    succ = {s: [] for s in states}
    for (x, y), p in chain.off_diagonal().items():
        succ[x].append(y)
    if _closed_classes(states, succ) != 1:
        raise DegeneracyError("stationary distribution is not unique for these parameters")
    m = len(states)
    # (P^T - I) pi = 0, last equation replaced by sum(pi) = 1
    A = [[Fraction(0)] * m for _ in range(m)]
    for (x, y), p in chain.transitions.items():
        A[idx[y]][idx[x]] += p
    for i in range(m):
        A[i][i] -= 1
    A[-1] = [Fraction(1)] * m
    rhs = [Fraction(0)] * (m - 1) + [Fraction(1)]
    pi = solve_exact(A, rhs)
    return StationaryDist(chain.n, dict(zip(states, pi)))


# -- tableaux route ---------------------------------------------------------

def stationary_tableaux(n: int, params: AsepParams, method: str = "auto") -> StationaryDist:
    point = params.point()
    gfs = gf_all_types(n, keep_u=True, method=method)
    vals = {s: p.eval(point) for s, p in gfs.items()}
    Z = sum(vals.values(), Fraction(0))
    if Z == 0:
        raise DegeneracyError("partition function vanishes at these parameters")
    return StationaryDist(n, {s: v / Z for s, v in vals.items()})


def current_symbolic(n: int, keep_u: bool = False, method: str = "auto") -> tuple[GfPoly, GfPoly]:
    """(numerator, denominator) of the stationary current, unreduced.

    With ``keep_u`` the numerator is Z_{n-1} (alpha beta u^(n-1) - gamma delta q^(n-1)),
    the homogeneous form; at u = 1 it is Z_{n-1} (alpha beta - gamma delta q^(n-1)).
    """
    if n < 1:
        raise DomainError("lattice size must be at least 1")
    factor = a * b * u ** (n - 1) - g * d * q ** (n - 1)
    num = gf_total(n - 1, keep_u=True, method=method) * factor
    den = gf_total(n, keep_u=True, method=method)
    if not keep_u:
        num, den = num.set_u1(), den.set_u1()
    return num, den


def current(n: int, params: AsepParams, method: str = "auto") -> Fraction:
    num, den = current_symbolic(n, keep_u=True, method=method)
    point = params.point()
    z = den.eval(point)
    if z == 0:
        raise DegeneracyError("partition function vanishes at these parameters")
    return num.eval(point) / z


def bond_currents(dist: StationaryDist, params: AsepParams) -> list[Fraction]:
    """Net left-to-right flux through each of the n + 1 bonds (boundaries included)."""
    n = dist.n
    out = [dist.expect(lambda s: params.alpha * (1 - s[0]) - params.gamma * s[0])]
    for i in range(n - 1):
        out.append(
            dist.expect(
                lambda s, i=i: params.u * s[i] * (1 - s[i + 1]) - params.q * (1 - s[i]) * s[i + 1]
            )
        )
    out.append(dist.expect(lambda s: params.beta * s[-1] - params.delta * (1 - s[-1])))
    return out


def m_point(n: int, positions: Iterable[int], params: AsepParams, method: str = "auto") -> Fraction:
    """<tau_{i1} ... tau_{im}>: probability that all the given sites are occupied."""
    pos = sorted(set(positions))
    if any(p < 1 or p > n for p in pos):
        raise DomainError(f"positions must lie in 1..{n}")
    point = params.point()
    gfs = gf_all_types(n, keep_u=True, method=method)
    Z = Fraction(0)
    hit = Fraction(0)
    for s, p in gfs.items():
        v = p.eval(point)
        Z += v
        if all(s[i - 1] for i in pos):
            hit += v
    if Z == 0:
        raise DegeneracyError("partition function vanishes at these parameters")
    return hit / Z


# -- symmetries -------------------------------------------------------------

def _reverse(s):
    return tuple(reversed(s))


def _complement(s):
    return tuple(1 - x for x in s)


SYMMETRIES = (
    ("left-right", _reverse, ((ALPHA, DELTA), (BETA, GAMMA), (U, Q))),
    ("arrow-reversal", _complement, ((ALPHA, GAMMA), (BETA, DELTA), (U, Q))),
    ("particle-hole", lambda s: _complement(_reverse(s)), ((ALPHA, BETA), (GAMMA, DELTA))),
)


def check_symmetries(n: int, method: str = "enumerate") -> dict:
    """Verify the three state symmetries as polynomial identities.

    For each symmetry (state map sigma, variable swap s) this checks
    ``gf(tau) * Z|s == gf(sigma tau)|s * Z`` for every state, i.e. equality of
    the stationary probabilities, and also records whether the unnormalized
    generating functions already agree (``gf(tau) == gf(sigma tau)|s``).
    """
    if n < 1 or n > 5:
        raise DomainError("symmetry check supports 1 <= n <= 5")
    gfs = gf_all_types(n, keep_u=True, method=method)
    Z = sum(gfs.values(), GfPoly())
    report = {"n": n, "status": "ok", "identities": []}
    for name, smap, pairs in SYMMETRIES:
        Zs = Z.swap(*pairs)
        entry = {"name": name, "status": "ok", "unnormalized": True}
        for tau in all_states(n):
            lhs_raw = gfs[tau]
            rhs_raw = gfs[smap(tau)].swap(*pairs)
            if lhs_raw != rhs_raw:
                entry["unnormalized"] = False
                if lhs_raw * Zs != rhs_raw * Z:
                    entry["status"] = "fail"
                    entry["tau"] = state_str(tau)
                    report["status"] = "fail"
                    break
        report["identities"].append(entry)
    return report


def parse_params(values: dict) -> AsepParams:
    """Build parameters from a mapping of names to rational strings."""
    return AsepParams.from_mapping({k: parse_rational(v) for k, v in values.items() if v is not None})
