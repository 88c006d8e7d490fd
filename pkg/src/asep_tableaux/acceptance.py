"""The acceptance suite: eleven end-to-end checks, shared by ``selftest`` and pytest.

Every check returns ``(passed, detail)``; :func:`run_all` prints one
``PASS``/``FAIL`` line per criterion.
"""

from __future__ import annotations

import math
import sys
import time
from fractions import Fraction as F
from typing import Callable

from .ansatz import all_words, transfer_entry, word_type, verify_decrease, verify_gma, verify_identities, wxv
from .asep import AsepParams, bond_currents, build_chain, check_symmetries, current, stationary_exact, stationary_tableaux
from .bijections import (
    alt_to_perm,
    alt_to_staircase,
    enumerate_alt,
    enumerate_perm,
    enumerate_staircase_ab,
    perm_to_alt,
    staircase_to_alt,
    validate_alt,
    validate_perm,
)
from .exactmath import GfPoly, b, d
from .moments import AwParams, binomial_bridge, moments_motzkin, moments_staircase
from .tableaux import _WT_TABLE, _exponents, count_tableaux, gf_by_type, gf_total, iter_grids

CARDINALITIES = {1: 4, 2: 32, 3: 384, 4: 6144, 5: 122880, 6: 2949120}

EXAMPLE_11 = "a^2 u + d^2 q + a d q + a d u + a^2 d + a b d + a g d + a d^2"

CHAIN_POINTS = (
    AsepParams(F(1, 2), F(1, 3), F(1, 5), F(1, 7), F(1, 11), F(1)),
    AsepParams(F(2, 3), F(3, 4), F(1, 9), F(2, 5), F(3, 7), F(1)),
    AsepParams(F(1), F(5, 6), F(1, 2), F(1, 4), F(1, 3), F(4, 5)),
)

MOMENT_POINTS = (
    AwParams(F(1, 2), F(1, 3), F(-1, 5), F(-1, 7), F(1, 11)),
    AwParams(F(1, 3), F(2, 5), F(1, 4), F(-1, 6), F(1, 2)),
    AwParams(F(-2, 7), F(1, 5), F(3, 8), F(1, 9), F(2, 3)),
)

Result = tuple[bool, str]


def criterion_1() -> Result:
    start = time.perf_counter()
    got = {n: count_tableaux(n) for n in CARDINALITIES}
    elapsed = time.perf_counter() - start
    ok = got == CARDINALITIES and all(got[n] == 4**n * math.factorial(n) for n in got) and elapsed < 300
    return ok, f"counts {list(got.values())} in {elapsed:.1f}s"


def criterion_2() -> Result:
    got = gf_by_type(2, "11", keep_u=True, method="enumerate")
    want = GfPoly.from_text(EXAMPLE_11)
    return got == want and len(got) == 8, got.to_text()


def criterion_3() -> Result:
    start = time.perf_counter()
    checked = 0
    for params in CHAIN_POINTS:
        for n in range(1, 6):
            exact = stationary_exact(build_chain(n, params))
            tab = stationary_tableaux(n, params, method="enumerate")
            if exact.probs != tab.probs:
                return False, f"mismatch at n={n}, params={params.to_json()}"
            checked += len(exact.probs)
    elapsed = time.perf_counter() - start
    return elapsed < 600, f"{checked} state probabilities equal in {elapsed:.1f}s"


def criterion_4() -> Result:
    checked = 0
    for length in range(1, 6):
        for X in all_words(length):
            if wxv(X) != gf_by_type(length, word_type(X), keep_u=False, method="enumerate"):
                return False, f"word {X}"
            checked += 1
    return checked == 62, f"{checked} words"


def criterion_5() -> Result:
    reports = verify_gma(3) + verify_identities(3)
    example = transfer_entry("E", 0, 2, 2, 0) == b * d**2
    ok = all(r["status"] == "ok" for r in reports) and example
    bad = [r for r in reports if r["status"] != "ok"]
    return ok, f"families I/II/III and both identities ok, E_0220 = {transfer_entry('E', 0, 2, 2, 0).to_text()}" if ok else str(bad)


def criterion_6() -> Result:
    r = verify_decrease(4, 6)
    ok = r["status"] == "ok"
    return ok, "all words |Y| <= 4, indices <= 6" if ok else str(r)


def criterion_7() -> Result:
    start = time.perf_counter()
    for aw in MOMENT_POINTS:
        stair = moments_staircase(6, aw)
        motz = moments_motzkin(6, aw)
        if stair != motz:
            return False, f"moments differ at {aw.to_json()}"
        for n in range(5):
            lhs, rhs = binomial_bridge(n, aw, motz)
            if lhs != rhs:
                return False, f"bridge fails at n={n}, {aw.to_json()}"
    elapsed = time.perf_counter() - start
    return elapsed < 120, f"3 points, k <= 6, bridge n <= 4, {elapsed:.1f}s"


def criterion_8() -> Result:
    for n in range(1, 5):
        r = check_symmetries(n)
        if r["status"] != "ok":
            return False, str(r)
    return True, "left-right, arrow-reversal, particle-hole for n <= 4"


def criterion_9() -> Result:
    for params in CHAIN_POINTS:
        for n in range(1, 6):
            J = current(n, params)
            num = gf_total(n - 1, keep_u=False).eval(params.point())
            num *= params.alpha * params.beta - params.gamma * params.delta * params.q ** (n - 1)
            den = gf_total(n, keep_u=False).eval(params.point())
            if params.u == 1 and J != num / den:
                return False, f"closed form differs at n={n}"
            bonds = bond_currents(stationary_exact(build_chain(n, params)), params)
            if any(x != J for x in bonds):
                return False, f"bond flux differs at n={n}, params={params.to_json()}"
    return True, "all bonds, n <= 5, 3 points"


def criterion_10() -> Result:
    for n in range(1, 6):
        S = list(enumerate_staircase_ab(n))
        A = list(enumerate_alt(n))
        P = list(enumerate_perm(n + 1))
        size = math.factorial(n + 1)
        if not (len(S) == len(A) == len(P) == size):
            return False, f"n={n}: {len(S)}, {len(A)}, {len(P)}"
        if {staircase_to_alt(t) for t in S} != set(A) or {alt_to_perm(x) for x in A} != set(P):
            return False, f"n={n}: images not onto"
        for t in S:
            at = staircase_to_alt(t)
            if not validate_alt(at) or alt_to_staircase(at) != t:
                return False, f"n={n}: staircase roundtrip"
        for x in A:
            pt = alt_to_perm(x)
            if not validate_perm(pt) or perm_to_alt(pt) != x:
                return False, f"n={n}: alternative roundtrip"
        for pt in P:
            if alt_to_perm(perm_to_alt(pt)) != pt:
                return False, f"n={n}: permutation roundtrip"
    return True, "mutually inverse for n <= 5, cardinality (n+1)!"


def criterion_11() -> Result:
    start = time.perf_counter()
    total = 0
    for n in range(1, 7):
        want = n * (n + 1) // 2
        for rows in iter_grids(n):
            if sum(_exponents(rows, _WT_TABLE)) != want:
                return False, f"n={n}: {rows}"
            total += 1
    elapsed = time.perf_counter() - start
    return True, f"{total} weights in {elapsed:.1f}s"


CRITERIA: tuple[tuple[str, Callable[[], Result]], ...] = (
    ("cardinality", criterion_1),
    ("worked example", criterion_2),
    ("stationary equivalence", criterion_3),
    ("transfer equivalence", criterion_4),
    ("generalized matrix ansatz", criterion_5),
    ("index decrease", criterion_6),
    ("moments", criterion_7),
    ("symmetries", criterion_8),
    ("physical quantities", criterion_9),
    ("bijections", criterion_10),
    ("homogeneity", criterion_11),
)


def run_one(index: int, out=None) -> bool:
    out = out or sys.stdout
    name, fn = CRITERIA[index - 1]
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash counts as a failure, with the reason shown
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {index} ({name}): {detail}", file=out, flush=True)
    return ok


def run_all(out=None, only=None) -> bool:
    indices = only or range(1, len(CRITERIA) + 1)
    results = [run_one(i, out) for i in indices]
    return all(results)
