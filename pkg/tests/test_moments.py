import math
from decimal import Decimal, localcontext
from fractions import Fraction as F
from itertools import permutations

import pytest
import sympy

from asep_tableaux.errors import DegeneracyError, DomainError
from asep_tableaux.moments import (
    AwParams,
    backward_params,
    binomial_bridge,
    compare_moments,
    forward_params,
    hankel_determinants,
    jacobi_coeffs,
    moments_motzkin,
    moments_staircase,
    recurrence_coeffs,
)

POINTS = [
    AwParams(F(1, 2), F(1, 3), F(-1, 5), F(-1, 7), F(1, 11)),
    AwParams(F(1, 3), F(2, 5), F(1, 4), F(-1, 6), F(1, 2)),
    AwParams(F(-2, 7), F(1, 5), F(3, 8), F(1, 9), F(2, 3)),
]

sa, sb, sc, sd, sq = sympy.symbols("a b c d q")


def sympy_coeffs(n):
    # transcribed independently, with s' = 1/a + 1/b + 1/c + 1/d kept as written
    e4 = sa * sb * sc * sd
    s = sa + sb + sc + sd
    s1 = 1 / sa + 1 / sb + 1 / sc + 1 / sd
    A = (1 - sq ** (n - 1) * e4) / ((1 - sq ** (2 * n - 1) * e4) * (1 - sq ** (2 * n) * e4))
    B = sq ** (n - 1) / ((1 - sq ** (2 * n - 2) * e4) * (1 - sq ** (2 * n) * e4)) * (
        (1 + sq ** (2 * n - 1) * e4) * (sq * s + e4 * s1) - sq ** (n - 1) * (1 + sq) * e4 * (s + sq * s1)
    )
    C = (1 - sq**n)
    for x, y in [(sa, sb), (sa, sc), (sa, sd), (sb, sc), (sb, sd), (sc, sd)]:
        C *= 1 - sq ** (n - 1) * x * y
    C /= (1 - sq ** (2 * n - 2) * e4) * (1 - sq ** (2 * n - 1) * e4)
    return A, B, C


def as_fraction(x):
    x = sympy.Rational(sympy.cancel(x))
    return F(int(x.p), int(x.q))


@pytest.mark.parametrize("aw", POINTS)
def test_coefficients_against_sympy(aw):
    sub = {sa: aw.a, sb: aw.b, sc: aw.c, sd: aw.d, sq: aw.q}
    sub = {k: sympy.Rational(v.numerator, v.denominator) for k, v in sub.items()}
    for n in range(6):
        want = [as_fraction(x.subs(sub)) for x in sympy_coeffs(n)]
        assert list(recurrence_coeffs(n, aw)) == want


def test_coefficients_consistent_with_norms():
    # C_n = A_{n-1} h_n / h_{n-1}, with h_n / h_0 taken from the orthogonality norms
    aw = POINTS[0]
    a, b, c, d, q = aw.a, aw.b, aw.c, aw.d, aw.q
    e4 = a * b * c * d

    def poch(xs, n):
        return math.prod((1 - x * q**k for x in xs for k in range(n)), start=F(1))

    def h(n):
        pairs = (q, a * b, a * c, a * d, b * c, b * d, c * d)
        return (1 - q ** (n - 1) * e4) * poch(pairs, n) / ((1 - q ** (2 * n - 1) * e4) * poch((e4,), n))

    for n in range(1, 6):
        A_prev = recurrence_coeffs(n - 1, aw)[0]
        C = recurrence_coeffs(n, aw)[2]
        assert C == A_prev * h(n) / h(n - 1)


def test_zero_parameters_allowed():
    aw = AwParams(F(1, 2), 0, F(1, 3), 0, F(1, 4))
    A, B, C = recurrence_coeffs(0, aw)
    assert A == 1 and C == 0
    assert B == aw.a + aw.c  # B_0 = s - (abcd s') / (1 - abcd), here abcd = 0
    assert compare_moments(4, aw)["equal"]


def test_semicircle_at_q_zero():
    # a = b = c = d = q = 0: monic coefficients b_n = 0, lambda_n = 1/4
    aw = AwParams(0, 0, 0, 0, 0)
    catalan = [math.comb(2 * k, k) // (k + 1) for k in range(4)]
    want = [F(catalan[k // 2], 4 ** (k // 2)) if k % 2 == 0 else F(0) for k in range(7)]
    assert moments_motzkin(6, aw) == want
    assert moments_staircase(6, aw) == want


def touchard_riordan(k, q):
    """Sum of q^crossings over perfect matchings of 2k points."""
    def comb(m, r):
        return math.comb(m, r) if r >= 0 else 0

    total = sum(
        (-1) ** j * q ** (j * (j + 1) // 2) * (comb(2 * k, k - j) - comb(2 * k, k - j - 1))
        for j in range(k + 1)
    )
    return F(total) / (1 - q) ** k


@pytest.mark.parametrize("q", [F(1, 2), F(-1, 3), F(2, 7)])
def test_q_hermite_moments(q):
    # a = b = c = d = 0 leaves the continuous q-Hermite family, whose monic
    # off-diagonal coefficients are (1 - q^n) / 4 = [n]_q (1 - q) / 4
    aw = AwParams(0, 0, 0, 0, q)
    got = moments_staircase(6, aw)
    for k in range(4):
        assert got[2 * k] == touchard_riordan(k, q) * ((1 - q) / 4) ** k
    assert got[1::2] == [0, 0, 0]
    assert got == moments_motzkin(6, aw)


@pytest.mark.parametrize("aw", POINTS)
def test_two_pipelines_agree(aw):
    assert moments_staircase(6, aw) == moments_motzkin(6, aw)


@pytest.mark.parametrize("aw", POINTS)
def test_binomial_bridge(aw):
    nu = moments_motzkin(4, aw)
    for n in range(5):
        lhs, rhs = binomial_bridge(n, aw, nu)
        assert lhs == rhs


def test_symmetric_in_abcd():
    aw = POINTS[1]
    want = moments_motzkin(5, aw)
    for perm in permutations(range(4)):
        assert moments_staircase(5, aw.permuted(perm)) == want


@pytest.mark.parametrize("aw", POINTS)
def test_hankel_determinants(aw):
    nu = moments_motzkin(6, aw)
    jc = jacobi_coeffs(4, aw)
    lam = [jc.offdiag(i) for i in range(1, 4)]
    dets = hankel_determinants(nu, 4)
    for m in range(1, 5):
        assert dets[m - 1] == math.prod((lam[i - 1] ** (m - i) for i in range(1, m)), start=F(1))
    if all(x > 0 for x in lam):
        assert all(x > 0 for x in dets)


def test_forward_backward_exact():
    for aw in POINTS:
        alpha, beta, gamma, delta = forward_params(aw)
        back = backward_params(alpha, beta, gamma, delta, aw.q)
        assert back.exact
        # the + root goes to a / b, the - root to c / d
        hi_lo = (max(aw.a, aw.c), max(aw.b, aw.d), min(aw.a, aw.c), min(aw.b, aw.d))
        assert (back.a, back.b, back.c, back.d) == hi_lo


def test_backward_irrational():
    alpha, beta, gamma, delta, q = F(1, 3), F(1, 2), F(1, 7), F(1, 9), F(1, 2)
    back = backward_params(alpha, beta, gamma, delta, q, precision=40)
    assert not back.exact and back.precision == 40
    assert all(isinstance(x, Decimal) for x in (back.a, back.b, back.c, back.d))
    # a and c solve alpha t^2 - (1 - q - alpha + gamma) t - gamma = 0
    def dec(x):
        return Decimal(x.numerator) / Decimal(x.denominator)

    with localcontext() as ctx:
        ctx.prec = 60
        x = dec(1 - q - alpha + gamma)
        for t in (back.a, back.c):
            assert abs(dec(alpha) * t * t - x * t - dec(gamma)) < Decimal(10) ** -35


def test_backward_rejects_complex():
    with pytest.raises(DomainError):
        backward_params(F(1), F(1, 2), F(-1), F(0), F(1, 2))


def test_degenerate_cases():
    with pytest.raises(DegeneracyError):
        forward_params(AwParams(-1, 0, F(1, 2), 0, F(1, 2)))
    with pytest.raises(DegeneracyError):
        recurrence_coeffs(0, AwParams(F(1, 2), F(1, 2), F(1, 2), F(1, 2), 0))
    # alpha beta = gamma delta makes the first lambda product vanish
    with pytest.raises(DegeneracyError):
        moments_staircase(2, AwParams(F(-1, 2), F(-1, 2), F(-2), F(-2), F(1, 2)))
    with pytest.raises(DomainError):
        moments_motzkin(-1, POINTS[0])
    with pytest.raises(DomainError):
        hankel_determinants([F(1), F(0)], 3)


def test_compare_report():
    r = compare_moments(3, POINTS[0])
    assert r["equal"] and r["bridge"]
    assert r["staircase"] == r["motzkin"] and r["staircase"][0] == "1"
