"""Askey-Wilson moments: parameter bridge, recurrence, and two moment pipelines.

``moments_staircase`` evaluates the alternating binomial sum over tableaux
partition functions; ``moments_motzkin`` expands the monic three-term
recurrence as weighted Motzkin paths.  Both return moments normalized so that
``nu_0 = 1`` (the common factor ``mu_0 = h_0`` is never computed).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from .errors import DegeneracyError, DomainError
from .exactmath import format_rational, parse_rational
from .tableaux import gf_total

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AwParams:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    q: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "q"):
            v = getattr(self, name)
            object.__setattr__(self, name, parse_rational(v) if isinstance(v, str) else Fraction(v))

    def in_orthogonality_regime(self) -> bool:
        return all(abs(x) < 1 for x in (self.a, self.b, self.c, self.d, self.q))

    def permuted(self, order: Sequence[int]) -> "AwParams":
        """Reorder (a, b, c, d); ``order`` is a permutation of 0..3."""
        vals = (self.a, self.b, self.c, self.d)
        return AwParams(*(vals[i] for i in order), self.q)

    def to_json(self) -> dict:
        return {k: format_rational(getattr(self, k)) for k in ("a", "b", "c", "d", "q")}


@dataclass(frozen=True)
class JacobiCoeffs:
    A: tuple
    B: tuple
    C: tuple

    def diag(self, n: int) -> Fraction:
        """Monic diagonal coefficient B_n / 2."""
        return self.B[n] / 2

    def offdiag(self, n: int) -> Fraction:
        """Monic off-diagonal product A_{n-1} C_n / 4, n >= 1."""
        return self.A[n - 1] * self.C[n] / 4


@dataclass(frozen=True)
class BackwardResult:
    a: Fraction | Decimal
    b: Fraction | Decimal
    c: Fraction | Decimal
    d: Fraction | Decimal
    exact: bool
    precision: int | None = None


# -- parameter bridge -------------------------------------------------------

def forward_params(aw: AwParams) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """(a, b, c, d, q) -> (alpha, beta, gamma, delta)."""
    den_ac = 1 + aw.a * aw.c + aw.a + aw.c
    den_bd = 1 + aw.b * aw.d + aw.b + aw.d
    if den_ac == 0 or den_bd == 0:
        raise DegeneracyError("1 + ac + a + c or 1 + bd + b + d vanishes")
    one_q = 1 - aw.q
    alpha = one_q / den_ac
    beta = one_q / den_bd
    gamma = -one_q * aw.a * aw.c / den_ac
    delta = -one_q * aw.b * aw.d / den_bd
    return alpha, beta, gamma, delta


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _roots(rate: Fraction, counter: Fraction, q: Fraction, precision: int):
    # larger root gets +sqrt, smaller -sqrt when rate > 0
    if rate == 0:
        raise DomainError("alpha and beta must be non-zero")
    x = 1 - q - rate + counter
    disc = x * x + 4 * rate * counter
    if disc < 0:
        raise DomainError("negative discriminant: complex parameters are not supported")
    r = _rational_sqrt(disc)
    if r is not None:
        return (x + r) / (2 * rate), (x - r) / (2 * rate), True
    with localcontext() as ctx:
        ctx.prec = precision + 10
        xs = Decimal(x.numerator) / Decimal(x.denominator)
        ds = (Decimal(disc.numerator) / Decimal(disc.denominator)).sqrt()
        two_r = 2 * Decimal(rate.numerator) / Decimal(rate.denominator)
        hi, lo = (xs + ds) / two_r, (xs - ds) / two_r
        ctx.prec = precision
        return +hi, +lo, False


def backward_params(
    alpha: Fraction, beta: Fraction, gamma: Fraction, delta: Fraction, q: Fraction, precision: int = 50
) -> BackwardResult:
    """Invert :func:`forward_params`, taking a, b on the + branch and c, d on the - branch.

    Exact when both discriminants are rational squares, otherwise decimals
    rounded to ``precision`` significant digits.
    """
    alpha, beta, gamma, delta, q = map(Fraction, (alpha, beta, gamma, delta, q))
    a, c, ex1 = _roots(alpha, gamma, q, precision)
    b, d, ex2 = _roots(beta, delta, q, precision)
    exact = ex1 and ex2
    if not exact:
        a, b, c, d = (x if isinstance(x, Decimal) else _to_decimal(x, precision) for x in (a, b, c, d))
    return BackwardResult(a, b, c, d, exact, None if exact else precision)


def _to_decimal(x: Fraction, precision: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = precision
        return Decimal(x.numerator) / Decimal(x.denominator)


# -- recurrence -------------------------------------------------------------

def _qx(q: Fraction, m: int, x: Fraction) -> Fraction:
    """x * q^m, allowing m < 0 only when q != 0 (or x == 0)."""
    if x == 0:
        return Fraction(0)
    if m < 0 and q == 0:
        raise DegeneracyError("negative power of q = 0 in the recurrence coefficients")
    return x * q**m


def _nonzero(x: Fraction, what: str) -> Fraction:
    if x == 0:
        raise DegeneracyError(f"vanishing denominator {what}")
    return x


def recurrence_coeffs(n: int, aw: AwParams) -> tuple[Fraction, Fraction, Fraction]:
    """A_n, B_n, C_n of 2x P_n = A_n P_{n+1} + B_n P_n + C_n P_{n-1}.

    The products abcd * s' are expanded into elementary symmetric functions,
    so zero parameters are allowed.
    """
    if n < 0:
        raise DomainError("n must be non-negative")
    q = aw.q
    pa, pb, pc, pd = aw.a, aw.b, aw.c, aw.d
    e4 = pa * pb * pc * pd
    e3 = pb * pc * pd + pa * pc * pd + pa * pb * pd + pa * pb * pc  # abcd * s'
    s = pa + pb + pc + pd

    den_2n2 = _nonzero(1 - _qx(q, 2 * n - 2, e4), "1 - q^(2n-2) abcd")
    den_2n1 = _nonzero(1 - _qx(q, 2 * n - 1, e4), "1 - q^(2n-1) abcd")
    den_2n = _nonzero(1 - _qx(q, 2 * n, e4), "1 - q^(2n) abcd")

    A = (1 - _qx(q, n - 1, e4)) / (den_2n1 * den_2n)

    bracket = (1 + _qx(q, 2 * n - 1, e4)) * (q * s + e3) - _qx(q, n - 1, (1 + q) * (e4 * s + q * e3))
    B = _qx(q, n - 1, bracket) / (den_2n2 * den_2n)

    num = 1 - q**n
    for x in (pa * pb, pa * pc, pa * pd, pb * pc, pb * pd, pc * pd):
        num *= 1 - _qx(q, n - 1, x)
    C = num / (den_2n2 * den_2n1)
    return A, B, C


def jacobi_coeffs(K: int, aw: AwParams) -> JacobiCoeffs:
    rows = [recurrence_coeffs(n, aw) for n in range(K + 1)]
    return JacobiCoeffs(*(tuple(col) for col in zip(*rows)))


# -- moment pipelines -------------------------------------------------------

def moments_motzkin(K: int, aw: AwParams) -> list[Fraction]:
    """nu_0..nu_K as weighted Motzkin paths of the monic recurrence."""
    if K < 0:
        raise DomainError("K must be non-negative")
    # a path of length k that returns to 0 never rises above k // 2
    top = K // 2
    jc = jacobi_coeffs(top + 1, aw)
    diag = [jc.diag(h) for h in range(top + 1)]
    down = [Fraction(0)] + [jc.offdiag(h) for h in range(1, top + 1)]
    w = [Fraction(1)] + [Fraction(0)] * top
    out = [Fraction(1)]
    for _ in range(K):
        nw = [Fraction(0)] * (top + 1)
        for h, x in enumerate(w):
            if not x:
                continue
            nw[h] += x * diag[h]
            if h + 1 <= top:
                nw[h + 1] += x
            if h >= 1:
                nw[h - 1] += x * down[h]
        w = nw
        out.append(w[0])
    return out


def lambda_products(K: int, alpha, beta, gamma, delta, q) -> list[Fraction]:
    """prod_{i<l} (alpha beta - gamma delta q^i) for l = 0..K."""
    prods = [Fraction(1)]
    for i in range(K):
        f = alpha * beta - gamma * delta * Fraction(q) ** i
        if f == 0:
            raise DegeneracyError(f"alpha*beta = gamma*delta*q^{i}: the moment formula is singular")
        prods.append(prods[-1] * f)
    return prods


def partition_values(K: int, alpha, beta, gamma, delta, q, method: str = "auto") -> list[Fraction]:
    """Z_0..Z_K at u = 1, evaluated at the given point."""
    point = (alpha, beta, gamma, delta, q, 1)
    return [gf_total(l, keep_u=False, method=method).eval(point) for l in range(K + 1)]


def moments_staircase(K: int, aw: AwParams, method: str = "auto") -> list[Fraction]:
    """nu_k = sum_l (-1)^(k-l) C(k,l) ((1-q)/2)^l Z_l / prod_{i<l} (alpha beta - gamma delta q^i)."""
    if K < 0:
        raise DomainError("K must be non-negative")
    alpha, beta, gamma, delta = forward_params(aw)
    q = aw.q
    prods = lambda_products(K, alpha, beta, gamma, delta, q)
    Z = partition_values(K, alpha, beta, gamma, delta, q, method)
    half = (1 - q) / 2
    scaled = [half**l * Z[l] / prods[l] for l in range(K + 1)]
    return [
        sum((Fraction((-1) ** (k - l) * math.comb(k, l)) * scaled[l] for l in range(k + 1)), Fraction(0))
        for k in range(K + 1)
    ]


def binomial_bridge(n: int, aw: AwParams, nu: Sequence[Fraction], method: str = "auto") -> tuple[Fraction, Fraction]:
    """Both sides of ((1-q)/2)^n Z_n / prod_{i<n} lambda = sum_k C(n,k) nu_k."""
    alpha, beta, gamma, delta = forward_params(aw)
    q = aw.q
    prods = lambda_products(n, alpha, beta, gamma, delta, q)
    Zn = gf_total(n, keep_u=False, method=method).eval((alpha, beta, gamma, delta, q, 1))
    lhs = ((1 - q) / 2) ** n * Zn / prods[n]
    rhs = sum((math.comb(n, k) * nu[k] for k in range(n + 1)), Fraction(0))
    return lhs, rhs


def compare_moments(K: int, aw: AwParams, bridge_max: int | None = None, method: str = "auto") -> dict:
    if not aw.in_orthogonality_regime():
        log.warning("parameters outside |a|,|b|,|c|,|d|,|q| < 1; relying on analytic continuation")
    stair = moments_staircase(K, aw, method)
    motz = moments_motzkin(K, aw)
    bridge_max = K if bridge_max is None else bridge_max
    bridge = []
    for n in range(bridge_max + 1):
        lhs, rhs = binomial_bridge(n, aw, motz, method)
        bridge.append(lhs == rhs)
    return {
        "params": aw.to_json(),
        "K": K,
        "staircase": [format_rational(x) for x in stair],
        "motzkin": [format_rational(x) for x in motz],
        "equal": stair == motz,
        "bridge": all(bridge),
    }


def hankel_determinants(nu: Sequence[Fraction], max_order: int) -> list[Fraction]:
    """det [nu_{i+j}]_{i,j<m} for m = 1..max_order."""
    if 2 * max_order - 2 >= len(nu):
        raise DomainError("not enough moments for the requested Hankel order")
    return [_det([[Fraction(nu[i + j]) for j in range(m)] for i in range(m)]) for m in range(1, max_order + 1)]


def _det(M: list[list[Fraction]]) -> Fraction:
    M = [row[:] for row in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                for k in range(c, n):
                    M[r][k] -= f * M[c][k]
    return det
